#pragma once

// Far field pattern and operator machinery:
//   - u_inf(x^, theta) = c_d k^2 int_B q(y) e^{-ik x^.y} u(y;theta) dy,
//     with c_2 = e^{i pi/4}/sqrt(8 pi k), c_3 = 1/(4 pi);
//   - far field operator (F g)(x^) = int u_inf(x^;theta) g(theta) dS(theta);
//   - Herglotz operator (A psi)(y) = int psi(theta) e^{ik y.theta} dS(theta)
//     and its adjoint (A* phi)(x^) = int_B phi(y) e^{-ik x^.y} dy;
//   - the factorization F = c_d A* T A and the W operator W f = v_inf;
//   - the pointwise representation u_inf = c_d int e^{-ik x^.y} (T e^{ik theta.}) dy
//     and its holomorphic extension through the complexified stereographic
//     charts (complex dot products, no conjugation).

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fflab/forward.hpp"
#include "fflab/geometry.hpp"
#include "fflab/medium.hpp"
#include "fflab/types.hpp"

namespace fflab {

// Quadrature nodes on S^1 with positive weights summing to 2*pi. The uniform
// set is closed under x^ -> -x^ for even N (antipode = half shift).
struct DirectionSet {
    std::vector<UnitDirection> directions;
    std::vector<double> weights;
    std::vector<double> angles;

    static DirectionSet uniform_circle(int n);
    int size() const { return static_cast<int>(directions.size()); }
    int antipode_index(int j) const;  // requires even size
};

// U(i, j) = u_inf(x^_i; theta_j).
struct FarFieldSamples {
    DirectionSet observation;
    DirectionSet incidence;
    Eigen::MatrixXcd values;
    Wavenumber k;
};

struct HerglotzDensity {
    std::vector<cplx> values;
};

// c_d from the asymptotic normalization of the scattered field.
cplx far_field_constant(int d, Wavenumber k);

cplx far_field_from_solution(const RefractiveIndexField& m, Wavenumber k,
                             const ScatterSolution& sol, const UnitDirection& xhat);

FarFieldSamples far_field_matrix(const LippmannSchwingerSolver& solver, const DirectionSet& obs,
                                 const DirectionSet& inc);
FarFieldSamples far_field_matrix(const RefractiveIndexField& m, Wavenumber k,
                                 const DirectionSet& obs, const DirectionSet& inc,
                                 const SolverConfig& cfg = {});

GridField herglotz_apply(const HerglotzDensity& psi, const DirectionSet& inc, Wavenumber k,
                         const GridBox& grid);
cplx herglotz_adjoint(const GridField& phi, const UnitDirection& xhat, Wavenumber k);

std::vector<cplx> apply_F(const FarFieldSamples& samples, const HerglotzDensity& g);

// W f = v_inf over the observation set, computed as c_d A* T f.
std::vector<cplx> source_far_field(const LippmannSchwingerSolver& solver, const GridField& f,
                                   const DirectionSet& obs);
std::vector<cplx> source_far_field(const RefractiveIndexField& m, Wavenumber k, const GridField& f,
                                   const DirectionSet& obs, const SolverConfig& cfg = {});

// Result of ||F g - c_d A* T A g|| / ||F g|| in the weighted discrete
// L^2(S^1) norm; no_signal flags ||F g|| = 0 (e.g. zero contrast).
struct FactorizationCheck {
    bool no_signal = false;
    double residual = 0.0;
};

FactorizationCheck factorization_residual(const LippmannSchwingerSolver& solver,
                                          const DirectionSet& obs, const DirectionSet& inc,
                                          const HerglotzDensity& g);
FactorizationCheck factorization_residual(const RefractiveIndexField& m, Wavenumber k,
                                          const DirectionSet& obs, const DirectionSet& inc,
                                          const HerglotzDensity& g, const SolverConfig& cfg = {});

// u_inf(x^; theta) through the T-operator representation.
cplx far_field_via_factorization(const LippmannSchwingerSolver& solver, const UnitDirection& xhat,
                                 const UnitDirection& theta);
cplx far_field_via_factorization(const RefractiveIndexField& m, Wavenumber k,
                                 const UnitDirection& xhat, const UnitDirection& theta,
                                 const SolverConfig& cfg = {});

// Local extension H(z, w) of the far field pattern to complexified chart
// coordinates; restricts to u_inf on real coordinates.
cplx holomorphic_extension(const LippmannSchwingerSolver& solver, const ComplexChartCoord& z,
                           const ComplexChartCoord& w, ChartId chart_obs, ChartId chart_inc);
cplx holomorphic_extension(const RefractiveIndexField& m, Wavenumber k,
                           const ComplexChartCoord& z, const ComplexChartCoord& w,
                           ChartId chart_obs, ChartId chart_inc, const SolverConfig& cfg = {});

} // namespace fflab
