#pragma once

// Computable surrogates for joint real analyticity of the far field pattern:
//   - exponential decay of the 2-D Fourier coefficients of the torus samples
//     u_inf(x^(alpha_i); theta(beta_j));
//   - a bivariate Taylor model about a single point, with coefficients from
//     tensor-product trapezoid Cauchy integrals of the holomorphic extension
//     on a bicircle, evaluated against directly computed far field values;
//   - the classical xy/(x^2+y^2) example separating separate from joint
//     analyticity.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fflab/farfield.hpp"
#include "fflab/forward.hpp"
#include "fflab/geometry.hpp"
#include "fflab/types.hpp"

namespace fflab {

// values(i, j) = u_inf(x^(2 pi i/n); theta(2 pi j/n)).
struct TorusSamples {
    int n;
    Eigen::MatrixXcd values;
    Wavenumber k;
};

TorusSamples sample_torus(const LippmannSchwingerSolver& solver, int n);
TorusSamples sample_torus(const RefractiveIndexField& m, Wavenumber k, int n,
                          const SolverConfig& cfg = {});

struct FourierDecayReport {
    int n = 0;
    double floor = 0.0;
    Eigen::MatrixXcd coefficients;   // c_{mn}, raw DFT layout
    double tau = 0.0;                // e-folding rate per unit total order
    double intercept_log10 = 0.0;
    double fit_rms_log10 = 0.0;      // RMS fit residual in log10
    int coefficients_used = 0;

    // centered frequency of a raw index
    static int frequency(int idx, int n) { return idx < n / 2 ? idx : idx - n; }
    Eigen::MatrixXd magnitudes() const { return coefficients.cwiseAbs(); }
};

// Fits log|c_{mn}| ~ intercept - tau * (|m|+|n|) over coefficients above the
// floor with total order >= 2; throws InsufficientSignalError below 25 points.
FourierDecayReport fourier_decay(const TorusSamples& samples, double floor = 1e-13);

struct TaylorModel {
    ChartId chart_obs = ChartId::plus;
    ChartId chart_inc = ChartId::plus;
    double z0 = 0.0;                 // chart coordinate of the observation center
    double w0 = 0.0;                 // chart coordinate of the incidence center
    int order = 0;
    double rho = 0.0;                // Cauchy radius
    Eigen::MatrixXcd coeff;          // a_{mn}, 0 <= m, n <= order
};

// nodes = 0 picks max(4*order, 32); explicit node counts must be >= 4*order.
TaylorModel taylor_coefficients(const LippmannSchwingerSolver& solver, const UnitDirection& xhat0,
                                const UnitDirection& theta0, int order, double rho, int nodes = 0);
TaylorModel taylor_coefficients(const RefractiveIndexField& m, Wavenumber k,
                                const UnitDirection& xhat0, const UnitDirection& theta0, int order,
                                double rho, int nodes = 0, const SolverConfig& cfg = {});

// Evaluates the double series; trust region is half the Cauchy radius
// (OutOfRadiusError beyond).
cplx taylor_evaluate(const TaylorModel& model, const UnitDirection& xhat,
                     const UnitDirection& theta);

// f(x,y) = xy/(x^2+y^2), f(0,0) = 0: separately real analytic everywhere,
// not even continuous at the origin.
double counterexample_eval(double x, double y);

// Taylor coefficients (degree 0..degree) of x -> f(x, y0) about x = 0 by
// long division of the defining rational function.
std::vector<double> counterexample_restriction_taylor(double y0, int degree);

struct CounterexampleReport {
    double t_min = 0.0, t_max = 0.0;
    std::vector<double> diagonal_t;
    std::vector<double> diagonal_values;   // all 1/2
    std::vector<double> axis_values;       // all 0
    double origin_value = 0.0;
    double diagonal_limit = 0.5;

    double restriction_offset = 1.0;       // y0 (= x0 by symmetry)
    int restriction_degree = 0;
    double restriction_max_error_x = 0.0;  // f(., y0) vs its Taylor polynomial
    double restriction_max_error_y = 0.0;  // f(x0, .) vs its Taylor polynomial

    std::vector<int> fit_degrees;          // bivariate LSQ polynomial fits about 0
    std::vector<double> fit_diagonal_errors;
    double fit_min_diagonal_error = 0.0;
};

CounterexampleReport counterexample_report(double t_min, double t_max, int samples);

} // namespace fflab
