#pragma once

// Lippmann-Schwinger solver for 2-D medium scattering:
//
//   u = u^i + k^2 \int_B Phi(k,|x-y|) q(y) u(y) dy,   q = n - 1,
//
// discretized by midpoint collocation on the cell-centered grid with the
// singular self-cell handled by the equal-area-disc rule. The same machinery
// solves the radiating source problem  v = k^2 \int Phi q (f + v)  and
// realizes the operator  T f = k^2 q (f + v).
//
// The kernel is translation invariant on the grid, so all matrix entries
// come from one table of Phi over the offset lattice. Because q vanishes
// outside its support, the system closes on the support cells; the dense
// mode factorizes that block once per (medium, k) and reuses it across
// right-hand sides, and rows off the support are satisfied identically by
// the reconstruction formula. The iterative mode runs restarted GMRES with
// an FFT (circulant-embedding) matvec for grids too large to factorize.

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fflab/geometry.hpp"
#include "fflab/medium.hpp"
#include "fflab/types.hpp"

namespace fflab {

// Outgoing fundamental solution (i/4) H_0^(1)(k r); DomainError at r <= 0.
cplx greens_function(Wavenumber k, double r);

// Integral of greens_function over the disc of area hx*hy centered at the
// singularity (radius a = sqrt(hx*hy/pi)):
//   (i pi a / (2k)) H_1^(1)(k a) - 1/k^2.
cplx cell_self_integral(Wavenumber k, double hx, double hy);

// Phi integrated over one cell, sampled on the offset lattice: entry (0,0)
// is the self integral, entry (di,dj) is Phi(k, |(di*hx, dj*hy)|) * hx*hy.
class KernelTable {
public:
    KernelTable(const GridBox& grid, Wavenumber k);
    cplx at(int di, int dj) const {
        return vals_[static_cast<std::size_t>(std::abs(dj)) * static_cast<std::size_t>(nx_)
                     + static_cast<std::size_t>(std::abs(di))];
    }
    const GridBox& grid() const { return grid_; }

private:
    GridBox grid_;
    int nx_, ny_;
    std::vector<cplx> vals_;
};

struct SolverConfig {
    enum class Mode { dense, iterative };
    Mode mode = Mode::dense;
    double tolerance = 1e-10;
    int max_iterations = 500;

    void validate() const;
};

// Total/incident fields of the scattering problem; scattered = total - incident.
struct ScatterSolution {
    GridBox grid;
    std::vector<cplx> total;
    std::vector<cplx> incident;

    ScatterSolution(const GridBox& g, std::vector<cplx> tot, std::vector<cplx> inc);
    std::vector<cplx> scattered() const;
};

struct SourceSolution {
    GridBox grid;
    std::vector<cplx> v;

    SourceSolution(const GridBox& g, std::vector<cplx> values);
};

// Full dense collocation matrix M with M u = u^i (for tests and small grids;
// the solver itself works on the support block).
Eigen::MatrixXcd assemble_ls_matrix(const RefractiveIndexField& m, Wavenumber k);

class LippmannSchwingerSolver {
public:
    LippmannSchwingerSolver(const RefractiveIndexField& m, Wavenumber k, SolverConfig cfg = {});
    ~LippmannSchwingerSolver();
    LippmannSchwingerSolver(LippmannSchwingerSolver&&) noexcept;
    LippmannSchwingerSolver& operator=(LippmannSchwingerSolver&&) noexcept;

    const RefractiveIndexField& medium() const;
    Wavenumber wavenumber() const;
    const SolverConfig& config() const;

    ScatterSolution solve_scattering(const UnitDirection& theta) const;
    SourceSolution solve_source(const GridField& f) const;
    GridField apply_T(const GridField& f) const;

    // Support-restricted interfaces for the far-field pipelines (everything
    // they integrate is supported on the contrast).
    int support_size() const;
    const std::vector<int>& support_cells() const;        // flat cell indices
    const std::vector<Vec2>& support_points() const;
    const Eigen::VectorXcd& support_contrast() const;     // q on the support

    // v on the support for the source problem with data f on the support.
    Eigen::VectorXcd solve_source_support(const Eigen::VectorXcd& f_support) const;
    // (T f) on the support: k^2 q (f + v).
    Eigen::VectorXcd apply_T_support(const Eigen::VectorXcd& f_support) const;
    // Restrict a grid field to the support cells.
    Eigen::VectorXcd restrict_to_support(const GridField& f) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One-shot conveniences matching the operation signatures; each builds a
// solver (and its factorization) internally.
ScatterSolution solve_scattering(const RefractiveIndexField& m, Wavenumber k,
                                 const UnitDirection& theta, const SolverConfig& cfg = {});
SourceSolution solve_source(const RefractiveIndexField& m, Wavenumber k, const GridField& f,
                            const SolverConfig& cfg = {});
GridField apply_T(const RefractiveIndexField& m, Wavenumber k, const GridField& f,
                  const SolverConfig& cfg = {});

} // namespace fflab
