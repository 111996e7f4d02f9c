#include "fflab/forward.hpp"

#include <cmath>
#include <sstream>

#include "fflab/bessel.hpp"
#include "fflab/errors.hpp"
#include "fflab/fft.hpp"

namespace fflab {

cplx greens_function(Wavenumber k, double r) {
    if (!(r > 0.0)) {
        throw DomainError("greens_function: singular at r <= 0 (self-cell rule handles r = 0)");
    }
    return cplx(0.0, 0.25) * hankel1(0, k.value() * r);
}

cplx cell_self_integral(Wavenumber k, double hx, double hy) {
    const double a = std::sqrt(hx * hy / pi);
    const double ka = k.value() * a;
    return cplx(0.0, pi * a / (2.0 * k.value())) * hankel1(1, ka) - 1.0 / (k.value() * k.value());
}

KernelTable::KernelTable(const GridBox& grid, Wavenumber k)
    : grid_(grid), nx_(grid.nx()), ny_(grid.ny()) {
    vals_.resize(static_cast<std::size_t>(nx_) * static_cast<std::size_t>(ny_));
    const double area = grid.cell_area();
    for (int dj = 0; dj < ny_; ++dj) {
        for (int di = 0; di < nx_; ++di) {
            const std::size_t idx = static_cast<std::size_t>(dj) * static_cast<std::size_t>(nx_)
                                    + static_cast<std::size_t>(di);
            if (di == 0 && dj == 0) {
                vals_[idx] = cell_self_integral(k, grid.hx(), grid.hy());
            } else {
                const double r = std::hypot(di * grid.hx(), dj * grid.hy());
                vals_[idx] = greens_function(k, r) * area;
            }
        }
    }
}

void SolverConfig::validate() const {
    if (!(tolerance > 0.0) || !(tolerance < 1.0)) {
        throw ValueError("SolverConfig: tolerance must lie in (0, 1)");
    }
    if (max_iterations < 1) throw ValueError("SolverConfig: max_iterations must be positive");
}

ScatterSolution::ScatterSolution(const GridBox& g, std::vector<cplx> tot, std::vector<cplx> inc)
    : grid(g), total(std::move(tot)), incident(std::move(inc)) {
    if (total.size() != incident.size() || total.size() != static_cast<std::size_t>(g.cell_count())) {
        throw ValueError("ScatterSolution: field sizes do not match the grid");
    }
}

std::vector<cplx> ScatterSolution::scattered() const {
    std::vector<cplx> s(total.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = total[i] - incident[i];
    return s;
}

SourceSolution::SourceSolution(const GridBox& g, std::vector<cplx> values)
    : grid(g), v(std::move(values)) {
    if (v.size() != static_cast<std::size_t>(g.cell_count())) {
        throw ValueError("SourceSolution: field size does not match the grid");
    }
}

Eigen::MatrixXcd assemble_ls_matrix(const RefractiveIndexField& m, Wavenumber k) {
    const GridBox& grid = m.grid();
    const KernelTable table(grid, k);
    const int n = grid.cell_count();
    const double k2 = k.value() * k.value();
    Eigen::MatrixXcd M(n, n);
    for (int col = 0; col < n; ++col) {
        const cplx q = m.values()[static_cast<std::size_t>(col)] - 1.0;
        const int cx = col % grid.nx(), cy = col / grid.nx();
        for (int row = 0; row < n; ++row) {
            const int rx = row % grid.nx(), ry = row / grid.nx();
            cplx v = -k2 * table.at(rx - cx, ry - cy) * q;
            if (row == col) v += 1.0;
            M(row, col) = v;
        }
    }
    return M;
}

namespace {

// Restarted GMRES with modified Gram-Schmidt and complex Givens rotations;
// returns the achieved relative residual or throws ConvergenceError.
double gmres(const std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>& matvec,
             const Eigen::VectorXcd& b, Eigen::VectorXcd& x, double tol, int max_iterations) {
    const int restart = 80;
    const double bnorm = b.norm();
    if (bnorm == 0.0) {
        x.setZero(b.size());
        return 0.0;
    }
    x.setZero(b.size());
    int total_iters = 0;
    while (true) {
        const Eigen::VectorXcd r = b - matvec(x);
        const double beta = r.norm();
        double rel = beta / bnorm;
        if (rel <= tol) return rel;
        std::vector<Eigen::VectorXcd> V;
        V.reserve(static_cast<std::size_t>(restart) + 1);
        V.push_back(r / beta);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(restart + 1, restart);
        std::vector<cplx> cs(static_cast<std::size_t>(restart)), sn(static_cast<std::size_t>(restart));
        Eigen::VectorXcd g = Eigen::VectorXcd::Zero(restart + 1);
        g(0) = beta;
        int j = 0;  // number of completed Arnoldi columns
        while (j < restart) {
            if (total_iters++ >= max_iterations) {
                std::ostringstream os;
                os << "gmres: no convergence to " << tol << " within " << max_iterations
                   << " iterations (residual " << rel << ")";
                throw ConvergenceError(os.str());
            }
            Eigen::VectorXcd w = matvec(V[static_cast<std::size_t>(j)]);
            for (int i = 0; i <= j; ++i) {
                H(i, j) = V[static_cast<std::size_t>(i)].dot(w);  // conjugated dot
                w -= H(i, j) * V[static_cast<std::size_t>(i)];
            }
            const double hnext = w.norm();
            // previously stored rotations act on rows 0..j
            for (int i = 0; i < j; ++i) {
                const cplx t = cs[static_cast<std::size_t>(i)] * H(i, j)
                               + sn[static_cast<std::size_t>(i)] * H(i + 1, j);
                H(i + 1, j) = -std::conj(sn[static_cast<std::size_t>(i)]) * H(i, j)
                              + std::conj(cs[static_cast<std::size_t>(i)]) * H(i + 1, j);
                H(i, j) = t;
            }
            // new rotation annihilating the (real) subdiagonal hnext
            const cplx a = H(j, j);
            const double rr = std::sqrt(std::norm(a) + hnext * hnext);
            if (rr == 0.0) {
                cs[static_cast<std::size_t>(j)] = 1.0;
                sn[static_cast<std::size_t>(j)] = 0.0;
            } else {
                cs[static_cast<std::size_t>(j)] = std::conj(a) / rr;
                sn[static_cast<std::size_t>(j)] = hnext / rr;
            }
            H(j, j) = rr;
            const cplx gj = g(j);
            g(j) = cs[static_cast<std::size_t>(j)] * gj;
            g(j + 1) = -std::conj(sn[static_cast<std::size_t>(j)]) * gj;
            rel = std::abs(g(j + 1)) / bnorm;
            ++j;
            if (rel <= tol || hnext == 0.0) break;  // converged or happy breakdown
            V.push_back(w / hnext);
        }
        // back substitution on the leading j x j triangle
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(j);
        for (int i = j - 1; i >= 0; --i) {
            cplx s = g(i);
            for (int l = i + 1; l < j; ++l) s -= H(i, l) * y(l);
            y(i) = s / H(i, i);
        }
        for (int i = 0; i < j; ++i) x += y(i) * V[static_cast<std::size_t>(i)];
        if (rel <= tol) {
            rel = (b - matvec(x)).norm() / bnorm;  // confirm with a true residual
            if (rel <= tol) return rel;
        }
    }
}

std::size_t pad_size(int n) {
    std::size_t p = 1;
    while (p < 2 * static_cast<std::size_t>(n) - 1) p <<= 1;
    return p;
}

} // namespace

struct LippmannSchwingerSolver::Impl {
    RefractiveIndexField medium;
    Wavenumber k;
    SolverConfig cfg;
    KernelTable table;

    std::vector<int> support;         // flat indices of cells with q != 0
    std::vector<Vec2> points;         // their centers
    Eigen::VectorXcd q;               // contrast on the support
    std::vector<int> sx, sy;          // support cell coordinates

    // dense mode
    Eigen::MatrixXcd A;               // I - k^2 K D on the support block
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu;
    bool have_lu = false;

    // iterative mode: kernel spectrum for the circulant-embedding matvec
    std::size_t px = 0, py = 0;
    std::vector<cplx> kernel_hat;

    Impl(const RefractiveIndexField& m, Wavenumber kk, SolverConfig c)
        : medium(m), k(kk), cfg(c), table(m.grid(), kk) {
        cfg.validate();
        const GridBox& grid = medium.grid();
        for (int iy = 0; iy < grid.ny(); ++iy) {
            for (int ix = 0; ix < grid.nx(); ++ix) {
                const cplx qv = medium.at(ix, iy) - 1.0;
                if (qv != cplx(0.0, 0.0)) {
                    support.push_back(grid.index(ix, iy));
                    points.push_back(grid.cell_center(ix, iy));
                    sx.push_back(ix);
                    sy.push_back(iy);
                }
            }
        }
        q.resize(static_cast<Eigen::Index>(support.size()));
        for (std::size_t s = 0; s < support.size(); ++s) {
            q(static_cast<Eigen::Index>(s)) = medium.values()[static_cast<std::size_t>(support[s])] - 1.0;
        }
        if (support.empty()) return;
        if (cfg.mode == SolverConfig::Mode::dense) {
            build_dense();
        } else {
            build_spectrum();
        }
    }

    void build_dense() {
        const double k2 = k.value() * k.value();
        const Eigen::Index ns = static_cast<Eigen::Index>(support.size());
        A.resize(ns, ns);
        for (Eigen::Index t = 0; t < ns; ++t) {
            const cplx qk2 = k2 * q(t);
            const int cx = sx[static_cast<std::size_t>(t)], cy = sy[static_cast<std::size_t>(t)];
            for (Eigen::Index s = 0; s < ns; ++s) {
                cplx v = -qk2 * table.at(sx[static_cast<std::size_t>(s)] - cx,
                                         sy[static_cast<std::size_t>(s)] - cy);
                if (s == t) v += 1.0;
                A(s, t) = v;
            }
        }
        lu.compute(A);
        have_lu = true;
        const auto& diag = lu.matrixLU().diagonal();
        double dmin = diag.cwiseAbs().minCoeff();
        double dmax = diag.cwiseAbs().maxCoeff();
        if (dmin == 0.0 || dmin < 1e-15 * dmax) {
            throw SingularMatrixError(
                "LippmannSchwingerSolver: pivot breakdown (near-resonant discretization)");
        }
    }

    void build_spectrum() {
        const GridBox& grid = medium.grid();
        px = pad_size(grid.nx());
        py = pad_size(grid.ny());
        // periodized kernel on the padded grid
        std::vector<cplx> ker(px * py, cplx(0.0, 0.0));
        for (int dj = -(grid.ny() - 1); dj <= grid.ny() - 1; ++dj) {
            const std::size_t j = dj >= 0 ? static_cast<std::size_t>(dj)
                                          : py - static_cast<std::size_t>(-dj);
            for (int di = -(grid.nx() - 1); di <= grid.nx() - 1; ++di) {
                const std::size_t i = di >= 0 ? static_cast<std::size_t>(di)
                                              : px - static_cast<std::size_t>(-di);
                ker[j * px + i] = table.at(di, dj);
            }
        }
        fft2_flat(ker, false);
        kernel_hat = std::move(ker);
    }

    void fft2_flat(std::vector<cplx>& a, bool inverse) const {
        std::vector<cplx> buf(px);
        for (std::size_t j = 0; j < py; ++j) {
            std::copy(a.begin() + static_cast<std::ptrdiff_t>(j * px),
                      a.begin() + static_cast<std::ptrdiff_t>((j + 1) * px), buf.begin());
            fft_pow2(buf, inverse);
            std::copy(buf.begin(), buf.end(), a.begin() + static_cast<std::ptrdiff_t>(j * px));
        }
        std::vector<cplx> col(py);
        for (std::size_t i = 0; i < px; ++i) {
            for (std::size_t j = 0; j < py; ++j) col[j] = a[j * px + i];
            fft_pow2(col, inverse);
            for (std::size_t j = 0; j < py; ++j) a[j * px + i] = col[j];
        }
    }

    // K * (q .* w) restricted to the support, via the padded convolution.
    Eigen::VectorXcd conv_support(const Eigen::VectorXcd& w) const {
        std::vector<cplx> g(px * py, cplx(0.0, 0.0));
        for (std::size_t s = 0; s < support.size(); ++s) {
            g[static_cast<std::size_t>(sy[s]) * px + static_cast<std::size_t>(sx[s])] =
                q(static_cast<Eigen::Index>(s)) * w(static_cast<Eigen::Index>(s));
        }
        fft2_flat(g, false);
        for (std::size_t i = 0; i < g.size(); ++i) g[i] *= kernel_hat[i];
        fft2_flat(g, true);
        Eigen::VectorXcd out(static_cast<Eigen::Index>(support.size()));
        for (std::size_t s = 0; s < support.size(); ++s) {
            out(static_cast<Eigen::Index>(s)) =
                g[static_cast<std::size_t>(sy[s]) * px + static_cast<std::size_t>(sx[s])];
        }
        return out;
    }

    Eigen::VectorXcd apply_A(const Eigen::VectorXcd& w) const {
        const double k2 = k.value() * k.value();
        if (cfg.mode == SolverConfig::Mode::dense) return A * w;
        return w - k2 * conv_support(w);
    }

    // Solve (I - k^2 K D) v = k^2 K D f on the support.
    Eigen::VectorXcd source_solve(const Eigen::VectorXcd& f_support) const {
        const Eigen::Index ns = static_cast<Eigen::Index>(support.size());
        if (f_support.size() != ns) {
            throw ValueError("solve_source_support: value count does not match the support");
        }
        if (ns == 0) return Eigen::VectorXcd();
        const double k2 = k.value() * k.value();
        Eigen::VectorXcd rhs;
        if (cfg.mode == SolverConfig::Mode::dense) {
            rhs = f_support - A * f_support;  // (I - A) f = k^2 K D f
        } else {
            rhs = k2 * conv_support(f_support);
        }
        const double rhs_norm = rhs.norm();
        if (rhs_norm == 0.0) return Eigen::VectorXcd::Zero(ns);
        Eigen::VectorXcd v;
        if (cfg.mode == SolverConfig::Mode::dense) {
            v = lu.solve(rhs);
            const double rel = (apply_A(v) - rhs).norm() / rhs_norm;
            if (!(rel <= cfg.tolerance)) {
                std::ostringstream os;
                os << "LippmannSchwingerSolver: dense residual " << rel
                   << " exceeds tolerance " << cfg.tolerance << " (near-singular system)";
                throw SingularMatrixError(os.str());
            }
        } else {
            gmres([this](const Eigen::VectorXcd& w) { return apply_A(w); }, rhs, v,
                  cfg.tolerance, cfg.max_iterations);
        }
        return v;
    }

    // Extend a support solution of the source problem to every grid cell:
    // v(x) = k^2 sum_s K(x - y_s) q_s (f_s + v_s).
    std::vector<cplx> extend(const Eigen::VectorXcd& f_support,
                             const Eigen::VectorXcd& v_support) const {
        const GridBox& grid = medium.grid();
        const double k2 = k.value() * k.value();
        Eigen::VectorXcd density = q.cwiseProduct(f_support + v_support);
        std::vector<cplx> out(static_cast<std::size_t>(grid.cell_count()), cplx(0.0, 0.0));
        for (int iy = 0; iy < grid.ny(); ++iy) {
            for (int ix = 0; ix < grid.nx(); ++ix) {
                cplx acc(0.0, 0.0);
                for (std::size_t s = 0; s < support.size(); ++s) {
                    acc += table.at(ix - sx[s], iy - sy[s]) * density(static_cast<Eigen::Index>(s));
                }
                out[static_cast<std::size_t>(grid.index(ix, iy))] = k2 * acc;
            }
        }
        return out;
    }
};

LippmannSchwingerSolver::LippmannSchwingerSolver(const RefractiveIndexField& m, Wavenumber k,
                                                 SolverConfig cfg)
    : impl_(std::make_unique<Impl>(m, k, cfg)) {}

LippmannSchwingerSolver::~LippmannSchwingerSolver() = default;
LippmannSchwingerSolver::LippmannSchwingerSolver(LippmannSchwingerSolver&&) noexcept = default;
LippmannSchwingerSolver& LippmannSchwingerSolver::operator=(LippmannSchwingerSolver&&) noexcept = default;

const RefractiveIndexField& LippmannSchwingerSolver::medium() const { return impl_->medium; }
Wavenumber LippmannSchwingerSolver::wavenumber() const { return impl_->k; }
const SolverConfig& LippmannSchwingerSolver::config() const { return impl_->cfg; }

int LippmannSchwingerSolver::support_size() const { return static_cast<int>(impl_->support.size()); }
const std::vector<int>& LippmannSchwingerSolver::support_cells() const { return impl_->support; }
const std::vector<Vec2>& LippmannSchwingerSolver::support_points() const { return impl_->points; }
const Eigen::VectorXcd& LippmannSchwingerSolver::support_contrast() const { return impl_->q; }

Eigen::VectorXcd LippmannSchwingerSolver::restrict_to_support(const GridField& f) const {
    if (!(f.grid == impl_->medium.grid())) {
        throw ValueError("restrict_to_support: field grid does not match the medium grid");
    }
    Eigen::VectorXcd out(static_cast<Eigen::Index>(impl_->support.size()));
    for (std::size_t s = 0; s < impl_->support.size(); ++s) {
        out(static_cast<Eigen::Index>(s)) = f.values[static_cast<std::size_t>(impl_->support[s])];
    }
    return out;
}

Eigen::VectorXcd LippmannSchwingerSolver::solve_source_support(const Eigen::VectorXcd& f) const {
    return impl_->source_solve(f);
}

Eigen::VectorXcd LippmannSchwingerSolver::apply_T_support(const Eigen::VectorXcd& f) const {
    const double k2 = impl_->k.value() * impl_->k.value();
    if (impl_->support.empty()) return Eigen::VectorXcd();
    const Eigen::VectorXcd v = impl_->source_solve(f);
    return (k2 * impl_->q.array() * (f + v).array()).matrix();
}

SourceSolution LippmannSchwingerSolver::solve_source(const GridField& f) const {
    if (!(f.grid == impl_->medium.grid())) {
        throw ValueError("solve_source: field grid does not match the medium grid");
    }
    if (impl_->support.empty()) {
        return SourceSolution(f.grid, std::vector<cplx>(f.values.size(), cplx(0.0, 0.0)));
    }
    const Eigen::VectorXcd f_s = restrict_to_support(f);
    const Eigen::VectorXcd v_s = impl_->source_solve(f_s);
    return SourceSolution(f.grid, impl_->extend(f_s, v_s));
}

ScatterSolution LippmannSchwingerSolver::solve_scattering(const UnitDirection& theta) const {
    const GridBox& grid = impl_->medium.grid();
    GridField ui = plane_wave_field(impl_->k, theta, grid);
    // The scattered field solves the source problem with f = u^i
    // (Delta u^s + k^2 n u^s = -k^2 (n-1) u^i), so u = u^i + v.
    SourceSolution v = solve_source(ui);
    std::vector<cplx> total(ui.values.size());
    for (std::size_t i = 0; i < total.size(); ++i) total[i] = ui.values[i] + v.v[i];
    return ScatterSolution(grid, std::move(total), std::move(ui.values));
}

GridField LippmannSchwingerSolver::apply_T(const GridField& f) const {
    if (!(f.grid == impl_->medium.grid())) {
        throw ValueError("apply_T: field grid does not match the medium grid");
    }
    GridField out(f.grid);
    if (impl_->support.empty()) return out;
    const Eigen::VectorXcd f_s = restrict_to_support(f);
    const Eigen::VectorXcd tf = apply_T_support(f_s);
    for (std::size_t s = 0; s < impl_->support.size(); ++s) {
        out.values[static_cast<std::size_t>(impl_->support[s])] = tf(static_cast<Eigen::Index>(s));
    }
    return out;
}

ScatterSolution solve_scattering(const RefractiveIndexField& m, Wavenumber k,
                                 const UnitDirection& theta, const SolverConfig& cfg) {
    return LippmannSchwingerSolver(m, k, cfg).solve_scattering(theta);
}

SourceSolution solve_source(const RefractiveIndexField& m, Wavenumber k, const GridField& f,
                            const SolverConfig& cfg) {
    return LippmannSchwingerSolver(m, k, cfg).solve_source(f);
}

GridField apply_T(const RefractiveIndexField& m, Wavenumber k, const GridField& f,
                  const SolverConfig& cfg) {
    return LippmannSchwingerSolver(m, k, cfg).apply_T(f);
}

} // namespace fflab
