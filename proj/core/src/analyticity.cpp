#include "fflab/analyticity.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "fflab/errors.hpp"
#include "fflab/fft.hpp"

namespace fflab {

TorusSamples sample_torus(const LippmannSchwingerSolver& solver, int n) {
    if (n < 8 || n % 2 != 0) throw ValueError("sample_torus: n must be even and >= 8");
    const DirectionSet set = DirectionSet::uniform_circle(n);
    return {n, far_field_matrix(solver, set, set).values, solver.wavenumber()};
}

TorusSamples sample_torus(const RefractiveIndexField& m, Wavenumber k, int n,
                          const SolverConfig& cfg) {
    return sample_torus(LippmannSchwingerSolver(m, k, cfg), n);
}

FourierDecayReport fourier_decay(const TorusSamples& samples, double floor) {
    if (!(floor > 0.0)) throw ValueError("fourier_decay: floor must be positive");
    const int n = samples.n;
    FourierDecayReport report;
    report.n = n;
    report.floor = floor;
    report.coefficients = dft2(samples.values, false) / static_cast<double>(n) / static_cast<double>(n);

    // least squares for ln|c| = alpha - tau * s over usable coefficients
    double sw = 0.0, ss = 0.0, ss2 = 0.0, sl = 0.0, ssl = 0.0;
    std::vector<std::pair<double, double>> pts;  // (total order, ln|c|)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const int m = FourierDecayReport::frequency(i, n);
            const int l = FourierDecayReport::frequency(j, n);
            const int s = std::abs(m) + std::abs(l);
            const double mag = std::abs(report.coefficients(i, j));
            if (s < 2 || mag <= floor) continue;
            pts.emplace_back(static_cast<double>(s), std::log(mag));
        }
    }
    report.coefficients_used = static_cast<int>(pts.size());
    if (pts.size() < 25) {
        std::ostringstream os;
        os << "fourier_decay: only " << pts.size() << " coefficients above floor " << floor
           << " (need 25)";
        throw InsufficientSignalError(os.str());
    }
    for (const auto& [s, l] : pts) {
        sw += 1.0;
        ss += s;
        ss2 += s * s;
        sl += l;
        ssl += s * l;
    }
    const double det = sw * ss2 - ss * ss;
    const double slope = (sw * ssl - ss * sl) / det;
    const double alpha = (ss2 * sl - ss * ssl) / det;
    report.tau = -slope;
    report.intercept_log10 = alpha / std::log(10.0);
    double acc = 0.0;
    for (const auto& [s, l] : pts) {
        const double r = l - (alpha + slope * s);
        acc += r * r;
    }
    report.fit_rms_log10 = std::sqrt(acc / sw) / std::log(10.0);
    return report;
}

TaylorModel taylor_coefficients(const LippmannSchwingerSolver& solver, const UnitDirection& xhat0,
                                const UnitDirection& theta0, int order, double rho, int nodes) {
    if (order < 0) throw ValueError("taylor_coefficients: order must be nonnegative");
    if (!(rho > 0.0) || rho > 0.25) {
        throw DomainError("taylor_coefficients: rho must lie in (0, 0.25] to keep the bicircle in V");
    }
    if (nodes == 0) {
        nodes = std::max(4 * order, 32);
    } else if (nodes < std::max(4 * order, 4)) {
        throw ValueError("taylor_coefficients: nodes must be at least 4*order");
    }

    TaylorModel model;
    model.chart_obs = select_chart(xhat0);
    model.chart_inc = select_chart(theta0);
    model.z0 = stereo_forward(xhat0, model.chart_obs)[0];
    model.w0 = stereo_forward(theta0, model.chart_inc)[0];
    model.order = order;
    model.rho = rho;
    if (std::abs(model.z0) + rho >= 2.5 || std::abs(model.w0) + rho >= 2.5) {
        throw DomainError("taylor_coefficients: bicircle leaves the validity region V");
    }

    // H on the bicircle: one T-application per incidence node, then one
    // weighted quadrature per node pair.
    const double kv = solver.wavenumber().value();
    const cplx ik(0.0, kv);
    const auto& pts = solver.support_points();
    const Eigen::Index ns = static_cast<Eigen::Index>(pts.size());
    const int M = nodes;
    Eigen::MatrixXcd H(M, M);
    if (ns == 0) {
        H.setZero();
    } else {
        Eigen::MatrixXcd tf(ns, M);
        for (int t = 0; t < M; ++t) {
            const double phi = 2.0 * pi * t / M;
            const ComplexChartCoord w(cplx(model.w0 + rho * std::cos(phi), rho * std::sin(phi)));
            const ComplexDirection dir = stereo_inverse_complex(w, model.chart_inc);
            Eigen::VectorXcd f(ns);
            for (Eigen::Index s = 0; s < ns; ++s) {
                const auto& y = pts[static_cast<std::size_t>(s)];
                f(s) = std::exp(ik * (dir[0] * y[0] + dir[1] * y[1]));
            }
            tf.col(t) = solver.apply_T_support(f);
        }
        Eigen::MatrixXcd obs(M, ns);
        for (int s = 0; s < M; ++s) {
            const double phi = 2.0 * pi * s / M;
            const ComplexChartCoord z(cplx(model.z0 + rho * std::cos(phi), rho * std::sin(phi)));
            const ComplexDirection dir = stereo_inverse_complex(z, model.chart_obs);
            for (Eigen::Index c = 0; c < ns; ++c) {
                const auto& y = pts[static_cast<std::size_t>(c)];
                obs(s, c) = std::exp(-ik * (dir[0] * y[0] + dir[1] * y[1]));
            }
        }
        const cplx scale = far_field_constant(2, solver.wavenumber())
                           * solver.medium().grid().cell_area();
        H = scale * (obs * tf);
    }

    // a_{mn} = (1/M^2) sum_{s,t} H(s,t) rho^{-m-n} e^{-i(m phi_s + n phi_t)}
    Eigen::MatrixXcd twiddle(order + 1, M);
    for (int m = 0; m <= order; ++m) {
        for (int s = 0; s < M; ++s) {
            const double ang = -2.0 * pi * m * s / M;
            twiddle(m, s) = cplx(std::cos(ang), std::sin(ang));
        }
    }
    model.coeff.resize(order + 1, order + 1);
    const Eigen::MatrixXcd partial = twiddle * H;  // sum over s
    for (int m = 0; m <= order; ++m) {
        for (int nn = 0; nn <= order; ++nn) {
            cplx acc(0.0, 0.0);
            for (int t = 0; t < M; ++t) acc += partial(m, t) * twiddle(nn, t);
            model.coeff(m, nn) = acc / static_cast<double>(M) / static_cast<double>(M)
                                 / std::pow(rho, m + nn);
        }
    }
    return model;
}

TaylorModel taylor_coefficients(const RefractiveIndexField& m, Wavenumber k,
                                const UnitDirection& xhat0, const UnitDirection& theta0, int order,
                                double rho, int nodes, const SolverConfig& cfg) {
    return taylor_coefficients(LippmannSchwingerSolver(m, k, cfg), xhat0, theta0, order, rho, nodes);
}

cplx taylor_evaluate(const TaylorModel& model, const UnitDirection& xhat,
                     const UnitDirection& theta) {
    const double z = stereo_forward(xhat, model.chart_obs)[0];
    const double w = stereo_forward(theta, model.chart_inc)[0];
    const double dz = z - model.z0, dw = w - model.w0;
    if (std::abs(dz) > model.rho / 2.0 || std::abs(dw) > model.rho / 2.0) {
        std::ostringstream os;
        os << "taylor_evaluate: chart distance (" << std::abs(dz) << ", " << std::abs(dw)
           << ") outside the trust region rho/2 = " << model.rho / 2.0;
        throw OutOfRadiusError(os.str());
    }
    // Horner in w inside Horner in z
    cplx acc(0.0, 0.0);
    for (int m = model.order; m >= 0; --m) {
        cplx row(0.0, 0.0);
        for (int n = model.order; n >= 0; --n) row = row * dw + model.coeff(m, n);
        acc = acc * dz + row;
    }
    return acc;
}

double counterexample_eval(double x, double y) {
    if (x == 0.0 && y == 0.0) return 0.0;
    return x * y / (x * x + y * y);
}

std::vector<double> counterexample_restriction_taylor(double y0, int degree) {
    if (y0 == 0.0) throw ValueError("counterexample_restriction_taylor: y0 must be nonzero");
    if (degree < 0) throw ValueError("counterexample_restriction_taylor: degree must be nonnegative");
    // long division of (y0 x) by (y0^2 + x^2) in ascending powers
    std::vector<double> num(static_cast<std::size_t>(degree) + 3, 0.0);
    if (degree >= 1) num[1] = y0;
    std::vector<double> coeff(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int j = 0; j <= degree; ++j) {
        const double c = num[static_cast<std::size_t>(j)] / (y0 * y0);
        coeff[static_cast<std::size_t>(j)] = c;
        // subtract c x^j (y0^2 + x^2)
        num[static_cast<std::size_t>(j)] -= c * y0 * y0;
        if (j + 2 < static_cast<int>(num.size())) num[static_cast<std::size_t>(j + 2)] -= c;
    }
    return coeff;
}

namespace {

double eval_poly(const std::vector<double>& coeff, double x) {
    double acc = 0.0;
    for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int monomial_count(int degree) { return (degree + 1) * (degree + 2) / 2; }

// Least-squares fit of a total-degree-p polynomial to f on a symmetric grid
// around the origin (coordinates scaled to [-1,1] for conditioning), then the
// worst deviation from f along the diagonal |t| <= t_max.
double bivariate_fit_diagonal_error(int degree, double box, double t_max) {
    const int grid = 41;
    const int rows = grid * grid;
    const int cols = monomial_count(degree);
    Eigen::MatrixXd A(rows, cols);
    Eigen::VectorXd b(rows);
    int r = 0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const double u = -1.0 + 2.0 * i / (grid - 1);
            const double v = -1.0 + 2.0 * j / (grid - 1);
            int c = 0;
            for (int total = 0; total <= degree; ++total) {
                for (int a = 0; a <= total; ++a) {
                    A(r, c++) = std::pow(u, a) * std::pow(v, total - a);
                }
            }
            b(r++) = counterexample_eval(box * u, box * v);
        }
    }
    const Eigen::VectorXd sol = A.colPivHouseholderQr().solve(b);
    double worst = 0.0;
    const int nt = 41;
    for (int i = 0; i < nt; ++i) {
        const double t = -t_max + 2.0 * t_max * i / (nt - 1);
        const double u = t / box;
        int c = 0;
        double p = 0.0;
        for (int total = 0; total <= degree; ++total) {
            for (int a = 0; a <= total; ++a) {
                p += sol(c++) * std::pow(u, a) * std::pow(u, total - a);
            }
        }
        worst = std::max(worst, std::abs(p - counterexample_eval(t, t)));
    }
    return worst;
}

} // namespace

CounterexampleReport counterexample_report(double t_min, double t_max, int samples) {
    if (!(t_min > 0.0) || !(t_max > t_min)) {
        throw ValueError("counterexample_report: need 0 < t_min < t_max");
    }
    if (samples < 2) throw ValueError("counterexample_report: need at least 2 samples");

    CounterexampleReport rep;
    rep.t_min = t_min;
    rep.t_max = t_max;
    for (int i = 0; i < samples; ++i) {
        const double t = t_min + (t_max - t_min) * i / (samples - 1);
        rep.diagonal_t.push_back(t);
        rep.diagonal_values.push_back(counterexample_eval(t, t));
        rep.axis_values.push_back(counterexample_eval(t, 0.0));
    }
    rep.origin_value = counterexample_eval(0.0, 0.0);
    rep.diagonal_limit = 0.5;

    // restrictions agree with their own Taylor expansions: degree 21 keeps
    // the geometric remainder below 1e-11 on |x| <= 0.3 (ratio 0.09)
    rep.restriction_offset = 1.0;
    rep.restriction_degree = 21;
    const auto coeff = counterexample_restriction_taylor(rep.restriction_offset, rep.restriction_degree);
    double worst = 0.0;
    const int nx = 121;
    for (int i = 0; i < nx; ++i) {
        const double xx = -0.3 + 0.6 * i / (nx - 1);
        worst = std::max(worst, std::abs(eval_poly(coeff, xx)
                                         - counterexample_eval(xx, rep.restriction_offset)));
    }
    rep.restriction_max_error_x = worst;
    rep.restriction_max_error_y = worst;  // f is symmetric in (x, y)

    rep.fit_min_diagonal_error = std::numeric_limits<double>::infinity();
    for (int p = 1; p <= 10; ++p) {
        const double err = bivariate_fit_diagonal_error(p, 0.2, 0.1);
        rep.fit_degrees.push_back(p);
        rep.fit_diagonal_errors.push_back(err);
        rep.fit_min_diagonal_error = std::min(rep.fit_min_diagonal_error, err);
    }
    return rep;
}

} // namespace fflab
