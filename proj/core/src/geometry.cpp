#include "fflab/geometry.hpp"

#include <cmath>
#include <sstream>

#include "fflab/errors.hpp"

namespace fflab {

namespace {

constexpr double kUnitNormSlack = 1e-12;
constexpr double kChartDomainSlack = 1e-12;
constexpr double kChartBound = 3.0 / 5.0;

void check_unit_norm(double norm_sq) {
    if (std::abs(std::sqrt(norm_sq) - 1.0) > kUnitNormSlack) {
        std::ostringstream os;
        os << "UnitDirection: vector norm " << std::sqrt(norm_sq) << " is not 1";
        throw ValueError(os.str());
    }
}

} // namespace

UnitDirection::UnitDirection(double x0, double x1) : dim_(2), x_{x0, x1, 0.0} {
    check_unit_norm(x0 * x0 + x1 * x1);
}

UnitDirection::UnitDirection(double x0, double x1, double x2) : dim_(3), x_{x0, x1, x2} {
    check_unit_norm(x0 * x0 + x1 * x1 + x2 * x2);
}

UnitDirection UnitDirection::from_angle(double alpha) {
    return UnitDirection(std::cos(alpha), std::sin(alpha));
}

double UnitDirection::angle() const {
    if (dim_ != 2) throw ValueError("UnitDirection::angle: defined for d = 2 only");
    double a = std::atan2(x_[1], x_[0]);
    if (a < 0.0) a += 2.0 * pi;
    return a;
}

UnitDirection UnitDirection::antipode() const {
    if (dim_ == 2) return UnitDirection(-x_[0], -x_[1]);
    return UnitDirection(-x_[0], -x_[1], -x_[2]);
}

Vec2 UnitDirection::vec2() const {
    if (dim_ != 2) throw ValueError("UnitDirection::vec2: defined for d = 2 only");
    return {x_[0], x_[1]};
}

double dot(const UnitDirection& a, const UnitDirection& b) {
    if (a.dim() != b.dim()) throw ValueError("dot: dimension mismatch");
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += a[i] * b[i];
    return s;
}

double ChartCoord::norm() const {
    return dim == 1 ? std::abs(y[0]) : std::hypot(y[0], y[1]);
}

ComplexChartCoord ComplexChartCoord::from_real(const ChartCoord& c) {
    ComplexChartCoord z;
    z.dim = c.dim;
    z.z = {std::complex<double>(c.y[0], 0.0), std::complex<double>(c.y[1], 0.0)};
    return z;
}

bool in_validity_region(const ComplexChartCoord& z) {
    for (int j = 0; j < z.dim; ++j) {
        if (std::abs(z[j].real()) >= 2.5 || std::abs(z[j].imag()) >= 0.5) return false;
    }
    return true;
}

bool in_chart_domain(const UnitDirection& x, ChartId chart) {
    const double xd = x.last();
    if (chart == ChartId::plus) return xd < kChartBound + kChartDomainSlack;
    return xd > -kChartBound - kChartDomainSlack;
}

ChartCoord stereo_forward(const UnitDirection& x, ChartId chart) {
    if (!in_chart_domain(x, chart)) {
        std::ostringstream os;
        os << "stereo_forward: direction with x_d = " << x.last()
           << " outside domain of chart " << to_string(chart);
        throw DomainError(os.str());
    }
    const double denom = chart == ChartId::plus ? 1.0 - x.last() : 1.0 + x.last();
    ChartCoord y;
    y.dim = x.dim() - 1;
    for (int i = 0; i < y.dim; ++i) y.y[static_cast<std::size_t>(i)] = x[i] / denom;
    return y;
}

UnitDirection stereo_inverse(const ChartCoord& y, ChartId chart) {
    const double r2 = y.dim == 1 ? y[0] * y[0] : y[0] * y[0] + y[1] * y[1];
    if (r2 >= 4.0) {
        std::ostringstream os;
        os << "stereo_inverse: |y| = " << std::sqrt(r2) << " outside the chart image B_2(0)";
        throw DomainError(os.str());
    }
    const double denom = 1.0 + r2;
    const double last = chart == ChartId::plus ? (r2 - 1.0) / denom : (1.0 - r2) / denom;
    if (y.dim == 1) return UnitDirection(2.0 * y[0] / denom, last);
    return UnitDirection(2.0 * y[0] / denom, 2.0 * y[1] / denom, last);
}

ComplexDirection stereo_inverse_complex(const ComplexChartCoord& z, ChartId chart) {
    if (!in_validity_region(z)) {
        throw DomainError("stereo_inverse_complex: coordinate outside the validity region V");
    }
    // |y|^2 extends as sum z_j^2 (no conjugation).
    std::complex<double> s = 0.0;
    for (int j = 0; j < z.dim; ++j) s += z[j] * z[j];
    const std::complex<double> denom = 1.0 + s;
    ComplexDirection out;
    out.dim = z.dim + 1;
    for (int j = 0; j < z.dim; ++j) out.x[static_cast<std::size_t>(j)] = 2.0 * z[j] / denom;
    out.x[static_cast<std::size_t>(z.dim)] =
        chart == ChartId::plus ? (s - 1.0) / denom : (1.0 - s) / denom;
    return out;
}

ChartCoord transition(const ChartCoord& y) {
    const double r2 = y.dim == 1 ? y[0] * y[0] : y[0] * y[0] + y[1] * y[1];
    if (r2 == 0.0) throw DomainError("transition: undefined at y = 0");
    ChartCoord out;
    out.dim = y.dim;
    for (int i = 0; i < y.dim; ++i) out.y[static_cast<std::size_t>(i)] = y[i] / r2;
    return out;
}

ChartId select_chart(const UnitDirection& x) {
    return x.last() <= 0.0 ? ChartId::plus : ChartId::minus;
}

} // namespace fflab
