#pragma once

// Stereographic two-chart atlas of the unit sphere S^{d-1} (d = 2, 3) and the
// holomorphic extension of the chart inverses.
//
// Chart "plus" covers {x_d < 3/5} and projects from the north pole,
// chart "minus" covers {x_d > -3/5} and projects from the south pole; both
// map onto the open ball of radius 2 in R^{d-1}. The transition map is the
// inversion y -> y/|y|^2.

#include <array>
#include <complex>

#include "fflab/types.hpp"

namespace fflab {

enum class ChartId { plus, minus };

inline const char* to_string(ChartId c) { return c == ChartId::plus ? "plus" : "minus"; }

// A point on S^{d-1}; the constructor rejects vectors whose norm deviates
// from 1 by more than 1e-12.
class UnitDirection {
public:
    UnitDirection(double x0, double x1);             // d = 2
    UnitDirection(double x0, double x1, double x2);  // d = 3

    // d = 2 convenience bijection with the angle parametrization.
    static UnitDirection from_angle(double alpha);
    double angle() const;  // in [0, 2*pi), d = 2 only

    int dim() const { return dim_; }
    double operator[](int i) const { return x_[static_cast<std::size_t>(i)]; }
    double last() const { return x_[static_cast<std::size_t>(dim_ - 1)]; }

    UnitDirection antipode() const;
    Vec2 vec2() const;  // d = 2 only

private:
    int dim_;
    std::array<double, 3> x_;
};

double dot(const UnitDirection& a, const UnitDirection& b);

// Chart coordinates in R^{d-1}; plain value type, no range restriction
// (stereo_inverse enforces |y| < 2 where it applies).
struct ChartCoord {
    int dim = 1;  // d - 1
    std::array<double, 2> y{0.0, 0.0};

    ChartCoord() = default;
    explicit ChartCoord(double y0) : dim(1), y{y0, 0.0} {}
    ChartCoord(double y0, double y1) : dim(2), y{y0, y1} {}

    double norm() const;
    double operator[](int i) const { return y[static_cast<std::size_t>(i)]; }
};

// Complexified chart coordinates.
struct ComplexChartCoord {
    int dim = 1;
    std::array<std::complex<double>, 2> z{};

    ComplexChartCoord() = default;
    explicit ComplexChartCoord(std::complex<double> z0) : dim(1), z{z0, 0.0} {}
    ComplexChartCoord(std::complex<double> z0, std::complex<double> z1) : dim(2), z{z0, z1} {}

    static ComplexChartCoord from_real(const ChartCoord& y);
    std::complex<double> operator[](int i) const { return z[static_cast<std::size_t>(i)]; }
};

// Complex d-vector produced by the extended chart inverse.
struct ComplexDirection {
    int dim = 2;
    std::array<std::complex<double>, 3> x{};
    std::complex<double> operator[](int i) const { return x[static_cast<std::size_t>(i)]; }
};

// Validity region V of the holomorphic extension: per component
// |Re z_j| < 2.5 and |Im z_j| < 0.5. On V the denominator 1 + sum z_j^2
// stays bounded away from zero (|1 + s| > 0.5).
bool in_validity_region(const ComplexChartCoord& z);

ChartCoord stereo_forward(const UnitDirection& x, ChartId chart);
UnitDirection stereo_inverse(const ChartCoord& y, ChartId chart);
ComplexDirection stereo_inverse_complex(const ComplexChartCoord& z, ChartId chart);
ChartCoord transition(const ChartCoord& y);

// Deterministic chart pick (x_d <= 0 -> plus); keeps |coordinates| <= 1.
ChartId select_chart(const UnitDirection& x);

// True when x lies in the open domain of the chart (1e-12 slack).
bool in_chart_domain(const UnitDirection& x, ChartId chart);

} // namespace fflab
