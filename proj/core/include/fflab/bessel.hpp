#pragma once

// Cylinder Bessel functions J_n, Y_n and the outgoing Hankel function
// H_n^(1) = J_n + i Y_n, plus J_n at complex argument for the Mie series.
//
// Accuracy target: relative error <= 1e-12 for 0 < x <= 50 and order <= 30
// (absolute, scaled by the local amplitude, near zeros of J_n / Y_n).
// Strategy: power series in extended precision for x <= 17, large-argument
// Hankel asymptotics beyond, Miller downward recurrence for higher-order J
// and upward recurrence for higher-order Y.

#include <complex>
#include <vector>

namespace fflab {

enum class BesselKind { J, Y };

double bessel_j(int order, double x);  // order >= 0, x >= 0
double bessel_y(int order, double x);  // order >= 0, x > 0

// Dispatching form; J requires x >= 0, Y requires x > 0 (DomainError otherwise).
double bessel(BesselKind kind, int order, double x);

// All of J_0..J_nmax (resp. Y_0..Y_nmax) in one pass.
std::vector<double> bessel_j_sequence(int nmax, double x);
std::vector<double> bessel_y_sequence(int nmax, double x);

std::complex<double> hankel1(int order, double x);

// Power series evaluation; intended for moderate |z| (say |z| <= 12), which
// covers the interior Mie arguments at desk scale.
std::complex<double> bessel_j_complex(int order, std::complex<double> z);

} // namespace fflab
