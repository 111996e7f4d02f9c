#pragma once

// Separation-of-variables reference solution for scattering of a plane wave
// by a constant-index disc (center 0, radius R) in 2-D. Per angular mode m
// the interior J_m(k sqrt(n0) r) and exterior J_m(kr) + b_m H_m^(1)(kr)
// expansions are matched in value and radial derivative at r = R. Used as an
// independent oracle for the volume-integral solver and the far field
// normalization.

#include <complex>
#include <vector>

#include "fflab/geometry.hpp"
#include "fflab/medium.hpp"
#include "fflab/types.hpp"

namespace fflab {

struct MieSeries {
    double radius;
    cplx n0;
    double k;
    int truncation;                 // modes 0..truncation included
    std::vector<cplx> scattered;    // b_m (includes the i^m incident factor)
    std::vector<cplx> interior;     // c_m (same convention)
    double max_matching_residual;   // worst per-mode matching defect
};

// tol is the truncation certificate: modes are added until the scattered
// amplitude and the mode content of the fields fall below it.
MieSeries mie_build(double radius, cplx n0, Wavenumber k, double tol = 1e-14);

// Far field in the e^{ik|x|}/sqrt(|x|) normalization; depends only on the
// angle between observation and incidence.
cplx mie_far_field(const MieSeries& s, const UnitDirection& xhat, const UnitDirection& theta);

// Total field at a point for incident direction theta.
cplx mie_near_field(const MieSeries& s, Vec2 point, const UnitDirection& theta);

} // namespace fflab
