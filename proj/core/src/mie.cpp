#include "fflab/mie.hpp"

#include <cmath>
#include <sstream>

#include "fflab/bessel.hpp"
#include "fflab/errors.hpp"

namespace fflab {

namespace {

constexpr int kModeCap = 200;

cplx ipow(int m) {
    switch (m & 3) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
    }
}

struct ModeData {
    std::vector<double> jx, yx;   // J_m(kR), Y_m(kR), m = 0..M+1
    std::vector<cplx> jz;         // J_m(k sqrt(n0) R)

    cplx h(int m) const { return {jx[static_cast<std::size_t>(m)], yx[static_cast<std::size_t>(m)]}; }
    cplx hp(int m) const {
        if (m == 0) return -h(1);
        return 0.5 * (h(m - 1) - h(m + 1));
    }
    double jp(int m) const {
        if (m == 0) return -jx[1];
        return 0.5 * (jx[static_cast<std::size_t>(m - 1)] - jx[static_cast<std::size_t>(m + 1)]);
    }
    cplx jzp(int m) const {
        if (m == 0) return -jz[1];
        return 0.5 * (jz[static_cast<std::size_t>(m - 1)] - jz[static_cast<std::size_t>(m + 1)]);
    }
};

} // namespace

MieSeries mie_build(double radius, cplx n0, Wavenumber k, double tol) {
    if (!(radius > 0.0)) throw ValueError("mie_build: radius must be positive");
    if (n0.real() < 0.0 || n0.imag() < 0.0) {
        throw ValueError("mie_build: Re(n0) >= 0 and Im(n0) >= 0 required");
    }
    if (!(tol > 0.0)) throw ValueError("mie_build: tol must be positive");

    const double x = k.value() * radius;
    const cplx root = std::sqrt(n0);
    const cplx z = k.value() * root * radius;

    MieSeries out;
    out.radius = radius;
    out.n0 = n0;
    out.k = k.value();
    out.max_matching_residual = 0.0;

    int mmax = static_cast<int>(std::ceil(x)) + 8;
    ModeData data;
    auto refill = [&](int upto) {
        data.jx = bessel_j_sequence(upto + 1, x);
        data.yx = bessel_y_sequence(upto + 1, x);
        data.jz.resize(static_cast<std::size_t>(upto) + 2);
        for (int m = 0; m <= upto + 1; ++m) {
            data.jz[static_cast<std::size_t>(m)] = bessel_j_complex(m, z);
        }
    };
    refill(mmax);

    int settled = 0;  // consecutive modes below the certificate
    for (int m = 0; m <= kModeCap; ++m) {
        if (m > mmax) {
            mmax += 8;
            refill(mmax);
        }
        const cplx jm = data.jx[static_cast<std::size_t>(m)];
        const cplx jpm = data.jp(m);
        const cplx hm = data.h(m);
        const cplx hpm = data.hp(m);
        const cplx jzm = data.jz[static_cast<std::size_t>(m)];
        const cplx jzpm = data.jzp(m);

        // c_m J_m(z) - b_m H_m(x) = i^m J_m(x)
        // c_m root J'_m(z) - b_m H'_m(x) = i^m J'_m(x)
        const cplx det = -jzm * hpm + root * jzpm * hm;
        const cplx rhs = ipow(m);
        const cplx bm = rhs * (jzm * jpm - root * jzpm * jm) / det;
        const cplx cm = rhs * (hm * jpm - hpm * jm) / det;
        out.scattered.push_back(bm);
        out.interior.push_back(cm);

        const double scale = std::max({std::abs(jm), std::abs(jpm), 1e-30});
        const double r1 = std::abs(cm * jzm - bm * hm - rhs * jm);
        const double r2 = std::abs(cm * root * jzpm - bm * hpm - rhs * jpm);
        out.max_matching_residual = std::max(out.max_matching_residual, std::max(r1, r2) / scale);

        // certificate: scattered amplitude and the incident/interior mode
        // content at the rim all negligible
        const double content = std::max({std::abs(bm), std::abs(jm), std::abs(cm * jzm)});
        settled = content < tol ? settled + 1 : 0;
        if (settled >= 3 && m >= 4) {
            out.truncation = m;
            return out;
        }
    }
    std::ostringstream os;
    os << "mie_build: mode amplitudes did not decay below " << tol << " within " << kModeCap
       << " modes";
    throw NonconvergenceError(os.str());
}

namespace {

double relative_angle(const UnitDirection& xhat, const UnitDirection& theta) {
    return xhat.angle() - theta.angle();
}

} // namespace

cplx mie_far_field(const MieSeries& s, const UnitDirection& xhat, const UnitDirection& theta) {
    // H_m^(1)(kr) ~ sqrt(2/(pi k r)) e^{i(kr - m pi/2 - pi/4)} turns the
    // scattered series into e^{ikr}/sqrt(r) * u_inf with
    // u_inf = sqrt(2/(pi k)) e^{-i pi/4} sum_m b_m (-i)^m e^{im phi}.
    const double phi = relative_angle(xhat, theta);
    cplx acc = s.scattered[0];
    for (int m = 1; m <= s.truncation; ++m) {
        const cplx minus_i_pow = std::conj(ipow(m));
        acc += 2.0 * s.scattered[static_cast<std::size_t>(m)] * minus_i_pow * std::cos(m * phi);
    }
    return std::polar(std::sqrt(2.0 / (pi * s.k)), -pi / 4.0) * acc;
}

cplx mie_near_field(const MieSeries& s, Vec2 point, const UnitDirection& theta) {
    const double r = norm(point);
    const double phi = std::atan2(point[1], point[0]) - theta.angle();
    if (r >= s.radius) {
        // exact incident wave plus the scattered Hankel series
        const double phase = s.k * (point[0] * theta[0] + point[1] * theta[1]);
        cplx u(std::cos(phase), std::sin(phase));
        const auto jx = bessel_j_sequence(s.truncation, s.k * r);
        const auto yx = bessel_y_sequence(s.truncation, s.k * r);
        cplx acc = s.scattered[0] * cplx(jx[0], yx[0]);
        for (int m = 1; m <= s.truncation; ++m) {
            acc += 2.0 * s.scattered[static_cast<std::size_t>(m)]
                   * cplx(jx[static_cast<std::size_t>(m)], yx[static_cast<std::size_t>(m)])
                   * std::cos(m * phi);
        }
        return u + acc;
    }
    const cplx z = s.k * std::sqrt(s.n0) * r;
    cplx acc = s.interior[0] * bessel_j_complex(0, z);
    for (int m = 1; m <= s.truncation; ++m) {
        acc += 2.0 * s.interior[static_cast<std::size_t>(m)] * bessel_j_complex(m, z)
               * std::cos(m * phi);
    }
    return acc;
}

} // namespace fflab
