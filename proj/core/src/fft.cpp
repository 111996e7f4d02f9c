#include "fflab/fft.hpp"

#include <cmath>

#include "fflab/errors.hpp"
#include "fflab/types.hpp"

namespace fflab {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void fft_pow2(std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    if (!is_pow2(n)) throw ValueError("fft_pow2: length must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = (inverse ? 2.0 : -2.0) * pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0, 0.0);
            for (std::size_t j = 0; j < len / 2; ++j) {
                const cplx u = a[i + j];
                const cplx v = a[i + j + len / 2] * w;
                a[i + j] = u + v;
                a[i + j + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& x : a) x *= scale;
    }
}

std::vector<cplx> dft(const std::vector<cplx>& a, bool inverse) {
    const std::size_t n = a.size();
    std::vector<cplx> out(n, cplx(0.0, 0.0));
    const double sgn = inverse ? 1.0 : -1.0;
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc(0.0, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const double ang = sgn * 2.0 * pi * static_cast<double>(j * k % n) / static_cast<double>(n);
            acc += a[j] * cplx(std::cos(ang), std::sin(ang));
        }
        out[k] = inverse ? acc / static_cast<double>(n) : acc;
    }
    return out;
}

std::vector<cplx> dft_any(std::vector<cplx> a, bool inverse) {
    if (is_pow2(a.size())) {
        fft_pow2(a, inverse);
        return a;
    }
    return dft(a, inverse);
}

Eigen::MatrixXcd dft2(const Eigen::MatrixXcd& in, bool inverse) {
    const auto rows = in.rows(), cols = in.cols();
    Eigen::MatrixXcd tmp(rows, cols);
    std::vector<cplx> buf;
    for (Eigen::Index i = 0; i < rows; ++i) {
        buf.assign(in.row(i).begin(), in.row(i).end());
        const auto t = dft_any(std::move(buf), inverse);
        for (Eigen::Index j = 0; j < cols; ++j) tmp(i, j) = t[static_cast<std::size_t>(j)];
    }
    Eigen::MatrixXcd out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
        buf.assign(tmp.col(j).begin(), tmp.col(j).end());
        const auto t = dft_any(std::move(buf), inverse);
        for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = t[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace fflab
