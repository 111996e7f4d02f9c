#include "fflab/medium.hpp"

#include <cmath>
#include <sstream>

#include "fflab/errors.hpp"

namespace fflab {

namespace {

// The boundary layer carries n = 1 exactly; allow only representation noise.
constexpr double kBoundarySlack = 1e-13;

void check_index_value(cplx n, int ix, int iy) {
    if (n.real() < 0.0 || n.imag() < 0.0) {
        std::ostringstream os;
        os << "RefractiveIndexField: Re(n) >= 0 and Im(n) >= 0 required, got "
           << n.real() << (n.imag() < 0 ? " - " : " + ") << std::abs(n.imag())
           << "i at cell (" << ix << ", " << iy << ")";
        throw ValueError(os.str());
    }
}

} // namespace

Wavenumber::Wavenumber(double k) : k_(k) {
    if (!(k > 0.0)) throw ValueError("Wavenumber: k must be positive");
}

GridBox::GridBox(Vec2 center, Vec2 half_width, std::array<int, 2> resolution)
    : center_(center), half_width_(half_width), res_(resolution) {
    if (!(half_width[0] > 0.0) || !(half_width[1] > 0.0)) {
        throw ValueError("GridBox: half widths must be positive");
    }
    if (resolution[0] < 1 || resolution[1] < 1) {
        throw ValueError("GridBox: resolution must be positive");
    }
    hx_ = 2.0 * half_width_[0] / res_[0];
    hy_ = 2.0 * half_width_[1] / res_[1];
}

Vec2 GridBox::cell_center(int ix, int iy) const {
    return {center_[0] - half_width_[0] + (ix + 0.5) * hx_,
            center_[1] - half_width_[1] + (iy + 0.5) * hy_};
}

bool GridBox::boundary_layer(int ix, int iy) const {
    return ix == 0 || iy == 0 || ix == res_[0] - 1 || iy == res_[1] - 1;
}

bool GridBox::operator==(const GridBox& other) const {
    return center_ == other.center_ && half_width_ == other.half_width_ && res_ == other.res_;
}

GridField::GridField(const GridBox& g, std::vector<cplx> v) : grid(g), values(std::move(v)) {
    if (values.size() != static_cast<std::size_t>(g.cell_count())) {
        throw ValueError("GridField: value count does not match cell count");
    }
}

RefractiveIndexField::RefractiveIndexField(const GridBox& grid, std::vector<cplx> values)
    : grid_(grid), n_(std::move(values)) {
    if (n_.size() != static_cast<std::size_t>(grid_.cell_count())) {
        throw ValueError("RefractiveIndexField: value count does not match cell count");
    }
    for (int iy = 0; iy < grid_.ny(); ++iy) {
        for (int ix = 0; ix < grid_.nx(); ++ix) {
            const cplx n = n_[static_cast<std::size_t>(grid_.index(ix, iy))];
            check_index_value(n, ix, iy);
            if (grid_.boundary_layer(ix, iy) && std::abs(n - 1.0) > kBoundarySlack) {
                std::ostringstream os;
                os << "RefractiveIndexField: n must equal 1 on the boundary layer, cell ("
                   << ix << ", " << iy << ")";
                throw GeometryError(os.str());
            }
        }
    }
}

GridField contrast(const RefractiveIndexField& m) {
    std::vector<cplx> q(m.values().begin(), m.values().end());
    for (auto& v : q) v -= 1.0;
    return GridField(m.grid(), std::move(q));
}

std::vector<cplx> plane_wave(Wavenumber k, const UnitDirection& theta, std::span<const Vec2> points) {
    if (theta.dim() != 2) throw ValueError("plane_wave: 2-D directions only");
    std::vector<cplx> out;
    out.reserve(points.size());
    const double kx = k.value() * theta[0], ky = k.value() * theta[1];
    for (const auto& p : points) {
        const double phase = kx * p[0] + ky * p[1];
        out.emplace_back(std::cos(phase), std::sin(phase));
    }
    return out;
}

GridField plane_wave_field(Wavenumber k, const UnitDirection& theta, const GridBox& grid) {
    GridField f(grid);
    const double kx = k.value() * theta[0], ky = k.value() * theta[1];
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Vec2 p = grid.cell_center(ix, iy);
            const double phase = kx * p[0] + ky * p[1];
            f.values[static_cast<std::size_t>(grid.index(ix, iy))] = {std::cos(phase), std::sin(phase)};
        }
    }
    return f;
}

RefractiveIndexField homogeneous_medium(const GridBox& grid) {
    return RefractiveIndexField(grid, std::vector<cplx>(static_cast<std::size_t>(grid.cell_count()), cplx(1.0, 0.0)));
}

namespace {

// The support must stay clear of the one-cell boundary layer.
void check_disc_fits(Vec2 center, double radius, const GridBox& grid, const char* who) {
    const Vec2 lo = {grid.center()[0] - grid.half_width()[0] + grid.hx(),
                     grid.center()[1] - grid.half_width()[1] + grid.hy()};
    const Vec2 hi = {grid.center()[0] + grid.half_width()[0] - grid.hx(),
                     grid.center()[1] + grid.half_width()[1] - grid.hy()};
    if (center[0] - radius < lo[0] || center[0] + radius > hi[0] ||
        center[1] - radius < lo[1] || center[1] + radius > hi[1]) {
        std::ostringstream os;
        os << who << ": disc of radius " << radius << " touches the boundary layer";
        throw GeometryError(os.str());
    }
}

} // namespace

RefractiveIndexField disc_medium(Vec2 center, double radius, cplx n0, const GridBox& grid) {
    if (radius < 0.0) throw ValueError("disc_medium: radius must be nonnegative");
    if (n0.real() < 0.0 || n0.imag() < 0.0) {
        throw ValueError("disc_medium: Re(n0) >= 0 and Im(n0) >= 0 required");
    }
    if (radius > 0.0) check_disc_fits(center, radius, grid, "disc_medium");
    std::vector<cplx> n(static_cast<std::size_t>(grid.cell_count()), cplx(1.0, 0.0));
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Vec2 p = grid.cell_center(ix, iy) - center;
            if (p[0] * p[0] + p[1] * p[1] < radius * radius) {
                n[static_cast<std::size_t>(grid.index(ix, iy))] = n0;
            }
        }
    }
    return RefractiveIndexField(grid, std::move(n));
}

RefractiveIndexField bump_medium(Vec2 center, double radius, cplx amplitude, const GridBox& grid) {
    if (radius < 0.0) throw ValueError("bump_medium: radius must be nonnegative");
    if (radius > 0.0) check_disc_fits(center, radius, grid, "bump_medium");
    std::vector<cplx> n(static_cast<std::size_t>(grid.cell_count()), cplx(1.0, 0.0));
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Vec2 p = grid.cell_center(ix, iy) - center;
            const double s = (p[0] * p[0] + p[1] * p[1]) / (radius * radius);
            if (s < 1.0) {
                const double shape = std::exp(1.0 - 1.0 / (1.0 - s));
                const cplx v = 1.0 + amplitude * shape;
                if (v.real() < 0.0 || v.imag() < 0.0) {
                    throw ValueError("bump_medium: amplitude violates the sign conditions on n");
                }
                n[static_cast<std::size_t>(grid.index(ix, iy))] = v;
            }
        }
    }
    return RefractiveIndexField(grid, std::move(n));
}

} // namespace fflab
