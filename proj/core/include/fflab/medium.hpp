#pragma once

// Refractive index fields n on a uniform cell-centered grid over a box B,
// the contrast q = n - 1 (compactly supported inside B via a one-cell
// boundary layer where n = 1), plane-wave incident fields, and the built-in
// test media (constant disc, smooth bump).

#include <complex>
#include <span>
#include <vector>

#include "fflab/geometry.hpp"
#include "fflab/types.hpp"

namespace fflab {

class Wavenumber {
public:
    explicit Wavenumber(double k);
    double value() const { return k_; }

private:
    double k_;
};

class GridBox {
public:
    GridBox(Vec2 center, Vec2 half_width, std::array<int, 2> resolution);

    int nx() const { return res_[0]; }
    int ny() const { return res_[1]; }
    int cell_count() const { return res_[0] * res_[1]; }
    double hx() const { return hx_; }
    double hy() const { return hy_; }
    double cell_area() const { return hx_ * hy_; }
    Vec2 center() const { return center_; }
    Vec2 half_width() const { return half_width_; }
    std::array<int, 2> resolution() const { return res_; }

    int index(int ix, int iy) const { return iy * res_[0] + ix; }
    Vec2 cell_center(int ix, int iy) const;
    Vec2 cell_center(int flat) const { return cell_center(flat % res_[0], flat / res_[0]); }
    bool boundary_layer(int ix, int iy) const;

    bool operator==(const GridBox& other) const;

private:
    Vec2 center_, half_width_;
    std::array<int, 2> res_;
    double hx_, hy_;
};

// Complex scalar field sampled at cell centers.
struct GridField {
    GridBox grid;
    std::vector<cplx> values;

    GridField(const GridBox& g, std::vector<cplx> v);
    explicit GridField(const GridBox& g) : GridField(g, std::vector<cplx>(static_cast<std::size_t>(g.cell_count()), cplx(0.0, 0.0))) {}
    cplx at(int ix, int iy) const { return values[static_cast<std::size_t>(grid.index(ix, iy))]; }
};

// Refractive index with Re n >= 0, Im n >= 0 everywhere and n = 1 on the
// one-cell boundary layer (discrete stand-in for supp(n-1) strictly inside B).
class RefractiveIndexField {
public:
    RefractiveIndexField(const GridBox& grid, std::vector<cplx> values);

    const GridBox& grid() const { return grid_; }
    std::span<const cplx> values() const { return n_; }
    cplx at(int ix, int iy) const { return n_[static_cast<std::size_t>(grid_.index(ix, iy))]; }

private:
    GridBox grid_;
    std::vector<cplx> n_;
};

// q = n - 1, cellwise.
GridField contrast(const RefractiveIndexField& m);

// e^{i k x.theta} per point.
std::vector<cplx> plane_wave(Wavenumber k, const UnitDirection& theta, std::span<const Vec2> points);
GridField plane_wave_field(Wavenumber k, const UnitDirection& theta, const GridBox& grid);

RefractiveIndexField homogeneous_medium(const GridBox& grid);

// n = n0 on cells whose centers lie in the disc, 1 elsewhere.
RefractiveIndexField disc_medium(Vec2 center, double radius, cplx n0, const GridBox& grid);

// n = 1 + a * exp(1 - 1/(1 - |x-c|^2/R^2)) inside the disc, 1 outside.
RefractiveIndexField bump_medium(Vec2 center, double radius, cplx amplitude, const GridBox& grid);

} // namespace fflab
