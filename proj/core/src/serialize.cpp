#include "fflab/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "fflab/errors.hpp"

namespace fflab {

using json = nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

struct Fnv1a {
    std::uint64_t h = 1469598103934665603ULL;
    void feed(const std::string& s) {
        for (const unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ULL;
        }
    }
};

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_for_write(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) throw ValueError("cannot open for writing: " + path);
    return f;
}

cplx complex_from_json(const json& j, const char* what) {
    if (j.is_number()) return cplx(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return cplx(j[0].get<double>(), j[1].get<double>());
    }
    throw ValueError(std::string(what) + ": expected a number or [re, im]");
}

Vec2 vec2_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2) throw ValueError(std::string(what) + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

GridBox box_from_json(const json& j) {
    if (!j.contains("center") || !j.contains("half_width") || !j.contains("resolution")) {
        throw ValueError("medium box: needs center, half_width, resolution");
    }
    const auto& res = j.at("resolution");
    if (!res.is_array() || res.size() != 2) throw ValueError("medium box: resolution must be [nx, ny]");
    return GridBox(vec2_from_json(j.at("center"), "box.center"),
                   vec2_from_json(j.at("half_width"), "box.half_width"),
                   {res[0].get<int>(), res[1].get<int>()});
}

json parse(const std::string& text, const char* what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ValueError(std::string(what) + ": " + e.what());
    }
}

} // namespace

std::string medium_hash(const RefractiveIndexField& m) {
    Fnv1a hash;
    const GridBox& g = m.grid();
    hash.feed("fflab-medium|d=2");
    hash.feed("|c=" + format_double(g.center()[0]) + "," + format_double(g.center()[1]));
    hash.feed("|w=" + format_double(g.half_width()[0]) + "," + format_double(g.half_width()[1]));
    hash.feed("|n=" + std::to_string(g.nx()) + "," + std::to_string(g.ny()));
    for (const cplx v : m.values()) {
        hash.feed("|" + format_double(v.real()) + "," + format_double(v.imag()));
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash.h);
    return buf;
}

RefractiveIndexField medium_from_json_text(const std::string& text) {
    const json j = parse(text, "medium json");
    if (j.value("d", 2) != 2) throw ValueError("medium json: only d = 2 media are solvable");
    if (!j.contains("box")) throw ValueError("medium json: missing box");
    const GridBox box = box_from_json(j.at("box"));
    const std::string kind = j.value("kind", "homogeneous");
    const json params = j.value("params", json::object());
    if (kind == "homogeneous") return homogeneous_medium(box);
    if (kind == "disc") {
        return disc_medium(vec2_from_json(params.at("center"), "params.center"),
                           params.at("radius").get<double>(),
                           complex_from_json(params.at("n0"), "params.n0"), box);
    }
    if (kind == "bump") {
        return bump_medium(vec2_from_json(params.at("center"), "params.center"),
                           params.at("radius").get<double>(),
                           complex_from_json(params.at("amplitude"), "params.amplitude"), box);
    }
    if (kind == "values") {
        const auto& arr = params.at("values");
        if (!arr.is_array() || arr.size() != static_cast<std::size_t>(box.cell_count())) {
            throw ValueError("medium json: values array must have one [re, im] entry per cell");
        }
        std::vector<cplx> vals;
        vals.reserve(arr.size());
        for (const auto& e : arr) vals.push_back(complex_from_json(e, "params.values[]"));
        return RefractiveIndexField(box, std::move(vals));
    }
    throw ValueError("medium json: unknown kind '" + kind + "'");
}

std::string medium_to_json_text(const RefractiveIndexField& m) {
    const GridBox& g = m.grid();
    json j;
    j["d"] = 2;
    j["box"] = {{"center", {g.center()[0], g.center()[1]}},
                {"half_width", {g.half_width()[0], g.half_width()[1]}},
                {"resolution", {g.nx(), g.ny()}}};
    j["kind"] = "values";
    json vals = json::array();
    for (const cplx v : m.values()) vals.push_back({v.real(), v.imag()});
    j["params"] = {{"values", std::move(vals)}};
    return j.dump(2);
}

SolverConfig solver_config_from_json_text(const std::string& text) {
    const json j = parse(text, "solver json");
    SolverConfig cfg;
    const std::string mode = j.value("mode", "dense");
    if (mode == "dense") {
        cfg.mode = SolverConfig::Mode::dense;
    } else if (mode == "iterative") {
        cfg.mode = SolverConfig::Mode::iterative;
    } else {
        throw ValueError("solver json: mode must be 'dense' or 'iterative'");
    }
    cfg.tolerance = j.value("tolerance", cfg.tolerance);
    cfg.max_iterations = j.value("max_iterations", cfg.max_iterations);
    cfg.validate();
    return cfg;
}

std::string solver_config_to_json_text(const SolverConfig& cfg) {
    json j;
    j["mode"] = cfg.mode == SolverConfig::Mode::dense ? "dense" : "iterative";
    j["tolerance"] = cfg.tolerance;
    j["max_iterations"] = cfg.max_iterations;
    return j.dump(2);
}

void write_field_csv(const std::string& path, const GridBox& grid, std::span<const cplx> values) {
    if (values.size() != static_cast<std::size_t>(grid.cell_count())) {
        throw ValueError("write_field_csv: value count does not match the grid");
    }
    FilePtr f = open_for_write(path);
    std::fprintf(f.get(), "ix,iy,x,y,re,im\n");
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const Vec2 p = grid.cell_center(ix, iy);
            const cplx v = values[static_cast<std::size_t>(grid.index(ix, iy))];
            std::fprintf(f.get(), "%d,%d,%s,%s,%s,%s\n", ix, iy, format_double(p[0]).c_str(),
                         format_double(p[1]).c_str(), format_double(v.real()).c_str(),
                         format_double(v.imag()).c_str());
        }
    }
}

void write_farfield_csv(const std::string& path, const FarFieldSamples& samples) {
    FilePtr f = open_for_write(path);
    std::fprintf(f.get(), "alpha_obs,beta_inc,re,im\n");
    for (int i = 0; i < samples.observation.size(); ++i) {
        for (int j = 0; j < samples.incidence.size(); ++j) {
            std::fprintf(f.get(), "%s,%s,%s,%s\n",
                         format_double(samples.observation.angles[static_cast<std::size_t>(i)]).c_str(),
                         format_double(samples.incidence.angles[static_cast<std::size_t>(j)]).c_str(),
                         format_double(samples.values(i, j).real()).c_str(),
                         format_double(samples.values(i, j).imag()).c_str());
        }
    }
}

std::string farfield_header_json_text(const FarFieldSamples& samples,
                                      const std::string& medium_hash_hex) {
    json j;
    j["k"] = samples.k.value();
    j["n_observation"] = samples.observation.size();
    j["n_incidence"] = samples.incidence.size();
    j["medium_hash"] = medium_hash_hex;
    return j.dump(2);
}

void write_decay_coefficients_csv(const std::string& path, const FourierDecayReport& report) {
    FilePtr f = open_for_write(path);
    std::fprintf(f.get(), "m,n,abs,re,im\n");
    for (int i = 0; i < report.n; ++i) {
        for (int j = 0; j < report.n; ++j) {
            const cplx c = report.coefficients(i, j);
            std::fprintf(f.get(), "%d,%d,%s,%s,%s\n", FourierDecayReport::frequency(i, report.n),
                         FourierDecayReport::frequency(j, report.n),
                         format_double(std::abs(c)).c_str(), format_double(c.real()).c_str(),
                         format_double(c.imag()).c_str());
        }
    }
}

void write_taylor_coefficients_csv(const std::string& path, const TaylorModel& model) {
    FilePtr f = open_for_write(path);
    std::fprintf(f.get(), "m,n,abs,re,im\n");
    for (int m = 0; m <= model.order; ++m) {
        for (int n = 0; n <= model.order; ++n) {
            const cplx c = model.coeff(m, n);
            std::fprintf(f.get(), "%d,%d,%s,%s,%s\n", m, n, format_double(std::abs(c)).c_str(),
                         format_double(c.real()).c_str(), format_double(c.imag()).c_str());
        }
    }
}

} // namespace fflab
