// Batch experiment runner: every verification pipeline behind one binary.
//
//   fflab <subcommand> --config cfg.json [--set key=value]...
//
// Subcommands: solve, farfield, check-factorization, check-reciprocity,
// decay, taylor, counterexample, oracle-compare. Each writes its data files
// plus a manifest.json into the configured output directory. Exit code 0 on
// success, 2 when a tolerance check fails, 1 on errors.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fflab/analyticity.hpp"
#include "fflab/errors.hpp"
#include "fflab/farfield.hpp"
#include "fflab/forward.hpp"
#include "fflab/medium.hpp"
#include "fflab/mie.hpp"
#include "fflab/serialize.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace fflab;

namespace {

constexpr const char* kVersion = "0.1.0";

struct ToleranceFailure {
    std::string what;
};

double uniform_pm(std::mt19937_64& rng, double half_width) {
    const double u = static_cast<double>(rng() >> 11) / static_cast<double>(1ULL << 53);
    return half_width * (2.0 * u - 1.0);
}

HerglotzDensity seeded_density(int n, std::mt19937_64& rng) {
    HerglotzDensity g;
    g.values.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) g.values.push_back({uniform_pm(rng, 0.5), uniform_pm(rng, 0.5)});
    return g;
}

class Experiment {
public:
    Experiment(const std::string& config_path, const std::vector<std::string>& overrides) {
        std::ifstream in(config_path);
        if (!in.good()) throw ValueError("cannot open config file: " + config_path);
        try {
            config_ = json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValueError(std::string("config parse: ") + e.what());
        }
        for (const auto& kv : overrides) apply_override(kv);
        start_ = std::chrono::steady_clock::now();
    }

    const json& config() const { return config_; }

    json section(const std::string& name) const {
        return config_.contains(name) ? config_.at(name) : json::object();
    }

    Wavenumber wavenumber() const { return Wavenumber(config_.value("k", 1.0)); }

    RefractiveIndexField medium() const {
        if (!config_.contains("medium")) throw ValueError("config: missing \"medium\"");
        json m = config_.at("medium");
        if (m.contains("file")) {
            std::ifstream in(m.at("file").get<std::string>());
            if (!in.good()) throw ValueError("cannot open medium file");
            std::ostringstream os;
            os << in.rdbuf();
            return medium_from_json_text(os.str());
        }
        return medium_from_json_text(m.dump());
    }

    SolverConfig solver_config() const {
        if (!config_.contains("solver")) return SolverConfig{};
        return solver_config_from_json_text(config_.at("solver").dump());
    }

    fs::path output_dir() const {
        const fs::path dir = config_.value("output_dir", std::string("out"));
        fs::create_directories(dir);
        return dir;
    }

    std::string path_of(const std::string& file) {
        outputs_.push_back(file);
        return (output_dir() / file).string();
    }

    void write_json(const std::string& file, const json& payload) {
        std::ofstream out(output_dir() / file, std::ios::binary);
        out << payload.dump(2) << "\n";
        outputs_.push_back(file);
    }

    void write_manifest(const std::string& command, const json& tolerances,
                        const std::string& medium_hash_hex) {
        json manifest;
        manifest["command"] = command;
        manifest["version"] = kVersion;
        manifest["config"] = config_;
        manifest["tolerances"] = tolerances;
        manifest["medium_hash"] = medium_hash_hex;
        manifest["outputs"] = outputs_;
        manifest["runtime_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
        std::ofstream out(output_dir() / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << "\n";
    }

private:
    void apply_override(const std::string& kv) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ValueError("--set expects key=value, got: " + kv);
        const std::string key = kv.substr(0, eq);
        const std::string raw = kv.substr(eq + 1);
        json value;
        try {
            value = json::parse(raw);
        } catch (const nlohmann::json::parse_error&) {
            value = raw;  // bare strings may stay unquoted
        }
        json* node = &config_;
        std::size_t pos = 0;
        while (true) {
            const auto dot = key.find('.', pos);
            const std::string part = key.substr(pos, dot == std::string::npos ? dot : dot - pos);
            if (part.empty()) throw ValueError("--set: empty path segment in " + key);
            if (dot == std::string::npos) {
                (*node)[part] = value;
                break;
            }
            node = &(*node)[part];
            pos = dot + 1;
        }
    }

    json config_;
    std::vector<std::string> outputs_;
    std::chrono::steady_clock::time_point start_;
};

int run_solve(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("solve");
    const double theta_deg = params.value("theta_deg", 0.0);
    const LippmannSchwingerSolver solver(m, ex.wavenumber(), ex.solver_config());
    const auto sol = solver.solve_scattering(UnitDirection::from_angle(theta_deg * pi / 180.0));
    write_field_csv(ex.path_of("total.csv"), sol.grid, sol.total);
    write_field_csv(ex.path_of("incident.csv"), sol.grid, sol.incident);
    write_field_csv(ex.path_of("scattered.csv"), sol.grid, sol.scattered());
    ex.write_manifest("solve", json::object(), medium_hash(m));
    return 0;
}

int run_farfield(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("farfield");
    const auto obs = DirectionSet::uniform_circle(params.value("n_observation", 32));
    const auto inc = DirectionSet::uniform_circle(params.value("n_incidence", 32));
    const auto samples = far_field_matrix(m, ex.wavenumber(), obs, inc, ex.solver_config());
    write_farfield_csv(ex.path_of("farfield.csv"), samples);
    std::ofstream header(ex.output_dir() / "farfield.json", std::ios::binary);
    header << farfield_header_json_text(samples, medium_hash(m)) << "\n";
    ex.write_manifest("farfield", json::object(), medium_hash(m));
    return 0;
}

int run_check_factorization(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("factorization");
    const int n_dir = params.value("n_directions", 32);
    const int n_densities = params.value("n_densities", 10);
    const std::uint64_t seed = params.value("seed", 7ULL);
    const double tolerance = params.value("tolerance", 1e-8);
    const auto set = DirectionSet::uniform_circle(n_dir);
    const LippmannSchwingerSolver solver(m, ex.wavenumber(), ex.solver_config());
    std::mt19937_64 rng(seed);
    json residuals = json::array();
    double worst = 0.0;
    bool any_signal = false;
    for (int trial = 0; trial < n_densities; ++trial) {
        const auto check = factorization_residual(solver, set, set, seeded_density(n_dir, rng));
        if (check.no_signal) {
            residuals.push_back("no_signal");
        } else {
            any_signal = true;
            residuals.push_back(check.residual);
            worst = std::max(worst, check.residual);
        }
    }
    json report;
    report["n_directions"] = n_dir;
    report["n_densities"] = n_densities;
    report["seed"] = seed;
    report["tolerance"] = tolerance;
    report["residuals"] = residuals;
    report["no_signal"] = !any_signal;
    const bool pass = !any_signal || worst <= tolerance;
    report["max_residual"] = worst;
    report["pass"] = pass;
    ex.write_json("factorization.json", report);
    ex.write_manifest("check-factorization", json{{"residual", tolerance}}, medium_hash(m));
    if (!pass) {
        std::ostringstream os;
        os << "factorization residual " << worst << " exceeds " << tolerance;
        throw ToleranceFailure{os.str()};
    }
    std::cout << (any_signal ? "factorization residual max = " + format_double(worst)
                             : std::string("no signal (zero contrast)"))
              << "\n";
    return 0;
}

int run_check_reciprocity(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("reciprocity");
    const int n_dir = params.value("n_directions", 32);
    const double factor = params.value("tolerance_factor", 1e-8);
    const auto set = DirectionSet::uniform_circle(n_dir);
    const auto samples = far_field_matrix(m, ex.wavenumber(), set, set, ex.solver_config());
    const double scale = samples.values.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (int i = 0; i < n_dir; ++i) {
        for (int j = 0; j < n_dir; ++j) {
            worst = std::max(worst, std::abs(samples.values(i, j)
                                             - samples.values(set.antipode_index(j),
                                                              set.antipode_index(i))));
        }
    }
    const bool pass = worst <= factor * scale || scale == 0.0;
    json report;
    report["n_directions"] = n_dir;
    report["max_residual"] = worst;
    report["max_magnitude"] = scale;
    report["tolerance_factor"] = factor;
    report["pass"] = pass;
    ex.write_json("reciprocity.json", report);
    ex.write_manifest("check-reciprocity", json{{"residual_factor", factor}}, medium_hash(m));
    if (!pass) {
        std::ostringstream os;
        os << "reciprocity residual " << worst << " exceeds " << factor * scale;
        throw ToleranceFailure{os.str()};
    }
    std::cout << "reciprocity residual = " << format_double(worst)
              << " (max |U| = " << format_double(scale) << ")\n";
    return 0;
}

int run_decay(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("decay");
    const int n = params.value("n_torus", 64);
    const double floor = params.value("floor", 1e-13);
    const auto samples = sample_torus(m, ex.wavenumber(), n, ex.solver_config());
    const auto report = fourier_decay(samples, floor);
    write_decay_coefficients_csv(ex.path_of("decay_coefficients.csv"), report);
    json out;
    out["k"] = ex.wavenumber().value();
    out["n"] = n;
    out["floor"] = floor;
    out["tau"] = report.tau;
    out["intercept_log10"] = report.intercept_log10;
    out["fit_rms_log10"] = report.fit_rms_log10;
    out["coefficients_used"] = report.coefficients_used;
    out["medium_hash"] = medium_hash(m);
    out["coefficient_table"] = "decay_coefficients.csv";
    ex.write_json("decay.json", out);
    ex.write_manifest("decay", json::object(), medium_hash(m));
    std::cout << "tau = " << format_double(report.tau)
              << ", fit rms (log10) = " << format_double(report.fit_rms_log10) << "\n";
    return 0;
}

int run_taylor(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("taylor");
    const int order = params.value("order", 8);
    const double rho = params.value("rho", 0.1);
    const int nodes = params.value("nodes", 0);
    const double obs_deg = params.value("obs_center_deg", 270.0);
    const double inc_deg = params.value("inc_center_deg", 54.0);
    const int n_points = params.value("n_test_points", 20);
    const double distance = params.value("test_distance", 0.03);
    const std::uint64_t seed = params.value("seed", 11ULL);
    const double tolerance = params.value("tolerance", 1e-4);

    const LippmannSchwingerSolver solver(m, ex.wavenumber(), ex.solver_config());
    const UnitDirection xhat0 = UnitDirection::from_angle(obs_deg * pi / 180.0);
    const UnitDirection theta0 = UnitDirection::from_angle(inc_deg * pi / 180.0);
    const auto model = taylor_coefficients(solver, xhat0, theta0, order, rho, nodes);
    write_taylor_coefficients_csv(ex.path_of("taylor_coefficients.csv"), model);

    std::mt19937_64 rng(seed);
    json points = json::array();
    double worst = 0.0;
    for (int t = 0; t < n_points; ++t) {
        const double dz = uniform_pm(rng, distance);
        const double dw = uniform_pm(rng, distance);
        const UnitDirection xh = stereo_inverse(ChartCoord(model.z0 + dz), model.chart_obs);
        const UnitDirection th = stereo_inverse(ChartCoord(model.w0 + dw), model.chart_inc);
        const cplx direct = far_field_via_factorization(solver, xh, th);
        const cplx approx = taylor_evaluate(model, xh, th);
        const double rel = std::abs(approx - direct) / std::max(std::abs(direct), 1e-300);
        worst = std::max(worst, rel);
        points.push_back({{"dz", dz},
                          {"dw", dw},
                          {"direct", {direct.real(), direct.imag()}},
                          {"taylor", {approx.real(), approx.imag()}},
                          {"rel_error", rel}});
    }
    json report;
    report["order"] = order;
    report["rho"] = rho;
    report["center_chart_obs"] = to_string(model.chart_obs);
    report["center_chart_inc"] = to_string(model.chart_inc);
    report["z0"] = model.z0;
    report["w0"] = model.w0;
    report["seed"] = seed;
    report["test_distance"] = distance;
    report["tolerance"] = tolerance;
    report["points"] = points;
    report["max_rel_error"] = worst;
    const bool pass = worst <= tolerance;
    report["pass"] = pass;
    ex.write_json("taylor_report.json", report);
    ex.write_manifest("taylor", json{{"rel_error", tolerance}}, medium_hash(m));
    if (!pass) {
        std::ostringstream os;
        os << "taylor reconstruction error " << worst << " exceeds " << tolerance;
        throw ToleranceFailure{os.str()};
    }
    std::cout << "taylor max rel error = " << format_double(worst) << "\n";
    return 0;
}

int run_counterexample(Experiment& ex) {
    const json params = ex.section("counterexample");
    const auto rep = counterexample_report(params.value("t_min", 1e-3), params.value("t_max", 0.1),
                                           params.value("samples", 41));
    json out;
    out["t_min"] = rep.t_min;
    out["t_max"] = rep.t_max;
    out["diagonal_t"] = rep.diagonal_t;
    out["diagonal_values"] = rep.diagonal_values;
    out["axis_values"] = rep.axis_values;
    out["origin_value"] = rep.origin_value;
    out["diagonal_limit"] = rep.diagonal_limit;
    out["restriction_offset"] = rep.restriction_offset;
    out["restriction_degree"] = rep.restriction_degree;
    out["restriction_max_error_x"] = rep.restriction_max_error_x;
    out["restriction_max_error_y"] = rep.restriction_max_error_y;
    out["bivariate_fit_degrees"] = rep.fit_degrees;
    out["bivariate_fit_diagonal_errors"] = rep.fit_diagonal_errors;
    out["bivariate_fit_min_error"] = rep.fit_min_diagonal_error;
    ex.write_json("counterexample.json", out);
    ex.write_manifest("counterexample", json::object(), "");
    std::cout << "diagonal limit " << rep.diagonal_limit << " vs origin value " << rep.origin_value
              << "; bivariate fit never beats " << format_double(rep.fit_min_diagonal_error)
              << " on the diagonal\n";
    return 0;
}

int run_oracle_compare(Experiment& ex) {
    const auto m = ex.medium();
    const json params = ex.section("oracle");
    const int n_dir = params.value("n_directions", 32);
    const double tolerance = params.value("tolerance", 5e-3);
    const double truncation = params.value("truncation", 1e-14);
    const json mp = params.contains("disc") ? params.at("disc") : json::object();
    const double radius = mp.value("radius", 1.0);
    const double n0_re = mp.value("n0_re", 1.5);
    const double n0_im = mp.value("n0_im", 0.0);

    const auto set = DirectionSet::uniform_circle(n_dir);
    const auto samples = far_field_matrix(m, ex.wavenumber(), set, set, ex.solver_config());
    const auto series = mie_build(radius, cplx(n0_re, n0_im), ex.wavenumber(), truncation);

    double num = 0.0, den = 0.0;
    std::FILE* table = std::fopen(ex.path_of("oracle_errors.csv").c_str(), "wb");
    if (!table) throw ValueError("cannot open oracle_errors.csv");
    std::fprintf(table, "beta_inc,rel_l2\n");
    for (int j = 0; j < n_dir; ++j) {
        double rn = 0.0, rd = 0.0;
        for (int i = 0; i < n_dir; ++i) {
            const cplx oracle = mie_far_field(series, set.directions[static_cast<std::size_t>(i)],
                                              set.directions[static_cast<std::size_t>(j)]);
            rn += std::norm(samples.values(i, j) - oracle);
            rd += std::norm(oracle);
        }
        num += rn;
        den += rd;
        std::fprintf(table, "%s,%s\n",
                     format_double(set.angles[static_cast<std::size_t>(j)]).c_str(),
                     format_double(std::sqrt(rn / rd)).c_str());
    }
    std::fclose(table);
    std::FILE* coeffs = std::fopen(ex.path_of("mie_coefficients.csv").c_str(), "wb");
    if (!coeffs) throw ValueError("cannot open mie_coefficients.csv");
    std::fprintf(coeffs, "m,re,im\n");
    for (int mm = 0; mm <= series.truncation; ++mm) {
        const cplx b = series.scattered[static_cast<std::size_t>(mm)];
        std::fprintf(coeffs, "%d,%s,%s\n", mm, format_double(b.real()).c_str(),
                     format_double(b.imag()).c_str());
    }
    std::fclose(coeffs);
    const double rel = std::sqrt(num / den);
    json report;
    report["n_directions"] = n_dir;
    report["rel_frobenius_error"] = rel;
    report["tolerance"] = tolerance;
    report["mie_truncation"] = series.truncation;
    const bool pass = rel <= tolerance;
    report["pass"] = pass;
    ex.write_json("oracle_compare.json", report);
    ex.write_manifest("oracle-compare", json{{"rel_frobenius", tolerance}}, medium_hash(m));
    if (!pass) {
        std::ostringstream os;
        os << "oracle disagreement " << rel << " exceeds " << tolerance;
        throw ToleranceFailure{os.str()};
    }
    std::cout << "oracle rel Frobenius error = " << format_double(rel) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"far field scattering laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::string output_dir_flag;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "experiment config (JSON)")->required();
        cmd->add_option("--set", overrides, "override config keys (dotted.path=value)");
        cmd->add_option("--output-dir", output_dir_flag, "override the output directory");
    };

    struct Entry {
        const char* name;
        const char* help;
        int (*fn)(Experiment&);
    };
    const Entry entries[] = {
        {"solve", "solve one scattering problem and dump the fields", run_solve},
        {"farfield", "far field matrix over direction grids", run_farfield},
        {"check-factorization", "residual of F = c A* T A for seeded densities",
         run_check_factorization},
        {"check-reciprocity", "antipodal symmetry residual of the far field matrix",
         run_check_reciprocity},
        {"decay", "Fourier-coefficient decay of torus samples", run_decay},
        {"taylor", "single-point Taylor model and reconstruction errors", run_taylor},
        {"counterexample", "separate-vs-joint analyticity counterexample report",
         run_counterexample},
        {"oracle-compare", "far field matrix against the constant-index disc series",
         run_oracle_compare},
    };
    for (const auto& e : entries) add_common(app.add_subcommand(e.name, e.help));

    CLI11_PARSE(app, argc, argv);

    try {
        if (!output_dir_flag.empty()) overrides.push_back("output_dir=" + output_dir_flag);
        Experiment ex(config_path, overrides);
        for (const auto& e : entries) {
            if (app.get_subcommand(e.name)->parsed()) return e.fn(ex);
        }
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const ToleranceFailure& f) {
        std::cerr << "TOLERANCE FAILURE: " << f.what << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
