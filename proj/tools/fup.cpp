// fup: command-line runner for the fractal uncertainty toolkit.

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>

#include "fup/baker.hpp"
#include "fup/cantor.hpp"
#include "fup/dft.hpp"
#include "fup/io.hpp"
#include "fup/lines.hpp"
#include "fup/poly_expr.hpp"
#include "fup/polymethod.hpp"
#include "fup/version.hpp"

namespace {

using fup::io::json;

// Resolved configuration of the running command, kept for the exit-4
// reproduction payload.
json& repro_config() {
    static json config;
    return config;
}

struct Output {
    std::string path;  // empty = stdout
    std::string format = "json";

    void emit_json(const json& result, const json& config) const {
        const json envelope{{"version", fup::kVersion}, {"config", config}, {"result", result}};
        write(envelope.dump(2) + "\n");
    }
    void emit_csv(const std::string& csv) const { write(csv); }
    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
        } else {
            fup::io::atomic_write(path, text);
        }
    }
};

fup::Limits resolve_limits(std::int64_t cap_flag) {
    fup::Limits limits;
    if (const char* env = std::getenv("FUP_CAP"); env != nullptr && *env != '\0') {
        limits.max_matrix_entries = std::strtoll(env, nullptr, 10);
    }
    if (cap_flag > 0) limits.max_matrix_entries = cap_flag;
    if (limits.max_matrix_entries <= 0) throw fup::usage_error("cap must be positive");
    return limits;
}

std::pair<std::int64_t, std::int64_t> parse_direction(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw fup::usage_error("direction must be \"a,b\"");
    return {std::strtoll(text.substr(0, comma).c_str(), nullptr, 10),
            std::strtoll(text.substr(comma + 1).c_str(), nullptr, 10)};
}

std::pair<double, double> parse_interval(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw fup::usage_error("interval must be \"lo,hi\"");
    return {std::strtod(text.substr(0, comma).c_str(), nullptr),
            std::strtod(text.substr(comma + 1).c_str(), nullptr)};
}

json line_to_json(const fup::Line& line) {
    return json{{"N", line.N}, {"a", line.a}, {"b", line.b}, {"c", line.c}, {"size", line.size}};
}

fup::CutoffProfile load_cutoff(const std::string& path) {
    if (path.empty()) return fup::CutoffProfile{};
    return fup::io::cutoff_from_json(fup::io::load_json_file(path));
}

// Seed-fixed random support + values, used by the battery modes.
fup::GridFunction random_grid_function(fup::SplitMix64& rng, std::int64_t n) {
    fup::GridFunction f = fup::GridFunction::zeros(n, 2);
    const std::int64_t target = 1 + static_cast<std::int64_t>(rng.below(
                                        static_cast<std::uint64_t>(n * n / 2)));
    for (std::int64_t i = 0; i < target; ++i) {
        const auto x = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
        const auto y = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
        f.at(x, y) = fup::cd{2.0 * rng.unit() - 1.0, 2.0 * rng.unit() - 1.0};
    }
    return f;
}

double fitted_decay_exponent(const std::vector<std::pair<std::int64_t, double>>& n_and_norm) {
    // least-squares slope of log(norm) against log(N); decay exponent is -slope
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const auto count = static_cast<double>(n_and_norm.size());
    for (const auto& [n, value] : n_and_norm) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(std::max(value, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return -slope;
}

int run(int argc, char** argv) {
    CLI::App app{"fractal uncertainty principle experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string out_path, format = "json", a_path, b_path, x_path, y_path, f_path, s_path;
    std::string poly_text, poly_g_text, v_text, cutoff_path, phi_text, psi_text, dump_matrix;
    std::int64_t cap_flag = 0, k = 1, k_max = 3, n_max = 64, n_grid = 8, k_min = 1;
    std::int64_t battery = 0, n_min_battery = 4, n_max_battery = 16, resolution = 64;
    std::optional<std::int64_t> seed;
    int dim = 2;

    app.add_option("--cap", cap_flag, "dense matrix entry cap (also FUP_CAP)");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "output file (default stdout)");
        cmd->add_option("--format", format, "json or csv")
            ->check(CLI::IsMember({"json", "csv"}));
        return cmd;
    };

    auto* cmd_norm = add_common(app.add_subcommand("norm", "FUP operator norm of a set pair"));
    cmd_norm->add_option("--x", x_path, "physical-side grid set JSON")->required();
    cmd_norm->add_option("--y", y_path, "Fourier-side grid set JSON")->required();

    auto* cmd_beta = add_common(app.add_subcommand("beta", "norm series over Cantor iterates"));
    cmd_beta->add_option("--a", a_path)->required();
    cmd_beta->add_option("--b", b_path)->required();
    cmd_beta->add_option("--kmax", k_max)->required();

    auto* cmd_line = add_common(app.add_subcommand("line-check", "line-in-Cantor-set decision"));
    cmd_line->add_option("--a", a_path)->required();
    cmd_line->add_option("--v", v_text, "direction a,b")->required();

    auto* cmd_ortho =
        add_common(app.add_subcommand("orthopair", "orthogonal line pair obstruction"));
    cmd_ortho->add_option("--a", a_path)->required();
    cmd_ortho->add_option("--b", b_path)->required();

    auto* cmd_range =
        add_common(app.add_subcommand("full-range", "improved-exponent classification"));
    cmd_range->add_option("--a", a_path)->required();
    cmd_range->add_option("--b", b_path)->required();

    auto* cmd_sharp = add_common(app.add_subcommand("sharpness", "norm-one witness function"));
    cmd_sharp->add_option("--a", a_path)->required();
    cmd_sharp->add_option("--b", b_path)->required();
    cmd_sharp->add_option("--k", k)->required();
    cmd_sharp->add_option("--v", v_text)->required();

    auto* cmd_localize =
        add_common(app.add_subcommand("localize", "localize a function's support to a line"));
    cmd_localize->add_option("--f", f_path, "grid function JSON");
    cmd_localize->add_option("--battery", battery, "run a seeded random battery instead");
    cmd_localize->add_option("--seed", seed, "battery seed (required with --battery)");
    cmd_localize->add_option("--nmin", n_min_battery);
    cmd_localize->add_option("--nmax", n_max_battery);

    auto* cmd_separate =
        add_common(app.add_subcommand("separate", "separating polynomial for a grid set"));
    cmd_separate->add_option("--s", s_path, "grid set JSON");
    cmd_separate->add_option("--battery", battery);
    cmd_separate->add_option("--seed", seed);
    cmd_separate->add_option("--nmin", n_min_battery);
    cmd_separate->add_option("--nmax", n_max_battery);

    auto* cmd_cyclo =
        add_common(app.add_subcommand("cyclo-count", "cyclotomic zero counts across N"));
    cmd_cyclo->add_option("--poly", poly_text)->required();
    cmd_cyclo->add_option("--nmax", n_max)->required();

    auto* cmd_seven =
        add_common(app.add_subcommand("seven-cover", "seven-polynomial zero cover check"));
    cmd_seven->add_option("--poly", poly_text)->required();
    cmd_seven->add_option("--nmax", n_max)->required();

    auto* cmd_bezout = add_common(app.add_subcommand("bezout", "grid intersection versus the "
                                                               "degree product bound"));
    cmd_bezout->add_option("--f", poly_text)->required();
    cmd_bezout->add_option("--g", poly_g_text)->required();
    cmd_bezout->add_option("--n", n_grid)->required();

    auto* cmd_build = add_common(app.add_subcommand("baker-build", "assemble a baker operator"));
    cmd_build->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
    cmd_build->add_option("--alphabet", a_path)->required();
    cmd_build->add_option("--k", k)->required();
    cmd_build->add_option("--cutoff", cutoff_path);
    cmd_build->add_option("--dump-matrix", dump_matrix, "write the dense matrix as CSV");

    auto* cmd_spec =
        add_common(app.add_subcommand("baker-spectrum", "spectral gap experiment over k"));
    cmd_spec->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
    cmd_spec->add_option("--alphabet", a_path)->required();
    cmd_spec->add_option("--kmin", k_min)->required();
    cmd_spec->add_option("--kmax", k_max)->required();
    cmd_spec->add_option("--cutoff", cutoff_path);

    auto* cmd_prop =
        add_common(app.add_subcommand("propagation", "compressed-norm decay experiment"));
    cmd_prop->add_option("--dim", dim)->check(CLI::IsMember({1, 2}));
    cmd_prop->add_option("--alphabet", a_path)->required();
    cmd_prop->add_option("--kmin", k_min)->required();
    cmd_prop->add_option("--kmax", k_max)->required();
    cmd_prop->add_option("--phi", phi_text, "target interval lo,hi")->required();
    cmd_prop->add_option("--psi", psi_text, "source interval lo,hi")->required();
    cmd_prop->add_option("--cutoff", cutoff_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help exits cleanly, everything else is usage
    }
    const fup::Limits limits = resolve_limits(cap_flag);
    Output output{out_path, format};

    json& config = repro_config();
    config = json{{"cap", limits.max_matrix_entries}, {"format", format}};
    if (!out_path.empty()) config["out"] = out_path;

    if (cmd_norm->parsed()) {
        const auto x = fup::io::grid_set_from_json(fup::io::load_json_file(x_path));
        const auto y = fup::io::grid_set_from_json(fup::io::load_json_file(y_path));
        config["command"] = "norm";
        config["x"] = x_path;
        config["y"] = y_path;
        output.emit_json(json{{"norm", fup::fup_norm(x, y, limits)},
                              {"x_size", x.size()},
                              {"y_size", y.size()}},
                         config);
    } else if (cmd_beta->parsed()) {
        const auto a = fup::io::alphabet_from_json(fup::io::load_json_file(a_path));
        const auto b = fup::io::alphabet_from_json(fup::io::load_json_file(b_path));
        config["command"] = "beta";
        config["a"] = a_path;
        config["b"] = b_path;
        config["kmax"] = k_max;
        const auto series = fup::beta_series(a, b, k_max, limits);
        if (format == "csv") {
            output.emit_csv(fup::io::norm_series_to_csv(series));
        } else {
            json entries = json::array();
            for (const auto& e : series.entries) {
                entries.push_back({{"k", e.k}, {"norm", e.norm}, {"beta_k", e.beta}});
            }
            output.emit_json(json{{"M", series.M}, {"entries", entries}}, config);
        }
    } else if (cmd_line->parsed()) {
        const auto a = fup::io::alphabet_from_json(fup::io::load_json_file(a_path));
        const auto v = parse_direction(v_text);
        config["command"] = "line-check";
        config["a"] = a_path;
        config["v"] = {v.first, v.second};
        const auto offset = fup::line_in_cantor(a, v);
        json result{{"found", offset.has_value()}, {"v", {v.first, v.second}}};
        if (offset) result["offset"] = fup::io::offset_to_json(*offset);
        output.emit_json(result, config);
    } else if (cmd_ortho->parsed()) {
        const auto a = fup::io::alphabet_from_json(fup::io::load_json_file(a_path));
        const auto b = fup::io::alphabet_from_json(fup::io::load_json_file(b_path));
        config["command"] = "orthopair";
        config["a"] = a_path;
        config["b"] = b_path;
        output.emit_json(fup::io::pair_verdict_to_json(fup::orthogonal_pair_condition(a, b)),
                         config);
    } else if (cmd_range->parsed()) {
        const auto a = fup::io::alphabet_from_json(fup::io::load_json_file(a_path));
        const auto b = fup::io::alphabet_from_json(fup::io::load_json_file(b_path));
        config["command"] = "full-range";
        config["a"] = a_path;
        config["b"] = b_path;
        const auto verdict = fup::full_range_condition(a, b);
        json result{{"improved_beta", verdict.improved_beta},
                    {"branch", verdict.used_inner_product_branch ? "inner-product"
                                                                 : "orthogonal-pair"}};
        if (verdict.witness) {
            json w = json::array();
            for (const auto& [px, py] : *verdict.witness) w.push_back({px, py});
            result["witness"] = w;
        }
        output.emit_json(result, config);
    } else if (cmd_sharp->parsed()) {
        const auto a = fup::io::alphabet_from_json(fup::io::load_json_file(a_path));
        const auto b = fup::io::alphabet_from_json(fup::io::load_json_file(b_path));
        const auto v = parse_direction(v_text);
        config["command"] = "sharpness";
        config["a"] = a_path;
        config["b"] = b_path;
        config["k"] = k;
        config["v"] = {v.first, v.second};
        const auto witness = fup::sharpness_witness(a, b, k, v, limits);
        const auto xk = fup::iterate(a, k, limits);
        const auto yk = fup::iterate(b, k, limits);
        const double norm = fup::fup_norm(fup::GridSet{xk.N, xk.points},
                                          fup::GridSet{yk.N, yk.points}, limits);
        output.emit_json(json{{"witness", fup::io::grid_function_to_json(witness)},
                              {"fup_norm", norm}},
                         config);
    } else if (cmd_localize->parsed()) {
        config["command"] = "localize";
        if (battery > 0) {
            if (!seed) throw fup::usage_error("--battery requires --seed");
            config["battery"] = battery;
            config["seed"] = *seed;
            config["nmin"] = n_min_battery;
            config["nmax"] = n_max_battery;
            fup::SplitMix64 rng(static_cast<std::uint64_t>(*seed));
            std::int64_t passes = 0;
            json failures = json::array();
            for (std::int64_t i = 0; i < battery; ++i) {
                const std::int64_t n =
                    n_min_battery +
                    static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(
                        n_max_battery - n_min_battery + 1)));
                const auto f = random_grid_function(rng, n);
                try {
                    (void)fup::localize_to_line(f);
                    ++passes;
                } catch (const fup::error& e) {
                    failures.push_back({{"run", i}, {"N", n}, {"error", e.what()}});
                }
            }
            output.emit_json(json{{"runs", battery}, {"passes", passes}, {"failures", failures}},
                             config);
        } else {
            if (f_path.empty()) throw fup::usage_error("localize needs --f or --battery");
            config["f"] = f_path;
            const auto f = fup::io::grid_function_from_json(fup::io::load_json_file(f_path));
            const auto result = fup::localize_to_line(f);
            output.emit_json(json{{"line", line_to_json(result.line)},
                                  {"g", fup::io::grid_function_to_json(result.g)},
                                  {"f_star", fup::io::poly_to_json(result.f_star)}},
                             config);
        }
    } else if (cmd_separate->parsed()) {
        config["command"] = "separate";
        if (battery > 0) {
            if (!seed) throw fup::usage_error("--battery requires --seed");
            config["battery"] = battery;
            config["seed"] = *seed;
            config["nmin"] = n_min_battery;
            config["nmax"] = n_max_battery;
            fup::SplitMix64 rng(static_cast<std::uint64_t>(*seed));
            std::int64_t passes = 0;
            json failures = json::array();
            for (std::int64_t i = 0; i < battery; ++i) {
                const std::int64_t n =
                    n_min_battery +
                    static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(
                        n_max_battery - n_min_battery + 1)));
                std::vector<fup::GridPoint> pts;
                const std::int64_t target = 1 + static_cast<std::int64_t>(rng.below(
                                                    static_cast<std::uint64_t>(n * n / 2)));
                for (std::int64_t j = 0; j < target; ++j) {
                    pts.push_back(
                        {static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n))),
                         static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)))});
                }
                try {
                    (void)fup::separating_poly(fup::GridSet::make(n, pts));
                    ++passes;
                } catch (const fup::error& e) {
                    failures.push_back({{"run", i}, {"N", n}, {"error", e.what()}});
                }
            }
            output.emit_json(json{{"runs", battery}, {"passes", passes}, {"failures", failures}},
                             config);
        } else {
            if (s_path.empty()) throw fup::usage_error("separate needs --s or --battery");
            config["s"] = s_path;
            const auto s = fup::io::grid_set_from_json(fup::io::load_json_file(s_path));
            const auto result = fup::separating_poly(s);
            output.emit_json(json{{"f_star", fup::io::poly_to_json(result.f_star)},
                                  {"line", line_to_json(result.line)}},
                             config);
        }
    } else if (cmd_cyclo->parsed()) {
        config["command"] = "cyclo-count";
        config["poly"] = poly_text;
        config["nmax"] = n_max;
        const auto expr = fup::parse_poly(poly_text);
        if (expr.degenerate_zero) throw fup::usage_error("polynomial is identically zero");
        std::int64_t max_count = 0;
        json counts = json::array();
        std::string csv = "N,count\n";
        for (std::int64_t n = 1; n <= n_max; ++n) {
            const auto report = fup::eval_zero_set(expr.parsed, n);
            max_count = std::max(max_count, report.count);
            counts.push_back({n, report.count});
            csv += std::to_string(n) + "," + std::to_string(report.count) + "\n";
        }
        if (format == "csv") {
            output.emit_csv(csv);
        } else {
            output.emit_json(json{{"max_count", max_count}, {"counts", counts}}, config);
        }
    } else if (cmd_seven->parsed()) {
        config["command"] = "seven-cover";
        config["poly"] = poly_text;
        config["nmax"] = n_max;
        const auto expr = fup::parse_poly(poly_text);
        if (expr.degenerate_zero) throw fup::usage_error("polynomial is identically zero");
        const auto transforms = fup::seven_polynomials(expr.parsed);
        json violations = json::array();
        std::int64_t checked = 0;
        for (std::int64_t n = 1; n <= n_max; ++n) {
            const auto zeros = fup::eval_zero_set(expr.parsed, n);
            const auto table = fup::root_of_unity_table(n);
            for (const auto& [x, y] : zeros.zeros.points) {
                ++checked;
                bool covered = false;
                for (const auto& t : transforms) {
                    if (std::abs(t.eval_grid(x, y, n, table)) <=
                        fup::kZeroTolRel * t.coeff_l1_norm()) {
                        covered = true;
                        break;
                    }
                }
                if (!covered) violations.push_back({{"N", n}, {"point", {x, y}}});
            }
        }
        output.emit_json(json{{"zeros_checked", checked},
                              {"covered", violations.empty()},
                              {"violations", violations}},
                         config);
    } else if (cmd_bezout->parsed()) {
        config["command"] = "bezout";
        config["f"] = poly_text;
        config["g"] = poly_g_text;
        config["n"] = n_grid;
        const auto f = fup::parse_poly(poly_text);
        const auto g = fup::parse_poly(poly_g_text);
        const auto report = fup::bezout_intersection(f.parsed, g.parsed, n_grid);
        output.emit_json(json{{"count", report.count},
                              {"bound", report.bound},
                              {"ok", report.ok},
                              {"conclusive", report.conclusive},
                              {"note", report.note}},
                         config);
    } else if (cmd_build->parsed()) {
        config["command"] = "baker-build";
        config["dim"] = dim;
        config["alphabet"] = a_path;
        config["k"] = k;
        const auto cutoff = load_cutoff(cutoff_path);
        config["cutoff"] = fup::io::cutoff_to_json(cutoff);
        const fup::BakerOperator op =
            dim == 1 ? [&] {
                const auto a1 = fup::io::alphabet1d_from_json(fup::io::load_json_file(a_path));
                return fup::build_baker_1d(a1.M, a1.digits, k, cutoff, limits);
            }()
                     : fup::build_baker_2d(
                           fup::io::alphabet_from_json(fup::io::load_json_file(a_path)), k,
                           cutoff, limits);
        if (!dump_matrix.empty()) {
            std::string csv;
            for (Eigen::Index r = 0; r < op.matrix.rows(); ++r) {
                for (Eigen::Index c = 0; c < op.matrix.cols(); ++c) {
                    if (c > 0) csv += ",";
                    csv += std::to_string(op.matrix(r, c).real()) + "+" +
                           std::to_string(op.matrix(r, c).imag()) + "i";
                }
                csv += "\n";
            }
            fup::io::atomic_write(dump_matrix, csv);
        }
        output.emit_json(json{{"N", op.N},
                              {"dim", op.dim},
                              {"matrix_side", op.matrix.rows()},
                              {"operator_norm", op.op_norm},
                              {"smooth_cutoff", op.cutoff.smooth()}},
                         config);
    } else if (cmd_spec->parsed()) {
        config["command"] = "baker-spectrum";
        config["dim"] = dim;
        config["alphabet"] = a_path;
        config["kmin"] = k_min;
        config["kmax"] = k_max;
        const auto cutoff = load_cutoff(cutoff_path);
        config["cutoff"] = fup::io::cutoff_to_json(cutoff);
        fup::SpectralGapResult result;
        std::string csv;
        if (dim == 1) {
            const auto a1 = fup::io::alphabet1d_from_json(fup::io::load_json_file(a_path));
            result = fup::spectral_gap_experiment_1d(a1.M, a1.digits, k_min, k_max, cutoff,
                                                     limits);
            for (std::int64_t kk = k_min; kk <= k_max; ++kk) {
                const auto op = fup::build_baker_1d(a1.M, a1.digits, kk, cutoff, limits);
                csv += fup::io::spectrum_csv_row(kk, op.N, fup::spectrum(op, limits));
            }
        } else {
            const auto a2 = fup::io::alphabet_from_json(fup::io::load_json_file(a_path));
            result = fup::spectral_gap_experiment_2d(a2, k_min, k_max, cutoff, limits);
            for (std::int64_t kk = k_min; kk <= k_max; ++kk) {
                const auto op = fup::build_baker_2d(a2, kk, cutoff, limits);
                csv += fup::io::spectrum_csv_row(kk, op.N, fup::spectrum(op, limits));
            }
        }
        if (format == "csv") {
            output.emit_csv(csv);
        } else {
            json rows = json::array();
            for (const auto& row : result.rows) {
                rows.push_back({{"k", row.k},
                                {"N", row.N},
                                {"radius", row.radius},
                                {"reference", row.reference}});
            }
            output.emit_json(json{{"beta_ref", result.beta_ref},
                                  {"beta_ref_k", result.beta_ref_k},
                                  {"obstruction_warning", result.obstruction_warning},
                                  {"rows", rows}},
                             config);
        }
    } else if (cmd_prop->parsed()) {
        config["command"] = "propagation";
        config["dim"] = dim;
        config["alphabet"] = a_path;
        config["kmin"] = k_min;
        config["kmax"] = k_max;
        config["phi"] = phi_text;
        config["psi"] = psi_text;
        const auto cutoff = load_cutoff(cutoff_path);
        config["cutoff"] = fup::io::cutoff_to_json(cutoff);
        const auto [phi_lo, phi_hi] = parse_interval(phi_text);
        const auto [psi_lo, psi_hi] = parse_interval(psi_text);
        fup::TorusRect phi{phi_lo, phi_hi, phi_lo, phi_hi};
        fup::TorusRect psi{psi_lo, psi_hi, psi_lo, psi_hi};

        json rows = json::array();
        std::vector<std::pair<std::int64_t, double>> fit_data;
        bool hypothesis = true;
        if (dim != 1) throw fup::usage_error("propagation currently runs 1D experiments");
        const auto a1 = fup::io::alphabet1d_from_json(fup::io::load_json_file(a_path));
        for (std::int64_t kk = k_min; kk <= k_max; ++kk) {
            const auto op = fup::build_baker_1d(a1.M, a1.digits, kk, cutoff, limits);
            const auto report = fup::propagation_check(phi, psi, op, limits);
            hypothesis = hypothesis && report.hypothesis_met;
            rows.push_back({{"k", kk},
                            {"N", op.N},
                            {"norm", report.norm},
                            {"separation", report.separation}});
            fit_data.push_back({op.N, report.norm});
        }
        json result{{"rows", rows}, {"hypothesis_met", hypothesis}};
        if (fit_data.size() >= 2) {
            result["fitted_decay_exponent"] = fitted_decay_exponent(fit_data);
        }
        output.emit_json(result, config);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fup::resource_error& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const fup::usage_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const fup::error& e) {
        // Internal invariant or guaranteed construction failed: dump a
        // reproduction payload.
        json payload{{"version", fup::kVersion},
                     {"config", repro_config()},
                     {"error", e.what()}};
        std::cerr << "internal error: " << e.what() << "\n"
                  << payload.dump(2) << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
