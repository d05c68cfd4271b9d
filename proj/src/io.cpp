#include "fup/io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace fup::io {

json alphabet_to_json(const Alphabet2D& a) {
    json cells = json::array();
    for (const auto& [x, y] : a.cells()) cells.push_back({x, y});
    return json{{"M", a.M()}, {"cells", cells}};
}

Alphabet2D alphabet_from_json(const json& j) {
    if (!j.contains("M") || !j.contains("cells")) {
        throw usage_error("alphabet JSON needs \"M\" and \"cells\"");
    }
    std::vector<GridPoint> cells;
    for (const auto& c : j.at("cells")) {
        cells.push_back({c.at(0).get<std::int64_t>(), c.at(1).get<std::int64_t>()});
    }
    return Alphabet2D(j.at("M").get<std::int64_t>(), std::move(cells));
}

json alphabet1d_to_json(const Alphabet1D& a) {
    return json{{"M", a.M}, {"digits", a.digits}};
}

Alphabet1D alphabet1d_from_json(const json& j) {
    if (!j.contains("M") || !j.contains("digits")) {
        throw usage_error("1D alphabet JSON needs \"M\" and \"digits\"");
    }
    Alphabet1D out;
    out.M = j.at("M").get<std::int64_t>();
    for (const auto& d : j.at("digits")) out.digits.push_back(d.get<std::int64_t>());
    return out;
}

json grid_set_to_json(const GridSet& s) {
    json pts = json::array();
    for (const auto& [x, y] : s.points) pts.push_back({x, y});
    return json{{"N", s.N}, {"points", pts}};
}

GridSet grid_set_from_json(const json& j) {
    if (!j.contains("N") || !j.contains("points")) {
        throw usage_error("grid set JSON needs \"N\" and \"points\"");
    }
    std::vector<GridPoint> pts;
    for (const auto& p : j.at("points")) {
        pts.push_back({p.at(0).get<std::int64_t>(), p.at(1).get<std::int64_t>()});
    }
    return GridSet::make(j.at("N").get<std::int64_t>(), std::move(pts));
}

json grid_function_to_json(const GridFunction& f) {
    json values = json::array();
    for (const auto& v : f.values) values.push_back({v.real(), v.imag()});
    return json{{"N", f.N}, {"dim", f.dim}, {"values", values}};
}

GridFunction grid_function_from_json(const json& j) {
    if (!j.contains("N") || !j.contains("dim") || !j.contains("values")) {
        throw usage_error("grid function JSON needs \"N\", \"dim\", \"values\"");
    }
    GridFunction f = GridFunction::zeros(j.at("N").get<std::int64_t>(), j.at("dim").get<int>());
    const auto& values = j.at("values");
    if (values.size() != f.values.size()) {
        throw usage_error("grid function JSON has the wrong number of values");
    }
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        f.values[i] = cd{values[i].at(0).get<double>(), values[i].at(1).get<double>()};
    }
    return f;
}

json poly_to_json(const BivarPoly& p) {
    json terms = json::array();
    for (const auto& [e, a] : p.coeffs()) {
        terms.push_back({{"k", e.first}, {"l", e.second}, {"re", a.real()}, {"im", a.imag()}});
    }
    return json{{"terms", terms}};
}

BivarPoly poly_from_json(const json& j) {
    if (!j.contains("terms")) throw usage_error("polynomial JSON needs \"terms\"");
    std::map<BivarPoly::ExponentPair, cd> coeffs;
    for (const auto& t : j.at("terms")) {
        const auto k = t.at("k").get<std::int64_t>();
        const auto l = t.at("l").get<std::int64_t>();
        coeffs[{k, l}] += cd{t.value("re", 0.0), t.value("im", 0.0)};
    }
    return BivarPoly(std::move(coeffs));
}

json cutoff_to_json(const CutoffProfile& c) {
    json out{{"kind", c.name()}};
    if (c.kind == CutoffProfile::Kind::PlateauBump) out["flat"] = {c.flat_lo, c.flat_hi};
    return out;
}

CutoffProfile cutoff_from_json(const json& j) {
    CutoffProfile c;
    const std::string kind = j.value("kind", "smooth-bump");
    if (kind == "smooth-bump") {
        c.kind = CutoffProfile::Kind::SmoothBump;
    } else if (kind == "plateau-bump") {
        c.kind = CutoffProfile::Kind::PlateauBump;
        if (j.contains("flat")) {
            c.flat_lo = j.at("flat").at(0).get<double>();
            c.flat_hi = j.at("flat").at(1).get<double>();
            if (!(0.0 < c.flat_lo && c.flat_lo < c.flat_hi && c.flat_hi < 1.0)) {
                throw usage_error("plateau \"flat\" must satisfy 0 < lo < hi < 1");
            }
        }
    } else if (kind == "indicator") {
        c.kind = CutoffProfile::Kind::Indicator;
    } else {
        throw usage_error("unknown cutoff kind: " + kind);
    }
    return c;
}

json offset_to_json(const TorusOffset& offset) {
    return json{{"x", offset.x.str()},
                {"y", offset.y.str()},
                {"x_expansion", offset.x_digits.str()},
                {"y_expansion", offset.y_digits.str()}};
}

json pair_verdict_to_json(const PairVerdict& verdict) {
    if (!verdict.obstructed) return json{{"obstructed", false}};
    return json{{"obstructed", true},
                {"v", {verdict.v.first, verdict.v.second}},
                {"p", offset_to_json(*verdict.p)},
                {"q", offset_to_json(*verdict.q)}};
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

std::string norm_series_to_csv(const NormSeries& series) {
    std::ostringstream out;
    out << "k,norm,beta_k\n";
    for (const auto& e : series.entries) {
        out << e.k << "," << format_double(e.norm) << "," << format_double(e.beta) << "\n";
    }
    return out.str();
}

std::string spectrum_csv_row(std::int64_t k, std::int64_t n, const std::vector<cd>& eigenvalues) {
    std::ostringstream out;
    double radius = 0.0;
    for (const auto& ev : eigenvalues) radius = std::max(radius, std::abs(ev));
    out << k << "," << n << "," << format_double(radius);
    for (const auto& ev : eigenvalues) {
        out << "," << format_double(ev.real()) << "," << format_double(ev.imag());
    }
    out << "\n";
    return out.str();
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw usage_error("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw usage_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void atomic_write(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error("cannot open " + tmp + " for writing");
        out << contents;
        if (!out.good()) throw error("short write to " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        throw error("rename failed for " + path);
    }
}

}  // namespace fup::io
