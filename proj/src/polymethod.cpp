#include "fup/polymethod.hpp"

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

namespace fup {

BivarPoly::BivarPoly(std::map<ExponentPair, cd> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto it = coeffs_.begin(); it != coeffs_.end();) {
        if (it->first.first < 0 || it->first.second < 0) {
            throw usage_error("polynomial exponents must be nonnegative");
        }
        if (it->second == cd{}) {
            it = coeffs_.erase(it);
        } else {
            ++it;
        }
    }
}

BivarPoly BivarPoly::constant(cd value) {
    return BivarPoly(value == cd{} ? std::map<ExponentPair, cd>{}
                                   : std::map<ExponentPair, cd>{{{0, 0}, value}});
}

BivarPoly BivarPoly::monomial(std::int64_t k, std::int64_t l, cd value) {
    return BivarPoly(value == cd{} ? std::map<ExponentPair, cd>{}
                                   : std::map<ExponentPair, cd>{{{k, l}, value}});
}

std::int64_t BivarPoly::degree() const {
    std::int64_t deg = 0;
    for (const auto& [e, a] : coeffs_) deg = std::max(deg, std::max(e.first, e.second));
    return deg;
}

std::int64_t BivarPoly::total_degree() const {
    std::int64_t deg = 0;
    for (const auto& [e, a] : coeffs_) deg = std::max(deg, e.first + e.second);
    return deg;
}

double BivarPoly::coeff_l1_norm() const {
    double acc = 0.0;
    for (const auto& [e, a] : coeffs_) acc += std::abs(a);
    return acc;
}

double BivarPoly::coeff_l2_norm() const {
    double acc = 0.0;
    for (const auto& [e, a] : coeffs_) acc += std::norm(a);
    return std::sqrt(acc);
}

namespace {

std::vector<std::pair<std::int64_t, std::int64_t>> exponent_differences(
    const std::map<BivarPoly::ExponentPair, cd>& coeffs) {
    std::vector<std::pair<std::int64_t, std::int64_t>> diffs;
    if (coeffs.empty()) return diffs;
    const auto base = coeffs.begin()->first;
    for (const auto& [e, a] : coeffs) {
        if (e != base) diffs.push_back({e.first - base.first, e.second - base.second});
    }
    return diffs;
}

}  // namespace

int BivarPoly::lattice_rank() const {
    const auto diffs = exponent_differences(coeffs_);
    if (diffs.empty()) return 0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        for (std::size_t j = i + 1; j < diffs.size(); ++j) {
            if (diffs[i].first * diffs[j].second - diffs[i].second * diffs[j].first != 0) return 2;
        }
    }
    return 1;
}

bool BivarPoly::lattice_is_full() const {
    // The lattice equals Z^2 iff the gcd of all 2x2 minors of the generator
    // list is 1 (product of the Smith invariants).
    const auto diffs = exponent_differences(coeffs_);
    std::int64_t minor_gcd = 0;
    for (std::size_t i = 0; i < diffs.size(); ++i) {
        for (std::size_t j = i + 1; j < diffs.size(); ++j) {
            const std::int64_t det =
                diffs[i].first * diffs[j].second - diffs[i].second * diffs[j].first;
            minor_gcd = std::gcd(minor_gcd, det < 0 ? -det : det);
        }
    }
    return minor_gcd == 1;
}

cd BivarPoly::eval(cd z, cd w) const {
    cd acc{};
    for (const auto& [e, a] : coeffs_) {
        acc += a * std::pow(z, static_cast<double>(e.first)) *
               std::pow(w, static_cast<double>(e.second));
    }
    return acc;
}

cd BivarPoly::eval_grid(std::int64_t x, std::int64_t y, std::int64_t n,
                        const std::vector<cd>& table) const {
    cd acc{};
    for (const auto& [e, a] : coeffs_) {
        const std::int64_t phase = (e.first % n * (x % n) + e.second % n * (y % n)) % n;
        acc += a * table[static_cast<std::size_t>(phase)];
    }
    return acc;
}

void BivarPoly::scale(cd factor) {
    if (factor == cd{}) {
        coeffs_.clear();
        return;
    }
    for (auto& [e, a] : coeffs_) a *= factor;
}

namespace {

// |F(z, w)| at a grid point in quadruple precision.
double abs_value_quad(const BivarPoly& f, std::int64_t x, std::int64_t y, std::int64_t n) {
    __float128 re = 0, im = 0;
    const __float128 two_pi = 2 * acosq(static_cast<__float128>(-1));
    for (const auto& [e, a] : f.coeffs()) {
        std::int64_t phase = (e.first % n * (x % n) + e.second % n * (y % n)) % n;
        if (phase < 0) phase += n;
        const __float128 angle = two_pi * static_cast<__float128>(phase) / static_cast<__float128>(n);
        const __float128 c = cosq(angle), s = sinq(angle);
        re += static_cast<__float128>(a.real()) * c - static_cast<__float128>(a.imag()) * s;
        im += static_cast<__float128>(a.real()) * s + static_cast<__float128>(a.imag()) * c;
    }
    return static_cast<double>(sqrtq(re * re + im * im));
}

}  // namespace

ZeroSetReport eval_zero_set(const BivarPoly& f, std::int64_t n) {
    if (n < 1) throw usage_error("grid size must be positive");
    ZeroSetReport report;
    report.N = n;
    const double tol = kZeroTolRel * f.coeff_l1_norm();
    const auto table = root_of_unity_table(n);
    std::vector<GridPoint> zeros;
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < n; ++y) {
            double mag = std::abs(f.eval_grid(x, y, n, table));
            // Near-threshold values get a second opinion at twice the
            // working precision before they feed any counts.
            if (mag > tol / 16 && mag < tol * 16) {
                mag = abs_value_quad(f, x, y, n);
            }
            if (mag <= tol) zeros.push_back({x, y});
        }
    }
    report.zeros = GridSet::make(n, std::move(zeros));
    report.count = report.zeros.size();
    return report;
}

namespace {

// Evaluation matrix: rows are grid points of S, columns the monomials
// (k, l) in [0, d]^2 ordered lexicographically.
MatrixXcd evaluation_matrix(const std::vector<GridPoint>& pts, std::int64_t n, std::int64_t d,
                            const std::vector<cd>& table) {
    const std::int64_t cols = (d + 1) * (d + 1);
    MatrixXcd e(static_cast<Eigen::Index>(pts.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < pts.size(); ++r) {
        const auto [x, y] = pts[r];
        std::int64_t c = 0;
        for (std::int64_t k = 0; k <= d; ++k) {
            for (std::int64_t l = 0; l <= d; ++l, ++c) {
                const std::int64_t phase = (k * x + l * y) % n;
                e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                    table[static_cast<std::size_t>(phase)];
            }
        }
    }
    return e;
}

BivarPoly poly_from_box_vector(const VectorXcd& v, std::int64_t d) {
    std::map<BivarPoly::ExponentPair, cd> coeffs;
    std::int64_t c = 0;
    double top = 0.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) top = std::max(top, std::abs(v(i)));
    for (std::int64_t k = 0; k <= d; ++k) {
        for (std::int64_t l = 0; l <= d; ++l, ++c) {
            const cd a = v(static_cast<Eigen::Index>(c));
            if (std::abs(a) > 1e-14 * top) coeffs[{k, l}] = a;
        }
    }
    return BivarPoly(std::move(coeffs));
}

// Deterministic normalization: unit 2-norm, largest coefficient real positive.
BivarPoly normalize_poly(BivarPoly f) {
    if (f.is_zero()) return f;
    cd anchor{};
    double top = -1.0;
    for (const auto& [e, a] : f.coeffs()) {
        if (std::abs(a) > top + 1e-15) {
            top = std::abs(a);
            anchor = a;
        }
    }
    f.scale(std::conj(anchor) / (std::abs(anchor) * f.coeff_l2_norm()));
    return f;
}

}  // namespace

BivarPoly min_vanishing_poly(const GridSet& s) {
    if (s.points.empty()) throw usage_error("min_vanishing_poly needs a nonempty set");
    const auto table = root_of_unity_table(s.N);
    const auto bound = static_cast<std::int64_t>(
        std::floor(std::sqrt(static_cast<double>(s.points.size()))));
    for (std::int64_t d = 0;; ++d) {
        const MatrixXcd e = evaluation_matrix(s.points, s.N, d, table);
        const MatrixXcd kernel = kernel_basis(e, kRankTolRel);
        if (kernel.cols() > 0) {
            return normalize_poly(poly_from_box_vector(kernel.col(kernel.cols() - 1), d));
        }
        if (d > bound) {
            throw theorem_violation_error("vanishing polynomial not found within the degree bound");
        }
    }
}

LineCutResult cuts_out_line(const BivarPoly& f, std::int64_t n) {
    LineCutResult out;
    if (f.is_zero()) throw usage_error("cuts_out_line needs a nonzero polynomial");
    const auto& coeffs = f.coeffs();
    if (coeffs.size() == 1) {
        out.note = "a monomial never vanishes at roots of unity";
        return out;
    }
    if (coeffs.size() != 2) {
        out.note = f.lattice_rank() == 2 ? "support lattice has rank 2"
                                         : "not a binomial in a single power product";
        return out;
    }
    const auto lo = coeffs.begin();
    const auto hi = std::next(lo);
    const std::int64_t dk = hi->first.first - lo->first.first;
    const std::int64_t dl = hi->first.second - lo->first.second;
    if (std::gcd(dk < 0 ? -dk : dk, dl < 0 ? -dl : dl) != 1) {
        out.note = "exponent difference is not primitive";
        return out;
    }
    const cd zeta = -lo->second / hi->second;  // z^dk w^dl = zeta on the zero set
    if (std::abs(std::abs(zeta) - 1.0) > 1e-9) {
        out.note = "term ratio is not unimodular";
        return out;
    }
    const double angle = std::arg(zeta) / (2.0 * std::numbers::pi);
    const double c_real = angle * static_cast<double>(n);
    const auto c = static_cast<std::int64_t>(std::llround(c_real));
    if (std::abs(zeta - root_of_unity(c, n)) > 1e-9) {
        out.note = "no grid line for this N: the root of unity has order not dividing N";
        return out;
    }
    out.line = canonicalize_line(dk, dl, c, n);
    return out;
}

BivarPoly line_poly(const Line& line) {
    std::map<BivarPoly::ExponentPair, cd> coeffs;
    const cd zeta = root_of_unity(line.c, line.N);
    if (line.a >= 0 && line.b >= 0) {
        coeffs[{line.a, line.b}] = 1.0;
        coeffs[{0, 0}] = -zeta;
    } else if (line.a >= 0 && line.b < 0) {
        coeffs[{line.a, 0}] = 1.0;
        coeffs[{0, -line.b}] = -zeta;
    } else if (line.a < 0 && line.b >= 0) {
        coeffs[{0, line.b}] = 1.0;
        coeffs[{-line.a, 0}] = -zeta;
    } else {
        coeffs[{0, 0}] = 1.0;
        coeffs[{-line.a, -line.b}] = -zeta;
    }
    return BivarPoly(std::move(coeffs));
}

namespace {

struct LineCandidate {
    Line line;
    std::int64_t hits = 0;
};

std::vector<LineCandidate> candidate_lines(const GridSet& s, std::int64_t max_size) {
    const std::int64_t n = s.N;
    const std::int64_t dir_bound = std::min(max_size, n / 2 + 1);
    std::set<std::array<std::int64_t, 3>> seen;
    std::vector<LineCandidate> out;
    for (std::int64_t size = 1; size <= dir_bound; ++size) {
        for (std::int64_t a = -size; a <= size; ++a) {
            for (std::int64_t b = 0; b <= size; ++b) {
                if (std::max(a < 0 ? -a : a, b) != size) continue;
                if (!(b > 0 || (b == 0 && a > 0))) continue;
                if (std::gcd(a < 0 ? -a : a, b) != 1) continue;
                std::set<std::int64_t> cs;
                for (const auto& [x, y] : s.points) {
                    std::int64_t c = (a * x + b * y) % n;
                    if (c < 0) c += n;
                    cs.insert(c);
                }
                for (auto c : cs) {
                    Line line;
                    try {
                        line = canonicalize_line(a, b, c, n);
                    } catch (const not_irreducible_error&) {
                        continue;
                    }
                    if (line.size > max_size) continue;
                    if (!seen.insert({line.a, line.b, line.c}).second) continue;
                    const auto pts = line_points(line);
                    std::int64_t hits = 0;
                    for (const auto& p : s.points) {
                        if (pts.contains(p)) ++hits;
                    }
                    if (hits > 0) out.push_back({line, hits});
                }
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const LineCandidate& l, const LineCandidate& r) {
        if (l.line.size != r.line.size) return l.line.size < r.line.size;
        if (l.hits != r.hits) return l.hits > r.hits;
        return std::tuple{l.line.a, l.line.b, l.line.c} < std::tuple{r.line.a, r.line.b, r.line.c};
    });
    return out;
}

}  // namespace

SeparationResult separating_poly(const GridSet& s) {
    if (s.points.empty()) throw usage_error("separating_poly needs a nonempty set");
    const std::int64_t n = s.N;
    const auto r_bound = static_cast<std::int64_t>(
        std::floor(200.0 * std::sqrt(static_cast<double>(s.points.size()))));
    const std::int64_t box = std::min(r_bound, n);  // exponents in [0, box)
    const auto table = root_of_unity_table(n);

    for (const auto& cand : candidate_lines(s, r_bound)) {
        const auto pts = line_points(cand.line);
        std::vector<GridPoint> inside, outside;
        for (const auto& p : s.points) {
            (pts.contains(p) ? inside : outside).push_back(p);
        }
        if (outside.empty()) {
            return {BivarPoly::constant(1.0), cand.line};
        }
        for (std::int64_t d = 0; d < box; ++d) {
            const MatrixXcd e_out = evaluation_matrix(outside, n, d, table);
            const MatrixXcd kernel = kernel_basis(e_out, kRankTolRel);
            if (kernel.cols() == 0) continue;
            const MatrixXcd e_in = evaluation_matrix(inside, n, d, table);
            const MatrixXcd g = e_in * kernel;
            Eigen::BDCSVD<MatrixXcd> svd(g, Eigen::ComputeFullV);
            if (svd.singularValues()(0) <= 1e-9) continue;
            const VectorXcd combo = kernel * svd.matrixV().col(0);
            BivarPoly f_star = normalize_poly(poly_from_box_vector(combo, d));
            // Honest postcondition check before handing the polynomial out.
            const double tol = kZeroTolRel * f_star.coeff_l1_norm();
            bool vanishes_outside = true;
            for (const auto& [x, y] : outside) {
                if (std::abs(f_star.eval_grid(x, y, n, table)) > tol) {
                    vanishes_outside = false;
                    break;
                }
            }
            bool alive_inside = false;
            for (const auto& [x, y] : inside) {
                if (std::abs(f_star.eval_grid(x, y, n, table)) > tol) {
                    alive_inside = true;
                    break;
                }
            }
            if (vanishes_outside && alive_inside) {
                return {std::move(f_star), cand.line};
            }
        }
    }
    throw theorem_violation_error(
        "no separating polynomial found within the degree bound; numerical rank failure");
}

GridFunction multiplier_from_poly(const BivarPoly& f, std::int64_t n) {
    for (const auto& [e, a] : f.coeffs()) {
        if (e.first >= n || e.second >= n) {
            throw usage_error("multiplier exponents must lie in [0, N)^2");
        }
    }
    const auto table = root_of_unity_table(n);
    GridFunction h = GridFunction::zeros(n, 2);
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < n; ++y) {
            h.at(x, y) = f.eval_grid(x, y, n, table) / static_cast<double>(n);
        }
    }
    return h;
}

LocalizationResult localize_to_line(const GridFunction& f) {
    if (f.dim != 2) throw usage_error("localize_to_line expects a 2D grid function");
    const GridSet s = support(f);
    if (s.points.empty()) throw usage_error("localize_to_line needs a nonzero function");
    const std::int64_t n = f.N;
    const auto r_bound = static_cast<std::int64_t>(
        std::floor(200.0 * std::sqrt(static_cast<double>(s.points.size()))));

    SeparationResult sep = separating_poly(s);
    const GridFunction h = multiplier_from_poly(sep.f_star, n);
    GridFunction g = GridFunction::zeros(n, 2);
    for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = h.values[i] * f.values[i];

    // Postconditions: nonzero, supported on supp f within the line, Fourier
    // support inside the upper-right R-neighborhood.
    const GridSet gs = support(g);
    if (gs.points.empty()) throw theorem_violation_error("localized function vanished");
    const GridSet line_set = line_points(sep.line);
    for (const auto& p : gs.points) {
        if (!s.contains(p) || !line_set.contains(p)) {
            throw theorem_violation_error("localized support escapes supp f on the line");
        }
    }
    const std::int64_t r_eff = std::min(r_bound, n);
    const GridSet fhat_support = support(dft(f));
    const GridSet allowed = upper_right_neighborhood(fhat_support, r_eff);
    if (r_eff < n) {
        const GridSet ghat_support = support(dft(g));
        for (const auto& p : ghat_support.points) {
            if (!allowed.contains(p)) {
                throw theorem_violation_error("localized Fourier support escapes the neighborhood");
            }
        }
    }
    return {sep.line, std::move(g), std::move(sep.f_star)};
}

GridFunction one_dim_annihilator(std::int64_t n, const std::vector<std::int64_t>& s,
                                 std::int64_t keep) {
    if (s.empty()) throw usage_error("annihilator needs a nonempty set");
    if (static_cast<std::int64_t>(s.size()) > n) throw usage_error("set larger than the grid");
    bool has_keep = false;
    for (auto x : s) has_keep = has_keep || (x % n + n) % n == (keep % n + n) % n;
    if (!has_keep) throw usage_error("keep must belong to the set");

    // Coefficients of prod (z - e^{2 pi i x / N}) over the removed points.
    std::vector<cd> coeffs{1.0};
    for (auto x : s) {
        if ((x % n + n) % n == (keep % n + n) % n) continue;
        const cd root = root_of_unity(x, n);
        std::vector<cd> next(coeffs.size() + 1, cd{});
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            next[j + 1] += coeffs[j];
            next[j] -= coeffs[j] * root;
        }
        coeffs.swap(next);
    }

    const auto table = root_of_unity_table(n);
    GridFunction h = GridFunction::zeros(n, 1);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::int64_t x = 0; x < n; ++x) {
        cd acc{};
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
            acc += coeffs[j] * table[static_cast<std::size_t>(
                        (static_cast<std::int64_t>(j) * x) % n)];
        }
        h.at(x) = acc * scale;
    }
    return h;
}

namespace {

bool coefficient_is_rational(cd a, double tol) {
    if (std::abs(a.imag()) > tol * std::max(1.0, std::abs(a))) return false;
    // Continued-fraction reconstruction with a bounded denominator.
    double x = a.real();
    double p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double value = x;
    for (int iter = 0; iter < 64; ++iter) {
        const double integral = std::floor(value);
        const double p2 = integral * p1 + p0;
        const double q2 = integral * q1 + q0;
        if (q2 > 1e9) break;
        if (std::abs(x - p2 / q2) <= tol * std::max(1.0, std::abs(x))) return true;
        const double frac = value - integral;
        if (frac < 1e-15) break;
        value = 1.0 / frac;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    return false;
}

}  // namespace

std::vector<BivarPoly> seven_polynomials(const BivarPoly& f) {
    if (f.is_zero()) throw usage_error("seven_polynomials needs a nonzero polynomial");
    for (const auto& [e, a] : f.coeffs()) {
        if (!coefficient_is_rational(a, 1e-12)) {
            throw unsupported_case_error(
                "coefficients are not rational; only rational-coefficient transforms are "
                "supported");
        }
    }
    if (!f.lattice_is_full()) {
        throw unsupported_lattice_error("exponent lattice is a proper sublattice of Z^2");
    }

    auto transformed = [&](bool flip_z, bool flip_w, bool square) {
        std::map<BivarPoly::ExponentPair, cd> coeffs;
        for (const auto& [e, a] : f.coeffs()) {
            double sign = 1.0;
            if (flip_z && e.first % 2 != 0) sign = -sign;
            if (flip_w && e.second % 2 != 0) sign = -sign;
            const std::int64_t k = square ? 2 * e.first : e.first;
            const std::int64_t l = square ? 2 * e.second : e.second;
            coeffs[{k, l}] = a * sign;
        }
        return BivarPoly(std::move(coeffs));
    };

    return {
        transformed(true, false, false),  // F(-z, w)
        transformed(false, true, false),  // F(z, -w)
        transformed(true, true, false),   // F(-z, -w)
        transformed(false, false, true),  // F(z^2, w^2)
        transformed(true, false, true),   // F(-z^2, w^2)
        transformed(false, true, true),   // F(z^2, -w^2)
        transformed(true, true, true),    // F(-z^2, -w^2)
    };
}

BezoutReport bezout_intersection(const BivarPoly& f, const BivarPoly& g, std::int64_t n) {
    if (f.is_zero() || g.is_zero()) throw usage_error("bezout_intersection needs nonzero inputs");
    const auto zf = eval_zero_set(f, n);
    const auto zg = eval_zero_set(g, n);

    BezoutReport report;
    report.bound = f.total_degree() * g.total_degree();

    auto contained = [](const GridSet& a, const GridSet& b) {
        if (a.points.empty()) return false;
        for (const auto& p : a.points) {
            if (!b.contains(p)) return false;
        }
        return true;
    };
    if (contained(zf.zeros, zg.zeros) || contained(zg.zeros, zf.zeros)) {
        report.conclusive = false;
        report.note = "grid zero sets are nested; the curves may share a component";
    }

    for (const auto& p : zf.zeros.points) {
        if (zg.zeros.contains(p)) ++report.count;
    }
    report.ok = report.count <= report.bound;
    return report;
}

}  // namespace fup
