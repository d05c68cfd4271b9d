#include "fup/lines.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace fup {

namespace {

std::int64_t mod_n(std::int64_t v, std::int64_t n) {
    v %= n;
    if (v < 0) v += n;
    return v;
}

// Signed residue in (-N/2, N/2].
std::int64_t signed_residue(std::int64_t v, std::int64_t n) {
    v = mod_n(v, n);
    return 2 * v > n ? v - n : v;
}

// Extended gcd: returns g and x, y with a*x + b*y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
    if (b == 0) {
        x = a >= 0 ? 1 : -1;
        y = 0;
        return a >= 0 ? a : -a;
    }
    std::int64_t x1, y1;
    const std::int64_t g = ext_gcd(b, a % b, x1, y1);
    x = y1;
    y = x1 - (a / b) * y1;
    return g;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t n) {
    std::int64_t x, y;
    const std::int64_t g = ext_gcd(mod_n(a, n), n, x, y);
    if (g != 1) throw error("value not invertible in Z_N");
    return mod_n(x, n);
}

bool direction_sign_ok(std::int64_t a, std::int64_t b) {
    return b > 0 || (b == 0 && a > 0);
}

std::pair<std::int64_t, std::int64_t> normalize_direction(std::pair<std::int64_t, std::int64_t> v) {
    if (!direction_sign_ok(v.first, v.second)) return {-v.first, -v.second};
    return v;
}

}  // namespace

Line canonicalize_line(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t n) {
    if (n < 1) throw usage_error("modulus must be positive");
    a = mod_n(a, n);
    b = mod_n(b, n);
    c = mod_n(c, n);
    if (a == 0 && b == 0) throw not_irreducible_error("(a, b) must be nonzero mod N");
    if (std::gcd(std::gcd(a, b), n) != 1) {
        throw not_irreducible_error("coefficients (" + std::to_string(a) + ", " +
                                    std::to_string(b) + ") are not coprime mod " +
                                    std::to_string(n));
    }

    // Scaling by units of Z_N preserves the point set; scan all of them for
    // the smallest coprime-integer representative.
    Line best;
    bool have = false;
    for (std::int64_t alpha = 1; alpha < std::max<std::int64_t>(n, 2); ++alpha) {
        if (n > 1 && std::gcd(alpha, n) != 1) continue;
        const std::int64_t sa = signed_residue(alpha * a % n, n);
        const std::int64_t sb = signed_residue(alpha * b % n, n);
        if (sa == 0 && sb == 0) continue;
        if (std::gcd(sa < 0 ? -sa : sa, sb < 0 ? -sb : sb) != 1) continue;
        if (!direction_sign_ok(sa, sb)) continue;
        const std::int64_t size = std::max(sa < 0 ? -sa : sa, sb < 0 ? -sb : sb);
        if (!have || size < best.size ||
            (size == best.size && std::pair{sa, sb} < std::pair{best.a, best.b})) {
            best = Line{n, sa, sb, mod_n(alpha * c, n), size};
            have = true;
        }
    }
    if (!have) throw not_irreducible_error("no coprime-integer representative found");
    return best;
}

GridSet line_points(const Line& line) {
    const std::int64_t n = line.N;
    std::int64_t s, t;
    ext_gcd(line.a, line.b, s, t);  // a*s + b*t = 1 over Z
    const GridPoint base{mod_n(s * line.c, n), mod_n(t * line.c, n)};
    std::vector<GridPoint> pts;
    pts.reserve(static_cast<std::size_t>(n));
    for (std::int64_t u = 0; u < n; ++u) {
        pts.push_back({mod_n(base.first - u * line.b, n), mod_n(base.second + u * line.a, n)});
    }
    return GridSet::make(n, std::move(pts));
}

std::string BaseMExpansion::str() const {
    std::string out = "0.";
    for (auto d : preperiodic) out += std::to_string(d);
    out += "(";
    for (auto d : periodic) out += std::to_string(d);
    out += ")_" + std::to_string(base);
    return out;
}

bool IntervalSet::cell_marked(std::int64_t g) const {
    return std::binary_search(cells.begin(), cells.end(), g);
}

bool IntervalSet::grid_marked(std::int64_t g) const {
    return std::binary_search(grid_points.begin(), grid_points.end(), g);
}

bool line_family_contained(const Alphabet2D& alphabet, std::pair<std::int64_t, std::int64_t> v,
                           const Rat& s) {
    const auto [a, b] = v;
    if (a == 0 || b == 0) throw usage_error("line_family_contained needs a*b != 0");
    const std::int64_t m = alphabet.M();

    // Crossing times in t of x(t) = s + t*a or y(t) = t*b against the 1/M
    // grid, within one full period t in [0, 1).
    std::vector<Rat> events;
    const std::int64_t babs = b < 0 ? -b : b;
    for (std::int64_t k = 0; k < m * babs; ++k) events.push_back(Rat(k, m * babs));
    // j/M in s + [0, a) (or s + (a, 0] for negative a)
    const std::int64_t j_lo = (Rat(m) * (s + Rat(std::min<std::int64_t>(a, 0)))).floor() - 1;
    const std::int64_t j_hi = (Rat(m) * (s + Rat(std::max<std::int64_t>(a, 0)))).floor() + 1;
    for (std::int64_t j = j_lo; j <= j_hi; ++j) {
        const Rat t = (Rat(j, m) - s) * Rat(1, a);
        if (Rat(0) <= t && t < Rat(1)) events.push_back(t);
    }
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end()), events.end());

    // Between consecutive crossings the open segment sits inside exactly one
    // grid cell; the closed line is contained iff every such cell is a letter.
    const std::size_t count = events.size();
    for (std::size_t i = 0; i < count; ++i) {
        const Rat next = i + 1 < count ? events[i + 1] : events[0] + Rat(1);
        const Rat mid = (events[i] + next) * Rat(1, 2);
        const Rat x = (s + mid * Rat(a)).mod_one();
        const Rat y = (mid * Rat(b)).mod_one();
        const std::int64_t cx = (Rat(m) * x).floor();
        const std::int64_t cy = (Rat(m) * y).floor();
        if (!alphabet.contains(cx, cy)) return false;
    }
    return true;
}

IntervalSet interval_set(const Alphabet2D& alphabet, std::pair<std::int64_t, std::int64_t> v) {
    auto [a, b] = normalize_direction(v);
    if (b == 0) {
        throw horizontal_direction_error("horizontal directions use the dedicated row test");
    }
    const std::int64_t m = alphabet.M();
    if (std::gcd(a < 0 ? -a : a, b) != 1) throw usage_error("direction must be coprime");
    if (std::max(a < 0 ? -a : a, b) > m) {
        throw usage_error("direction exceeds the max(|a|,|b|) <= M bound");
    }

    IntervalSet out;
    out.v = {a, b};
    out.Mb = m * b;

    if (a == 0) {
        // Vertical lines x = s: a cell is admissible iff its column is a full
        // letter column; a grid offset iff the two incident columns cover
        // every row between them.
        for (std::int64_t g = 0; g < m; ++g) {
            if (alphabet.column_full(g)) out.cells.push_back(g);
            bool covered = true;
            for (std::int64_t t = 0; t < m; ++t) {
                if (!alphabet.contains(g, t) && !alphabet.contains(g - 1 + m, t)) {
                    covered = false;
                    break;
                }
            }
            if (covered) out.grid_points.push_back(g);
        }
        return out;
    }

    // The admissible offset set is closed with boundary on the 1/(M|b|) grid,
    // so one midpoint decides each full cell exactly.
    for (std::int64_t g = 0; g < out.Mb; ++g) {
        if (line_family_contained(alphabet, {a, b}, Rat(2 * g + 1, 2 * out.Mb))) {
            out.cells.push_back(g);
        }
        if (line_family_contained(alphabet, {a, b}, Rat(g, out.Mb))) {
            out.grid_points.push_back(g);
        }
    }
    return out;
}

namespace {

BaseMExpansion expansion_of_rational(std::int64_t num, std::int64_t den, std::int64_t m) {
    BaseMExpansion out;
    out.base = m;
    // Long division num/den in base m, cutting at the first repeated remainder.
    std::vector<std::int64_t> remainders;
    std::vector<std::int64_t> digits;
    std::int64_t r = mod_n(num, den);
    while (true) {
        auto it = std::find(remainders.begin(), remainders.end(), r);
        if (it != remainders.end()) {
            const auto split = static_cast<std::size_t>(it - remainders.begin());
            out.preperiodic.assign(digits.begin(), digits.begin() + split);
            out.periodic.assign(digits.begin() + split, digits.end());
            return out;
        }
        remainders.push_back(r);
        digits.push_back(m * r / den);
        r = m * r % den;
    }
}

TorusOffset offset_from_rational(const Rat& sx, const Rat& sy, std::int64_t m) {
    TorusOffset out;
    out.x = sx.mod_one();
    out.y = sy.mod_one();
    out.x_digits = expansion_of_rational(out.x.num, out.x.den, m);
    out.y_digits = expansion_of_rational(out.y.num, out.y.den, m);
    return out;
}

std::int64_t checked_pow(std::int64_t base, std::int64_t exp) {
    __int128 acc = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > INT64_MAX) throw error("offset denominator exceeds the 64-bit range");
    }
    return static_cast<std::int64_t>(acc);
}

// First directed cycle among marked cells under g -> (M*g + d) mod Mb,
// found by a deterministic depth-first search. Returns the cycle cells.
std::optional<std::vector<std::int64_t>> find_cell_cycle(const IntervalSet& is, std::int64_t m) {
    enum class Color { White, Gray, Black };
    std::map<std::int64_t, Color> color;
    for (auto g : is.cells) color[g] = Color::White;

    std::vector<std::int64_t> stack;
    std::optional<std::vector<std::int64_t>> cycle;

    std::function<bool(std::int64_t)> dfs = [&](std::int64_t g) {
        color[g] = Color::Gray;
        stack.push_back(g);
        for (std::int64_t d = 0; d < m; ++d) {
            const std::int64_t h = (m * g + d) % is.Mb;
            if (!is.cell_marked(h)) continue;
            if (color[h] == Color::Gray) {
                auto it = std::find(stack.begin(), stack.end(), h);
                cycle = std::vector<std::int64_t>(it, stack.end());
                return true;
            }
            if (color[h] == Color::White && dfs(h)) return true;
        }
        stack.pop_back();
        color[g] = Color::Black;
        return false;
    };
    for (auto g : is.cells) {
        if (color[g] == Color::White && dfs(g)) break;
    }
    return cycle;
}

}  // namespace

std::optional<TorusOffset> line_in_cantor(const Alphabet2D& alphabet,
                                          std::pair<std::int64_t, std::int64_t> v) {
    auto [a, b] = normalize_direction(v);
    if (a == 0 && b == 0) throw usage_error("direction must be nonzero");
    const std::int64_t aa = a < 0 ? -a : a;
    if (std::gcd(aa, b) != 1) throw usage_error("direction must be a coprime pair");
    const std::int64_t m = alphabet.M();
    if (std::max(aa, b) > m) return std::nullopt;

    if (b == 0) {
        // Horizontal lines survive every rescaling only along a full letter
        // row repeated at every digit.
        for (std::int64_t r = 0; r < m; ++r) {
            if (alphabet.row_full(r)) return offset_from_rational(Rat(0), Rat(r, m - 1), m);
        }
        return std::nullopt;
    }
    if (a == 0) {
        for (std::int64_t c = 0; c < m; ++c) {
            if (alphabet.column_full(c)) return offset_from_rational(Rat(c, m - 1), Rat(0), m);
        }
        return std::nullopt;
    }

    const IntervalSet is = interval_set(alphabet, {a, b});

    // Offsets on the grid have orbits on the grid; walk until a repeat.
    for (auto g : is.grid_points) {
        std::set<std::int64_t> seen;
        std::int64_t cur = g;
        bool ok = true;
        while (!seen.count(cur)) {
            if (!is.grid_marked(cur)) {
                ok = false;
                break;
            }
            seen.insert(cur);
            cur = m * cur % is.Mb;
        }
        if (ok) return offset_from_rational(Rat(g, is.Mb), Rat(0), m);
    }

    // Otherwise a line exists iff the fully admissible cells carry a cycle
    // under the expansion map; its fixed point is the offset.
    if (auto cycle = find_cell_cycle(is, m)) {
        const auto& cells = *cycle;
        const auto p = static_cast<std::int64_t>(cells.size());
        std::vector<std::int64_t> digits;
        for (std::int64_t j = 0; j < p; ++j) {
            const std::int64_t cj = cells[static_cast<std::size_t>(j)];
            const std::int64_t cn = cells[static_cast<std::size_t>((j + 1) % p)];
            const std::int64_t d = mod_n(cn - m * cj, is.Mb);
            digits.push_back((m * cj + d - cn) / is.Mb);
        }
        std::int64_t numerator = 0;
        for (auto d : digits) numerator = numerator * m + d;
        const std::int64_t denominator = checked_pow(m, p) - 1;
        return offset_from_rational(Rat(numerator, denominator), Rat(0), m);
    }
    return std::nullopt;
}

PairVerdict orthogonal_pair_condition(const Alphabet2D& a, const Alphabet2D& b) {
    if (a.M() != b.M()) throw usage_error("alphabet pair must share the same base");
    const std::int64_t m = a.M();

    for (std::int64_t size = 1; size <= m; ++size) {
        std::vector<std::pair<std::int64_t, std::int64_t>> dirs;
        for (std::int64_t da = -size; da <= size; ++da) {
            for (std::int64_t db = 0; db <= size; ++db) {
                if (std::max(da < 0 ? -da : da, db) != size) continue;
                if (!direction_sign_ok(da, db)) continue;
                if (std::gcd(da < 0 ? -da : da, db) != 1) continue;
                dirs.push_back({da, db});
            }
        }
        std::sort(dirs.begin(), dirs.end());
        for (auto v : dirs) {
            auto p = line_in_cantor(a, v);
            if (!p) continue;
            auto q = line_in_cantor(b, {-v.second, v.first});
            if (!q) continue;
            PairVerdict out;
            out.obstructed = true;
            out.v = v;
            out.p = std::move(p);
            out.q = std::move(q);
            return out;
        }
    }
    return PairVerdict{};
}

FullRangeVerdict full_range_condition(const Alphabet2D& a, const Alphabet2D& b) {
    if (a.M() != b.M()) throw usage_error("alphabet pair must share the same base");
    const std::int64_t m = a.M();
    FullRangeVerdict out;
    // delta_A + delta_B <= 2 exactly when |A| * |B| <= M^2.
    if (a.cell_count() * b.cell_count() <= m * m) {
        out.used_inner_product_branch = true;
        for (const auto& j : a.cells()) {
            for (const auto& jp : a.cells()) {
                for (const auto& k : b.cells()) {
                    for (const auto& kp : b.cells()) {
                        const std::int64_t dot = (j.first - jp.first) * (k.first - kp.first) +
                                                 (j.second - jp.second) * (k.second - kp.second);
                        if (dot != 0) {
                            out.improved_beta = true;
                            out.witness = std::array<GridPoint, 4>{j, jp, k, kp};
                            return out;
                        }
                    }
                }
            }
        }
        return out;
    }
    out.improved_beta = !orthogonal_pair_condition(a, b).obstructed;
    return out;
}

namespace {

double torus_dist(double u, double v) {
    double d = std::abs(u - v);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

double arc_distance(double u, double lo, double hi) {
    // distance from torus point u to the closed arc [lo, hi]
    double t = u - lo;
    t -= std::floor(t);
    if (t <= hi - lo) return 0.0;
    return std::min(t - (hi - lo), 1.0 - t);
}

double point_to_drawing(const Alphabet2D& alphabet, double x, double y) {
    const auto m = static_cast<double>(alphabet.M());
    double best = 0.5;
    for (const auto& [a, b] : alphabet.cells()) {
        const double dx = arc_distance(x, static_cast<double>(a) / m, (static_cast<double>(a) + 1.0) / m);
        const double dy = arc_distance(y, static_cast<double>(b) / m, (static_cast<double>(b) + 1.0) / m);
        best = std::min(best, std::max(dx, dy));
    }
    return best;
}

}  // namespace

MarginReport line_margin(const Alphabet2D& alphabet, std::pair<std::int64_t, std::int64_t> v,
                         std::int64_t resolution) {
    if (resolution < 8) throw usage_error("margin resolution must be at least 8");
    auto [a, b] = normalize_direction(v);
    if (a == 0 && b == 0) throw usage_error("direction must be nonzero");
    const std::int64_t m = alphabet.M();
    const std::int64_t span = std::max({a < 0 ? -a : a, b, std::int64_t{1}});

    const std::int64_t offset_samples = resolution * m * std::max<std::int64_t>(b, 1);
    const std::int64_t t_samples = resolution * m * span;

    double inf_over_offsets = 0.5;
    for (std::int64_t i = 0; i < offset_samples; ++i) {
        const double s = static_cast<double>(i) / static_cast<double>(offset_samples);
        double sup = 0.0;
        for (std::int64_t j = 0; j < t_samples; ++j) {
            const double t = static_cast<double>(j) / static_cast<double>(t_samples);
            const double x = b != 0 ? s + t * static_cast<double>(a) : t;
            const double y = b != 0 ? t * static_cast<double>(b) : s;
            sup = std::max(sup, point_to_drawing(alphabet, x - std::floor(x), y - std::floor(y)));
            if (sup >= 0.5) break;
        }
        inf_over_offsets = std::min(inf_over_offsets, sup);
        if (inf_over_offsets == 0.0) break;
    }

    MarginReport report;
    report.v = {a, b};
    report.margin = std::clamp(inf_over_offsets, 0.0, 0.5);
    report.resolution = resolution;
    return report;
}

}  // namespace fup
