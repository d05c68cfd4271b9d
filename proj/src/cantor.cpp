#include "fup/cantor.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace fup {

Alphabet2D::Alphabet2D(std::int64_t m, std::vector<GridPoint> cells) : m_(m) {
    if (m < 2) throw usage_error("alphabet base must be at least 2");
    std::set<GridPoint> dedup;
    for (auto [a, b] : cells) {
        a %= m;
        if (a < 0) a += m;
        b %= m;
        if (b < 0) b += m;
        dedup.insert({a, b});
    }
    cells_.assign(dedup.begin(), dedup.end());
    if (cells_.empty()) throw usage_error("alphabet must be nonempty");
    if (static_cast<std::int64_t>(cells_.size()) >= m * m) {
        throw usage_error("alphabet must be a proper subset of Z_M^2");
    }
}

double Alphabet2D::delta() const {
    return std::log(static_cast<double>(cells_.size())) / std::log(static_cast<double>(m_));
}

bool Alphabet2D::contains(std::int64_t a, std::int64_t b) const {
    a %= m_;
    if (a < 0) a += m_;
    b %= m_;
    if (b < 0) b += m_;
    return std::binary_search(cells_.begin(), cells_.end(), GridPoint{a, b});
}

bool Alphabet2D::row_full(std::int64_t r) const {
    for (std::int64_t t = 0; t < m_; ++t) {
        if (!contains(t, r)) return false;
    }
    return true;
}

bool Alphabet2D::column_full(std::int64_t c) const {
    for (std::int64_t t = 0; t < m_; ++t) {
        if (!contains(c, t)) return false;
    }
    return true;
}

bool CantorIterate2D::contains(const GridPoint& p) const {
    return std::binary_search(points.begin(), points.end(), p);
}

GridSet GridSet::make(std::int64_t n, std::vector<GridPoint> pts) {
    GridSet s;
    s.N = n;
    std::set<GridPoint> dedup;
    for (auto [x, y] : pts) {
        x %= n;
        if (x < 0) x += n;
        y %= n;
        if (y < 0) y += n;
        dedup.insert({x, y});
    }
    s.points.assign(dedup.begin(), dedup.end());
    return s;
}

GridSet GridSet::full(std::int64_t n) {
    GridSet s;
    s.N = n;
    s.points.reserve(static_cast<std::size_t>(n * n));
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < n; ++y) s.points.push_back({x, y});
    }
    return s;
}

bool GridSet::contains(const GridPoint& p) const {
    return std::binary_search(points.begin(), points.end(), p);
}

CantorIterate2D iterate(const Alphabet2D& alphabet, std::int64_t k, const Limits& limits) {
    if (k < 0) throw usage_error("iterate index must be nonnegative");
    std::int64_t expected = 1;
    std::int64_t n = 1;
    for (std::int64_t j = 0; j < k; ++j) {
        expected *= alphabet.cell_count();
        n *= alphabet.M();
        check_matrix_entries(expected, 1, limits, "cantor iterate");
    }

    CantorIterate2D out;
    out.k = k;
    out.N = n;
    out.points = {{0, 0}};
    std::int64_t scale = 1;
    for (std::int64_t j = 0; j < k; ++j) {
        std::vector<GridPoint> next;
        next.reserve(out.points.size() * alphabet.cells().size());
        for (const auto& [x, y] : out.points) {
            for (const auto& [a, b] : alphabet.cells()) {
                next.push_back({x + a * scale, y + b * scale});
            }
        }
        out.points.swap(next);
        scale *= alphabet.M();
    }
    std::sort(out.points.begin(), out.points.end());
    return out;
}

namespace {

// Closed interval [lo, hi] / M^depth, tracked with integer numerators.
struct ScaledInterval {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    bool empty() const { return lo > hi; }
};

using BoxKey = std::array<std::int64_t, 5>;

bool box_meets_cantor(const Alphabet2D& alphabet, ScaledInterval ix, ScaledInterval iy,
                      std::int64_t depth, std::map<BoxKey, bool>& memo);

// State of the cell recursion: a closed box at scale M^-depth. After `depth`
// splits the box degenerates to per-axis {0}, {1} or [0,1], and membership
// reduces to corner/edge letter queries.
bool box_meets_cantor_uncached(const Alphabet2D& alphabet, ScaledInterval ix, ScaledInterval iy,
                               std::int64_t depth, std::map<BoxKey, bool>& memo) {
    if (depth == 0) {
        // ix, iy are now subsets of [0,1] with integer endpoints.
        const bool x0 = ix.lo == 0, x1 = ix.hi == 1;
        const bool y0 = iy.lo == 0, y1 = iy.hi == 1;
        if (x0 && x1 && y0 && y1) return true;
        const std::int64_t m = alphabet.M();
        // Candidate constant digits per axis: 0 forces digit 0, 1 forces M-1.
        std::vector<std::int64_t> xdigits, ydigits;
        if (x0) xdigits.push_back(0);
        if (x1) xdigits.push_back(m - 1);
        if (y0) ydigits.push_back(0);
        if (y1) ydigits.push_back(m - 1);
        if (x0 && x1) {
            // Full x-range: only y is pinned.
            for (auto yd : ydigits) {
                for (std::int64_t a = 0; a < m; ++a) {
                    if (alphabet.contains(a, yd)) return true;
                }
            }
            return false;
        }
        if (y0 && y1) {
            for (auto xd : xdigits) {
                for (std::int64_t b = 0; b < m; ++b) {
                    if (alphabet.contains(xd, b)) return true;
                }
            }
            return false;
        }
        for (auto xd : xdigits) {
            for (auto yd : ydigits) {
                if (alphabet.contains(xd, yd)) return true;
            }
        }
        return false;
    }

    const std::int64_t m = alphabet.M();
    std::int64_t cell_width = 1;
    for (std::int64_t j = 1; j < depth; ++j) cell_width *= m;
    for (const auto& [a, b] : alphabet.cells()) {
        ScaledInterval nx{std::max(ix.lo, a * cell_width) - a * cell_width,
                          std::min(ix.hi, (a + 1) * cell_width) - a * cell_width};
        if (nx.empty()) continue;
        ScaledInterval ny{std::max(iy.lo, b * cell_width) - b * cell_width,
                          std::min(iy.hi, (b + 1) * cell_width) - b * cell_width};
        if (ny.empty()) continue;
        if (box_meets_cantor(alphabet, nx, ny, depth - 1, memo)) return true;
    }
    return false;
}

bool box_meets_cantor(const Alphabet2D& alphabet, ScaledInterval ix, ScaledInterval iy,
                      std::int64_t depth, std::map<BoxKey, bool>& memo) {
    if (ix.empty() || iy.empty()) return false;
    const BoxKey key{depth, ix.lo, ix.hi, iy.lo, iy.hi};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    const bool result = box_meets_cantor_uncached(alphabet, ix, iy, depth, memo);
    memo.emplace(key, result);
    return result;
}

}  // namespace

bool cell_meets_drawing(const Alphabet2D& alphabet, std::int64_t n, const GridPoint& p) {
    std::int64_t k = 0;
    std::int64_t power = 1;
    while (power < n) {
        power *= alphabet.M();
        ++k;
    }
    if (power != n) {
        throw invalid_modulus_error("grid size " + std::to_string(n) + " is not a power of " +
                                    std::to_string(alphabet.M()));
    }
    std::int64_t x = p.first % n;
    if (x < 0) x += n;
    std::int64_t y = p.second % n;
    if (y < 0) y += n;

    // The closed cell viewed on the torus: its lift to [0,1] is the box
    // itself plus the seam points 1 (for x = 0) and 0 (for x = N-1).
    auto lifts = [&](std::int64_t c) {
        std::vector<ScaledInterval> out;
        out.push_back({c, c + 1});
        if (c == 0) out.push_back({n, n});
        if (c == n - 1) out.push_back({0, 0});
        return out;
    };
    std::map<BoxKey, bool> memo;
    for (const auto& ix : lifts(x)) {
        for (const auto& iy : lifts(y)) {
            if (box_meets_cantor(alphabet, ix, iy, k, memo)) return true;
        }
    }
    return false;
}

GridSet upper_right_neighborhood(const GridSet& s, std::int64_t r) {
    if (r < 1 || r > s.N) {
        throw usage_error("neighborhood radius must lie in [1, N], got " + std::to_string(r));
    }
    std::set<GridPoint> out;
    for (const auto& [x, y] : s.points) {
        for (std::int64_t i = 0; i < r; ++i) {
            for (std::int64_t j = 0; j < r; ++j) {
                out.insert({(x + i) % s.N, (y + j) % s.N});
            }
        }
    }
    GridSet result;
    result.N = s.N;
    result.points.assign(out.begin(), out.end());
    return result;
}

std::vector<std::int64_t> iterate_1d(std::int64_t m, const std::vector<std::int64_t>& digits,
                                     std::int64_t k, const Limits& limits) {
    if (k < 0) throw usage_error("iterate index must be nonnegative");
    std::set<std::int64_t> dedup;
    for (auto d : digits) {
        d %= m;
        if (d < 0) d += m;
        dedup.insert(d);
    }
    if (dedup.empty()) throw usage_error("digit set must be nonempty");
    std::vector<std::int64_t> letters(dedup.begin(), dedup.end());

    std::int64_t expected = 1;
    for (std::int64_t j = 0; j < k; ++j) {
        expected *= static_cast<std::int64_t>(letters.size());
        check_matrix_entries(expected, 1, limits, "cantor iterate");
    }
    std::vector<std::int64_t> points = {0};
    std::int64_t scale = 1;
    for (std::int64_t j = 0; j < k; ++j) {
        std::vector<std::int64_t> next;
        next.reserve(points.size() * letters.size());
        for (auto x : points) {
            for (auto d : letters) next.push_back(x + d * scale);
        }
        points.swap(next);
        scale *= m;
    }
    std::sort(points.begin(), points.end());
    return points;
}

}  // namespace fup
