#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/rational.hpp"

namespace fup {

// Irreducible line {(x,y) in Z_N^2 : ax + by = c mod N}, stored with the
// minimal coprime-integer representative. Sign convention: b > 0, or b = 0
// and a > 0. The point set has exactly N elements.
struct Line {
    std::int64_t N = 1;
    std::int64_t a = 0;
    std::int64_t b = 1;
    std::int64_t c = 0;
    std::int64_t size = 1;  // max(|a|, |b|), minimal over representatives
};

Line canonicalize_line(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t n);

GridSet line_points(const Line& line);

// Eventually periodic base-M expansion 0.pre(period).
struct BaseMExpansion {
    std::int64_t base = 2;
    std::vector<std::int64_t> preperiodic;
    std::vector<std::int64_t> periodic;

    std::string str() const;
};

// A torus point written with exact rationals; carries the digit expansions
// so callers can rescale exactly.
struct TorusOffset {
    Rat x;
    Rat y;
    BaseMExpansion x_digits;
    BaseMExpansion y_digits;
};

// Offsets s in [0,1) for which the whole line family R*v + (s,0) stays in
// the closed alphabet drawing. `cells` marks full grid intervals
// [g/(M|b|), (g+1)/(M|b|)] contained in the admissible set; `grid_points`
// marks the admissible grid offsets g/(M|b|) themselves, which can be
// strictly more (the admissible set may touch a cell only at its endpoints).
struct IntervalSet {
    std::pair<std::int64_t, std::int64_t> v;
    std::int64_t Mb = 1;                    // grid denominator M*|b|
    std::vector<std::int64_t> cells;        // sorted subset of [0, Mb)
    std::vector<std::int64_t> grid_points;  // sorted subset of [0, Mb)

    bool cell_marked(std::int64_t g) const;
    bool grid_marked(std::int64_t g) const;
};

// Sampling estimate of how far every line in direction v must stray from
// the alphabet drawing (0 when some line is contained).
struct MarginReport {
    std::pair<std::int64_t, std::int64_t> v;
    double margin = 0.0;  // in [0, 1/2]
    std::int64_t resolution = 0;
};

// Exact containment of the closed line R*v + (s,0) in the closed drawing.
// Requires coprime v with a*b != 0 (axis directions have dedicated tests).
bool line_family_contained(const Alphabet2D& alphabet, std::pair<std::int64_t, std::int64_t> v,
                           const Rat& s);

IntervalSet interval_set(const Alphabet2D& alphabet, std::pair<std::int64_t, std::int64_t> v);

// Decides whether the limiting Cantor set contains a line of direction v and
// returns a representative offset if so. Directions with max(|a|,|b|) > M
// never admit a line.
std::optional<TorusOffset> line_in_cantor(const Alphabet2D& alphabet,
                                          std::pair<std::int64_t, std::int64_t> v);

struct PairVerdict {
    bool obstructed = false;
    std::pair<std::int64_t, std::int64_t> v{0, 0};
    std::optional<TorusOffset> p;
    std::optional<TorusOffset> q;
};

// Searches for a direction v with a line of direction v in X and a line of
// direction v-perp in Y. Directions enumerated by increasing max(|a|,|b|),
// then lexicographically; first hit wins.
PairVerdict orthogonal_pair_condition(const Alphabet2D& a, const Alphabet2D& b);

struct FullRangeVerdict {
    bool improved_beta = false;
    bool used_inner_product_branch = false;
    // Witness for the inner-product branch: cells j, j', k, k'.
    std::optional<std::array<GridPoint, 4>> witness;
};

// Classifies whether the pair admits a Fourier-decay exponent strictly above
// the density baseline.
FullRangeVerdict full_range_condition(const Alphabet2D& a, const Alphabet2D& b);

MarginReport line_margin(const Alphabet2D& alphabet, std::pair<std::int64_t, std::int64_t> v,
                         std::int64_t resolution);

}  // namespace fup
