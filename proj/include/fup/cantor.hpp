#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "fup/numerics.hpp"

namespace fup {

using GridPoint = std::pair<std::int64_t, std::int64_t>;

// Base M together with a proper nonempty digit-pair subset of Z_M^2.
// Generates all Cantor objects in the library. Cells are deduplicated,
// reduced mod M, and kept sorted so iteration order is reproducible.
class Alphabet2D {
  public:
    Alphabet2D(std::int64_t m, std::vector<GridPoint> cells);

    std::int64_t M() const { return m_; }
    const std::vector<GridPoint>& cells() const { return cells_; }
    std::int64_t cell_count() const { return static_cast<std::int64_t>(cells_.size()); }

    // log_M |cells|, computed on demand from the exact (|cells|, M) pair.
    double delta() const;

    bool contains(std::int64_t a, std::int64_t b) const;

    // Row/column structure used by the axis-direction line tests.
    bool row_full(std::int64_t r) const;
    bool column_full(std::int64_t c) const;

  private:
    std::int64_t m_;
    std::vector<GridPoint> cells_;
};

// Points of Z_{M^k}^2 whose base-M digit pairs all lie in the alphabet.
struct CantorIterate2D {
    std::int64_t k = 0;
    std::int64_t N = 1;
    std::vector<GridPoint> points;  // sorted

    bool contains(const GridPoint& p) const;
};

// Plain carrier for subsets of Z_N^2; points sorted, coordinates in [0, N).
struct GridSet {
    std::int64_t N = 1;
    std::vector<GridPoint> points;

    static GridSet make(std::int64_t n, std::vector<GridPoint> pts);
    static GridSet full(std::int64_t n);
    bool contains(const GridPoint& p) const;
    std::int64_t size() const { return static_cast<std::int64_t>(points.size()); }
};

CantorIterate2D iterate(const Alphabet2D& alphabet, std::int64_t k,
                        const Limits& limits = default_limits());

// True iff the closed grid cell [x/N,(x+1)/N] x [y/N,(y+1)/N] meets the
// limiting Cantor set of the alphabet, with the torus seam identified.
// N must be a power of M.
bool cell_meets_drawing(const Alphabet2D& alphabet, std::int64_t n, const GridPoint& p);

// Minkowski sum S + [0,R) x [0,R) mod N. Requires 1 <= R <= N.
GridSet upper_right_neighborhood(const GridSet& s, std::int64_t r);

// One-dimensional digit iterate {sum d_j M^j : d_j in digits}, sorted.
// Plumbing for the 1D transforms and baker operators.
std::vector<std::int64_t> iterate_1d(std::int64_t m, const std::vector<std::int64_t>& digits,
                                     std::int64_t k, const Limits& limits = default_limits());

}  // namespace fup
