#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/dft.hpp"
#include "fup/lines.hpp"
#include "fup/numerics.hpp"

namespace fup {

// Bivariate trigonometric polynomial sum a_{kl} z^k w^l with nonnegative
// integer exponents. Coefficients keyed by (k, l), exact zeros pruned.
class BivarPoly {
  public:
    using ExponentPair = std::pair<std::int64_t, std::int64_t>;

    BivarPoly() = default;
    explicit BivarPoly(std::map<ExponentPair, cd> coeffs);

    static BivarPoly constant(cd value);
    static BivarPoly monomial(std::int64_t k, std::int64_t l, cd value);

    const std::map<ExponentPair, cd>& coeffs() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    // max over nonzero terms of max(k, l)
    std::int64_t degree() const;
    // max over nonzero terms of k + l
    std::int64_t total_degree() const;

    double coeff_l1_norm() const;
    double coeff_l2_norm() const;

    // Rank of the sublattice of Z^2 generated by exponent differences, and
    // whether that lattice is all of Z^2.
    int lattice_rank() const;
    bool lattice_is_full() const;

    cd eval(cd z, cd w) const;
    // Value at the grid point (x, y) of Z_N^2 through exact root tables.
    cd eval_grid(std::int64_t x, std::int64_t y, std::int64_t n,
                 const std::vector<cd>& table) const;

    void scale(cd factor);

  private:
    std::map<ExponentPair, cd> coeffs_;
};

struct ZeroSetReport {
    std::int64_t N = 1;
    GridSet zeros;
    std::int64_t count = 0;
};

// Grid points where |F| <= kZeroTolRel * |coeffs|_1, with values near the
// threshold re-checked in quadruple precision.
ZeroSetReport eval_zero_set(const BivarPoly& f, std::int64_t n);

// Nonzero polynomial of minimal box degree vanishing on S, coefficient
// 2-norm one. The degree never exceeds floor(sqrt(|S|)).
BivarPoly min_vanishing_poly(const GridSet& s);

struct LineCutResult {
    std::optional<Line> line;
    std::string note;  // set when empty
};

// Detects binomials z^a w^b - zeta with zeta an N-th root of unity and
// returns the grid line they cut out.
LineCutResult cuts_out_line(const BivarPoly& f, std::int64_t n);

struct SeparationResult {
    BivarPoly f_star;
    Line line;
};

// Polynomial with exponents in [0, floor(200 sqrt|S|))^2 vanishing on all of
// S except a nonempty remainder contained in one irreducible line.
SeparationResult separating_poly(const GridSet& s);

// h with h-hat equal to the coefficient array of F; exponents must lie in
// [0, N)^2.
GridFunction multiplier_from_poly(const BivarPoly& f, std::int64_t n);

struct LocalizationResult {
    Line line;
    GridFunction g;
    BivarPoly f_star;
};

// Multiplies f by a separating multiplier, producing a nonzero g supported
// on supp f intersected with one line, with Fourier support in the
// upper-right R-neighborhood of supp f-hat.
LocalizationResult localize_to_line(const GridFunction& f);

// 1D multiplier vanishing on S minus {keep}, nonzero at keep, with Fourier
// coefficients supported in [0, |S| - 1].
GridFunction one_dim_annihilator(std::int64_t n, const std::vector<std::int64_t>& s,
                                 std::int64_t keep);

// The seven sign/square transforms whose zero sets jointly cover every grid
// zero of a rational-coefficient F with full exponent lattice.
std::vector<BivarPoly> seven_polynomials(const BivarPoly& f);

struct BezoutReport {
    std::int64_t count = 0;
    std::int64_t bound = 0;
    bool ok = false;
    bool conclusive = true;
    std::string note;
};

// Compares the grid intersection count |Z_N(F) cap Z_N(G)| (a lower bound on
// the full intersection over C^2) against the total-degree product.
BezoutReport bezout_intersection(const BivarPoly& f, const BivarPoly& g, std::int64_t n);

// The binomial cutting out a given irreducible line.
BivarPoly line_poly(const Line& line);

}  // namespace fup
