#pragma once

#include <cstdint>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/dft.hpp"
#include "fup/numerics.hpp"

namespace fup {

// Cutoff chi on (0,1), sampled on the grid as chi(j/N). The indicator kind
// is the sharp-cutoff ablation (constant one, not smooth).
struct CutoffProfile {
    enum class Kind { SmoothBump, PlateauBump, Indicator };
    Kind kind = Kind::SmoothBump;
    double flat_lo = 0.3;  // plateau-bump only
    double flat_hi = 0.7;

    double value(double x) const;
    std::vector<double> samples(std::int64_t n) const;
    bool smooth() const { return kind != Kind::Indicator; }
    const char* name() const;
};

// Open quantum baker's map on l^2(Z_N^d): the inverse Fourier transform
// composed with per-letter windowed block transforms.
struct BakerOperator {
    std::int64_t M = 2;
    std::int64_t k = 1;
    std::int64_t N = 2;
    int dim = 1;
    std::vector<std::int64_t> digits;  // dim 1
    std::vector<GridPoint> cells;      // dim 2
    CutoffProfile cutoff;
    MatrixXcd matrix;
    double op_norm = 0.0;
};

BakerOperator build_baker_1d(std::int64_t m, const std::vector<std::int64_t>& digits,
                             std::int64_t k, const CutoffProfile& cutoff,
                             const Limits& limits = default_limits());
BakerOperator build_baker_2d(const Alphabet2D& alphabet, std::int64_t k,
                             const CutoffProfile& cutoff, const Limits& limits = default_limits());

// All eigenvalues, magnitude-descending.
std::vector<cd> spectrum(const BakerOperator& b, const Limits& limits = default_limits());

double spectral_radius(const BakerOperator& b, const Limits& limits = default_limits());

struct SpectralGapRow {
    std::int64_t k;
    std::int64_t N;
    double radius;
    double reference;  // M^{-beta_ref}
};

struct SpectralGapResult {
    double beta_ref = 0.0;
    std::int64_t beta_ref_k = 0;
    bool obstruction_warning = false;  // 2D alphabet carries an orthogonal line pair
    std::vector<SpectralGapRow> rows;
};

SpectralGapResult spectral_gap_experiment_1d(std::int64_t m,
                                             const std::vector<std::int64_t>& digits,
                                             std::int64_t k_lo, std::int64_t k_hi,
                                             const CutoffProfile& cutoff,
                                             const Limits& limits = default_limits());
SpectralGapResult spectral_gap_experiment_2d(const Alphabet2D& alphabet, std::int64_t k_lo,
                                             std::int64_t k_hi, const CutoffProfile& cutoff,
                                             const Limits& limits = default_limits());

// Axis-aligned closed torus box; dim-1 uses the x extent only. An empty
// extent (hi <= lo) means the identically-zero profile.
struct TorusRect {
    double x_lo = 0.0, x_hi = 0.0;
    double y_lo = 0.0, y_hi = 0.0;
};

struct PropagationReport {
    double norm = 0.0;        // |phi_N B_N psi_N|_{2->2}
    double separation = 0.0;  // torus distance in the expanded-image condition
    bool hypothesis_met = false;
};

// Smooth bumps on the given rectangles around B; reports the compressed
// operator norm together with the support-separation verdict.
PropagationReport propagation_check(const TorusRect& phi_rect, const TorusRect& psi_rect,
                                    const BakerOperator& b,
                                    const Limits& limits = default_limits());

}  // namespace fup
