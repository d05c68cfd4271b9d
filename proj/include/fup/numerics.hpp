#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "fup/errors.hpp"

namespace fup {

using cd = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Caps on dense objects. Matrices and grids larger than max_matrix_entries
// raise resource_error instead of allocating.
struct Limits {
    std::int64_t max_matrix_entries = 262144;
};

const Limits& default_limits();

// Throws resource_error when rows*cols exceeds the cap.
void check_matrix_entries(std::int64_t rows, std::int64_t cols, const Limits& limits,
                          const char* what);

// e^{2pi i m / n} for m reduced mod n.
cd root_of_unity(std::int64_t m, std::int64_t n);

// Table of e^{2pi i m / n}, m = 0..n-1.
std::vector<cd> root_of_unity_table(std::int64_t n);

// Largest singular value. Power iteration on A^H A with relative tolerance
// 1e-12; falls back to a dense SVD when iteration stalls and min(rows, cols)
// is below 2048. Returns 0 for empty matrices.
double largest_singular_value(const MatrixXcd& a);

// Number of singular values above rank_tol_rel * sigma_max.
Eigen::Index numerical_rank(const MatrixXcd& a, double rank_tol_rel = 1e-9);

// Orthonormal basis of the numerical kernel (right singular vectors whose
// singular value is <= rank_tol_rel * sigma_max). Columns are the basis.
MatrixXcd kernel_basis(const MatrixXcd& a, double rank_tol_rel = 1e-9);

constexpr double kSupportTolRel = 1e-9;  // support threshold, relative to max |f|
constexpr double kRankTolRel = 1e-9;     // numerical-rank threshold, relative to sigma_max
constexpr double kZeroTolRel = 1e-9;     // polynomial grid-vanishing, relative to coeff 1-norm

// Deterministic 64-bit generator for seeded batteries (splitmix64 step).
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    // uniform in [0, 1)
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace fup
