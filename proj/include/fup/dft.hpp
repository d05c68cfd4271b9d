#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/lines.hpp"
#include "fup/numerics.hpp"

namespace fup {

// Complex function on Z_N (dim 1) or Z_N^2 (dim 2). Two-dimensional values
// are stored row-major, x outer and y inner.
struct GridFunction {
    std::int64_t N = 1;
    int dim = 2;
    std::vector<cd> values;

    static GridFunction zeros(std::int64_t n, int dim);
    std::size_t index(std::int64_t x, std::int64_t y = 0) const;
    cd& at(std::int64_t x, std::int64_t y = 0);
    const cd& at(std::int64_t x, std::int64_t y = 0) const;

    double sup_norm() const;
    double l2_norm() const;
    bool is_zero() const;
};

// Unitary discrete Fourier transform and its inverse.
GridFunction dft(const GridFunction& f);
GridFunction idft(const GridFunction& f);

// f(. - shift), indices mod N.
GridFunction translate(const GridFunction& f, GridPoint shift);

// Support above kSupportTolRel * sup|f|.
GridSet support(const GridFunction& f);
std::vector<std::int64_t> support_1d(const GridFunction& f);

// Submatrix of the unitary DFT matrix with the given frequency rows and
// space columns.
MatrixXcd dft_submatrix(std::int64_t n, const std::vector<GridPoint>& rows,
                        const std::vector<GridPoint>& cols,
                        const Limits& limits = default_limits());
MatrixXcd dft_submatrix_1d(std::int64_t n, const std::vector<std::int64_t>& rows,
                           const std::vector<std::int64_t>& cols,
                           const Limits& limits = default_limits());

// Largest singular value of 1_Y F 1_X; 0 when either set is empty.
double fup_norm(const GridSet& x, const GridSet& y, const Limits& limits = default_limits());
double fup_norm_1d(std::int64_t n, const std::vector<std::int64_t>& x,
                   const std::vector<std::int64_t>& y, const Limits& limits = default_limits());

struct NormSeries {
    std::int64_t M = 2;
    struct Entry {
        std::int64_t k;
        double norm;
        double beta;  // -log_M(norm) / k
    };
    std::vector<Entry> entries;
};

NormSeries beta_series(const Alphabet2D& a, const Alphabet2D& b, std::int64_t k_max,
                       const Limits& limits = default_limits());
NormSeries beta_series_1d(std::int64_t m, const std::vector<std::int64_t>& digits_a,
                          const std::vector<std::int64_t>& digits_b, std::int64_t k_max,
                          const Limits& limits = default_limits());

// Dimension of {f : supp f in S, f-hat vanishing off T}.
std::int64_t feasible_support_dim(const GridSet& s, const GridSet& t,
                                  const Limits& limits = default_limits());
std::int64_t feasible_support_dim_1d(std::int64_t n, const std::vector<std::int64_t>& s,
                                     const std::vector<std::int64_t>& t,
                                     const Limits& limits = default_limits());

// Nonzero f with supp f inside the k-th iterate of A and supp f-hat inside
// the k-th iterate of B, built from a pair of orthogonal lines in direction
// v and v-perp. Throws construction_failed_error when the line condition
// fails or a support check trips.
GridFunction sharpness_witness(const Alphabet2D& a, const Alphabet2D& b, std::int64_t k,
                               std::pair<std::int64_t, std::int64_t> v,
                               const Limits& limits = default_limits());

}  // namespace fup
