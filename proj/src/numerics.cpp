#include "fup/numerics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <numbers>
#include <string>

namespace fup {

const Limits& default_limits() {
    static const Limits limits{};
    return limits;
}

void check_matrix_entries(std::int64_t rows, std::int64_t cols, const Limits& limits,
                          const char* what) {
    const std::int64_t entries = rows * cols;
    if (entries > limits.max_matrix_entries) {
        throw resource_error(std::string(what) + ": " + std::to_string(entries) +
                                 " dense entries exceed cap " +
                                 std::to_string(limits.max_matrix_entries),
                             entries, limits.max_matrix_entries);
    }
}

cd root_of_unity(std::int64_t m, std::int64_t n) {
    m %= n;
    if (m < 0) m += n;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

std::vector<cd> root_of_unity_table(std::int64_t n) {
    std::vector<cd> table(static_cast<std::size_t>(n));
    for (std::int64_t m = 0; m < n; ++m) table[static_cast<std::size_t>(m)] = root_of_unity(m, n);
    return table;
}

namespace {

double svd_sigma_max(const MatrixXcd& a) {
    if (a.rows() <= 16 && a.cols() <= 16) {
        Eigen::JacobiSVD<MatrixXcd> svd(a);
        return svd.singularValues()(0);
    }
    Eigen::BDCSVD<MatrixXcd> svd(a);
    return svd.singularValues()(0);
}

// One power-iteration run on A^H A from a deterministic start; returns the
// Rayleigh estimate and whether successive estimates settled to 1e-12 rel.
std::pair<double, bool> gram_power_iteration(const MatrixXcd& a, std::uint64_t seed) {
    SplitMix64 rng(seed);
    VectorXcd v(a.cols());
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(0.5 + rng.unit(), rng.unit() - 0.5);
    v.normalize();

    double estimate = 0.0;
    constexpr int kMaxIters = 500;
    for (int iter = 0; iter < kMaxIters; ++iter) {
        VectorXcd w = a.adjoint() * (a * v);
        const double norm = w.norm();
        if (norm == 0.0) return {0.0, true};
        const double next = norm;  // Rayleigh quotient of A^H A at unit v
        w /= norm;
        v.swap(w);
        if (iter > 0 && std::abs(next - estimate) <= 1e-12 * std::max(1.0, next)) {
            return {std::sqrt(next), true};
        }
        estimate = next;
    }
    return {std::sqrt(estimate), false};
}

}  // namespace

double largest_singular_value(const MatrixXcd& a) {
    if (a.rows() == 0 || a.cols() == 0) return 0.0;
    auto [first, ok1] = gram_power_iteration(a, 0x5eedULL);
    if (ok1) {
        // Guard against a start vector that missed the top singular space.
        auto [second, ok2] = gram_power_iteration(a, 0xfacadeULL);
        if (ok2 && std::abs(first - second) <= 1e-10 * std::max(1.0, first)) {
            return std::max(first, second);
        }
    }
    if (std::min(a.rows(), a.cols()) < 2048) return svd_sigma_max(a);
    return first;
}

namespace {

Eigen::BDCSVD<MatrixXcd> full_svd(const MatrixXcd& a, unsigned options) {
    Eigen::BDCSVD<MatrixXcd> svd(a, options);
    return svd;
}

}  // namespace

Eigen::Index numerical_rank(const MatrixXcd& a, double rank_tol_rel) {
    if (a.rows() == 0 || a.cols() == 0) return 0;
    auto svd = full_svd(a, 0);
    const auto& sigma = svd.singularValues();
    const double tol = rank_tol_rel * sigma(0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol) ++rank;
    }
    return rank;
}

MatrixXcd kernel_basis(const MatrixXcd& a, double rank_tol_rel) {
    if (a.cols() == 0) return MatrixXcd(0, 0);
    if (a.rows() == 0) return MatrixXcd::Identity(a.cols(), a.cols());
    auto svd = full_svd(a, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double tol = rank_tol_rel * sigma(0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol) ++rank;
    }
    return svd.matrixV().rightCols(a.cols() - rank);
}

}  // namespace fup
