#pragma once

// Test-only reference implementations, kept independent of the library code
// paths they check.

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <vector>

#include "fup/cantor.hpp"
#include "fup/lines.hpp"
#include "fup/polymethod.hpp"
#include "fup/rational.hpp"

namespace oracle {

// Largest singular value straight from a dense Jacobi SVD.
inline double sigma_max(const fup::MatrixXcd& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0.0;
    Eigen::JacobiSVD<fup::MatrixXcd> svd(m);
    return svd.singularValues()(0);
}

// Cantor iterate by explicit digit-tuple enumeration (odometer loop).
inline std::set<fup::GridPoint> digit_iterate(const fup::Alphabet2D& a, std::int64_t k) {
    std::set<fup::GridPoint> out;
    const auto letters = a.cells();
    std::vector<std::size_t> odometer(static_cast<std::size_t>(k), 0);
    while (true) {
        std::int64_t x = 0, y = 0, scale = 1;
        for (std::int64_t j = 0; j < k; ++j) {
            x += letters[odometer[static_cast<std::size_t>(j)]].first * scale;
            y += letters[odometer[static_cast<std::size_t>(j)]].second * scale;
            scale *= a.M();
        }
        out.insert({x, y});
        std::size_t pos = 0;
        while (pos < odometer.size()) {
            if (++odometer[pos] < letters.size()) break;
            odometer[pos] = 0;
            ++pos;
        }
        if (pos == odometer.size()) break;
        if (k == 0) break;
    }
    return out;
}

// Closed-box intersection test against the depth-limited Cantor covering,
// pure nested interval arithmetic on the torus lift.
struct Box {
    fup::Rat x_lo, x_hi, y_lo, y_hi;
    bool empty() const { return x_hi < x_lo || y_hi < y_lo; }
};

inline bool box_meets_covering(const fup::Alphabet2D& a, const Box& box, int depth) {
    if (box.empty()) return false;
    if (depth == 0) return true;
    const std::int64_t m = a.M();
    for (const auto& [ca, cb] : a.cells()) {
        Box child;
        child.x_lo = std::max(box.x_lo, fup::Rat(ca, m), std::less<>{});
        child.x_hi = std::min(box.x_hi, fup::Rat(ca + 1, m), std::less<>{});
        child.y_lo = std::max(box.y_lo, fup::Rat(cb, m), std::less<>{});
        child.y_hi = std::min(box.y_hi, fup::Rat(cb + 1, m), std::less<>{});
        if (child.empty()) continue;
        const fup::Rat mm(m);
        child.x_lo = mm * child.x_lo - fup::Rat(ca);
        child.x_hi = mm * child.x_hi - fup::Rat(ca);
        child.y_lo = mm * child.y_lo - fup::Rat(cb);
        child.y_hi = mm * child.y_hi - fup::Rat(cb);
        if (box_meets_covering(a, child, depth - 1)) return true;
    }
    return false;
}

// Whether the closed grid cell at p meets the limiting Cantor set, decided
// by descending `extra` levels past the cell scale (enough for the corner
// states to stabilize).
inline bool cell_meets(const fup::Alphabet2D& a, std::int64_t n, fup::GridPoint p, int extra) {
    int k = 0;
    std::int64_t power = 1;
    while (power < n) {
        power *= a.M();
        ++k;
    }
    std::vector<std::pair<fup::Rat, fup::Rat>> x_lifts{{fup::Rat(p.first, n), fup::Rat(p.first + 1, n)}};
    std::vector<std::pair<fup::Rat, fup::Rat>> y_lifts{{fup::Rat(p.second, n), fup::Rat(p.second + 1, n)}};
    if (p.first == 0) x_lifts.push_back({fup::Rat(1), fup::Rat(1)});
    if (p.first == n - 1) x_lifts.push_back({fup::Rat(0), fup::Rat(0)});
    if (p.second == 0) y_lifts.push_back({fup::Rat(1), fup::Rat(1)});
    if (p.second == n - 1) y_lifts.push_back({fup::Rat(0), fup::Rat(0)});
    for (const auto& [xlo, xhi] : x_lifts) {
        for (const auto& [ylo, yhi] : y_lifts) {
            if (box_meets_covering(a, Box{xlo, xhi, ylo, yhi}, k + extra)) return true;
        }
    }
    return false;
}

// Minkowski sum by the direct triple loop.
inline std::set<fup::GridPoint> minkowski(const fup::GridSet& s, std::int64_t r) {
    std::set<fup::GridPoint> out;
    for (const auto& [x, y] : s.points) {
        for (std::int64_t i = 0; i < r; ++i) {
            for (std::int64_t j = 0; j < r; ++j) {
                out.insert({(x + i) % s.N, (y + j) % s.N});
            }
        }
    }
    return out;
}

// All residue pairs solving ax + by = c mod N.
inline std::set<fup::GridPoint> line_scan(std::int64_t a, std::int64_t b, std::int64_t c,
                                          std::int64_t n) {
    std::set<fup::GridPoint> out;
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < n; ++y) {
            if (((a * x + b * y) % n + n) % n == ((c % n) + n) % n) out.insert({x, y});
        }
    }
    return out;
}

// Full unitary 2D DFT matrix, assembled entry by entry.
inline fup::MatrixXcd full_dft_2d(std::int64_t n) {
    const std::int64_t side = n * n;
    fup::MatrixXcd f(side, side);
    for (std::int64_t xi = 0; xi < n; ++xi) {
        for (std::int64_t eta = 0; eta < n; ++eta) {
            for (std::int64_t x = 0; x < n; ++x) {
                for (std::int64_t y = 0; y < n; ++y) {
                    const double angle = -2.0 * std::numbers::pi *
                                         static_cast<double>((xi * x + eta * y) % n) /
                                         static_cast<double>(n);
                    f(xi * n + eta, x * n + y) =
                        fup::cd(std::cos(angle), std::sin(angle)) / static_cast<double>(n);
                }
            }
        }
    }
    return f;
}

// Kernel dimension by rank-revealing LU (different algorithm from the SVD
// rank used in the library).
inline std::int64_t kernel_dim_lu(const fup::MatrixXcd& m) {
    if (m.rows() == 0) return m.cols();
    Eigen::FullPivLU<fup::MatrixXcd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<std::int64_t>(m.cols() - lu.rank());
}

// Exact containment of the line R*(a,b) + (s,0) in the closed drawing,
// decided by dense t-sampling at points that provably avoid every grid
// crossing. Independent of the crossing-segment implementation.
inline bool line_contained_sampling(const fup::Alphabet2D& alph,
                                    std::pair<std::int64_t, std::int64_t> v, const fup::Rat& s) {
    const std::int64_t m = alph.M();
    const auto [a, b] = v;
    const std::int64_t aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
    const std::int64_t t_count = 128 * m * m * aa * bb;
    for (std::int64_t j = 0; j < t_count; ++j) {
        const fup::Rat t(2 * j + 1, 2 * t_count);
        const fup::Rat x = (s + t * fup::Rat(a)).mod_one();
        const fup::Rat y = (t * fup::Rat(b)).mod_one();
        const std::int64_t cx = (fup::Rat(m) * x).floor();
        const std::int64_t cy = (fup::Rat(m) * y).floor();
        if (!alph.contains(cx, cy)) return false;
    }
    return true;
}

// Sampled version of the admissible-offset cells at resolution 1/(64 M|b|).
inline std::vector<std::int64_t> interval_cells_sampling(const fup::Alphabet2D& alph,
                                                         std::pair<std::int64_t, std::int64_t> v) {
    const std::int64_t m = alph.M();
    const std::int64_t mb = m * (v.second < 0 ? -v.second : v.second);
    std::vector<std::int64_t> out;
    for (std::int64_t g = 0; g < mb; ++g) {
        bool all = true;
        for (std::int64_t i = 0; i < 64 && all; ++i) {
            const fup::Rat s(128 * g + 2 * i + 1, 128 * mb);
            all = line_contained_sampling(alph, v, s);
        }
        if (all) out.push_back(g);
    }
    return out;
}

// Depth-bounded path search over the marked cells and the grid walk; with
// depth at least the node count this matches cycle detection.
inline bool has_deep_path(const fup::IntervalSet& is, std::int64_t m, int depth) {
    std::map<std::pair<std::int64_t, int>, bool> memo;
    std::function<bool(std::int64_t, int)> walk = [&](std::int64_t cell, int remaining) -> bool {
        if (remaining == 0) return true;
        const auto key = std::make_pair(cell, remaining);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        bool ok = false;
        for (std::int64_t d = 0; d < m && !ok; ++d) {
            const std::int64_t next = (m * cell + d) % is.Mb;
            if (is.cell_marked(next)) ok = walk(next, remaining - 1);
        }
        memo[key] = ok;
        return ok;
    };
    for (auto g : is.cells) {
        if (walk(g, depth)) return true;
    }
    for (auto g : is.grid_points) {
        std::int64_t cur = g;
        bool ok = true;
        for (int step = 0; step < depth; ++step) {
            if (!is.grid_marked(cur)) {
                ok = false;
                break;
            }
            cur = m * cur % is.Mb;
        }
        if (ok) return true;
    }
    return false;
}

// Spectral radius with a long double eigensolver.
inline double spectral_radius_ld(const fup::MatrixXcd& m) {
    using MatLD = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;
    MatLD a = m.cast<std::complex<long double>>();
    Eigen::ComplexEigenSolver<MatLD> solver(a, false);
    long double radius = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        radius = std::max(radius, std::abs(solver.eigenvalues()(i)));
    }
    return static_cast<double>(radius);
}

// Cyclotomic zero count with a clean-room long double evaluator.
inline std::int64_t zero_count_ld(const fup::BivarPoly& f, std::int64_t n) {
    long double norm1 = 0;
    for (const auto& [e, a] : f.coeffs()) norm1 += std::abs(std::complex<long double>(a));
    const long double tol = 1e-9L * norm1;
    std::int64_t count = 0;
    const long double two_pi = 2.0L * 3.14159265358979323846264338327950288L;
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t y = 0; y < n; ++y) {
            std::complex<long double> acc{};
            for (const auto& [e, a] : f.coeffs()) {
                const long double angle =
                    two_pi * static_cast<long double>((e.first * x + e.second * y) % n) /
                    static_cast<long double>(n);
                acc += std::complex<long double>(a) *
                       std::complex<long double>(std::cos(angle), std::sin(angle));
            }
            if (std::abs(acc) <= tol) ++count;
        }
    }
    return count;
}

}  // namespace oracle
