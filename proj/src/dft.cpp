#include "fup/dft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace fup {

GridFunction GridFunction::zeros(std::int64_t n, int dim) {
    if (n < 1) throw usage_error("grid size must be positive");
    if (dim != 1 && dim != 2) throw usage_error("dim must be 1 or 2");
    GridFunction f;
    f.N = n;
    f.dim = dim;
    f.values.assign(static_cast<std::size_t>(dim == 1 ? n : n * n), cd{});
    return f;
}

std::size_t GridFunction::index(std::int64_t x, std::int64_t y) const {
    x %= N;
    if (x < 0) x += N;
    if (dim == 1) return static_cast<std::size_t>(x);
    y %= N;
    if (y < 0) y += N;
    return static_cast<std::size_t>(x * N + y);
}

cd& GridFunction::at(std::int64_t x, std::int64_t y) { return values[index(x, y)]; }
const cd& GridFunction::at(std::int64_t x, std::int64_t y) const { return values[index(x, y)]; }

double GridFunction::sup_norm() const {
    double best = 0.0;
    for (const auto& v : values) best = std::max(best, std::abs(v));
    return best;
}

double GridFunction::l2_norm() const {
    double acc = 0.0;
    for (const auto& v : values) acc += std::norm(v);
    return std::sqrt(acc);
}

bool GridFunction::is_zero() const { return sup_norm() == 0.0; }

namespace {

// One-dimensional unitary transform along a stride; sign -1 forward, +1 inverse.
void transform_axis(std::vector<cd>& data, std::int64_t n, std::size_t offset, std::size_t stride,
                    const std::vector<cd>& table, int sign) {
    std::vector<cd> out(static_cast<std::size_t>(n));
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::int64_t xi = 0; xi < n; ++xi) {
        cd acc{};
        for (std::int64_t x = 0; x < n; ++x) {
            const std::int64_t phase = (xi * x) % n;
            const cd w = sign < 0 ? std::conj(table[static_cast<std::size_t>(phase)])
                                  : table[static_cast<std::size_t>(phase)];
            acc += data[offset + static_cast<std::size_t>(x) * stride] * w;
        }
        out[static_cast<std::size_t>(xi)] = acc * scale;
    }
    for (std::int64_t xi = 0; xi < n; ++xi) {
        data[offset + static_cast<std::size_t>(xi) * stride] = out[static_cast<std::size_t>(xi)];
    }
}

GridFunction transform(const GridFunction& f, int sign) {
    GridFunction out = f;
    const auto table = root_of_unity_table(f.N);
    if (f.dim == 1) {
        transform_axis(out.values, f.N, 0, 1, table, sign);
        return out;
    }
    for (std::int64_t x = 0; x < f.N; ++x) {
        transform_axis(out.values, f.N, static_cast<std::size_t>(x * f.N), 1, table, sign);
    }
    for (std::int64_t y = 0; y < f.N; ++y) {
        transform_axis(out.values, f.N, static_cast<std::size_t>(y), static_cast<std::size_t>(f.N),
                       table, sign);
    }
    return out;
}

}  // namespace

GridFunction dft(const GridFunction& f) { return transform(f, -1); }
GridFunction idft(const GridFunction& f) { return transform(f, +1); }

GridFunction translate(const GridFunction& f, GridPoint shift) {
    GridFunction out = GridFunction::zeros(f.N, f.dim);
    if (f.dim == 1) {
        for (std::int64_t x = 0; x < f.N; ++x) out.at(x + shift.first) = f.at(x);
        return out;
    }
    for (std::int64_t x = 0; x < f.N; ++x) {
        for (std::int64_t y = 0; y < f.N; ++y) {
            out.at(x + shift.first, y + shift.second) = f.at(x, y);
        }
    }
    return out;
}

GridSet support(const GridFunction& f) {
    if (f.dim != 2) throw usage_error("support expects a 2D grid function");
    const double tol = kSupportTolRel * f.sup_norm();
    std::vector<GridPoint> pts;
    for (std::int64_t x = 0; x < f.N; ++x) {
        for (std::int64_t y = 0; y < f.N; ++y) {
            if (std::abs(f.at(x, y)) > tol) pts.push_back({x, y});
        }
    }
    return GridSet::make(f.N, std::move(pts));
}

std::vector<std::int64_t> support_1d(const GridFunction& f) {
    if (f.dim != 1) throw usage_error("support_1d expects a 1D grid function");
    const double tol = kSupportTolRel * f.sup_norm();
    std::vector<std::int64_t> pts;
    for (std::int64_t x = 0; x < f.N; ++x) {
        if (std::abs(f.at(x)) > tol) pts.push_back(x);
    }
    return pts;
}

MatrixXcd dft_submatrix(std::int64_t n, const std::vector<GridPoint>& rows,
                        const std::vector<GridPoint>& cols, const Limits& limits) {
    check_matrix_entries(static_cast<std::int64_t>(rows.size()),
                         static_cast<std::int64_t>(cols.size()), limits, "dft submatrix");
    const auto table = root_of_unity_table(n);
    MatrixXcd out(rows.size(), cols.size());
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::int64_t phase =
                (rows[r].first * cols[c].first + rows[r].second * cols[c].second) % n;
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::conj(table[static_cast<std::size_t>(phase < 0 ? phase + n : phase)]) * scale;
        }
    }
    return out;
}

MatrixXcd dft_submatrix_1d(std::int64_t n, const std::vector<std::int64_t>& rows,
                           const std::vector<std::int64_t>& cols, const Limits& limits) {
    check_matrix_entries(static_cast<std::int64_t>(rows.size()),
                         static_cast<std::int64_t>(cols.size()), limits, "dft submatrix");
    const auto table = root_of_unity_table(n);
    MatrixXcd out(rows.size(), cols.size());
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const std::int64_t phase = rows[r] * cols[c] % n;
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                std::conj(table[static_cast<std::size_t>(phase < 0 ? phase + n : phase)]) * scale;
        }
    }
    return out;
}

double fup_norm(const GridSet& x, const GridSet& y, const Limits& limits) {
    if (x.N != y.N) throw usage_error("fup_norm needs matching grid sizes");
    if (x.points.empty() || y.points.empty()) return 0.0;
    return largest_singular_value(dft_submatrix(x.N, y.points, x.points, limits));
}

double fup_norm_1d(std::int64_t n, const std::vector<std::int64_t>& x,
                   const std::vector<std::int64_t>& y, const Limits& limits) {
    if (x.empty() || y.empty()) return 0.0;
    return largest_singular_value(dft_submatrix_1d(n, y, x, limits));
}

namespace {

double beta_from_norm(double norm, std::int64_t k, std::int64_t m) {
    if (norm <= 0.0) return std::numeric_limits<double>::infinity();
    return -std::log(norm) / (static_cast<double>(k) * std::log(static_cast<double>(m)));
}

}  // namespace

NormSeries beta_series(const Alphabet2D& a, const Alphabet2D& b, std::int64_t k_max,
                       const Limits& limits) {
    if (a.M() != b.M()) throw usage_error("alphabet pair must share the same base");
    if (k_max < 1) throw usage_error("k_max must be at least 1");
    NormSeries series;
    series.M = a.M();
    std::int64_t grid = 1;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        grid *= a.M() * a.M();
        check_matrix_entries(grid, 1, limits, "beta series grid");
        const auto xk = iterate(a, k, limits);
        const auto yk = iterate(b, k, limits);
        const double norm =
            fup_norm(GridSet{xk.N, xk.points}, GridSet{yk.N, yk.points}, limits);
        series.entries.push_back({k, norm, beta_from_norm(norm, k, a.M())});
    }
    return series;
}

NormSeries beta_series_1d(std::int64_t m, const std::vector<std::int64_t>& digits_a,
                          const std::vector<std::int64_t>& digits_b, std::int64_t k_max,
                          const Limits& limits) {
    if (k_max < 1) throw usage_error("k_max must be at least 1");
    NormSeries series;
    series.M = m;
    std::int64_t n = 1;
    for (std::int64_t k = 1; k <= k_max; ++k) {
        n *= m;
        check_matrix_entries(n, n, limits, "beta series grid");
        const auto xk = iterate_1d(m, digits_a, k, limits);
        const auto yk = iterate_1d(m, digits_b, k, limits);
        const double norm = fup_norm_1d(n, xk, yk, limits);
        series.entries.push_back({k, norm, beta_from_norm(norm, k, m)});
    }
    return series;
}

namespace {

std::vector<GridPoint> complement(const GridSet& s) {
    std::vector<GridPoint> out;
    for (std::int64_t x = 0; x < s.N; ++x) {
        for (std::int64_t y = 0; y < s.N; ++y) {
            if (!s.contains({x, y})) out.push_back({x, y});
        }
    }
    return out;
}

}  // namespace

std::int64_t feasible_support_dim(const GridSet& s, const GridSet& t, const Limits& limits) {
    if (s.N != t.N) throw usage_error("feasible_support_dim needs matching grid sizes");
    if (s.points.empty()) return 0;
    const auto rows = complement(t);
    if (rows.empty()) return s.size();
    const auto m = dft_submatrix(s.N, rows, s.points, limits);
    return s.size() - static_cast<std::int64_t>(numerical_rank(m, kRankTolRel));
}

std::int64_t feasible_support_dim_1d(std::int64_t n, const std::vector<std::int64_t>& s,
                                     const std::vector<std::int64_t>& t, const Limits& limits) {
    if (s.empty()) return 0;
    std::vector<std::int64_t> rows;
    for (std::int64_t x = 0; x < n; ++x) {
        if (!std::binary_search(t.begin(), t.end(), x)) rows.push_back(x);
    }
    if (rows.empty()) return static_cast<std::int64_t>(s.size());
    const auto m = dft_submatrix_1d(n, rows, s, limits);
    return static_cast<std::int64_t>(s.size()) - static_cast<std::int64_t>(numerical_rank(m));
}

namespace {

std::int64_t pow_int(std::int64_t base, std::int64_t exp) {
    std::int64_t acc = 1;
    for (std::int64_t i = 0; i < exp; ++i) {
        if (acc > (INT64_MAX / base)) throw resource_error("grid size overflows", INT64_MAX, 0);
        acc *= base;
    }
    return acc;
}

// Integer with base-M digits all equal to d: d * (1 + M + ... + M^{k-1}).
std::int64_t repunit_scale(std::int64_t d, std::int64_t m, std::int64_t k, std::int64_t n) {
    std::int64_t acc = 0;
    for (std::int64_t i = 0; i < k; ++i) acc = (acc * m + d) % n;
    return acc;
}

// Integer rounding of M^k * offset so that the scaled line stays inside the
// open unit cells: component sign decides floor vs ceil-minus-one.
std::int64_t round_offset(const Rat& offset, std::int64_t scale, std::int64_t component,
                          std::int64_t n) {
    const Rat scaled = Rat(scale) * offset;
    std::int64_t rounded;
    if (component > 0) {
        rounded = scaled.floor();
    } else {
        rounded = scaled.is_integer() ? scaled.num - 1 : scaled.floor();
    }
    rounded %= n;
    if (rounded < 0) rounded += n;
    return rounded;
}

void verify_support(const GridFunction& f, const CantorIterate2D& iter, const char* side) {
    const auto supp = support(f);
    for (const auto& p : supp.points) {
        if (!iter.contains(p)) {
            throw construction_failed_error(
                std::string("sharpness witness escapes the ") + side + " iterate at (" +
                    std::to_string(p.first) + ", " + std::to_string(p.second) + ")",
                p);
        }
    }
    if (supp.points.empty()) {
        throw construction_failed_error("sharpness witness vanished identically");
    }
}

}  // namespace

GridFunction sharpness_witness(const Alphabet2D& a, const Alphabet2D& b, std::int64_t k,
                               std::pair<std::int64_t, std::int64_t> v, const Limits& limits) {
    if (a.M() != b.M()) throw usage_error("alphabet pair must share the same base");
    if (k < 1) throw usage_error("iterate index must be at least 1");
    const std::int64_t m = a.M();
    const std::int64_t n = pow_int(m, k);
    check_matrix_entries(n * n, 1, limits, "sharpness witness grid");

    auto [va, vb] = v;
    if (va == 0 && vb == 0) throw usage_error("direction must be nonzero");
    if (std::gcd(va < 0 ? -va : va, vb < 0 ? -vb : vb) != 1) {
        throw usage_error("direction must be a coprime pair");
    }
    // Same sign convention as the line decision, so the offset rounding below
    // matches the direction the offsets were computed for.
    if (!(vb > 0 || (vb == 0 && va > 0))) {
        va = -va;
        vb = -vb;
    }

    GridFunction f;
    if (va == 0 || vb == 0) {
        // Axis case: a translated full row or column with a matching phase.
        const bool vertical_in_x = (va == 0);
        std::int64_t x0 = -1, y0 = -1;
        for (std::int64_t c = 0; c < m && x0 < 0; ++c) {
            if (vertical_in_x ? a.column_full(c) : b.column_full(c)) x0 = c;
        }
        for (std::int64_t r = 0; r < m && y0 < 0; ++r) {
            if (vertical_in_x ? b.row_full(r) : a.row_full(r)) y0 = r;
        }
        if (x0 < 0 || y0 < 0) {
            throw construction_failed_error(vertical_in_x
                                                ? "no full column in A or full row in B"
                                                : "no full row in A or full column in B");
        }
        const std::int64_t xk = repunit_scale(x0, m, k, n);
        const std::int64_t yk = repunit_scale(y0, m, k, n);
        f = GridFunction::zeros(n, 2);
        const double amp = 1.0 / std::sqrt(static_cast<double>(n));
        if (vertical_in_x) {
            for (std::int64_t y = 0; y < n; ++y) {
                f.at(xk, y) = amp * root_of_unity(yk * y, n);
            }
        } else {
            for (std::int64_t x = 0; x < n; ++x) {
                f.at(x, yk) = amp * root_of_unity(xk * x, n);
            }
        }
    } else {
        const auto p = line_in_cantor(a, v);
        if (!p) {
            throw construction_failed_error("X contains no line of direction (" +
                                            std::to_string(va) + ", " + std::to_string(vb) + ")");
        }
        const std::pair<std::int64_t, std::int64_t> vperp{-vb, va};
        const auto q = line_in_cantor(b, vperp);
        if (!q) {
            throw construction_failed_error("Y contains no line of direction (" +
                                            std::to_string(vperp.first) + ", " +
                                            std::to_string(vperp.second) + ")");
        }

        const std::int64_t scale = n;
        const GridPoint pk{round_offset(p->x, scale, va, n), round_offset(p->y, scale, vb, n)};
        // The perpendicular offset comes from line_in_cantor with the
        // sign-normalized direction; round with that same direction.
        const std::int64_t wa = vperp.second > 0 || (vperp.second == 0 && vperp.first > 0)
                                    ? vperp.first
                                    : -vperp.first;
        const std::int64_t wb = vperp.second > 0 || (vperp.second == 0 && vperp.first > 0)
                                    ? vperp.second
                                    : -vperp.second;
        const GridPoint qk{round_offset(q->x, scale, wa, n), round_offset(q->y, scale, wb, n)};

        GridFunction base = GridFunction::zeros(n, 2);
        for (std::int64_t t = 0; t < n; ++t) base.at(t * va, t * vb) = 1.0;
        f = idft(translate(dft(translate(base, pk)), qk));
    }

    verify_support(f, iterate(a, k, limits), "physical");
    verify_support(dft(f), iterate(b, k, limits), "Fourier");
    return f;
}

}  // namespace fup
