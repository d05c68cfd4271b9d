#include "fup/baker.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "fup/lines.hpp"

namespace fup {

namespace {

double bump01(double t) {
    if (t <= 0.0 || t >= 1.0) return 0.0;
    const double u = 2.0 * t - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

double ramp(double t) {
    // C-infinity ramp: 0 at 0, 1 at 1.
    auto psi = [](double s) { return s > 0.0 ? std::exp(-1.0 / s) : 0.0; };
    const double a = psi(t), b = psi(1.0 - t);
    return a / (a + b);
}

}  // namespace

double CutoffProfile::value(double x) const {
    switch (kind) {
        case Kind::SmoothBump:
            return bump01(x);
        case Kind::PlateauBump:
            if (x <= 0.0 || x >= 1.0) return 0.0;
            if (x < flat_lo) return ramp(x / flat_lo);
            if (x > flat_hi) return ramp((1.0 - x) / (1.0 - flat_hi));
            return 1.0;
        case Kind::Indicator:
            return 1.0;
    }
    return 0.0;
}

std::vector<double> CutoffProfile::samples(std::int64_t n) const {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (std::int64_t j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] =
            value(static_cast<double>(j) / static_cast<double>(n));
    }
    return out;
}

const char* CutoffProfile::name() const {
    switch (kind) {
        case Kind::SmoothBump:
            return "smooth-bump";
        case Kind::PlateauBump:
            return "plateau-bump";
        case Kind::Indicator:
            return "indicator";
    }
    return "?";
}

namespace {

std::int64_t pow_int(std::int64_t base, std::int64_t exp) {
    std::int64_t acc = 1;
    for (std::int64_t i = 0; i < exp; ++i) acc *= base;
    return acc;
}

// chi F_L chi on l^2(Z_L).
MatrixXcd windowed_block_1d(std::int64_t l, const std::vector<double>& chi) {
    const auto table = root_of_unity_table(l);
    const double scale = 1.0 / std::sqrt(static_cast<double>(l));
    MatrixXcd c(l, l);
    for (std::int64_t xi = 0; xi < l; ++xi) {
        for (std::int64_t x = 0; x < l; ++x) {
            c(xi, x) = chi[static_cast<std::size_t>(xi)] *
                       std::conj(table[static_cast<std::size_t>(xi * x % l)]) * scale *
                       chi[static_cast<std::size_t>(x)];
        }
    }
    return c;
}

}  // namespace

BakerOperator build_baker_1d(std::int64_t m, const std::vector<std::int64_t>& digits,
                             std::int64_t k, const CutoffProfile& cutoff, const Limits& limits) {
    if (m < 2) throw usage_error("base must be at least 2");
    if (k < 1) throw usage_error("iterate index must be at least 1");
    std::set<std::int64_t> dedup;
    for (auto d : digits) dedup.insert((d % m + m) % m);
    if (dedup.empty() || static_cast<std::int64_t>(dedup.size()) >= m) {
        throw usage_error("digit alphabet must be a proper nonempty subset of Z_M");
    }

    const std::int64_t n = pow_int(m, k);
    check_matrix_entries(n, n, limits, "baker operator");
    const std::int64_t l = n / m;

    const auto chi = cutoff.samples(l);
    const MatrixXcd block = windowed_block_1d(l, chi);

    MatrixXcd blocks = MatrixXcd::Zero(n, n);
    for (auto a : dedup) {
        blocks.block(a * l, a * l, l, l) = block;
    }

    const auto table = root_of_unity_table(n);
    MatrixXcd inv_dft(n, n);
    const double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::int64_t x = 0; x < n; ++x) {
        for (std::int64_t xi = 0; xi < n; ++xi) {
            inv_dft(x, xi) = table[static_cast<std::size_t>(x * xi % n)] * scale;
        }
    }

    BakerOperator b;
    b.M = m;
    b.k = k;
    b.N = n;
    b.dim = 1;
    b.digits.assign(dedup.begin(), dedup.end());
    b.cutoff = cutoff;
    b.matrix = inv_dft * blocks;
    b.op_norm = largest_singular_value(b.matrix);
    if (b.op_norm > 1.0 + 1e-9) {
        throw theorem_violation_error("baker operator norm exceeds one");
    }
    return b;
}

BakerOperator build_baker_2d(const Alphabet2D& alphabet, std::int64_t k,
                             const CutoffProfile& cutoff, const Limits& limits) {
    if (k < 1) throw usage_error("iterate index must be at least 1");
    const std::int64_t m = alphabet.M();
    const std::int64_t n = pow_int(m, k);
    const std::int64_t side = n * n;
    check_matrix_entries(side, side, limits, "baker operator");
    const std::int64_t l = n / m;

    const auto chi = cutoff.samples(l);
    const auto table_l = root_of_unity_table(l);
    const double scale_l = 1.0 / static_cast<double>(l);

    auto index = [&](std::int64_t x, std::int64_t y) { return x * n + y; };

    // Tensor cutoff and per-letter block transforms, laid out in the global
    // row-major indexing.
    MatrixXcd blocks = MatrixXcd::Zero(side, side);
    for (const auto& [a1, a2] : alphabet.cells()) {
        for (std::int64_t x1 = 0; x1 < l; ++x1) {
            for (std::int64_t x2 = 0; x2 < l; ++x2) {
                const std::int64_t row = index(a1 * l + x1, a2 * l + x2);
                const double wrow = chi[static_cast<std::size_t>(x1)] *
                                    chi[static_cast<std::size_t>(x2)];
                if (wrow == 0.0) continue;
                for (std::int64_t y1 = 0; y1 < l; ++y1) {
                    for (std::int64_t y2 = 0; y2 < l; ++y2) {
                        const double wcol = chi[static_cast<std::size_t>(y1)] *
                                            chi[static_cast<std::size_t>(y2)];
                        if (wcol == 0.0) continue;
                        const std::int64_t phase = (x1 * y1 + x2 * y2) % l;
                        blocks(row, index(a1 * l + y1, a2 * l + y2)) =
                            wrow * std::conj(table_l[static_cast<std::size_t>(phase)]) * scale_l *
                            wcol;
                    }
                }
            }
        }
    }

    const auto table_n = root_of_unity_table(n);
    MatrixXcd inv_dft(side, side);
    const double scale_n = 1.0 / static_cast<double>(n);
    for (std::int64_t x1 = 0; x1 < n; ++x1) {
        for (std::int64_t x2 = 0; x2 < n; ++x2) {
            for (std::int64_t xi1 = 0; xi1 < n; ++xi1) {
                for (std::int64_t xi2 = 0; xi2 < n; ++xi2) {
                    const std::int64_t phase = (x1 * xi1 + x2 * xi2) % n;
                    inv_dft(index(x1, x2), index(xi1, xi2)) =
                        table_n[static_cast<std::size_t>(phase)] * scale_n;
                }
            }
        }
    }

    BakerOperator b;
    b.M = m;
    b.k = k;
    b.N = n;
    b.dim = 2;
    b.cells = alphabet.cells();
    b.cutoff = cutoff;
    b.matrix = inv_dft * blocks;
    b.op_norm = largest_singular_value(b.matrix);
    if (b.op_norm > 1.0 + 1e-9) {
        throw theorem_violation_error("baker operator norm exceeds one");
    }
    return b;
}

std::vector<cd> spectrum(const BakerOperator& b, const Limits& limits) {
    check_matrix_entries(b.matrix.rows(), b.matrix.cols(), limits, "baker spectrum");
    Eigen::ComplexEigenSolver<MatrixXcd> solver(b.matrix, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw theorem_violation_error("eigenvalue iteration failed to converge");
    }
    std::vector<cd> eigenvalues(solver.eigenvalues().data(),
                                solver.eigenvalues().data() + solver.eigenvalues().size());
    std::sort(eigenvalues.begin(), eigenvalues.end(), [](const cd& l, const cd& r) {
        const double al = std::abs(l), ar = std::abs(r);
        if (al != ar) return al > ar;
        if (l.real() != r.real()) return l.real() > r.real();
        return l.imag() > r.imag();
    });
    return eigenvalues;
}

double spectral_radius(const BakerOperator& b, const Limits& limits) {
    const auto eig = spectrum(b, limits);
    return eig.empty() ? 0.0 : std::abs(eig.front());
}

namespace {

SpectralGapResult gap_experiment(std::int64_t m, std::vector<std::int64_t> digits,
                                 const Alphabet2D* alphabet, std::int64_t k_lo, std::int64_t k_hi,
                                 const CutoffProfile& cutoff, const Limits& limits) {
    if (k_lo < 1 || k_hi < k_lo) throw usage_error("bad iterate range");
    if (alphabet == nullptr) {
        std::set<std::int64_t> dedup;
        for (auto d : digits) dedup.insert((d % m + m) % m);
        digits.assign(dedup.begin(), dedup.end());
    }
    SpectralGapResult out;

    if (alphabet != nullptr) {
        out.obstruction_warning = orthogonal_pair_condition(*alphabet, *alphabet).obstructed;
    }

    // Reference exponent from the norm series at the largest iterate the cap
    // admits.
    const std::int64_t letters =
        alphabet != nullptr ? alphabet->cell_count() : static_cast<std::int64_t>(digits.size());
    std::int64_t kb = 0;
    {
        std::int64_t grid = 1, sub = 1;
        while (kb < 12) {
            const std::int64_t next_grid = grid * m * m;
            const std::int64_t next_sub = sub * letters * letters;
            if (next_grid > limits.max_matrix_entries || next_sub > limits.max_matrix_entries) {
                break;
            }
            grid = next_grid;
            sub = next_sub;
            ++kb;
        }
    }
    if (kb < 1) throw resource_error("beta reference needs at least one iterate", 0,
                                     limits.max_matrix_entries);
    const NormSeries series = alphabet != nullptr
                                  ? beta_series(*alphabet, *alphabet, kb, limits)
                                  : beta_series_1d(m, digits, digits, kb, limits);
    out.beta_ref = series.entries.back().beta;
    out.beta_ref_k = kb;

    for (std::int64_t k = k_lo; k <= k_hi; ++k) {
        const BakerOperator b = alphabet != nullptr
                                    ? build_baker_2d(*alphabet, k, cutoff, limits)
                                    : build_baker_1d(m, digits, k, cutoff, limits);
        out.rows.push_back({k, b.N, spectral_radius(b, limits),
                            std::pow(static_cast<double>(m), -out.beta_ref)});
    }
    return out;
}

}  // namespace

SpectralGapResult spectral_gap_experiment_1d(std::int64_t m,
                                             const std::vector<std::int64_t>& digits,
                                             std::int64_t k_lo, std::int64_t k_hi,
                                             const CutoffProfile& cutoff, const Limits& limits) {
    return gap_experiment(m, digits, nullptr, k_lo, k_hi, cutoff, limits);
}

SpectralGapResult spectral_gap_experiment_2d(const Alphabet2D& alphabet, std::int64_t k_lo,
                                             std::int64_t k_hi, const CutoffProfile& cutoff,
                                             const Limits& limits) {
    return gap_experiment(alphabet.M(), {}, &alphabet, k_lo, k_hi, cutoff, limits);
}

namespace {

double rect_profile(double x, double lo, double hi) {
    if (hi <= lo) return 0.0;
    return bump01((x - lo) / (hi - lo));
}

// Closed sub-intervals of [0,1] (not wrapped); distance computed on the torus.
struct Interval {
    double lo, hi;
};

double torus_point_gap(double a, double b) {
    double d = std::abs(a - b);
    d -= std::floor(d);
    return std::min(d, 1.0 - d);
}

double interval_distance(const Interval& p, const Interval& q) {
    // overlap?
    if (p.lo <= q.hi && q.lo <= p.hi) return 0.0;
    double best = std::min(std::min(torus_point_gap(p.lo, q.hi), torus_point_gap(p.hi, q.lo)),
                           std::min(torus_point_gap(p.lo, q.lo), torus_point_gap(p.hi, q.hi)));
    return best;
}

}  // namespace

PropagationReport propagation_check(const TorusRect& phi_rect, const TorusRect& psi_rect,
                                    const BakerOperator& b, const Limits& limits) {
    check_matrix_entries(b.matrix.rows(), b.matrix.cols(), limits, "propagation product");
    const std::int64_t n = b.N;

    // Diagonal multipliers from the rectangle bumps.
    Eigen::VectorXd phi(b.matrix.rows()), psi(b.matrix.rows());
    if (b.dim == 1) {
        for (std::int64_t j = 0; j < n; ++j) {
            const double x = static_cast<double>(j) / static_cast<double>(n);
            phi(j) = rect_profile(x, phi_rect.x_lo, phi_rect.x_hi);
            psi(j) = rect_profile(x, psi_rect.x_lo, psi_rect.x_hi);
        }
    } else {
        for (std::int64_t j1 = 0; j1 < n; ++j1) {
            for (std::int64_t j2 = 0; j2 < n; ++j2) {
                const double x = static_cast<double>(j1) / static_cast<double>(n);
                const double y = static_cast<double>(j2) / static_cast<double>(n);
                phi(j1 * n + j2) = rect_profile(x, phi_rect.x_lo, phi_rect.x_hi) *
                                   rect_profile(y, phi_rect.y_lo, phi_rect.y_hi);
                psi(j1 * n + j2) = rect_profile(x, psi_rect.x_lo, psi_rect.x_hi) *
                                   rect_profile(y, psi_rect.y_lo, psi_rect.y_hi);
            }
        }
    }

    PropagationReport report;
    report.norm = largest_singular_value(phi.asDiagonal() * b.matrix * psi.asDiagonal());

    // Separation of the expanded image of supp psi (per letter branch) from
    // supp phi, coordinate-wise on the torus.
    const double m = static_cast<double>(b.M);
    auto branch_images = [&](double lo, double hi, std::int64_t a) -> std::optional<Interval> {
        const double cell_lo = static_cast<double>(a) / m;
        const double cell_hi = (static_cast<double>(a) + 1.0) / m;
        const double ilo = std::max(lo, cell_lo), ihi = std::min(hi, cell_hi);
        if (ihi <= ilo) return std::nullopt;
        return Interval{ilo * m - static_cast<double>(a), ihi * m - static_cast<double>(a)};
    };

    double separation = 0.5;
    bool any_branch = false;
    if (phi_rect.x_hi <= phi_rect.x_lo || psi_rect.x_hi <= psi_rect.x_lo ||
        (b.dim == 2 && (phi_rect.y_hi <= phi_rect.y_lo || psi_rect.y_hi <= psi_rect.y_lo))) {
        // One profile is identically zero: the condition holds vacuously.
        report.separation = 0.5;
        report.hypothesis_met = true;
        return report;
    }
    if (b.dim == 1) {
        const Interval phi_iv{phi_rect.x_lo, phi_rect.x_hi};
        for (auto a : b.digits) {
            if (auto img = branch_images(psi_rect.x_lo, psi_rect.x_hi, a)) {
                any_branch = true;
                separation = std::min(separation, interval_distance(*img, phi_iv));
            }
        }
    } else {
        const Interval phi_x{phi_rect.x_lo, phi_rect.x_hi};
        const Interval phi_y{phi_rect.y_lo, phi_rect.y_hi};
        for (const auto& [a1, a2] : b.cells) {
            const auto ix = branch_images(psi_rect.x_lo, psi_rect.x_hi, a1);
            const auto iy = branch_images(psi_rect.y_lo, psi_rect.y_hi, a2);
            if (ix && iy) {
                any_branch = true;
                separation = std::min(
                    separation, std::max(interval_distance(*ix, phi_x),
                                         interval_distance(*iy, phi_y)));
            }
        }
    }
    report.separation = any_branch ? separation : 0.5;
    report.hypothesis_met = report.separation > 0.0;
    return report;
}

}  // namespace fup
