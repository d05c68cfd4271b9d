#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fup/cantor.hpp"
#include "fup/lines.hpp"
#include "oracles.hpp"

using fup::Alphabet2D;
using fup::GridPoint;
using fup::Line;

namespace {

Alphabet2D diag3() { return Alphabet2D(3, {{0, 0}, {1, 1}, {2, 2}}); }
Alphabet2D antidiag3() { return Alphabet2D(3, {{0, 2}, {1, 1}, {2, 0}}); }
Alphabet2D column3() { return Alphabet2D(3, {{0, 0}, {0, 1}, {0, 2}}); }
Alphabet2D row3() { return Alphabet2D(3, {{0, 0}, {1, 0}, {2, 0}}); }

}  // namespace

TEST_CASE("canonicalize_line basics") {
    const Line horizontal = fup::canonicalize_line(0, 1, 5, 9);
    CHECK(horizontal.a == 0);
    CHECK(horizontal.b == 1);
    CHECK(horizontal.c == 5);
    CHECK(horizontal.size == 1);

    CHECK_THROWS_AS(fup::canonicalize_line(3, 3, 0, 9), fup::not_irreducible_error);
    CHECK_THROWS_AS(fup::canonicalize_line(0, 0, 1, 7), fup::not_irreducible_error);

    const Line skew = fup::canonicalize_line(7, 1, 2, 9);
    CHECK(skew.a == -2);
    CHECK(skew.b == 1);
    CHECK(skew.size == 2);
    CHECK(oracle::line_scan(7, 1, 2, 9) == oracle::line_scan(skew.a, skew.b, skew.c, 9));
}

TEST_CASE("canonicalize_line finds the minimal representative") {
    // 2x - 3y = 2 mod 7 rescales to the smaller (1, 2, 1).
    const Line l = fup::canonicalize_line(2, -3, 2, 7);
    CHECK(l.size == 2);
    CHECK(oracle::line_scan(2, -3, 2, 7) == oracle::line_scan(l.a, l.b, l.c, 7));
}

TEST_CASE("line_points examples and exhaustive comparison") {
    const Line l1 = fup::canonicalize_line(0, 1, 0, 5);
    CHECK(fup::line_points(l1).points ==
          std::vector<GridPoint>{{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}});

    const Line l2 = fup::canonicalize_line(1, 1, 0, 4);
    const auto p2 = fup::line_points(l2);
    CHECK(p2.points.size() == 4);
    for (const auto& [x, y] : p2.points) CHECK((x + y) % 4 == 0);

    const Line l3 = fup::canonicalize_line(2, 3, 1, 7);
    const auto got = fup::line_points(l3);
    const auto want = oracle::line_scan(2, 3, 1, 7);
    CHECK(std::set<GridPoint>(got.points.begin(), got.points.end()) == want);
    CHECK(got.points.size() == 7);
}

TEST_CASE("every irreducible line has exactly N points") {
    fup::SplitMix64 rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        const std::int64_t n = 2 + static_cast<std::int64_t>(rng.below(14));
        const std::int64_t a = static_cast<std::int64_t>(rng.below(2 * n)) - n;
        const std::int64_t b = static_cast<std::int64_t>(rng.below(2 * n)) - n;
        const std::int64_t c = static_cast<std::int64_t>(rng.below(n));
        Line line;
        try {
            line = fup::canonicalize_line(a, b, c, n);
        } catch (const fup::not_irreducible_error&) {
            continue;
        }
        const auto pts = fup::line_points(line);
        CHECK(pts.points.size() == static_cast<std::size_t>(n));
        CHECK(std::set<GridPoint>(pts.points.begin(), pts.points.end()) ==
              oracle::line_scan(a, b, c, n));
        CHECK(line.size <= n / 2 + 1);
    }
}

TEST_CASE("interval_set delegates axis directions") {
    const auto is = fup::interval_set(column3(), {0, 1});
    CHECK(is.Mb == 3);
    CHECK(is.cells == std::vector<std::int64_t>{0});
    // grid offsets 0 and 1 bound the admissible column strip
    CHECK(is.grid_marked(0));
    CHECK(is.grid_marked(1));
    CHECK_FALSE(is.grid_marked(2));

    CHECK_THROWS_AS(fup::interval_set(column3(), {1, 0}), fup::horizontal_direction_error);
}

TEST_CASE("interval_set of the diagonal marks only the zero offset") {
    const auto is = fup::interval_set(diag3(), {1, 1});
    CHECK(is.Mb == 3);
    CHECK(is.cells.empty());
    CHECK(is.grid_points == std::vector<std::int64_t>{0});
}

TEST_CASE("interval_set full cells match the dense sampling oracle") {
    const std::vector<Alphabet2D> alphabets = {
        Alphabet2D(3, {{0, 0}, {1, 1}, {2, 2}, {0, 1}, {1, 2}}),
        Alphabet2D(3, {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {2, 2}, {1, 0}}),
        Alphabet2D(2, {{0, 0}, {1, 1}, {1, 0}}),
        Alphabet2D(3, {{0, 0}, {1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {0, 2}, {1, 2}}),
    };
    const std::vector<std::pair<std::int64_t, std::int64_t>> dirs = {{1, 1}, {1, 2}, {-1, 1},
                                                                     {2, 1}};
    for (const auto& a : alphabets) {
        for (const auto& v : dirs) {
            if (std::max(std::abs(v.first), std::abs(v.second)) > a.M()) continue;
            const auto is = fup::interval_set(a, v);
            CHECK(is.cells == oracle::interval_cells_sampling(a, v));
        }
    }
}

TEST_CASE("line_in_cantor examples") {
    // Full column: vertical line at offset 0.
    const auto col = fup::line_in_cantor(column3(), {0, 1});
    REQUIRE(col.has_value());
    CHECK(col->x.num == 0);

    // Full row: horizontal line.
    const auto row = fup::line_in_cantor(row3(), {1, 0});
    REQUIRE(row.has_value());
    CHECK(row->y.num == 0);

    // Diagonal alphabet contains the diagonal through the origin.
    const auto d = fup::line_in_cantor(diag3(), {1, 1});
    REQUIRE(d.has_value());
    CHECK(d->x.num == 0);
    CHECK(d->y.num == 0);

    // Antidiagonal alphabet contains the antidiagonal.
    CHECK(fup::line_in_cantor(antidiag3(), {-1, 1}).has_value());

    // Singleton alphabet contains no line at all.
    const Alphabet2D singleton(3, {{0, 0}});
    for (const auto& v : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {0, 1}, {1, 0}, {1, 1}, {-1, 1}, {1, 2}}) {
        CHECK_FALSE(fup::line_in_cantor(singleton, v).has_value());
    }
}

TEST_CASE("line_in_cantor rejects directions beyond the base") {
    const Alphabet2D a(3, {{0, 0}, {1, 1}, {2, 2}, {0, 2}});
    CHECK_FALSE(fup::line_in_cantor(a, {4, 1}).has_value());
    CHECK_FALSE(fup::line_in_cantor(a, {1, 4}).has_value());
    CHECK_FALSE(fup::line_in_cantor(a, {5, 4}).has_value());
}

TEST_CASE("line_in_cantor matches the depth-20 orbit search") {
    // All-but-one-cell alphabet plus seeded alphabets, all coprime directions.
    std::vector<Alphabet2D> alphabets;
    {
        std::vector<GridPoint> cells;
        for (std::int64_t x = 0; x < 3; ++x) {
            for (std::int64_t y = 0; y < 3; ++y) {
                if (x != 1 || y != 1) cells.push_back({x, y});
            }
        }
        alphabets.push_back(Alphabet2D(3, cells));
    }
    fup::SplitMix64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const std::int64_t m = 2 + static_cast<std::int64_t>(rng.below(3));
        std::vector<GridPoint> cells;
        const std::int64_t count = 1 + static_cast<std::int64_t>(rng.below(5));
        for (std::int64_t i = 0; i < count; ++i) {
            cells.push_back({static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m))),
                             static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(m)))});
        }
        if (static_cast<std::int64_t>(std::set<GridPoint>(cells.begin(), cells.end()).size()) >=
            m * m) {
            continue;
        }
        alphabets.push_back(Alphabet2D(m, cells));
    }

    for (const auto& a : alphabets) {
        for (std::int64_t da = -a.M(); da <= a.M(); ++da) {
            for (std::int64_t db = 0; db <= a.M(); ++db) {
                if (!(db > 0 || (db == 0 && da > 0))) continue;
                if (std::gcd(std::abs(da), db) != 1) continue;
                const auto direct = fup::line_in_cantor(a, {da, db});
                if (db == 0 || da == 0) {
                    // Axis directions reduce to full rows/columns; the graph
                    // search does not apply.
                    bool full = false;
                    for (std::int64_t i = 0; i < a.M(); ++i) {
                        full = full || (db == 0 ? a.row_full(i) : a.column_full(i));
                    }
                    CHECK(direct.has_value() == full);
                    continue;
                }
                const auto is = fup::interval_set(a, {da, db});
                CHECK(direct.has_value() == oracle::has_deep_path(is, a.M(), 20));
            }
        }
    }
}

TEST_CASE("line offsets scale into the iterates") {
    // When a line exists, the rounded offsets keep the discrete line inside
    // the discretized set at every small scale.
    const std::vector<Alphabet2D> alphabets = {diag3(), antidiag3(), column3(),
                                               Alphabet2D(3, {{0, 0}, {1, 2}, {2, 1}})};
    for (const auto& a : alphabets) {
        for (std::int64_t da = -3; da <= 3; ++da) {
            for (std::int64_t db = 0; db <= 3; ++db) {
                if (!(db > 0 || (db == 0 && da > 0))) continue;
                if (std::gcd(std::abs(da), db) != 1) continue;
                const auto offset = fup::line_in_cantor(a, {da, db});
                if (!offset) continue;
                for (std::int64_t k = 1; k <= 4; ++k) {
                    std::int64_t n = 1;
                    for (std::int64_t j = 0; j < k; ++j) n *= a.M();
                    // round the scaled offset per component sign
                    auto round_component = [&](const fup::Rat& value, std::int64_t component) {
                        const fup::Rat scaled = fup::Rat(n) * value;
                        std::int64_t r = component > 0
                                             ? scaled.floor()
                                             : (scaled.is_integer() ? scaled.num - 1
                                                                    : scaled.floor());
                        r %= n;
                        return r < 0 ? r + n : r;
                    };
                    const std::int64_t px = round_component(offset->x, da != 0 ? da : 1);
                    const std::int64_t py = round_component(offset->y, db != 0 ? db : 1);
                    for (std::int64_t t = 0; t < n; ++t) {
                        const GridPoint p{(px + t * da) % n < 0 ? (px + t * da) % n + n
                                                                : (px + t * da) % n,
                                          (py + t * db) % n < 0 ? (py + t * db) % n + n
                                                                : (py + t * db) % n};
                        CHECK(fup::cell_meets_drawing(a, n, p));
                    }
                }
            }
        }
    }
}

TEST_CASE("orthogonal_pair_condition examples") {
    const auto axis = fup::orthogonal_pair_condition(column3(), row3());
    CHECK(axis.obstructed);
    CHECK(axis.v == std::pair<std::int64_t, std::int64_t>{0, 1});

    const auto diag = fup::orthogonal_pair_condition(diag3(), antidiag3());
    CHECK(diag.obstructed);
    CHECK(diag.v == std::pair<std::int64_t, std::int64_t>{1, 1});

    const Alphabet2D singleton(3, {{0, 0}});
    CHECK_FALSE(fup::orthogonal_pair_condition(singleton, singleton).obstructed);
}

TEST_CASE("full_range_condition examples") {
    const Alphabet2D a1(2, {{0, 0}, {0, 1}});
    const Alphabet2D b1(2, {{0, 0}, {1, 0}});
    const auto v1 = fup::full_range_condition(a1, b1);
    CHECK(v1.used_inner_product_branch);
    CHECK_FALSE(v1.improved_beta);

    const Alphabet2D a2(2, {{0, 0}, {1, 1}});
    const auto v2 = fup::full_range_condition(a2, b1);
    CHECK(v2.improved_beta);

    // Boundary pairs: both conditions agree (and say no improvement).
    const auto axis_inner = fup::full_range_condition(column3(), row3());
    CHECK(axis_inner.used_inner_product_branch);
    CHECK_FALSE(axis_inner.improved_beta);
    CHECK(fup::orthogonal_pair_condition(column3(), row3()).obstructed);

    const auto diag_inner = fup::full_range_condition(diag3(), antidiag3());
    CHECK(diag_inner.used_inner_product_branch);
    CHECK_FALSE(diag_inner.improved_beta);
    CHECK(fup::orthogonal_pair_condition(diag3(), antidiag3()).obstructed);
}

TEST_CASE("line_margin examples") {
    const auto contained = fup::line_margin(column3(), {0, 1}, 32);
    CHECK(contained.margin == doctest::Approx(0.0).epsilon(1e-12));

    const Alphabet2D singleton(3, {{0, 0}});
    const auto apart = fup::line_margin(singleton, {1, 1}, 64);
    CHECK(apart.margin >= 1.0 / 3.0 - 1.0 / 64.0);

    const Alphabet2D two(3, {{0, 0}, {2, 1}});
    const auto base = fup::line_margin(two, {1, 2}, 256);
    const auto refined = fup::line_margin(two, {1, 2}, 512);
    CHECK(std::abs(base.margin - refined.margin) <= 1.0 / 256.0);
    CHECK(base.margin >= 0.0);
    CHECK(base.margin <= 0.5);

    CHECK_THROWS_AS(fup::line_margin(two, {1, 1}, 4), fup::usage_error);
}

TEST_CASE("sampled lines are quantitatively dense") {
    // distance from any point to a coprime-direction line is at most
    // 1/max(|a|,|b|), up to the sampling step
    const std::vector<std::pair<std::int64_t, std::int64_t>> dirs{{1, 2}, {2, 3}, {1, 3}};
    for (const auto& [a, b] : dirs) {
        const double bound = 1.0 / static_cast<double>(std::max(std::abs(a), std::abs(b)));
        fup::SplitMix64 rng(static_cast<std::uint64_t>(100 + a * 10 + b));
        for (int trial = 0; trial < 10; ++trial) {
            const double qx = rng.unit(), qy = rng.unit();
            double best = 1.0;
            const int samples = 4096;
            for (int i = 0; i < samples; ++i) {
                const double t = static_cast<double>(i) / samples;
                const double x = t * a - std::floor(t * a);
                const double y = t * b - std::floor(t * b);
                auto dist = [](double u, double w) {
                    double d = std::abs(u - w);
                    d -= std::floor(d);
                    return std::min(d, 1.0 - d);
                };
                best = std::min(best, std::max(dist(x, qx), dist(y, qy)));
            }
            CHECK(best <= bound + 4.0 / samples);
        }
    }
}
