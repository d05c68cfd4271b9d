#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "fup/io.hpp"
#include "fup/poly_expr.hpp"

using json = nlohmann::json;

namespace {

std::string bin() {
    const char* path = std::getenv("FUP_BIN");
    REQUIRE(path != nullptr);
    return path;
}

int run_cli(const std::string& args, const std::string& stdout_file) {
    const std::string cmd = bin() + " " + args + " > " + stdout_file + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("parse_poly grammar") {
    const auto quad = fup::parse_poly("z^2+4*z*w+w-1");
    const auto& c = quad.parsed.coeffs();
    REQUIRE(c.size() == 4);
    CHECK(c.at({2, 0}) == fup::cd{1.0, 0.0});
    CHECK(c.at({1, 1}) == fup::cd{4.0, 0.0});
    CHECK(c.at({0, 1}) == fup::cd{1.0, 0.0});
    CHECK(c.at({0, 0}) == fup::cd{-1.0, 0.0});

    const auto zero = fup::parse_poly("0");
    CHECK(zero.degenerate_zero);

    CHECK_THROWS_AS(fup::parse_poly("(illegal"), fup::poly_syntax_error);
    try {
        fup::parse_poly("(illegal");
    } catch (const fup::poly_syntax_error& e) {
        CHECK(e.column == 1);
    }
    CHECK_THROWS_AS(fup::parse_poly("z^-2"), fup::poly_syntax_error);
    CHECK_THROWS_AS(fup::parse_poly("z^2 +"), fup::poly_syntax_error);
    CHECK_THROWS_AS(fup::parse_poly(""), fup::poly_syntax_error);

    // juxtaposition, whitespace insensitivity, decimals, the imaginary unit
    const auto mixed = fup::parse_poly(" 2.5 i z w^2 - w^2 z i ");
    REQUIRE(mixed.parsed.coeffs().size() == 1);
    CHECK(std::abs(mixed.parsed.coeffs().at({1, 2}) - fup::cd{0.0, 1.5}) < 1e-12);
}

TEST_CASE("render/parse round trip") {
    fup::SplitMix64 rng(79);
    for (int trial = 0; trial < 30; ++trial) {
        std::map<fup::BivarPoly::ExponentPair, fup::cd> coeffs;
        const int terms = 1 + static_cast<int>(rng.below(6));
        for (int t = 0; t < terms; ++t) {
            const double re = static_cast<double>(static_cast<std::int64_t>(rng.below(9)) - 4);
            const double im = static_cast<double>(static_cast<std::int64_t>(rng.below(9)) - 4);
            coeffs[{static_cast<std::int64_t>(rng.below(4)),
                    static_cast<std::int64_t>(rng.below(4))}] += fup::cd{re, im + 0.5};
        }
        const fup::BivarPoly poly(coeffs);
        if (poly.is_zero()) continue;
        const auto round = fup::parse_poly(fup::render_poly(poly));
        REQUIRE(round.parsed.coeffs().size() == poly.coeffs().size());
        for (const auto& [e, a] : poly.coeffs()) {
            CHECK(std::abs(round.parsed.coeffs().at(e) - a) <= 1e-12);
        }
    }
}

TEST_CASE("cli orthopair on the diagonal pair") {
    write_file("/tmp/fup_diag.json", R"({"M":3,"cells":[[0,0],[1,1],[2,2]]})");
    write_file("/tmp/fup_anti.json", R"({"M":3,"cells":[[0,2],[1,1],[2,0]]})");
    const int code =
        run_cli("orthopair --a /tmp/fup_diag.json --b /tmp/fup_anti.json", "/tmp/fup_out1.json");
    CHECK(code == 0);
    const json out = json::parse(slurp("/tmp/fup_out1.json"));
    CHECK(out.at("result").at("obstructed") == true);
    CHECK(out.at("result").at("v") == json::array({1, 1}));
    CHECK(out.at("config").at("command") == "orthopair");
    CHECK(out.contains("version"));
}

TEST_CASE("cli beta csv shape") {
    write_file("/tmp/fup_a.json", R"({"M":3,"cells":[[0,0],[1,2]]})");
    const int code = run_cli(
        "beta --a /tmp/fup_a.json --b /tmp/fup_a.json --kmax 3 --format csv --out /tmp/fup_beta.csv",
        "/tmp/fup_out2.txt");
    CHECK(code == 0);
    std::ifstream in("/tmp/fup_beta.csv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "k,norm,beta_k");
    int rows = 0;
    while (std::getline(in, line)) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("cli cyclo-count honors the quadratic bound") {
    const int code = run_cli("cyclo-count --poly \"z^2+4*z*w+w-1\" --nmax 64",
                             "/tmp/fup_out3.json");
    CHECK(code == 0);
    const json out = json::parse(slurp("/tmp/fup_out3.json"));
    CHECK(out.at("result").at("max_count").get<int>() <= 44);
}

TEST_CASE("cli outputs are byte identical across runs") {
    write_file("/tmp/fup_d.json", R"({"M":3,"cells":[[0,0],[1,1],[2,2]]})");
    CHECK(run_cli("line-check --a /tmp/fup_d.json --v 1,1 --out /tmp/fup_r1.json",
                  "/tmp/fup_msg1.txt") == 0);
    const std::string first = slurp("/tmp/fup_r1.json");
    CHECK(run_cli("line-check --a /tmp/fup_d.json --v 1,1 --out /tmp/fup_r1.json",
                  "/tmp/fup_msg2.txt") == 0);
    CHECK(slurp("/tmp/fup_r1.json") == first);
    const json out = json::parse(slurp("/tmp/fup_r1.json"));
    CHECK(out.at("result").at("found") == true);
}

TEST_CASE("cli exit codes") {
    // unknown flag: usage
    CHECK(run_cli("norm --bogus x", "/tmp/fup_out4.txt") == 2);
    // missing file: usage
    CHECK(run_cli("orthopair --a /tmp/fup_missing.json --b /tmp/fup_missing.json",
                  "/tmp/fup_out5.txt") == 2);
    // cap exceeded: resource
    write_file("/tmp/fup_big.json", R"({"M":3,"cells":[[0,0],[1,1],[2,2]]})");
    CHECK(run_cli("beta --a /tmp/fup_big.json --b /tmp/fup_big.json --kmax 9 --cap 100",
                  "/tmp/fup_out6.txt") == 3);
}

TEST_CASE("cli propagation emits a decay fit") {
    write_file("/tmp/fup_1d.json", R"({"M":3,"digits":[0,2]})");
    const int code = run_cli(
        "propagation --dim 1 --alphabet /tmp/fup_1d.json --kmin 2 --kmax 4 "
        "--phi 0.72,0.88 --psi 0.06,0.14",
        "/tmp/fup_out7.json");
    CHECK(code == 0);
    const json out = json::parse(slurp("/tmp/fup_out7.json"));
    CHECK(out.at("result").at("hypothesis_met") == true);
    CHECK(out.at("result").contains("fitted_decay_exponent"));
}
