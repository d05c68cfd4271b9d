#include "fup/poly_expr.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>

namespace fup {

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    explicit Parser(const std::string& s) : src(s) {}

    void skip_space() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    char peek() {
        skip_space();
        return pos < src.size() ? src[pos] : '\0';
    }
    std::size_t column() { return pos + 1; }

    double parse_number() {
        skip_space();
        const char* begin = src.c_str() + pos;
        char* end = nullptr;
        const double value = std::strtod(begin, &end);
        if (end == begin) throw poly_syntax_error("expected a number", column());
        pos += static_cast<std::size_t>(end - begin);
        return value;
    }

    std::int64_t parse_exponent() {
        skip_space();
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) {
            if (src[pos] == '-') throw poly_syntax_error("negative exponents are not allowed",
                                                         column());
            ++pos;
        }
        skip_space();
        if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) {
            throw poly_syntax_error("expected an integer exponent", column());
        }
        std::int64_t value = 0;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
            value = value * 10 + (src[pos] - '0');
            if (value > 1'000'000) throw poly_syntax_error("exponent too large", column());
            ++pos;
        }
        return value;
    }

    // One product of coefficients, i, and variable powers.
    void parse_term(std::map<BivarPoly::ExponentPair, cd>& acc, double sign) {
        cd coeff{sign, 0.0};
        std::int64_t kz = 0, kw = 0;
        bool saw_factor = false;
        while (true) {
            const char c = peek();
            if (c == 'z' || c == 'w') {
                ++pos;
                std::int64_t e = 1;
                if (peek() == '^') {
                    ++pos;
                    e = parse_exponent();
                }
                (c == 'z' ? kz : kw) += e;
                saw_factor = true;
            } else if (c == 'i') {
                ++pos;
                coeff *= cd{0.0, 1.0};
                saw_factor = true;
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coeff *= parse_number();
                saw_factor = true;
            } else if (c == '*') {
                ++pos;
                if (!saw_factor) throw poly_syntax_error("'*' needs a left factor", column());
            } else {
                break;
            }
        }
        if (!saw_factor) throw poly_syntax_error("expected a term", column());
        acc[{kz, kw}] += coeff;
    }
};

}  // namespace

PolyExpr parse_poly(const std::string& source) {
    Parser parser(source);
    std::map<BivarPoly::ExponentPair, cd> acc;
    parser.skip_space();
    if (parser.pos >= source.size()) throw poly_syntax_error("empty expression", 1);

    double sign = 1.0;
    if (parser.peek() == '+' || parser.peek() == '-') {
        sign = parser.peek() == '-' ? -1.0 : 1.0;
        ++parser.pos;
    }
    parser.parse_term(acc, sign);
    while (true) {
        const char c = parser.peek();
        if (c == '\0') break;
        if (c != '+' && c != '-') {
            throw poly_syntax_error(std::string("unexpected character '") + c + "'",
                                    parser.column());
        }
        ++parser.pos;
        parser.parse_term(acc, c == '-' ? -1.0 : 1.0);
    }

    PolyExpr out;
    out.source = source;
    out.parsed = BivarPoly(std::move(acc));
    out.degenerate_zero = out.parsed.is_zero();
    return out;
}

namespace {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_monomial(std::string& out, std::int64_t k, std::int64_t l, double coeff, bool imag,
                     bool first) {
    const bool negative = coeff < 0.0;
    double mag = negative ? -coeff : coeff;
    if (first) {
        if (negative) out += "-";
    } else {
        out += negative ? " - " : " + ";
    }
    const bool has_vars = k > 0 || l > 0;
    const bool unit = mag == 1.0 && (has_vars || imag);
    if (!unit) {
        out += format_real(mag);
        if (has_vars || imag) out += "*";
    }
    if (imag) {
        out += "i";
        if (has_vars) out += "*";
    }
    if (k > 0) {
        out += "z";
        if (k > 1) out += "^" + std::to_string(k);
        if (l > 0) out += "*";
    }
    if (l > 0) {
        out += "w";
        if (l > 1) out += "^" + std::to_string(l);
    }
}

}  // namespace

std::string render_poly(const BivarPoly& poly) {
    if (poly.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, a] : poly.coeffs()) {
        if (a.real() != 0.0) {
            append_monomial(out, e.first, e.second, a.real(), false, first);
            first = false;
        }
        if (a.imag() != 0.0) {
            append_monomial(out, e.first, e.second, a.imag(), true, first);
            first = false;
        }
    }
    return out;
}

}  // namespace fup
