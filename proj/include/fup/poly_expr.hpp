#pragma once

#include <string>

#include "fup/polymethod.hpp"

namespace fup {

// Parsed polynomial expression together with its source text.
struct PolyExpr {
    std::string source;
    BivarPoly parsed;
    bool degenerate_zero = false;
};

// Syntax error with a 1-based column position.
struct poly_syntax_error : usage_error {
    poly_syntax_error(const std::string& what, std::size_t column)
        : usage_error(what + " at column " + std::to_string(column)), column(column) {}
    std::size_t column;
};

// Grammar: sums/differences of terms; a term multiplies decimal or integer
// coefficients, the imaginary unit i, and powers z^k, w^k (k >= 0, '^'
// optional for power 1, '*' optional between factors). No parentheses.
PolyExpr parse_poly(const std::string& source);

// Canonical rendering; reparsing yields the same coefficients.
std::string render_poly(const BivarPoly& poly);

}  // namespace fup
