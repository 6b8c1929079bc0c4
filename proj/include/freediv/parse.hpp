#pragma once

#include <string>
#include <string_view>

#include "freediv/polynomial.hpp"

namespace freediv {

/// Parses the polynomial grammar: rational literals `a` or `a/b`, identifiers,
/// `+ - * ^` with `^` taking a non-negative integer literal, and parentheses.
/// Multiplication is always explicit. Throws ParseError (with position) on
/// syntax errors and on identifiers missing from `ctx`.
Polynomial parse_polynomial(std::string_view text, const VarContext& ctx);

/// Same grammar; the context is built from identifiers in order of first occurrence.
Polynomial parse_polynomial(std::string_view text);

/// Identifiers of `text` in order of first occurrence (validates tokens only).
std::vector<std::string> scan_identifiers(std::string_view text);

/// Canonical text form, terms in decreasing grevlex order, e.g. `2*x^2*y - 1/2*z + 3`.
/// Reparses to an equal polynomial.
std::string to_string(const Polynomial& p);

}  // namespace freediv
