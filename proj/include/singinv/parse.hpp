#pragma once

#include <string>
#include <vector>

#include "singinv/fpoly.hpp"

namespace singinv {

/// Parses polynomial text over declared form variables and parameters.
///
/// Grammar (whitespace insignificant):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' nat)?
///   base   := nat | ident | '(' expr ')' | '-' factor
///
/// '/' requires a divisor free of form variables (rational literals like
/// 3/2 and parameter expressions are fine).  Form variables and parameters
/// must be disjoint; unknown identifiers are rejected with their position.
FPoly parse_poly(const std::string& text,
                 const std::vector<std::string>& form_vars,
                 const std::vector<std::string>& params);

/// As parse_poly but with no form variables: the result is a scalar.
RatFunc parse_ratfunc(const std::string& text,
                      const std::vector<std::string>& params);

} // namespace singinv
