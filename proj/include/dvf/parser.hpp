#pragma once

#include <string_view>

#include "dvf/term.hpp"

namespace dvf {

/**
 * Term grammar:
 *
 *   term := sum
 *   sum  := prod (('+' | '-') prod)*
 *   prod := atom ('*' atom)*
 *   atom := INT | 'p' | 'x' | 's^' INT '(' term ')' | 's(' term ')'
 *         | 'Q(' term ',' term ')' | NAME '(' term (',' term)* ')' | '(' term ')'
 *
 * NAME is an identifier other than s, Q, p and x. Failures are SyntaxError with
 * the 1-based column of the offending token and the set of tokens expected there.
 */
Term parse_term(std::string_view text);

}  // namespace dvf
