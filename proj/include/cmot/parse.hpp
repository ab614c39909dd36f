#ifndef CMOT_PARSE_HPP
#define CMOT_PARSE_HPP

#include <string>

#include "places.hpp"

namespace cmot {

/// Element-string grammar shared by all inputs: integer literals (reduced
/// mod p), the generators "t", "x" and the field generator "g", operators
/// + - * / ^ and parentheses. Exponents are integers; negative exponents
/// and division require an x-free base.

/// Polynomial in x with coefficients in F(t).
QPoly parse_qpoly(const std::string& s, const FqFieldPtr& F);

/// Rational function in t over F (no x allowed).
QElem parse_qelem(const std::string& s, const FqFieldPtr& F);

/// Constant field element (only "g" and integers).
FqElem parse_fqelem(const std::string& s, const FqFieldPtr& F);

/// Polynomial in t over F with polynomial (denominator-free) coefficients.
FqPoly parse_tpoly(const std::string& s, const FqFieldPtr& F);

/// Polynomial over F_p in an arbitrary single variable; used for defining
/// polynomials in field descriptions.
std::vector<int> parse_prime_poly(const std::string& s, int p, const std::string& var);

} // namespace cmot

#endif
