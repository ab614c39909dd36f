#ifndef CMOT_PRINTING_HPP
#define CMOT_PRINTING_HPP

#include <string>

#include "fqpoly.hpp"
#include "places.hpp"
#include "series.hpp"

namespace cmot {

/// Canonical display of polynomials and rational functions. Terms are
/// printed in decreasing degree; field elements as polynomials in the
/// generator with coefficients in [0,p). Everything here is deterministic
/// and is what the catalog hashes.

std::string fqpoly_str(const FqPoly& f, const std::string& var);
std::string qelem_str(const QElem& f, const std::string& var = "t");
std::string qpoly_str(const QPoly& f, const std::string& var = "x",
                      const std::string& tvar = "t");
std::string series_str(const Series<FqElem>& s, const std::string& var = "z");

} // namespace cmot

#endif
