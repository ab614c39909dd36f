#ifndef CMOT_FQPOLY_HPP
#define CMOT_FQPOLY_HPP

#include <random>
#include <utility>
#include <vector>

#include "fq.hpp"
#include "poly.hpp"

namespace cmot {

using FqPoly = Poly<FqElem>;

FqPoly fqpoly_zero(const FqFieldPtr& F);
FqPoly fqpoly_x(const FqFieldPtr& F);
FqPoly fqpoly_from_ints(const FqFieldPtr& F, const std::vector<long long>& coeffs);
FqPoly fqpoly_constant(const FqElem& c);

/// Apply a coefficient map (Frobenius, embedding, ...) to every coefficient.
template <typename Fn>
FqPoly map_coeffs(const FqPoly& f, const FqElem& new_zero, Fn fn) {
    std::vector<FqElem> c;
    c.reserve(f.coeffs().size());
    for (auto& x : f.coeffs()) c.push_back(fn(x));
    return FqPoly(new_zero, std::move(c));
}

/// base^(p^k) mod m, via k-fold p-power maps.
FqPoly pow_pk_mod(const FqPoly& base, long k, const FqPoly& m);
/// base^e mod m for a plain machine-word exponent.
FqPoly pow_mod(const FqPoly& base, unsigned long long e, const FqPoly& m);

bool is_irreducible(const FqPoly& f);

struct FqFactorization {
    FqElem unit;                                // leading unit
    std::vector<std::pair<FqPoly, int>> factors;  // monic irreducible, multiplicity
};

/// Full factorization over F_{p^m} (squarefree decomposition, then
/// distinct-degree and trace-based equal-degree splitting). Result factors
/// are sorted canonically; the product times unit reproduces the input.
FqFactorization factor_fq(const FqPoly& f);

/// Squarefree decomposition only: list of (monic squarefree, multiplicity).
std::vector<std::pair<FqPoly, int>> squarefree_decomp_fq(const FqPoly& f);

/// Distinct roots of f lying in its coefficient field, sorted lexicographically.
std::vector<FqElem> roots_in_field(const FqPoly& f);

/// Deterministic order on polynomials over one field: by degree, then
/// coefficients from the constant term up (lexicographic on elements).
bool fqpoly_lex_less(const FqPoly& a, const FqPoly& b);

/// Enumerate monic polynomials of degree d over F in counter order and keep
/// the irreducible ones; stops after `count` finds (count<0: all).
std::vector<FqPoly> irreducibles_of_degree(const FqFieldPtr& F, int d, long long count = -1);

} // namespace cmot

#endif
