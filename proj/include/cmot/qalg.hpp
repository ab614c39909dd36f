#ifndef CMOT_QALG_HPP
#define CMOT_QALG_HPP

#include <utility>
#include <vector>

#include "places.hpp"

namespace cmot {

/// Polynomial algebra over the rational function field F(t) (F finite):
/// exact factorization, squarefree tests, and minimal polynomials of powers.

QPoly qpoly_x(const FqFieldPtr& F);
QPoly qpoly_constant(const QElem& c);

struct QFactorization {
    QElem unit;
    std::vector<std::pair<QPoly, int>> factors;  // monic irreducible, multiplicity
};

/// Exact factorization into monic irreducibles over F(t). Denominators are
/// cleared, the integral polynomial is factored by specializing t in a small
/// extension where the image stays squarefree of full degree, Hensel-lifting
/// the finite-field factorization (t-t0)-adically to the coefficient degree
/// bound, recombining, and descending Frobenius orbits back to F.
/// Inseparable layers f = g(x^{p^k}) are peeled first. The product of the
/// returned factors is re-multiplied and checked against the input.
QFactorization factor_over_function_field(const QPoly& f);

/// Trial-division factorization over F(t); exponential and only meant as an
/// independent oracle on desk-scale inputs. Throws when the search space
/// exceeds trial_cap candidates.
QFactorization factor_bruteforce(const QPoly& f, long long trial_cap = 50000000);

bool is_squarefree_over_Q(const QPoly& f);

bool qpoly_lex_less(const QPoly& a, const QPoly& b);
bool qelem_lex_less(const QElem& a, const QElem& b);

/// Minimal polynomial over F(t) of alpha^k, where h is the (irreducible)
/// minimal polynomial of alpha: Krylov iteration on the multiplication
/// operator of y^k in F(t)[y]/(h).
QPoly power_min_poly(const QPoly& h, unsigned long long k);

/// Resultant of two polynomials over F(t) (Sylvester determinant).
QElem resultant(const QPoly& f, const QPoly& g);

} // namespace cmot

#endif
