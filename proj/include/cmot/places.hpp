#ifndef CMOT_PLACES_HPP
#define CMOT_PLACES_HPP

#include <string>
#include <vector>

#include "fq.hpp"
#include "fqpoly.hpp"
#include "fraction.hpp"
#include "ratfunc.hpp"

namespace cmot {

/// Element of Q = F_q(t) (or of L(t): the same type over a larger field).
using QElem = RatFunc<FqElem>;
using QPoly = Poly<QElem>;

QElem q_zero(const FqFieldPtr& F);
QElem q_one(const FqFieldPtr& F);
QElem q_t(const FqFieldPtr& F);
QElem q_from_poly(const FqPoly& p);
QElem q_from_int(const FqFieldPtr& F, long long v);

/// A closed point of P^1 over the coefficient field: a monic irreducible
/// polynomial in t, or the place at infinity.
class Place {
public:
    static Place infinity(const FqFieldPtr& F);
    static Place finite(FqPoly monic_irreducible);

    bool is_infinite() const { return infinite_; }
    const FqPoly& poly() const { return poly_; }
    const FqFieldPtr& base_field() const { return F_; }
    int degree() const { return infinite_ ? 1 : poly_.degree(); }

    friend bool operator==(const Place& a, const Place& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.poly_ == b.poly_);
    }
    friend bool operator!=(const Place& a, const Place& b) { return !(a == b); }
    bool lex_less(const Place& b) const;

private:
    Place(bool inf, FqPoly p, FqFieldPtr F)
        : infinite_(inf), poly_(std::move(p)), F_(std::move(F)) {}
    bool infinite_;
    FqPoly poly_;
    FqFieldPtr F_;
};

/// Exact discrete valuation of a nonzero rational function.
long valuation(const QElem& f, const Place& v);
long valuation_poly(const FqPoly& f, const FqPoly& p);  // multiplicity of p in f

/// All places where f has nonzero valuation (finite support plus infinity
/// when relevant). f != 0.
std::vector<Place> support(const QElem& f);

/// Newton polygon slopes of a monic polynomial at a place, with the
/// convention slope(x - c) = v(c). Roots equal to zero are reported via
/// infinite_count.
struct SlopeMultiset {
    std::vector<std::pair<Fraction, int>> slopes;  // (slope, multiplicity), sorted
    int infinite_count = 0;
    int total() const {
        int s = infinite_count;
        for (auto& [sl, m] : slopes) s += m;
        return s;
    }
};
SlopeMultiset newton_slopes(const QPoly& f, const Place& v);

/// The residue field F_v = F_q[t]/(p_v) presented on the canonical field
/// F_{q^deg}. Reduction maps for v-integral rational functions.
class ResidueField {
public:
    explicit ResidueField(const Place& v);

    const Place& place() const { return v_; }
    const FqFieldPtr& field() const { return Fv_; }
    const FqElem& t_image() const { return tbar_; }
    const Embedding& base_embedding() const { return embed_; }

    FqElem reduce(const QElem& f) const;          // requires valuation >= 0
    Poly<FqElem> reduce_poly(const QPoly& f) const;

    /// Inverse of `reduce` on residues: the unique polynomial in t over F_q
    /// of degree < deg(v) mapping to x.
    FqPoly lift_residue(const FqElem& x) const;

private:
    Place v_;
    FqFieldPtr Fv_;
    Embedding embed_;  // F_q -> F_{q^d}
    FqElem tbar_;      // least root of p_v in F_{q^d}
    mutable std::vector<std::vector<int>> lift_solver_;
};

/// Finite places of a given degree in deterministic order.
std::vector<Place> places_of_degree(const FqFieldPtr& F, int d);

/// Canonical display string ("inf" or a monic polynomial in t).
std::string place_str(const Place& v);

} // namespace cmot

#endif
