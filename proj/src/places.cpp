#include "cmot/places.hpp"

#include <algorithm>
#include <sstream>

#include "cmot/printing.hpp"

namespace cmot {

QElem q_zero(const FqFieldPtr& F) { return QElem(F->zero()); }
QElem q_one(const FqFieldPtr& F) { return QElem::constant(F->one()); }
QElem q_t(const FqFieldPtr& F) { return QElem::from_poly(fqpoly_x(F)); }
QElem q_from_poly(const FqPoly& p) { return QElem::from_poly(p); }
QElem q_from_int(const FqFieldPtr& F, long long v) { return QElem::constant(F->from_int(v)); }

Place Place::infinity(const FqFieldPtr& F) {
    return Place(true, fqpoly_zero(F), F);
}

Place Place::finite(FqPoly monic_irreducible) {
    if (monic_irreducible.degree() < 1 || !monic_irreducible.lc().is_one())
        throw std::domain_error("Place: finite place needs a monic nonconstant polynomial");
    if (!is_irreducible(monic_irreducible))
        throw std::domain_error("Place: polynomial is reducible");
    FqFieldPtr F = monic_irreducible.zero_elem().field();
    return Place(false, std::move(monic_irreducible), F);
}

bool Place::lex_less(const Place& b) const {
    if (infinite_ != b.infinite_) return b.infinite_;  // finite sorts before infinity
    if (infinite_) return false;
    return fqpoly_lex_less(poly_, b.poly_);
}

long valuation_poly(const FqPoly& f, const FqPoly& p) {
    if (f.is_zero()) throw std::domain_error("valuation_poly: zero polynomial");
    long count = 0;
    FqPoly g = f;
    for (;;) {
        FqPoly q(g.zero_elem()), r(g.zero_elem());
        divmod(g, p, q, r);
        if (!r.is_zero()) break;
        g = q;
        ++count;
        if (g.degree() < p.degree()) break;
    }
    return count;
}

long valuation(const QElem& f, const Place& v) {
    if (f.is_zero()) throw std::domain_error("valuation: valuation of zero is undefined");
    if (v.is_infinite()) return (long)f.den().degree() - (long)f.num().degree();
    return valuation_poly(f.num(), v.poly()) - valuation_poly(f.den(), v.poly());
}

std::vector<Place> support(const QElem& f) {
    if (f.is_zero()) throw std::domain_error("support: zero has no support");
    std::vector<Place> out;
    const FqFieldPtr& F = f.zero_elem().field();
    auto add_factors = [&](const FqPoly& g) {
        if (g.degree() < 1) return;
        for (auto& [u, m] : factor_fq(g).factors) out.push_back(Place::finite(u));
    };
    add_factors(f.num());
    add_factors(f.den());
    if (f.num().degree() != f.den().degree()) out.push_back(Place::infinity(F));
    std::sort(out.begin(), out.end(), [](const Place& a, const Place& b) { return a.lex_less(b); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

SlopeMultiset newton_slopes(const QPoly& f, const Place& v) {
    if (f.is_zero() || !f.lc().is_one())
        throw std::domain_error("newton_slopes: polynomial must be monic");
    SlopeMultiset out;
    int low = 0;
    while (f.coeff(low).is_zero()) ++low;
    out.infinite_count = low;
    int n = f.degree();
    if (low == n) return out;
    // lower hull of points (i, val(a_{i+low})) for i = 0..n-low
    struct Pt { long long x, y; };
    std::vector<Pt> pts;
    for (int i = low; i <= n; ++i) {
        if (f.coeff(i).is_zero()) continue;
        pts.push_back({i - low, valuation(f.coeff(i), v)});
    }
    std::vector<Pt> hull;
    for (auto& p : pts) {
        while (hull.size() >= 2) {
            const Pt& a = hull[hull.size() - 2];
            const Pt& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-p
            long long cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
            if (cross <= 0) hull.pop_back();  // b on or above: drop
            else break;
        }
        hull.push_back(p);
    }
    for (size_t i = 0; i + 1 < hull.size(); ++i) {
        long long dx = hull[i + 1].x - hull[i].x;
        long long dy = hull[i].y - hull[i + 1].y;  // slope = v(root) convention
        Fraction s(dy, dx);
        bool merged = false;
        for (auto& [sl, m] : out.slopes)
            if (sl == s) { m += (int)dx; merged = true; break; }
        if (!merged) out.slopes.emplace_back(s, (int)dx);
    }
    std::sort(out.slopes.begin(), out.slopes.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

ResidueField::ResidueField(const Place& v)
    : v_(v),
      Fv_(FqField::canonical(v.base_field()->p(), v.base_field()->degree() * v.degree())),
      embed_(embedding_between(v.base_field(), Fv_)),
      tbar_(Fv_->zero()) {
    if (v.is_infinite()) throw std::domain_error("ResidueField: use series at infinity");
    FqPoly pv = map_coeffs(v.poly(), Fv_->zero(), [&](const FqElem& c) { return embed_.apply(c); });
    auto roots = roots_in_field(pv);
    if ((int)roots.size() != v.degree())
        throw std::logic_error("ResidueField: place polynomial did not split");
    tbar_ = roots.front();
}

FqElem ResidueField::reduce(const QElem& f) const {
    if (f.is_zero()) return Fv_->zero();
    if (valuation(f, v_) < 0) throw std::domain_error("ResidueField: negative valuation");
    auto eval = [&](const FqPoly& g) {
        FqElem acc = Fv_->zero();
        for (int i = g.degree(); i >= 0; --i) acc = acc * tbar_ + embed_.apply(g.coeff(i));
        return acc;
    };
    FqElem n = eval(f.num());
    FqElem d = eval(f.den());
    return n * d.inv();
}

Poly<FqElem> ResidueField::reduce_poly(const QPoly& f) const {
    std::vector<FqElem> c;
    c.reserve(f.coeffs().size());
    for (auto& x : f.coeffs()) c.push_back(reduce(x));
    return Poly<FqElem>(Fv_->zero(), std::move(c));
}

FqPoly ResidueField::lift_residue(const FqElem& x) const {
    // solve x = sum_{i<d} iota(c_i) tbar^i over F_p
    const FqFieldPtr& Fq = v_.base_field();
    int a = Fq->degree(), d = v_.degree();
    int n = a * d;  // = [F_v : F_p]
    int p = Fq->p();
    auto inv_mod_p = [p](int v) {
        int r = 1, e2 = p - 2, base = ((v % p) + p) % p;
        while (e2 > 0) {
            if (e2 & 1) r = r * base % p;
            base = base * base % p;
            e2 >>= 1;
        }
        return r;
    };
    if (lift_solver_.empty()) {
        std::vector<std::vector<int>> A(n, std::vector<int>(2 * n, 0));
        FqElem u = Fq->gen();
        FqElem tp = Fv_->one();
        int col = 0;
        for (int i = 0; i < d; ++i) {
            FqElem up = Fq->one();
            for (int k = 0; k < a; ++k) {
                FqElem b = embed_.apply(up) * tp;
                for (int r2 = 0; r2 < n; ++r2) A[r2][col] = b.coeffs()[r2];
                ++col;
                up = up * u;
            }
            tp = tp * tbar_;
        }
        for (int r2 = 0; r2 < n; ++r2) A[r2][n + r2] = 1;
        for (int c2 = 0; c2 < n; ++c2) {
            int piv = -1;
            for (int r2 = c2; r2 < n; ++r2)
                if (A[r2][c2]) { piv = r2; break; }
            if (piv < 0) throw std::logic_error("lift_residue: basis matrix singular");
            std::swap(A[c2], A[piv]);
            int iv = inv_mod_p(A[c2][c2]);
            for (int k = 0; k < 2 * n; ++k) A[c2][k] = A[c2][k] * iv % p;
            for (int r2 = 0; r2 < n; ++r2) {
                if (r2 == c2 || !A[r2][c2]) continue;
                int f = A[r2][c2];
                for (int k = 0; k < 2 * n; ++k)
                    A[r2][k] = ((A[r2][k] - f * A[c2][k]) % p + p) % p;
            }
        }
        lift_solver_.assign(n, std::vector<int>(n, 0));
        for (int r2 = 0; r2 < n; ++r2)
            for (int k = 0; k < n; ++k) lift_solver_[r2][k] = A[r2][n + k];
    }
    std::vector<int> y(n, 0);
    for (int r2 = 0; r2 < n; ++r2) {
        long long acc = 0;
        for (int k = 0; k < n; ++k) acc += (long long)lift_solver_[r2][k] * x.coeffs()[k];
        y[r2] = (int)(acc % p);
    }
    std::vector<FqElem> c;
    c.reserve(d);
    for (int i = 0; i < d; ++i) {
        std::vector<int> cc(a, 0);
        for (int k = 0; k < a; ++k) cc[k] = y[i * a + k];
        c.push_back(Fq->element(std::move(cc)));
    }
    FqPoly out(Fq->zero(), std::move(c));
    // verification: reduce back
    if (!(reduce(q_from_poly(out)) == x)) throw std::logic_error("lift_residue: roundtrip failed");
    return out;
}

std::vector<Place> places_of_degree(const FqFieldPtr& F, int d) {
    std::vector<Place> out;
    for (auto& f : irreducibles_of_degree(F, d)) out.push_back(Place::finite(f));
    return out;
}

std::string place_str(const Place& v) {
    if (v.is_infinite()) return "inf";
    return fqpoly_str(v.poly(), "t");
}

} // namespace cmot
