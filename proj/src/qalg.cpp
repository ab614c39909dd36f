#include "cmot/qalg.hpp"

#include <algorithm>
#include <map>

#include "cmot/matrix.hpp"
#include "cmot/series.hpp"

namespace cmot {

QPoly qpoly_x(const FqFieldPtr& F) {
    return QPoly(q_zero(F), {q_zero(F), q_one(F)});
}

QPoly qpoly_constant(const QElem& c) { return QPoly::constant(QElem(c.zero_elem()), c); }

bool qelem_lex_less(const QElem& a, const QElem& b) {
    if (a.den() != b.den()) return fqpoly_lex_less(a.den(), b.den());
    return fqpoly_lex_less(a.num(), b.num());
}

bool qpoly_lex_less(const QPoly& a, const QPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) == b.coeff(i)) continue;
        return qelem_lex_less(a.coeff(i), b.coeff(i));
    }
    return false;
}

namespace {

using SPoly = Poly<Series<FqElem>>;  // polynomials in y over F_j[[z]]/z^K

// ---- inseparable layer helpers -------------------------------------------

// f(x) = g(x^p): extract g
QPoly contract_p(const QPoly& f, int p) {
    std::vector<QElem> c;
    c.reserve(f.degree() / p + 1);
    for (int i = 0; i <= f.degree(); i += p) {
        for (int j = 1; j < p && i + j <= f.degree(); ++j)
            if (!f.coeff(i + j).is_zero())
                throw std::logic_error("contract_p: polynomial not in F(t)[x^p]");
        c.push_back(f.coeff(i));
    }
    return QPoly(f.zero_elem(), std::move(c));
}

bool poly_in_tp(const FqPoly& g, int p) {
    for (int i = 0; i <= g.degree(); ++i)
        if (i % p != 0 && !g.coeff(i).is_zero()) return false;
    return true;
}

FqPoly poly_tp_root(const FqPoly& g, int p) {
    const FqFieldPtr& F = g.zero_elem().field();
    int m = F->degree();
    std::vector<FqElem> c;
    for (int i = 0; i <= g.degree(); i += p) c.push_back(g.coeff(i).frobenius(m - 1));
    return FqPoly(F->zero(), std::move(c));
}

// c in F(t)^p iff (reduced) numerator and denominator lie in F[t^p]
bool ratfunc_is_pth_power(const QElem& c, int p) {
    if (c.is_zero()) return true;
    return poly_in_tp(c.num(), p) && poly_in_tp(c.den(), p);
}

QElem ratfunc_pth_root(const QElem& c, int p) {
    if (c.is_zero()) return c;
    return QElem(poly_tp_root(c.num(), p), poly_tp_root(c.den(), p));
}

// ---- specialization + Hensel + recombination core -------------------------

struct IntegralPoly {
    // polynomial in y with coefficients in F[t], monic in y
    std::vector<FqPoly> c;  // c[i] = coefficient of y^i
    int deg_t() const {
        int d = 0;
        for (auto& g : c) d = std::max(d, g.degree());
        return d;
    }
};

QPoly integral_to_qpoly(const IntegralPoly& G, const FqFieldPtr& F) {
    std::vector<QElem> c;
    c.reserve(G.c.size());
    for (auto& g : G.c) c.push_back(q_from_poly(g));
    return QPoly(q_zero(F), std::move(c));
}

// embed an integral poly into a larger coefficient field
IntegralPoly embed_integral(const IntegralPoly& G, const Embedding& e) {
    IntegralPoly out;
    out.c.reserve(G.c.size());
    for (auto& g : G.c)
        out.c.push_back(map_coeffs(g, e.to()->zero(), [&](const FqElem& x) { return e.apply(x); }));
    return out;
}

// evaluate the t-variable at t0
FqPoly specialize_t(const IntegralPoly& G, const FqElem& t0) {
    const FqFieldPtr& F = t0.field();
    std::vector<FqElem> c;
    c.reserve(G.c.size());
    for (auto& g : G.c) c.push_back(g.eval(t0));
    return FqPoly(F->zero(), std::move(c));
}

// coefficients composed with t = t0 + z, truncated at z^K
SPoly integral_to_series(const IntegralPoly& G, const FqElem& t0, int K) {
    const FqFieldPtr& F = t0.field();
    Series<FqElem> zero(F->zero(), K);
    Series<FqElem> tz = Series<FqElem>::from_coeff(t0, 0, K) +
                        Series<FqElem>::from_coeff(F->one(), 1, K);
    std::vector<Series<FqElem>> cs;
    cs.reserve(G.c.size());
    for (auto& g : G.c) {
        Series<FqElem> acc = zero;
        for (int i = g.degree(); i >= 0; --i)
            acc = acc * tz + Series<FqElem>::from_coeff(g.coeff(i), 0, K);
        cs.push_back(acc);
    }
    return SPoly(zero, std::move(cs));
}

FqPoly series_layer(const SPoly& f, int k, const FqFieldPtr& F) {
    std::vector<FqElem> c;
    c.reserve(f.coeffs().size());
    for (auto& s : f.coeffs()) c.push_back(k < s.prec() ? s.coeff(k) : F->zero());
    return FqPoly(F->zero(), std::move(c));
}

SPoly fqpoly_to_series(const FqPoly& f, int K) {
    const FqFieldPtr& F = f.zero_elem().field();
    Series<FqElem> zero(F->zero(), K);
    std::vector<Series<FqElem>> c;
    c.reserve(f.coeffs().size());
    for (auto& x : f.coeffs()) c.push_back(Series<FqElem>::from_coeff(x, 0, K));
    return SPoly(zero, std::move(c));
}

// two-factor monic Hensel lifting: G = H1*H2 mod z, Bezout s*h1 + t*h2 = 1
void hensel_pair(const SPoly& G, SPoly& H1, SPoly& H2, int K) {
    const FqFieldPtr& F = G.zero_elem().zero_elem().field();
    FqPoly h1 = series_layer(H1, 0, F);
    FqPoly h2 = series_layer(H2, 0, F);
    FqPoly g(F->zero()), s(F->zero()), t(F->zero());
    poly_ext_gcd(h1, h2, g, s, t);
    if (g.degree() != 0) throw std::logic_error("hensel_pair: factors not coprime");
    // scale Bezout to s*h1 + t*h2 = 1
    FqElem ginv = g.coeff(0).inv();
    s = s.scaled(ginv);
    t = t.scaled(ginv);
    for (int k = 1; k < K; ++k) {
        SPoly e = G - H1 * H2;
        FqPoly ebar = series_layer(e, k, F);
        if (ebar.is_zero()) continue;
        FqPoly d1 = (t * ebar) % h1;
        FqPoly d2 = (s * ebar) % h2;
        // H1 += z^k d1, H2 += z^k d2
        auto add_layer = [&](SPoly& H, const FqPoly& d) {
            std::vector<Series<FqElem>> c(H.coeffs().begin(), H.coeffs().end());
            int need = std::max((int)c.size(), d.degree() + 1);
            c.resize(need, Series<FqElem>(F->zero(), K));
            for (int i = 0; i <= d.degree(); ++i)
                c[i] = c[i] + Series<FqElem>::from_coeff(d.coeff(i), k, K);
            H = SPoly(Series<FqElem>(F->zero(), K), std::move(c));
        };
        add_layer(H1, d1);
        add_layer(H2, d2);
    }
}

// multifactor Hensel via bisection tree
void hensel_tree(const SPoly& G, const std::vector<FqPoly>& locals, int lo, int hi, int K,
                 std::vector<SPoly>& out) {
    const FqFieldPtr& F = G.zero_elem().zero_elem().field();
    if (hi - lo == 1) {
        out[lo] = G;
        return;
    }
    int mid = (lo + hi) / 2;
    FqPoly h1 = fqpoly_constant(F->one());
    for (int i = lo; i < mid; ++i) h1 = h1 * locals[i];
    FqPoly h2 = fqpoly_constant(F->one());
    for (int i = mid; i < hi; ++i) h2 = h2 * locals[i];
    SPoly H1 = fqpoly_to_series(h1, K);
    SPoly H2 = fqpoly_to_series(h2, K);
    hensel_pair(G, H1, H2, K);
    hensel_tree(H1, locals, lo, mid, K, out);
    hensel_tree(H2, locals, mid, hi, K, out);
}

// series-poly coefficients back to F[t] polynomials via z = t - t0; only
// the first K digits of the lift are trusted
IntegralPoly series_to_integral(const SPoly& f, const FqElem& t0, int K) {
    const FqFieldPtr& F = t0.field();
    FqPoly tmt0 = fqpoly_x(F) - fqpoly_constant(t0);
    IntegralPoly out;
    out.c.reserve(f.coeffs().size());
    for (auto& s : f.coeffs()) {
        int top = std::min(K, s.prec());
        FqPoly acc = fqpoly_zero(F);
        for (int k = top - 1; k >= 0; --k) {
            FqElem ck = (k >= s.order()) ? s.coeff(k) : F->zero();
            acc = acc * tmt0 + fqpoly_constant(ck);
        }
        out.c.push_back(acc);
    }
    return out;
}

// Frobenius^k on every coefficient of a QPoly (coefficient field fixed)
QPoly qpoly_frobenius(const QPoly& f, int k) {
    const FqFieldPtr& F = f.zero_elem().zero_elem().field();
    std::vector<QElem> c;
    c.reserve(f.coeffs().size());
    for (auto& x : f.coeffs()) {
        FqPoly n = map_coeffs(x.num(), F->zero(), [&](const FqElem& e) { return e.frobenius(k); });
        FqPoly d = map_coeffs(x.den(), F->zero(), [&](const FqElem& e) { return e.frobenius(k); });
        c.push_back(QElem(std::move(n), std::move(d)));
    }
    return QPoly(q_zero(F), std::move(c));
}

QPoly qpoly_descend(const QPoly& f, const Embedding& e) {
    const FqFieldPtr& F = e.from();
    std::vector<QElem> c;
    c.reserve(f.coeffs().size());
    auto down = [&](const FqPoly& g) {
        std::vector<FqElem> cc;
        cc.reserve(g.coeffs().size());
        for (auto& x : g.coeffs()) {
            auto pre = e.preimage(x);
            if (!pre) throw std::logic_error("qpoly_descend: coefficient not in subfield");
            cc.push_back(*pre);
        }
        return FqPoly(F->zero(), std::move(cc));
    };
    for (auto& x : f.coeffs()) c.push_back(QElem(down(x.num()), down(x.den())));
    return QPoly(q_zero(F), std::move(c));
}

// factor a monic squarefree separable integral polynomial over F(t)
std::vector<QPoly> factor_integral_core(const IntegralPoly& G0, const FqFieldPtr& F) {
    int n = (int)G0.c.size() - 1;
    if (n == 1) return {integral_to_qpoly(G0, F)};
    int Bt = G0.deg_t();
    int K = Bt + 1;
    // find a specialization point t0 in a small extension F_j
    int j = 0;
    FqFieldPtr Fj;
    Embedding emb;
    IntegralPoly G = G0;
    FqElem t0 = F->zero();
    FqPoly u = fqpoly_zero(F);
    for (;;) {
        ++j;
        Fj = (j == 1) ? F : FqField::canonical(F->p(), F->degree() * j);
        emb = embedding_between(F, Fj);
        G = (j == 1) ? G0 : embed_integral(G0, emb);
        bool found = false;
        for (auto& cand : Fj->all_elements()) {
            FqPoly uc = specialize_t(G, cand);
            if (uc.degree() != n) continue;  // cannot happen for monic, stay safe
            FqPoly du = uc.derivative();
            if (du.is_zero()) continue;
            if (poly_gcd(uc, du).degree() != 0) continue;
            t0 = cand;
            u = uc;
            found = true;
            break;
        }
        if (found) break;
        if (j > 12) throw std::logic_error("factor: no good specialization point found");
    }
    // local factorization at t0
    auto ufac = factor_fq(u);
    std::vector<FqPoly> locals;
    for (auto& [g, m] : ufac.factors) {
        if (m != 1) throw std::logic_error("factor: specialization not squarefree");
        locals.push_back(g);
    }
    std::vector<QPoly> factors_j;
    QPoly Gq = integral_to_qpoly(j == 1 ? G0 : G, Fj);
    if (locals.size() == 1) {
        factors_j.push_back(Gq);
    } else {
        // Hensel lift all local factors to precision K
        SPoly Gz = integral_to_series(G, t0, K);
        std::vector<SPoly> lifted(locals.size(), Gz);
        hensel_tree(Gz, locals, 0, (int)locals.size(), K, lifted);
        // recombine subsets, smallest first
        std::vector<int> pool(locals.size());
        for (size_t i = 0; i < pool.size(); ++i) pool[i] = (int)i;
        QPoly rem = Gq;
        Series<FqElem> sone = Series<FqElem>::from_coeff(Fj->one(), 0, K);
        while (!pool.empty()) {
            if (rem.degree() == 0) break;
            bool found = false;
            int psize = (int)pool.size();
            for (int sz = 1; sz <= psize && !found; ++sz) {
                if (sz == psize) {
                    factors_j.push_back(rem);
                    pool.clear();
                    found = true;
                    break;
                }
                for (auto& subset : sorted_subsets(psize, sz)) {
                    SPoly prod = SPoly::constant(Series<FqElem>(Fj->zero(), K), sone);
                    for (int s : subset) prod = prod * lifted[pool[s]];
                    IntegralPoly cand = series_to_integral(prod, t0, K);
                    if (cand.deg_t() > Bt) continue;
                    QPoly candq = integral_to_qpoly(cand, Fj);
                    if ((rem % candq).is_zero()) {
                        factors_j.push_back(candq);
                        rem = exact_div(rem, candq);
                        std::vector<int> np;
                        for (int i2 = 0; i2 < psize; ++i2)
                            if (std::find(subset.begin(), subset.end(), i2) == subset.end())
                                np.push_back(pool[i2]);
                        pool = np;
                        found = true;
                        break;
                    }
                }
            }
            if (!found) throw std::logic_error("factor: recombination failed");
            if (!pool.empty() && rem.degree() == 0) break;
        }
    }
    if (j == 1) return factors_j;
    // Galois descent: group factors into q^deg(F)-Frobenius orbits
    int aF = F->degree();
    std::vector<QPoly> out;
    std::vector<bool> used(factors_j.size(), false);
    for (size_t i = 0; i < factors_j.size(); ++i) {
        if (used[i]) continue;
        QPoly orbit_prod = factors_j[i];
        used[i] = true;
        QPoly cur = qpoly_frobenius(factors_j[i], aF);
        while (cur != factors_j[i]) {
            bool matched = false;
            for (size_t k = 0; k < factors_j.size(); ++k) {
                if (used[k] || !(factors_j[k] == cur)) continue;
                used[k] = true;
                orbit_prod = orbit_prod * cur;
                matched = true;
                break;
            }
            if (!matched) throw std::logic_error("factor: Frobenius orbit left the factor list");
            cur = qpoly_frobenius(cur, aF);
        }
        out.push_back(qpoly_descend(orbit_prod, emb));
    }
    return out;
}

// clear denominators and monicize; factor; map back. Input monic squarefree
// separable over F(t).
std::vector<QPoly> factor_squarefree_separable(const QPoly& s, const FqFieldPtr& F) {
    int n = s.degree();
    if (n == 1) return {s};
    // B = monic lcm of coefficient denominators
    FqPoly B = fqpoly_constant(F->one());
    for (int i = 0; i < n; ++i) {
        const FqPoly& d = s.coeff(i).den();
        B = exact_div(B * d, poly_gcd(B, d));
    }
    // monicize: G(y) = B^{n-1} s(y/B), coefficient of y^i is s_i B^{n-1-i}
    IntegralPoly G;
    G.c.resize(n + 1, fqpoly_zero(F));
    G.c[n] = fqpoly_constant(F->one());
    FqPoly Bp = fqpoly_constant(F->one());
    for (int i = n - 1; i >= 0; --i) {
        Bp = Bp * B;  // B^(n-i)
        // s_i * B^{n-i} is integral: den(s_i) | B
        QElem ci = s.coeff(i) * q_from_poly(Bp);
        if (!ci.is_polynomial()) throw std::logic_error("factor: denominator clearing failed");
        G.c[i] = ci.num();
    }
    std::vector<QPoly> fac = factor_integral_core(G, F);
    if (fac.size() == 1) return {s};
    // map back: h(x) = H(Bx) / B^deg(H), then make monic
    QElem Bq = q_from_poly(B);
    std::vector<QPoly> out;
    for (auto& H : fac) {
        std::vector<QElem> c;
        c.reserve(H.degree() + 1);
        QElem pw = q_one(F);
        for (int i = 0; i <= H.degree(); ++i) {
            c.push_back(H.coeff(i) * pw);
            pw = pw * Bq;
        }
        QPoly h(q_zero(F), std::move(c));
        out.push_back(h.monic());
    }
    return out;
}

void merge_factor(std::vector<std::pair<QPoly, int>>& acc, const QPoly& f, int mult) {
    for (auto& [g, m] : acc)
        if (g == f) {
            m += mult;
            return;
        }
    acc.emplace_back(f, mult);
}

void factor_monic_rec(const QPoly& f, int mult, const FqFieldPtr& F,
                      std::vector<std::pair<QPoly, int>>& acc) {
    if (f.degree() <= 0) return;
    int p = F->p();
    QPoly fp = f.derivative();
    if (fp.is_zero()) {
        QPoly g = contract_p(f, p);
        std::vector<std::pair<QPoly, int>> sub;
        factor_monic_rec(g, 1, F, sub);
        for (auto& [u, m] : sub) {
            // u(x^p) is either irreducible or v(x)^p with v = coefficientwise p-th root
            bool all_pth = true;
            for (int i = 0; i <= u.degree() && all_pth; ++i)
                all_pth = ratfunc_is_pth_power(u.coeff(i), p);
            if (all_pth) {
                std::vector<QElem> c;
                for (int i = 0; i <= u.degree(); ++i) c.push_back(ratfunc_pth_root(u.coeff(i), p));
                QPoly v(q_zero(F), std::move(c));
                factor_monic_rec(v, mult * m * p, F, acc);
            } else {
                // expand u(x^p)
                std::vector<QElem> c((size_t)u.degree() * p + 1, q_zero(F));
                for (int i = 0; i <= u.degree(); ++i) c[(size_t)i * p] = u.coeff(i);
                merge_factor(acc, QPoly(q_zero(F), std::move(c)), mult * m);
            }
        }
        return;
    }
    QPoly g = poly_gcd(f, fp);
    QPoly s = exact_div(f, g);  // squarefree and separable
    if (s.degree() > 0)
        for (auto& h : factor_squarefree_separable(s, F)) merge_factor(acc, h, mult);
    if (g.degree() > 0) factor_monic_rec(g, mult, F, acc);
}

} // namespace

QFactorization factor_over_function_field(const QPoly& f) {
    if (f.is_zero()) throw std::domain_error("factor_over_function_field: zero polynomial");
    const FqFieldPtr& F = f.zero_elem().zero_elem().field();
    QFactorization out{f.lc(), {}};
    if (f.degree() == 0) return out;
    // the recursion counts each irreducible's multiplicity via gcd peeling:
    // f = s * g with s the separable squarefree part; factors of g repeat
    // factors of s, so multiplicities accumulate through merge_factor.
    factor_monic_rec(f.monic(), 1, F, out.factors);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return qpoly_lex_less(a.first, b.first); });
    // verification: re-multiply
    QPoly prod = qpoly_constant(out.unit);
    for (auto& [g, m] : out.factors) prod = prod * g.pow(m);
    if (!(prod == f)) throw std::logic_error("factor_over_function_field: verification failed");
    return out;
}

QFactorization factor_bruteforce(const QPoly& f, long long trial_cap) {
    if (f.is_zero()) throw std::domain_error("factor_bruteforce: zero polynomial");
    const FqFieldPtr& F = f.zero_elem().zero_elem().field();
    QFactorization out{f.lc(), {}};
    if (f.degree() == 0) return out;
    QPoly s = f.monic();
    int n = s.degree();
    // clear denominators and monicize exactly as the main path does
    FqPoly B = fqpoly_constant(F->one());
    for (int i = 0; i < n; ++i) {
        const FqPoly& d = s.coeff(i).den();
        B = exact_div(B * d, poly_gcd(B, d));
    }
    std::vector<QElem> gc(n + 1, q_zero(F));
    gc[n] = q_one(F);
    {
        QElem Bq = q_from_poly(B);
        QElem pw = q_one(F);
        for (int i = n - 1; i >= 0; --i) {
            pw = pw * Bq;
            gc[i] = s.coeff(i) * pw;
            if (!gc[i].is_polynomial()) throw std::logic_error("factor_bruteforce: clearing failed");
        }
    }
    QPoly G(q_zero(F), gc);
    int Bt = 0;
    for (int i = 0; i <= n; ++i) Bt = std::max(Bt, G.coeff(i).num().degree());
    auto elems = F->all_elements();
    long long coeff_space = 1;
    for (int i = 0; i <= Bt; ++i) {
        coeff_space *= (long long)elems.size();
        if (coeff_space > trial_cap) throw std::domain_error("factor_bruteforce: space too large");
    }
    // peel smallest monic divisors with integral coefficients of t-degree <= Bt
    std::vector<QPoly> irr;
    QPoly rem = G;
    bool progress = true;
    while (rem.degree() > 1 && progress) {
        progress = false;
        for (int d = 1; d <= rem.degree() / 2 && !progress; ++d) {
            // enumerate d coefficients, each a t-polynomial of degree <= Bt
            long long total = 1;
            for (int i = 0; i < d; ++i) {
                total *= coeff_space;
                if (total > trial_cap) throw std::domain_error("factor_bruteforce: space too large");
            }
            std::vector<long long> ctr(d, 0);
            for (long long step = 0; step < total; ++step) {
                std::vector<QElem> cand(d + 1, q_zero(F));
                cand[d] = q_one(F);
                for (int i = 0; i < d; ++i) {
                    long long code = ctr[i];
                    std::vector<FqElem> cc;
                    for (int k = 0; k <= Bt; ++k) {
                        cc.push_back(elems[code % elems.size()]);
                        code /= (long long)elems.size();
                    }
                    cand[i] = q_from_poly(FqPoly(F->zero(), std::move(cc)));
                }
                QPoly h(q_zero(F), std::move(cand));
                if ((rem % h).is_zero()) {
                    irr.push_back(h);
                    rem = exact_div(rem, h);
                    progress = true;
                    break;
                }
                int i = 0;
                while (i < d && ++ctr[i] == coeff_space) ctr[i++] = 0;
                if (i == d) break;
            }
        }
    }
    if (rem.degree() > 0) irr.push_back(rem);
    // map back through the monicization and collect multiplicities
    QElem Bq = q_from_poly(B);
    for (auto& H : irr) {
        std::vector<QElem> c;
        QElem pw = q_one(F);
        for (int i = 0; i <= H.degree(); ++i) {
            c.push_back(H.coeff(i) * pw);
            pw = pw * Bq;
        }
        QPoly h = QPoly(q_zero(F), std::move(c)).monic();
        merge_factor(out.factors, h, 1);
    }
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return qpoly_lex_less(a.first, b.first); });
    QPoly prod = qpoly_constant(out.unit);
    for (auto& [g, m] : out.factors) prod = prod * g.pow(m);
    if (!(prod == f)) throw std::logic_error("factor_bruteforce: verification failed");
    return out;
}

bool is_squarefree_over_Q(const QPoly& f) {
    for (auto& [g, m] : factor_over_function_field(f).factors)
        if (m > 1) return false;
    return true;
}

QPoly power_min_poly(const QPoly& h, unsigned long long k) {
    if (h.degree() < 1 || !h.lc().is_one())
        throw std::domain_error("power_min_poly: h must be monic nonconstant");
    const FqFieldPtr& F = h.zero_elem().zero_elem().field();
    int n = h.degree();
    QPoly a = poly_powmod(qpoly_x(F), k, h);  // y^k mod h
    // Krylov from 1: first monic dependence of 1, a, a^2, ...
    std::vector<std::vector<QElem>> vecs;
    QPoly cur = QPoly::constant(q_zero(F), q_one(F));
    for (;;) {
        std::vector<QElem> v(n, q_zero(F));
        for (int i = 0; i <= cur.degree(); ++i) v[i] = cur.coeff(i);
        vecs.push_back(std::move(v));
        int cols = (int)vecs.size();
        Matrix<QElem> sys(n, cols, q_zero(F));
        for (int c2 = 0; c2 < cols; ++c2)
            for (int r2 = 0; r2 < n; ++r2) sys.at(r2, c2) = vecs[c2][r2];
        auto ker = sys.kernel_field();
        for (auto& kv : ker) {
            if (kv[cols - 1].is_zero()) continue;
            QElem inv = kv[cols - 1].inv();
            std::vector<QElem> cs(cols, q_zero(F));
            for (int i2 = 0; i2 < cols; ++i2) cs[i2] = kv[i2] * inv;
            return QPoly(q_zero(F), std::move(cs));
        }
        cur = (cur * a) % h;
        if ((int)vecs.size() > n + 1)
            throw std::logic_error("power_min_poly: no dependence found");
    }
}

QElem resultant(const QPoly& f, const QPoly& g) {
    const FqFieldPtr& F = f.zero_elem().zero_elem().field();
    int n = f.degree(), m = g.degree();
    if (n < 0 || m < 0) return q_zero(F);
    if (n == 0) return f.coeff(0).pow(m);
    if (m == 0) return g.coeff(0).pow(n);
    Matrix<QElem> syl(n + m, n + m, q_zero(F));
    for (int i = 0; i < m; ++i)
        for (int k = 0; k <= n; ++k) syl.at(i, i + k) = f.coeff(n - k);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k <= m; ++k) syl.at(m + i, i + k) = g.coeff(m - k);
    return syl.det_field();
}

} // namespace cmot
