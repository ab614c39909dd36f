#include "cmot/isogeny.hpp"

#include <algorithm>
#include <random>

#include "cmot/errors.hpp"
#include "cmot/printing.hpp"

namespace cmot {

namespace {

// clear the characteristic-place denominators out of tau: W * tau with
// W = (prod p_i)^s, s = max pole order
std::pair<Matrix<QElem>, int> clear_poles(const Motive& m) {
    const FieldTower& tw = m.tower();
    FqPoly prod = fqpoly_constant(tw.Fq()->one());
    for (auto& cp : m.chardata().finite()) prod = prod * cp.place.poly();
    FqPoly prodL = map_coeffs(prod, tw.L()->zero(),
                              [&](const FqElem& c) { return tw.iota().apply(c); });
    int s = 0;
    for (int i = 0; i < m.tau().rows(); ++i)
        for (int j = 0; j < m.tau().cols(); ++j) {
            const FqPoly& den = m.tau().at(i, j).den();
            if (den.degree() == 0) continue;
            // den divides prodL^k for some k; find the smallest
            int k = 0;
            FqPoly rest = den;
            while (rest.degree() > 0) {
                FqPoly g = poly_gcd(rest, prodL);
                if (g.degree() == 0) break;
                rest = exact_div(rest, g);
                ++k;
            }
            s = std::max(s, k);
        }
    QElem W = q_from_poly(prodL).pow(s);
    Matrix<QElem> cleared = m.tau().map([&](const QElem& f) { return f * W; },
                                        q_zero(tw.L()));
    for (int i = 0; i < cleared.rows(); ++i)
        for (int j = 0; j < cleared.cols(); ++j)
            if (!cleared.at(i, j).is_polynomial())
                throw std::logic_error("clear_poles: residual denominator");
    return {cleared, s};
}

int max_t_degree(const Matrix<QElem>& m) {
    int d = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            d = std::max(d, m.at(i, j).num().degree());
            d = std::max(d, m.at(i, j).den().degree());
        }
    return d;
}

// F_p-linear kernel of G -> G Ta - Tb sigma(G) over polynomial matrices of
// entry degree <= B; returns the kernel as matrices over L[t]
std::vector<Matrix<QElem>> solve_semilinear(const Motive& ma, const Matrix<QElem>& Ta,
                                            const Matrix<QElem>& Tb, int B) {
    const FieldTower& tw = ma.tower();
    const FqFieldPtr& L = tw.L();
    int p = L->p();
    int n = L->degree();  // a*e
    int rows_m = Tb.rows();
    int cols_m = Ta.cols();
    // unknowns: (u < rows_m, v < Ta.rows(), d <= B, j < n)
    int r_in = Ta.rows();
    int nunk = rows_m * r_in * (B + 1) * n;
    int degT = std::max(max_t_degree(Ta), max_t_degree(Tb));
    int nrows_t = B + degT + 1;
    int neq = rows_m * cols_m * nrows_t * n;
    std::vector<std::vector<int8_t>> A((size_t)neq, std::vector<int8_t>((size_t)nunk, 0));
    // basis element of unknowns: G = beta_j t^d E_{uv}
    std::vector<FqElem> basis;  // F_p-basis of L: coefficient unit vectors
    for (int j = 0; j < n; ++j) {
        std::vector<int> c(n, 0);
        c[j] = 1;
        basis.push_back(L->element(std::move(c)));
    }
    int col = 0;
    for (int u = 0; u < rows_m; ++u)
        for (int v = 0; v < r_in; ++v)
            for (int d = 0; d <= B; ++d)
                for (int j = 0; j < n; ++j, ++col) {
                    // row u of (G Ta): entry (u, w) = t^d beta_j Ta(v, w)
                    for (int w = 0; w < cols_m; ++w) {
                        const QElem& tv = Ta.at(v, w);
                        if (!tv.is_zero()) {
                            // polynomial: beta_j * num (den == 1 after clearing)
                            const FqPoly& num = tv.num();
                            for (int k = 0; k <= num.degree(); ++k) {
                                FqElem cc = basis[j] * num.coeff(k);
                                if (cc.is_zero()) continue;
                                int td = d + k;
                                for (int comp = 0; comp < n; ++comp) {
                                    int val = cc.coeffs()[comp];
                                    if (!val) continue;
                                    size_t row =
                                        (((size_t)u * cols_m + w) * nrows_t + td) * n + comp;
                                    A[row][col] = (int8_t)((A[row][col] + val) % p);
                                }
                            }
                        }
                        // minus Tb sigma(G): entry (w2=u row) ... rows of Tb times sigma(G)
                    }
                    // -(Tb sigma(G))(u2, v) with sigma(G) = beta_j^q t^d E_{uv}
                    FqElem bs = tw.sigma(basis[j]);
                    for (int u2 = 0; u2 < rows_m; ++u2) {
                        const QElem& tv = Tb.at(u2, u);
                        if (tv.is_zero()) continue;
                        const FqPoly& num = tv.num();
                        for (int k = 0; k <= num.degree(); ++k) {
                            FqElem cc = bs * num.coeff(k);
                            if (cc.is_zero()) continue;
                            int td = d + k;
                            for (int comp = 0; comp < n; ++comp) {
                                int val = cc.coeffs()[comp];
                                if (!val) continue;
                                size_t row = (((size_t)u2 * cols_m + v) * nrows_t + td) * n + comp;
                                A[row][col] = (int8_t)(((A[row][col] - val) % p + p) % p);
                            }
                        }
                    }
                }
    // kernel over F_p
    std::vector<int> pivot_of_col(nunk, -1);
    int row_count = 0;
    auto inv_mod_p = [p](int v) {
        int r = 1, e2 = p - 2, base = ((v % p) + p) % p;
        while (e2 > 0) {
            if (e2 & 1) r = r * base % p;
            base = base * base % p;
            e2 >>= 1;
        }
        return r;
    };
    for (int c2 = 0; c2 < nunk && row_count < neq; ++c2) {
        int piv = -1;
        for (int r2 = row_count; r2 < neq; ++r2)
            if (A[r2][c2]) { piv = r2; break; }
        if (piv < 0) continue;
        std::swap(A[row_count], A[piv]);
        int iv = inv_mod_p(A[row_count][c2]);
        if (iv != 1)
            for (int k = c2; k < nunk; ++k)
                A[row_count][k] = (int8_t)(A[row_count][k] * iv % p);
        for (int r2 = 0; r2 < neq; ++r2) {
            if (r2 == row_count || !A[r2][c2]) continue;
            int f = A[r2][c2];
            for (int k = c2; k < nunk; ++k)
                A[r2][k] = (int8_t)(((A[r2][k] - f * A[row_count][k]) % p + p) % p);
        }
        pivot_of_col[c2] = row_count;
        ++row_count;
    }
    std::vector<Matrix<QElem>> out;
    for (int c2 = 0; c2 < nunk; ++c2) {
        if (pivot_of_col[c2] >= 0) continue;
        // free column: kernel vector
        std::vector<int> y(nunk, 0);
        y[c2] = 1;
        for (int k = 0; k < nunk; ++k)
            if (pivot_of_col[k] >= 0) y[k] = (p - A[pivot_of_col[k]][c2]) % p;
        // rebuild the matrix over L[t]
        Matrix<QElem> G(rows_m, r_in, q_zero(L));
        int idx = 0;
        for (int u = 0; u < rows_m; ++u)
            for (int v = 0; v < r_in; ++v) {
                std::vector<FqElem> coeffs(B + 1, L->zero());
                for (int d = 0; d <= B; ++d) {
                    std::vector<int> cc(n, 0);
                    for (int j = 0; j < n; ++j) cc[j] = y[idx + d * n + j];
                    coeffs[d] = L->element(std::move(cc));
                }
                idx += (B + 1) * n;
                G.at(u, v) = q_from_poly(FqPoly(L->zero(), std::move(coeffs)));
            }
        out.push_back(std::move(G));
    }
    return out;
}

// flatten f (over L(t)) to a vector over Q via F_q-coordinates of L
std::vector<QElem> q_flatten(const FieldTower& tw, const Matrix<QElem>& f) {
    std::vector<QElem> out;
    int e = tw.e();
    out.reserve((size_t)f.rows() * f.cols() * e);
    for (int i = 0; i < f.rows(); ++i)
        for (int j = 0; j < f.cols(); ++j) {
            const QElem& x = f.at(i, j);
            // decompose numerator coefficientwise; denominator must be 1
            // (solver output is polynomial)
            if (!x.is_polynomial()) throw std::logic_error("q_flatten: non-polynomial entry");
            std::vector<QPoly> comps((size_t)e, QPoly(q_zero(tw.Fq())));
            for (int d = 0; d <= x.num().degree(); ++d) {
                auto coords = tw.fq_coords(x.num().coeff(d));
                for (int k = 0; k < e; ++k)
                    if (!coords[k].is_zero())
                        comps[k].set_coeff(d, QElem::constant(coords[k]));
            }
            // comps[k] built as Poly over QElem? simpler: collect polys over Fq
            for (int k = 0; k < e; ++k) {
                // comps[k] has QElem constants as coefficients of t^d; rebuild
                FqPoly g(tw.Fq()->zero());
                for (int d = 0; d <= comps[k].degree(); ++d) {
                    const QElem& cc = comps[k].coeff(d);
                    g.set_coeff(d, cc.is_zero() ? tw.Fq()->zero() : cc.num().coeff(0));
                }
                out.push_back(q_from_poly(g));
            }
        }
    return out;
}

// deterministic scaling to a canonical Q-multiple
Matrix<QElem> canonicalize_hom(const FieldTower& tw, const Matrix<QElem>& f) {
    // entries are polynomial over L; divide by the monic gcd of all the
    // F_q-component polynomials, then scale the first nonzero component monic
    FqPoly content(tw.Fq()->zero());
    bool have = false;
    std::vector<QElem> flat = q_flatten(tw, f);
    for (auto& comp : flat) {
        if (comp.is_zero()) continue;
        content = have ? poly_gcd(content, comp.num()) : comp.num().monic();
        have = true;
    }
    if (!have) return f;
    QElem scale = q_from_poly(content).inv();
    // make the first nonzero flattened component monic
    for (auto& comp : flat) {
        if (comp.is_zero()) continue;
        FqPoly lead = exact_div(comp.num(), content);
        scale = scale * QElem::constant(lead.lc().inv());
        break;
    }
    const FqFieldPtr& L = tw.L();
    QElem scaleL(QElem(map_coeffs(scale.num(), L->zero(),
                                  [&](const FqElem& c) { return tw.iota().apply(c); }),
                       map_coeffs(scale.den(), L->zero(),
                                  [&](const FqElem& c) { return tw.iota().apply(c); })));
    return f.map([&](const QElem& x) { return x * scaleL; }, q_zero(L));
}

// select a Q-basis among vectors by Gaussian elimination; returns indices
std::vector<int> q_select_basis(const FqFieldPtr& Fq, std::vector<std::vector<QElem>>& vecs) {
    std::vector<int> picked;
    if (vecs.empty()) return picked;
    size_t dim = vecs[0].size();
    std::vector<std::vector<QElem>> echelon;
    std::vector<size_t> pivots;
    for (size_t i = 0; i < vecs.size(); ++i) {
        std::vector<QElem> v = vecs[i];
        for (size_t r = 0; r < echelon.size(); ++r) {
            if (v[pivots[r]].is_zero()) continue;
            QElem f = v[pivots[r]];
            for (size_t k = 0; k < dim; ++k) v[k] = v[k] - f * echelon[r][k];
        }
        size_t pc = dim;
        for (size_t k = 0; k < dim; ++k)
            if (!v[k].is_zero()) { pc = k; break; }
        if (pc == dim) continue;
        QElem inv = v[pc].inv();
        for (size_t k = 0; k < dim; ++k) v[k] = v[k] * inv;
        echelon.push_back(std::move(v));
        pivots.push_back(pc);
        picked.push_back((int)i);
    }
    (void)Fq;
    return picked;
}

} // namespace

int tate_formula_value(const QPoly& chi, const QPoly& chip, const Place& v) {
    const FqFieldPtr& Fq = chi.zero_elem().zero_elem().field();
    (void)Fq;
    auto fac = factor_over_function_field(chi);
    auto facp = factor_over_function_field(chip);
    // all coefficients must be v-integral and the product of reductions of
    // the distinct factors squarefree
    ResidueField rf(v);
    auto reduce_ok = [&](const QPoly& f) {
        for (int i = 0; i <= f.degree(); ++i)
            if (!f.coeff(i).is_zero() && valuation(f.coeff(i), v) < 0) return false;
        return true;
    };
    if (!reduce_ok(chi) || !reduce_ok(chip))
        throw bad_auxiliary_place("coefficients not integral at " + place_str(v));
    std::vector<FqPoly> red, redp;
    for (auto& [h, m] : fac.factors) red.push_back(rf.reduce_poly(h));
    for (auto& [h, m] : facp.factors) redp.push_back(rf.reduce_poly(h));
    // the product of the distinct irreducible factors (chi and chi' may
    // share them) must stay squarefree mod v for the Hensel-block reading
    std::vector<QPoly> distinct;
    FqPoly rad = fqpoly_constant(rf.field()->one());
    for (auto* f : {&fac.factors, &facp.factors})
        for (auto& [h, m] : *f) {
            bool seen = false;
            for (auto& d : distinct)
                if (d == h) seen = true;
            if (!seen) {
                distinct.push_back(h);
                rad = rad * rf.reduce_poly(h);
            }
        }
    FqPoly drad = rad.derivative();
    if (drad.is_zero() || poly_gcd(rad, drad).degree() != 0)
        throw bad_auxiliary_place("reduction not squarefree at " + place_str(v));
    int total = 0;
    for (size_t i = 0; i < fac.factors.size(); ++i)
        for (size_t j = 0; j < facp.factors.size(); ++j) {
            FqPoly g = poly_gcd(red[i], redp[j]);
            total += fac.factors[i].second * facp.factors[j].second * g.degree();
        }
    return total;
}

int qhom_dim_formula(const Motive& m, const Motive& mp, const Place& v) {
    if (!m.tower().same(mp.tower()) || !m.chardata().same(mp.chardata()))
        throw chardata_mismatch("qhom_dim_formula: towers or characteristics differ");
    if (m.chardata().contains(v))
        throw bad_auxiliary_place("auxiliary place lies in the characteristic");
    auto sm = is_semisimple(m);
    auto smp = is_semisimple(mp);
    if (!sm.semisimple || !smp.semisimple)
        throw not_semisimple("qhom_dim_formula requires semisimple Frobenii");
    const auto& cd = m.char_data();
    const auto& cdp = mp.char_data();
    // separability of the irreducible factors over Q
    for (auto* fac : {&sm.mu_factors, &smp.mu_factors})
        for (auto& [h, mult] : *fac)
            if (h.derivative().is_zero())
                throw separability_violation("irreducible factor has vanishing derivative");
    return tate_formula_value(cd.chi, cdp.chi, v);
}

std::vector<Place> admissible_formula_places(const Motive& m, const Motive& mp, int count,
                                             int max_degree) {
    std::vector<Place> out;
    for (int d = 1; d <= max_degree && (int)out.size() < count; ++d) {
        for (auto& v : places_of_degree(m.tower().Fq(), d)) {
            if ((int)out.size() >= count) break;
            if (m.chardata().contains(v)) continue;
            try {
                qhom_dim_formula(m, mp, v);
                out.push_back(v);
            } catch (const Error& e) {
                if (e.code() != "BadAuxiliaryPlace") throw;
            }
        }
    }
    return out;
}

HomSpace hom_space(const Motive& m, const Motive& mp, HomBounds bounds) {
    if (!m.tower().same(mp.tower()) || !m.chardata().same(mp.chardata()))
        throw chardata_mismatch("hom_space: towers or characteristics differ");
    const FieldTower& tw = m.tower();
    auto [Ta, sa] = clear_poles(m);
    auto [Tb, sb] = clear_poles(mp);
    // equalize the clearing factor W^s on both sides
    FqPoly prod = fqpoly_constant(tw.Fq()->one());
    for (auto& cp : m.chardata().finite()) prod = prod * cp.place.poly();
    FqPoly prodL = map_coeffs(prod, tw.L()->zero(),
                              [&](const FqElem& c) { return tw.iota().apply(c); });
    int s = std::max(sa, sb);
    if (sa < s) Ta = Ta.map([&](const QElem& f) { return f * q_from_poly(prodL).pow(s - sa); },
                            q_zero(tw.L()));
    if (sb < s) Tb = Tb.map([&](const QElem& f) { return f * q_from_poly(prodL).pow(s - sb); },
                            q_zero(tw.L()));
    int degT = std::max(max_t_degree(m.tau()), max_t_degree(mp.tau()));
    int rmax = std::max(1, std::max(m.rank(), mp.rank()));
    int B = bounds.deg >= 0 ? bounds.deg : std::max(1, degT * rmax);
    int pole = bounds.pole >= 0 ? bounds.pole : s;
    int cap = bounds.cap;
    // formula early-exit target, when both sides are semisimple
    int target = -1;
    try {
        auto places = admissible_formula_places(m, mp, 1);
        if (!places.empty()) target = qhom_dim_formula(m, mp, places.front());
    } catch (const Error&) {
        target = -1;
    }
    int rank_cap = m.rank() * mp.rank();
    int prev_dim = -1;
    HomSpace out;
    for (;;) {
        // pole bound: multiply unknowns by prod^pole => solve with degree
        // bound B + pole * deg(prod), then divide
        int Bp = B + pole * prodL.degree();
        auto kernel = solve_semilinear(m, Ta, Tb, Bp);
        // Q-span dimension
        std::vector<std::vector<QElem>> flat;
        flat.reserve(kernel.size());
        for (auto& G : kernel) flat.push_back(q_flatten(tw, G));
        auto picked = q_select_basis(tw.Fq(), flat);
        int dim = (int)picked.size();
        out.used_deg = B;
        out.used_pole = pole;
        out.formula_value = target;
        if (dim == rank_cap || (target >= 0 && dim == target) || dim == prev_dim) {
            out.dim = dim;
            out.certificate = dim == rank_cap ? "rank-cap"
                              : (target >= 0 && dim == target) ? "formula"
                                                               : "stabilized";
            // each Q-line has a unique primitive polynomial representative;
            // the pole factor is absorbed by that normalization
            for (int idx : picked) out.basis.push_back(canonicalize_hom(tw, kernel[idx]));
            break;
        }
        prev_dim = dim;
        if (2 * B > cap)
            throw bound_exhausted("hom_space: degree bound cap " + std::to_string(cap) +
                                  " reached without stabilization");
        B *= 2;
        pole *= 2;
    }
    // exactness check on the returned basis
    for (auto& f : out.basis) {
        Matrix<QElem> lhs = f * m.tau();
        Matrix<QElem> rhs = mp.tau() * m.sigma_tau(f);
        if (!(lhs == rhs)) throw std::logic_error("hom_space: basis fails the intertwining");
    }
    return out;
}

SemisimpleReport is_semisimple(const Motive& m) {
    const auto& cd = m.char_data();
    auto fac = factor_over_function_field(cd.mu);
    bool ss = true;
    for (auto& [h, mult] : fac.factors)
        if (mult > 1) ss = false;
    return {ss, std::move(fac.factors)};
}

Matrix<QElem> isogeny_pseudo_inverse(const Matrix<QElem>& witness) {
    return witness.adjugate();
}

namespace {

std::optional<Matrix<QElem>> witness_search(const Motive& m, const Motive& mp,
                                            const HomSpace& hom, unsigned seed, int budget) {
    const FieldTower& tw = m.tower();
    if (m.rank() != mp.rank()) return std::nullopt;
    // deterministic sweep first
    for (auto& f : hom.basis)
        if (!f.det_field().is_zero()) return f;
    if (hom.basis.empty()) return std::nullopt;
    std::mt19937 rng(seed);
    auto elems = tw.Fq()->all_elements();
    QElem t = q_t(tw.L());
    for (int trial = 0; trial < budget; ++trial) {
        // random F_q-combination; from halfway, allow coefficients with a
        // random t-polynomial part so the search covers the Q-span
        Matrix<QElem> acc(m.rank(), m.rank(), q_zero(tw.L()));
        bool nonzero = false;
        for (auto& f : hom.basis) {
            FqElem c0 = elems[rng() % elems.size()];
            QElem c = QElem::constant(tw.iota().apply(c0));
            if (trial * 2 > budget) {
                FqElem c1 = elems[rng() % elems.size()];
                c = c + QElem::constant(tw.iota().apply(c1)) * t;
            }
            if (c.is_zero()) continue;
            nonzero = true;
            acc = acc + f.map([&](const QElem& x) { return x * c; }, q_zero(tw.L()));
        }
        if (!nonzero) continue;
        if (!acc.det_field().is_zero()) return acc;
    }
    return std::nullopt;
}

} // namespace

IsogenyResult is_quasi_isogenous(const Motive& m, const Motive& mp, unsigned seed) {
    if (!m.tower().same(mp.tower()) || !m.chardata().same(mp.chardata()))
        throw chardata_mismatch("is_quasi_isogenous: towers or characteristics differ");
    IsogenyResult res;
    res.seed = seed;
    auto sm = is_semisimple(m);
    auto smp = is_semisimple(mp);
    if (sm.semisimple && smp.semisimple) {
        if (!(m.char_data().chi == mp.char_data().chi)) {
            res.verdict = IsogenyResult::No;
            res.reason = "chi mismatch";
            return res;
        }
        HomSpace hom = hom_space(m, mp);
        auto w = witness_search(m, mp, hom, seed, 200);
        if (w) {
            res.verdict = IsogenyResult::Yes;
            res.witness = *w;
            res.reason = "equal characteristic polynomials (semisimple)";
            return res;
        }
        res.verdict = IsogenyResult::Unknown;
        res.reason = "witness search budget exhausted despite equal chi";
        return res;
    }
    // non-semisimple: attempt both directions, return Unknown on failure
    try {
        HomSpace hom = hom_space(m, mp);
        auto w = witness_search(m, mp, hom, seed, 200);
        if (w) {
            // require an inverse-side witness too before claiming Yes
            HomSpace back = hom_space(mp, m);
            auto wb = witness_search(mp, m, back, seed + 1, 200);
            if (wb) {
                res.verdict = IsogenyResult::Yes;
                res.witness = *w;
                res.reason = "invertible elements found in both Hom spaces";
                return res;
            }
        }
    } catch (const Error& e) {
        res.verdict = IsogenyResult::Unknown;
        res.reason = std::string("bound exhausted: ") + e.what();
        return res;
    }
    res.verdict = IsogenyResult::Unknown;
    res.reason = "no invertible element found within the search budget";
    return res;
}

EndoReport endomorphism_report(const Motive& m, HomBounds bounds) {
    EndoReport rep;
    rep.rank = m.rank();
    auto sm = is_semisimple(m);
    rep.semisimple = sm.semisimple;
    rep.mu_factors = sm.mu_factors;
    rep.h = m.char_data().mu.degree();
    rep.F_is_field = rep.mu_factors.size() == 1 && rep.mu_factors[0].second == 1;
    rep.end_space = hom_space(m, m, bounds);
    rep.dim_e = rep.end_space.dim;
    rep.h_divides_r = rep.h > 0 && rep.rank % rep.h == 0;
    rep.dim_matches_r2_over_h = rep.F_is_field && rep.h_divides_r &&
                                rep.dim_e * rep.h == rep.rank * rep.rank;
    rep.bounds_ok = rep.rank <= rep.dim_e && rep.dim_e <= rep.rank * rep.rank;
    // commutativity on the computed basis
    rep.commutative = true;
    for (size_t i = 0; i < rep.end_space.basis.size() && rep.commutative; ++i)
        for (size_t j = i + 1; j < rep.end_space.basis.size() && rep.commutative; ++j) {
            const auto& a = rep.end_space.basis[i];
            const auto& b = rep.end_space.basis[j];
            if (!(a * b == b * a)) rep.commutative = false;
        }
    rep.cm = rep.dim_e == rep.rank && rep.commutative;
    if (rep.dim_e == rep.rank && rep.commutative)
        rep.extreme_case = "E=F";
    else if (rep.h == 1 && rep.dim_e == rep.rank * rep.rank)
        rep.extreme_case = "F=Q";
    else
        rep.extreme_case = "none";
    return rep;
}

} // namespace cmot
