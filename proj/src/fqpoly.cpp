#include "cmot/fqpoly.hpp"

#include <algorithm>

namespace cmot {

FqPoly fqpoly_zero(const FqFieldPtr& F) { return FqPoly(F->zero()); }

FqPoly fqpoly_x(const FqFieldPtr& F) {
    return FqPoly(F->zero(), {F->zero(), F->one()});
}

FqPoly fqpoly_from_ints(const FqFieldPtr& F, const std::vector<long long>& coeffs) {
    std::vector<FqElem> c;
    c.reserve(coeffs.size());
    for (long long v : coeffs) c.push_back(F->from_int(v));
    return FqPoly(F->zero(), std::move(c));
}

FqPoly fqpoly_constant(const FqElem& c) {
    return FqPoly::constant(c.field()->zero(), c);
}

FqPoly pow_pk_mod(const FqPoly& base, long k, const FqPoly& m) {
    int p = m.zero_elem().field()->p();
    FqPoly b = base % m;
    for (long s = 0; s < k; ++s) b = pow_mod(b, (unsigned long long)p, m);
    return b;
}

FqPoly pow_mod(const FqPoly& base, unsigned long long e, const FqPoly& m) {
    FqPoly acc = FqPoly::constant(m.zero_elem(), m.zero_elem().field()->one());
    FqPoly b = base % m;
    while (e > 0) {
        if (e & 1ULL) acc = (acc * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return acc;
}

bool is_irreducible(const FqPoly& f) {
    const FqFieldPtr& F = f.zero_elem().field();
    int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    long m = F->degree();  // |F| = p^m
    FqPoly x = fqpoly_x(F);
    FqPoly h = pow_pk_mod(x, m * n, f);
    if (!((h - x) % f).is_zero()) return false;
    int rem = n;
    auto check_level = [&](int l) {
        FqPoly hl = pow_pk_mod(x, m * (n / l), f);
        FqPoly g = poly_gcd(hl - x, f);
        return g.degree() == 0;
    };
    for (int l = 2; l * l <= rem; ++l) {
        if (rem % l) continue;
        while (rem % l == 0) rem /= l;
        if (!check_level(l)) return false;
    }
    if (rem > 1 && !check_level(rem)) return false;
    return true;
}

namespace {

// coefficient-wise p-th root (inverse Frobenius over a perfect field);
// requires every exponent divisible by p
FqPoly pth_root(const FqPoly& f) {
    const FqFieldPtr& F = f.zero_elem().field();
    int p = F->p(), m = F->degree();
    std::vector<FqElem> c;
    c.reserve(f.degree() / p + 1);
    for (int i = 0; i <= f.degree(); i += p) {
        for (int j = 1; j < p && i + j <= f.degree(); ++j)
            if (!f.coeff(i + j).is_zero())
                throw std::logic_error("pth_root: polynomial is not in F[x^p]");
        c.push_back(f.coeff(i).frobenius(m - 1));  // c^(p^(m-1)) = c^(1/p)
    }
    return FqPoly(F->zero(), std::move(c));
}

void sfd_rec(const FqPoly& f, int mult, std::vector<std::pair<FqPoly, int>>& out) {
    if (f.degree() <= 0) return;
    int p = f.zero_elem().field()->p();
    FqPoly fp = f.derivative();
    if (fp.is_zero()) {
        sfd_rec(pth_root(f), mult * p, out);
        return;
    }
    FqPoly g = poly_gcd(f, fp);
    FqPoly w = exact_div(f, g);
    int i = 1;
    while (w.degree() > 0) {
        FqPoly y = poly_gcd(w, g);
        FqPoly z = exact_div(w, y);
        if (z.degree() > 0) out.emplace_back(z.monic(), mult * i);
        w = y;
        g = exact_div(g, y);
        ++i;
    }
    // leftover g is a p-th power (all multiplicities divisible by p)
    sfd_rec(g, mult, out);
}

// random nonconstant polynomial of degree < dmax
FqPoly random_poly(const FqFieldPtr& F, int dmax, std::mt19937& rng) {
    std::vector<FqElem> c;
    c.reserve(dmax);
    int n = F->degree(), p = F->p();
    for (int i = 0; i < dmax; ++i) {
        std::vector<int> v(n);
        for (int j = 0; j < n; ++j) v[j] = (int)(rng() % (unsigned)p);
        c.push_back(F->element(std::move(v)));
    }
    return FqPoly(F->zero(), std::move(c));
}

// equal-degree splitting by F_p-traces: factors of f all have degree d
void edf_rec(const FqPoly& f, int d, std::mt19937& rng, std::vector<FqPoly>& out) {
    if (f.degree() == d) {
        out.push_back(f.monic());
        return;
    }
    const FqFieldPtr& F = f.zero_elem().field();
    int p = F->p();
    long m = F->degree();
    for (;;) {
        FqPoly h = random_poly(F, f.degree(), rng);
        if (h.degree() < 1) continue;
        // S = sum_{i<m*d} h^(p^i) mod f: the F_p-trace in each residue field
        FqPoly S = h % f;
        FqPoly cur = S;
        for (long i = 1; i < m * d; ++i) {
            cur = pow_pk_mod(cur, 1, f);
            S = (S + cur) % f;
        }
        std::vector<FqPoly> parts;
        FqPoly rest = f;
        for (int c = 0; c < p && rest.degree() > 0; ++c) {
            FqPoly g = poly_gcd(S - FqPoly::constant(F->zero(), F->from_int(c)), rest);
            if (g.degree() > 0) {
                parts.push_back(g);
                rest = exact_div(rest, g);
            }
        }
        if (rest.degree() > 0) parts.push_back(rest);
        if (parts.size() >= 2) {
            for (auto& g : parts) edf_rec(g, d, rng, out);
            return;
        }
    }
}

} // namespace

std::vector<std::pair<FqPoly, int>> squarefree_decomp_fq(const FqPoly& f) {
    if (f.is_zero()) throw std::domain_error("squarefree_decomp_fq: zero polynomial");
    std::vector<std::pair<FqPoly, int>> out;
    sfd_rec(f.monic(), 1, out);
    return out;
}

FqFactorization factor_fq(const FqPoly& f) {
    if (f.is_zero()) throw std::domain_error("factor_fq: zero polynomial");
    const FqFieldPtr& F = f.zero_elem().field();
    FqFactorization result;
    result.unit = f.lc();
    if (f.degree() == 0) return result;
    std::mt19937 rng(0xC001);
    long m = F->degree();
    for (auto& [sf, mult] : squarefree_decomp_fq(f)) {
        // distinct-degree splitting on the squarefree part
        FqPoly rest = sf;
        FqPoly x = fqpoly_x(F);
        FqPoly h = x % rest;
        int k = 0;
        while (rest.degree() > 0 && 2 * (k + 1) <= rest.degree()) {
            ++k;
            h = pow_pk_mod(h, m, rest);  // x^(|F|^k) mod rest
            FqPoly g = poly_gcd(h - x, rest);
            if (g.degree() > 0) {
                std::vector<FqPoly> irr;
                edf_rec(g, k, rng, irr);
                for (auto& u : irr) result.factors.emplace_back(u, mult);
                rest = exact_div(rest, g);
                h = h % rest;
            }
        }
        if (rest.degree() > 0) result.factors.emplace_back(rest.monic(), mult);
    }
    std::sort(result.factors.begin(), result.factors.end(),
              [](const auto& a, const auto& b) { return fqpoly_lex_less(a.first, b.first); });
    return result;
}

std::vector<FqElem> roots_in_field(const FqPoly& f) {
    if (f.is_zero()) throw std::domain_error("roots_in_field: zero polynomial");
    const FqFieldPtr& F = f.zero_elem().field();
    std::vector<FqElem> roots;
    if (f.degree() < 1) return roots;
    // gcd with x^|F| - x picks out the distinct roots lying in F
    FqPoly sf = f.monic();
    FqPoly d = sf.derivative();
    if (!d.is_zero()) sf = exact_div(sf, poly_gcd(sf, d));
    FqPoly x = fqpoly_x(F);
    FqPoly h = pow_pk_mod(x, F->degree(), sf);
    FqPoly lin = poly_gcd(h - x, sf);
    if (lin.degree() < 1) return roots;
    std::mt19937 rng(0xC002);
    std::vector<FqPoly> linear;
    edf_rec(lin, 1, rng, linear);
    roots.reserve(linear.size());
    for (auto& u : linear) roots.push_back(-u.coeff(0));
    std::sort(roots.begin(), roots.end(),
              [](const FqElem& a, const FqElem& b) { return a.lex_less(b); });
    return roots;
}

bool fqpoly_lex_less(const FqPoly& a, const FqPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i <= a.degree(); ++i) {
        if (a.coeff(i) == b.coeff(i)) continue;
        return a.coeff(i).lex_less(b.coeff(i));
    }
    return false;
}

std::vector<FqPoly> irreducibles_of_degree(const FqFieldPtr& F, int d, long long count) {
    if (d < 1) throw std::domain_error("irreducibles_of_degree: degree must be positive");
    std::vector<FqPoly> out;
    std::vector<FqElem> elems = F->all_elements();
    std::vector<size_t> idx(d, 0);
    for (;;) {
        std::vector<FqElem> c;
        c.reserve(d + 1);
        for (int i = 0; i < d; ++i) c.push_back(elems[idx[i]]);
        c.push_back(F->one());
        FqPoly f(F->zero(), std::move(c));
        if (is_irreducible(f)) {
            out.push_back(f);
            if (count > 0 && (long long)out.size() >= count) return out;
        }
        size_t i = 0;
        while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
        if (i == idx.size()) break;
    }
    return out;
}

} // namespace cmot
