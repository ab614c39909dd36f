#ifndef CMOT_POLY_HPP
#define CMOT_POLY_HPP

#include <cassert>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cmot {

/// Dense univariate polynomial over a coefficient field/ring K.
/// K must provide: +, -, unary -, *, ==, is_zero(), and inv() where field
/// division is used. An exemplar zero of K is kept so the zero polynomial
/// still knows its coefficient domain.
template <typename K>
class Poly {
public:
    explicit Poly(K zero) : z_(std::move(zero)) {}
    Poly(K zero, std::vector<K> coeffs) : z_(std::move(zero)), c_(std::move(coeffs)) {
        trim();
    }

    static Poly zero(const K& z) { return Poly(z); }
    static Poly constant(const K& z, const K& a) {
        Poly r(z);
        if (!a.is_zero()) r.c_.push_back(a);
        return r;
    }
    static Poly one(const K& z, const K& one_elem) { return constant(z, one_elem); }
    /// c * x^d
    static Poly monomial(const K& z, const K& c, int d) {
        Poly r(z);
        if (!c.is_zero()) {
            r.c_.assign(d + 1, z);
            r.c_[d] = c;
        }
        return r;
    }

    const K& zero_elem() const { return z_; }
    int degree() const { return (int)c_.size() - 1; }  // -1 for zero poly
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    bool is_unit() const { return degree() == 0; }
    Poly one_like() const { return constant(z_, z_.one_like()); }

    const K& coeff(int i) const {
        if (i < 0 || i >= (int)c_.size()) return z_;
        return c_[i];
    }
    const K& lc() const {
        assert(!c_.empty());
        return c_.back();
    }
    const std::vector<K>& coeffs() const { return c_; }

    void set_coeff(int i, const K& v) {
        if (i >= (int)c_.size()) {
            if (v.is_zero()) return;
            c_.resize(i + 1, z_);
        }
        c_[i] = v;
        trim();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly r(a.z_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.z_);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff((int)i) + b.coeff((int)i);
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly r(a.z_);
        r.c_.resize(std::max(a.c_.size(), b.c_.size()), a.z_);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff((int)i) - b.coeff((int)i);
        r.trim();
        return r;
    }
    friend Poly operator-(const Poly& a) {
        Poly r(a.z_);
        r.c_.reserve(a.c_.size());
        for (auto& x : a.c_) r.c_.push_back(-x);
        return r;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly r(a.z_);
        if (a.is_zero() || b.is_zero()) return r;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, a.z_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
        }
        r.trim();
        return r;
    }
    Poly scaled(const K& s) const {
        Poly r(z_);
        if (s.is_zero()) return r;
        r.c_.reserve(c_.size());
        for (auto& x : c_) r.c_.push_back(x * s);
        r.trim();
        return r;
    }
    friend bool operator==(const Poly& a, const Poly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Division with remainder; requires lc(divisor) invertible.
    friend void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        q = Poly(a.z_);
        r = a;
        K lcb_inv = b.lc().inv();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int d = r.degree() - b.degree();
            K f = r.lc() * lcb_inv;
            q.set_coeff(d, q.coeff(d) + f);
            // r -= f * x^d * b
            for (int i = 0; i <= b.degree(); ++i)
                r.c_[i + d] = r.c_[i + d] - f * b.c_[i];
            r.trim();
        }
    }
    friend Poly operator/(const Poly& a, const Poly& b) {
        Poly q(a.z_), r(a.z_);
        divmod(a, b, q, r);
        return q;
    }
    friend Poly operator%(const Poly& a, const Poly& b) {
        Poly q(a.z_), r(a.z_);
        divmod(a, b, q, r);
        return r;
    }
    /// Exact division; throws if the remainder is nonzero.
    friend Poly exact_div(const Poly& a, const Poly& b) {
        Poly q(a.z_), r(a.z_);
        divmod(a, b, q, r);
        if (!r.is_zero()) throw std::domain_error("Poly: exact_div has remainder");
        return q;
    }

    Poly monic() const {
        assert(!is_zero());
        return scaled(lc().inv());
    }

    Poly derivative() const {
        Poly r(z_);
        for (int i = 1; i <= degree(); ++i) {
            // i * c_i computed by repeated addition (char p safe)
            K s = z_;
            for (int k = 0; k < i; ++k) s = s + c_[i];
            r.set_coeff(i - 1, s);
        }
        return r;
    }

    K eval(const K& x) const {
        K acc = z_;
        for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
        return acc;
    }

    /// Evaluate in any K-algebra V given the image of x and the K-action.
    /// mul: V x V -> V, add: V x V -> V, scal: K x V -> V, one_v: V.
    template <typename V, typename Mul, typename Add, typename Scal>
    V eval_generic(const V& x, const V& one_v, Mul mul, Add add, Scal scal) const {
        V acc = scal(z_, one_v);  // zero of V
        for (int i = degree(); i >= 0; --i) acc = add(mul(acc, x), scal(c_[i], one_v));
        return acc;
    }

    /// Substitute another polynomial for x.
    Poly compose(const Poly& g) const {
        Poly acc(z_);
        for (int i = degree(); i >= 0; --i) acc = acc * g + constant(z_, c_[i]);
        return acc;
    }

    Poly pow(long long e) const {
        assert(e >= 0);
        Poly base = *this;
        Poly r(z_);
        r.c_.push_back(lc_one());
        while (e > 0) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

    /// Reverse coefficients: x^deg * f(1/x).
    Poly reversed() const {
        Poly r(z_);
        r.c_.assign(c_.rbegin(), c_.rend());
        r.trim();
        return r;
    }

private:
    K z_;
    std::vector<K> c_;

    K lc_one() const {
        // one of K obtained from an invertible coefficient or from exemplar
        if (!c_.empty()) return c_.back() * c_.back().inv();
        throw std::domain_error("Poly::pow of zero polynomial base needs one()");
    }

    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
};

/// base^e mod m (m with invertible leading coefficient), machine exponent.
template <typename K>
Poly<K> poly_powmod(const Poly<K>& base, unsigned long long e, const Poly<K>& m) {
    Poly<K> acc = Poly<K>::constant(m.zero_elem(), m.zero_elem().one_like());
    Poly<K> b = base % m;
    while (e > 0) {
        if (e & 1ULL) acc = (acc * b) % m;
        e >>= 1;
        if (e) b = (b * b) % m;
    }
    return acc;
}

/// Monic gcd over a field.
template <typename K>
Poly<K> poly_gcd(Poly<K> a, Poly<K> b) {
    while (!b.is_zero()) {
        Poly<K> r = a % b;
        a = b;
        b = r;
    }
    if (a.is_zero()) return a;
    return a.monic();
}

/// Extended gcd: returns (g, s, t) monic with s*a + t*b = g.
template <typename K>
void poly_ext_gcd(const Poly<K>& a, const Poly<K>& b, Poly<K>& g, Poly<K>& s, Poly<K>& t) {
    const K& z = a.zero_elem();
    Poly<K> r0 = a, r1 = b;
    Poly<K> s0 = Poly<K>(z), s1 = Poly<K>(z), t0 = Poly<K>(z), t1 = Poly<K>(z);
    if (!a.is_zero()) s0 = Poly<K>::constant(z, a.lc() * a.lc().inv());
    else if (!b.is_zero()) s0 = Poly<K>::constant(z, b.lc() * b.lc().inv() - b.lc() * b.lc().inv());
    // s0 = 1, t1 = 1 below; need a one element
    K one;
    if (!a.is_zero()) one = a.lc() * a.lc().inv();
    else if (!b.is_zero()) one = b.lc() * b.lc().inv();
    else throw std::domain_error("poly_ext_gcd(0,0)");
    s0 = Poly<K>::constant(z, one);
    t1 = Poly<K>::constant(z, one);
    while (!r1.is_zero()) {
        Poly<K> q(z), r(z);
        divmod(r0, r1, q, r);
        Poly<K> s2 = s0 - q * s1;
        Poly<K> t2 = t0 - q * t1;
        r0 = r1; r1 = r;
        s0 = s1; s1 = s2;
        t0 = t1; t1 = t2;
    }
    // normalize monic
    K c = r0.lc().inv();
    g = r0.scaled(c);
    s = s0.scaled(c);
    t = t0.scaled(c);
}

} // namespace cmot

#endif
