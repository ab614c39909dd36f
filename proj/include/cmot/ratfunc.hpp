#ifndef CMOT_RATFUNC_HPP
#define CMOT_RATFUNC_HPP

#include "poly.hpp"

namespace cmot {

/// Reduced fraction of polynomials over a field K: gcd(num, den) = 1 and
/// den monic. The canonical form is unique.
template <typename K>
class RatFunc {
public:
    explicit RatFunc(const K& zero)
        : num_(Poly<K>(zero)), den_(Poly<K>::constant(zero, zero.one_like())) {}
    RatFunc(Poly<K> num, Poly<K> den) : num_(std::move(num)), den_(std::move(den)) {
        reduce();
    }
    static RatFunc from_poly(Poly<K> p) {
        K z = p.zero_elem();
        return RatFunc(std::move(p), Poly<K>::constant(z, z.one_like()));
    }
    static RatFunc constant(const K& c) {
        return from_poly(Poly<K>::constant(c - c, c));
    }

    const Poly<K>& num() const { return num_; }
    const Poly<K>& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_unit() const { return !is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }
    bool is_one() const { return den_.degree() == 0 && num_.degree() == 0 && !num_.is_zero() && num_.coeff(0).is_one(); }
    const K& zero_elem() const { return num_.zero_elem(); }

    RatFunc one_like() const {
        K z = zero_elem();
        return from_poly(Poly<K>::constant(z, z.one_like()));
    }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num_, a.den_); }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFunc inv() const {
        if (is_zero()) throw std::domain_error("RatFunc: inverse of zero");
        return RatFunc(den_, num_);
    }
    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

    RatFunc pow(long long e) const {
        if (e < 0) return inv().pow(-e);
        RatFunc r = one_like();
        RatFunc base = *this;
        while (e > 0) {
            if (e & 1) r = r * base;
            e >>= 1;
            if (e) base = base * base;
        }
        return r;
    }

private:
    Poly<K> num_, den_;

    void reduce() {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        if (num_.is_zero()) {
            den_ = Poly<K>::constant(num_.zero_elem(), num_.zero_elem().one_like());
            return;
        }
        Poly<K> g = poly_gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        K lc_inv = den_.lc().inv();
        num_ = num_.scaled(lc_inv);
        den_ = den_.scaled(lc_inv);
    }
};

} // namespace cmot

#endif
