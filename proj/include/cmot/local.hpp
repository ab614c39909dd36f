#ifndef CMOT_LOCAL_HPP
#define CMOT_LOCAL_HPP

#include <memory>

#include "fqpoly.hpp"
#include "places.hpp"

namespace cmot {

/// The finite local ring Omega[t]/(p_v(t)^N) for a coefficient field Omega
/// containing the image of F_q. Elements are reduced polynomial
/// representatives; units are exactly the elements nonzero mod p_v.
struct LocalCtx {
    FqFieldPtr omega;
    FqPoly pv;       // p_v with coefficients embedded into omega
    FqPoly modulus;  // pv^N
    int N;

    LocalCtx(FqFieldPtr om, FqPoly pv_embedded, int prec)
        : omega(std::move(om)), pv(std::move(pv_embedded)), modulus(pv.pow(prec)), N(prec) {}
};
using LocalCtxPtr = std::shared_ptr<const LocalCtx>;

class LElem {
public:
    LElem() = default;
    LElem(LocalCtxPtr C, FqPoly v) : C_(std::move(C)), v_(v % C_->modulus) {}

    const LocalCtxPtr& ctx() const { return C_; }
    const FqPoly& value() const { return v_; }

    bool is_zero() const { return v_.is_zero(); }
    bool is_unit() const { return !v_.is_zero() && !(v_ % C_->pv).is_zero(); }
    LElem one_like() const { return LElem(C_, fqpoly_constant(C_->omega->one())); }

    friend LElem operator+(const LElem& a, const LElem& b) { return LElem(a.C_, a.v_ + b.v_); }
    friend LElem operator-(const LElem& a, const LElem& b) { return LElem(a.C_, a.v_ - b.v_); }
    friend LElem operator-(const LElem& a) { return LElem(a.C_, -a.v_); }
    friend LElem operator*(const LElem& a, const LElem& b) { return LElem(a.C_, a.v_ * b.v_); }
    friend bool operator==(const LElem& a, const LElem& b) { return a.v_ == b.v_; }
    friend bool operator!=(const LElem& a, const LElem& b) { return !(a == b); }

    LElem inv() const {
        FqPoly g(C_->omega->zero()), s(C_->omega->zero()), t(C_->omega->zero());
        poly_ext_gcd(v_, C_->modulus, g, s, t);
        if (g.degree() != 0)
            throw std::domain_error("LElem: inverse of a non-unit");
        return LElem(C_, s.scaled(g.coeff(0).inv()));
    }

    /// largest k <= N with p_v^k dividing the element (N for zero)
    int pv_order() const {
        if (v_.is_zero()) return C_->N;
        int k = 0;
        FqPoly r = v_;
        for (;;) {
            FqPoly q(C_->omega->zero()), rem(C_->omega->zero());
            divmod(r, C_->pv, q, rem);
            if (!rem.is_zero()) break;
            r = q;
            ++k;
        }
        return k;
    }

private:
    LocalCtxPtr C_;
    FqPoly v_;
};

} // namespace cmot

#endif
