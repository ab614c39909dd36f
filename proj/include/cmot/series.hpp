#ifndef CMOT_SERIES_HPP
#define CMOT_SERIES_HPP

#include <stdexcept>
#include <vector>

namespace cmot {

/// Truncated Laurent series over a field K: sum of c[i] * z^(ord+i) known
/// exactly for exponents < prec. Arithmetic is exact modulo z^prec and the
/// order bookkeeping is exact for units; comparisons beyond the tracked
/// precision are refused.
template <typename K>
class Series {
public:
    Series(const K& zero, int prec) : z_(zero), ord_(prec), prec_(prec) {}
    Series(const K& zero, int ord, int prec, std::vector<K> coeffs)
        : z_(zero), ord_(ord), prec_(prec), c_(std::move(coeffs)) {
        normalize();
    }
    static Series from_coeff(const K& c, int exponent, int prec) {
        Series s(c - c, prec);
        if (exponent < prec) {
            s.ord_ = exponent;
            s.c_ = {c};
            s.normalize();
        }
        return s;
    }

    const K& zero_elem() const { return z_; }
    int prec() const { return prec_; }
    /// Order of the leading known coefficient; equals prec() when the series
    /// is indistinguishable from 0 at this precision.
    int order() const { return ord_; }
    bool known_zero() const { return c_.empty(); }
    bool known_nonzero() const { return !c_.empty(); }

    // coefficient-domain protocol (zero means: zero at tracked precision)
    bool is_zero() const { return known_zero(); }
    bool is_unit() const { return known_nonzero() && ord_ == 0; }
    Series one_like() const { return from_coeff(z_.one_like(), 0, prec_); }
    friend bool operator==(const Series& a, const Series& b) {
        return a.agrees(b, std::min(a.prec_, b.prec_));
    }

    K coeff(int exponent) const {
        if (exponent >= prec_) throw std::domain_error("Series: coefficient beyond precision");
        if (exponent < ord_ || exponent - ord_ >= (int)c_.size()) return z_;
        return c_[exponent - ord_];
    }

    friend Series operator+(const Series& a, const Series& b) {
        int prec = std::min(a.prec_, b.prec_);
        int lo = std::min(a.ord_, b.ord_);
        if (lo >= prec) return Series(a.z_, prec);
        std::vector<K> c(prec - lo, a.z_);
        for (int e = lo; e < prec; ++e) {
            K v = a.safe_coeff(e) + b.safe_coeff(e);
            c[e - lo] = v;
        }
        return Series(a.z_, lo, prec, std::move(c));
    }
    friend Series operator-(const Series& a, const Series& b) { return a + (-b); }
    friend Series operator-(const Series& a) {
        std::vector<K> c;
        c.reserve(a.c_.size());
        for (auto& x : a.c_) c.push_back(-x);
        return Series(a.z_, a.ord_, a.prec_, std::move(c));
    }
    friend Series operator*(const Series& a, const Series& b) {
        // known-zero operands only bound the order from below
        int prec = std::min(a.prec_ + b.ord_, b.prec_ + a.ord_);
        if (a.c_.empty() || b.c_.empty()) return Series(a.z_, prec);
        int lo = a.ord_ + b.ord_;
        if (lo >= prec) return Series(a.z_, prec);
        std::vector<K> c(prec - lo, a.z_);
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i].is_zero()) continue;
            int ea = a.ord_ + (int)i;
            for (size_t j = 0; j < b.c_.size(); ++j) {
                int e = ea + b.ord_ + (int)j;
                if (e >= prec) break;
                c[e - lo] = c[e - lo] + a.c_[i] * b.c_[j];
            }
        }
        return Series(a.z_, lo, prec, std::move(c));
    }

    /// Multiplicative inverse; requires a known nonzero leading coefficient.
    Series inv() const {
        if (c_.empty()) throw std::domain_error("Series: inverse of (apparent) zero");
        if (c_[0].is_zero()) throw std::logic_error("Series: unnormalized");
        int rel = prec_ - ord_;  // relative precision
        // invert the unit part u = c0 + c1 z + ... by long division
        std::vector<K> u(rel, z_), v(rel, z_);
        for (int i = 0; i < rel && i < (int)c_.size(); ++i) u[i] = c_[i];
        K c0i = u[0].inv();
        for (int i = 0; i < rel; ++i) {
            K acc = (i == 0) ? u[0].one_like() : z_;
            for (int j = 0; j < i; ++j) acc = acc - u[i - j] * v[j];
            v[i] = acc * c0i;
        }
        return Series(z_, -ord_, rel - ord_, std::move(v));
    }

    Series truncated(int new_prec) const {
        if (new_prec > prec_) throw std::domain_error("Series: cannot raise precision");
        std::vector<K> c;
        for (int e = ord_; e < new_prec && e - ord_ < (int)c_.size(); ++e) c.push_back(c_[e - ord_]);
        return Series(z_, ord_, new_prec, std::move(c));
    }

    /// Equality of all coefficients below min(prec, other.prec, bound).
    bool agrees(const Series& b, int bound) const {
        int prec = std::min({prec_, b.prec_, bound});
        if (bound > std::min(prec_, b.prec_))
            throw std::domain_error("Series: comparison beyond tracked precision");
        int lo = std::min(ord_, b.ord_);
        for (int e = lo; e < prec; ++e)
            if (!(safe_coeff(e) == b.safe_coeff(e))) return false;
        return true;
    }

private:
    K z_;
    int ord_;
    int prec_;
    std::vector<K> c_;  // c_[i] = coeff of z^(ord_+i)

    K safe_coeff(int e) const {
        if (e < ord_ || e - ord_ >= (int)c_.size()) return z_;
        return c_[e - ord_];
    }

    void normalize() {
        // drop leading zeros, clip to precision
        size_t skip = 0;
        while (skip < c_.size() && c_[skip].is_zero()) ++skip;
        if (skip) {
            c_.erase(c_.begin(), c_.begin() + skip);
            ord_ += (int)skip;
        }
        if (ord_ >= prec_) {
            c_.clear();
            ord_ = prec_;
            return;
        }
        if ((int)c_.size() > prec_ - ord_) c_.resize(prec_ - ord_, z_);
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
        if (c_.empty()) ord_ = prec_;
    }
};

} // namespace cmot

#endif
