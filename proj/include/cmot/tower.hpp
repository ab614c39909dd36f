#ifndef CMOT_TOWER_HPP
#define CMOT_TOWER_HPP

#include <map>
#include <memory>
#include <optional>

#include "fq.hpp"
#include "places.hpp"

namespace cmot {

/// The chain F_p <= F_q <= L = F_{q^e} with its q-power Frobenius, plus
/// cached auxiliary working extensions F_{q^{em}}. F_q and L are presented
/// absolutely over F_p; the inclusion F_q -> L is the deterministic
/// least-root embedding (or is derived from explicit defining polynomials).
class FieldTower {
public:
    FieldTower(long long q, int e,
               std::optional<std::vector<int>> fq_def = std::nullopt,
               std::optional<std::vector<int>> l_def = std::nullopt,
               std::optional<FqElem> iota_gen_image = std::nullopt);

    int p() const { return p_; }
    int a() const { return a_; }           // q = p^a
    long long q() const { return q_; }
    int e() const { return e_; }           // [L : F_q]
    const FqFieldPtr& Fq() const { return Fq_; }
    const FqFieldPtr& L() const { return L_; }
    const Embedding& iota() const { return iota_; }  // F_q -> L

    /// q^k-power Frobenius on L.
    FqElem sigma(const FqElem& x, int k = 1) const;
    /// sigma applied to every coefficient of a rational function over L.
    QElem sigma_q(const QElem& f, int k = 1) const;

    /// Is x fixed by the q-power Frobenius (i.e. in the image of F_q)?
    bool sigma_fixed(const FqElem& x) const;
    /// Descend a Frobenius-fixed element of L to the canonical F_q.
    FqElem descend(const FqElem& x) const;

    /// Coordinates of x in the F_q-basis {1, g, ..., g^{e-1}} of L
    /// (coefficients in the canonical F_q).
    std::vector<FqElem> fq_coords(const FqElem& x) const;

    struct Ext {
        FqFieldPtr K;        // F_{q^{em}}
        Embedding from_L;    // L -> K
    };
    const Ext& extension(int m) const;  // cached, deterministic

    bool same(const FieldTower& other) const;

private:
    long long q_;
    int p_, a_, e_;
    FqFieldPtr Fq_, L_;
    Embedding iota_;
    mutable std::map<int, Ext> ext_cache_;
    mutable std::vector<std::vector<int>> coord_solver_;  // row-reduced basis matrix
};

} // namespace cmot

#endif
