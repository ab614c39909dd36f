#ifndef CMOT_REALIZATION_HPP
#define CMOT_REALIZATION_HPP

#include "local.hpp"
#include "motive.hpp"
#include "series.hpp"

namespace cmot {

/// Crystalline realization at a place: tau^{deg v} reduced at the component
/// of the lexicographically least root of p_v, as a matrix of truncated
/// (Laurent) series in the uniformizer z = p_v(t) (z = 1/t at infinity).
struct LocalCrystal {
    Place v;
    int N;
    FqFieldPtr working_field;  // F_{q^{lcm(deg v, e)}}
    FqElem component;          // chosen root of p_v (zero at infinity)
    Matrix<Series<FqElem>> tau_red;
    bool etale;
    long det_order;

    LocalCrystal(Place vv, int prec, FqFieldPtr K, FqElem comp,
                 Matrix<Series<FqElem>> red, bool et, long ord)
        : v(std::move(vv)), N(prec), working_field(std::move(K)), component(std::move(comp)),
          tau_red(std::move(red)), etale(et), det_order(ord) {}
};

LocalCrystal crystalline(const Motive& m, const Place& v, int N,
                         int component_index = 0);

/// Tate module at v outside the characteristic: an A_v/z^N-basis of the
/// tau-fixed points of the completed module with coefficients extended to
/// Omega = F_{q^{em}}, plus the matrix of Frob_L on that basis over
/// F_q[t]/(p_v^N).
struct TateLattice {
    Place v;
    int N;
    int m;  // splitting-field degree: Omega = F_{q^{em}}
    FqFieldPtr omega;
    LocalCtxPtr ring;     // Omega[t]/(p_v^N)
    Matrix<LElem> basis;  // columns are the solutions
    LocalCtxPtr frob_ring;
    Matrix<LElem> frob;
    bool chi_identity_ok;  // chi(frob^{-1}) = 0 mod z^N (verified)

    TateLattice(Place vv, int prec, int mm, FqFieldPtr om, LocalCtxPtr rg,
                Matrix<LElem> bs, LocalCtxPtr fr, Matrix<LElem> fb, bool ok)
        : v(std::move(vv)), N(prec), m(mm), omega(std::move(om)), ring(std::move(rg)),
          basis(std::move(bs)), frob_ring(std::move(fr)), frob(std::move(fb)),
          chi_identity_ok(ok) {}
};

struct TateOptions {
    int extension_cap = 256;  // cap on the splitting-field degree m
};

TateLattice tate_module(const Motive& m, const Place& v, int N, TateOptions opt = {});

/// Tate lattice of the i-th exterior power (rank 0 when i > rank).
TateLattice etale_cohomology(const Motive& m, const Place& v, int i, int N,
                             TateOptions opt = {});

/// Teichmueller digits of an element of F_q[t]/(p_v^N): residue-field
/// coefficients c_k with x = sum c_k z^k, z = p_v.
std::vector<FqElem> teichmuller_digits(const ResidueField& rf, const FqPoly& x, int N);
/// Inverse: assemble sum Teich(c_k) p_v^k mod p_v^N.
FqPoly from_teichmuller_digits(const ResidueField& rf, const std::vector<FqElem>& digits,
                               int N);

/// Zeta function as a reduced rational function in u over Q, computed from
/// the exterior powers of the global Frobenius.
struct ZetaFunction {
    QPoly num;  // in u
    QPoly den;
};
ZetaFunction zeta(const Motive& m, bool include_h0 = true);

} // namespace cmot

#endif
