#ifndef CMOT_ISOGENY_HPP
#define CMOT_ISOGENY_HPP

#include <optional>
#include <string>
#include <vector>

#include "motive.hpp"
#include "qalg.hpp"

namespace cmot {

struct HomBounds {
    int deg = -1;        // initial numerator degree bound (-1: heuristic start)
    int pole = -1;       // initial pole-order bound at the characteristic
    int cap = 64;        // hard cap on the degree bound
    unsigned seed = 0;   // seed for randomized witness searches downstream
};

/// Q-basis of QHom(M, M') within certified bounds: r' x r matrices over A_L
/// with f T = T' sigma(f).
struct HomSpace {
    int dim = 0;
    std::vector<Matrix<QElem>> basis;
    int used_deg = 0;
    int used_pole = 0;
    std::string certificate;  // "stabilized" | "formula" | "rank-cap"
    int formula_value = -1;   // Tate-formula dimension when available
};

HomSpace hom_space(const Motive& m, const Motive& mp, HomBounds bounds = {});

/// Sum over common Q_v-irreducible factors of chi, chi' of m_mu m'_mu deg mu,
/// read off from squarefree reductions mod v (Hensel blocks).
int qhom_dim_formula(const Motive& m, const Motive& mp, const Place& v);

/// First auxiliary places (deterministic order) at which the formula applies.
std::vector<Place> admissible_formula_places(const Motive& m, const Motive& mp,
                                             int count, int max_degree = 4);

struct SemisimpleReport {
    bool semisimple;
    std::vector<std::pair<QPoly, int>> mu_factors;
};
SemisimpleReport is_semisimple(const Motive& m);

struct IsogenyResult {
    enum Verdict { Yes, No, Unknown } verdict;
    std::optional<Matrix<QElem>> witness;  // over A_L, f T = T' sigma(f), det != 0
    std::string reason;
    unsigned seed = 0;
};

IsogenyResult is_quasi_isogenous(const Motive& m, const Motive& mp, unsigned seed = 0);

/// Pseudo-inverse pair of a quasi-isogeny witness: f_check = adj(f) with
/// f_check f = det(f) id; det(f) lies in A.
Matrix<QElem> isogeny_pseudo_inverse(const Matrix<QElem>& witness);

struct EndoReport {
    int rank = 0;
    int h = 0;            // deg mu
    bool semisimple = false;
    bool F_is_field = false;  // mu irreducible
    int dim_e = 0;        // dim_Q End
    bool h_divides_r = false;
    bool dim_matches_r2_over_h = false;  // only meaningful when F is a field
    bool bounds_ok = false;              // r <= dim <= r^2
    bool commutative = false;
    bool cm = false;                     // dim == r and commutative
    std::string extreme_case;            // "E=F" | "F=Q" | "none"
    std::vector<std::pair<QPoly, int>> mu_factors;
    HomSpace end_space;
};
EndoReport endomorphism_report(const Motive& m, HomBounds bounds = {});

/// Tate-formula value without semisimplicity preconditions (used by the
/// acceptance suite to test the equivalence both ways).
int tate_formula_value(const QPoly& chi, const QPoly& chip, const Place& v);

} // namespace cmot

#endif
