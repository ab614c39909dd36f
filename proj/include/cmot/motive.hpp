#ifndef CMOT_MOTIVE_HPP
#define CMOT_MOTIVE_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "tower.hpp"

namespace cmot {

/// One finite characteristic place with its section point theta in L.
struct CharPlace {
    Place place;
    FqElem theta;
};

/// The tuple of characteristic places: finitely many finite places plus the
/// mandatory place at infinity (always last, carried implicitly).
class CharacteristicData {
public:
    CharacteristicData(const FieldTower& tower, std::vector<CharPlace> finite);

    const std::vector<CharPlace>& finite() const { return finite_; }
    int n() const { return (int)finite_.size() + 1; }  // including infinity
    bool contains(const Place& v) const;               // finite member or infinity
    bool same(const CharacteristicData& other) const;

private:
    std::vector<CharPlace> finite_;
};

enum class ValidationMode { IiPrime, Ii, Relaxed };
std::string mode_str(ValidationMode m);
ValidationMode mode_from_str(const std::string& s);

struct ValidationReport {
    bool ok = false;
    ValidationMode mode = ValidationMode::IiPrime;
    // net multiplicity of (t - theta_i^{q^j}) in det tau, per finite place
    struct Mult {
        int place_index;
        int conj;  // j
        long mult;
    };
    std::vector<Mult> multiplicities;
    std::vector<std::string> offending;  // factors outside the allowed locus
    long k(int place_index, int conj = 0) const;
};

/// A C-motive on P^1 presented by its A-motive part: a free module of rank r
/// over A_L with tau given by an r x r matrix over L(t) whose poles lie over
/// the finite characteristic places.
class Motive {
public:
    Motive(FieldTower tower, CharacteristicData chardata, Matrix<QElem> tau,
           ValidationMode mode, bool allow_relax = false);

    const FieldTower& tower() const { return tower_; }
    const CharacteristicData& chardata() const { return chardata_; }
    int rank() const { return tau_.rows(); }
    const Matrix<QElem>& tau() const { return tau_; }
    ValidationMode declared_mode() const { return declared_mode_; }
    ValidationMode mode() const { return mode_; }
    bool relaxed_flagged() const { return mode_ != declared_mode_; }

    ValidationReport validate() const { return validate_against(mode_); }
    ValidationReport validate_against(ValidationMode m) const;

    /// sigma^k applied to every entry (coefficient Frobenius, t fixed).
    Matrix<QElem> sigma_tau(const Matrix<QElem>& m, int k = 1) const;

    /// Frobenius quasi-isogeny Pi = T sigma(T) ... sigma^{e-1}(T); L(t)-linear.
    const Matrix<QElem>& frobenius() const;

    struct CharData {
        QPoly chi;  // characteristic polynomial of Pi, coefficients in F_q(t)
        QPoly mu;   // minimal polynomial, divides chi
    };
    const CharData& char_data() const;

    // tensor-categorical constructions; chardata must match
    static Motive tensor(const Motive& m, const Motive& n);
    static Motive direct_sum(const Motive& m, const Motive& n);
    Motive dual() const;
    static Motive internal_hom(const Motive& m, const Motive& n);
    Motive exterior_power(int i) const;

    /// Base change along F_{q^e} -> F_{q^{em}}; embeddings stay coherent
    /// with the parent tower.
    Motive base_change(int m) const;

    /// Descend a sigma-fixed element of L(t) to the canonical F_q(t).
    QElem descend(const QElem& f) const;

private:
    FieldTower tower_;
    CharacteristicData chardata_;
    Matrix<QElem> tau_;
    ValidationMode declared_mode_;
    ValidationMode mode_;
    mutable std::shared_ptr<Matrix<QElem>> frob_;
    mutable std::shared_ptr<CharData> chardata_cache_;

    void check_entry_denominators() const;
};

/// The Carlitz motive over F_{q^e}: rank 1, characteristic ((t), infinity),
/// theta = 0, tau-matrix (t).
Motive carlitz_motive(long long q, int e = 1);

/// Rank-1 motive with tau = (1) over the same tower and characteristic.
Motive unit_motive_like(const Motive& m);

} // namespace cmot

#endif
