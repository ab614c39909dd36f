#include "cmot/motive.hpp"

#include <algorithm>

#include "cmot/errors.hpp"
#include "cmot/printing.hpp"
#include "cmot/qalg.hpp"

namespace cmot {

// ---------------------------------------------------------------------------
// CharacteristicData
// ---------------------------------------------------------------------------

CharacteristicData::CharacteristicData(const FieldTower& tower, std::vector<CharPlace> finite)
    : finite_(std::move(finite)) {
    for (size_t i = 0; i < finite_.size(); ++i) {
        const auto& cp = finite_[i];
        if (cp.place.is_infinite())
            throw bad_input("characteristic: infinity is implicit and must come last");
        if (!cp.place.base_field()->same_field(*tower.Fq()))
            throw bad_input("characteristic: place not over F_q");
        if (!cp.theta.field()->same_field(*tower.L()))
            throw bad_input("characteristic: theta not in L");
        for (size_t j = 0; j < i; ++j)
            if (finite_[j].place == cp.place)
                throw bad_input("characteristic: places must be pairwise distinct");
        // p_i(theta_i) = 0 in L
        FqElem acc = tower.L()->zero();
        const FqPoly& p = cp.place.poly();
        for (int k = p.degree(); k >= 0; --k)
            acc = acc * cp.theta + tower.iota().apply(p.coeff(k));
        if (!acc.is_zero())
            throw bad_input("characteristic: theta is not a root of its place polynomial");
    }
}

bool CharacteristicData::contains(const Place& v) const {
    if (v.is_infinite()) return true;
    for (auto& cp : finite_)
        if (cp.place == v) return true;
    return false;
}

bool CharacteristicData::same(const CharacteristicData& other) const {
    if (finite_.size() != other.finite_.size()) return false;
    for (size_t i = 0; i < finite_.size(); ++i)
        if (finite_[i].place != other.finite_[i].place ||
            !(finite_[i].theta == other.finite_[i].theta))
            return false;
    return true;
}

std::string mode_str(ValidationMode m) {
    switch (m) {
        case ValidationMode::IiPrime: return "ii-prime";
        case ValidationMode::Ii: return "ii";
        default: return "relaxed";
    }
}

ValidationMode mode_from_str(const std::string& s) {
    if (s == "ii-prime") return ValidationMode::IiPrime;
    if (s == "ii") return ValidationMode::Ii;
    if (s == "relaxed") return ValidationMode::Relaxed;
    throw bad_input("unknown validation mode '" + s + "'");
}

long ValidationReport::k(int place_index, int conj) const {
    for (auto& m : multiplicities)
        if (m.place_index == place_index && m.conj == conj) return m.mult;
    return 0;
}

// ---------------------------------------------------------------------------
// Motive
// ---------------------------------------------------------------------------

Motive::Motive(FieldTower tower, CharacteristicData chardata, Matrix<QElem> tau,
               ValidationMode mode, bool allow_relax)
    : tower_(std::move(tower)),
      chardata_(std::move(chardata)),
      tau_(std::move(tau)),
      declared_mode_(mode),
      mode_(mode) {
    if (tau_.rows() != tau_.cols()) throw bad_input("tau must be square");
    check_entry_denominators();
    ValidationReport rep = validate_against(mode_);
    if (!rep.ok) {
        if (!allow_relax) {
            std::string what = rep.offending.empty() ? "multiplicity sign violation"
                                                     : rep.offending.front();
            throw forbidden_zero_locus("validation failed in mode " + mode_str(mode_) + ": " +
                                       what);
        }
        mode_ = ValidationMode::Relaxed;
        ValidationReport rel = validate_against(mode_);
        if (!rel.ok)
            throw forbidden_zero_locus("validation failed even in relaxed mode: " +
                                       (rel.offending.empty() ? "det tau"
                                                              : rel.offending.front()));
    }
}

void Motive::check_entry_denominators() const {
    // entries live in A_L: poles only above the finite characteristic places
    for (int i = 0; i < tau_.rows(); ++i)
        for (int j = 0; j < tau_.cols(); ++j) {
            const FqPoly& den = tau_.at(i, j).den();
            if (den.degree() == 0) continue;
            for (auto& [f, m] : factor_fq(den).factors) {
                bool ok = false;
                if (f.degree() == 1) {
                    FqElem root = -f.coeff(0);
                    for (auto& cp : chardata_.finite()) {
                        FqElem conj = cp.theta;
                        for (int s = 0; s < cp.place.degree(); ++s) {
                            if (conj == root) ok = true;
                            conj = tower_.sigma(conj);
                        }
                    }
                }
                if (!ok)
                    throw forbidden_zero_locus("tau entry denominator " + fqpoly_str(f, "t") +
                                               " does not lie above the characteristic");
            }
        }
}

ValidationReport Motive::validate_against(ValidationMode m) const {
    ValidationReport rep;
    rep.mode = m;
    QElem det = tau_.det_field();
    if (det.is_zero()) throw non_invertible_tau("det tau = 0");
    // conjugate table: root -> (place index, j)
    struct Entry {
        FqElem root;
        int place;
        int conj;
    };
    std::vector<Entry> table;
    for (int i = 0; i < (int)chardata_.finite().size(); ++i) {
        FqElem conj = chardata_.finite()[i].theta;
        for (int j = 0; j < chardata_.finite()[i].place.degree(); ++j) {
            table.push_back({conj, i, j});
            conj = tower_.sigma(conj);
        }
    }
    std::vector<long> mults(table.size(), 0);
    auto classify = [&](const FqPoly& f, int sign) {
        if (f.degree() == 0) return;
        for (auto& [g, mult] : factor_fq(f).factors) {
            bool matched = false;
            if (g.degree() == 1) {
                FqElem root = -g.coeff(0);
                for (size_t k = 0; k < table.size(); ++k)
                    if (table[k].root == root) {
                        mults[k] += sign * (long)mult;
                        matched = true;
                        break;
                    }
            }
            if (!matched) rep.offending.push_back(fqpoly_str(g, "t"));
        }
    };
    classify(det.num(), +1);
    classify(det.den(), -1);
    for (size_t k = 0; k < table.size(); ++k)
        if (mults[k] != 0 || table[k].conj == 0)
            rep.multiplicities.push_back({table[k].place, table[k].conj, mults[k]});
    rep.ok = rep.offending.empty();
    if (rep.ok && m != ValidationMode::Relaxed) {
        for (size_t k = 0; k < table.size(); ++k) {
            if (m == ValidationMode::Ii && mults[k] < 0) rep.ok = false;
            if (m == ValidationMode::IiPrime) {
                if (table[k].conj == 0 && mults[k] < 0) rep.ok = false;
                if (table[k].conj != 0 && mults[k] != 0) rep.ok = false;
            }
        }
    }
    return rep;
}

Matrix<QElem> Motive::sigma_tau(const Matrix<QElem>& m, int k) const {
    return m.map([&](const QElem& f) { return tower_.sigma_q(f, k); }, m.zero_elem());
}

const Matrix<QElem>& Motive::frobenius() const {
    if (!frob_) {
        Matrix<QElem> pi = tau_;
        for (int k = 1; k < tower_.e(); ++k) pi = pi * sigma_tau(tau_, k);
        if (tau_.rows() == 0) pi = tau_;
        frob_ = std::make_shared<Matrix<QElem>>(std::move(pi));
    }
    return *frob_;
}

QElem Motive::descend(const QElem& f) const {
    auto down = [&](const FqPoly& g) {
        std::vector<FqElem> c;
        c.reserve(g.coeffs().size());
        for (auto& x : g.coeffs()) {
            if (!tower_.sigma_fixed(x))
                throw descent_failure("coefficient not sigma-fixed: " + x.str());
            c.push_back(tower_.descend(x));
        }
        return FqPoly(tower_.Fq()->zero(), std::move(c));
    };
    return QElem(down(f.num()), down(f.den()));
}

const Motive::CharData& Motive::char_data() const {
    if (!chardata_cache_) {
        const Matrix<QElem>& pi = frobenius();
        QPoly chiL = pi.charpoly();
        QPoly muL = pi.minpoly();
        // sigma-invariance is forced (sigma(Pi) is conjugate to Pi); a failure
        // here is an arithmetic bug, reported as DescentFailure
        for (const QPoly* f : {&chiL, &muL})
            for (int i = 0; i <= f->degree(); ++i) {
                const QElem& c = f->coeff(i);
                if (!(tower_.sigma_q(c) == c))
                    throw descent_failure("char_data coefficient not sigma-invariant");
            }
        CharData cd{QPoly(q_zero(tower_.Fq())), QPoly(q_zero(tower_.Fq()))};
        auto down = [&](const QPoly& f) {
            std::vector<QElem> c;
            c.reserve(f.coeffs().size());
            for (auto& x : f.coeffs()) c.push_back(descend(x));
            return QPoly(q_zero(tower_.Fq()), std::move(c));
        };
        cd.chi = down(chiL);
        cd.mu = down(muL);
        chardata_cache_ = std::make_shared<CharData>(std::move(cd));
    }
    return *chardata_cache_;
}

Motive Motive::tensor(const Motive& m, const Motive& n) {
    if (!m.tower_.same(n.tower_) || !m.chardata_.same(n.chardata_))
        throw chardata_mismatch("tensor: towers or characteristics differ");
    return Motive(m.tower_, m.chardata_, Matrix<QElem>::kronecker(m.tau_, n.tau_),
                  m.declared_mode_, true);
}

Motive Motive::direct_sum(const Motive& m, const Motive& n) {
    if (!m.tower_.same(n.tower_) || !m.chardata_.same(n.chardata_))
        throw chardata_mismatch("direct_sum: towers or characteristics differ");
    return Motive(m.tower_, m.chardata_, Matrix<QElem>::block_diag(m.tau_, n.tau_),
                  m.declared_mode_, true);
}

Motive Motive::dual() const {
    Matrix<QElem> inv = tau_.inverse().transpose();
    return Motive(tower_, chardata_, std::move(inv), declared_mode_, true);
}

Motive Motive::internal_hom(const Motive& m, const Motive& n) {
    return tensor(m.dual(), n);
}

Motive Motive::exterior_power(int i) const {
    if (i < 0) throw bad_input("exterior_power: negative index");
    return Motive(tower_, chardata_, tau_.compound(i), declared_mode_, true);
}

Motive Motive::base_change(int m) const {
    if (m < 1) throw bad_input("base_change: m must be >= 1");
    if (m == 1) return *this;
    const FieldTower::Ext& ext = tower_.extension(m);
    // coherent tower: F_q -> L' factors through the old embedding
    FqElem iota_img = ext.from_L.apply(tower_.iota().gen_image());
    FieldTower nt(tower_.q(), tower_.e() * m, tower_.Fq()->defining(),
                  ext.K->defining(), iota_img);
    std::vector<CharPlace> finite;
    for (auto& cp : chardata_.finite())
        finite.push_back({cp.place, ext.from_L.apply(cp.theta)});
    CharacteristicData cd(nt, std::move(finite));
    auto lift = [&](const QElem& f) {
        FqPoly nnum = map_coeffs(f.num(), ext.K->zero(),
                                 [&](const FqElem& c) { return ext.from_L.apply(c); });
        FqPoly nden = map_coeffs(f.den(), ext.K->zero(),
                                 [&](const FqElem& c) { return ext.from_L.apply(c); });
        return QElem(std::move(nnum), std::move(nden));
    };
    Matrix<QElem> nt_tau = tau_.map(lift, q_zero(ext.K));
    return Motive(std::move(nt), std::move(cd), std::move(nt_tau), declared_mode_, true);
}

Motive carlitz_motive(long long q, int e) {
    FieldTower tower(q, e);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    Matrix<QElem> tau(1, 1, q_zero(tower.L()));
    tau.at(0, 0) = q_t(tower.L());
    return Motive(std::move(tower), std::move(cd), std::move(tau), ValidationMode::IiPrime);
}

Motive unit_motive_like(const Motive& m) {
    Matrix<QElem> tau = Matrix<QElem>::identity(1, q_zero(m.tower().L()));
    return Motive(m.tower(), m.chardata(), std::move(tau), m.declared_mode());
}

} // namespace cmot
