#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmot/errors.hpp"
#include "cmot/isogeny.hpp"
#include "cmot/printing.hpp"

using namespace cmot;

namespace {

Motive unipotent_motive(long long q) {
    FieldTower tower(q, 1);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    Matrix<QElem> tau = Matrix<QElem>::identity(2, q_zero(tower.L()));
    tau.at(0, 1) = q_t(tower.L());
    return Motive(tower, cd, tau, ValidationMode::IiPrime);
}

// rank-2 Drinfeld-style motive: companion of x^2 + g x + c (t - theta)
Motive rank2_motive(long long q, const QElem& g, const QElem& c) {
    FieldTower tower(q, 1);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    QElem t = q_t(tower.L());
    Matrix<QElem> tau(2, 2, q_zero(tower.L()));
    tau.at(0, 1) = q_one(tower.L());
    tau.at(1, 0) = -(c * t);
    tau.at(1, 1) = -g;
    return Motive(tower, cd, tau, ValidationMode::IiPrime);
}

} // namespace

TEST_CASE("End of the unit motive is Q") {
    Motive c = carlitz_motive(3);
    Motive one = unit_motive_like(c);
    auto hom = hom_space(one, one);
    CHECK(hom.dim == 1);
    REQUIRE(hom.basis.size() == 1);
    CHECK(hom.basis[0] == Matrix<QElem>::identity(1, q_zero(c.tower().L())));
}

TEST_CASE("Hom(Carlitz, unit) vanishes") {
    Motive c = carlitz_motive(3);
    Motive one = unit_motive_like(c);
    auto hom = hom_space(c, one);
    CHECK(hom.dim == 0);
    CHECK(hom.basis.empty());
}

TEST_CASE("End(Carlitz + Carlitz) is a 2x2 matrix algebra") {
    Motive c = carlitz_motive(2);
    Motive s = Motive::direct_sum(c, c);
    auto hom = hom_space(s, s);
    CHECK(hom.dim == 4);
    // formula agrees
    auto places = admissible_formula_places(s, s, 2);
    REQUIRE(places.size() == 2);
    for (auto& v : places) CHECK(qhom_dim_formula(s, s, v) == 4);
    // Carlitz^2 vs Carlitz: dimension 2
    auto hom2 = hom_space(s, c);
    CHECK(hom2.dim == 2);
}

TEST_CASE("semisimplicity checks") {
    Motive c = carlitz_motive(3);
    CHECK(is_semisimple(c).semisimple);
    Motive u = unipotent_motive(3);
    auto su = is_semisimple(u);
    CHECK(!su.semisimple);
    REQUIRE(su.mu_factors.size() == 1);
    CHECK(su.mu_factors[0].second == 2);
    Motive s = Motive::direct_sum(c, c);
    CHECK(is_semisimple(s).semisimple);  // mu = x - t squarefree
}

TEST_CASE("quasi-isogeny: unit twists are rejected, identity accepted") {
    Motive c = carlitz_motive(3);
    // twist by the unit 2: chi = x - 2t
    FieldTower tower(3, 1);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    Matrix<QElem> tau(1, 1, q_zero(tower.L()));
    tau.at(0, 0) = q_t(tower.L()) * q_from_int(tower.L(), 2);
    Motive twisted(tower, cd, tau, ValidationMode::IiPrime);
    auto res = is_quasi_isogenous(c, twisted);
    CHECK(res.verdict == IsogenyResult::No);
    auto res2 = is_quasi_isogenous(c, c);
    REQUIRE(res2.verdict == IsogenyResult::Yes);
    REQUIRE(res2.witness.has_value());
    // witness intertwines and is invertible
    const auto& f = *res2.witness;
    CHECK(f * c.tau() == c.tau() * c.sigma_tau(f));
    CHECK(!f.det_field().is_zero());
}

TEST_CASE("pseudo-inverse identity f_check f = a id") {
    Motive c = carlitz_motive(2);
    Motive s = Motive::direct_sum(c, c);
    auto res = is_quasi_isogenous(s, s);
    REQUIRE(res.verdict == IsogenyResult::Yes);
    const auto& f = *res.witness;
    Matrix<QElem> fc = isogeny_pseudo_inverse(f);
    QElem a = f.det_field();
    CHECK(!a.is_zero());
    Matrix<QElem> prod = fc * f;
    Matrix<QElem> expect = Matrix<QElem>::identity(f.rows(), f.zero_elem()).scaled(a);
    CHECK(prod == expect);
    // the pseudo-inverse intertwines in the reverse direction
    CHECK(fc * s.tau() == s.tau() * s.sigma_tau(fc));
    // a = det(f) is sigma-fixed, i.e. lies in Q
    s.descend(a);
}

TEST_CASE("endomorphism reports") {
    Motive c = carlitz_motive(3);
    auto rc = endomorphism_report(c);
    CHECK(rc.h == 1);
    CHECK(rc.dim_e == 1);
    CHECK(rc.cm);
    CHECK(rc.bounds_ok);
    CHECK(rc.extreme_case == "E=F");

    Motive s = Motive::direct_sum(c, c);
    auto rs = endomorphism_report(s);
    CHECK(rs.h == 1);
    CHECK(rs.dim_e == 4);
    CHECK(rs.dim_matches_r2_over_h);
    CHECK(!rs.cm);
    CHECK(rs.extreme_case == "F=Q");

    // rank-2 CM example over F_2: chi = x^2 + x + t irreducible
    Motive m2 = rank2_motive(2, q_one(FieldTower(2, 1).L()), q_one(FieldTower(2, 1).L()));
    auto r2 = endomorphism_report(m2);
    CHECK(r2.h == 2);
    CHECK(r2.F_is_field);
    CHECK(r2.h_divides_r);
    CHECK(r2.dim_e == 2);
    CHECK(r2.dim_matches_r2_over_h);
    CHECK(r2.cm);
}

TEST_CASE("Tate formula equals solver dimension on semisimple pairs") {
    std::mt19937 rng(31);
    Motive c2 = carlitz_motive(2);
    Motive one2 = unit_motive_like(c2);
    std::vector<std::pair<Motive, Motive>> pairs;
    pairs.emplace_back(c2, c2);
    pairs.emplace_back(c2, one2);
    pairs.emplace_back(Motive::direct_sum(c2, c2), c2);
    pairs.emplace_back(Motive::direct_sum(c2, one2), Motive::direct_sum(c2, one2));
    for (auto& [ma, mb] : pairs) {
        if (!is_semisimple(ma).semisimple || !is_semisimple(mb).semisimple) continue;
        auto hom = hom_space(ma, mb);
        auto places = admissible_formula_places(ma, mb, 2);
        REQUIRE(places.size() >= 2);
        for (auto& v : places) CHECK(qhom_dim_formula(ma, mb, v) == hom.dim);
    }
}

TEST_CASE("unipotent endomorphisms: dim 2, not matching the formula value") {
    Motive u = unipotent_motive(2);
    auto hom = hom_space(u, u);
    CHECK(hom.dim == 2);
    // formula value (ignoring preconditions) is 4: the semisimple criterion
    // separates them
    auto places = places_of_degree(u.tower().Fq(), 1);
    const auto& cd = u.char_data();
    bool compared = false;
    for (auto& v : places) {
        if (u.chardata().contains(v)) continue;
        CHECK(tate_formula_value(cd.chi, cd.chi, v) == 4);
        compared = true;
        break;
    }
    CHECK(compared);
    CHECK_THROWS_AS(qhom_dim_formula(u, u, places.front()), Error);
}
