#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmot/errors.hpp"
#include "cmot/motive.hpp"
#include "cmot/printing.hpp"
#include "cmot/qalg.hpp"

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

// random valid motive built as U1 * D * U2 with unimodular U's and diagonal
// D of powers of (t - theta_i); always mode ii-prime valid
Motive random_motive(long long q, int e, int r, std::mt19937& rng, int max_ops = 4) {
    FieldTower tower(q, e);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    auto elems = tower.L()->all_elements();
    QElem t = q_t(tower.L());
    Matrix<QElem> m(r, r, q_zero(tower.L()));
    for (int i = 0; i < r; ++i) m.at(i, i) = t.pow(1 + (int)(rng() % 2));
    auto rand_poly = [&]() {
        QElem acc = q_zero(tower.L());
        for (int d = 0; d <= 1 + (int)(rng() % 2); ++d)
            acc = acc + QElem::constant(elems[rng() % elems.size()]) * t.pow(d);
        return acc;
    };
    for (int op = 0; op < max_ops; ++op) {
        int i = (int)(rng() % r), j = (int)(rng() % r);
        bool left = rng() & 1;
        if (i == j) {
            // scale a row/column by a unit of L
            FqElem u = elems[rng() % elems.size()];
            if (u.is_zero()) continue;
            for (int k2 = 0; k2 < r; ++k2) {
                if (left) m.at(i, k2) = QElem::constant(u) * m.at(i, k2);
                else m.at(k2, i) = m.at(k2, i) * QElem::constant(u);
            }
            continue;
        }
        QElem f = rand_poly();
        for (int k2 = 0; k2 < r; ++k2) {
            if (left) m.at(i, k2) = m.at(i, k2) + f * m.at(j, k2);
            else m.at(k2, j) = m.at(k2, j) + m.at(k2, i) * f;
        }
    }
    return Motive(tower, cd, m, ValidationMode::IiPrime);
}

} // namespace

TEST_CASE("Carlitz datum validates with k = 1") {
    Motive c = carlitz_motive(3);
    auto rep = c.validate();
    CHECK(rep.ok);
    CHECK(rep.k(0) == 1);
    CHECK(c.mode() == ValidationMode::IiPrime);
    CHECK(!c.relaxed_flagged());
}

TEST_CASE("zero locus outside the characteristic is rejected") {
    FieldTower tower(3, 1);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    Matrix<QElem> tau(1, 1, q_zero(tower.L()));
    tau.at(0, 0) = q_t(tower.L()) - q_one(tower.L());  // t - 1
    CHECK_THROWS_AS(Motive(tower, cd, tau, ValidationMode::IiPrime), Error);
}

TEST_CASE("unit motive validates with k = 0") {
    Motive c = carlitz_motive(3);
    Motive one = unit_motive_like(c);
    auto rep = one.validate();
    CHECK(rep.ok);
    CHECK(rep.k(0) == 0);
}

TEST_CASE("tensor of Carlitz with itself") {
    Motive c = carlitz_motive(3);
    Motive c2 = Motive::tensor(c, c);
    CHECK(c2.rank() == 1);
    QElem t = q_t(c.tower().L());
    CHECK(c2.tau().at(0, 0) == t * t);
    CHECK(c2.validate().k(0) == 2);
}

TEST_CASE("dual of Carlitz is flagged relaxed") {
    Motive c = carlitz_motive(3);
    Motive d = c.dual();
    CHECK(d.relaxed_flagged());
    CHECK(d.mode() == ValidationMode::Relaxed);
    CHECK(d.validate().k(0) == -1);
    // double dual returns to the integral model
    Motive dd = d.dual();
    CHECK(dd.tau().at(0, 0) == c.tau().at(0, 0));
}

TEST_CASE("exterior power at top degree is the determinant motive") {
    std::mt19937 rng(3);
    Motive m = random_motive(3, 1, 3, rng);
    Motive top = m.exterior_power(3);
    CHECK(top.rank() == 1);
    CHECK(top.tau().at(0, 0) == m.tau().det_field());
    // chi of top power = x - det(Pi)
    auto cdtop = top.char_data();
    QElem detpi = m.frobenius().det_field();
    CHECK(cdtop.chi.degree() == 1);
    CHECK(cdtop.chi.coeff(0) == -top.descend(detpi));
}

TEST_CASE("Frobenius of Carlitz") {
    Motive c1 = carlitz_motive(3, 1);
    CHECK(c1.frobenius().at(0, 0) == q_t(c1.tower().L()));
    Motive c2 = carlitz_motive(3, 2);
    QElem t = q_t(c2.tower().L());
    CHECK(c2.frobenius().at(0, 0) == t * t);
}

TEST_CASE("rank-1 twist Frobenius over F_{q^2}") {
    FieldTower tower(3, 2);
    Place vt = Place::finite(fqpoly_x(tower.Fq()));
    CharacteristicData cd(tower, {{vt, tower.L()->zero()}});
    FqElem g = tower.L()->gen();
    Matrix<QElem> tau(1, 1, q_zero(tower.L()));
    tau.at(0, 0) = QElem::constant(g) * q_t(tower.L());
    Motive m(tower, cd, tau, ValidationMode::IiPrime);
    QElem t = q_t(tower.L());
    QElem expected = QElem::constant(g * g.frobenius(tower.a())) * t * t;
    CHECK(m.frobenius().at(0, 0) == expected);
}

TEST_CASE("char_data of Carlitz and the unipotent example") {
    Motive c = carlitz_motive(3);
    auto cd = c.char_data();
    QPoly xmt = qpoly_x(c.tower().Fq()) - qpoly_constant(q_t(c.tower().Fq()));
    CHECK(cd.chi == xmt);
    CHECK(cd.mu == xmt);

    Motive c2 = carlitz_motive(3, 2);
    auto cd2 = c2.char_data();
    QElem t2 = q_t(c2.tower().Fq());
    CHECK(cd2.chi == qpoly_x(c2.tower().Fq()) - qpoly_constant(t2 * t2));

    Motive u = unipotent_motive(3);
    auto cdu = u.char_data();
    QPoly xm1 = qpoly_x(u.tower().Fq()) - qpoly_constant(q_one(u.tower().Fq()));
    CHECK(cdu.chi == xm1 * xm1);
    CHECK(cdu.mu == xm1 * xm1);
}

TEST_CASE("intertwining and descent invariants on random motives") {
    std::mt19937 rng(99);
    int count = 0;
    for (auto [q, e, r] : {std::tuple{2LL, 1, 2}, {2LL, 2, 2}, {3LL, 1, 3},
                           {3LL, 2, 2}, {2LL, 3, 1}, {4LL, 1, 2}, {4LL, 2, 1}}) {
        for (int trial = 0; trial < 7; ++trial) {
            Motive m = random_motive(q, e, r, rng);
            const auto& pi = m.frobenius();
            // Pi T = T sigma(Pi)
            CHECK(pi * m.tau() == m.tau() * m.sigma_tau(pi));
            // chi, mu descend to F_q(t): char_data throws otherwise
            auto cd = m.char_data();
            CHECK(cd.chi.degree() == r);
            CHECK((cd.chi % cd.mu).is_zero());
            ++count;
        }
    }
    CHECK(count >= 49);
}

TEST_CASE("base change identities") {
    Motive c = carlitz_motive(3);
    Motive cb = c.base_change(2);
    QElem t = q_t(cb.tower().L());
    CHECK(cb.frobenius().at(0, 0) == t * t);
    CHECK(cb.tower().e() == 2);
    // base_change(M, 1) = M
    Motive c1 = c.base_change(1);
    CHECK(c1.tau() == c.tau());
    // unipotent example: base change by p gives identity Frobenius
    Motive u = unipotent_motive(3);
    Motive up = u.base_change(3);
    CHECK(up.frobenius() == Matrix<QElem>::identity(2, q_zero(up.tower().L())));
    // Frobenius of base change = Pi^m (embedded)
    std::mt19937 rng(123);
    Motive m = random_motive(2, 2, 2, rng);
    Motive mb = m.base_change(2);
    const auto& ext = m.tower().extension(2);
    auto lift = [&](const QElem& f) {
        FqPoly n = map_coeffs(f.num(), ext.K->zero(),
                              [&](const FqElem& c2) { return ext.from_L.apply(c2); });
        FqPoly d = map_coeffs(f.den(), ext.K->zero(),
                              [&](const FqElem& c2) { return ext.from_L.apply(c2); });
        return QElem(n, d);
    };
    Matrix<QElem> pi_lift = m.frobenius().map(lift, q_zero(ext.K));
    CHECK(mb.frobenius() == pi_lift * pi_lift);
}

TEST_CASE("base change chi via power_min_poly factorwise") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        Motive m = random_motive(2, 1, 2, rng);
        auto cd = m.char_data();
        Motive mb = m.base_change(2);
        auto cdb = mb.char_data();
        // chi of the base change has roots the squares of chi's roots:
        // compare factorwise using power_min_poly
        QPoly prod = qpoly_constant(q_one(m.tower().Fq()));
        for (auto& [h, mult] : factor_over_function_field(cd.chi).factors) {
            QPoly h2 = power_min_poly(h, 2);
            int rep = (h.degree() * mult) / h2.degree();
            prod = prod * h2.pow(rep);
        }
        CHECK(prod == cdb.chi);
    }
}

TEST_CASE("direct sum multiplies characteristic polynomials") {
    Motive c = carlitz_motive(2);
    Motive one = unit_motive_like(c);
    Motive s = Motive::direct_sum(c, one);
    auto cd = s.char_data();
    CHECK(cd.chi == c.char_data().chi * one.char_data().chi);
    // tensor at rank 1: roots multiply
    Motive t2 = Motive::tensor(c, c);
    CHECK(t2.char_data().chi.coeff(0) == -(q_t(c.tower().Fq()) * q_t(c.tower().Fq())));
}

TEST_CASE("chardata mismatch rejected") {
    Motive c2 = carlitz_motive(2);
    Motive c3 = carlitz_motive(3);
    CHECK_THROWS_AS(Motive::tensor(c2, c3), Error);
}
