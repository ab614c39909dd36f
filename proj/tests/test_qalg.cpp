#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmot/printing.hpp"
#include "cmot/qalg.hpp"

using namespace cmot;

namespace {

QPoly refold(const QFactorization& fac, const FqFieldPtr& F) {
    QPoly prod = qpoly_constant(fac.unit);
    for (auto& [g, m] : fac.factors) prod = prod * g.pow(m);
    return prod;
}

bool same_factorization(const QFactorization& a, const QFactorization& b) {
    if (!(a.unit == b.unit) || a.factors.size() != b.factors.size()) return false;
    for (size_t i = 0; i < a.factors.size(); ++i)
        if (!(a.factors[i].first == b.factors[i].first) ||
            a.factors[i].second != b.factors[i].second)
            return false;
    return true;
}

QElem rand_qelem(const FqFieldPtr& F, std::mt19937& rng, int dmax, bool poly_only = true) {
    auto elems = F->all_elements();
    auto rand_poly = [&](int d) {
        std::vector<FqElem> c;
        for (int i = 0; i <= d; ++i) c.push_back(elems[rng() % elems.size()]);
        return FqPoly(F->zero(), std::move(c));
    };
    FqPoly num = rand_poly((int)(rng() % (dmax + 1)));
    if (poly_only) return q_from_poly(num);
    FqPoly den = fqpoly_zero(F);
    while (den.is_zero()) den = rand_poly((int)(rng() % (dmax + 1)));
    return QElem(num, den);
}

} // namespace

TEST_CASE("valuations at finite and infinite places") {
    auto F3 = FqField::prime_field(3);
    QElem t = q_t(F3);
    Place vt = Place::finite(fqpoly_x(F3));
    Place vinf = Place::infinity(F3);
    CHECK(valuation(t, vt) == 1);
    CHECK(valuation(t, vinf) == -1);
    // (t^2+1)/t at (t^2+1)
    QElem f = QElem(fqpoly_from_ints(F3, {1, 0, 1}), fqpoly_x(F3));
    Place v21 = Place::finite(fqpoly_from_ints(F3, {1, 0, 1}));
    CHECK(valuation(f, v21) == 1);
    CHECK(valuation(f, vt) == -1);
    CHECK(valuation(f, vinf) == -1);
}

TEST_CASE("valuation is additive and satisfies the product formula") {
    auto F2 = FqField::prime_field(2);
    std::mt19937 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        QElem f = rand_qelem(F2, rng, 4, false);
        QElem g = rand_qelem(F2, rng, 4, false);
        if (f.is_zero() || g.is_zero()) continue;
        auto places = support(f * g);
        auto pf = support(f);
        auto pg = support(g);
        places.insert(places.end(), pf.begin(), pf.end());
        places.insert(places.end(), pg.begin(), pg.end());
        long long total = 0;
        for (auto& v : places) {
            CHECK(valuation(f * g, v) == valuation(f, v) + valuation(g, v));
        }
        // product formula over the support of f
        for (auto& v : support(f)) total += (long long)valuation(f, v) * v.degree();
        CHECK(total == 0);
    }
}

TEST_CASE("newton slope convention: slope of x - c equals v(c)") {
    auto F3 = FqField::prime_field(3);
    std::mt19937 rng(17);
    Place vt = Place::finite(fqpoly_x(F3));
    for (int trial = 0; trial < 10; ++trial) {
        QElem c = rand_qelem(F3, rng, 3, false);
        if (c.is_zero()) continue;
        QPoly f = qpoly_x(F3) - qpoly_constant(c);
        for (auto& v : {vt, Place::infinity(F3)}) {
            auto sl = newton_slopes(f, v);
            REQUIRE(sl.slopes.size() == 1);
            CHECK(sl.slopes[0].first == Fraction(valuation(c, v)));
            CHECK(sl.slopes[0].second == 1);
        }
    }
    // x - t at (t-1) has slope 0
    QPoly f = qpoly_x(F3) - qpoly_constant(q_t(F3));
    auto sl = newton_slopes(f, Place::finite(fqpoly_from_ints(F3, {-1, 1})));
    REQUIRE(sl.slopes.size() == 1);
    CHECK(sl.slopes[0].first == Fraction(0));
    // x^2 - t*x + t at (t): lower hull of (0,1),(1,1),(2,0) gives slope 1/2 twice
    QPoly g = qpoly_x(F3).pow(2) - qpoly_constant(q_t(F3)) * qpoly_x(F3) +
              qpoly_constant(q_t(F3));
    auto s2 = newton_slopes(g, vt);
    REQUIRE(s2.slopes.size() == 1);
    CHECK(s2.slopes[0].first == Fraction(1, 2));
    CHECK(s2.slopes[0].second == 2);
    CHECK(s2.infinite_count == 0);
}

TEST_CASE("factor x^2 - t^2 over F_3(t)") {
    auto F3 = FqField::prime_field(3);
    QElem t = q_t(F3);
    QPoly f = qpoly_x(F3).pow(2) - qpoly_constant(t * t);
    auto fac = factor_over_function_field(f);
    REQUIRE(fac.factors.size() == 2);
    CHECK(fac.factors[0].second == 1);
    CHECK(fac.factors[1].second == 1);
    CHECK(refold(fac, F3) == f);
    // factors are x - t and x + t
    QPoly xmt = qpoly_x(F3) - qpoly_constant(t);
    QPoly xpt = qpoly_x(F3) + qpoly_constant(t);
    bool found_m = fac.factors[0].first == xmt || fac.factors[1].first == xmt;
    bool found_p = fac.factors[0].first == xpt || fac.factors[1].first == xpt;
    CHECK(found_m);
    CHECK(found_p);
}

TEST_CASE("x^2 - t irreducible over F_3(t)") {
    auto F3 = FqField::prime_field(3);
    QPoly f = qpoly_x(F3).pow(2) - qpoly_constant(q_t(F3));
    auto fac = factor_over_function_field(f);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].second == 1);
    CHECK(fac.factors[0].first == f);
    // cross-check with the brute-force oracle
    CHECK(same_factorization(fac, factor_bruteforce(f)));
}

TEST_CASE("(x - t)^2 factors with multiplicity 2") {
    auto F3 = FqField::prime_field(3);
    QPoly xmt = qpoly_x(F3) - qpoly_constant(q_t(F3));
    auto fac = factor_over_function_field(xmt * xmt);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].first == xmt);
    CHECK(fac.factors[0].second == 2);
}

TEST_CASE("inseparable irreducible x^p - t") {
    for (int p : {2, 3}) {
        auto F = FqField::prime_field(p);
        QPoly f = qpoly_x(F).pow(p) - qpoly_constant(q_t(F));
        auto fac = factor_over_function_field(f);
        REQUIRE(fac.factors.size() == 1);
        CHECK(fac.factors[0].second == 1);
        CHECK(fac.factors[0].first.degree() == p);
        // while (x^p - t^p) = (x - t)^p
        QPoly g = qpoly_x(F).pow(p) - qpoly_constant(q_t(F).pow(p));
        auto fg = factor_over_function_field(g);
        REQUIRE(fg.factors.size() == 1);
        CHECK(fg.factors[0].second == p);
        CHECK(fg.factors[0].first.degree() == 1);
    }
}

TEST_CASE("factorization needing an extension specialization point") {
    // over F_2 with high t-degree discriminant pressure on only two
    // specialization candidates
    auto F2 = FqField::prime_field(2);
    QElem t = q_t(F2);
    // (x^2 + x + t)(x^2 + x + t + 1): both specializations t=0,1 collide
    QPoly a = qpoly_x(F2).pow(2) + qpoly_x(F2) + qpoly_constant(t);
    QPoly b = qpoly_x(F2).pow(2) + qpoly_x(F2) + qpoly_constant(t + q_one(F2));
    auto fac = factor_over_function_field(a * b);
    REQUIRE(fac.factors.size() == 2);
    CHECK(refold(fac, F2) == a * b);
}

TEST_CASE("random factorizations agree with brute force (criterion-10 oracle, deg <= 4)") {
    std::mt19937 rng(2024);
    for (int p : {2, 3}) {
        auto F = FqField::prime_field(p);
        for (int trial = 0; trial < 12; ++trial) {
            int d = 1 + (int)(rng() % 4);
            std::vector<QElem> c;
            for (int i = 0; i < d; ++i) c.push_back(rand_qelem(F, rng, 2));
            c.push_back(q_one(F));
            QPoly f(q_zero(F), std::move(c));
            auto fac = factor_over_function_field(f);
            CHECK(refold(fac, F) == f);
            auto oracle = factor_bruteforce(f);
            CHECK(same_factorization(fac, oracle));
        }
    }
}

TEST_CASE("power_min_poly basics") {
    auto F3 = FqField::prime_field(3);
    QElem t = q_t(F3);
    QPoly xmt = qpoly_x(F3) - qpoly_constant(t);
    // power 1 is the identity
    CHECK(power_min_poly(xmt, 1) == xmt);
    // minpoly of t^2
    QPoly m2 = power_min_poly(xmt, 2);
    CHECK(m2 == qpoly_x(F3) - qpoly_constant(t * t));
    // composition: (alpha^2)^3 = alpha^6
    QPoly m6a = power_min_poly(power_min_poly(xmt, 2), 3);
    QPoly m6b = power_min_poly(xmt, 6);
    CHECK(m6a == m6b);
    // quadratic: alpha root of x^2 - t, alpha^2 = t
    QPoly h = qpoly_x(F3).pow(2) - qpoly_constant(t);
    CHECK(power_min_poly(h, 2) == xmt);
    // alpha^4 = t^2
    CHECK(power_min_poly(h, 4) == qpoly_x(F3) - qpoly_constant(t * t));
    // composition property on the quadratic
    CHECK(power_min_poly(power_min_poly(h, 3), 2) == power_min_poly(h, 6));
}

TEST_CASE("resultant of linear polynomials") {
    auto F3 = FqField::prime_field(3);
    QElem t = q_t(F3);
    QPoly f = qpoly_x(F3) - qpoly_constant(t);
    QPoly g = qpoly_x(F3) - qpoly_constant(t + q_one(F3));
    // Res(x-a, x-b) = b - a up to sign convention: product of f over roots of g
    QElem r = resultant(f, g);
    CHECK(!r.is_zero());
    QPoly h = qpoly_x(F3) - qpoly_constant(t);
    CHECK(resultant(f, h).is_zero());
}

TEST_CASE("squarefree test over Q") {
    auto F2 = FqField::prime_field(2);
    QPoly xmt = qpoly_x(F2) - qpoly_constant(q_t(F2));
    QPoly xm1 = qpoly_x(F2) - qpoly_constant(q_one(F2));
    CHECK(is_squarefree_over_Q(xmt * xm1));
    CHECK(!is_squarefree_over_Q(xmt * xmt * xm1));
}

TEST_CASE("canonical printing") {
    auto F4 = FqField::canonical(2, 2);
    FqPoly f = FqPoly(F4->zero(), {F4->one(), F4->gen(), F4->one()});
    CHECK(fqpoly_str(f, "t") == "t^2+g*t+1");
    QElem q = QElem(fqpoly_from_ints(F4, {1, 1}), fqpoly_from_ints(F4, {0, 0, 1}));
    CHECK(qelem_str(q) == "(t+1)/(t^2)");
}
