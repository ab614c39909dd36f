#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cmot/fq.hpp"
#include "cmot/fqpoly.hpp"
#include "cmot/matrix.hpp"
#include "cmot/ratfunc.hpp"
#include "cmot/series.hpp"

using namespace cmot;

namespace {

// brute-force divisor search: does f (monic, over a small field) have a
// monic divisor of degree in [1, f.degree()-1]?
bool has_proper_divisor_bruteforce(const FqPoly& f) {
    const FqFieldPtr& F = f.zero_elem().field();
    auto elems = F->all_elements();
    for (int d = 1; d < f.degree(); ++d) {
        std::vector<size_t> idx(d, 0);
        for (;;) {
            std::vector<FqElem> c;
            for (int i = 0; i < d; ++i) c.push_back(elems[idx[i]]);
            c.push_back(F->one());
            FqPoly g(F->zero(), std::move(c));
            if ((f % g).is_zero()) return true;
            size_t i = 0;
            while (i < idx.size() && ++idx[i] == elems.size()) idx[i++] = 0;
            if (i == idx.size()) break;
        }
    }
    return false;
}

FqPoly refold(const FqFactorization& fac, const FqFieldPtr& F) {
    FqPoly prod = FqPoly::constant(F->zero(), fac.unit);
    for (auto& [g, m] : fac.factors) prod = prod * g.pow(m);
    return prod;
}

} // namespace

TEST_CASE("prime field arithmetic") {
    auto F3 = FqField::prime_field(3);
    FqElem a = F3->from_int(2), b = F3->from_int(2);
    CHECK((a * b) == F3->from_int(1));
    CHECK((a + b) == F3->from_int(1));
    CHECK(a.inv() == F3->from_int(2));
    CHECK(a.pow(4) == F3->from_int(1));
}

TEST_CASE("canonical extension fields") {
    auto F4 = FqField::canonical(2, 2);
    // least irreducible over F_2 of degree 2 is x^2 + x + 1
    CHECK(F4->defining() == std::vector<int>{1, 1, 1});
    FqElem g = F4->gen();
    CHECK(g * g == g + F4->one());  // g^2 = g + 1
    CHECK(g.pow(3) == F4->one());
    CHECK(g.frobenius() == g * g);

    auto F9 = FqField::canonical(3, 2);
    CHECK(F9->degree() == 2);
    FqElem h = F9->gen();
    CHECK(h.pow(8) == F9->one());
    CHECK(h.pow(9) == h);  // Frobenius order
    CHECK(h.inv() * h == F9->one());
}

TEST_CASE("embeddings commute with Frobenius") {
    auto F4 = FqField::canonical(2, 2);
    auto F16 = FqField::canonical(2, 4);
    Embedding e = Embedding::least_root(F4, F16);
    for (auto& x : F4->all_elements()) {
        CHECK(e.apply(x).frobenius() == e.apply(x.frobenius()));
        auto back = e.preimage(e.apply(x));
        REQUIRE(back.has_value());
        CHECK(*back == x);
    }
    // something outside the subfield has no preimage
    CHECK(!e.preimage(F16->gen()).has_value());
}

TEST_CASE("factor x^2+1 over F_2 is (x+1)^2") {
    auto F2 = FqField::prime_field(2);
    FqPoly f = fqpoly_from_ints(F2, {1, 0, 1});
    auto fac = factor_fq(f);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].first == fqpoly_from_ints(F2, {1, 1}));
    CHECK(fac.factors[0].second == 2);
    CHECK(refold(fac, F2) == f);
}

TEST_CASE("factor x over F_3") {
    auto F3 = FqField::prime_field(3);
    FqPoly f = fqpoly_from_ints(F3, {0, 1});
    auto fac = factor_fq(f);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].first == f);
    CHECK(fac.factors[0].second == 1);
}

TEST_CASE("x^4+x+1 irreducible over F_2, cross-checked by brute force") {
    auto F2 = FqField::prime_field(2);
    FqPoly f = fqpoly_from_ints(F2, {1, 1, 0, 0, 1});
    CHECK(is_irreducible(f));
    CHECK(!has_proper_divisor_bruteforce(f));
    auto fac = factor_fq(f);
    REQUIRE(fac.factors.size() == 1);
    CHECK(fac.factors[0].second == 1);
}

TEST_CASE("random factorizations refold, F_2 F_3 F_4") {
    std::mt19937 rng(42);
    for (auto [p, n] : {std::pair{2, 1}, {3, 1}, {2, 2}}) {
        auto F = FqField::canonical(p, n);
        auto elems = F->all_elements();
        for (int trial = 0; trial < 30; ++trial) {
            int d = 1 + (int)(rng() % 8);
            std::vector<FqElem> c;
            for (int i = 0; i < d; ++i) c.push_back(elems[rng() % elems.size()]);
            c.push_back(F->one());
            FqPoly f(F->zero(), std::move(c));
            auto fac = factor_fq(f);
            CHECK(refold(fac, F) == f);
            for (auto& [g, m] : fac.factors) CHECK(is_irreducible(g));
            // factorization agrees with brute-force divisor existence
            bool has_div = fac.factors.size() > 1 ||
                           (fac.factors.size() == 1 &&
                            (fac.factors[0].second > 1 || fac.factors[0].first.degree() < d));
            if (d > 1) CHECK(has_div == has_proper_divisor_bruteforce(f));
        }
    }
}

TEST_CASE("squarefree decomposition handles p-th powers") {
    auto F2 = FqField::prime_field(2);
    FqPoly x = fqpoly_x(F2);
    FqPoly one = fqpoly_from_ints(F2, {1});
    // (x^2+x+1)^2 * x^3
    FqPoly f = fqpoly_from_ints(F2, {1, 1, 1}).pow(2) * x.pow(3);
    auto sfd = squarefree_decomp_fq(f);
    FqPoly prod = one;
    for (auto& [g, m] : sfd) {
        prod = prod * g.pow(m);
        CHECK(poly_gcd(g, g.derivative()).degree() == 0);
    }
    CHECK(prod == f);
}

TEST_CASE("roots in field") {
    auto F9 = FqField::canonical(3, 2);
    // x^2 + 1 splits over F_9 (i = root), not over F_3
    FqPoly f = fqpoly_from_ints(F9, {1, 0, 1});
    auto roots = roots_in_field(f);
    REQUIRE(roots.size() == 2);
    for (auto& r : roots) CHECK((r * r + F9->one()).is_zero());
    CHECK(roots[0].lex_less(roots[1]));
}

TEST_CASE("poly extended gcd Bezout") {
    auto F3 = FqField::prime_field(3);
    FqPoly a = fqpoly_from_ints(F3, {1, 2, 0, 1});
    FqPoly b = fqpoly_from_ints(F3, {2, 1, 1});
    FqPoly g(F3->zero()), s(F3->zero()), t(F3->zero());
    poly_ext_gcd(a, b, g, s, t);
    CHECK(s * a + t * b == g);
    CHECK((a % g).is_zero());
    CHECK((b % g).is_zero());
}

TEST_CASE("rational functions reduce canonically") {
    auto F3 = FqField::prime_field(3);
    FqPoly t = fqpoly_x(F3);
    FqPoly num = t * t - fqpoly_from_ints(F3, {1});       // t^2 - 1
    FqPoly den = t.scaled(F3->from_int(2)) - fqpoly_from_ints(F3, {2});  // 2t - 2
    RatFunc<FqElem> f(num, den);
    // (t^2-1)/(2(t-1)) = 2(t+1), denominator must be monic 1
    CHECK(f.is_polynomial());
    CHECK(f.num() == fqpoly_from_ints(F3, {2, 2}));
    RatFunc<FqElem> g = f * f.inv();
    CHECK(g.is_one());
}

TEST_CASE("series arithmetic and precision") {
    auto F3 = FqField::prime_field(3);
    using S = Series<FqElem>;
    // u = 1 + z
    S u(F3->zero(), 0, 10, {F3->one(), F3->one()});
    S v = u.inv();
    S prod = u * v;
    CHECK(prod.prec() == 10);
    CHECK(prod.agrees(S::from_coeff(F3->one(), 0, 10), 10));
    // Laurent: z^-2 * z^3 = z
    S a = S::from_coeff(F3->one(), -2, 5);
    S b = S::from_coeff(F3->one(), 3, 5);
    CHECK((a * b).order() == 1);
    CHECK_THROWS(u.agrees(v, 50));
}

TEST_CASE("matrix determinants agree across algorithms") {
    auto F4 = FqField::canonical(2, 2);
    auto elems = F4->all_elements();
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 1 + (int)(rng() % 4);
        Matrix<FqElem> m(n, n, F4->zero());
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m.at(i, j) = elems[rng() % elems.size()];
        FqElem d1 = m.det_field();
        FqElem d2 = m.det_cofactor();
        CHECK(d1 == d2);
        if (!d1.is_zero()) {
            auto inv = m.inverse();
            CHECK((m * inv) == Matrix<FqElem>::identity(n, F4->zero()));
            // adjugate identity
            CHECK(m.adjugate() * m == Matrix<FqElem>::identity(n, F4->zero()).scaled(d1));
        }
    }
}

TEST_CASE("charpoly and minpoly over a rational function field") {
    auto F3 = FqField::prime_field(3);
    using Q = RatFunc<FqElem>;
    Q qzero(F3->zero());
    Q t = Q::from_poly(fqpoly_x(F3));
    // companion matrix of x^2 - t: charpoly = minpoly = x^2 - t
    Matrix<Q> m(2, 2, qzero);
    m.at(0, 1) = t;
    m.at(1, 0) = t.one_like();
    auto chi = m.charpoly();
    CHECK(chi.degree() == 2);
    CHECK(chi.coeff(0) == -t);
    CHECK(chi.coeff(1).is_zero());
    CHECK(chi.coeff(2).is_one());
    auto mu = m.minpoly();
    CHECK(mu == chi);
    // Jordan block [[1,t],[0,1]]: minpoly (x-1)^2
    Matrix<Q> j(2, 2, qzero);
    j.at(0, 0) = qzero.one_like();
    j.at(1, 1) = qzero.one_like();
    j.at(0, 1) = t;
    auto muj = j.minpoly();
    CHECK(muj.degree() == 2);
    auto chij = j.charpoly();
    CHECK(chij == muj);
    // diag(1,1): minpoly x-1, charpoly (x-1)^2
    Matrix<Q> d = Matrix<Q>::identity(2, qzero);
    CHECK(d.minpoly().degree() == 1);
    CHECK(d.charpoly().degree() == 2);
}

TEST_CASE("kernel over field") {
    auto F2 = FqField::prime_field(2);
    Matrix<FqElem> m(2, 3, F2->zero());
    m.at(0, 0) = F2->one();
    m.at(0, 2) = F2->one();
    m.at(1, 1) = F2->one();
    auto ker = m.kernel_field();
    REQUIRE(ker.size() == 1);
    // kernel = span{(1,0,1)}
    CHECK(ker[0][0] == F2->one());
    CHECK(ker[0][1].is_zero());
    CHECK(ker[0][2] == F2->one());
}

TEST_CASE("compound matrices") {
    auto F3 = FqField::prime_field(3);
    Matrix<FqElem> m(3, 3, F3->zero());
    std::mt19937 rng(11);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m.at(i, j) = F3->from_int((long long)(rng() % 3));
    auto c3 = m.compound(3);
    REQUIRE(c3.rows() == 1);
    CHECK(c3.at(0, 0) == m.det_cofactor());
    auto c0 = m.compound(0);
    REQUIRE(c0.rows() == 1);
    CHECK(c0.at(0, 0) == F3->one());
    // det of compound(2) for 3x3: det(C_2(A)) = det(A)^2
    auto c2 = m.compound(2);
    CHECK(c2.det_cofactor() == m.det_cofactor().pow(2));
}

TEST_CASE("irreducible enumeration") {
    auto F2 = FqField::prime_field(2);
    auto irr2 = irreducibles_of_degree(F2, 2);
    REQUIRE(irr2.size() == 1);  // x^2+x+1
    auto irr3 = irreducibles_of_degree(F2, 3);
    CHECK(irr3.size() == 2);
    auto F3 = FqField::prime_field(3);
    CHECK(irreducibles_of_degree(F3, 2).size() == 3);
}
