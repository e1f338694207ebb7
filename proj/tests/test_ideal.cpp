#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hmcusp/error.hpp"
#include "hmcusp/field.hpp"
#include "hmcusp/ideal.hpp"
#include "oracles.hpp"

using namespace hmcusp;

TEST_CASE("principal ideals and Hermite form basics") {
    QuadraticField F(5);
    CHECK(principal_ideal(F, F.omega()) == unit_ideal());  // omega is a unit here
    FractionalIdeal two = principal_ideal(F, fe_int(2));
    CHECK(two.den == 1);
    CHECK(two.p == 2);
    CHECK(two.q == 0);
    CHECK(two.r == 2);
    CHECK(two.norm() == Rat(4));
    FractionalIdeal half = principal_ideal(F, FieldElement{Rat(Int(1), Int(2)), Rat(0)});
    CHECK(half.den == 2);
    CHECK(half.norm() == Rat(Int(1), Int(4)));
    CHECK_THROWS_AS(principal_ideal(F, fe_int(0)), Error);
}

TEST_CASE("membership agrees with the spanning set") {
    std::mt19937 rng(11);
    for (long D : {5L, 13L, 40L}) {
        QuadraticField F(D);
        for (int rep = 0; rep < 40; ++rep) {
            FieldElement g1 = oracles::random_integral(rng);
            FieldElement g2 = oracles::random_integral(rng);
            if (g1.is_zero() && g2.is_zero()) continue;
            FractionalIdeal I = ideal_from_generators(F, {g1, g2});
            CHECK(ideal_contains(F, I, g1));
            CHECK(ideal_contains(F, I, g2));
            CHECK(ideal_contains(F, I, F.mul(g1, F.omega())));
            CHECK(ideal_contains(F, I, g1 + g2));
            CHECK(ideal_contains(F, I, F.mul(g2, oracles::random_integral(rng))));
        }
        // non-members of a specific ideal
        FractionalIdeal I = principal_ideal(F, fe_int(3));
        CHECK(!ideal_contains(F, I, fe_int(1)));
        CHECK(!ideal_contains(F, I, F.omega()));
        CHECK(!ideal_contains(F, I, fe_int(3, 1)));
        CHECK(ideal_contains(F, I, fe_int(3, -3)));
    }
}

TEST_CASE("hermite input validation") {
    QuadraticField F(5);
    // (2, omega) is not an ideal for D = 5 since 2 is inert
    CHECK_THROWS_AS(ideal_from_hnf(F, 1, 2, 0, 1), Error);
    // (11, 7 + omega) is one: 7 = -4 mod 11 and 4 is a root of x^2 - x - 1
    FractionalIdeal P = ideal_from_hnf(F, 1, 11, 7, 1);
    CHECK(P.norm() == Rat(11));
    CHECK_THROWS_AS(ideal_from_hnf(F, 1, 4, 5, 1), Error);   // q out of range
    CHECK_THROWS_AS(ideal_from_hnf(F, 1, 3, 0, 2), Error);   // r does not divide p
}

TEST_CASE("product, conjugate, inverse, powers") {
    std::mt19937 rng(23);
    for (long D : {8L, 13L, 40L, 60L}) {
        QuadraticField F(D);
        for (int rep = 0; rep < 30; ++rep) {
            FieldElement g1 = oracles::random_integral(rng);
            FieldElement g2 = oracles::random_integral(rng);
            if (g1.is_zero() && g2.is_zero()) continue;
            FractionalIdeal I = ideal_from_generators(F, {g1, g2});
            FieldElement jg = oracles::random_integral(rng, 5);
            if (jg.is_zero()) jg = fe_int(2, 1);
            FractionalIdeal J = principal_ideal(F, jg);
            CHECK(mul_ideal(F, I, J).norm() == I.norm() * J.norm());
            CHECK(mul_ideal(F, I, J) == mul_ideal(F, J, I));
            CHECK(mul_ideal(F, I, inv_ideal(F, I)) == unit_ideal());
            // I * conj(I) = (norm I)
            FractionalIdeal nI = mul_ideal(F, I, conj_ideal(F, I));
            Rat n = I.norm();
            FractionalIdeal expect =
                principal_ideal(F, FieldElement{n, Rat(0)});
            CHECK(nI == expect);
            CHECK(pow_ideal(F, I, 3) == mul_ideal(F, I, mul_ideal(F, I, I)));
            CHECK(pow_ideal(F, I, -2) == inv_ideal(F, mul_ideal(F, I, I)));
            CHECK(pow_ideal(F, I, 0) == unit_ideal());
        }
    }
}

TEST_CASE("divisibility is containment") {
    QuadraticField F(5);
    FractionalIdeal six = principal_ideal(F, fe_int(6));
    FractionalIdeal two = principal_ideal(F, fe_int(2));
    FractionalIdeal three = principal_ideal(F, fe_int(3));
    CHECK(ideal_divides(F, two, six));
    CHECK(ideal_divides(F, three, six));
    CHECK(!ideal_divides(F, six, two));
    CHECK(ideal_divides(F, six, mul_ideal(F, six, two)));
}

TEST_CASE("splitting behaviour of rational primes") {
    QuadraticField F5(5);
    // inert
    auto p2 = primes_above(F5, 2);
    REQUIRE(p2.size() == 1);
    CHECK(p2[0].norm() == Rat(4));
    // ramified
    auto p5 = primes_above(F5, 5);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].norm() == Rat(5));
    CHECK(mul_ideal(F5, p5[0], p5[0]) == principal_ideal(F5, fe_int(5)));
    // split
    auto p11 = primes_above(F5, 11);
    REQUIRE(p11.size() == 2);
    CHECK(p11[0] != p11[1]);
    CHECK(p11[0].norm() == Rat(11));
    CHECK(p11[1].norm() == Rat(11));
    CHECK(mul_ideal(F5, p11[0], p11[1]) == principal_ideal(F5, fe_int(11)));
    CHECK(conj_ideal(F5, p11[0]) == p11[1]);

    QuadraticField F8(8);
    auto q2 = primes_above(F8, 2);  // ramified even prime
    REQUIRE(q2.size() == 1);
    CHECK(q2[0].norm() == Rat(2));
    CHECK(mul_ideal(F8, q2[0], q2[0]) == principal_ideal(F8, fe_int(2)));

    QuadraticField F17(17);
    auto q2b = primes_above(F17, 2);  // 17 = 1 mod 8: split even prime
    REQUIRE(q2b.size() == 2);
    CHECK(mul_ideal(F17, q2b[0], q2b[1]) == principal_ideal(F17, fe_int(2)));
}

TEST_CASE("factorization round trip") {
    std::mt19937 rng(37);
    for (long D : {5L, 8L, 13L, 40L}) {
        QuadraticField F(D);
        std::vector<FractionalIdeal> primes;
        for (long p : {2L, 3L, 5L, 7L, 11L})
            for (const auto& P : primes_above(F, p)) primes.push_back(P);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(primes.size()) - 1);
        std::uniform_int_distribution<int> expo(1, 3);
        for (int rep = 0; rep < 20; ++rep) {
            FractionalIdeal I = unit_ideal();
            std::map<FractionalIdeal, int> built;
            int nf = 1 + rep % 3;
            for (int i = 0; i < nf; ++i) {
                const FractionalIdeal& P = primes[pick(rng)];
                int e = expo(rng);
                built[P] += e;
                I = mul_ideal(F, I, pow_ideal(F, P, e));
            }
            auto factors = factor_ideal(F, I);
            std::map<FractionalIdeal, int> got;
            for (const auto& pf : factors) got[pf.prime] += pf.exponent;
            CHECK(got == built);
        }
    }
}

TEST_CASE("divisor sums match direct enumeration") {
    std::mt19937 rng(51);
    for (long D : {5L, 12L, 17L, 40L}) {
        QuadraticField F(D);
        for (int rep = 0; rep < 25; ++rep) {
            FieldElement g = oracles::random_integral(rng, 7);
            if (g.is_zero()) continue;
            FractionalIdeal I = principal_ideal(F, g);
            if (I.norm() > Rat(600)) continue;
            CAPTURE(D);
            CHECK(sigma1(F, I) == oracles::sigma1_by_enumeration(F, I));
        }
        // a couple of non-principal inputs too
        for (long p : {2L, 3L, 7L, 11L, 13L})
            for (const auto& P : primes_above(F, p)) {
                CHECK(sigma1(F, P) == oracles::sigma1_by_enumeration(F, P));
                FractionalIdeal P2 = mul_ideal(F, P, P);
                CHECK(sigma1(F, P2) == oracles::sigma1_by_enumeration(F, P2));
            }
    }
}

TEST_CASE("the ramified ideal generated by the root") {
    for (long D : {5L, 8L, 12L, 13L, 17L}) {
        QuadraticField F(D);
        FractionalIdeal d = different_ideal(F);
        CHECK(d.norm() == Rat(Int(D)));
        FractionalIdeal dinv = inverse_different(F);
        CHECK(dinv.norm() == Rat(Int(1), Int(D)));
        CHECK(mul_ideal(F, d, dinv) == unit_ideal());
        CHECK(!dinv.is_integral());
    }
}

TEST_CASE("trace-ordered enumeration in the inverse different") {
    QuadraticField F(5);
    auto v1 = enumerate_inverse_different(F, 1);
    REQUIRE(v1.size() == 2);
    for (const auto& x : v1) {
        CHECK(F.trace(x) == Rat(1));
        CHECK(F.totally_positive(x));
        CHECK(ideal_contains(F, inverse_different(F), x));
    }
    auto v3 = enumerate_inverse_different(F, 3);
    CHECK(v3.size() > v1.size());
    // sorted by (trace, b, a) and every element totally positive in the ideal
    for (size_t i = 0; i + 1 < v3.size(); ++i) {
        Rat t0 = F.trace(v3[i]), t1 = F.trace(v3[i + 1]);
        bool ordered = t0 < t1 || (t0 == t1 && (v3[i].b < v3[i + 1].b ||
                                   (v3[i].b == v3[i + 1].b && v3[i].a < v3[i + 1].a)));
        CHECK(ordered);
    }
    for (const auto& x : v3) {
        CHECK(F.totally_positive(x));
        CHECK(ideal_contains(F, inverse_different(F), x));
        Rat t = F.trace(x);
        CHECK(t.denominator() == 1);
        CHECK(t <= Rat(3));
    }
    // count per trace level: number of integers in an open interval of length t*sqrt(5)
    std::map<Rat, int> per_trace;
    for (const auto& x : v3) per_trace[F.trace(x)]++;
    CHECK(per_trace[Rat(1)] == 2);
    CHECK(per_trace[Rat(2)] == 5);
    CHECK(per_trace[Rat(3)] == 6);
}

TEST_CASE("principality decisions") {
    QuadraticField F40(40);
    auto above2 = primes_above(F40, 2);
    REQUIRE(above2.size() == 1);
    CHECK(!is_principal(F40, above2[0]));  // the nontrivial class
    FieldElement g;
    FractionalIdeal I = principal_ideal(F40, fe_int(1, 1));
    CHECK(is_principal(F40, I, &g));
    CHECK(principal_ideal(F40, g) == I);

    QuadraticField F5(5);
    for (long p : {11L, 19L, 29L, 31L})
        for (const auto& P : primes_above(F5, p)) CHECK(is_principal(F5, P));
}
