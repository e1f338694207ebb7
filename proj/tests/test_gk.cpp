#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <vector>

#include "hmcusp/error.hpp"
#include "hmcusp/gk.hpp"

using namespace hmcusp;

namespace {

Poly make_poly(std::initializer_list<long> coeffs) {
    Poly p;
    for (long c : coeffs) p.c.push_back(Rat(c));
    p.trim();
    return p;
}

// Closed-form statement of the derivative, written down directly from the
// term-by-term rules rather than going through the weight-shift engine:
//   * every axis carrying weight 0 that is not already used by a 2-form
//     contributes both neighbor keys, with sign (-1)^{number of support
//     axes to its left};
//   * a key whose weight vector has a single nonzero entry j at axis i in
//     addition picks up  -(j/2) R  on the key with that axis moved into
//     the 2-form set;
//   * everything else cancels.
GkElement expected_differential(const GkKey& key) {
    const int d = static_cast<int>(key.J.size());
    GkElement out = gk_zero(d);
    int support = 0, support_axis = -1;
    for (int i = 0; i < d; ++i)
        if (key.J[i] != 0) {
            ++support;
            support_axis = i;
        }
    if (support == 0) return out;
    for (int i = 0; i < d; ++i) {
        if (key.J[i] != 0) continue;
        if (std::binary_search(key.eps.begin(), key.eps.end(), i)) continue;
        int p = 0;
        for (int k = 0; k < i; ++k)
            if (key.J[k] != 0) ++p;
        Poly sign = make_poly({(p % 2 == 0) ? 1 : -1});
        for (int dir : {-2, 2}) {
            GkKey t = key;
            t.J[i] += dir;
            out = gk_add(out, gk_scale(gk_basis(t), sign));
        }
    }
    if (support == 1) {
        GkKey t;
        t.J.assign(d, 0);
        t.eps = key.eps;
        t.eps.insert(std::lower_bound(t.eps.begin(), t.eps.end(), support_axis),
                     support_axis);
        Poly coeff;
        coeff.c = {Rat(0), Rat(-key.J[support_axis], 2)};
        out = gk_add(out, gk_scale(gk_basis(t), coeff));
    }
    return out;
}

GkElement random_element(int d, std::mt19937& rng) {
    std::vector<GkKey> keys = enumerate_keys(d);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(keys.size()) - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    GkElement a = gk_zero(d);
    for (int t = 0; t < 6; ++t) {
        Poly f;
        f.c = {Rat(coeff(rng)), Rat(coeff(rng))};
        f.trim();
        a = gk_add(a, gk_scale(gk_basis(keys[pick(rng)]), f));
    }
    return a;
}

}  // namespace

TEST_CASE("polynomial arithmetic, division, gcd") {
    Poly x = poly_var();
    Poly p = x * x - make_poly({1});           // t^2 - 1
    Poly q = x - make_poly({1});               // t - 1
    CHECK(p.degree() == 2);
    CHECK(p.evaluate(Rat(3)) == Rat(8));

    Poly quot, rem;
    poly_divmod(p, q, &quot, &rem);
    CHECK(rem.is_zero());
    CHECK(quot == x + make_poly({1}));

    poly_divmod(x * x + make_poly({1}), q, &quot, &rem);
    CHECK(rem == make_poly({2}));

    Poly g = poly_gcd(p, q * (x + make_poly({5})));
    CHECK(g == q);
    CHECK(poly_gcd(Poly(), Poly()).is_zero());
    // gcd is normalized monic even from non-monic inputs
    CHECK(poly_gcd(p * make_poly({7}), q * make_poly({3})) == q);

    CHECK(poly_to_string(x * x - x * make_poly({2}) + make_poly({1}), "s") ==
          "s^2 - 2*s + 1");
    CHECK(poly_to_string(Poly(), "s") == "0");
    CHECK(poly_to_string(-x, "R") == "-R");

    CHECK_THROWS_AS(poly_divmod(p, Poly(), &quot, &rem), Error);
}

TEST_CASE("rational function normalization and field operations") {
    Poly x = poly_var();
    RatFunc f(x * x - make_poly({1}), x - make_poly({1}));
    CHECK(f.is_polynomial());
    CHECK(f.num == x + make_poly({1}));

    RatFunc a(make_poly({1}), x + make_poly({1}));
    RatFunc b(make_poly({1}), x - make_poly({1}));
    RatFunc s = a + b;
    CHECK(s.num == x * make_poly({2}));
    CHECK(s.den == x * x - make_poly({1}));

    RatFunc prod = a * b;
    CHECK(prod.den == x * x - make_poly({1}));
    RatFunc quot = a / a;
    CHECK(quot.num == make_poly({1}));
    CHECK(quot.den == make_poly({1}));

    // denominator is kept monic
    RatFunc c(make_poly({1}), x * make_poly({2}));
    CHECK(c.den == x);
    CHECK(c.num.evaluate(Rat(0)) == Rat(1, 2));

    CHECK_THROWS_AS(RatFunc(make_poly({1}), Poly()), Error);
}

TEST_CASE("weight shifts: coefficients, landings, commutators") {
    // lowering the loaded axis of (2,0) lands on the spherical vector with
    // coefficient s - 1
    PsElement e20 = ps_basis({2, 0});
    PsElement low0 = ps_lower(e20, 0);
    REQUIRE(low0.terms.size() == 1);
    CHECK(low0.terms.at({0, 0}) == make_poly({-1, 1}));

    // lowering the empty axis lands on (2,-2) with coefficient s
    PsElement low1 = ps_lower(e20, 1);
    REQUIRE(low1.terms.size() == 1);
    CHECK(low1.terms.at({2, -2}) == make_poly({0, 1}));

    // raising the loaded axis: coefficient s + 1 on (4,0)
    PsElement up0 = ps_raise(e20, 0);
    CHECK(up0.terms.at({4, 0}) == make_poly({1, 1}));

    // commutator [lower_i, raise_i] acts on e_J as multiplication by -j_i,
    // and different axes commute
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> w(-3, 3);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<int> J = {2 * w(rng), 2 * w(rng), 2 * w(rng)};
        PsElement e = ps_basis(J);
        for (int i = 0; i < 3; ++i) {
            PsElement lr = ps_lower(ps_raise(e, i), i);
            PsElement rl = ps_raise(ps_lower(e, i), i);
            PsElement comm = ps_add(lr, ps_scale(rl, make_poly({-1})));
            PsElement scaled = ps_scale(e, make_poly({-J[i]}));
            CHECK(comm.terms == scaled.terms);
            for (int k = 0; k < 3; ++k) {
                if (k == i) continue;
                PsElement ab = ps_lower(ps_raise(e, i), k);
                PsElement ba = ps_raise(ps_lower(e, k), i);
                CHECK(ab.terms == ba.terms);
            }
        }
    }
}

TEST_CASE("specializing the shift at the spectral edge") {
    // a landing off the zero weight just evaluates the coefficient
    EisValue v = eis_act(ps_lower(ps_basis({2, 0}), 1));
    REQUIRE(v.terms.size() == 1);
    CHECK(v.terms.at({2, -2}) == make_poly({1}));

    // a landing on the zero weight is a residue: (s-1) becomes the symbol R
    EisValue r = eis_act(ps_lower(ps_basis({2, 0}), 0));
    REQUIRE(r.terms.size() == 1);
    CHECK(r.terms.at({0, 0}) == make_poly({0, 1}));

    // coefficient (s-1)(s+2) on the zero weight gives 3R
    PsElement z = ps_basis({0, 0});
    PsElement scaled = ps_scale(z, make_poly({-1, 1}) * make_poly({2, 1}));
    CHECK(eis_act(scaled).terms.at({0, 0}) == make_poly({0, 3}));

    // the raw zero-weight vector cannot be specialized
    try {
        eis_act(ps_basis({0, 0}));
        FAIL("expected a throw");
    } catch (const Error& e) {
        CHECK(e.kind() == std::string(errkind::NonVanishingConstantCoefficient));
    }

    // a vanishing coefficient disappears rather than throwing
    PsElement killed = ps_scale(z, Poly());
    CHECK(eis_act(killed).terms.empty());
}

TEST_CASE("basis keys: validation and enumeration") {
    CHECK(enumerate_keys(1).size() == 4);
    CHECK(enumerate_keys(2).size() == 16);
    CHECK(enumerate_keys(3).size() == 64);
    for (const GkKey& k : enumerate_keys(3)) validate_key(k, 3);  // none throw

    auto expect_invalid = [](const GkKey& k, int d) {
        try {
            validate_key(k, d);
            FAIL("expected a throw");
        } catch (const Error& e) {
            CHECK(e.kind() == std::string(errkind::InvalidKey));
        }
    };
    expect_invalid({{1, 0}, {}}, 2);        // odd weight
    expect_invalid({{4, 0}, {}}, 2);        // weight out of range
    expect_invalid({{2, 0}, {0}}, 2);       // 2-form axis inside the support
    expect_invalid({{0, 0}, {1, 0}}, 2);    // set not increasing
    expect_invalid({{0, 0}, {2}}, 2);       // axis out of range
    expect_invalid({{0, 0, 0}, {}}, 2);     // wrong length

    CHECK(form_degree({{2, -2, 0}, {2}}) == 4);
    CHECK(form_degree({{0, 0}, {0, 1}}) == 4);
    CHECK(form_degree({{0, 0}, {}}) == 0);
}

TEST_CASE("derivative matches the closed-form term rules on every key") {
    for (int d = 2; d <= 3; ++d) {
        for (const GkKey& k : enumerate_keys(d)) {
            GkElement got = differential(gk_basis(k));
            GkElement want = expected_differential(k);
            CHECK(gk_equal(got, want));
        }
    }
}

TEST_CASE("derivative of the standard two-axis combination") {
    // d( E_{(2,0)} eta_{(2,0)} + E_{(0,-2)} eta_{(0,-2)} )
    //   = -E_{(2,2)} eta_{(2,2)} + E_{(-2,-2)} eta_{(-2,-2)} + R (w'_2 - w'_1)
    GkElement a = gk_add(gk_basis({{2, 0}, {}}), gk_basis({{0, -2}, {}}));
    GkElement got = differential(a);

    Poly one = make_poly({1});
    Poly R = make_poly({0, 1});
    GkElement want = gk_zero(2);
    want = gk_add(want, gk_scale(gk_basis({{2, 2}, {}}), -one));
    want = gk_add(want, gk_scale(gk_basis({{-2, -2}, {}}), one));
    want = gk_add(want, gk_scale(gk_basis({{0, 0}, {1}}), R));
    want = gk_add(want, gk_scale(gk_basis({{0, 0}, {0}}), -R));
    CHECK(gk_equal(got, want));
}

TEST_CASE("the derivative squares to zero") {
    for (int d : {2, 3, 4}) {
        IdentityReport rep = verify_dd(d);
        CHECK(rep.pass);
        long expect = 1;
        for (int i = 0; i < d; ++i) expect *= 4;
        CHECK(rep.checks == expect);
    }
}

TEST_CASE("conjugations are involutions and commute with the derivative") {
    std::mt19937 rng(987654);
    for (int d = 2; d <= 3; ++d) {
        for (int trial = 0; trial < 8; ++trial) {
            GkElement a = random_element(d, rng);
            CHECK(gk_equal(conj_bar(conj_bar(a)), a));
            CHECK(gk_equal(differential(conj_bar(a)), conj_bar(differential(a))));
            for (int i = 0; i < d; ++i) {
                CHECK(gk_equal(conj_c(conj_c(a, i), i), a));
                CHECK(gk_equal(differential(conj_c(a, i)), conj_c(differential(a), i)));
                // the partial conjugations commute with each other and with
                // the global one
                for (int k = i + 1; k < d; ++k)
                    CHECK(gk_equal(conj_c(conj_c(a, i), k), conj_c(conj_c(a, k), i)));
                CHECK(gk_equal(conj_bar(conj_c(a, i)), conj_c(conj_bar(a), i)));
            }
        }
    }
}

TEST_CASE("closedness census and the distinguished family") {
    ClosednessCensus c2 = closedness_census(2);
    CHECK(c2.pass);
    CHECK(c2.keys == 16);
    CHECK(c2.closed == 8);

    ClosednessCensus c3 = closedness_census(3);
    CHECK(c3.pass);
    CHECK(c3.keys == 64);
    CHECK(c3.closed == 28);

    // spot checks against is_closed directly
    CHECK(is_closed(gk_basis({{2, 2}, {}})));
    CHECK(is_closed(gk_basis({{0, 0}, {0}})));
    CHECK(!is_closed(gk_basis({{2, 0}, {}})));
    CHECK(!is_closed(gk_basis({{2, 0}, {1}})));   // residue survives
    CHECK(is_closed(eprime(2, {0, 1})));
    CHECK(!is_closed(eprime(2, {0})));
    CHECK(is_closed(eprime(3, {})));
}

TEST_CASE("exactness: solvable and unsolvable cases with certificates") {
    // the difference of the two 2-forms is closed but has no primitive
    GkElement diff = gk_sub(gk_basis({{0, 0}, {1}}), gk_basis({{0, 0}, {0}}));
    CHECK(is_closed(diff));
    CHECK(!is_exact(diff).exact);

    // the full 2-form product is exact, at the cost of a pole in R
    GkElement top = gk_basis({{0, 0}, {0, 1}});
    ExactnessResult ex = is_exact(top);
    CHECK(ex.exact);
    CHECK(ex.witness_den.degree() == 1);
    CHECK(gk_equal(differential(ex.witness_num), gk_scale(top, ex.witness_den)));

    // a derivative is recognized with a polynomial witness
    GkElement src = gk_basis({{2, 0, 0}, {1}});
    GkElement img = differential(src);
    ExactnessResult ex2 = is_exact(img);
    CHECK(ex2.exact);
    CHECK(gk_equal(differential(ex2.witness_num), gk_scale(img, ex2.witness_den)));

    // mixed form degrees are handled componentwise
    GkElement mixed = gk_add(top, differential(gk_basis({{2, 0}, {}})));
    ExactnessResult ex3 = is_exact(mixed);
    CHECK(ex3.exact);
    CHECK(gk_equal(differential(ex3.witness_num), gk_scale(mixed, ex3.witness_den)));

    CHECK(is_exact(gk_zero(2)).exact);
}

TEST_CASE("pair defects are exact after removing the residue difference") {
    for (int d : {2, 3, 4}) {
        IdentityReport rep = verify_defective(d);
        CHECK(rep.pass);
        CHECK(rep.checks == d * (d - 1) / 2);
        CHECK(!rep.detail.empty());
    }

    // two axes, by hand: the combination E_{(0,2)} eta + E_{(-2,0)} eta is an
    // explicit primitive for the defect of the pair {1,2}
    GkElement ep = eprime(2, {0, 1});
    GkElement lhs = gk_sub(ep, conj_bar(ep));
    Poly R = make_poly({0, 1});
    GkElement omega1 = gk_basis({{0, 0}, {1}});   // axis 1 removed
    GkElement omega2 = gk_basis({{0, 0}, {0}});   // axis 2 removed
    GkElement target = gk_sub(lhs, gk_scale(gk_sub(omega1, omega2), R));

    GkElement witness = gk_add(gk_basis({{0, 2}, {}}), gk_basis({{-2, 0}, {}}));
    CHECK(gk_equal(differential(witness), target));
    CHECK(is_exact(target).exact);
}

TEST_CASE("partial conjugation of the corner forms has a signed primitive") {
    for (int d : {3, 4, 5}) {
        IdentityReport rep = verify_harder(d);
        CHECK(rep.pass);
    }
    CHECK(verify_harder(3).checks == 3);
    CHECK(verify_harder(4).checks == 20);
    CHECK(verify_harder(5).checks == 80);

    // a hand value at three axes: conjugating the full corner form on the
    // first axis leaves twice the symmetric part, which matches the plain
    // derivative of the smaller corner form (positive sign for the first axis)
    GkElement ep = eprime(3, {0, 1, 2});
    GkElement lhs = gk_add(conj_c(ep, 0), ep);
    GkElement rhs = differential(gk_basis({{0, 2, 2}, {}}));
    CHECK(gk_equal(lhs, rhs));
    // second axis picks up one transposition, hence the sign
    GkElement lhs2 = gk_add(conj_c(ep, 1), ep);
    GkElement rhs2 = gk_scale(differential(gk_basis({{2, 0, 2}, {}})), make_poly({-1}));
    CHECK(gk_equal(lhs2, rhs2));
}

TEST_CASE("printing is stable and readable") {
    CHECK(gk_to_string(gk_zero(2)) == "0");
    GkElement a = gk_scale(gk_basis({{2, 0}, {1}}), make_poly({0, 1}));
    std::string s = gk_to_string(a);
    CHECK(s.find("E(2,0)") != std::string::npos);
    CHECK(s.find("w'{2}") != std::string::npos);
    CHECK(s.find("R") != std::string::npos);
}
