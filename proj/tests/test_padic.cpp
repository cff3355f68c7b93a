#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pgal/padic.hpp"

using namespace pgal;

TEST_CASE("digit arithmetic with carries", "[padic]") {
    PadicField z5(make_field(5, 1), 1);
    auto two = PadicElem::from_int(z5, 2, 3);
    auto three = PadicElem::from_int(z5, 3, 3);
    CHECK((two + three).digits() == std::vector<uint32_t>{0, 1, 0});

    PadicField e2(make_field(5, 1), 2);
    auto pi = PadicElem::pi_pow(e2, 1, 6);
    auto p = PadicElem::from_int(e2, 5, 6);
    CHECK((pi * pi).same_coords(p));

    auto one = PadicElem::one(z5, 5);
    auto u = PadicElem::pi_pow(z5, 1, 5);
    CHECK(((one + u) * (one - u)).same_coords(one - u * u));
}

TEST_CASE("precision rules", "[padic]") {
    PadicField z5(make_field(5, 1), 1);
    auto a = PadicElem::from_int(z5, 7, 8);
    auto b = PadicElem::from_int(z5, 3, 4);
    CHECK((a + b).precision() == 4);
    CHECK((a * b).precision() == 4);
    CHECK((a - a).precision() == 8);  // stored digits survive; only the valuation is open
    CHECK_FALSE((a - a).valuation().determined);
    CHECK_THROWS_AS(a.shifted_down(8), PrecisionExhausted);
    CHECK_THROWS_AS(PadicElem::from_int(z5, 1, 0), PrecisionExhausted);
}

TEST_CASE("valuations", "[padic]") {
    PadicField z5(make_field(5, 1), 1);
    auto a = PadicElem::from_digits(z5, {0, 0, 3, 1, 2});
    CHECK(a.valuation().determined);
    CHECK(a.valuation().value == 2);

    auto z = PadicElem::zero(z5, 6);
    CHECK_FALSE(z.valuation().determined);
    CHECK(z.valuation().value == 6);

    PadicField e3(make_field(7, 1), 3);
    auto p = PadicElem::from_int(e3, 7, 9);
    CHECK(p.valuation().value == 3);  // pi^3 = p

    // valuations add under multiplication
    DigitStream st(e3, 5);
    for (uint64_t i = 0; i < 40; ++i) {
        auto x = PadicElem::pi_pow(e3, i % 3, 12) * st.sample(2 * i, 12);
        auto y = PadicElem::pi_pow(e3, i % 2, 12) * st.sample(2 * i + 1, 12);
        Valuation vx = x.valuation(), vy = y.valuation(), vxy = (x * y).valuation();
        if (vx.determined && vy.determined && vxy.determined)
            CHECK(vxy.value == vx.value + vy.value);
    }
}

TEST_CASE("Haar sampling is uniform and digit-stable", "[padic]") {
    PadicField z5(make_field(5, 1), 1);
    DigitStream st(z5, 42);

    // aggregate digit frequencies over 10^5 draws at precision 6
    const int kDraws = 100000, kPrec = 6;
    std::vector<uint64_t> counts(5, 0);
    for (int j = 0; j < kDraws; ++j)
        for (int i = 0; i < kPrec; ++i) ++counts[st.digit(j, i)];
    double total = static_cast<double>(kDraws) * kPrec;
    double expected = total / 5.0;
    double sigma = std::sqrt(total * (1.0 / 5) * (4.0 / 5));
    for (uint64_t c : counts) CHECK(std::fabs(static_cast<double>(c) - expected) < 5 * sigma);

    // reductions mod pi^2 are uniform over 25 classes
    std::vector<uint64_t> classes(25, 0);
    for (int j = 0; j < kDraws; ++j) ++classes[st.digit(j, 0) + 5 * st.digit(j, 1)];
    double cexp = kDraws / 25.0;
    double csig = std::sqrt(kDraws * (1.0 / 25) * (24.0 / 25));
    for (uint64_t c : classes) CHECK(std::fabs(static_cast<double>(c) - cexp) < 5 * csig);

    // extending precision never changes earlier digits
    auto d4 = st.sample(7, 4).digits();
    auto d8 = st.sample(7, 8).digits();
    CHECK(std::equal(d4.begin(), d4.end(), d8.begin()));

    DigitStream other(z5, 43);
    bool differs = false;
    for (int i = 0; i < 16 && !differs; ++i) differs = st.digit(0, i) != other.digit(0, i);
    CHECK(differs);
}

TEST_CASE("digit round trips through the packed representation", "[padic]") {
    for (uint32_t e : {1u, 2u, 3u}) {
        for (auto [p, f] : {std::pair<uint64_t, unsigned>{5, 1}, {5, 2}, {7, 2}}) {
            PadicField K(make_field(p, f), e);
            DigitStream st(K, 100 * e + p);
            for (uint64_t j = 0; j < 25; ++j) {
                auto x = st.sample(j, 9);
                CHECK(PadicElem::from_digits(K, x.digits()).same_coords(x));
            }
            // ring identities
            auto a = st.sample(100, 9), b = st.sample(101, 9), c = st.sample(102, 9);
            CHECK(((a * b) * c).same_coords(a * (b * c)));
            CHECK((a * (b + c)).same_coords(a * b + a * c));
            CHECK((a - a + b).same_coords(b));
        }
    }
}

TEST_CASE("Newton polygons", "[padic]") {
    PadicField z5(make_field(5, 1), 1);

    // ord(B) = 2, ord(A) = 2: one slope -2/3 of length 3
    auto np1 = newton_polygon(PadicPoly::from_ints(z5, {25, 25, 0, 1}, 8));
    REQUIRE(np1.size() == 1);
    CHECK(np1[0] == NewtonSegment{make_rat(-2, 3), 3});

    // ord(B) = 1, ord(A) >= 1 (A = 0 exactly stays above the hull)
    auto np2 = newton_polygon(PadicPoly::from_ints(z5, {5, 0, 0, 1}, 8));
    REQUIRE(np2.size() == 1);
    CHECK(np2[0] == NewtonSegment{make_rat(-1, 3), 3});

    // ord(B) = 2, ord(A) = 1: slopes -(ord B - 1) and -1/2
    auto np3 = newton_polygon(PadicPoly::from_ints(z5, {25, 5, 0, 1}, 8));
    REQUIRE(np3.size() == 2);
    CHECK(np3[0] == NewtonSegment{make_rat(-1, 1), 1});
    CHECK(np3[1] == NewtonSegment{make_rat(-1, 2), 2});

    // polygon of a product of linear factors reads off the root valuations
    auto lin = [&](int v) { return PadicElem::pi_pow(z5, v, 10); };
    PadicElem r1 = lin(2), r2 = lin(1), r3 = PadicElem::one(z5, 10);
    std::vector<PadicElem> c = {-(r1 * r2 * r3), r1 * r2 + r1 * r3 + r2 * r3, -(r1 + r2 + r3),
                                PadicElem::one(z5, 10)};
    auto np4 = newton_polygon(PadicPoly(z5, c));
    REQUIRE(np4.size() == 3);
    CHECK(np4[0] == NewtonSegment{make_rat(-2, 1), 1});
    CHECK(np4[1] == NewtonSegment{make_rat(-1, 1), 1});
    CHECK(np4[2] == NewtonSegment{make_rat(0, 1), 1});

    // an undetermined constant term blocks the polygon
    CHECK_THROWS_AS(newton_polygon(PadicPoly::from_ints(z5, {0, 1, 0, 1}, 6)), PrecisionExhausted);
}

TEST_CASE("Hensel lifting", "[padic]") {
    PadicField z3(make_field(3, 1), 1);
    auto g1 = PadicPoly::from_ints(z3, {-1, 0, 1}, 10);
    CHECK(hensel_lift(g1, z3.residue().from_int(1), 10).same_coords(PadicElem::one(z3, 10)));

    PadicField z7(make_field(7, 1), 1);
    auto g2 = PadicPoly::from_ints(z7, {-2, 0, 1}, 10);
    auto r2 = hensel_lift(g2, z7.residue().from_int(3), 2);
    CHECK(r2.digits() == std::vector<uint32_t>{3, 1});  // 3 + 1*7 = 10; 10^2 = 2 mod 49

    PadicField z5(make_field(5, 1), 1);
    auto g3 = PadicPoly::from_ints(z5, {0, -1, 0, 1}, 10);
    CHECK_FALSE(hensel_lift(g3, z5.residue().zero(), 8).valuation().determined);

    // raising the target precision refines, never rewrites, digits
    auto r6 = hensel_lift(g2, z7.residue().from_int(3), 6);
    auto r9 = hensel_lift(g2, z7.residue().from_int(3), 9);
    auto d6 = r6.digits(), d9 = r9.digits();
    CHECK(std::equal(d6.begin(), d6.end(), d9.begin()));
    CHECK_FALSE(g2.eval(r9).valuation().determined);  // root modulo pi^9

    // non-simple roots are rejected
    auto sq = PadicPoly::from_ints(z5, {0, 0, 1}, 8);
    CHECK_THROWS_AS(hensel_lift(sq, z5.residue().zero(), 8), std::invalid_argument);
    // wrong residue rejected
    CHECK_THROWS_AS(hensel_lift(g2, z7.residue().from_int(1), 4), std::invalid_argument);
}

TEST_CASE("p-adic square detection", "[padic]") {
    PadicField z5(make_field(5, 1), 1);
    CHECK_FALSE(is_square_in_field(PadicElem::pi_pow(z5, 1, 6)));
    CHECK_FALSE(is_square_in_field(PadicElem::from_int(z5, 2, 6)));
    auto x = PadicElem::from_int(z5, 4, 8) * PadicElem::pi_pow(z5, 1, 8) * PadicElem::pi_pow(z5, 1, 8);
    CHECK(is_square_in_field(x));
    CHECK_THROWS_AS(is_square_in_field(PadicElem::zero(z5, 6)), PrecisionExhausted);

    DigitStream st(z5, 11);
    for (uint64_t j = 0; j < 50; ++j) {
        auto a = st.sample(j, 6);
        if (!a.valuation().determined || a.valuation().value > 1) continue;
        CHECK(is_square_in_field(a * a));
    }

    PadicField e2(make_field(5, 2), 2);
    DigitStream st2(e2, 12);
    for (uint64_t j = 0; j < 50; ++j) {
        auto a = st2.sample(j, 6);
        if (!a.valuation().determined || a.valuation().value > 1) continue;
        CHECK(is_square_in_field(a * a));
    }
}

TEST_CASE("reduction to the residue field", "[padic]") {
    PadicField z5(make_field(5, 1), 1);
    const FqField& R = z5.residue();

    // unit coefficients pass through
    auto g1 = PadicPoly::from_ints(z5, {3, 2, 1}, 6);
    CHECK(reduce_poly(g1) == FqPoly::from_ints(R, {3, 2, 1}));

    // pi-multiples vanish
    auto g2 = PadicPoly::from_ints(z5, {10, 5, 1}, 6);
    CHECK(reduce_poly(g2) == FqPoly::from_ints(R, {0, 0, 1}));

    // reduction only reads digit 0
    auto g3 = PadicPoly::from_ints(z5, {7, 13, 1}, 6);
    CHECK(reduce_poly(g3) == FqPoly::from_ints(R, {2, 3, 1}));
}
