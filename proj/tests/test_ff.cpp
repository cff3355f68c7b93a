#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "pgal/ff.hpp"
#include "pgal/fqpoly.hpp"

using namespace pgal;

TEST_CASE("field construction picks the smallest-lex irreducible modulus", "[ff]") {
    FqField f3 = make_field(3, 1);
    CHECK(f3.q() == 3);
    CHECK(f3.modulus() == std::vector<uint32_t>{0, 1});  // x

    // the only monic irreducible quadratic over F_2, by enumerating all four
    FqField f4 = make_field(2, 2);
    CHECK(f4.q() == 4);
    CHECK(f4.modulus() == std::vector<uint32_t>{1, 1, 1});  // x^2 + x + 1
    {
        FqField f2 = make_field(2, 1);
        int irreducible = 0;
        std::vector<uint32_t> only;
        for (uint32_t c0 = 0; c0 < 2; ++c0)
            for (uint32_t c1 = 0; c1 < 2; ++c1) {
                FqPoly m = FqPoly::from_ints(f2, {c0, c1, 1});
                bool has_root = m.eval(f2.from_int(0)) == f2.zero() || m.eval(f2.from_int(1)) == f2.zero();
                if (!has_root) {
                    ++irreducible;
                    only = {c0, c1, 1};
                }
            }
        CHECK(irreducible == 1);
        CHECK(only == f4.modulus());
    }

    CHECK_THROWS_AS(make_field(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(make_field(5, 0), std::invalid_argument);
}

TEST_CASE("field arithmetic", "[ff]") {
    FqField f5 = make_field(5, 1);
    CHECK(f5.mul(f5.from_int(2), f5.from_int(3)) == f5.one());

    FqField f4 = make_field(2, 2);
    FqElem u = f4.from_code(2);  // the residue of x
    CHECK(f4.mul(u, u) == f4.from_code(3));  // x^2 = x + 1

    FqField f7 = make_field(7, 1);
    FqElem inv3 = f7.inv(f7.from_int(3));
    CHECK(inv3 == f7.from_int(5));
    CHECK(f7.mul(inv3, f7.from_int(3)) == f7.one());

    CHECK_THROWS_AS(f7.inv(f7.zero()), std::domain_error);
}

TEST_CASE("quadratic residues", "[ff]") {
    FqField f5 = make_field(5, 1);
    CHECK(f5.is_square(f5.from_int(4)));
    CHECK_FALSE(f5.is_square(f5.from_int(2)));
    {
        // oracle: enumerate squares mod 5
        std::set<uint32_t> squares;
        for (uint32_t a = 0; a < 5; ++a) squares.insert(a * a % 5);
        for (uint32_t a = 0; a < 5; ++a)
            CHECK(f5.is_square(f5.from_code(a)) == (squares.count(a) > 0));
    }

    // -27 reduces to 0 in characteristic 3, and zero counts as a square
    FqField f9 = make_field(3, 2);
    CHECK(f9.is_square(f9.from_int(-27)));

    // -27 is a square exactly when q = 1 mod 3 (for p > 3)
    for (auto [p, f, expect] : {std::tuple<uint64_t, unsigned, bool>{7, 1, true},
                                {5, 1, false},
                                {5, 2, true},
                                {11, 1, false},
                                {13, 1, true}}) {
        FqField F = make_field(p, f);
        CHECK(F.is_square(F.from_int(-27)) == expect);
    }

    FqField f2 = make_field(2, 1);
    CHECK_THROWS_AS(f2.is_square(f2.one()), std::domain_error);
}

TEST_CASE("square counts and the non-residue flip", "[ff]") {
    for (auto [p, f] : {std::pair<uint64_t, unsigned>{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {11, 2}}) {
        FqField F = make_field(p, f);
        uint64_t squares = 0;
        for (uint64_t a = 1; a < F.q(); ++a) squares += F.is_square(F.from_code(a));
        CHECK(squares == (F.q() - 1) / 2);

        // first non-residue
        FqElem nr{};
        for (uint64_t a = 1; a < F.q(); ++a)
            if (!F.is_square(F.from_code(a))) { nr = F.from_code(a); break; }
        for (uint64_t a = 1; a < F.q(); ++a) {
            FqElem x = F.from_code(a);
            CHECK(F.is_square(x) != F.is_square(F.mul(nr, x)));
        }
    }
}

TEST_CASE("Frobenius is additive", "[ff]") {
    for (auto [p, f] : {std::pair<uint64_t, unsigned>{2, 2}, {3, 2}, {5, 2}, {7, 2}, {2, 3}, {3, 3}}) {
        FqField F = make_field(p, f);
        for (uint64_t a = 0; a < F.q(); ++a)
            for (uint64_t b = 0; b < F.q(); ++b) {
                FqElem x = F.from_code(a), y = F.from_code(b);
                CHECK(F.pow(F.add(x, y), p) == F.add(F.pow(x, p), F.pow(y, p)));
            }
    }
}

TEST_CASE("inversion round-trips", "[ff]") {
    FqField F = make_field(7, 2);
    for (uint64_t a = 1; a < F.q(); ++a) {
        FqElem x = F.from_code(a);
        CHECK(F.inv(F.inv(x)) == x);
        CHECK(F.mul(x, F.inv(x)) == F.one());
    }
}

TEST_CASE("large field without lookup tables", "[ff]") {
    FqField F = make_field(2053, 1);  // above the table limit
    CHECK(F.mul(F.from_int(1000), F.from_int(1000)) == F.from_int(1000000 % 2053));
    CHECK(F.mul(F.inv(F.from_int(17)), F.from_int(17)) == F.one());
    uint64_t squares = 0;
    for (uint64_t a = 1; a < F.q(); ++a) squares += F.is_square(F.from_code(a));
    CHECK(squares == (F.q() - 1) / 2);
}
