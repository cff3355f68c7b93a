// Test-side oracles: re-derive the exact quadratic/cubic distributions by
// summing the valuation-case masses directly, independently of the closed
// forms in split_types.hpp.
#pragma once

#include "pgal/rat.hpp"
#include "pgal/split_types.hpp"

namespace pgal::testoracle {

struct QuadRoute {
    Rat id, c2;              // unconditioned probabilities
    Rat unram_11, unram_2;   // masses with unramified splitting field
    Rat unram_total;
};

// Quadratic x^2 + A with A drawn Haar-random: strip even pi-powers of A
// (geometric series sums to 1), then the unit case splits/inerts with equal
// probability and odd valuation is ramified C2.
inline QuadRoute quad_case_sums(const Int& q) {
    QuadRoute r;
    Rat unit_mass = Rat(1) - make_rat(Int(1), q);                    // val(A') = 0
    Rat ram_mass = make_rat(Int(1), q) - make_rat(Int(1), q * q);    // val(A') = 1
    Rat norm = Rat(1) - make_rat(Int(1), q * q);                     // conditional space
    r.id = unit_mass / 2 / norm;
    r.c2 = (unit_mass / 2 + ram_mass) / norm;
    // unramified <=> val(A) even; summing over all rescales
    // P(val = 2j) = (1-1/q) q^-2j, split/inert each half
    Rat even_mass = (Rat(1) - make_rat(Int(1), q)) / (Rat(1) - make_rat(Int(1), q * q));
    r.unram_11 = even_mass / 2;
    r.unram_2 = even_mass / 2;
    r.unram_total = even_mass;
    return r;
}

struct CubicRoute {
    Rat t111, t21, t3;       // unconditioned type probabilities
    Rat id, c2, c3, s3;      // group probabilities
    Rat r111, r21_claimed, r3, r_total_claimed;  // unramified rows as the case split asserts
};

// Cubic x^3 + Ax + B after normalization; the five valuation cases with the
// masses stated alongside each, summed and divided by 1 - q^-5.
inline CubicRoute cubic_case_sums(const Int& q) {
    Rat qi = make_rat(Int(1), q);
    Rat q2 = qi * qi, q3 = q2 * qi, q4 = q3 * qi, q5 = q4 * qi;
    Rat norm = Rat(1) - q5;

    Rat c1 = qi * (Rat(1) - qi);          // val B >= 1, val A = 0
    Rat c2m = q2 * (qi - q2);             // val B >= 2, val A = 1
    Rat c3m = (q2 - q3) * q2;             // val B = 2, val A >= 2
    Rat c4m = (qi - q2) * qi;             // val B = 1, val A >= 1
    Rat c5 = Rat(1) - qi;                 // val B = 0
    // subcase fractions of case 5, by the reduction's factorization shape
    Rat f5a = make_rat(1, 3) + qi / 3;    // irreducible
    Rat f5b = make_rat(1, 2) - qi / 2;    // irreducible quadratic times linear
    Rat f5c = make_rat(1, 6) - Rat(5) * qi / 6;  // three distinct roots
    Rat f5d = qi;                          // double root
    Rat lift_split = make_rat(Int(1), 2 * q + 2);  // double root: splits completely

    CubicRoute r;
    r.t111 = (c1 / 2 + c5 * f5c + c5 * f5d * lift_split) / norm;
    r.t21 = (c1 / 2 + c2m + c5 * f5b + c5 * f5d * (Rat(1) - lift_split)) / norm;
    r.t3 = (c3m + c4m + c5 * f5a) / norm;
    r.id = r.t111;
    r.c2 = r.t21;
    bool q1mod3 = (q % 3) == 1;
    r.c3 = ((q1mod3 ? c3m + c4m : Rat(0)) + c5 * f5a) / norm;
    r.s3 = (q1mod3 ? Rat(0) : c3m + c4m) / norm;
    // unramified rows, counting all of cases 1 and 5 as unramified (the
    // double-root case is overcounted here; the Monte Carlo harness measures
    // the discrepancy)
    r.r111 = r.t111;
    r.r21_claimed = (c1 / 2 + c5 * f5b + c5 * f5d * (Rat(1) - lift_split)) / norm;
    r.r3 = (c5 * f5a) / norm;
    r.r_total_claimed = (c1 + c5) / norm;
    return r;
}

}  // namespace pgal::testoracle
