#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

#include "pgal/fqpoly.hpp"
#include "pgal/padic.hpp"
#include "pgal/split_types.hpp"

namespace pgal {

enum class CaseTag {
    QuadUnit,
    QuadRamified,
    Cubic1,
    Cubic2,
    Cubic3,
    Cubic4,
    Cubic5A,
    Cubic5B,
    Cubic5C,
    Cubic5D,
    FastPath,
};

inline const char* case_tag_name(CaseTag t) {
    switch (t) {
        case CaseTag::QuadUnit: return "quad-unit";
        case CaseTag::QuadRamified: return "quad-ramified";
        case CaseTag::Cubic1: return "case1";
        case CaseTag::Cubic2: return "case2";
        case CaseTag::Cubic3: return "case3";
        case CaseTag::Cubic4: return "case4";
        case CaseTag::Cubic5A: return "case5A";
        case CaseTag::Cubic5B: return "case5B";
        case CaseTag::Cubic5C: return "case5C";
        case CaseTag::Cubic5D: return "case5D";
        case CaseTag::FastPath: return "fast-path";
    }
    return "?";
}

struct Decision {
    SplittingType type;
    GroupLabel group;
    bool unramified = false;
    CaseTag tag = CaseTag::FastPath;
    int rescales = 0;
};

// Kills the x^(n-1) coefficient via x -> x - a_{n-1}/n; valid for p not
// dividing n, and splitting type and Galois group are unchanged.
inline PadicPoly depress(const PadicPoly& g) {
    const PadicField& K = g.field();
    int n = g.degree();
    if (static_cast<uint64_t>(n) % K.p() == 0)
        throw std::invalid_argument("depress: p divides the degree");
    int prec = g.precision();
    int level = K.levels_for(prec);
    Int ninv;
    if (mpz_invert(ninv.get_mpz_t(), Int(n).get_mpz_t(), K.p_pow(level).get_mpz_t()) == 0)
        throw std::logic_error("depress: n not invertible");
    PadicElem delta = -(g.coeff(n - 1).truncated(prec).scaled(ninv));
    std::vector<PadicElem> b;
    b.reserve(n + 1);
    for (int i = 0; i <= n; ++i) b.push_back(g.coeff(i).truncated(prec));
    for (int i = 0; i < n; ++i)
        for (int j = n - 1; j >= i; --j) b[j] = b[j] + delta * b[j + 1];
    return PadicPoly(K, std::move(b));
}

// Removes the largest even pi-power from A; the quadratic x^2 + A and its
// rescale share splitting type and group.
inline std::pair<PadicElem, int> normalize_quadratic(const PadicElem& A) {
    Valuation v = A.valuation();
    if (!v.determined)
        throw PrecisionExhausted("normalize_quadratic: coefficient indistinguishable from 0");
    int r = v.value / 2;
    return {A.shifted_down(2 * r), r};
}

struct CubicNormalized {
    PadicElem a;  // linear coefficient, divided by pi^2m
    PadicElem b;  // constant coefficient, divided by pi^3m
    int m = 0;
};

// Largest m with pi^2m | A and pi^3m | B removed; afterwards not both
// val(a) >= 2 and val(b) >= 3.
inline CubicNormalized normalize_cubic(const PadicElem& A, const PadicElem& B) {
    Valuation vA = A.valuation(), vB = B.valuation();
    int m;
    if (vA.determined && vB.determined) {
        m = std::min(vA.value / 2, vB.value / 3);
    } else if (vA.determined) {
        m = vA.value / 2;
        if (m > vB.value / 3)  // vB.value is only a lower bound here
            throw PrecisionExhausted("normalize_cubic: constant coefficient indistinguishable from 0");
    } else if (vB.determined) {
        m = vB.value / 3;
        if (m > vA.value / 2)
            throw PrecisionExhausted("normalize_cubic: linear coefficient indistinguishable from 0");
    } else {
        throw PrecisionExhausted("normalize_cubic: both coefficients indistinguishable from 0");
    }
    return {A.shifted_down(2 * m), B.shifted_down(3 * m), m};
}

// Quadratic decision: depress to x^2 + A, strip even pi-powers, then the
// unit case splits iff -A is a square; odd valuation forces a ramified C2.
inline Decision decide_quadratic(const PadicPoly& g) {
    if (g.degree() != 2) throw std::invalid_argument("decide_quadratic: degree must be 2");
    PadicPoly h = depress(g);
    auto [A, r] = normalize_quadratic(h.coeff(0));
    Decision d;
    d.rescales = r;
    if (A.valuation().value == 0) {
        d.tag = CaseTag::QuadUnit;
        d.unramified = true;
        if (is_square_in_field(-A)) {
            d.type = labels::t11();
            d.group = labels::id2();
        } else {
            d.type = labels::t2();
            d.group = labels::c2_of2();
        }
    } else {
        d.tag = CaseTag::QuadRamified;
        d.unramified = false;
        d.type = labels::t2();
        d.group = labels::c2_of2();
    }
    return d;
}

namespace detail {

// valuation class of the normalized linear coefficient: 0, 1, or 2 (>= 2)
inline int cubic_class_a(const Valuation& v) {
    if (v.determined) return std::min(v.value, 2);
    if (v.value >= 2) return 2;
    throw PrecisionExhausted("decide_cubic: linear coefficient valuation undetermined");
}

// valuation class of the normalized constant coefficient: 0..2, or 3 (>= 3)
inline int cubic_class_b(const Valuation& v) {
    if (v.determined) return std::min(v.value, 3);
    if (v.value >= 3) return 3;
    throw PrecisionExhausted("decide_cubic: constant coefficient valuation undetermined");
}

inline Decision cubic_from_reduction_type(SplittingType t, CaseTag tag, int m) {
    Decision d;
    d.group = GroupLabel::cyclic_of(t);
    d.type = std::move(t);
    d.unramified = true;
    d.tag = tag;
    d.rescales = m;
    return d;
}

}  // namespace detail

// Cubic decision for p > 3, on the depressed normalized form x^3 + Ax + B:
//   val B >= 1, val A  = 0          squarefree reduction x(x^2+a), unramified
//   val B >= 2, val A  = 1          ramified (2 1) / C2
//   val B  = 2, val A >= 2          type (3), group by the discriminant test
//   val B  = 1, val A >= 1          type (3), group by the discriminant test
//   val B  = 0                      by reduction type; a double root deflates
//                                   to a quadratic decided on its own
inline Decision decide_cubic(const PadicPoly& g, uint64_t seed = 0) {
    const PadicField& K = g.field();
    if (g.degree() != 3) throw std::invalid_argument("decide_cubic: degree must be 3");
    if (K.p() <= 3) throw std::invalid_argument("decide_cubic: requires p > 3");
    PadicPoly h = depress(g);
    auto nz = normalize_cubic(h.coeff(1), h.coeff(0));
    const PadicElem& A = nz.a;
    const PadicElem& B = nz.b;
    const FqField& R = K.residue();

    int cb = detail::cubic_class_b(B.valuation());
    if (cb >= 1) {
        int ca = detail::cubic_class_a(A.valuation());
        if (ca == 0) {
            // reduction x(x^2 + a) with a != 0 is squarefree
            FqPoly red(R, {R.zero(), A.reduce(), R.zero(), R.one()});
            return detail::cubic_from_reduction_type(splitting_type(red, seed), CaseTag::Cubic1, nz.m);
        }
        if (cb >= 2 && ca == 1) {
            Decision d;
            d.type = labels::t21();
            d.group = labels::c2_of3();
            d.unramified = false;
            d.tag = CaseTag::Cubic2;
            d.rescales = nz.m;
            return d;
        }
        if ((cb == 2 && ca == 2) || cb == 1) {
            Decision d;
            d.type = labels::t3();
            d.unramified = false;
            d.tag = cb == 1 ? CaseTag::Cubic4 : CaseTag::Cubic3;
            d.rescales = nz.m;
            PadicElem disc = -(A * A * A).scaled(Int(4)) - (B * B).scaled(Int(27));
            d.group = is_square_in_field(disc) ? labels::c3() : GroupLabel::s3();
            return d;
        }
        throw std::logic_error("decide_cubic: normalization left val(A) >= 2 and val(B) >= 3");
    }

    // Case 5: unit constant term, classify by the reduction
    FqPoly red(R, {B.reduce(), A.reduce(), R.zero(), R.one()});
    auto factors = factor(red, seed);
    bool squarefree = true;
    for (const auto& [fac, mult] : factors) squarefree &= (mult == 1);
    if (squarefree) {
        SplittingType t = splitting_type(red, seed);
        CaseTag tag = CaseTag::Cubic5C;
        if (t == labels::t3()) tag = CaseTag::Cubic5A;
        else if (t == labels::t21()) tag = CaseTag::Cubic5B;
        return detail::cubic_from_reduction_type(std::move(t), tag, nz.m);
    }

    // double root: reduction (x+a)^2 (x-2a); a triple root would force a zero
    // constant term, impossible here
    FqElem simple_root;
    bool found_simple = false, found_double = false;
    for (const auto& [fac, mult] : factors) {
        if (mult == 1 && fac.degree() == 1) {
            simple_root = R.neg(fac.coeff(0));
            found_simple = true;
        }
        if (mult == 2 && fac.degree() == 1) found_double = true;
    }
    if (!found_simple || !found_double)
        throw std::logic_error("decide_cubic: impossible reduction shape in the unit case");

    int prec = std::min(A.precision(), B.precision());
    PadicPoly cubic(K, {B.truncated(prec), A.truncated(prec), PadicElem::zero(K, prec),
                        PadicElem::one(K, prec)});
    PadicElem root = hensel_lift(cubic, simple_root, prec);
    // deflate: x^3 + Ax + B = (x - root)(x^2 + root x + (root^2 + A))
    PadicPoly quad(K, {root * root + A.truncated(prec), root, PadicElem::one(K, prec)});
    Decision sub = decide_quadratic(quad);
    Decision d;
    d.tag = CaseTag::Cubic5D;
    d.rescales = nz.m;
    d.unramified = sub.unramified;
    if (sub.type == labels::t11()) {
        d.type = labels::t111();
        d.group = labels::id3();
    } else {
        d.type = labels::t21();
        d.group = labels::c2_of3();
    }
    return d;
}

struct FastPathResult {
    bool decided = false;  // false: non-squarefree reduction, deferred
    SplittingType type;
    GroupLabel group;
};

// When the reduction is squarefree the splitting type lifts unchanged and the
// Galois group is the cyclic class of that type; otherwise deferred.
inline FastPathResult fast_path(const PadicPoly& g, uint64_t seed = 0) {
    FqPoly red = reduce_poly(g);
    if (!is_squarefree(red)) return {};
    FastPathResult r;
    r.decided = true;
    r.type = splitting_type(red, seed);
    r.group = GroupLabel::cyclic_of(r.type);
    return r;
}

}  // namespace pgal
