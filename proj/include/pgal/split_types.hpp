#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgal/counting.hpp"
#include "pgal/rat.hpp"

namespace pgal {

// Splitting type of a monic polynomial: the multiset of
// (degree, multiplicity) pairs of its distinct irreducible factors.
// Canonical order: degree decreasing, then exponent decreasing.
struct SplittingType {
    std::vector<std::pair<int, int>> parts;  // (degree, exponent)

    SplittingType() = default;
    explicit SplittingType(std::vector<std::pair<int, int>> p) : parts(std::move(p)) { canonicalize(); }

    static SplittingType of_partition(std::vector<int> degrees) {
        std::vector<std::pair<int, int>> p;
        p.reserve(degrees.size());
        for (int d : degrees) p.emplace_back(d, 1);
        return SplittingType(std::move(p));
    }

    void canonicalize() {
        std::sort(parts.begin(), parts.end(), [](auto a, auto b) {
            if (a.first != b.first) return a.first > b.first;
            return a.second > b.second;
        });
    }

    int n() const {
        int s = 0;
        for (auto [d, e] : parts) s += d * e;
        return s;
    }

    bool is_star() const {
        for (auto [d, e] : parts)
            if (e != 1) return false;
        return true;
    }

    // c_i: number of parts of degree i with exponent 1 view (counts all parts of degree i)
    int count_of_degree(int i) const {
        int c = 0;
        for (auto [d, e] : parts)
            if (d == i) ++c;
        return c;
    }

    std::string str() const {
        std::string s = "(";
        for (size_t i = 0; i < parts.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(parts[i].first);
            if (parts[i].second != 1) s += '^' + std::to_string(parts[i].second);
        }
        return s + ")";
    }

    friend bool operator==(const SplittingType& a, const SplittingType& b) { return a.parts == b.parts; }
    friend bool operator<(const SplittingType& a, const SplittingType& b) { return a.parts < b.parts; }
};

// T_n (all types) or T_n* (exponent-free types, i.e. partitions of n).
inline std::vector<SplittingType> all_types(int n, bool star) {
    if (n < 1 || n > 12) throw std::invalid_argument("all_types: n must be in [1,12]");
    std::vector<SplittingType> out;
    std::vector<std::pair<int, int>> acc;
    // parts chosen in canonical (non-increasing) order
    auto rec = [&](auto&& self, int remaining, std::pair<int, int> max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(SplittingType(acc));
            return;
        }
        for (int d = std::min(remaining, max_part.first); d >= 1; --d) {
            int emax = star ? 1 : remaining / d;
            if (d == max_part.first) emax = std::min(emax, max_part.second);
            for (int e = emax; e >= 1; --e) {
                if (d * e > remaining) continue;
                acc.emplace_back(d, e);
                self(self, remaining - d * e, {d, e});
                acc.pop_back();
            }
        }
    };
    rec(rec, n, {n, n});
    std::sort(out.begin(), out.end());
    return out;
}

// Proportion of S_n lying in the conjugacy class with cycle type mu:
// product over i of i^(-c_i) / c_i!.
inline Rat nu_n(const SplittingType& mu) {
    if (!mu.is_star()) throw std::invalid_argument("nu_n: type has a repeated factor");
    int n = mu.n();
    if (n < 1) throw std::invalid_argument("nu_n: empty type");
    Rat r(1);
    for (int i = 1; i <= n; ++i) {
        int c = mu.count_of_degree(i);
        if (!c) continue;
        r /= make_rat(int_pow(Int(i), c) * factorial(c), 1);
    }
    return r;
}

// Number of monic square-free degree-n polynomials over F_q with type mu:
// product over i of C(M(q;i), c_i).
inline Int q_count(int n, const Int& q, const SplittingType& mu) {
    if (!mu.is_star()) throw std::invalid_argument("q_count: type has a repeated factor");
    if (mu.n() != n) throw std::invalid_argument("q_count: type does not sum to n");
    Int r(1);
    for (int i = 1; i <= n; ++i) {
        int c = mu.count_of_degree(i);
        if (!c) continue;
        r *= binomial(count_irreducibles(q, i), c);
    }
    return r;
}

// Measure of monic degree-n polynomials over O_p whose reduction is
// square-free with type mu: q_count / q^n.
inline Rat nu_star(int n, const Int& q, const SplittingType& mu) {
    return make_rat(q_count(n, q, mu), int_pow(q, n));
}

// Conjugacy class of a subgroup of S_n: cyclic classes are labelled by the
// cycle type of a generator; the only non-cyclic label needed is S3.
struct GroupLabel {
    bool cyclic = true;
    SplittingType mu;       // generator cycle type, when cyclic
    std::string noncyclic;  // name, when not

    static GroupLabel cyclic_of(SplittingType m) { return {true, std::move(m), {}}; }
    static GroupLabel s3() { return {false, {}, "S3"}; }

    std::string str() const {
        if (!cyclic) return noncyclic;
        int n = mu.n();
        if (n <= 3) {
            bool identity = true;
            for (auto [d, e] : mu.parts) identity &= (d == 1);
            if (identity) return "Id";
            if (n == 2) return "C2";
            return mu.parts.front().first == 2 ? "C2" : "C3";
        }
        return "C" + mu.str();
    }

    friend bool operator==(const GroupLabel& a, const GroupLabel& b) {
        return a.cyclic == b.cyclic && a.mu == b.mu && a.noncyclic == b.noncyclic;
    }
};

// Erdos-Turan distribution on conjugacy classes of subgroups of S_n.
inline Rat erdos_turan(int n, const GroupLabel& g) {
    if (!g.cyclic) return Rat(0);
    if (g.mu.n() != n) throw std::invalid_argument("erdos_turan: label does not match n");
    return nu_n(g.mu);
}

// Bound on |nu_star - nu_n|: n^2/(q-n^2) * nu_n for n >= 3 (valid for q > n^2),
// (n^2+n)/(q-(n^2+n)) * nu_n for n = 2 (valid for q > n^2+n). Empty when the
// threshold fails.
inline std::optional<Rat> bound_error(int n, const Int& q, const SplittingType& mu) {
    if (n < 2) return std::nullopt;
    Int thresh = n >= 3 ? Int(Int(n) * n) : Int(Int(n) * n + n);
    if (q <= thresh) return std::nullopt;
    return make_rat(thresh, q - thresh) * nu_n(mu);
}

struct BoundCheck {
    SplittingType mu;
    Rat error;  // |nu_star - nu_n|
    Rat bound;
    bool pass = false;
};

struct BoundReport {
    bool feasible = false;
    bool all_pass = false;
    std::vector<BoundCheck> rows;
};

inline BoundReport verify_bounds(int n, const Int& q) {
    BoundReport rep;
    rep.feasible = true;
    rep.all_pass = true;
    for (const auto& mu : all_types(n, true)) {
        auto b = bound_error(n, q, mu);
        if (!b) {
            rep.feasible = false;
            rep.all_pass = false;
            return rep;
        }
        Rat err = abs(nu_star(n, q, mu) - nu_n(mu));
        bool ok = err < *b;
        rep.all_pass = rep.all_pass && ok;
        rep.rows.push_back({mu, err, *b, ok});
    }
    return rep;
}

enum class Conditioning { None, Star, Unramified };

// Exact probability table over splitting types and/or group labels.
struct Dist {
    int n = 0;
    Int q;
    Conditioning cond = Conditioning::None;
    std::vector<std::pair<SplittingType, Rat>> types;
    std::vector<std::pair<GroupLabel, Rat>> groups;
};

namespace labels {
inline SplittingType t11() { return SplittingType::of_partition({1, 1}); }
inline SplittingType t2() { return SplittingType::of_partition({2}); }
inline SplittingType t111() { return SplittingType::of_partition({1, 1, 1}); }
inline SplittingType t21() { return SplittingType::of_partition({2, 1}); }
inline SplittingType t3() { return SplittingType::of_partition({3}); }
inline GroupLabel id2() { return GroupLabel::cyclic_of(t11()); }
inline GroupLabel c2_of2() { return GroupLabel::cyclic_of(t2()); }
inline GroupLabel id3() { return GroupLabel::cyclic_of(t111()); }
inline GroupLabel c2_of3() { return GroupLabel::cyclic_of(t21()); }
inline GroupLabel c3() { return GroupLabel::cyclic_of(t3()); }
}  // namespace labels

inline void require_odd_prime_power(const Int& q, uint64_t min_p, const char* who) {
    auto pf = factor_prime_power(q);
    if (!pf) throw std::invalid_argument(std::string(who) + ": q is not a prime power");
    if (pf->first <= min_p)
        throw std::invalid_argument(std::string(who) + ": requires p > " + std::to_string(min_p));
}

// Exact distribution for monic quadratics over O_p (p odd):
//   P(split) = 1/2 - 1/(2q+2),  P(inert or ramified) = 1/2 + 1/(2q+2).
inline Dist exact_quadratic(const Int& q) {
    require_odd_prime_power(q, 2, "exact_quadratic");
    Dist d;
    d.n = 2;
    d.q = q;
    Rat half = make_rat(1, 2);
    Rat corr = make_rat(Int(1), 2 * q + 2);
    d.types.emplace_back(labels::t11(), half - corr);
    d.types.emplace_back(labels::t2(), half + corr);
    d.groups.emplace_back(labels::id2(), half - corr);
    d.groups.emplace_back(labels::c2_of2(), half + corr);
    return d;
}

// +1 if q = 1 mod 3, -1 if q = 2 mod 3 (q coprime to 3 assumed).
inline int legendre_q_mod3(const Int& q) {
    Int r = q % 3;
    if (r == 0) throw std::invalid_argument("legendre_q_mod3: q divisible by 3");
    return r == 1 ? 1 : -1;
}

// Exact distribution for monic cubics over O_p (p > 3).
inline Dist exact_cubic(const Int& q) {
    require_odd_prime_power(q, 3, "exact_cubic");
    Dist d;
    d.n = 3;
    d.q = q;
    Int q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    Int denom5 = q4 + q3 + q2 + q + 1;  // (q^5-1)/(q-1)
    Rat p111 = make_rat(1, 6) - make_rat(3 * q4 + q3 + 2 * q2 + 2 * q + 1, 6 * (q + 1) * denom5);
    Rat p21 = make_rat(1, 2) + make_rat(q4 - q3 - 1, 2 * (q + 1) * denom5);
    Rat p3 = make_rat(1, 3) + make_rat(2 * q2 - q + 2, 3 * denom5);
    int leg = legendre_q_mod3(q);
    // mass of the totally ramified cubic cases; lands on C3 or S3 by the
    // discriminant square test, which reduces to q mod 3
    Rat ram3 = make_rat(q2 + 1, denom5);
    Rat pc3 = make_rat(1, 3) - make_rat(q2 + q + 1, 3 * denom5) + make_rat(1 + leg, 2) * ram3;
    Rat ps3 = make_rat(1 - leg, 2) * ram3;
    d.types.emplace_back(labels::t111(), p111);
    d.types.emplace_back(labels::t21(), p21);
    d.types.emplace_back(labels::t3(), p3);
    d.groups.emplace_back(labels::id3(), p111);
    d.groups.emplace_back(labels::c2_of3(), p21);
    d.groups.emplace_back(labels::c3(), pc3);
    d.groups.emplace_back(GroupLabel::s3(), ps3);
    return d;
}

// Splitting-type masses restricted to polynomials with unramified splitting
// field, plus the total unramified mass and the conditional probability of a
// trivial group given unramified.
struct UnramifiedExact {
    Dist dist;
    Rat total_mass;
    Rat conditional_trivial;
};

inline UnramifiedExact exact_unramified(int n, const Int& q) {
    if (n != 2 && n != 3) throw std::invalid_argument("exact_unramified: n must be 2 or 3");
    require_odd_prime_power(q, static_cast<uint64_t>(n), "exact_unramified");
    UnramifiedExact u;
    u.dist.n = n;
    u.dist.q = q;
    u.dist.cond = Conditioning::Unramified;
    if (n == 2) {
        Rat row = make_rat(1, 2) - make_rat(Int(1), 2 * q + 2);
        u.dist.types.emplace_back(labels::t11(), row);
        u.dist.types.emplace_back(labels::t2(), row);
        u.total_mass = Rat(1) - make_rat(Int(1), q + 1);
        u.conditional_trivial = make_rat(1, 2);
    } else {
        Int q2 = q * q, q3 = q2 * q, q4 = q3 * q;
        Int denom5 = q4 + q3 + q2 + q + 1;
        Rat r111 = make_rat(1, 6) - make_rat(3 * q4 + q3 + 2 * q2 + 2 * q + 1, 6 * (q + 1) * denom5);
        Rat r21 = make_rat(1, 2) + make_rat(q4 - q3 - 2 * q2 - 2 * q - 1, 2 * (q + 1) * denom5);
        Rat r3 = make_rat(1, 3) - make_rat(q2 + q + 1, 3 * denom5);
        u.dist.types.emplace_back(labels::t111(), r111);
        u.dist.types.emplace_back(labels::t21(), r21);
        u.dist.types.emplace_back(labels::t3(), r3);
        u.total_mass = Rat(1) - make_rat(q2 + q + 1, denom5);
        u.conditional_trivial = make_rat(1, 6) - make_rat(q, 2 * (q + 1) * (q + 1));
    }
    return u;
}

}  // namespace pgal
