#pragma once

#include <cassert>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgal/counting.hpp"
#include "pgal/ff.hpp"
#include "pgal/split_types.hpp"

namespace pgal {

// Dense polynomial over F_q, lowest-degree coefficient first, trimmed.
// The zero polynomial has an empty coefficient vector.
class FqPoly {
public:
    FqPoly() : field_(nullptr) {}
    explicit FqPoly(const FqField& field) : field_(&field) {}
    FqPoly(const FqField& field, std::vector<FqElem> coeffs) : field_(&field), c_(std::move(coeffs)) { trim(); }

    static FqPoly zero(const FqField& f) { return FqPoly(f); }
    static FqPoly one(const FqField& f) { return FqPoly(f, {f.one()}); }
    static FqPoly x(const FqField& f) { return FqPoly(f, {f.zero(), f.one()}); }
    static FqPoly constant(const FqField& f, FqElem a) { return FqPoly(f, {a}); }

    static FqPoly from_ints(const FqField& f, std::vector<long long> v) {
        std::vector<FqElem> c;
        c.reserve(v.size());
        for (long long a : v) c.push_back(f.from_int(a));
        return FqPoly(f, std::move(c));
    }

    // Monic degree-n polynomial whose non-leading coefficients are the base-q
    // digits of `code` (constant term = least significant digit).
    static FqPoly monic_from_code(const FqField& f, int n, uint64_t code) {
        std::vector<FqElem> c(n + 1);
        for (int i = 0; i < n; ++i) { c[i] = f.from_code(code % f.q()); code /= f.q(); }
        c[n] = f.one();
        return FqPoly(f, std::move(c));
    }

    const FqField& field() const { return *field_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_monic() const { return !c_.empty() && c_.back() == field_->one(); }
    FqElem coeff(int i) const { return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : field_->zero(); }
    const std::vector<FqElem>& coeffs() const { return c_; }

    FqElem eval(FqElem x) const {
        FqElem r = field_->zero();
        for (int i = degree(); i >= 0; --i) r = field_->add(field_->mul(r, x), c_[i]);
        return r;
    }

    std::string str() const {
        if (is_zero()) return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (c_[i] == field_->zero()) continue;
            if (!s.empty()) s += " + ";
            if (i == 0 || !(c_[i] == field_->one())) s += field_->to_string(c_[i]);
            if (i >= 1) {
                if (!(c_[i] == field_->one())) s += "*";
                s += "x";
                if (i > 1) s += "^" + std::to_string(i);
            }
        }
        return s;
    }

    friend bool operator==(const FqPoly& a, const FqPoly& b) { return a.c_ == b.c_; }

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b) {
        const FqField& F = *a.field_;
        std::vector<FqElem> c(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (size_t i = 0; i < c.size(); ++i) c[i] = F.add(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        return FqPoly(F, std::move(c));
    }

    friend FqPoly operator-(const FqPoly& a, const FqPoly& b) {
        const FqField& F = *a.field_;
        std::vector<FqElem> c(std::max(a.c_.size(), b.c_.size()), F.zero());
        for (size_t i = 0; i < c.size(); ++i) c[i] = F.sub(a.coeff(static_cast<int>(i)), b.coeff(static_cast<int>(i)));
        return FqPoly(F, std::move(c));
    }

    friend FqPoly operator*(const FqPoly& a, const FqPoly& b) {
        const FqField& F = *a.field_;
        if (a.is_zero() || b.is_zero()) return zero(F);
        std::vector<FqElem> c(a.c_.size() + b.c_.size() - 1, F.zero());
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == F.zero()) continue;
            for (size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = F.add(c[i + j], F.mul(a.c_[i], b.c_[j]));
        }
        return FqPoly(F, std::move(c));
    }

    FqPoly scaled(FqElem s) const {
        std::vector<FqElem> c(c_.size());
        for (size_t i = 0; i < c_.size(); ++i) c[i] = field_->mul(c_[i], s);
        return FqPoly(*field_, std::move(c));
    }

    FqPoly monic() const {
        if (is_zero() || is_monic()) return *this;
        return scaled(field_->inv(c_.back()));
    }

private:
    const FqField* field_;
    std::vector<FqElem> c_;

    void trim() {
        while (!c_.empty() && c_.back() == field_->zero()) c_.pop_back();
    }
};

inline std::pair<FqPoly, FqPoly> divmod(const FqPoly& a, const FqPoly& b) {
    if (b.is_zero()) throw std::domain_error("divmod: division by zero polynomial");
    const FqField& F = a.field();
    if (a.degree() < b.degree()) return {FqPoly::zero(F), a};
    FqElem lead_inv = F.inv(b.coeff(b.degree()));
    std::vector<FqElem> rem(a.coeffs());
    std::vector<FqElem> quot(a.degree() - b.degree() + 1, F.zero());
    for (int k = a.degree() - b.degree(); k >= 0; --k) {
        FqElem c = F.mul(rem[k + b.degree()], lead_inv);
        quot[k] = c;
        if (c == F.zero()) continue;
        for (int j = 0; j <= b.degree(); ++j)
            rem[k + j] = F.sub(rem[k + j], F.mul(c, b.coeff(j)));
    }
    return {FqPoly(F, std::move(quot)), FqPoly(F, std::move(rem))};
}

inline FqPoly operator/(const FqPoly& a, const FqPoly& b) { return divmod(a, b).first; }
inline FqPoly operator%(const FqPoly& a, const FqPoly& b) { return divmod(a, b).second; }

// gcd, normalized monic (gcd(0,0) = 0).
inline FqPoly gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a % b;
        a = b;
        b = r;
    }
    return a.monic();
}

inline FqPoly derivative(const FqPoly& a) {
    const FqField& F = a.field();
    if (a.degree() < 1) return FqPoly::zero(F);
    std::vector<FqElem> c(a.degree());
    for (int i = 1; i <= a.degree(); ++i)
        c[i - 1] = F.mul(a.coeff(i), F.from_int(i));
    return FqPoly(F, std::move(c));
}

inline FqPoly pow_mod(FqPoly base, const Int& e, const FqPoly& mod) {
    const FqField& F = base.field();
    FqPoly r = FqPoly::one(F);
    base = base % mod;
    for (long bit = static_cast<long>(mpz_sizeinbase(e.get_mpz_t(), 2)) - 1; bit >= 0; --bit) {
        r = (r * r) % mod;
        if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(bit))) r = (r * base) % mod;
    }
    return r;
}

inline bool is_squarefree(const FqPoly& g) {
    if (g.degree() < 1) throw std::invalid_argument("is_squarefree: degree must be >= 1");
    return gcd(g, derivative(g)).degree() == 0;
}

namespace detail {

// splittable deterministic stream for the equal-degree splitting step
struct FactorRng {
    uint64_t state;
    explicit FactorRng(uint64_t seed) : state(seed + 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    uint64_t below(uint64_t bound) {
        return static_cast<uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }
};

inline FqPoly random_poly(const FqField& F, int max_deg, FactorRng& rng) {
    std::vector<FqElem> c(max_deg + 1);
    for (auto& e : c) e = F.from_code(rng.below(F.q()));
    return FqPoly(F, std::move(c));
}

// p-th root of a polynomial of the form v(x^p)
inline FqPoly pth_root_poly(const FqPoly& a) {
    const FqField& F = a.field();
    int p = static_cast<int>(F.p());
    std::vector<FqElem> c(a.degree() / p + 1);
    for (size_t i = 0; i < c.size(); ++i) c[i] = F.pth_root(a.coeff(static_cast<int>(i) * p));
    return FqPoly(F, std::move(c));
}

inline void squarefree_decompose(const FqPoly& f, int outer_mult,
                                 std::vector<std::pair<FqPoly, int>>& out) {
    const FqField& F = f.field();
    if (f.degree() < 1) return;
    FqPoly fp = derivative(f);
    if (fp.is_zero()) {
        squarefree_decompose(pth_root_poly(f), outer_mult * static_cast<int>(F.p()), out);
        return;
    }
    FqPoly c = gcd(f, fp);
    FqPoly w = f / c;
    int i = 1;
    while (w.degree() > 0) {
        FqPoly y = gcd(w, c);
        FqPoly z = w / y;
        if (z.degree() > 0) out.emplace_back(z.monic(), i * outer_mult);
        w = y;
        c = c / y;
        ++i;
    }
    if (c.degree() > 0)
        squarefree_decompose(pth_root_poly(c), outer_mult * static_cast<int>(F.p()), out);
}

// distinct-degree split of a monic squarefree polynomial: (product, degree) pairs
inline std::vector<std::pair<FqPoly, int>> distinct_degree(FqPoly g) {
    const FqField& F = g.field();
    std::vector<std::pair<FqPoly, int>> out;
    FqPoly h = FqPoly::x(F) % g;
    int d = 0;
    while (g.degree() >= 2 * (d + 1)) {
        ++d;
        h = pow_mod(h, Int(F.q()), g);
        FqPoly gd = gcd(h - FqPoly::x(F), g);
        if (gd.degree() > 0) {
            out.emplace_back(gd, d);
            g = g / gd;
            h = h % g;
        }
    }
    if (g.degree() > 0) out.emplace_back(g, g.degree());
    return out;
}

// Cantor-Zassenhaus equal-degree splitting of a product of degree-d irreducibles
inline void equal_degree(const FqPoly& g, int d, FactorRng& rng, std::vector<FqPoly>& out) {
    const FqField& F = g.field();
    if (g.degree() == d) {
        out.push_back(g);
        return;
    }
    while (true) {
        FqPoly rho = random_poly(F, g.degree() - 1, rng);
        if (rho.degree() < 1) continue;
        FqPoly t;
        if (F.p() == 2) {
            // trace map sum rho^(2^i), i < f*d
            t = FqPoly::zero(F);
            FqPoly cur = rho % g;
            for (unsigned i = 0; i < F.f() * static_cast<unsigned>(d); ++i) {
                t = (t + cur) % g;
                cur = (cur * cur) % g;
            }
        } else {
            Int e = (int_pow(Int(F.q()), d) - 1) / 2;
            t = pow_mod(rho, e, g) - FqPoly::one(F);
        }
        FqPoly u = gcd(t, g);
        if (u.degree() > 0 && u.degree() < g.degree()) {
            equal_degree(u, d, rng, out);
            equal_degree(g / u, d, rng, out);
            return;
        }
    }
}

}  // namespace detail

// Full factorization into monic irreducibles with multiplicities, sorted by
// (degree, coefficients). The equal-degree stage draws from a stream seeded
// by `seed`; the output is the same for every seed.
inline std::vector<std::pair<FqPoly, int>> factor(const FqPoly& g, uint64_t seed = 0) {
    if (g.degree() < 1) throw std::invalid_argument("factor: degree must be >= 1");
    if (!g.is_monic()) throw std::invalid_argument("factor: polynomial must be monic");
    detail::FactorRng rng(seed);
    std::vector<std::pair<FqPoly, int>> sqf;
    detail::squarefree_decompose(g, 1, sqf);
    std::vector<std::pair<FqPoly, int>> out;
    for (const auto& [part, mult] : sqf) {
        for (const auto& [prod, d] : detail::distinct_degree(part)) {
            std::vector<FqPoly> irr;
            detail::equal_degree(prod, d, rng, irr);
            for (auto& fac : irr) out.emplace_back(std::move(fac), mult);
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
        if (a.second != b.second) return a.second < b.second;
        return a.first.coeffs() < b.first.coeffs();
    });
    return out;
}

inline SplittingType splitting_type(const FqPoly& g, uint64_t seed = 0) {
    std::vector<std::pair<int, int>> parts;
    for (const auto& [fac, mult] : factor(g, seed)) parts.emplace_back(fac.degree(), mult);
    return SplittingType(std::move(parts));
}

// Visits every monic degree-n polynomial over the field exactly once, in
// lexicographic coefficient order (constant term fastest).
inline void enumerate_monic(const FqField& F, int n, const std::function<void(const FqPoly&)>& visit,
                            uint64_t cap = 100000000ULL) {
    if (n < 1) throw std::invalid_argument("enumerate_monic: n must be >= 1");
    double total = 1;
    for (int i = 0; i < n; ++i) total *= static_cast<double>(F.q());
    if (total > static_cast<double>(cap))
        throw std::length_error("enumerate_monic: q^n exceeds the census cap");
    uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= F.q();
    for (uint64_t code = 0; code < count; ++code)
        visit(FqPoly::monic_from_code(F, n, code));
}

}  // namespace pgal
