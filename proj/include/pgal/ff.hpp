#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgal/rat.hpp"

namespace pgal {

// Element of F_q, stored as the integer whose base-p digits are the
// coefficients of the residue polynomial (constant term first).
struct FqElem {
    uint32_t code = 0;
    friend bool operator==(FqElem a, FqElem b) { return a.code == b.code; }
    friend bool operator!=(FqElem a, FqElem b) { return a.code != b.code; }
    friend bool operator<(FqElem a, FqElem b) { return a.code < b.code; }
};

// The field F_q = F_p[u]/(m(u)), q = p^f, with m the lexicographically
// smallest monic irreducible of degree f (coefficient tuples ordered from
// the constant term; f = 1 uses m = u). Immutable after construction.
class FqField {
public:
    FqField(uint64_t p, unsigned f) : p_(p), f_(f) {
        if (!is_prime(p)) throw std::invalid_argument("FqField: p must be prime");
        if (f == 0) throw std::invalid_argument("FqField: f must be positive");
        double qd = 1.0;
        for (unsigned i = 0; i < f; ++i) qd *= static_cast<double>(p);
        if (qd > 2147483648.0) throw std::invalid_argument("FqField: q exceeds 2^31 cap");
        q_ = 1;
        for (unsigned i = 0; i < f; ++i) q_ *= p;
        modulus_ = find_modulus();
        if (q_ <= kTableLimit) build_tables();
    }

    uint64_t p() const { return p_; }
    unsigned f() const { return f_; }
    uint64_t q() const { return q_; }
    const std::vector<uint32_t>& modulus() const { return modulus_; }

    FqElem zero() const { return {0}; }
    FqElem one() const { return {1}; }

    FqElem from_code(uint64_t code) const {
        assert(code < q_);
        return {static_cast<uint32_t>(code)};
    }

    // Embeds an integer via reduction mod p (image of Z in F_q).
    FqElem from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += static_cast<long long>(p_);
        return {static_cast<uint32_t>(r)};
    }

    std::vector<uint32_t> digits(FqElem a) const {
        std::vector<uint32_t> d(f_);
        uint64_t c = a.code;
        for (unsigned i = 0; i < f_; ++i) { d[i] = c % p_; c /= p_; }
        return d;
    }

    FqElem add(FqElem a, FqElem b) const {
        if (f_ == 1) {
            uint64_t s = a.code + b.code;
            if (s >= p_) s -= p_;
            return {static_cast<uint32_t>(s)};
        }
        uint64_t ca = a.code, cb = b.code, out = 0, mult = 1;
        for (unsigned i = 0; i < f_; ++i) {
            uint64_t s = ca % p_ + cb % p_;
            if (s >= p_) s -= p_;
            out += s * mult;
            mult *= p_;
            ca /= p_; cb /= p_;
        }
        return {static_cast<uint32_t>(out)};
    }

    FqElem neg(FqElem a) const {
        if (f_ == 1) return {a.code ? static_cast<uint32_t>(p_ - a.code) : 0};
        uint64_t ca = a.code, out = 0, mult = 1;
        for (unsigned i = 0; i < f_; ++i) {
            uint64_t d = ca % p_;
            out += (d ? p_ - d : 0) * mult;
            mult *= p_;
            ca /= p_;
        }
        return {static_cast<uint32_t>(out)};
    }

    FqElem sub(FqElem a, FqElem b) const { return add(a, neg(b)); }

    FqElem mul(FqElem a, FqElem b) const {
        if (!mul_table_.empty()) return {mul_table_[a.code * q_ + b.code]};
        return mul_generic(a, b);
    }

    FqElem inv(FqElem a) const {
        if (a.code == 0) throw std::domain_error("FqField: division by zero");
        if (!inv_table_.empty()) return {inv_table_[a.code]};
        return pow(a, q_ - 2);
    }

    FqElem pow(FqElem a, uint64_t e) const {
        FqElem r = one(), base = a;
        while (e) {
            if (e & 1) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    // Pth-root (inverse Frobenius): a^(q/p).
    FqElem pth_root(FqElem a) const { return pow(a, q_ / p_); }

    // Quadratic-residue test via Euler's criterion; zero counts as a square.
    bool is_square(FqElem a) const {
        if (p_ == 2) throw std::domain_error("FqField: is_square unsupported in characteristic 2");
        if (a.code == 0) return true;
        if (!square_table_.empty()) return square_table_[a.code] != 0;
        return pow(a, (q_ - 1) / 2) == one();
    }

    std::string to_string(FqElem a) const {
        if (f_ == 1) return std::to_string(a.code);
        std::string s = "[";
        auto d = digits(a);
        for (unsigned i = 0; i < f_; ++i) {
            if (i) s += ' ';
            s += std::to_string(d[i]);
        }
        return s + "]";
    }

private:
    static constexpr uint64_t kTableLimit = 1024;

    uint64_t p_;
    unsigned f_;
    uint64_t q_;
    std::vector<uint32_t> modulus_;  // length f+1, coefficient of u^i at index i, leading 1
    std::vector<uint32_t> mul_table_;
    std::vector<uint32_t> inv_table_;
    std::vector<uint8_t> square_table_;

    FqElem mul_generic(FqElem a, FqElem b) const {
        if (f_ == 1) return {static_cast<uint32_t>((uint64_t)a.code * b.code % p_)};
        // schoolbook product of the residue polynomials, then reduce by the modulus
        std::vector<uint64_t> prod(2 * f_ - 1, 0);
        auto da = digits(a), db = digits(b);
        for (unsigned i = 0; i < f_; ++i) {
            if (!da[i]) continue;
            for (unsigned j = 0; j < f_; ++j)
                prod[i + j] = (prod[i + j] + (uint64_t)da[i] * db[j]) % p_;
        }
        for (int d = static_cast<int>(prod.size()) - 1; d >= static_cast<int>(f_); --d) {
            uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (unsigned j = 0; j < f_; ++j) {
                uint64_t t = c * modulus_[j] % p_;
                prod[d - f_ + j] = (prod[d - f_ + j] + p_ - t) % p_;
            }
        }
        uint64_t out = 0, mult = 1;
        for (unsigned i = 0; i < f_; ++i) { out += prod[i] * mult; mult *= p_; }
        return {static_cast<uint32_t>(out)};
    }

    // --- modulus search: dense F_p polynomial helpers on coefficient vectors ---

    static std::vector<uint32_t> fp_trim(std::vector<uint32_t> v) {
        while (!v.empty() && v.back() == 0) v.pop_back();
        return v;
    }

    std::vector<uint32_t> fp_mulmod(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                                    const std::vector<uint32_t>& m) const {
        std::vector<uint64_t> prod(a.size() + b.size(), 0);
        for (size_t i = 0; i < a.size(); ++i) {
            if (!a[i]) continue;
            for (size_t j = 0; j < b.size(); ++j)
                prod[i + j] = (prod[i + j] + (uint64_t)a[i] * b[j]) % p_;
        }
        size_t md = m.size() - 1;
        for (size_t d = prod.size(); d-- > md;) {
            uint64_t c = prod[d];
            if (!c) continue;
            prod[d] = 0;
            for (size_t j = 0; j < md; ++j) {
                uint64_t t = c * m[j] % p_;
                prod[d - md + j] = (prod[d - md + j] + p_ - t) % p_;
            }
        }
        std::vector<uint32_t> out(md, 0);
        for (size_t i = 0; i < md; ++i) out[i] = static_cast<uint32_t>(prod[i]);
        return fp_trim(out);
    }

    std::vector<uint32_t> fp_powp(std::vector<uint32_t> a, const std::vector<uint32_t>& m) const {
        // a^p mod m by square-and-multiply over the bits of p
        std::vector<uint32_t> r{1};
        uint64_t e = p_;
        while (e) {
            if (e & 1) r = fp_mulmod(r, a, m);
            a = fp_mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    }

    std::vector<uint32_t> fp_gcd(std::vector<uint32_t> a, std::vector<uint32_t> b) const {
        a = fp_trim(a); b = fp_trim(b);
        while (!b.empty()) {
            // a mod b
            while (a.size() >= b.size() && !a.empty()) {
                uint64_t lead_inv = fp_inv_scalar(b.back());
                uint64_t c = a.back() * lead_inv % p_;
                size_t shift = a.size() - b.size();
                for (size_t j = 0; j < b.size(); ++j) {
                    uint64_t t = c * b[j] % p_;
                    a[shift + j] = static_cast<uint32_t>((a[shift + j] + p_ - t) % p_);
                }
                a = fp_trim(a);
            }
            std::swap(a, b);
        }
        return a;
    }

    uint64_t fp_inv_scalar(uint64_t x) const {
        uint64_t r = 1, base = x % p_, e = p_ - 2;
        while (e) {
            if (e & 1) r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return r;
    }

    bool fp_irreducible(const std::vector<uint32_t>& m) const {
        unsigned deg = static_cast<unsigned>(m.size()) - 1;
        if (deg == 1) return true;
        if (m[0] == 0) return false;  // root at 0
        std::vector<uint32_t> h{0, 1};  // u
        for (unsigned d = 1; 2 * d <= deg; ++d) {
            h = fp_powp(h, m);  // h = u^(p^d) mod m
            std::vector<uint32_t> diff = h;
            if (diff.size() < 2) diff.resize(2, 0);
            diff[1] = static_cast<uint32_t>((diff[1] + p_ - 1) % p_);
            auto g = fp_gcd(diff, m);
            if (!g.empty() && g.size() > 1) return false;
            if (g.empty()) return false;  // u^(p^d) == u: product of small-degree factors
        }
        return true;
    }

    std::vector<uint32_t> find_modulus() const {
        if (f_ == 1) return {0, 1};  // u
        // candidates ordered lexicographically on (c_0, c_1, ..., c_{f-1});
        // c_0 = 0 would make the polynomial divisible by u, so start at c_0 = 1
        std::vector<uint32_t> c(f_, 0);
        c[0] = 1;
        while (true) {
            std::vector<uint32_t> m(c.begin(), c.end());
            m.push_back(1);
            if (fp_irreducible(m)) return m;
            // increment with c_{f-1} as the fastest-moving digit
            int i = static_cast<int>(f_) - 1;
            while (i >= 0) {
                if (++c[i] < p_) break;
                c[i] = 0;
                --i;
            }
            if (i < 0) throw std::logic_error("FqField: no irreducible modulus found");
        }
    }

    void build_tables() {
        mul_table_.resize(q_ * q_);
        for (uint64_t a = 0; a < q_; ++a)
            for (uint64_t b = a; b < q_; ++b) {
                uint32_t v = mul_generic({static_cast<uint32_t>(a)}, {static_cast<uint32_t>(b)}).code;
                mul_table_[a * q_ + b] = v;
                mul_table_[b * q_ + a] = v;
            }
        inv_table_.assign(q_, 0);
        for (uint64_t a = 1; a < q_; ++a)
            for (uint64_t b = 1; b < q_; ++b)
                if (mul_table_[a * q_ + b] == 1) { inv_table_[a] = static_cast<uint32_t>(b); break; }
        if (p_ != 2) {
            square_table_.assign(q_, 0);
            square_table_[0] = 1;
            for (uint64_t a = 1; a < q_; ++a) square_table_[mul_table_[a * q_ + a]] = 1;
        }
    }
};

inline FqField make_field(uint64_t p, unsigned f) { return FqField(p, f); }

}  // namespace pgal
