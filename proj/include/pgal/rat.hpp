#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

#include <gmpxx.h>

namespace pgal {

using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int int_pow(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

inline Int binomial(const Int& n, unsigned long k) {
    // C(n, k) with C(n, k) = 0 for k > n and C(n, 0) = 1.
    if (n < 0) throw std::invalid_argument("binomial: negative n");
    Int r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

inline Int factorial(unsigned long n) {
    Int r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Writes q = p^f with p prime, or nothing if q is not a prime power.
inline std::optional<std::pair<uint64_t, unsigned>> factor_prime_power(Int q) {
    if (q < 2 || !q.fits_ulong_p()) return std::nullopt;
    uint64_t v = q.get_ui();
    for (uint64_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) {
            unsigned f = 0;
            while (v % d == 0) { v /= d; ++f; }
            if (v != 1) return std::nullopt;
            return std::make_pair(d, f);
        }
    }
    return std::make_pair(v, 1u);  // v itself prime
}

// Exact decimal rendering, truncated to `sig` significant digits.
inline std::string to_decimal(const Rat& r, int sig = 20) {
    if (r == 0) return "0";
    std::string out;
    Int a = abs(r.get_num());
    const Int& b = r.get_den();
    if (sgn(r) < 0) out += '-';
    Int ipart = a / b;
    Int rem = a % b;
    if (ipart > 0) {
        std::string digits = ipart.get_str();
        int remaining = sig - static_cast<int>(digits.size());
        out += digits;
        if (remaining > 0 && rem != 0) {
            out += '.';
            for (int i = 0; i < remaining && rem != 0; ++i) {
                rem *= 10;
                Int d = rem / b;
                rem %= b;
                out += static_cast<char>('0' + d.get_ui());
            }
        }
    } else {
        out += "0.";
        // skip leading zeros without charging significant digits
        rem = a;
        while (true) {
            rem *= 10;
            if (rem >= b) break;
            out += '0';
        }
        Int d = rem / b;
        rem %= b;
        out += static_cast<char>('0' + d.get_ui());
        for (int i = 1; i < sig && rem != 0; ++i) {
            rem *= 10;
            d = rem / b;
            rem %= b;
            out += static_cast<char>('0' + d.get_ui());
        }
    }
    // drop a trailing '.' if no fractional digits were emitted
    if (!out.empty() && out.back() == '.') out.pop_back();
    return out;
}

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace pgal
