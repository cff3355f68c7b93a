#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pgal/rat.hpp"

namespace pgal {

inline std::vector<std::pair<uint64_t, unsigned>> factor_small(uint64_t n) {
    std::vector<std::pair<uint64_t, unsigned>> fac;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            unsigned e = 0;
            while (n % d == 0) { n /= d; ++e; }
            fac.emplace_back(d, e);
        }
    }
    if (n > 1) fac.emplace_back(n, 1);
    return fac;
}

inline int moebius(uint64_t n) {
    int mu = 1;
    for (auto [p, e] : factor_small(n)) {
        if (e > 1) return 0;
        mu = -mu;
    }
    return mu;
}

// Number of monic irreducible polynomials of degree m over F_q:
//   (1/m) * sum over d | m of mu(d) * q^(m/d).
inline Int count_irreducibles(const Int& q, unsigned m) {
    if (m == 0) throw std::invalid_argument("count_irreducibles: m must be positive");
    Int sum = 0;
    for (uint64_t d = 1; d <= m; ++d) {
        if (m % d != 0) continue;
        int mu = moebius(d);
        if (mu == 0) continue;
        Int term = int_pow(q, m / d);
        sum += mu > 0 ? term : -term;
    }
    return sum / m;
}

inline Int count_irreducibles(uint64_t q, unsigned m) { return count_irreducibles(Int(q), m); }

}  // namespace pgal
