#pragma once

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>
#include <vector>

#include "pgal/fqpoly.hpp"
#include "pgal/padic.hpp"
#include "pgal/split_types.hpp"

namespace pgal {

namespace detail {
inline uint64_t census_seed(uint64_t base, uint64_t code) {
    uint64_t z = base ^ (code + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
}  // namespace detail

// Exhaustive splitting-type census of all q^n monic degree-n polynomials.
// Counts cover all of T_n, repeated factors included.
inline std::map<SplittingType, Int> census_fq(int n, const FqField& F, uint64_t cap = 100000000ULL,
                                              unsigned threads = 1, uint64_t seed = 0) {
    if (n < 1) throw std::invalid_argument("census_fq: n must be >= 1");
    double total_d = 1;
    for (int i = 0; i < n; ++i) total_d *= static_cast<double>(F.q());
    if (total_d > static_cast<double>(cap))
        throw std::length_error("census_fq: q^n exceeds the census cap");
    uint64_t total = 1;
    for (int i = 0; i < n; ++i) total *= F.q();

    if (threads < 1) threads = 1;
    if (threads > total) threads = static_cast<unsigned>(total);
    std::vector<std::map<SplittingType, Int>> parts(threads);
    auto worker = [&](unsigned t) {
        uint64_t lo = total / threads * t + std::min<uint64_t>(t, total % threads);
        uint64_t hi = lo + total / threads + (t < total % threads ? 1 : 0);
        auto& local = parts[t];
        for (uint64_t code = lo; code < hi; ++code) {
            SplittingType st = splitting_type(FqPoly::monic_from_code(F, n, code),
                                              detail::census_seed(seed, code));
            local[st] += 1;
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }
    std::map<SplittingType, Int> out;
    for (auto& part : parts)
        for (auto& [k, v] : part) out[k] += v;
    return out;
}

// Cycle-type census of S_n by enumerating all n! permutations.
inline std::map<SplittingType, Int> census_sn(int n) {
    if (n < 1 || n > 8) throw std::invalid_argument("census_sn: n must be in [1,8]");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::map<SplittingType, Int> out;
    do {
        std::vector<bool> seen(n, false);
        std::vector<int> cycles;
        for (int i = 0; i < n; ++i) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = perm[j]) { seen[j] = true; ++len; }
            cycles.push_back(len);
        }
        out[SplittingType::of_partition(std::move(cycles))] += 1;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

struct TripleFactorCount {
    Int shape_total;   // q^(2k-2) polynomials x^3 + Ax + B with the target reduction
    Int three_linear;  // how many of them split into three linear factors mod pi^k
    Int closed_form;   // the exact count predicted by the equivalence-class formula
    bool matches = false;
    Rat ratio;  // three_linear / shape_total
    Rat limit;  // 1/(2q+2)
};

// Counts, over O_p/pi^k with e = 1, the monic cubics x^3 + Ax + B congruent
// to (x+a)^2 (x-2a) mod pi that are products of three linear factors. Counted
// by enumerating root triples and deduplicating coefficient pairs.
inline TripleFactorCount lemma45_count(uint64_t p, unsigned f, int k, uint32_t a_code = 1,
                                       uint64_t cap = 100000000ULL) {
    if (p <= 3) throw std::invalid_argument("lemma45_count: requires p > 3");
    if (k < 1) throw std::invalid_argument("lemma45_count: k must be >= 1");
    if (a_code == 0) throw std::invalid_argument("lemma45_count: a must be a unit");
    FqField R = make_field(p, f);
    if (a_code >= R.q()) throw std::invalid_argument("lemma45_count: a out of range");
    PadicField K(R, 1);
    Int q(R.q());

    TripleFactorCount res;
    res.shape_total = int_pow(q, 2 * (k - 1));
    if (Rat(res.shape_total) > Rat(Int(cap))) throw std::length_error("lemma45_count: q^(2k-2) exceeds cap");
    res.limit = make_rat(Int(1), 2 * q + 2);
    // closed form: q^(k-1)/2 * (q^(k-1) - s)/(q+1) + q^(k-1), s = 1 for odd k, q for even
    Int qk1 = int_pow(q, k - 1);
    Int s = (k % 2 == 1) ? Int(1) : q;
    res.closed_form = qk1 * (qk1 - s) / (2 * (q + 1)) + qk1;

    // all lifts of a modulo pi^k
    uint64_t free_count = 1;
    for (int i = 1; i < k; ++i) free_count *= R.q();
    std::vector<PadicElem> lifts;
    lifts.reserve(free_count);
    for (uint64_t x = 0; x < free_count; ++x) {
        std::vector<uint32_t> d(k);
        d[0] = a_code;
        uint64_t rest = x;
        for (int i = 1; i < k; ++i) { d[i] = static_cast<uint32_t>(rest % R.q()); rest /= R.q(); }
        lifts.push_back(PadicElem::from_digits(K, d));
    }

    auto pack = [&](const PadicElem& v) -> uint64_t {
        uint64_t out = 0;
        auto d = v.digits();
        for (int i = k - 1; i >= 0; --i) out = out * R.q() + d[i];
        return out;
    };

    std::unordered_set<uint64_t> coeff_pairs;
    coeff_pairs.reserve(free_count * free_count);
    uint64_t qk = 1;
    for (int i = 0; i < k; ++i) qk *= R.q();
    for (const auto& alpha : lifts) {
        for (const auto& beta : lifts) {
            PadicElem sum = alpha + beta;
            PadicElem prod = alpha * beta;
            PadicElem A = prod - sum * sum;        // alpha*beta + gamma*(alpha+beta), gamma = -(alpha+beta)
            PadicElem B = prod * sum;              // -alpha*beta*gamma
            coeff_pairs.insert(pack(A) * qk + pack(B));
        }
    }
    res.three_linear = Int(static_cast<unsigned long>(coeff_pairs.size()));
    res.matches = (res.three_linear == res.closed_form);
    res.ratio = make_rat(res.three_linear, res.shape_total);
    return res;
}

}  // namespace pgal
