#pragma once

#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgal/ff.hpp"
#include "pgal/fqpoly.hpp"
#include "pgal/rat.hpp"

namespace pgal {

// Raised whenever a computation needs more pi-adic digits than an element
// carries. Callers holding the originating digit stream may rebuild inputs at
// higher precision and retry.
struct PrecisionExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Valuation {
    int value = 0;        // exact valuation, or the precision lower bound
    bool determined = false;
};

// O_p for the extension of Q_p with residue field F_q = F_{p^f} and
// ramification index e, modelled as the unramified extension
// (Z/p^m)[u]/(m(u)) extended by pi with pi^e = p. Immutable and shareable.
class PadicField {
public:
    static constexpr int kMaxPrecision = 72;  // a few digits above the 64-digit cap

    PadicField(FqField residue, uint32_t e) : residue_(std::move(residue)), e_(e) {
        if (e_ == 0) throw std::invalid_argument("PadicField: e must be positive");
        if (residue_.p() == 2) throw std::invalid_argument("PadicField: p must be odd");
        int max_level = levels_for(kMaxPrecision) + 2;
        ppow_.reserve(max_level + 1);
        ppow_.emplace_back(1);
        for (int i = 1; i <= max_level; ++i) ppow_.push_back(ppow_.back() * Int(residue_.p()));
        // integer lift of the residue modulus, used to fold u-degrees >= f
        mod_lift_.assign(residue_.modulus().begin(), residue_.modulus().end());
    }

    const FqField& residue() const { return residue_; }
    uint64_t p() const { return residue_.p(); }
    unsigned f() const { return residue_.f(); }
    uint64_t q() const { return residue_.q(); }
    uint32_t e() const { return e_; }

    int levels_for(int prec) const { return (prec + static_cast<int>(e_) - 1) / static_cast<int>(e_); }
    const Int& p_pow(int m) const { return ppow_.at(m); }
    const std::vector<uint32_t>& mod_lift() const { return mod_lift_; }

private:
    FqField residue_;
    uint32_t e_;
    std::vector<Int> ppow_;
    std::vector<uint32_t> mod_lift_;
};

// Element of O_p known modulo pi^prec. Coordinates c[j*f + t] hold the
// coefficient of u^t * pi^j, reduced modulo p^ceil(prec/e).
class PadicElem {
public:
    PadicElem() : fld_(nullptr), prec_(0) {}

    static PadicElem zero(const PadicField& K, int prec) {
        PadicElem a;
        a.fld_ = &K;
        a.set_precision(prec);
        a.c_.assign(K.e() * K.f(), Int(0));
        return a;
    }

    static PadicElem from_int(const PadicField& K, const Int& v, int prec) {
        PadicElem a = zero(K, prec);
        mpz_fdiv_r(a.c_[0].get_mpz_t(), v.get_mpz_t(), K.p_pow(a.level()).get_mpz_t());
        return a;
    }

    static PadicElem from_int(const PadicField& K, long v, int prec) { return from_int(K, Int(v), prec); }
    static PadicElem one(const PadicField& K, int prec) { return from_int(K, 1, prec); }

    // pi^v (v < prec)
    static PadicElem pi_pow(const PadicField& K, int v, int prec) {
        if (v < 0 || v >= prec) throw std::invalid_argument("pi_pow: need 0 <= v < prec");
        PadicElem a = zero(K, prec);
        int j = v % static_cast<int>(K.e());
        int m = v / static_cast<int>(K.e());
        a.c_[static_cast<size_t>(j) * K.f()] = K.p_pow(m);
        a.reduce_coords();
        return a;
    }

    // Element with the given pi-adic digit expansion (F_q codes, d_0 first).
    static PadicElem from_digits(const PadicField& K, const std::vector<uint32_t>& digits) {
        PadicElem a = zero(K, static_cast<int>(digits.size()));
        unsigned e = K.e(), f = K.f();
        uint64_t p = K.p();
        for (unsigned j = 0; j < e; ++j) {
            for (unsigned t = 0; t < f; ++t) {
                // Horner over the digits congruent to j mod e, highest first
                Int acc(0);
                for (int i = static_cast<int>(digits.size()) - 1; i >= 0; --i) {
                    if (static_cast<unsigned>(i) % e != j) continue;
                    uint64_t d = digits[i];
                    for (unsigned s = 0; s < t; ++s) d /= p;
                    acc = acc * Int(p) + Int(static_cast<unsigned long>(d % p));
                }
                a.c_[static_cast<size_t>(j) * f + t] = std::move(acc);
            }
        }
        a.reduce_coords();
        return a;
    }

    const PadicField& field() const { return *fld_; }
    int precision() const { return prec_; }
    int level() const { return fld_->levels_for(prec_); }

    std::vector<uint32_t> digits() const {
        std::vector<uint32_t> out;
        out.reserve(prec_);
        std::vector<Int> work = c_;
        for (int i = 0; i < prec_; ++i) out.push_back(extract_digit(work));
        return out;
    }

    FqElem reduce() const {
        uint64_t p = fld_->p(), mult = 1, code = 0;
        unsigned f = fld_->f();
        for (unsigned t = 0; t < f; ++t) {
            code += mpz_fdiv_ui(c_[t].get_mpz_t(), p) * mult;
            mult *= p;
        }
        return fld_->residue().from_code(code);
    }

    Valuation valuation() const {
        if (reduce().code != 0) return {0, true};
        std::vector<Int> work = c_;
        for (int i = 0; i < prec_; ++i) {
            if (extract_digit(work) != 0) return {i, true};
        }
        return {prec_, false};
    }

    bool is_zero_at_precision() const { return !valuation().determined; }

    PadicElem truncated(int prec) const {
        if (prec > prec_) throw std::invalid_argument("truncated: cannot raise precision");
        if (prec <= 0) throw PrecisionExhausted("truncated: precision underflow");
        PadicElem r = *this;
        r.set_precision(prec);
        r.reduce_coords();
        return r;
    }

    // Division by pi^v; requires the first v digits to vanish.
    PadicElem shifted_down(int v) const {
        if (v == 0) return *this;
        if (v < 0 || v >= prec_) throw PrecisionExhausted("shifted_down: precision underflow");
        auto d = digits();
        for (int i = 0; i < v; ++i)
            if (d[i] != 0) throw std::invalid_argument("shifted_down: valuation below shift");
        return from_digits(*fld_, std::vector<uint32_t>(d.begin() + v, d.end()));
    }

    friend PadicElem operator+(const PadicElem& a, const PadicElem& b) {
        PadicElem r = PadicElem::binop_shell(a, b);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] + b.c_[i];
        r.reduce_coords();
        return r;
    }

    friend PadicElem operator-(const PadicElem& a, const PadicElem& b) {
        PadicElem r = PadicElem::binop_shell(a, b);
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.c_[i] - b.c_[i];
        r.reduce_coords();
        return r;
    }

    PadicElem operator-() const {
        PadicElem r = *this;
        for (auto& x : r.c_) x = -x;
        r.reduce_coords();
        return r;
    }

    friend PadicElem operator*(const PadicElem& a, const PadicElem& b) {
        const PadicField& K = *a.fld_;
        PadicElem r = PadicElem::binop_shell(a, b);
        unsigned e = K.e(), f = K.f();
        // u-polynomial products per pi-coordinate pair, with pi^e folded to p
        std::vector<Int> acc(e * (2 * f - 1), Int(0));
        for (unsigned j = 0; j < e; ++j) {
            for (unsigned k = 0; k < e; ++k) {
                unsigned dest = j + k;
                bool carry = dest >= e;
                if (carry) dest -= e;
                for (unsigned t1 = 0; t1 < f; ++t1) {
                    const Int& x = a.c_[j * f + t1];
                    if (x == 0) continue;
                    for (unsigned t2 = 0; t2 < f; ++t2) {
                        const Int& y = b.c_[k * f + t2];
                        if (y == 0) continue;
                        Int prod = x * y;
                        if (carry) prod *= Int(K.p());
                        acc[dest * (2 * f - 1) + t1 + t2] += prod;
                    }
                }
            }
        }
        // fold u-degrees >= f by the monic residue modulus
        const auto& m = K.mod_lift();
        for (unsigned j = 0; j < e; ++j) {
            Int* row = acc.data() + j * (2 * f - 1);
            for (int d = 2 * static_cast<int>(f) - 2; d >= static_cast<int>(f); --d) {
                if (row[d] == 0) continue;
                for (unsigned s = 0; s < f; ++s)
                    row[d - f + s] -= row[d] * Int(static_cast<unsigned long>(m[s]));
                row[d] = 0;
            }
            for (unsigned t = 0; t < f; ++t) r.c_[j * f + t] = std::move(row[t]);
        }
        r.reduce_coords();
        return r;
    }

    PadicElem scaled(const Int& s) const {
        PadicElem r = *this;
        for (auto& x : r.c_) x *= s;
        r.reduce_coords();
        return r;
    }

    // Inverse of a unit (digit 0 nonzero), exact at this element's precision.
    PadicElem inverse() const {
        FqElem d0 = reduce();
        if (d0.code == 0) throw std::domain_error("inverse: not a unit at this precision");
        const FqField& R = fld_->residue();
        PadicElem x = from_digits(*fld_, pad_digits(R.inv(d0).code));
        PadicElem two = from_int(*fld_, 2, prec_);
        int correct = 1;
        while (correct < prec_) {
            x = x * (two - *this * x);
            correct *= 2;
        }
        return x;
    }

    bool same_coords(const PadicElem& o) const { return prec_ == o.prec_ && c_ == o.c_; }

    std::string str() const {
        std::string s = "[";
        auto d = digits();
        for (size_t i = 0; i < d.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(d[i]);
        }
        return s + "]";
    }

private:
    const PadicField* fld_;
    int prec_;
    std::vector<Int> c_;

    void set_precision(int prec) {
        if (prec < 1) throw PrecisionExhausted("PadicElem: precision underflow");
        if (prec > PadicField::kMaxPrecision)
            throw std::invalid_argument("PadicElem: precision above hard cap");
        prec_ = prec;
    }

    static PadicElem binop_shell(const PadicElem& a, const PadicElem& b) {
        assert(a.fld_ == b.fld_);
        PadicElem r;
        r.fld_ = a.fld_;
        r.set_precision(std::min(a.prec_, b.prec_));
        r.c_.assign(a.c_.size(), Int(0));
        return r;
    }

    void reduce_coords() {
        const Int& m = fld_->p_pow(level());
        for (auto& x : c_) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    }

    std::vector<uint32_t> pad_digits(uint32_t d0) const {
        std::vector<uint32_t> d(prec_, 0);
        d[0] = d0;
        return d;
    }

    // One step of digit extraction: removes digit 0 from `work` and divides
    // the remainder by pi in place.
    uint32_t extract_digit(std::vector<Int>& work) const {
        uint64_t p = fld_->p();
        unsigned e = fld_->e(), f = fld_->f();
        uint64_t mult = 1, code = 0;
        for (unsigned t = 0; t < f; ++t) {
            uint64_t d = mpz_fdiv_ui(work[t].get_mpz_t(), p);
            code += d * mult;
            mult *= p;
            if (d) work[t] -= Int(static_cast<unsigned long>(d));
        }
        // divide by pi: blocks shift down one place, block 0 wraps as block0/p
        std::vector<Int> head(work.begin(), work.begin() + f);
        for (unsigned j = 0; j + 1 < e; ++j)
            for (unsigned t = 0; t < f; ++t) work[j * f + t] = std::move(work[(j + 1) * f + t]);
        for (unsigned t = 0; t < f; ++t) {
            mpz_divexact_ui(head[t].get_mpz_t(), head[t].get_mpz_t(), p);
            work[(e - 1) * f + t] = std::move(head[t]);
        }
        return code;
    }
};

// Monic polynomial with O_p coefficients at a shared precision.
class PadicPoly {
public:
    PadicPoly(const PadicField& K, std::vector<PadicElem> coeffs) : fld_(&K), c_(std::move(coeffs)) {
        if (c_.size() < 2) throw std::invalid_argument("PadicPoly: degree must be >= 1");
        if (c_.back().reduce().code != 1)
            throw std::invalid_argument("PadicPoly: leading coefficient must be 1");
    }

    // Monic polynomial from the non-leading coefficients.
    static PadicPoly monic(const PadicField& K, std::vector<PadicElem> non_leading) {
        int prec = PadicField::kMaxPrecision;
        for (const auto& a : non_leading) prec = std::min(prec, a.precision());
        non_leading.push_back(PadicElem::one(K, prec));
        return PadicPoly(K, std::move(non_leading));
    }

    static PadicPoly from_ints(const PadicField& K, const std::vector<long>& coeffs, int prec) {
        std::vector<PadicElem> c;
        c.reserve(coeffs.size());
        for (long v : coeffs) c.push_back(PadicElem::from_int(K, v, prec));
        return PadicPoly(K, std::move(c));
    }

    const PadicField& field() const { return *fld_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const PadicElem& coeff(int i) const { return c_.at(i); }

    int precision() const {
        int prec = c_[0].precision();
        for (const auto& a : c_) prec = std::min(prec, a.precision());
        return prec;
    }

    PadicElem eval(const PadicElem& x) const {
        PadicElem r = c_.back();
        for (int i = degree() - 1; i >= 0; --i) r = r * x + c_[i];
        return r;
    }

    PadicElem eval_derivative(const PadicElem& x) const {
        PadicElem r = c_.back().scaled(Int(degree()));
        for (int i = degree() - 1; i >= 1; --i) r = r * x + c_[i].scaled(Int(i));
        return r;
    }

    std::string str() const {
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (!s.empty()) s += " + ";
            s += c_[i].str();
            if (i >= 1) s += "*x^" + std::to_string(i);
        }
        return s;
    }

private:
    const PadicField* fld_;
    std::vector<PadicElem> c_;
};

// Digit-0 image over the residue field (monic is preserved).
inline FqPoly reduce_poly(const PadicPoly& g) {
    std::vector<FqElem> c;
    c.reserve(g.degree() + 1);
    for (int i = 0; i <= g.degree(); ++i) c.push_back(g.coeff(i).reduce());
    return FqPoly(g.field().residue(), std::move(c));
}

// Counter-based Haar sampler: digit i of draw j is a pure function of
// (seed, j, i), so extending precision never disturbs earlier digits and
// draws can be partitioned freely across workers.
class DigitStream {
public:
    DigitStream(const PadicField& K, uint64_t seed) : fld_(&K), seed_(mix(seed ^ 0x243f6a8885a308d3ULL)) {}

    uint32_t digit(uint64_t draw, uint32_t index) const {
        uint64_t h = mix(seed_ ^ mix(draw + 0x9e3779b97f4a7c15ULL));
        h = mix(h ^ (static_cast<uint64_t>(index) + 0x2545f4914f6cdd1dULL));
        return static_cast<uint32_t>((static_cast<unsigned __int128>(h) * fld_->q()) >> 64);
    }

    PadicElem sample(uint64_t draw, int prec) const {
        std::vector<uint32_t> d(prec);
        for (int i = 0; i < prec; ++i) d[i] = digit(draw, static_cast<uint32_t>(i));
        return PadicElem::from_digits(*fld_, d);
    }

    const PadicField& field() const { return *fld_; }
    uint64_t seed() const { return seed_; }

private:
    const PadicField* fld_;
    uint64_t seed_;

    static uint64_t mix(uint64_t z) {
        z ^= z >> 33;
        z *= 0xff51afd7ed558ccdULL;
        z ^= z >> 33;
        z *= 0xc4ceb9fe1a85ec53ULL;
        z ^= z >> 33;
        return z;
    }
};

inline PadicElem haar_sample(const DigitStream& stream, uint64_t draw, int prec) {
    return stream.sample(draw, prec);
}

// True iff a is a square in K_p: even valuation and square leading digit.
inline bool is_square_in_field(const PadicElem& a) {
    Valuation v = a.valuation();
    if (!v.determined) throw PrecisionExhausted("is_square_in_field: element indistinguishable from 0");
    if (v.value % 2 != 0) return false;
    FqElem lead = a.shifted_down(v.value).reduce();
    return a.field().residue().is_square(lead);
}

struct NewtonSegment {
    Rat slope;   // negative rationals, increasing left to right
    int length;  // horizontal extent
    friend bool operator==(const NewtonSegment& a, const NewtonSegment& b) {
        return a.slope == b.slope && a.length == b.length;
    }
};

// Lower convex hull of (i, ord coeff_i), i = 0..n, with (n, 0) for the monic
// leading term. Coefficients whose valuation is undetermined participate only
// when that cannot matter; otherwise PrecisionExhausted.
inline std::vector<NewtonSegment> newton_polygon(const PadicPoly& g) {
    int n = g.degree();
    std::vector<std::pair<long, long>> pts;
    std::vector<std::pair<long, long>> unknown;  // (i, precision lower bound)
    for (int i = 0; i < n; ++i) {
        Valuation v = g.coeff(i).valuation();
        if (v.determined)
            pts.emplace_back(i, v.value);
        else if (i == 0)
            throw PrecisionExhausted("newton_polygon: constant term indistinguishable from 0");
        else
            unknown.emplace_back(i, v.value);
    }
    pts.emplace_back(n, 0);

    auto cross = [](std::pair<long, long> o, std::pair<long, long> a, std::pair<long, long> b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<std::pair<long, long>> hull;
    for (auto pt : pts) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0) hull.pop_back();
        hull.push_back(pt);
    }

    auto hull_height = [&](long x) -> Rat {
        for (size_t s = 0; s + 1 < hull.size(); ++s) {
            if (x >= hull[s].first && x <= hull[s + 1].first) {
                Rat t = make_rat(x - hull[s].first, hull[s + 1].first - hull[s].first);
                return Rat(hull[s].second) + t * Rat(hull[s + 1].second - hull[s].second);
            }
        }
        throw std::logic_error("newton_polygon: x outside hull range");
    };
    for (auto [i, bound] : unknown) {
        if (!(Rat(bound) > hull_height(i)))
            throw PrecisionExhausted("newton_polygon: undetermined coefficient on the hull");
    }

    std::vector<NewtonSegment> segs;
    for (size_t s = 0; s + 1 < hull.size(); ++s) {
        long dx = hull[s + 1].first - hull[s].first;
        long dy = hull[s + 1].second - hull[s].second;
        segs.push_back({make_rat(dy, dx), static_cast<int>(dx)});
    }
    return segs;
}

// Refines a simple root r0 of the reduction to a root of g modulo pi^k.
inline PadicElem hensel_lift(const PadicPoly& g, FqElem r0, int k) {
    if (g.precision() < k) throw std::invalid_argument("hensel_lift: polynomial precision below target");
    const PadicField& K = g.field();
    FqPoly gbar = reduce_poly(g);
    if (!(gbar.eval(r0) == K.residue().zero()))
        throw std::invalid_argument("hensel_lift: r0 is not a root of the reduction");
    if (derivative(gbar).eval(r0) == K.residue().zero())
        throw std::invalid_argument("hensel_lift: root of the reduction is not simple");

    std::vector<uint32_t> d(k, 0);
    d[0] = r0.code;
    PadicElem r = PadicElem::from_digits(K, d);
    for (int guard = 0; guard < 2 * PadicField::kMaxPrecision; ++guard) {
        PadicElem fr = g.eval(r).truncated(k);
        if (!fr.valuation().determined) return r.truncated(k);
        r = r - fr * g.eval_derivative(r).inverse();
    }
    throw std::logic_error("hensel_lift: Newton iteration failed to converge");
}

}  // namespace pgal
