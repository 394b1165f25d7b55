#pragma once

#include <climits>
#include <stdexcept>
#include <string>
#include <vector>

#include "scalar.hpp"

namespace hecke {

class PrecisionError : public std::runtime_error {
public:
    explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr long long kValInfinity = LLONG_MAX;
inline constexpr int kMinSlack = 3;  // required digit slack for valuation decisions

/**
 * PadicElt: a finite-precision element of Q_p. A nonzero element is
 * p^v * unit with the unit known modulo p^rel; its valuation is exact.
 * Zeros are either certified exact (valuation infinity) or known to
 * vanish only up to p^absprec, in which case asking for the valuation
 * raises PrecisionError.
 */
class PadicElt {
public:
    PadicElt() : p_(2), N_(1), kind_(Kind::ExactZero), val_(kValInfinity), rel_(0) {}

    static PadicElt exact_zero(long long p, int N) {
        PadicElt x;
        x.p_ = p;
        x.N_ = N;
        return x;
    }
    static PadicElt approx_zero(long long p, int N, long long absprec) {
        PadicElt x = exact_zero(p, N);
        x.kind_ = Kind::ApproxZero;
        x.val_ = absprec;
        return x;
    }
    static PadicElt from_int(const Int& n, long long p, int N) {
        check_params(p, N);
        if (n == 0) return exact_zero(p, N);
        long long v = 0;
        Int mm = n;
        while (mm % p == 0) {
            mm /= p;
            ++v;
        }
        PadicElt x = exact_zero(p, N);
        x.kind_ = Kind::Unit;
        x.val_ = v;
        x.rel_ = N;
        x.unit_ = mod_pow(mm, p, N);
        return x;
    }
    static PadicElt from_rat(const Rat& r, long long p, int N) {
        return from_int(boost::multiprecision::numerator(r), p, N) /
               from_int(boost::multiprecision::denominator(r), p, N);
    }

    long long p() const { return p_; }
    int N() const { return N_; }
    bool is_exact_zero() const { return kind_ == Kind::ExactZero; }
    bool is_zero_at_precision() const { return kind_ != Kind::Unit; }
    int rel_precision() const { return kind_ == Kind::Unit ? rel_ : 0; }

    // Exact valuation; infinity for a certified zero. A zero known only
    // to finite precision has no certain valuation.
    long long valuation() const {
        if (kind_ == Kind::Unit) return val_;
        if (kind_ == Kind::ExactZero) return kValInfinity;
        throw PrecisionError("PadicElt::valuation: zero to precision " + std::to_string(val_) + " only");
    }

    // guaranteed vanishing bound of a zero-at-precision element
    long long approx_bound() const {
        if (kind_ == Kind::ExactZero) return kValInfinity;
        if (kind_ == Kind::ApproxZero) return val_;
        throw std::logic_error("PadicElt::approx_bound on a nonzero element");
    }

    PadicElt operator-() const {
        if (kind_ != Kind::Unit) return *this;
        PadicElt x = *this;
        x.unit_ = mod_pow(-unit_, p_, rel_);
        return x;
    }

    friend PadicElt operator+(const PadicElt& a, const PadicElt& b) {
        a.check_same(b);
        if (a.kind_ == Kind::ExactZero) return b;
        if (b.kind_ == Kind::ExactZero) return a;
        if (a.kind_ == Kind::ApproxZero && b.kind_ == Kind::ApproxZero)
            return approx_zero(a.p_, a.N_, std::min(a.val_, b.val_));
        if (a.kind_ == Kind::ApproxZero) return b + a;
        if (b.kind_ == Kind::ApproxZero) {
            // unit + O(p^A)
            if (a.val_ >= b.val_) return approx_zero(a.p_, a.N_, b.val_);
            PadicElt x = a;
            x.rel_ = std::min<long long>(x.rel_, b.val_ - a.val_);
            x.unit_ = mod_pow(x.unit_, x.p_, x.rel_);
            return x;
        }
        const PadicElt& lo = (a.val_ <= b.val_) ? a : b;
        const PadicElt& hi = (a.val_ <= b.val_) ? b : a;
        long long d = hi.val_ - lo.val_;
        if (d > 0) {
            long long rel = std::min<long long>(lo.rel_, d + hi.rel_);
            PadicElt x = exact_zero(a.p_, a.N_);
            x.kind_ = Kind::Unit;
            x.val_ = lo.val_;
            x.rel_ = static_cast<int>(rel);
            x.unit_ = mod_pow(lo.unit_ + pow_int(Int(a.p_), d) * hi.unit_, a.p_, x.rel_);
            return x;
        }
        int rel = std::min(a.rel_, b.rel_);
        Int w = mod_pow(lo.unit_ + hi.unit_, a.p_, rel);
        if (w == 0) return approx_zero(a.p_, a.N_, lo.val_ + rel);
        long long j = 0;
        Int ww = w;
        while (ww % a.p_ == 0) {
            ww /= a.p_;
            ++j;
        }
        PadicElt x = exact_zero(a.p_, a.N_);
        x.kind_ = Kind::Unit;
        x.val_ = lo.val_ + j;
        x.rel_ = static_cast<int>(rel - j);
        x.unit_ = mod_pow(ww, a.p_, x.rel_);
        return x;
    }
    friend PadicElt operator-(const PadicElt& a, const PadicElt& b) { return a + (-b); }
    friend PadicElt operator*(const PadicElt& a, const PadicElt& b) {
        a.check_same(b);
        if (a.kind_ == Kind::ExactZero || b.kind_ == Kind::ExactZero) return exact_zero(a.p_, a.N_);
        if (a.kind_ == Kind::ApproxZero || b.kind_ == Kind::ApproxZero)
            return approx_zero(a.p_, a.N_, a.val_ + b.val_);
        PadicElt x = exact_zero(a.p_, a.N_);
        x.kind_ = Kind::Unit;
        x.val_ = a.val_ + b.val_;
        x.rel_ = std::min(a.rel_, b.rel_);
        x.unit_ = mod_pow(a.unit_ * b.unit_, a.p_, x.rel_);
        return x;
    }
    PadicElt inverse() const {
        if (kind_ != Kind::Unit) throw PrecisionError("PadicElt::inverse: operand is zero at working precision");
        PadicElt x = *this;
        x.val_ = -val_;
        x.unit_ = mod_inverse(unit_, pow_int(Int(p_), rel_));
        return x;
    }
    friend PadicElt operator/(const PadicElt& a, const PadicElt& b) { return a * b.inverse(); }

    // multiply by p^k
    PadicElt shift(long long k) const {
        PadicElt x = *this;
        if (kind_ == Kind::Unit)
            x.val_ += k;
        else if (kind_ == Kind::ApproxZero)
            x.val_ += k;
        return x;
    }

    // the digit of the p-adic expansion at exponent e, in [0, p)
    long long digit(long long e) const {
        if (kind_ == Kind::ExactZero) return 0;
        if (kind_ == Kind::ApproxZero) {
            if (e < val_) return 0;
            throw PrecisionError("PadicElt::digit: beyond certified zero precision");
        }
        if (e < val_) return 0;
        if (e - val_ >= rel_) throw PrecisionError("PadicElt::digit: beyond relative precision");
        Int d = (unit_ / pow_int(Int(p_), e - val_)) % p_;
        return d.convert_to<long long>();
    }

    // truncate to the digits at exponents < e (exact result)
    PadicElt reduce_mod(long long e) const {
        if (kind_ == Kind::ExactZero) return *this;
        if (kind_ == Kind::ApproxZero) {
            if (val_ >= e) return exact_zero(p_, N_);
            throw PrecisionError("PadicElt::reduce_mod: truncation exceeds certified precision");
        }
        if (val_ >= e) return exact_zero(p_, N_);
        if (e - val_ > rel_) throw PrecisionError("PadicElt::reduce_mod: truncation exceeds relative precision");
        PadicElt x = *this;
        x.unit_ = unit_ % pow_int(Int(p_), e - val_);
        x.rel_ = N_;  // the truncated value is an exact integer
        return x;
    }

    std::string str() const {
        if (kind_ == Kind::ExactZero) return "0";
        if (kind_ == Kind::ApproxZero) return "O(p^" + std::to_string(val_) + ")";
        return unit_.str() + "*p^" + std::to_string(val_) + " + O(p^" + std::to_string(val_ + rel_) + ")";
    }

private:
    enum class Kind { ExactZero, ApproxZero, Unit };

    long long p_;
    int N_;
    Kind kind_;
    long long val_;
    Int unit_;
    int rel_ = 0;

    static void check_params(long long p, int N) {
        if (p < 2) throw std::invalid_argument("PadicElt: p must be >= 2");
        if (N < kMinSlack) throw std::invalid_argument("PadicElt: precision too small");
    }
    void check_same(const PadicElt& o) const {
        if (p_ != o.p_) throw std::invalid_argument("PadicElt: mixed primes");
    }
    static Int mod_pow(const Int& x, long long p, long long k) {
        Int m = pow_int(Int(p), k);
        Int r = x % m;
        if (r < 0) r += m;
        return r;
    }
    static Int mod_inverse(const Int& a, const Int& m) {
        Int old_r = a % m, r = m, old_s = 1, s = 0;
        if (old_r < 0) old_r += m;
        while (r != 0) {
            Int qt = old_r / r;
            Int tmp = old_r - qt * r;
            old_r = r;
            r = tmp;
            tmp = old_s - qt * s;
            old_s = s;
            s = tmp;
        }
        if (old_r != 1) throw std::domain_error("PadicElt: not invertible");
        Int inv = old_s % m;
        if (inv < 0) inv += m;
        return inv;
    }
};

/**
 * UnramifiedElt: an element of the unramified degree-f extension E of
 * Q_p, written in the power basis of a fixed root g of a monic lift h
 * of an irreducible degree-f polynomial over the residue field. The
 * valuation of a nonzero element is the minimum coordinate valuation.
 */
class UnramifiedElt {
public:
    UnramifiedElt() = default;
    UnramifiedElt(long long p, int N, std::vector<long long> h)
        : p_(p), N_(N), h_(std::move(h)), c_(h_.size(), PadicElt::exact_zero(p, N)) {
        if (h_.empty()) throw std::invalid_argument("UnramifiedElt: empty modulus");
    }

    static UnramifiedElt from_padic(const PadicElt& x, const std::vector<long long>& h) {
        UnramifiedElt e(x.p(), x.N(), h);
        e.c_[0] = x;
        return e;
    }
    static UnramifiedElt from_int(const Int& n, long long p, int N, const std::vector<long long>& h) {
        return from_padic(PadicElt::from_int(n, p, N), h);
    }
    static UnramifiedElt from_rat(const Rat& r, long long p, int N, const std::vector<long long>& h) {
        return from_padic(PadicElt::from_rat(r, p, N), h);
    }
    static UnramifiedElt generator(long long p, int N, const std::vector<long long>& h) {
        UnramifiedElt e(p, N, h);
        if (e.degree() < 2) throw std::invalid_argument("UnramifiedElt::generator: degree must be >= 2");
        e.c_[1] = PadicElt::from_int(1, p, N);
        return e;
    }

    long long p() const { return p_; }
    int N() const { return N_; }
    int degree() const { return static_cast<int>(h_.size()); }
    const std::vector<long long>& modulus() const { return h_; }
    const PadicElt& coord(int i) const { return c_[static_cast<size_t>(i)]; }
    PadicElt& coord(int i) { return c_[static_cast<size_t>(i)]; }

    bool is_exact_zero() const {
        for (const auto& x : c_)
            if (!x.is_exact_zero()) return false;
        return true;
    }

    bool is_zero_at_precision() const {
        for (const auto& x : c_)
            if (!x.is_zero_at_precision()) return false;
        return true;
    }

    long long valuation() const {
        long long v = kValInfinity;
        long long zero_bound = kValInfinity;
        for (const auto& x : c_) {
            if (x.is_exact_zero()) continue;
            if (x.is_zero_at_precision()) {
                // zero mod p^A: contributes no certain valuation, but could hide one >= A
                long long A = x.approx_bound();
                zero_bound = std::min(zero_bound, A);
                continue;
            }
            v = std::min(v, x.valuation());
        }
        if (v == kValInfinity) {
            if (zero_bound == kValInfinity) return kValInfinity;
            throw PrecisionError("UnramifiedElt::valuation: all coordinates vanish at working precision");
        }
        if (zero_bound != kValInfinity && zero_bound <= v)
            throw PrecisionError("UnramifiedElt::valuation: precision too low to certify the minimum");
        return v;
    }

    friend UnramifiedElt operator+(const UnramifiedElt& a, const UnramifiedElt& b) {
        a.check_same(b);
        UnramifiedElt r = a;
        for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
        return r;
    }
    friend UnramifiedElt operator-(const UnramifiedElt& a, const UnramifiedElt& b) { return a + (-b); }
    UnramifiedElt operator-() const {
        UnramifiedElt r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend UnramifiedElt operator*(const UnramifiedElt& a, const UnramifiedElt& b) {
        a.check_same(b);
        int f = a.degree();
        std::vector<PadicElt> prod(static_cast<size_t>(2 * f - 1), PadicElt::exact_zero(a.p_, a.N_));
        for (int i = 0; i < f; ++i)
            for (int j = 0; j < f; ++j) prod[static_cast<size_t>(i + j)] = prod[static_cast<size_t>(i + j)] + a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
        // reduce with g^f = -sum h_i g^i
        for (int d = 2 * f - 2; d >= f; --d) {
            PadicElt top = prod[static_cast<size_t>(d)];
            if (top.is_exact_zero()) continue;
            for (int i = 0; i < f; ++i) {
                PadicElt hi = PadicElt::from_int(a.h_[static_cast<size_t>(i)], a.p_, a.N_);
                prod[static_cast<size_t>(d - f + i)] = prod[static_cast<size_t>(d - f + i)] - top * hi;
            }
        }
        UnramifiedElt r(a.p_, a.N_, a.h_);
        for (int i = 0; i < f; ++i) r.c_[static_cast<size_t>(i)] = prod[static_cast<size_t>(i)];
        return r;
    }

    UnramifiedElt shift(long long k) const {
        UnramifiedElt r = *this;
        for (auto& x : r.c_) x = x.shift(k);
        return r;
    }

    UnramifiedElt reduce_mod(long long e) const {
        UnramifiedElt r = *this;
        for (auto& x : r.c_) x = x.reduce_mod(e);
        return r;
    }

    UnramifiedElt inverse() const {
        long long v = valuation();
        if (v == kValInfinity) throw std::domain_error("UnramifiedElt::inverse of zero");
        UnramifiedElt u = shift(-v);  // unit of the ring of integers
        int f = degree();
        // solve (mult-by-u) y = 1 by Gaussian elimination over Q_p
        std::vector<std::vector<PadicElt>> M(static_cast<size_t>(f),
                                             std::vector<PadicElt>(static_cast<size_t>(f + 1), PadicElt::exact_zero(p_, N_)));
        for (int j = 0; j < f; ++j) {
            UnramifiedElt col = u * basis_vector(j);
            for (int i = 0; i < f; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(j)] = col.c_[static_cast<size_t>(i)];
        }
        M[0][static_cast<size_t>(f)] = PadicElt::from_int(1, p_, N_);
        for (int col = 0; col < f; ++col) {
            int piv = -1;
            long long best = kValInfinity;
            for (int i = col; i < f; ++i) {
                const PadicElt& x = M[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (x.is_zero_at_precision()) continue;
                if (x.valuation() < best) {
                    best = x.valuation();
                    piv = i;
                }
            }
            if (piv < 0) throw PrecisionError("UnramifiedElt::inverse: singular at working precision");
            std::swap(M[static_cast<size_t>(col)], M[static_cast<size_t>(piv)]);
            PadicElt inv = M[static_cast<size_t>(col)][static_cast<size_t>(col)].inverse();
            for (int j = col; j <= f; ++j)
                M[static_cast<size_t>(col)][static_cast<size_t>(j)] = M[static_cast<size_t>(col)][static_cast<size_t>(j)] * inv;
            for (int i = 0; i < f; ++i) {
                if (i == col) continue;
                PadicElt factor = M[static_cast<size_t>(i)][static_cast<size_t>(col)];
                if (factor.is_exact_zero()) continue;
                for (int j = col; j <= f; ++j)
                    M[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                        M[static_cast<size_t>(i)][static_cast<size_t>(j)] - factor * M[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
        UnramifiedElt y(p_, N_, h_);
        for (int i = 0; i < f; ++i) y.c_[static_cast<size_t>(i)] = M[static_cast<size_t>(i)][static_cast<size_t>(f)];
        return y.shift(-v);
    }
    friend UnramifiedElt operator/(const UnramifiedElt& a, const UnramifiedElt& b) { return a * b.inverse(); }

    UnramifiedElt basis_vector(int j) const {
        UnramifiedElt e(p_, N_, h_);
        e.c_[static_cast<size_t>(j)] = PadicElt::from_int(1, p_, N_);
        return e;
    }

    std::string str() const {
        std::string s;
        for (int i = 0; i < degree(); ++i) {
            if (i) s += " + (";
            else s += "(";
            s += c_[static_cast<size_t>(i)].str() + ")";
            if (i == 1) s += "*g";
            if (i > 1) s += "*g^" + std::to_string(i);
        }
        return s;
    }

private:
    long long p_ = 2;
    int N_ = 1;
    std::vector<long long> h_;  // h(x) = x^f + sum_i h[i] x^i
    std::vector<PadicElt> c_;

    void check_same(const UnramifiedElt& o) const {
        if (p_ != o.p_ || h_ != o.h_) throw std::invalid_argument("UnramifiedElt: mixed fields");
    }
};

// all coordinates vanish at least to the given exponent
inline bool vanishes_to_precision(const UnramifiedElt& x, long long prec) {
    for (int i = 0; i < x.degree(); ++i) {
        const PadicElt& c = x.coord(i);
        if (c.is_exact_zero()) continue;
        if (c.is_zero_at_precision()) {
            if (c.approx_bound() < prec) return false;
        } else if (c.valuation() < prec) {
            return false;
        }
    }
    return true;
}

// a monic irreducible polynomial of degree f over F_p, lifted to Z
inline std::vector<long long> default_modulus(long long p, int f) {
    if (f == 1) return {0};  // h(x) = x; the extension is trivial
    auto irreducible = [&](const std::vector<long long>& h) {
        // no roots suffices for f <= 3
        for (long long x = 0; x < p; ++x) {
            long long acc = 0, xp = 1;
            for (int i = 0; i < f; ++i) {
                acc = (acc + h[static_cast<size_t>(i)] % p * xp % p + p * p) % p;
                xp = xp * x % p;
            }
            acc = (acc + xp) % p;  // leading monic term
            if (acc == 0) return false;
        }
        return true;
    };
    if (f > 3) throw std::invalid_argument("default_modulus: degree > 3 not provided");
    std::vector<long long> h(static_cast<size_t>(f), 0);
    for (long long c0 = 1; c0 < p; ++c0)
        for (long long c1 = 0; c1 < p; ++c1) {
            h[0] = -c0;  // prefer x^f - c0 - c1 x style lifts
            if (f >= 2) h[1] = -c1;
            if (irreducible(h)) return h;
        }
    throw std::logic_error("default_modulus: no irreducible polynomial found");
}

}  // namespace hecke
