#pragma once

#include <stdexcept>
#include <vector>

#include "padic.hpp"
#include "scalar.hpp"

namespace hecke {

/**
 * Frobenius: the base-fixing generator of Gal(E/F) for the unramified
 * degree-f extension, realized on coordinates. The image of the power
 * basis generator g is the Hensel lift of the root of h congruent to
 * g^p, so sigma(x) = x^p on residues; sigma^f is the identity.
 */
class Frobenius {
public:
    Frobenius(long long p, int N, std::vector<long long> h) : p_(p), N_(N), h_(std::move(h)) {
        if (N < 2) throw std::invalid_argument("Frobenius: precision must be >= 2");
        int f = static_cast<int>(h_.size());
        if (f == 1) return;  // identity
        UnramifiedElt g = UnramifiedElt::generator(p_, N_, h_);
        UnramifiedElt r = pow(g, p_);
        // Newton iteration r <- r - h(r)/h'(r); h separable mod p
        for (int it = 0; it < 2 * N_; ++it) {
            UnramifiedElt num = eval_h(r);
            if (num.is_zero_at_precision() || num.valuation() >= N_ - 1) break;
            r = r - num * eval_hprime(r).inverse();
        }
        UnramifiedElt residue = eval_h(r);
        if (!residue.is_zero_at_precision() && residue.valuation() < N_ - kMinSlack)
            throw PrecisionError("Frobenius: Hensel lifting did not converge");
        powers_.push_back(UnramifiedElt::from_int(1, p_, N_, h_));
        powers_.push_back(r);
        for (int i = 2; i < f; ++i) powers_.push_back(powers_.back() * r);
    }

    int f() const { return static_cast<int>(h_.size()); }

    // sigma fixes the base field coordinates and sends g to its lifted
    // conjugate, so sigma(sum c_i g^i) = sum c_i sigma(g)^i
    UnramifiedElt operator()(const UnramifiedElt& x) const {
        if (x.p() != p_ || x.modulus() != h_) throw std::invalid_argument("Frobenius: wrong field");
        if (f() == 1) return x;
        UnramifiedElt acc(p_, N_, h_);
        for (int i = 0; i < f(); ++i) acc = acc + scale(powers_[static_cast<size_t>(i)], x.coord(i));
        return acc;
    }

    static UnramifiedElt pow(const UnramifiedElt& x, long long e) {
        UnramifiedElt r = UnramifiedElt::from_int(1, x.p(), x.N(), x.modulus());
        UnramifiedElt b = x;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

private:
    long long p_;
    int N_;
    std::vector<long long> h_;
    std::vector<UnramifiedElt> powers_;  // sigma(g)^i

    static UnramifiedElt scale(const UnramifiedElt& x, const PadicElt& c) {
        UnramifiedElt r = x;
        for (int i = 0; i < r.degree(); ++i) r.coord(i) = r.coord(i) * c;
        return r;
    }

    UnramifiedElt eval_h(const UnramifiedElt& x) const {
        UnramifiedElt acc = pow(x, static_cast<long long>(h_.size()));
        UnramifiedElt xp = UnramifiedElt::from_int(1, p_, N_, h_);
        for (size_t i = 0; i < h_.size(); ++i) {
            acc = acc + scale(xp, PadicElt::from_int(h_[i], p_, N_));
            xp = xp * x;
        }
        return acc;
    }
    UnramifiedElt eval_hprime(const UnramifiedElt& x) const {
        int f = static_cast<int>(h_.size());
        UnramifiedElt acc = scale(pow(x, f - 1), PadicElt::from_int(f, p_, N_));
        UnramifiedElt xp = UnramifiedElt::from_int(1, p_, N_, h_);
        for (int i = 1; i < f; ++i) {
            acc = acc + scale(xp, PadicElt::from_int(Int(h_[static_cast<size_t>(i)]) * i, p_, N_));
            xp = xp * x;
        }
        return acc;
    }
};

/**
 * Mat2: a 2x2 matrix over the unramified extension.
 */
struct Mat2 {
    UnramifiedElt a, b, c, d;  // [[a, b], [c, d]]

    friend Mat2 operator*(const Mat2& x, const Mat2& y) {
        return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
    }
    UnramifiedElt det() const { return a * d - b * c; }
    UnramifiedElt trace() const { return a + d; }
    long long val_det() const { return det().valuation(); }
    Mat2 inverse() const {
        UnramifiedElt di = det().inverse();
        auto m = [&](const UnramifiedElt& x) {
            UnramifiedElt r = x * di;
            return r;
        };
        return {m(d), m(-b), m(-c), m(a)};
    }
    Mat2 apply(const Frobenius& sigma) const { return {sigma(a), sigma(b), sigma(c), sigma(d)}; }
};

inline Mat2 mat2_from_int(long long a, long long b, long long c, long long d, long long p, int N,
                          const std::vector<long long>& h) {
    auto e = [&](long long v) { return UnramifiedElt::from_int(v, p, N, h); };
    return {e(a), e(b), e(c), e(d)};
}

// N(delta) = delta sigma(delta) ... sigma^{f-1}(delta)
inline Mat2 norm_map(const Mat2& delta, const Frobenius& sigma) {
    Mat2 acc = delta;
    Mat2 cur = delta;
    for (int i = 1; i < sigma.f(); ++i) {
        cur = cur.apply(sigma);
        acc = acc * cur;
    }
    return acc;
}

/**
 * The exponent x with Delta(g) = q^{-x}, computed from symmetric
 * functions only: (lambda1 - lambda2)^2 = tr^2 - 4 det, so
 * x = (val(tr^2 - 4 det) - val(det)) / 2.
 */
inline Rat delta_exponent(const Mat2& g) {
    UnramifiedElt det = g.det();
    UnramifiedElt four = UnramifiedElt::from_int(4, det.p(), det.N(), det.modulus());
    UnramifiedElt disc = g.trace() * g.trace() - det * four;
    long long vd = disc.valuation();
    if (vd == kValInfinity) throw std::domain_error("delta_exponent: equal eigenvalues (not regular)");
    return Rat(vd - det.valuation(), 2);
}

// quadratic residue test for a unit modulo an odd prime
inline bool is_square_unit(const Int& unit_rep, long long p) {
    Int e = (Int(p) - 1) / 2;
    Int base = unit_rep % p;
    if (base < 0) base += p;
    Int r = 1;
    Int b = base;
    Int ee = e;
    while (ee > 0) {
        if (ee % 2 == 1) r = r * b % p;
        b = b * b % p;
        ee /= 2;
    }
    return r == 1;
}

/**
 * The standard form (x, yD; y, x) of a semi-simple regular elliptic
 * element; val(D) = 0 gives the unramified splitting field, val(D) = 1
 * the ramified one.
 */
inline Mat2 standard_form(const Rat& x, const Rat& y, const Rat& D, long long p, int N,
                          const std::vector<long long>& h) {
    if (p == 2) throw std::invalid_argument("standard_form: residue characteristic 2 is excluded");
    if (y == 0) throw std::invalid_argument("standard_form: y must be nonzero");
    PadicElt Dp = PadicElt::from_rat(D, p, N);
    long long vD = Dp.valuation();
    if (vD != 0 && vD != 1) throw std::invalid_argument("standard_form: val(D) must be 0 or 1");
    if (vD == 0) {
        Int num = boost::multiprecision::numerator(D), den = boost::multiprecision::denominator(D);
        Int unit = num * den;  // same class modulo squares
        if (is_square_unit(unit, p)) throw std::invalid_argument("standard_form: D is a square");
    }
    auto e = [&](const Rat& v) { return UnramifiedElt::from_rat(v, p, N, h); };
    return {e(x), e(y * D), e(y), e(x)};
}

// gamma is a norm from the degree-f extension iff f divides val det
inline bool is_norm_valuation(const Mat2& gamma, int f) {
    if (f < 1) throw std::invalid_argument("is_norm_valuation: f must be >= 1");
    long long v = gamma.val_det();
    if (v == kValInfinity) throw std::domain_error("is_norm_valuation: singular matrix");
    return v % f == 0;
}

}  // namespace hecke
