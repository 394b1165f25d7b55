#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "scalar.hpp"
#include "weyl.hpp"

namespace hecke {

inline bool is_prime_power(const Int& q, Int* base = nullptr) {
    if (q < 2) return false;
    Int p = 0;
    for (Int d = 2; d * d <= q; ++d)
        if (q % d == 0) {
            p = d;
            break;
        }
    if (p == 0) p = q;  // q prime
    Int m = q;
    while (m % p == 0) m /= p;
    if (m != 1) return false;
    if (base) *base = p;
    return true;
}

/**
 * CaseParams: the invariants that drive every edge-count and integral
 * formula. One flag combination per case:
 *
 *   ramified | s odd  |            -> flipped edge, counts q^{fr} at (+-r,0,s)
 *   ramified | s even |            -> ball around an edge
 *   unram    | s odd  | split in E -> flipped edge (f even)
 *   unram    | s even | split in E -> ball around a vertex, type from
 *                                     the eigenvalue-valuation difference mod 4
 *   unram    | s even | not split  -> ball around a type-zero vertex (f odd)
 *
 * q is the residue cardinality of the base field, f the degree of the
 * unramified extension, a the exponent in Delta = q^{-a} (unramified)
 * or q^{-a-(d_T+1)/2} (ramified), s the valuation of the determinant.
 */
struct CaseParams {
    Int q = 2;
    int f = 1;
    int a = 0;
    int d_T = 0;
    bool ramified = false;
    long long s = 0;
    bool split_in_E = false;
    std::optional<int> eigen_diff_mod4;  // only when split_in_E and s even

    void validate() const {
        if (!is_prime_power(q)) throw std::invalid_argument("CaseParams: q must be a prime power >= 2");
        if (f < 1) throw std::invalid_argument("CaseParams: f must be >= 1");
        if (a < 0) throw std::invalid_argument("CaseParams: a must be >= 0");
        if (d_T < 0) throw std::invalid_argument("CaseParams: d_T must be >= 0");
        if (split_in_E && f % 2 != 0) throw std::invalid_argument("CaseParams: split_in_E forces f even");
        if (ramified && split_in_E) throw std::invalid_argument("CaseParams: a ramified torus does not split in E");
        if (!ramified && f % 2 == 0 && !split_in_E)
            throw std::invalid_argument("CaseParams: unramified torus splits in E when f is even");
        if (!ramified && !split_in_E && s % 2 != 0)
            throw std::invalid_argument("CaseParams: val det is even unless the torus splits in E");
        bool want_eigen = !ramified && split_in_E && s % 2 == 0;
        if (want_eigen != eigen_diff_mod4.has_value())
            throw std::invalid_argument("CaseParams: eigen_diff_mod4 required exactly in the split, even-valuation case");
        if (eigen_diff_mod4 && *eigen_diff_mod4 != 0 && *eigen_diff_mod4 != 2)
            throw std::invalid_argument("CaseParams: eigen_diff_mod4 must be 0 or 2");
    }

    std::string str() const {
        std::string s_ = (ramified ? "ram" : "unram");
        s_ += ",q=" + q.str() + ",f=" + std::to_string(f) + ",a=" + std::to_string(a) + ",s=" + std::to_string(s);
        if (split_in_E) s_ += ",split";
        if (eigen_diff_mod4) s_ += ",vdiff" + std::to_string(*eigen_diff_mod4);
        return s_;
    }
};

namespace detail {

inline Int rat_to_count(const Rat& v, const char* where) {
    if (boost::multiprecision::denominator(v) != 1 || v < 0)
        throw std::logic_error(std::string(where) + ": count is not a nonnegative integer");
    return boost::multiprecision::numerator(v);
}

// One branch structure for both coefficient fields: exact rationals at
// a numeric q, or rational functions of u with q = u^2, so each count
// is available as an identity in q.
template <typename K, typename QPow>
K count_gamma_in(const WeylElt& w, const CaseParams& p, QPow qpow) {
    if (w.s != p.s) return K(0);
    K q = qpow(1), one = qpow(0);
    if (p.ramified) {
        if ((p.s % 2 + 2) % 2 == 1) {
            // flipped edge: only even lengths occur, q^r each side
            if (w.b != 0) return K(0);
            long long r = w.m >= 0 ? w.m : -w.m;
            return qpow(r);
        }
        // ball of radius a around the stabilized edge
        if (w.b == 0) {
            if (w.m != 0) return K(0);
            return (K(2) * qpow(p.a + 1) - q - one) / (q - one);
        }
        long long r = w.m < 0 ? -w.m : w.m + 1;
        return qpow(p.a + r);
    }
    // unramified: ball of radius a around the type-zero vertex v0
    if (w.b == 0) {
        if (w.m != 0) return K(0);
        return (q + one) * (qpow(p.a) - one) / (q - one);
    }
    long long r = w.m < 0 ? -w.m : w.m + 1;
    bool at_neg = w.m < 0;
    bool nonzero = at_neg ? ((p.a + r) % 2 == 0) : ((p.a + r) % 2 == 1);
    if (!nonzero) return K(0);
    return (q + one) * qpow(p.a + r - 1);
}

template <typename K, typename QPow>
K count_delta_sigma_in(const WeylElt& w, const CaseParams& p, QPow qpow) {
    if (w.s != p.s) return K(0);
    K q = qpow(1), one = qpow(0);
    long long f = p.f;
    bool s_odd = (p.s % 2 + 2) % 2 == 1;
    if (p.ramified) {
        if (s_odd) {
            if (w.b != 0) return K(0);
            long long r = w.m >= 0 ? w.m : -w.m;
            return qpow(f * r);
        }
        if (w.b == 0) {
            if (w.m != 0) return K(0);
            return (K(2) * qpow(p.a + 1) - q - one) / (q - one);
        }
        long long r = w.m < 0 ? -w.m : w.m + 1;
        return qpow(f * r) * (qpow(p.a) + (qpow(p.a) - one) * (one - qpow(1 - f)) / (q - one));
    }
    if (p.split_in_E && s_odd) {
        if (w.b != 0) return K(0);
        long long r = w.m >= 0 ? w.m : -w.m;
        return qpow(f * r);
    }
    // unramified, fixed set a ball around a single vertex
    if (w.b == 0) {
        if (w.m != 0) return K(0);
        return (q + one) * (qpow(p.a) - one) / (q - one);
    }
    long long r = w.m < 0 ? -w.m : w.m + 1;
    bool at_neg = w.m < 0;
    bool long_at_neg = ((p.a + r) % 2 == 0);
    if (p.eigen_diff_mod4 && *p.eigen_diff_mod4 == 2) long_at_neg = !long_at_neg;
    bool take_long = at_neg ? long_at_neg : !long_at_neg;
    if (take_long)
        return qpow(f * r) * ((one - qpow(1 - f)) * (qpow(p.a - 1) - one) / (q - one) + (q + one) * qpow(p.a - 1));
    return qpow(f * r) * (one - qpow(1 - f)) * (qpow(p.a) - one) / (q - one);
}

}  // namespace detail

/**
 * Number of size-zero extended edges at relative position w under a
 * semi-simple regular elliptic element with invariants p (untwisted
 * action; p.f is ignored).
 */
inline Int count_gamma(const WeylElt& w, const CaseParams& p) {
    p.validate();
    Rat qn(p.q);
    Rat v = detail::count_gamma_in<Rat>(w, p, [&](long long e) { return pow_rat(qn, e); });
    return detail::rat_to_count(v, "count_gamma");
}

/**
 * Number of size-zero extended edges at relative position w under the
 * twisted action delta-sigma, delta lying above an elliptic element
 * with invariants p. Degenerates to count_gamma at f = 1.
 */
inline Int count_delta_sigma(const WeylElt& w, const CaseParams& p) {
    p.validate();
    Rat qn(p.q);
    Rat v = detail::count_delta_sigma_in<Rat>(w, p, [&](long long e) { return pow_rat(qn, e); });
    return detail::rat_to_count(v, "count_delta_sigma");
}

// the same counts as rational functions of u, with q = u^2 formal; the
// numeric counts are their evaluations at any prime power
inline Scalar count_gamma_symbolic(const WeylElt& w, const CaseParams& p) {
    p.validate();
    return detail::count_gamma_in<Scalar>(w, p, [](long long e) { return Scalar::q_pow(e); });
}

inline Scalar count_delta_sigma_symbolic(const WeylElt& w, const CaseParams& p) {
    p.validate();
    return detail::count_delta_sigma_in<Scalar>(w, p, [](long long e) { return Scalar::q_pow(e); });
}

}  // namespace hecke
