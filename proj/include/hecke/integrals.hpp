#pragma once

#include <stdexcept>
#include <vector>

#include "bernstein.hpp"
#include "counts.hpp"
#include "scalar.hpp"
#include "weyl.hpp"

namespace hecke {

namespace detail {

// u^k evaluated at u = sqrt(q), exactly
inline QuadValue quad_u_pow(const Int& q, long long k) {
    if (k % 2 == 0) return QuadValue::rational(q, pow_rat(Rat(q), k / 2));
    long long h = (k - 1) / 2;  // floor for odd k, also for negative odd k
    return QuadValue(q, 0, pow_rat(Rat(q), h));
}

// embed an element of Q[sqrt(q)] back into Q(u) as a + b*u
inline Scalar from_quad(const QuadValue& v) {
    return Scalar(v.rational_part()) + Scalar(v.sqrt_part()) * Scalar::u_pow(1);
}

}  // namespace detail

/**
 * IntegralReport: one exact comparison of two routes to the same
 * integral; agree holds exactly when the two Scalars are equal.
 */
struct IntegralReport {
    Cocharacter mu;
    CaseParams params;
    Scalar summation_value;
    Scalar closed_value;
    bool agree = false;
    // base-change checker only: the closed forms of the two sides match,
    // and the orbital side vanishes on non-norm determinant valuations
    bool closed_agree = true;
    bool vanishing_ok = true;

    bool all_ok() const { return agree && closed_agree && vanishing_ok; }
};

/**
 * Twisted orbital integral of z_mu in summation form: Bernstein
 * coefficients over the extension (residue cardinality q^f) times edge
 * counts, with the pair (w, bar w) entering together in the unramified
 * case and the size-zero count alone in the ramified case. Measures:
 * the Iwahori and the maximal compact of the centralizing torus both
 * have measure one.
 */
inline Scalar twisted_sum(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    if (!mu.dominant()) throw std::invalid_argument("twisted_sum: mu must be dominant");
    QuadValue acc(p.q, 0, 0);
    for (const WeylElt& w : admissible_set(mu)) {
        Int m = count_delta_sigma(w, p);
        if (!p.ramified) m += count_delta_sigma(bar(w), p);
        if (m == 0) continue;
        QuadValue c = bernstein_coeff_ext(mu, w, p.f).eval(p.q);
        acc = acc + c.scale(Rat(m));
    }
    return detail::from_quad(acc);
}

// Orbital integral of z_mu in summation form: the untwisted counts
// with the same multiplicity rule, coefficients over the base field.
inline Scalar orbital_sum(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    if (!mu.dominant()) throw std::invalid_argument("orbital_sum: mu must be dominant");
    QuadValue acc(p.q, 0, 0);
    for (const WeylElt& w : admissible_set(mu)) {
        Int m = count_gamma(w, p);
        if (!p.ramified) m += count_gamma(bar(w), p);
        if (m == 0) continue;
        QuadValue c = bernstein_coeff(mu, w).eval(p.q);
        acc = acc + c.scale(Rat(m));
    }
    return detail::from_quad(acc);
}

namespace detail {

inline Scalar closed_form(const Cocharacter& mu, const CaseParams& p, long long f) {
    if (!mu.dominant()) throw std::invalid_argument("closed form: mu must be dominant");
    if (mu.size() != p.s) return Scalar();
    long long L = mu.length();
    Rat q(p.q);
    if (!p.ramified) {
        if (L == 0) return from_quad(QuadValue::rational(p.q, 2 * (pow_rat(q, p.a) - 1) * (q + 1) / (q - 1)));
        Rat c = 2 * (1 - pow_rat(-q, f * L));
        return from_quad(quad_u_pow(p.q, -f * L).scale(c));
    }
    if (L == 0) return from_quad(QuadValue::rational(p.q, (2 * pow_rat(q, p.a + 1) - q - 1) / (q - 1)));
    Rat c = 1 - pow_rat(q, f * L);
    return from_quad(quad_u_pow(p.q, -f * L).scale(c));
}

}  // namespace detail

// Closed form of the twisted orbital integral: 0 on size mismatch;
// 2(q^a-1)(q+1)/(q-1) resp. (2q^{a+1}-q-1)/(q-1) at length zero;
// 2 q^{-f len/2}(1-(-q)^{f len}) resp. q^{-f len/2}(1-q^{f len}) else.
inline Scalar twisted_closed(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    return detail::closed_form(mu, p, p.f);
}

// Closed form of the (untwisted) orbital integral: the f = 1 case.
inline Scalar orbital_closed(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    return detail::closed_form(mu, p, 1);
}

// --- the same integrals as identities in q -------------------------
//
// With counts taken symbolically (q = u^2 formal) the summation and
// closed forms become rational functions of u; their equality in Q(u)
// proves the identity for every residue cardinality at once, covering
// in particular the function-field cases no p-adic oracle realizes.

inline Scalar twisted_sum_symbolic(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    if (!mu.dominant()) throw std::invalid_argument("twisted_sum_symbolic: mu must be dominant");
    Scalar acc;
    for (const WeylElt& w : admissible_set(mu)) {
        Scalar m = count_delta_sigma_symbolic(w, p);
        if (!p.ramified) m = m + count_delta_sigma_symbolic(bar(w), p);
        acc = acc + bernstein_coeff_ext(mu, w, p.f) * m;
    }
    return acc;
}

inline Scalar orbital_sum_symbolic(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    if (!mu.dominant()) throw std::invalid_argument("orbital_sum_symbolic: mu must be dominant");
    Scalar acc;
    for (const WeylElt& w : admissible_set(mu)) {
        Scalar m = count_gamma_symbolic(w, p);
        if (!p.ramified) m = m + count_gamma_symbolic(bar(w), p);
        acc = acc + bernstein_coeff(mu, w) * m;
    }
    return acc;
}

namespace detail {

inline Scalar closed_form_symbolic(const Cocharacter& mu, const CaseParams& p, long long f) {
    if (!mu.dominant()) throw std::invalid_argument("closed form: mu must be dominant");
    if (mu.size() != p.s) return Scalar();
    long long L = mu.length();
    Scalar q = Scalar::q(), one(1);
    if (!p.ramified) {
        if (L == 0) return Scalar(2) * (Scalar::q_pow(p.a) - one) * (q + one) / (q - one);
        return Scalar(2) * Scalar::u_pow(-f * L) * (one - (-q).pow(f * L));
    }
    if (L == 0) return (Scalar(2) * Scalar::q_pow(p.a + 1) - q - one) / (q - one);
    return Scalar::u_pow(-f * L) * (one - Scalar::q_pow(f * L));
}

}  // namespace detail

inline Scalar twisted_closed_symbolic(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    return detail::closed_form_symbolic(mu, p, p.f);
}

inline Scalar orbital_closed_symbolic(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    return detail::closed_form_symbolic(mu, p, 1);
}

inline IntegralReport compare_twisted(const Cocharacter& mu, const CaseParams& p) {
    IntegralReport r;
    r.mu = mu;
    r.params = p;
    r.summation_value = twisted_sum(mu, p);
    r.closed_value = twisted_closed(mu, p);
    r.agree = (r.summation_value == r.closed_value);
    return r;
}

inline IntegralReport compare_orbital(const Cocharacter& mu, const CaseParams& p) {
    IntegralReport r;
    r.mu = mu;
    r.params = p;
    r.summation_value = orbital_sum(mu, p);
    r.closed_value = orbital_closed(mu, p);
    r.agree = (r.summation_value == r.closed_value);
    return r;
}

// The base-field invariants of gamma = N(delta): same q, a and
// ramification, degree one, determinant valuation multiplied by f.
inline CaseParams norm_side_params(const CaseParams& p) {
    CaseParams pf = p;
    pf.f = 1;
    pf.s = static_cast<long long>(p.f) * p.s;
    pf.split_in_E = false;
    pf.eigen_diff_mod4.reset();
    pf.validate();
    return pf;
}

/**
 * The base change identity for z_mu: the twisted integral over the
 * extension against the orbital integral of z_{f mu} over the base
 * field, compared in summation form (closed forms are checked too and
 * folded into agree). vanishing_ok records that the orbital side is
 * identically zero against every gamma whose determinant valuation f
 * does not divide.
 */
inline IntegralReport check_fundamental_lemma(const Cocharacter& mu, const CaseParams& p) {
    p.validate();
    if (!mu.dominant()) throw std::invalid_argument("check_fundamental_lemma: mu must be dominant");
    CaseParams pf = norm_side_params(p);
    Cocharacter fmu = mu.scaled(p.f);

    IntegralReport r;
    r.mu = mu;
    r.params = p;
    r.summation_value = twisted_sum(mu, p);
    r.closed_value = orbital_sum(fmu, pf);
    r.agree = (r.summation_value == r.closed_value);
    Scalar tc = twisted_closed(mu, p);
    r.closed_agree = (tc == orbital_closed(fmu, pf)) && (r.summation_value == tc);

    // not-a-norm branch: a determinant valuation outside fZ meets no
    // term of b(z_mu) = z_{f mu}, so the orbital side vanishes
    r.vanishing_ok = true;
    if (p.f > 1) {
        std::vector<CaseParams> bad;
        CaseParams ram_bad = pf;
        ram_bad.ramified = true;
        ram_bad.split_in_E = false;
        ram_bad.eigen_diff_mod4.reset();
        for (long long off = 1; off < p.f; ++off) {
            CaseParams c = ram_bad;
            c.s = static_cast<long long>(p.f) * p.s + off;
            bad.push_back(c);
            if ((c.s % 2 + 2) % 2 == 0) {
                CaseParams cu = c;
                cu.ramified = false;
                bad.push_back(cu);
            }
        }
        for (const CaseParams& c : bad) {
            c.validate();
            for (const WeylElt& w : admissible_set(fmu))
                if (w.s == c.s) r.vanishing_ok = false;
            if (!orbital_sum(fmu, c).is_zero()) r.vanishing_ok = false;
        }
    }
    return r;
}

}  // namespace hecke
