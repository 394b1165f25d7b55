#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "scalar.hpp"
#include "weyl.hpp"

namespace hecke {

/**
 * Coefficient of 1_{IwI} in the Bernstein basis element z_mu of the
 * center of the Iwahori-Hecke algebra. Zero off the mu-admissible set;
 * u^{-len(mu)} at full length; u^{-len(mu)}((-q)^r - 1)(q-1)/(q+1) when
 * the length drops by r >= 1. The (q+1) factor always cancels, so the
 * result is a Laurent polynomial in u.
 */
inline Scalar bernstein_coeff(const Cocharacter& mu, const WeylElt& w) {
    if (!mu.dominant()) throw std::invalid_argument("bernstein_coeff: mu must be dominant");
    if (!is_admissible(w, mu)) return Scalar();
    long long L = mu.length();
    long long r = L - length(w);
    Scalar lead = Scalar::u_pow(-L);
    if (r == 0) return lead;
    Scalar q = Scalar::q();
    Scalar v = ((-q).pow(r) - Scalar(1)) * (q - Scalar(1)) / (q + Scalar(1));
    return lead * v;
}

// Same coefficient over the unramified degree-f extension, whose
// residue cardinality is q^f: substitute u -> u^f.
inline Scalar bernstein_coeff_ext(const Cocharacter& mu, const WeylElt& w, int f) {
    if (f < 1) throw std::invalid_argument("bernstein_coeff_ext: f must be >= 1");
    return bernstein_coeff(mu, w).subst_upow(f);
}

/**
 * CenterElement: a finite coefficient map WeylElt -> Scalar. All keys
 * share one size; zero coefficients are never stored.
 */
class CenterElement {
public:
    CenterElement() = default;

    void set(const WeylElt& w, const Scalar& c) {
        if (c.is_zero()) return;
        if (!coeffs_.empty() && coeffs_.begin()->first.s != w.s)
            throw std::invalid_argument("CenterElement: mixed sizes");
        coeffs_[w] = c;
    }
    Scalar coeff(const WeylElt& w) const {
        auto it = coeffs_.find(w);
        return it == coeffs_.end() ? Scalar() : it->second;
    }
    const std::map<WeylElt, Scalar>& coeffs() const { return coeffs_; }
    size_t support_size() const { return coeffs_.size(); }

    friend bool operator==(const CenterElement& a, const CenterElement& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::map<WeylElt, Scalar> coeffs_;
};

inline CenterElement bernstein_function(const Cocharacter& mu) {
    CenterElement z;
    for (const WeylElt& w : admissible_set(mu)) z.set(w, bernstein_coeff(mu, w));
    return z;
}

// Iwahori base change carries z_mu to z_{f*mu}.
inline CenterElement base_change(const Cocharacter& mu, int f) {
    if (f < 1) throw std::invalid_argument("base_change: f must be >= 1");
    if (!mu.dominant()) throw std::invalid_argument("base_change: mu must be dominant");
    return bernstein_function(mu.scaled(f));
}

/**
 * Regrouped: z_mu split into its length-zero term, the pairs
 * {(-i,1,s),(i-1,1,s)} of odd-length edges, and the pairs
 * {(-j,0,s),(j,0,s)} of non-zero even-length edges.
 */
struct Regrouped {
    std::pair<WeylElt, Scalar> zero_term;
    std::vector<std::pair<std::pair<WeylElt, WeylElt>, Scalar>> odd_pairs;
    std::vector<std::pair<std::pair<WeylElt, WeylElt>, Scalar>> even_pairs;

    CenterElement reassemble() const {
        CenterElement z;
        z.set(zero_term.first, zero_term.second);
        for (const auto& [pair, c] : odd_pairs) {
            z.set(pair.first, c);
            z.set(pair.second, c);
        }
        for (const auto& [pair, c] : even_pairs) {
            z.set(pair.first, c);
            z.set(pair.second, c);
        }
        return z;
    }
};

inline Regrouped regroup(const CenterElement& z) {
    if (z.support_size() == 0) throw std::invalid_argument("regroup: empty element");
    long long s = z.coeffs().begin()->first.s;
    long long L = 0;
    for (const auto& [w, c] : z.coeffs()) L = std::max(L, length(w));
    Regrouped g;
    g.zero_term = {WeylElt{0, 0, s}, z.coeff({0, 0, s})};
    for (long long i = 1; 2 * i - 1 <= L; ++i) {
        WeylElt w1{-i, 1, s}, w2{i - 1, 1, s};
        Scalar c = z.coeff(w1);
        if (c != z.coeff(w2)) throw std::invalid_argument("regroup: pair coefficients differ");
        g.odd_pairs.push_back({{w1, w2}, c});
    }
    for (long long j = 1; 2 * j <= L; ++j) {
        WeylElt w1{-j, 0, s}, w2{j, 0, s};
        Scalar c = z.coeff(w1);
        if (c != z.coeff(w2)) throw std::invalid_argument("regroup: pair coefficients differ");
        g.even_pairs.push_back({{w1, w2}, c});
    }
    return g;
}

}  // namespace hecke
