#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace hecke {

/**
 * WeylElt: an element (m, b, s) = t_{(-1,1)}^m s1^b tau^s of the
 * extended affine Weyl group of GL2, equivalently an extended edge of
 * the standard apartment. The triple is a canonical name: each group
 * element has exactly one.
 */
struct WeylElt {
    long long m = 0;
    int b = 0;  // 0 or 1
    long long s = 0;

    friend bool operator==(const WeylElt&, const WeylElt&) = default;
    friend auto operator<=>(const WeylElt&, const WeylElt&) = default;

    std::string str() const {
        return "(" + std::to_string(m) + "," + std::to_string(b) + "," + std::to_string(s) + ")";
    }
};

inline const WeylElt kIdentity{0, 0, 0};
inline const WeylElt kTau{0, 0, 1};       // generator of Omega
inline const WeylElt kS0{-1, 1, 0};       // affine reflection about v1
inline const WeylElt kS1{0, 1, 0};        // reflection about v0

/**
 * Cocharacter: mu = (i, j) in X_*(S). Its size is -(i+j) and its
 * length is |i-j|; both match the same notions for t_mu.
 */
struct Cocharacter {
    long long i = 0;
    long long j = 0;

    friend bool operator==(const Cocharacter&, const Cocharacter&) = default;

    bool dominant() const { return i >= j; }
    long long length() const { return i >= j ? i - j : j - i; }
    long long size() const { return -(i + j); }
    Cocharacter scaled(long long c) const { return {c * i, c * j}; }
    std::string str() const { return "(" + std::to_string(i) + "," + std::to_string(j) + ")"; }
};

/**
 * SemidirectForm: the normal form (lambda, w) of an element of
 * X_*(S) x| W, with W = {1, s1} acting on Z^2 by coordinate swap.
 */
struct SemidirectForm {
    long long l1 = 0;
    long long l2 = 0;
    bool swap = false;  // true means the finite part is s1

    friend bool operator==(const SemidirectForm&, const SemidirectForm&) = default;
};

// (m,b,s) = t_{(-m,m)} s1^b tau^s, with tau^{2k} = t_{(-k,-k)} and
// tau^{2k+1} = t_{(-k,-k-1)} s1.
inline SemidirectForm to_semidirect(const WeylElt& w) {
    if (w.b != 0 && w.b != 1) throw std::invalid_argument("WeylElt: b must be 0 or 1");
    SemidirectForm t{-w.m, w.m, false};
    long long k = (w.s >= 0) ? w.s / 2 : -((-w.s + 1) / 2);  // floor(s/2)
    bool s_odd = (w.s - 2 * k) != 0;
    SemidirectForm tau_s = s_odd ? SemidirectForm{-k, -k - 1, true} : SemidirectForm{-k, -k, false};
    // compose t * s1^b * tau^s via (l, w)(l', w') = (l + w l', ww')
    SemidirectForm mid = w.b ? SemidirectForm{0, 0, true} : SemidirectForm{0, 0, false};
    auto mul = [](const SemidirectForm& x, const SemidirectForm& y) {
        long long a = y.l1, b2 = y.l2;
        if (x.swap) std::swap(a, b2);
        return SemidirectForm{x.l1 + a, x.l2 + b2, x.swap != y.swap};
    };
    return mul(mul(t, mid), tau_s);
}

inline WeylElt from_semidirect(const SemidirectForm& f) {
    long long sum = f.l1 + f.l2;
    WeylElt w;
    w.s = -sum;
    long long diff = f.l2 - f.l1;
    if (((sum % 2) + 2) % 2 == 0) {
        // even size: diff is even, finite part carries b
        w.b = f.swap ? 1 : 0;
        w.m = diff / 2;
    } else {
        // odd size: tau^s contributes one swap
        if (f.swap) {
            w.b = 0;
            w.m = (diff + 1) / 2;
        } else {
            w.b = 1;
            w.m = (diff - 1) / 2;
        }
    }
    return w;
}

inline WeylElt multiply(const WeylElt& w1, const WeylElt& w2) {
    SemidirectForm a = to_semidirect(w1), b = to_semidirect(w2);
    long long x = b.l1, y = b.l2;
    if (a.swap) std::swap(x, y);
    return from_semidirect({a.l1 + x, a.l2 + y, a.swap != b.swap});
}

inline WeylElt inverse(const WeylElt& w) {
    SemidirectForm f = to_semidirect(w);
    long long x = -f.l1, y = -f.l2;
    if (f.swap) std::swap(x, y);
    return from_semidirect({x, y, f.swap});
}

inline long long length(const WeylElt& w) {
    long long v = 2 * w.m + w.b;
    return v >= 0 ? v : -v;
}

inline long long size(const WeylElt& w) { return w.s; }

// The element distinct from w with the same length and size: tau^-1 w tau.
inline WeylElt bar(const WeylElt& w) {
    return multiply(multiply(inverse(kTau), w), kTau);
}

// t_mu as a Weyl element; size -(i+j), length |i-j|.
inline WeylElt translation(const Cocharacter& mu) {
    return from_semidirect({mu.i, mu.j, false});
}

inline bool is_admissible(const WeylElt& w, const Cocharacter& mu) {
    if (!mu.dominant()) throw std::invalid_argument("is_admissible: mu must be dominant");
    return w.s == mu.size() && length(w) <= mu.length();
}

// All mu-admissible elements: one of length 0 and two of each length
// 1..length(mu), ordered by length ascending then m descending.
inline std::vector<WeylElt> admissible_set(const Cocharacter& mu) {
    if (!mu.dominant()) throw std::invalid_argument("admissible_set: mu must be dominant");
    long long s = mu.size(), L = mu.length();
    std::vector<WeylElt> out;
    out.push_back({0, 0, s});
    for (long long n = 1; n <= L; ++n) {
        if (n % 2 == 1) {
            long long r = (n - 1) / 2;
            out.push_back({r, 1, s});
            out.push_back({-r - 1, 1, s});
        } else {
            long long r = n / 2;
            out.push_back({r, 0, s});
            out.push_back({-r, 0, s});
        }
    }
    return out;
}

}  // namespace hecke
