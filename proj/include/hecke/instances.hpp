#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "counts.hpp"
#include "lattice.hpp"
#include "mat2.hpp"

namespace hecke {

// smallest convenient non-square unit modulo p (prefers -1)
inline long long unramified_nonresidue(long long p) {
    if (p == 2) throw std::invalid_argument("unramified_nonresidue: p must be odd");
    if (!is_square_unit(Int(-1), p)) return -1;
    for (long long d = 2; d < p; ++d)
        if (!is_square_unit(Int(d), p)) return d;
    throw std::logic_error("unramified_nonresidue: none found");
}

/**
 * OracleInstance: a concrete standard-form element together with the
 * case invariants derived from it (never assumed): s from the
 * determinant, a from the discriminant valuation, the splitting data
 * from the eigenvalue valuations.
 */
struct OracleInstance {
    std::string desc;
    Mat2 g;  // gamma itself, or delta when twisted
    bool twisted = false;
    std::shared_ptr<Frobenius> sigma;
    CaseParams params;
};

enum class DeltaBranch { SplitEvenDiff0, SplitEvenDiff2, SplitOdd, RamEven, RamOdd };

// degree-one instances: gamma acting untwisted
inline OracleInstance make_gamma_instance(long long p, bool ramified, bool odd_valuation, int a, int N) {
    std::vector<long long> h = default_modulus(p, 1);
    OracleInstance inst;
    inst.twisted = false;
    inst.sigma = std::make_shared<Frobenius>(p, N, h);
    Rat D = ramified ? Rat(p) : Rat(unramified_nonresidue(p));
    if (ramified && odd_valuation) {
        inst.g = standard_form(0, 1, D, p, N, h);
        inst.desc = "gamma ram odd p=" + std::to_string(p);
    } else {
        inst.g = standard_form(1, pow_rat(Rat(p), a), D, p, N, h);
        inst.desc = (ramified ? "gamma ram even p=" : "gamma unram p=") + std::to_string(p) + " a=" + std::to_string(a);
    }
    CaseParams& c = inst.params;
    c.q = p;
    c.f = 1;
    c.ramified = ramified;
    c.s = inst.g.val_det();
    Rat x = delta_exponent(inst.g);
    if ((c.s % 2 + 2) % 2 == 0) {
        Rat ar = ramified ? x - Rat(1, 2) : x;
        if (boost::multiprecision::denominator(ar) != 1 || ar < 0)
            throw std::logic_error("make_gamma_instance: unexpected discriminant exponent");
        c.a = boost::multiprecision::numerator(ar).convert_to<int>();
        if (c.a != a) throw std::logic_error("make_gamma_instance: instance does not realize the requested a");
    }
    c.validate();
    return inst;
}

// degree-two instances: delta in the standard torus over E, acting
// twisted; all invariants are computed from gamma = N(delta)
inline OracleInstance make_delta_instance(long long p, DeltaBranch branch, int a, int N) {
    long long D = unramified_nonresidue(p);
    std::vector<long long> h = {-D, 0};  // h(x) = x^2 - D, so g = sqrt(D)
    OracleInstance inst;
    inst.twisted = true;
    inst.sigma = std::make_shared<Frobenius>(p, N, h);
    const Frobenius& sig = *inst.sigma;

    auto e_int = [&](const Int& v) { return UnramifiedElt::from_int(v, p, N, h); };
    auto e_rat = [&](const Rat& v) { return UnramifiedElt::from_rat(v, p, N, h); };
    UnramifiedElt g = UnramifiedElt::generator(p, N, h);
    UnramifiedElt one = e_int(1), two = e_int(2);

    UnramifiedElt alpha, beta, torusD;
    bool ramified = (branch == DeltaBranch::RamEven || branch == DeltaBranch::RamOdd);
    if (!ramified) {
        // eigenvalues lambda+- = alpha +- beta g of delta, chosen to pin
        // the valuation parity, the mod-4 difference, and a
        UnramifiedElt lp, lm;
        switch (branch) {
            case DeltaBranch::SplitEvenDiff0:
                lp = one + g.shift(a);
                lm = one;
                break;
            case DeltaBranch::SplitEvenDiff2:
                lp = (one + g.shift(a)).shift(2);
                lm = one;
                break;
            case DeltaBranch::SplitOdd:
                lp = (one + g.shift(a)).shift(1);
                lm = one;
                break;
            default:
                throw std::logic_error("make_delta_instance: bad branch");
        }
        torusD = e_int(D);
        alpha = (lp + lm) / two;
        beta = (lp - lm) / (two * g);
    } else {
        torusD = e_rat(Rat(p));
        if (branch == DeltaBranch::RamEven) {
            alpha = one;
            beta = (one + g).shift(a);
        } else {
            alpha = e_rat(Rat(p));
            beta = one + g;
        }
    }
    inst.g = Mat2{alpha, beta * torusD, beta, alpha};
    inst.desc = std::string("delta ") + (ramified ? "ram" : "split") + " p=" + std::to_string(p) +
                " a=" + std::to_string(a);

    Mat2 gamma = norm_map(inst.g, sig);
    CaseParams& c = inst.params;
    c.q = p;
    c.f = 2;
    c.ramified = ramified;
    c.split_in_E = !ramified;
    c.s = inst.g.val_det();
    bool s_even = (c.s % 2 + 2) % 2 == 0;
    if (s_even) {
        Rat x = delta_exponent(gamma);
        Rat ar = ramified ? x - Rat(1, 2) : x;
        if (boost::multiprecision::denominator(ar) != 1 || ar < 0)
            throw std::logic_error("make_delta_instance: unexpected discriminant exponent");
        c.a = boost::multiprecision::numerator(ar).convert_to<int>();
        if (c.a != a) throw std::logic_error("make_delta_instance: instance does not realize the requested a");
    }
    if (!ramified && s_even) {
        // eigenvalue valuation difference of delta, mod 4
        long long vp = (alpha + beta * g).valuation();
        long long vm = (alpha - beta * g).valuation();
        long long diff = vp - vm;
        if (diff < 0) diff = -diff;
        c.eigen_diff_mod4 = static_cast<int>(diff % 4);
    }
    c.validate();
    return inst;
}

}  // namespace hecke
