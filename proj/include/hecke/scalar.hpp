#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hecke {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(const Int& base, long long e) {
    if (e < 0) throw std::invalid_argument("pow_int: negative exponent");
    Int r = 1, b = base;
    while (e) {
        if (e & 1) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, long long e) {
    if (e >= 0) {
        Rat r = 1, b = base;
        while (e) {
            if (e & 1) r *= b;
            b *= b;
            e >>= 1;
        }
        return r;
    }
    if (base == 0) throw std::domain_error("pow_rat: 0^negative");
    return Rat(1) / pow_rat(base, -e);
}

// Returns the exact integer square root if n is a perfect square.
inline bool perfect_square(const Int& n, Int& root) {
    if (n < 0) return false;
    root = boost::multiprecision::sqrt(n);
    return root * root == n;
}

/**
 * Poly: dense integer-coefficient polynomial in one variable u,
 * coefficients stored in ascending degree.
 */
class Poly {
public:
    Poly() = default;
    Poly(const Int& c) {
        if (c != 0) c_.push_back(c);
    }
    Poly(long long c) : Poly(Int(c)) {}
    explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly monomial(int deg, const Int& coeff = Int(1)) {
        if (coeff == 0) return Poly();
        std::vector<Int> c(static_cast<size_t>(deg) + 1);
        c.back() = coeff;
        return Poly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    Int coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<size_t>(i)];
    }
    const Int& lead() const {
        if (is_zero()) throw std::domain_error("Poly::lead on zero");
        return c_.back();
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly operator-() const {
        Poly r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Int> c(std::max(a.c_.size(), b.c_.size()));
        for (size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
        return Poly(std::move(c));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Int> c(a.c_.size() + b.c_.size() - 1);
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(c));
    }
    Poly mul_int(const Int& k) const {
        Poly r = *this;
        if (k == 0) return Poly();
        for (auto& x : r.c_) x *= k;
        return r;
    }

    Int content() const {  // nonnegative gcd of coefficients; 0 for zero poly
        Int g = 0;
        for (const auto& x : c_) g = boost::multiprecision::gcd(g, x);
        return g;
    }
    Poly primitive() const {
        if (is_zero()) return Poly();
        Int g = content();
        std::vector<Int> c = c_;
        for (auto& x : c) x /= g;
        return Poly(std::move(c));
    }

    // gcd of the primitive parts, normalized primitive with positive leading coefficient
    static Poly gcd(const Poly& a, const Poly& b);

    // exact division (throws if the division leaves a remainder over Q)
    Poly div_exact(const Poly& d) const;

    // u -> u^n
    Poly compose_upow(int n) const {
        if (n < 1) throw std::invalid_argument("compose_upow: n must be >= 1");
        if (is_zero()) return Poly();
        std::vector<Int> c(static_cast<size_t>(degree()) * n + 1);
        for (size_t i = 0; i < c_.size(); ++i) c[i * n] = c_[i];
        return Poly(std::move(c));
    }

    // Evaluate at u = sqrt(q): returns (A, B) with value A + B*sqrt(q).
    std::pair<Int, Int> eval_sqrt(const Int& q) const {
        Int A = 0, B = 0, qp = 1;
        for (size_t i = 0; i < c_.size(); i += 2) {
            A += c_[i] * qp;
            if (i + 1 < c_.size()) B += c_[i + 1] * qp;
            qp *= q;
        }
        return {A, B};
    }

    std::string str() const;

private:
    std::vector<Int> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

namespace detail {

// polynomial division over Q; returns {quotient, remainder}
inline std::pair<std::vector<Rat>, std::vector<Rat>> rat_divmod(std::vector<Rat> a, const std::vector<Rat>& b) {
    if (b.empty()) throw std::domain_error("rat_divmod: division by zero polynomial");
    std::vector<Rat> q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size()) {
        Rat f = a.back() / b.back();
        q[a.size() - b.size()] = f;
        for (size_t i = 0; i < b.size(); ++i) a[a.size() - b.size() + i] -= f * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty()) break;
    }
    return {q, a};
}

inline std::vector<Rat> to_rat(const Poly& p) {
    std::vector<Rat> v(static_cast<size_t>(p.degree() + 1));
    for (int i = 0; i <= p.degree(); ++i) v[static_cast<size_t>(i)] = Rat(p.coeff(i));
    return v;
}

}  // namespace detail

inline Poly Poly::gcd(const Poly& a, const Poly& b) {
    auto x = detail::to_rat(a.primitive());
    auto y = detail::to_rat(b.primitive());
    while (!y.empty()) {
        auto [q, r] = detail::rat_divmod(x, y);
        (void)q;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.empty()) return Poly();
    // clear denominators, make primitive, positive leading coefficient
    Int den = 1;
    for (auto& c : x) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(c));
    std::vector<Int> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        Rat c = x[i] * den;
        z[i] = boost::multiprecision::numerator(c);
    }
    Poly g = Poly(std::move(z)).primitive();
    if (g.lead() < 0) g = -g;
    return g;
}

inline Poly Poly::div_exact(const Poly& d) const {
    if (d.is_zero()) throw std::domain_error("Poly::div_exact: division by zero");
    if (is_zero()) return Poly();
    auto [q, r] = detail::rat_divmod(detail::to_rat(*this), detail::to_rat(d));
    if (!r.empty()) throw std::domain_error("Poly::div_exact: inexact division");
    std::vector<Int> z(q.size());
    for (size_t i = 0; i < q.size(); ++i) {
        if (boost::multiprecision::denominator(q[i]) != 1)
            throw std::domain_error("Poly::div_exact: non-integer quotient");
        z[i] = boost::multiprecision::numerator(q[i]);
    }
    return Poly(std::move(z));
}

inline std::string Poly::str() const {
    if (is_zero()) return "0";
    std::string s;
    for (int i = degree(); i >= 0; --i) {
        Int c = coeff(i);
        if (c == 0) continue;
        if (!s.empty()) {
            s += (c > 0) ? " + " : " - ";
            if (c < 0) c = -c;
        } else if (c < 0) {
            s += "-";
            c = -c;
        }
        if (i == 0) {
            s += c.str();
        } else {
            if (c != 1) s += c.str() + "*";
            s += (i == 1) ? "u" : ("u^" + std::to_string(i));
        }
    }
    return s;
}

/**
 * QuadValue: an exact element a + b*sqrt(q) of Q[sqrt(q)], q a fixed
 * prime power. When q is a perfect square the value is folded into the
 * rational part, so equality is always equality of field elements.
 */
class QuadValue {
public:
    QuadValue() : q_(0), a_(0), b_(0) {}
    QuadValue(Int q, Rat a, Rat b) : q_(std::move(q)), a_(std::move(a)), b_(std::move(b)) { normalize(); }
    static QuadValue rational(const Int& q, const Rat& a) { return QuadValue(q, a, 0); }

    const Int& q() const { return q_; }
    const Rat& rational_part() const { return a_; }
    const Rat& sqrt_part() const { return b_; }
    bool is_zero() const { return a_ == 0 && b_ == 0; }

    friend bool operator==(const QuadValue& x, const QuadValue& y) {
        x.check_same(y);
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const QuadValue& x, const QuadValue& y) { return !(x == y); }

    friend QuadValue operator+(const QuadValue& x, const QuadValue& y) {
        x.check_same(y);
        return QuadValue(x.q_, x.a_ + y.a_, x.b_ + y.b_);
    }
    friend QuadValue operator-(const QuadValue& x, const QuadValue& y) {
        x.check_same(y);
        return QuadValue(x.q_, x.a_ - y.a_, x.b_ - y.b_);
    }
    friend QuadValue operator*(const QuadValue& x, const QuadValue& y) {
        x.check_same(y);
        return QuadValue(x.q_, x.a_ * y.a_ + x.b_ * y.b_ * Rat(x.q_), x.a_ * y.b_ + x.b_ * y.a_);
    }
    QuadValue scale(const Rat& r) const { return QuadValue(q_, a_ * r, b_ * r); }
    QuadValue inverse() const {
        // conjugate trick; for non-square q the norm a^2 - b^2 q vanishes only at 0
        Rat n = a_ * a_ - b_ * b_ * Rat(q_);
        if (n == 0) throw std::domain_error("QuadValue::inverse of zero");
        return QuadValue(q_, a_ / n, -b_ / n);
    }
    friend QuadValue operator/(const QuadValue& x, const QuadValue& y) { return x * y.inverse(); }

    std::string str() const {
        auto rs = [](const Rat& r) {
            std::string s = boost::multiprecision::numerator(r).str();
            if (boost::multiprecision::denominator(r) != 1) s += "/" + boost::multiprecision::denominator(r).str();
            return s;
        };
        if (b_ == 0) return rs(a_);
        std::string s;
        if (a_ != 0) s = rs(a_) + (b_ > 0 ? " + " : " - ");
        else if (b_ < 0) s = "-";
        Rat babs = b_ < 0 ? Rat(-b_) : b_;
        if (babs != 1) s += rs(babs) + "*";
        s += "sqrt(" + q_.str() + ")";
        return s;
    }

private:
    Int q_;
    Rat a_, b_;
    void normalize() {
        Int root;
        if (b_ != 0 && perfect_square(q_, root)) {
            a_ += b_ * Rat(root);
            b_ = 0;
        }
    }
    void check_same(const QuadValue& o) const {
        if (q_ != o.q_) throw std::invalid_argument("QuadValue: mixed base fields");
    }
};

/**
 * Scalar: an exact element of the rational function field Q(u). The
 * variable u stands for a square root of the residue cardinality q, so
 * q enters formulas as u^2. Canonical form: rational content times a
 * quotient of coprime primitive integer polynomials with positive
 * leading coefficients.
 */
class Scalar {
public:
    Scalar() : r_(0), num_(1), den_(1) {}
    Scalar(const Rat& r) : r_(r), num_(1), den_(1) {}
    Scalar(const Int& n) : Scalar(Rat(n)) {}
    Scalar(long long n) : Scalar(Rat(n)) {}
    Scalar(const Poly& num, const Poly& den) { normalize(num, den, Rat(1)); }

    static Scalar u_pow(long long k) {
        Scalar s(1);
        if (k >= 0)
            s.num_ = Poly::monomial(static_cast<int>(k));
        else
            s.den_ = Poly::monomial(static_cast<int>(-k));
        return s;
    }
    // q = u^2
    static Scalar q_pow(long long k) { return u_pow(2 * k); }
    static Scalar q() { return q_pow(1); }

    bool is_zero() const { return r_ == 0; }
    bool is_one() const { return r_ == 1 && num_.degree() == 0 && den_.degree() == 0; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.r_ == b.r_ && a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar operator-() const {
        Scalar s = *this;
        s.r_ = -s.r_;
        return s;
    }
    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        Int a1 = boost::multiprecision::numerator(a.r_), b1 = boost::multiprecision::denominator(a.r_);
        Int a2 = boost::multiprecision::numerator(b.r_), b2 = boost::multiprecision::denominator(b.r_);
        Poly n = (a.num_ * b.den_).mul_int(a1 * b2) + (b.num_ * a.den_).mul_int(a2 * b1);
        Poly d = a.den_ * b.den_;
        Scalar s;
        s.normalize(n, d, Rat(1, b1 * b2));
        return s;
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        Scalar s;
        if (a.is_zero() || b.is_zero()) return s;
        s.normalize(a.num_ * b.num_, a.den_ * b.den_, a.r_ * b.r_);
        return s;
    }
    Scalar inverse() const {
        if (is_zero()) throw std::domain_error("Scalar::inverse of zero");
        Scalar s;
        s.normalize(den_, num_, Rat(1) / r_);
        return s;
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

    Scalar pow(long long e) const {
        if (e < 0) return inverse().pow(-e);
        Scalar r(1), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // u -> u^n (carries q -> q^n; used to pass between residue fields)
    Scalar subst_upow(int n) const {
        if (is_zero()) return *this;
        Scalar s;
        s.r_ = r_;
        s.num_ = num_.compose_upow(n);
        s.den_ = den_.compose_upow(n);
        return s;
    }

    // exact evaluation at u = sqrt(q)
    QuadValue eval(const Int& q) const {
        if (is_zero()) return QuadValue(q, 0, 0);
        auto [na, nb] = num_.eval_sqrt(q);
        auto [da, db] = den_.eval_sqrt(q);
        QuadValue n(q, Rat(na), Rat(nb));
        QuadValue d(q, Rat(da), Rat(db));
        return (n / d).scale(r_);
    }

    // canonical "P(u)/Q(u)" with integer-coefficient P and Q
    std::string str() const {
        Poly n = num_.mul_int(boost::multiprecision::numerator(r_));
        Poly d = den_.mul_int(boost::multiprecision::denominator(r_));
        if (d.degree() == 0 && d.coeff(0) == 1) return n.str();
        return "(" + n.str() + ")/(" + d.str() + ")";
    }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    const Rat& content() const { return r_; }

private:
    Rat r_;
    Poly num_, den_;

    void normalize(const Poly& n, const Poly& d, const Rat& r) {
        if (d.is_zero()) throw std::domain_error("Scalar: zero denominator");
        if (n.is_zero() || r == 0) {
            r_ = 0;
            num_ = Poly(1);
            den_ = Poly(1);
            return;
        }
        Int cn = n.content(), cd = d.content();
        Poly pn = n.primitive(), pd = d.primitive();
        Poly g = Poly::gcd(pn, pd);
        pn = pn.div_exact(g);
        pd = pd.div_exact(g);
        int sign = 1;
        if (pn.lead() < 0) {
            pn = -pn;
            sign = -sign;
        }
        if (pd.lead() < 0) {
            pd = -pd;
            sign = -sign;
        }
        r_ = r * Rat(cn, cd) * sign;
        num_ = std::move(pn);
        den_ = std::move(pd);
    }
};

}  // namespace hecke
