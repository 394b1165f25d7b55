#include <catch2/catch_amalgamated.hpp>

#include "hecke/bernstein.hpp"

using namespace hecke;

namespace {

// independent route to the drop-r coefficient:
// 1 - 2q + 2q^2 - ... + 2(-q)^{r-1} + (-q)^r, times u^{-len}
Scalar coeff_oracle(long long len, long long r) {
    Scalar q = Scalar::q();
    if (r == 0) return Scalar::u_pow(-len);
    Scalar acc = Scalar(1) + (-q).pow(r);
    for (long long i = 1; i < r; ++i) acc = acc + Scalar(2) * (-q).pow(i);
    return Scalar::u_pow(-len) * acc;
}

}  // namespace

TEST_CASE("coefficient values") {
    Scalar q = Scalar::q();
    // full length: u^{-len}
    CHECK(bernstein_coeff({2, -1}, {1, 1, -1}) == Scalar::u_pow(-3));
    // one below full length: u^{-len}(1-q)
    CHECK(bernstein_coeff({2, -1}, {1, 0, -1}) == Scalar::u_pow(-3) * (Scalar(1) - q));
    // drop two, evaluated at q = 2
    CHECK(bernstein_coeff({1, -1}, {0, 0, 0}).eval(2) == QuadValue(2, Rat(1, 2), 0));
    // off the admissible set
    CHECK(bernstein_coeff({1, -1}, {2, 0, 0}).is_zero());
    CHECK(bernstein_coeff({1, -1}, {0, 0, 2}).is_zero());
    CHECK_THROWS_AS(bernstein_coeff({-1, 1}, kIdentity), std::invalid_argument);
}

TEST_CASE("coefficient agrees with the expanded alternating sum") {
    for (long long len = 0; len <= 8; ++len) {
        Cocharacter mu{len, 0};
        for (const WeylElt& w : admissible_set(mu)) {
            long long r = len - length(w);
            CHECK(bernstein_coeff(mu, w) == coeff_oracle(len, r));
        }
    }
}

TEST_CASE("the (q+1) factor always cancels") {
    for (long long len = 1; len <= 9; ++len) {
        Cocharacter mu{len, 0};
        for (const WeylElt& w : admissible_set(mu)) {
            Scalar c = bernstein_coeff(mu, w);
            // denominator is a pure power of u
            Poly d = c.den();
            CHECK(d.coeff(d.degree()) == 1);
            for (int i = 0; i < d.degree(); ++i) CHECK(d.coeff(i) == 0);
        }
    }
}

TEST_CASE("coefficients depend on w only through its length") {
    for (long long i = 0; i <= 4; ++i)
        for (long long j = -4; j <= i; ++j) {
            Cocharacter mu{i, j};
            if (mu.length() > 8) continue;
            for (const WeylElt& w : admissible_set(mu)) CHECK(bernstein_coeff(mu, w) == bernstein_coeff(mu, bar(w)));
        }
}

TEST_CASE("bernstein function support and values") {
    CenterElement z0 = bernstein_function({2, 2});
    CHECK(z0.support_size() == 1);
    CHECK(z0.coeff({0, 0, -4}) == Scalar(1));

    CenterElement z1 = bernstein_function({0, -1});
    CHECK(z1.support_size() == 3);
    CHECK(z1.coeff({0, 1, 1}) == Scalar::u_pow(-1));
    CHECK(z1.coeff({-1, 1, 1}) == Scalar::u_pow(-1));
    CHECK(z1.coeff({0, 0, 1}) == Scalar::u_pow(-1) * (Scalar(1) - Scalar::q()));

    CHECK(bernstein_function({3, -2}).support_size() == 2 * 5 + 1);
}

TEST_CASE("base change scales the cocharacter") {
    CHECK(base_change({0, -1}, 1) == bernstein_function({0, -1}));
    CHECK(base_change({0, -1}, 2) == bernstein_function({0, -2}));
    for (int f = 1; f <= 3; ++f) {
        Cocharacter mu{2, -1};
        CHECK(base_change(mu, f).support_size() == static_cast<size_t>(2 * f * mu.length() + 1));
    }
}

TEST_CASE("regrouping by parity of length") {
    Regrouped g0 = regroup(bernstein_function({3, 3}));
    CHECK(g0.odd_pairs.empty());
    CHECK(g0.even_pairs.empty());
    CHECK(g0.zero_term.second == Scalar(1));

    Regrouped g1 = regroup(bernstein_function({0, -1}));
    CHECK(g1.odd_pairs.size() == 1);
    CHECK(g1.even_pairs.empty());

    Regrouped g2 = regroup(bernstein_function({1, -1}));
    CHECK(g2.odd_pairs.size() == 1);
    CHECK(g2.even_pairs.size() == 1);

    for (long long i = 0; i <= 3; ++i)
        for (long long j = -3; j <= i; ++j) {
            CenterElement z = bernstein_function({i, j});
            CHECK(regroup(z).reassemble() == z);
        }
}
