#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "hecke/counts.hpp"
#include "hecke/instances.hpp"
#include "hecke/lattice.hpp"

using namespace hecke;

namespace {

constexpr int kN = 40;

Mat2 diag_powers(long long v1, long long v2, long long p, const std::vector<long long>& h) {
    UnramifiedElt one = UnramifiedElt::from_int(1, p, kN, h);
    UnramifiedElt zero(p, kN, h);
    return Mat2{one.shift(v1), zero, zero, one.shift(v2)};
}

void check_against_formulas(const OracleInstance& inst, int radius) {
    EmpiricalResult res = empirical_counts(inst.g, inst.twisted, *inst.sigma, radius);
    REQUIRE(res.fixed_set_found);
    REQUIRE(res.certified_max_r >= 1);
    std::set<WeylElt> seen;
    for (const auto& [w, n] : res.counts0) seen.insert(w);
    for (long long m = -res.certified_max_r - 1; m <= res.certified_max_r + 1; ++m)
        for (int b = 0; b <= 1; ++b) seen.insert({m, b, res.s});
    for (const WeylElt& w : seen) {
        if (!res.certified(w)) continue;
        Int got = res.counts0.count(w) ? res.counts0.at(w) : Int(0);
        Int want = inst.twisted ? count_delta_sigma(w, inst.params) : count_gamma(w, inst.params);
        INFO(inst.desc << " w=" << w.str() << " certified_r=" << res.certified_max_r);
        CHECK(got == want);
    }
    // size-shift identity: the size-one census is the size-zero census of the bar
    for (const WeylElt& w : seen) {
        if (!res.certified(w)) continue;
        Int c0 = res.counts0.count(w) ? res.counts0.at(w) : Int(0);
        WeylElt wb = bar(w);
        Int c1 = res.counts1.count(wb) ? res.counts1.at(wb) : Int(0);
        INFO(inst.desc << " size shift at w=" << w.str());
        CHECK(c0 == c1);
    }
}

}  // namespace

TEST_CASE("vertex basics") {
    long long p = 3;
    std::vector<long long> h = default_modulus(p, 1);
    Lattice l0 = standard_lattice(p, kN, h);
    CHECK(vertex_type(l0) == 0);
    Lattice l1 = l0;
    l1.v1 = -1;  // p^{-1}O + O
    CHECK(vertex_type(l1) == 1);
    CHECK(vertex_type(l0.shifted(1)) == 0);

    CHECK(vertex_distance(l0, l0) == 0);
    CHECK(vertex_distance(l0, l1) == 1);
    Lattice l2 = lattice_from_basis(diag_powers(2, 0, p, h));
    CHECK(vertex_distance(l0, l2) == 2);
    CHECK(vertex_distance(l2, l0) == 2);
}

TEST_CASE("normal forms are canonical") {
    long long p = 3;
    std::vector<long long> h = default_modulus(p, 1);
    UnramifiedElt one = UnramifiedElt::from_int(1, p, kN, h);
    // two bases of the same lattice reduce to one normal form
    Mat2 m1{one.shift(1), UnramifiedElt::from_int(4, p, kN, h), UnramifiedElt(p, kN, h), one};
    Mat2 m2{one.shift(1), UnramifiedElt::from_int(1, p, kN, h), UnramifiedElt(p, kN, h), one};
    // 4 = 1 + 3: congruent mod p^{v1}
    CHECK(lattice_key(lattice_from_basis(m1)) == lattice_key(lattice_from_basis(m2)));
    // column order does not matter
    Mat2 m3{UnramifiedElt::from_int(4, p, kN, h), one.shift(1), one, UnramifiedElt(p, kN, h)};
    CHECK(lattice_key(lattice_from_basis(m3)) == lattice_key(lattice_from_basis(m1)));
    CHECK_THROWS(lattice_from_basis(Mat2{one, one, one, one}));
}

TEST_CASE("neighbors are the index-q^f sublattice classes") {
    for (long long p : {3LL, 5LL}) {
        std::vector<long long> h = default_modulus(p, 1);
        Lattice l0 = standard_lattice(p, kN, h);
        auto nb = vertex_neighbors(l0);
        CHECK(nb.size() == static_cast<size_t>(p + 1));
        std::set<std::string> keys;
        for (const auto& l : nb) {
            keys.insert(lattice_key(l));
            CHECK(vertex_distance(l0, l) == 1);
            CHECK(vertex_type(l) == 1);
        }
        CHECK(keys.size() == nb.size());
    }
}

TEST_CASE("relative position of pinned extended edges") {
    long long p = 3;
    std::vector<long long> h = default_modulus(p, 1);
    ExtEdge e0 = base_ext_edge(p, kN, h);
    CHECK(inv(e0, e0) == kIdentity);

    Frobenius sig(p, kN, h);
    // tau = (0, 1; p, 0) carries the base edge to its size-one flip
    UnramifiedElt one = UnramifiedElt::from_int(1, p, kN, h);
    UnramifiedElt zero(p, kN, h);
    Mat2 tau{zero, one, one.shift(1), zero};
    CHECK(inv(e0, act(tau, false, sig, e0)) == kTau);
    // t_{(-1,1)} = diag(p, p^{-1}) sits at distance (1,0,0)
    Mat2 t = diag_powers(1, -1, p, h);
    CHECK(inv(e0, act(t, false, sig, e0)) == WeylElt{1, 0, 0});
    // central p Id shifts size by two
    Mat2 center = diag_powers(1, 1, p, h);
    ExtEdge moved = act(center, false, sig, e0);
    CHECK(moved.size() == e0.size() + 2);
    CHECK(inv(e0, moved) == WeylElt{0, 0, 2});

    // identity fixes, and the twisted action of the identity is sigma itself
    std::vector<long long> h2{1, 0};
    Frobenius sig2(p, kN, h2);
    ExtEdge e2 = base_ext_edge(p, kN, h2);
    Mat2 id2 = diag_powers(0, 0, p, h2);
    CHECK(inv(e2, act(id2, true, sig2, e2)) == kIdentity);
}

TEST_CASE("relative position is invariant under the group action") {
    long long p = 3;
    std::vector<long long> h{1, 0};
    Frobenius sig(p, kN, h);
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<long long> d(-6, 6);
    auto rand_mat = [&]() {
        while (true) {
            UnramifiedElt e[4];
            for (auto& x : e) {
                x = UnramifiedElt(p, kN, h);
                for (int i = 0; i < 2; ++i) x.coord(i) = PadicElt::from_int(d(rng), p, kN);
            }
            Mat2 m{e[0], e[1], e[2], e[3]};
            try {
                if (m.val_det() <= 4) return m;
            } catch (const std::exception&) {
            }
        }
    };
    ExtEdge e0 = base_ext_edge(p, kN, h);
    for (int trial = 0; trial < 25; ++trial) {
        Mat2 a = rand_mat(), b = rand_mat(), g = rand_mat();
        ExtEdge e1 = act(a, false, sig, e0);
        ExtEdge e2 = act(b, false, sig, e0);
        WeylElt w = inv(e1, e2);
        CHECK(inv(act(g, false, sig, e1), act(g, false, sig, e2)) == w);
        CHECK(gallery_length(e1.A, e1.B, e2.A, e2.B) == length(w));
    }
}

TEST_CASE("census matches the formulas, untwisted") {
    for (long long p : {3LL}) {
        for (int a = 0; a <= 1; ++a) {
            check_against_formulas(make_gamma_instance(p, false, false, a, kN), 4);
            check_against_formulas(make_gamma_instance(p, true, false, a, kN), 4);
        }
        check_against_formulas(make_gamma_instance(p, true, true, 0, kN), 4);
    }
}

TEST_CASE("census matches the formulas, twisted") {
    for (DeltaBranch br : {DeltaBranch::SplitEvenDiff0, DeltaBranch::SplitEvenDiff2, DeltaBranch::SplitOdd,
                           DeltaBranch::RamEven, DeltaBranch::RamOdd}) {
        check_against_formulas(make_delta_instance(3, br, 0, kN), 3);
        check_against_formulas(make_delta_instance(3, br, 1, kN), 3);
    }
}

TEST_CASE("fixed sets have the predicted geometry") {
    long long p = 3;
    // unramified: the fixed edges form the ball of radius a around the
    // standard vertex
    for (int a = 0; a <= 2; ++a) {
        OracleInstance inst = make_gamma_instance(p, false, false, a, kN);
        EmpiricalResult res = empirical_counts(inst.g, false, *inst.sigma, 4);
        Int expected = 0;
        Int shell = p + 1;
        for (int i = 1; i <= a; ++i) {
            expected += shell;
            shell *= p;
        }
        CHECK(Int(res.fixed_edge_depths.size()) == expected);
        CHECK(res.k_max == a);
    }
    // ramified with odd valuation: a single stabilized, flipped edge
    OracleInstance flip = make_gamma_instance(p, true, true, 0, kN);
    EmpiricalResult res = empirical_counts(flip.g, false, *flip.sigma, 4);
    CHECK(res.fixed_edge_depths.size() == 1);
    // twisted fixed subtrees branch with arity q + 1 at the center
    OracleInstance tw = make_delta_instance(p, DeltaBranch::SplitEvenDiff0, 1, kN);
    EmpiricalResult rt = empirical_counts(tw.g, true, *tw.sigma, 3);
    CHECK(Int(rt.fixed_edge_depths.size()) == p + 1);
}

TEST_CASE("radius limits are enforced") {
    OracleInstance inst = make_gamma_instance(3, false, false, 0, kN);
    CHECK_THROWS_AS(empirical_counts(inst.g, false, *inst.sigma, 0), std::invalid_argument);
    CHECK_THROWS_AS(empirical_counts(inst.g, false, *inst.sigma, 9), std::invalid_argument);
}
