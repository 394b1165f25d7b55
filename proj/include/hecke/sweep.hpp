#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "instances.hpp"
#include "integrals.hpp"
#include "tree_oracle.hpp"

namespace hecke {

/**
 * ComparisonRow: one exact comparison, rendered. The verification
 * commands emit these in a fixed deterministic order.
 */
struct ComparisonRow {
    std::string case_id;
    std::string item;  // the Weyl element or cocharacter under comparison
    std::string lhs;
    std::string rhs;
    bool certified = true;
    bool ok = false;
};

struct RowSummary {
    size_t total = 0;
    size_t failed = 0;
    bool all_ok() const { return failed == 0; }
};

inline RowSummary summarize(const std::vector<ComparisonRow>& rows) {
    RowSummary s;
    s.total = rows.size();
    for (const auto& r : rows)
        if (!r.ok) ++s.failed;
    return s;
}

// flips one comparison; negative control for the exit-code contract
inline void inject_fault(std::vector<ComparisonRow>& rows) {
    if (rows.empty()) return;
    rows.front().ok = false;
    rows.front().rhs += " [fault injected]";
}

namespace detail {

inline std::string render(const Scalar& s, const Int& q) {
    return s.str() + " = " + s.eval(q).str();
}

}  // namespace detail

// every valid flag combination with the given invariants and size
inline std::vector<CaseParams> grid_branches(const Int& q, int f, int a, long long s) {
    std::vector<CaseParams> out;
    bool s_odd = ((s % 2) + 2) % 2 == 1;
    CaseParams ram;
    ram.q = q;
    ram.f = f;
    ram.a = a;
    ram.ramified = true;
    ram.s = s;
    out.push_back(ram);
    CaseParams un = ram;
    un.ramified = false;
    if (f % 2 == 0) {
        un.split_in_E = true;
        if (s_odd) {
            out.push_back(un);
        } else {
            un.eigen_diff_mod4 = 0;
            out.push_back(un);
            un.eigen_diff_mod4 = 2;
            out.push_back(un);
        }
    } else if (!s_odd) {
        out.push_back(un);
    }
    for (const auto& p : out) p.validate();
    return out;
}

inline Cocharacter mu_for(long long len, long long sz) { return {(len - sz) / 2, (-len - sz) / 2}; }

/**
 * IntegralGrid: the parameter ranges for the summation-vs-closed and
 * base-change sweeps. An explicit cocharacter list overrides the
 * length/size grid; the ramification filter keeps one case family.
 */
struct IntegralGrid {
    std::vector<Int> qs{2, 3, 4, 5, 7, 9};
    std::vector<int> fs{1, 2, 3};
    std::vector<int> as{0, 1, 2, 3, 4};
    long long max_len = 6;
    std::vector<long long> sizes{0, 1, 2, 3};
    std::vector<Cocharacter> mus;          // empty: derive from max_len and sizes
    std::optional<bool> ramified_filter;
    int d_T = 0;
    bool include_mismatch = true;
};

// the (case, cocharacter) pairs of one grid cell, in a fixed order
inline std::vector<std::pair<CaseParams, Cocharacter>> grid_cases(const IntegralGrid& grid, const Int& q, int f,
                                                                  int a) {
    std::vector<std::pair<CaseParams, Cocharacter>> out;
    auto keep = [&](const CaseParams& p) { return !grid.ramified_filter || p.ramified == *grid.ramified_filter; };
    if (!grid.mus.empty()) {
        for (const Cocharacter& mu : grid.mus)
            for (CaseParams p : grid_branches(q, f, a, mu.size()))
                if (keep(p)) {
                    p.d_T = grid.d_T;
                    out.push_back({p, mu});
                }
        return out;
    }
    for (long long s : grid.sizes)
        for (CaseParams p : grid_branches(q, f, a, s)) {
            if (!keep(p)) continue;
            p.d_T = grid.d_T;
            for (long long len = ((s % 2) + 2) % 2; len <= grid.max_len; len += 2) out.push_back({p, mu_for(len, s)});
        }
    return out;
}

// twisted and orbital integrals of z_mu: summation form against closed form
inline std::vector<ComparisonRow> run_verify_integrals(const IntegralGrid& grid) {
    std::vector<ComparisonRow> rows;
    for (const Int& q : grid.qs)
        for (int f : grid.fs)
            for (int a : grid.as)
                for (const auto& [p, mu] : grid_cases(grid, q, f, a)) {
                    IntegralReport tw = compare_twisted(mu, p);
                    rows.push_back({p.str(), "mu=" + mu.str() + " twisted", detail::render(tw.summation_value, q),
                                    detail::render(tw.closed_value, q), true, tw.agree});
                    IntegralReport orb = compare_orbital(mu, p);
                    rows.push_back({p.str(), "mu=" + mu.str() + " orbital", detail::render(orb.summation_value, q),
                                    detail::render(orb.closed_value, q), true, orb.agree});
                    if (grid.include_mismatch && mu.length() >= grid.max_len) {
                        // shifted size: every form must vanish
                        Cocharacter off{mu.i - 1, mu.j - 1};
                        bool zero = twisted_sum(off, p).is_zero() && twisted_closed(off, p).is_zero() &&
                                    orbital_sum(off, p).is_zero() && orbital_closed(off, p).is_zero();
                        rows.push_back(
                            {p.str(), "mu=" + off.str() + " size mismatch", "0", zero ? "0" : "nonzero", true, zero});
                    }
                }
    return rows;
}

// the base change identity: twisted z_mu over E against orbital z_{f mu} over F
inline std::vector<ComparisonRow> run_verify_fl(const IntegralGrid& grid) {
    std::vector<ComparisonRow> rows;
    for (const Int& q : grid.qs)
        for (int f : grid.fs)
            for (int a : grid.as)
                for (const auto& [p, mu] : grid_cases(grid, q, f, a)) {
                    IntegralReport fl = check_fundamental_lemma(mu, p);
                    std::string item = "mu=" + mu.str();
                    if (f == 1) item += " degenerate";
                    rows.push_back({p.str(), item, detail::render(fl.summation_value, q),
                                    detail::render(fl.closed_value, q), true, fl.agree && fl.closed_agree});
                    if (f > 1)
                        rows.push_back({p.str(), "mu=" + mu.str() + " not-a-norm vanishing", "0",
                                        fl.vanishing_ok ? "0" : "nonzero", true, fl.vanishing_ok});
                }
    return rows;
}

/**
 * TreeGrid: fixed-set specs swept by the tree-oracle count check.
 */
struct TreeGrid {
    std::vector<Int> qs{2, 3};
    std::vector<int> fs{1, 2};
    std::vector<int> as{0, 1, 2};
    int radius = 6;
};

inline std::vector<ComparisonRow> run_verify_counts_tree(const TreeGrid& grid) {
    std::vector<ComparisonRow> rows;
    auto compare = [&](const FixedSetSpec& spec, const TruncTree& tree, const std::string& label) {
        TallyResult res = tally(spec, tree);
        CaseParams p = tree_case_params(spec);
        for (long long m = -res.certified_max_r - 1; m <= res.certified_max_r + 1; ++m)
            for (int b = 0; b <= 1; ++b) {
                long long ell = length(WeylElt{m, b, 0});
                long long r = (b == 1) ? (ell + 1) / 2 : ell / 2;
                if (r > res.certified_max_r) continue;
                Int got = res.counts.count({m, b}) ? res.counts.at({m, b}) : Int(0);
                Int want = count_delta_sigma({m, b, p.s}, p);
                rows.push_back({label + " | " + p.str(), WeylElt{m, b, p.s}.str(), want.str() + " (formula)",
                                got.str() + " (tree)", true, got == want});
            }
    };
    for (const Int& q : grid.qs)
        for (int f : grid.fs) {
            TruncTree tree{q, f, grid.radius};
            FixedSetSpec spec;
            spec.q = q;
            spec.f = f;
            spec.variant = FixedSetSpec::Variant::FlipEdge;
            compare(spec, tree, "flip");
            for (int a : grid.as) {
                spec.a = a;
                spec.variant = FixedSetSpec::Variant::BallAroundEdge;
                compare(spec, tree, "ball-edge a=" + std::to_string(a));
                spec.variant = FixedSetSpec::Variant::BallAroundVertex;
                spec.center_type = 0;
                compare(spec, tree, "ball-vertex a=" + std::to_string(a) + " t=0");
                if (f % 2 == 0) {
                    spec.center_type = 1;
                    compare(spec, tree, "ball-vertex a=" + std::to_string(a) + " t=1");
                    spec.center_type = 0;
                }
            }
        }
    return rows;
}

/**
 * LatticeGrid: instance ranges for the lattice-oracle count check.
 */
struct LatticeGrid {
    std::vector<long long> ps{3, 5};
    std::vector<int> fs{1, 2};
    std::vector<int> as{0, 1, 2};
    int max_radius = 6;
    int precision = 40;
};

// a radius that certifies at least one shell while keeping the
// enumeration within budget
inline int lattice_radius(long long p, int f, int expected_kmax, const LatticeGrid& grid) {
    int radius = std::min(grid.max_radius, expected_kmax + 2);
    radius = std::max(radius, expected_kmax + 1);
    double budget = 400000.0;
    auto vertices = [&](int R) {
        double qf = std::pow(static_cast<double>(p), f);
        double total = 1, shell = qf + 1;
        for (int k = 1; k <= R; ++k) {
            total += shell;
            shell *= qf;
        }
        return total;
    };
    while (radius > expected_kmax + 1 && vertices(radius) > budget) --radius;
    return radius;
}

inline std::vector<OracleInstance> lattice_instances(const LatticeGrid& grid) {
    std::vector<OracleInstance> out;
    for (long long p : grid.ps)
        for (int f : grid.fs) {
            if (f == 1) {
                for (int a : grid.as) {
                    out.push_back(make_gamma_instance(p, false, false, a, grid.precision));
                    out.push_back(make_gamma_instance(p, true, false, a, grid.precision));
                }
                out.push_back(make_gamma_instance(p, true, true, 0, grid.precision));
            } else if (f == 2) {
                for (int a : grid.as) {
                    out.push_back(make_delta_instance(p, DeltaBranch::SplitEvenDiff0, a, grid.precision));
                    out.push_back(make_delta_instance(p, DeltaBranch::SplitEvenDiff2, a, grid.precision));
                    out.push_back(make_delta_instance(p, DeltaBranch::RamEven, a, grid.precision));
                }
                out.push_back(make_delta_instance(p, DeltaBranch::SplitOdd, 0, grid.precision));
                out.push_back(make_delta_instance(p, DeltaBranch::RamOdd, 0, grid.precision));
            }
        }
    return out;
}

inline int expected_fixed_depth(const OracleInstance& inst) {
    bool s_odd = ((inst.params.s % 2) + 2) % 2 == 1;
    if (s_odd) return 1;
    if (inst.params.ramified) return inst.params.a + 1;
    // a type-one fixed vertex sits at odd distance from the standard
    // vertex; the instances place it at distance one
    bool type_one_center = inst.params.eigen_diff_mod4 && *inst.params.eigen_diff_mod4 == 2;
    return inst.params.a + (type_one_center ? 1 : 0);
}

inline std::vector<ComparisonRow> run_verify_counts_lattice(const LatticeGrid& grid) {
    std::vector<ComparisonRow> rows;
    for (const OracleInstance& inst : lattice_instances(grid)) {
        int radius = lattice_radius(inst.params.q.convert_to<long long>(), inst.params.f,
                                    expected_fixed_depth(inst), grid);
        EmpiricalResult res = empirical_counts(inst.g, inst.twisted, *inst.sigma, radius);
        std::string label = inst.desc + " R=" + std::to_string(radius) + " | " + inst.params.str();
        if (!res.fixed_set_found) {
            rows.push_back({label, "fixed set", "located", "not found within radius", false, false});
            continue;
        }
        for (long long m = -res.certified_max_r - 1; m <= res.certified_max_r + 1; ++m)
            for (int b = 0; b <= 1; ++b) {
                WeylElt w{m, b, res.s};
                if (!res.certified(w)) continue;
                Int got = res.counts0.count(w) ? res.counts0.at(w) : Int(0);
                Int want = inst.twisted ? count_delta_sigma(w, inst.params) : count_gamma(w, inst.params);
                rows.push_back(
                    {label, w.str(), want.str() + " (formula)", got.str() + " (lattice)", true, got == want});
                // size-shift identity between the size-zero and size-one censuses
                WeylElt wb = bar(w);
                Int c1 = res.counts1.count(wb) ? res.counts1.at(wb) : Int(0);
                rows.push_back({label, w.str() + " size-shift", got.str() + " (size 0)",
                                c1.str() + " (size 1 at bar)", true, got == c1});
            }
    }
    return rows;
}

}  // namespace hecke
