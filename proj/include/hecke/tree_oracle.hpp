#pragma once

#include <functional>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "counts.hpp"
#include "scalar.hpp"

namespace hecke {

/**
 * TruncTree: a truncated (q^f + 1)-regular tree. Vertices are
 * root-anchored paths of child indices; vertex types alternate with
 * depth. Depending on the fixed-set variant the root object is a
 * vertex (paths start there, first step has q^f + 1 choices) or an
 * edge (two sides, each endpoint continuing with q^f further choices).
 */
struct TruncTree {
    Int q = 2;
    int f = 1;
    int radius = 4;  // maximum path length per side

    Int arity() const { return pow_int(q, f) + 1; }
    long long branching() const {  // q^f, as a loop bound (small by construction)
        Int b = pow_int(q, f);
        if (b > 100000) throw std::invalid_argument("TruncTree: branching too large to enumerate");
        return b.convert_to<long long>();
    }
};

/**
 * FixedSetSpec: the fixed-point geometry of the automorphism, taken as
 * input. FlipEdge: a single edge flipped end to end. BallAroundEdge:
 * a stabilized edge plus fixed edges branching with arity q (not
 * q^f) out to edge-distance a. BallAroundVertex: a fixed vertex of
 * the given type with q + 1 fixed edges attached, branching with
 * arity q out to depth a.
 */
struct FixedSetSpec {
    enum class Variant { FlipEdge, BallAroundEdge, BallAroundVertex };
    Variant variant = Variant::FlipEdge;
    int a = 0;
    int center_type = 0;
    Int q = 2;
    int f = 1;

    bool edge_rooted() const { return variant != Variant::BallAroundVertex; }
    void validate(const TruncTree& tree) const {
        if (q != tree.q || f != tree.f) throw std::invalid_argument("FixedSetSpec: tree mismatch");
        if (a < 0) throw std::invalid_argument("FixedSetSpec: a must be >= 0");
        if (center_type != 0 && center_type != 1) throw std::invalid_argument("FixedSetSpec: bad center type");
        if (variant == Variant::FlipEdge) {
            if (tree.radius < 1) throw std::invalid_argument("FixedSetSpec: radius too small");
        } else if (a + 1 > tree.radius) {
            throw std::invalid_argument("FixedSetSpec: radius too small for fixed set");
        }
    }
};

/**
 * TreeEdge: an edge named by its path from the root object. For an
 * edge-rooted tree, `root_edge` marks the base edge itself and `side`
 * tells which endpoint (0 or 1, of that type) the path hangs from.
 */
struct TreeEdge {
    bool root_edge = false;
    int side = 0;
    std::vector<int> path;

    int far_depth() const { return static_cast<int>(path.size()); }
};

namespace detail {

// length of the all-fixed-direction prefix usable as a nearest fixed
// point, capped at a and at k-1
inline int fixed_prefix(const TreeEdge& e, const FixedSetSpec& spec, long long q_ll) {
    int k = e.far_depth();
    int cap = std::min(k - 1, spec.a);
    int j = 0;
    for (int d = 0; d < cap; ++d) {
        long long lim = (spec.variant == FixedSetSpec::Variant::BallAroundVertex && d == 0) ? q_ll + 1 : q_ll;
        if (e.path[static_cast<size_t>(d)] >= lim) break;
        j = d + 1;
    }
    return j;
}

inline bool edge_fixed(const TreeEdge& e, const FixedSetSpec& spec, long long q_ll) {
    switch (spec.variant) {
        case FixedSetSpec::Variant::FlipEdge:
            return e.root_edge;
        case FixedSetSpec::Variant::BallAroundEdge: {
            if (e.root_edge) return true;
            int k = e.far_depth();
            if (k > spec.a) return false;
            for (int d = 0; d < k; ++d)
                if (e.path[static_cast<size_t>(d)] >= q_ll) return false;
            return true;
        }
        case FixedSetSpec::Variant::BallAroundVertex: {
            int k = e.far_depth();
            if (k > spec.a) return false;
            for (int d = 0; d < k; ++d) {
                long long lim = (d == 0) ? q_ll + 1 : q_ll;
                if (e.path[static_cast<size_t>(d)] >= lim) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace detail

inline long long certified_max_r(const FixedSetSpec& spec, const TruncTree& tree) {
    return spec.variant == FixedSetSpec::Variant::FlipEdge ? tree.radius : tree.radius - spec.a;
}

inline std::vector<TreeEdge> fixed_edge_set(const FixedSetSpec& spec, const TruncTree& tree) {
    spec.validate(tree);
    long long q_ll = Int(spec.q).convert_to<long long>();
    std::vector<TreeEdge> out;
    switch (spec.variant) {
        case FixedSetSpec::Variant::FlipEdge:
            out.push_back({true, 0, {}});
            break;
        case FixedSetSpec::Variant::BallAroundEdge: {
            out.push_back({true, 0, {}});
            for (int side = 0; side < 2; ++side) {
                std::vector<int> path;
                std::function<void()> rec = [&]() {
                    if (static_cast<int>(path.size()) >= spec.a) return;
                    for (int c = 0; c < q_ll; ++c) {
                        path.push_back(c);
                        out.push_back({false, side, path});
                        rec();
                        path.pop_back();
                    }
                };
                rec();
            }
            break;
        }
        case FixedSetSpec::Variant::BallAroundVertex: {
            std::vector<int> path;
            std::function<void()> rec = [&]() {
                if (static_cast<int>(path.size()) >= spec.a) return;
                long long lim = path.empty() ? q_ll + 1 : q_ll;
                for (int c = 0; c < lim; ++c) {
                    path.push_back(c);
                    out.push_back({false, 0, path});
                    rec();
                    path.pop_back();
                }
            };
            rec();
            break;
        }
    }
    return out;
}

/**
 * Relative position (m, b) of an edge against its image under the
 * automorphism, read off from the fixed-set geometry: gallery length
 * 2r for the flipped edge and 2r - 1 otherwise, where r is the
 * distance to the fixed set; the sign of m comes from the type of the
 * far vertex.
 */
inline std::pair<long long, int> derive_relposition(const TreeEdge& e, const FixedSetSpec& spec,
                                                    const TruncTree& tree, bool require_certified = true) {
    spec.validate(tree);
    long long q_ll = Int(spec.q).convert_to<long long>();
    if (detail::edge_fixed(e, spec, q_ll)) return {0, 0};
    int k = e.far_depth();
    long long r;
    int far_type;
    int b;
    if (spec.variant == FixedSetSpec::Variant::FlipEdge) {
        r = k;
        b = 0;
        far_type = (e.side + k) % 2;
    } else {
        int j = detail::fixed_prefix(e, spec, q_ll);
        r = k - j;
        b = 1;
        int base_type = spec.edge_rooted() ? e.side : spec.center_type;
        far_type = (base_type + k) % 2;
    }
    if (require_certified && r > certified_max_r(spec, tree))
        throw std::domain_error("derive_relposition: edge outside the certified radius");
    long long m;
    if (b == 0)
        m = (far_type == 0) ? -r : r;
    else
        m = (far_type == 0) ? -r : r - 1;
    return {m, b};
}

/**
 * TallyResult: exhaustive census of relative positions over all
 * certified edges of the truncation. For r <= certified_max_r every
 * edge of the full tree at that distance lies inside the truncation,
 * so those counts are complete.
 */
struct TallyResult {
    std::map<std::pair<long long, int>, Int> counts;
    long long certified_max_r = 0;
    Int certified_edges = 0;
    Int uncertified_edges = 0;
};

inline TallyResult tally(const FixedSetSpec& spec, const TruncTree& tree) {
    spec.validate(tree);
    long long branch = tree.branching();
    TallyResult res;
    res.certified_max_r = certified_max_r(spec, tree);

    auto record = [&](const TreeEdge& e) {
        auto [m, b] = derive_relposition(e, spec, tree, false);
        long long r = (b == 1) ? (length(WeylElt{m, b, 0}) + 1) / 2 : length(WeylElt{m, b, 0}) / 2;
        if (r <= res.certified_max_r) {
            res.counts[{m, b}] += 1;
            res.certified_edges += 1;
        } else {
            res.uncertified_edges += 1;
        }
    };

    TreeEdge e;
    if (spec.edge_rooted()) {
        e.root_edge = true;
        record(e);
        e.root_edge = false;
        for (int side = 0; side < 2; ++side) {
            e.side = side;
            std::function<void()> rec = [&]() {
                if (static_cast<int>(e.path.size()) >= tree.radius) return;
                for (int c = 0; c < branch; ++c) {
                    e.path.push_back(c);
                    record(e);
                    rec();
                    e.path.pop_back();
                }
            };
            rec();
        }
    } else {
        std::function<void()> rec = [&]() {
            if (static_cast<int>(e.path.size()) >= tree.radius) return;
            long long lim = e.path.empty() ? branch + 1 : branch;
            for (int c = 0; c < lim; ++c) {
                e.path.push_back(c);
                record(e);
                rec();
                e.path.pop_back();
            }
        };
        rec();
    }
    return res;
}

// The counting-formula case matching a fixed-set geometry, for
// oracle-vs-formula comparisons. s is chosen with the parity the case
// demands (odd for FlipEdge, even otherwise).
inline CaseParams tree_case_params(const FixedSetSpec& spec) {
    CaseParams p;
    p.q = spec.q;
    p.f = spec.f;
    p.a = spec.a;
    switch (spec.variant) {
        case FixedSetSpec::Variant::FlipEdge:
            // realized both by a ramified torus with odd valuation and by
            // one split in E with odd valuation; the counts agree
            p.ramified = true;
            p.s = 1;
            break;
        case FixedSetSpec::Variant::BallAroundEdge:
            p.ramified = true;
            p.s = 0;
            break;
        case FixedSetSpec::Variant::BallAroundVertex:
            p.ramified = false;
            p.s = 0;
            if (spec.f % 2 == 0) {
                p.split_in_E = true;
                p.eigen_diff_mod4 = (spec.center_type == 0) ? 0 : 2;
            } else if (spec.center_type == 1) {
                throw std::invalid_argument("tree_case_params: type-one center needs the torus split in E");
            }
            break;
    }
    p.validate();
    return p;
}

}  // namespace hecke
