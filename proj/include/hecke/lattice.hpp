#pragma once

#include <deque>
#include <map>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mat2.hpp"
#include "padic.hpp"
#include "weyl.hpp"

namespace hecke {

namespace detail {

// certified valuation data: lb is a lower bound, exact says the
// valuation equals lb (lb = infinity for a certified zero)
struct ValInfo {
    long long lb;
    bool exact;
};

inline ValInfo val_info(const UnramifiedElt& x) {
    long long unit_min = kValInfinity, bound_min = kValInfinity;
    for (int i = 0; i < x.degree(); ++i) {
        const PadicElt& c = x.coord(i);
        if (c.is_exact_zero()) continue;
        if (c.is_zero_at_precision())
            bound_min = std::min(bound_min, c.approx_bound());
        else
            unit_min = std::min(unit_min, c.valuation());
    }
    if (unit_min <= bound_min) return {unit_min, true};
    return {bound_min, false};
}

}  // namespace detail

/**
 * Lattice: a rank-2 lattice over the ring of integers of E in its
 * unique triangular normal form, with columns (p^{v1}, 0) and
 * (b, p^{v2}) and b reduced modulo p^{v1}.
 */
struct Lattice {
    long long v1 = 0;
    long long v2 = 0;
    UnramifiedElt b;

    long long val_det() const { return v1 + v2; }
    Lattice shifted(long long k) const { return {v1 + k, v2 + k, b.shift(k)}; }
};

inline Lattice standard_lattice(long long p, int N, const std::vector<long long>& h) {
    return {0, 0, UnramifiedElt(p, N, h)};
}

inline Mat2 basis_matrix(const Lattice& L) {
    const UnramifiedElt& model = L.b;
    UnramifiedElt one = UnramifiedElt::from_int(1, model.p(), model.N(), model.modulus());
    return {one.shift(L.v1), L.b, UnramifiedElt(model.p(), model.N(), model.modulus()), one.shift(L.v2)};
}

// column Hermite reduction over the valuation ring; the result is the
// unique normal form of the lattice spanned by the columns
inline Lattice lattice_from_basis(const Mat2& M) {
    UnramifiedElt a = M.a, b = M.b, c = M.c, d = M.d;
    detail::ValInfo vc = detail::val_info(c), vd = detail::val_info(d);
    // the pivot needs an exact valuation certainly no larger than the
    // other entry's lower bound; the other entry may be a true zero
    // known only to finite precision
    bool d_pivot = vd.exact && vd.lb != kValInfinity && (vc.exact ? vd.lb <= vc.lb : vd.lb < vc.lb);
    bool c_pivot = !d_pivot && vc.exact && vc.lb != kValInfinity && vc.lb < vd.lb;
    if (c_pivot) {
        std::swap(a, b);
        std::swap(c, d);
        std::swap(vc, vd);
        d_pivot = true;
    }
    if (!d_pivot) {
        if (vc.exact && vd.exact && vc.lb == kValInfinity && vd.lb == kValInfinity)
            throw std::domain_error("lattice_from_basis: singular basis");
        throw PrecisionError("lattice_from_basis: bottom row valuations uncertain");
    }
    if (!(vc.exact && vc.lb == kValInfinity)) {
        // col1 -= (c/d) col2; the multiplier is integral, the bottom
        // entry vanishes exactly for the chosen lift
        UnramifiedElt m = c * d.inverse();
        a = a - m * b;
    }
    long long v2 = vd.lb;
    UnramifiedElt u2 = d.shift(-v2);
    b = b * u2.inverse();
    detail::ValInfo va = detail::val_info(a);
    if (!va.exact) throw PrecisionError("lattice_from_basis: diagonal valuation uncertain");
    if (va.lb == kValInfinity) throw std::domain_error("lattice_from_basis: singular basis");
    long long v1 = va.lb;
    return {v1, v2, b.reduce_mod(v1)};
}

// canonical representative of the homothety class: smallest diagonal
// valuation shifted to zero
inline Lattice canonical_vertex(const Lattice& L) {
    long long k = -std::min(L.v1, L.v2);
    Lattice r = L.shifted(k);
    r.b = r.b.reduce_mod(r.v1);
    return r;
}

inline int vertex_type(const Lattice& cls) {
    Lattice c = canonical_vertex(cls);
    return static_cast<int>(((c.v1 + c.v2) % 2 + 2) % 2);
}

inline std::string lattice_key(const Lattice& L) {
    std::string s = std::to_string(L.v1) + "|" + std::to_string(L.v2);
    for (int i = 0; i < L.b.degree(); ++i) {
        const PadicElt& c = L.b.coord(i);
        s += "|";
        if (c.is_exact_zero()) {
            s += "Z";
            continue;
        }
        long long v = c.valuation();
        s += std::to_string(v) + ":";
        for (long long e = v; e < L.v1; ++e) s += std::to_string(c.digit(e)) + ",";
    }
    return s;
}

// X contains Y iff X^{-1} Y is integral; bases are triangular so only
// three entries matter
inline bool lattice_contains(const Lattice& X, const Lattice& Y) {
    if (Y.v1 < X.v1 || Y.v2 < X.v2) return false;
    UnramifiedElt t = Y.b.shift(-X.v1) - X.b.shift(Y.v2 - X.v1 - X.v2);
    return detail::val_info(t).lb >= 0;
}

// elementary-divisor distance between homothety classes
inline long long vertex_distance(const Lattice& A, const Lattice& B) {
    Lattice X = canonical_vertex(A), Y = canonical_vertex(B);
    long long e1 = Y.v1 - X.v1;
    long long e2 = Y.v2 - X.v2;
    UnramifiedElt t = Y.b.shift(-X.v1) - X.b.shift(Y.v2 - X.v1 - X.v2);
    detail::ValInfo vt = detail::val_info(t);
    long long diag_min = std::min(e1, e2);
    long long vmin;
    if (vt.exact && vt.lb < diag_min)
        vmin = vt.lb;
    else if (vt.lb >= diag_min)
        vmin = diag_min;
    else
        throw PrecisionError("vertex_distance: off-diagonal valuation uncertain");
    return (e1 + e2) - 2 * vmin;
}

/**
 * ExtEdge: an ordered pair (A, B) of lattices with B containing A at
 * index q^f and pB inside A. Its size is the determinant valuation of
 * A (relative to the standard lattice).
 */
struct ExtEdge {
    Lattice A, B;

    long long size() const { return A.val_det(); }
};

inline ExtEdge make_ext_edge(const Lattice& A, const Lattice& B) {
    if (B.val_det() != A.val_det() - 1) throw std::invalid_argument("make_ext_edge: index must be q^f");
    if (!lattice_contains(B, A)) throw std::invalid_argument("make_ext_edge: B must contain A");
    if (!lattice_contains(A, B.shifted(1))) throw std::invalid_argument("make_ext_edge: pB must lie in A");
    return {A, B};
}

inline ExtEdge base_ext_edge(long long p, int N, const std::vector<long long>& h) {
    Lattice l0 = standard_lattice(p, N, h);
    Lattice l1 = l0;
    l1.v1 = -1;  // p^{-1}O + O
    return make_ext_edge(l0, l1);
}

// image of an extended edge under g, with an entrywise Frobenius
// applied first in the twisted case
inline ExtEdge act(const Mat2& g, bool twisted, const Frobenius& sigma, const ExtEdge& e) {
    auto move = [&](const Lattice& L) {
        Mat2 m = basis_matrix(L);
        if (twisted) m = m.apply(sigma);
        return lattice_from_basis(g * m);
    };
    return make_ext_edge(move(e.A), move(e.B));
}

// minimal gallery length between the underlying building edges
inline long long gallery_length(const Lattice& X1, const Lattice& Y1, const Lattice& X2, const Lattice& Y2) {
    std::string k1a = lattice_key(canonical_vertex(X1)), k1b = lattice_key(canonical_vertex(Y1));
    std::string k2a = lattice_key(canonical_vertex(X2)), k2b = lattice_key(canonical_vertex(Y2));
    if ((k1a == k2a && k1b == k2b) || (k1a == k2b && k1b == k2a)) return 0;
    long long d = kValInfinity;
    for (const Lattice* u : {&X1, &Y1})
        for (const Lattice* v : {&X2, &Y2}) d = std::min(d, vertex_distance(*u, *v));
    return 1 + d;
}

/**
 * Relative position of two extended edges: the size component is the
 * difference of sizes, the affine part is read from the gallery length
 * and the type of the far vertex. Carrying the base edge to e1 by an
 * element of odd determinant valuation swaps vertex types and
 * conjugates the affine part by the length-zero generator, so the
 * far-vertex type is offset by the size parity of e1.
 */
inline WeylElt inv(const ExtEdge& e1, const ExtEdge& e2) {
    long long s = e2.size() - e1.size();
    std::string k1a = lattice_key(canonical_vertex(e1.A)), k1b = lattice_key(canonical_vertex(e1.B));
    std::string k2a = lattice_key(canonical_vertex(e2.A)), k2b = lattice_key(canonical_vertex(e2.B));
    if ((k1a == k2a && k1b == k2b) || (k1a == k2b && k1b == k2a)) return {0, 0, s};
    long long dA = std::min(vertex_distance(e1.A, e2.A), vertex_distance(e1.A, e2.B));
    long long dB = std::min(vertex_distance(e1.B, e2.A), vertex_distance(e1.B, e2.B));
    if (dA == dB) throw std::logic_error("inv: no unique farthest vertex");
    const Lattice& far = (dA > dB) ? e1.A : e1.B;
    long long ell = 1 + std::min(dA, dB);
    int ftype = static_cast<int>((vertex_type(far) + e1.size()) % 2);
    if (ftype < 0) ftype += 2;
    int b = static_cast<int>(ell % 2);
    long long m;
    if (b == 0)
        m = (ftype == 0) ? -(ell / 2) : ell / 2;
    else
        m = (ftype == 0) ? -((ell + 1) / 2) : (ell + 1) / 2 - 1;
    return {m, b, s};
}

/**
 * BuildingBFS: homothety classes within a given distance of the
 * standard vertex, as canonical representatives, with tree structure.
 */
struct BuildingBFS {
    std::vector<Lattice> verts;
    std::vector<int> depth;
    std::vector<int> parent;  // -1 at the root
    std::unordered_map<std::string, int> index;
};

inline std::vector<Lattice> vertex_neighbors(const Lattice& cls) {
    Lattice L = canonical_vertex(cls);
    long long p = L.b.p();
    int N = L.b.N();
    const auto& h = L.b.modulus();
    int f = L.b.degree();
    std::vector<Lattice> out;
    // lines through c1 + t c2: span{c1 + t c2, p c2}
    std::vector<long long> digits(static_cast<size_t>(f), 0);
    while (true) {
        UnramifiedElt t(p, N, h);
        for (int i = 0; i < f; ++i) t.coord(i) = PadicElt::from_int(digits[static_cast<size_t>(i)], p, N);
        UnramifiedElt one = UnramifiedElt::from_int(1, p, N, h);
        Mat2 m{one.shift(L.v1) + t * L.b, L.b.shift(1), t * one.shift(L.v2), one.shift(L.v2 + 1)};
        out.push_back(canonical_vertex(lattice_from_basis(m)));
        int i = 0;
        for (; i < f; ++i) {
            if (++digits[static_cast<size_t>(i)] < p) break;
            digits[static_cast<size_t>(i)] = 0;
        }
        if (i == f) break;
    }
    // the remaining line: span{c2, p c1}
    UnramifiedElt one = UnramifiedElt::from_int(1, p, N, h);
    Mat2 m{L.b, one.shift(L.v1 + 1), one.shift(L.v2), UnramifiedElt(p, N, h)};
    out.push_back(canonical_vertex(lattice_from_basis(m)));
    return out;
}

inline BuildingBFS enumerate_vertices(long long p, int N, const std::vector<long long>& h, int radius) {
    BuildingBFS bfs;
    Lattice root = standard_lattice(p, N, h);
    bfs.verts.push_back(root);
    bfs.depth.push_back(0);
    bfs.parent.push_back(-1);
    bfs.index[lattice_key(root)] = 0;
    std::deque<int> queue{0};
    while (!queue.empty()) {
        int at = queue.front();
        queue.pop_front();
        if (bfs.depth[static_cast<size_t>(at)] >= radius) continue;
        for (const Lattice& nb : vertex_neighbors(bfs.verts[static_cast<size_t>(at)])) {
            std::string key = lattice_key(nb);
            if (bfs.index.count(key)) continue;
            int id = static_cast<int>(bfs.verts.size());
            bfs.index[key] = id;
            bfs.verts.push_back(nb);
            bfs.depth.push_back(bfs.depth[static_cast<size_t>(at)] + 1);
            bfs.parent.push_back(at);
            queue.push_back(id);
        }
    }
    return bfs;
}

/**
 * EmpiricalResult: brute-force census of relative positions
 * inv(e, alpha e) over all size-zero (and size-one) extended edges
 * within the enumerated ball. Counts are complete for positions whose
 * distance to the fixed set is at most certified_max_r.
 */
struct EmpiricalResult {
    std::map<WeylElt, Int> counts0, counts1;
    long long s = 0;
    long long k_max = 0;
    bool fixed_set_found = false;
    long long certified_max_r = 0;
    long long edges_enumerated = 0;
    std::vector<int> fixed_edge_depths;  // deeper endpoint of each fixed edge

    bool certified(const WeylElt& w) const {
        long long l = length(w);
        if (l == 0) return fixed_set_found && certified_max_r >= 1;
        long long r = (l % 2 == 1) ? (l + 1) / 2 : l / 2;
        return fixed_set_found && r <= certified_max_r;
    }
};

inline EmpiricalResult empirical_counts(const Mat2& g, bool twisted, const Frobenius& sigma, int radius) {
    if (radius < 1 || radius > 8) throw std::invalid_argument("empirical_counts: radius must be in [1, 8]");
    long long p = g.a.p();
    int N = g.a.N();
    const auto& h = g.a.modulus();
    BuildingBFS bfs = enumerate_vertices(p, N, h, radius);

    EmpiricalResult res;
    res.s = g.val_det();
    long long fixed_vertex_depth = kValInfinity;

    // The image of every extended edge over a building edge is read off
    // from the image classes of its two endpoints: the normal form is
    // equivariant under scaling, so one lattice move per vertex suffices.
    size_t n = bfs.verts.size();
    std::vector<Lattice> img(n);
    std::vector<std::string> key(n), img_key(n);
    std::vector<int> type(n);
    for (size_t v = 0; v < n; ++v) {
        Mat2 m = basis_matrix(bfs.verts[v]);
        if (twisted) m = m.apply(sigma);
        img[v] = canonical_vertex(lattice_from_basis(g * m));
        key[v] = lattice_key(bfs.verts[v]);
        img_key[v] = lattice_key(img[v]);
        type[v] = vertex_type(bfs.verts[v]);
    }

    auto affine_part = [](long long ell, int ftype) {
        long long m;
        if (ell % 2 == 0)
            m = (ftype == 0) ? -(ell / 2) : ell / 2;
        else
            m = (ftype == 0) ? -((ell + 1) / 2) : (ell + 1) / 2 - 1;
        return m;
    };

    for (int v = 1; v < static_cast<int>(bfs.verts.size()); ++v) {
        int u = bfs.parent[static_cast<size_t>(v)];
        size_t su = static_cast<size_t>(u), sv = static_cast<size_t>(v);
        long long du = bfs.depth[su], dv = bfs.depth[sv];
        WeylElt w0, w1;
        bool same = (key[su] == img_key[su] && key[sv] == img_key[sv]) ||
                    (key[su] == img_key[sv] && key[sv] == img_key[su]);
        if (same) {
            w0 = {0, 0, res.s};
            w1 = w0;
        } else {
            long long duu = std::min(vertex_distance(bfs.verts[su], img[su]), vertex_distance(bfs.verts[su], img[sv]));
            long long dvv = std::min(vertex_distance(bfs.verts[sv], img[su]), vertex_distance(bfs.verts[sv], img[sv]));
            if (duu == dvv) throw std::logic_error("empirical_counts: no unique farthest vertex");
            long long ell = 1 + std::min(duu, dvv);
            int far_type = (duu > dvv) ? type[su] : type[sv];
            w0 = {affine_part(ell, far_type), static_cast<int>(ell % 2), res.s};
            w1 = {affine_part(ell, 1 - far_type), static_cast<int>(ell % 2), res.s};
        }
        res.counts0[w0] += 1;
        res.counts1[w1] += 1;
        res.edges_enumerated += 1;
        if (length(w0) == 0) {
            res.fixed_edge_depths.push_back(static_cast<int>(std::max(du, dv)));
            res.k_max = std::max(res.k_max, std::max(du, dv));
        } else if (length(w0) == 1 && std::min(du, dv) < fixed_vertex_depth) {
            // the endpoint shared with the image is a fixed vertex
            if (key[su] == img_key[su] || key[su] == img_key[sv])
                fixed_vertex_depth = std::min(fixed_vertex_depth, du);
            else if (key[sv] == img_key[su] || key[sv] == img_key[sv])
                fixed_vertex_depth = std::min(fixed_vertex_depth, dv);
        }
        // shallow edges re-checked through the full extended-edge route
        if (std::min(du, dv) <= 1) {
            const Lattice& X = (type[su] == 0) ? bfs.verts[su] : bfs.verts[sv];
            const Lattice& Y = (type[su] == 0) ? bfs.verts[sv] : bfs.verts[su];
            ExtEdge e0 = make_ext_edge(X.shifted(-(X.val_det()) / 2), Y.shifted((-1 - Y.val_det()) / 2));
            if (inv(e0, act(g, twisted, sigma, e0)) != w0)
                throw std::logic_error("empirical_counts: class-level census disagrees with the edge route");
            ExtEdge e1 = make_ext_edge(Y.shifted((1 - Y.val_det()) / 2), X.shifted(-(X.val_det()) / 2));
            if (inv(e1, act(g, twisted, sigma, e1)) != w1)
                throw std::logic_error("empirical_counts: class-level census disagrees with the edge route");
        }
    }

    if (!res.fixed_edge_depths.empty()) {
        res.fixed_set_found = res.k_max < radius;  // boundary contact leaves the set possibly truncated
    } else if (fixed_vertex_depth < kValInfinity) {
        // no fixed edge: the fixed set is a single vertex, shared by
        // every edge of its star with that edge's image
        res.k_max = fixed_vertex_depth;
        res.fixed_set_found = res.k_max < radius;
    } else {
        res.fixed_set_found = false;
    }
    res.certified_max_r = res.fixed_set_found ? radius - res.k_max : 0;
    return res;
}

}  // namespace hecke
