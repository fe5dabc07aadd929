#pragma once

/// Exhaustive search for the worst case of the random descent expectation
/// over every admissible digraph with a given facet count.
///
/// The pipeline has three stages.
///
///   1. Generate all combinatorial types of planar triangulations on
///      `n` vertices, as rotation systems grown from the tetrahedron by
///      vertex splits.  Isomorph rejection uses a canonical breadth-first
///      code minimised over all starting directed edges and both
///      chiralities, so each type appears exactly once.
///   2. Dualise each triangulation into a 3-regular planar 3-connected
///      graph on `2n - 4` vertices together with its face cycles.
///   3. For each such graph, enumerate edge orientations by depth-first
///      search in a face-grouped edge order, pruning partial assignments
///      that already violate the admissibility conditions: at most one
///      global sink and source, vertex out-degree profile within the
///      forced counts, and exactly one local sink and one local source
///      per completed face.  Surviving orientations are checked acyclic,
///      relabelled canonically (peeling the sink upward, smallest
///      original id first), filtered through the full realizability
///      validator, and scored by the exact expectation walk from every
///      start vertex.
///
/// The search is split into independent work units (one per graph and
/// 4-edge direction prefix), which makes the fold deterministic under any
/// worker count and gives natural checkpoint granularity.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "redge/digraph.hpp"
#include "redge/engine.hpp"
#include "redge/mk.hpp"
#include "redge/rational.hpp"

namespace redge {

/// A planar triangulation stored as a rotation system: `rotation[v]` lists
/// the neighbours of `v` in cyclic order around it.
struct PlanarTriangulation {
    std::vector<std::vector<int>> rotation;

    int vertex_count() const { return static_cast<int>(rotation.size()); }
};

namespace detail {

/// Face cycles of a rotation system.  The face to the left of the directed
/// edge (a, b) continues with (b, c) where c follows a in the rotation of b.
inline std::vector<std::vector<int>> faces_of_rotation(
    const std::vector<std::vector<int>>& rot) {
    const int n = static_cast<int>(rot.size());
    std::vector<std::vector<int>> faces;
    std::set<std::pair<int, int>> seen;
    for (int a = 0; a < n; ++a) {
        for (int b : rot[a]) {
            if (seen.count({a, b})) continue;
            std::vector<int> face;
            int x = a;
            int y = b;
            while (!seen.count({x, y})) {
                seen.insert({x, y});
                face.push_back(x);
                const auto& r = rot[y];
                const auto it = std::find(r.begin(), r.end(), x);
                const auto i = static_cast<std::size_t>(it - r.begin());
                const int z = r[(i + 1) % r.size()];
                x = y;
                y = z;
            }
            faces.push_back(std::move(face));
        }
    }
    return faces;
}

/// True iff the rotation system is a simple triangulation of the sphere.
inline bool is_triangulation(const std::vector<std::vector<int>>& rot) {
    const int n = static_cast<int>(rot.size());
    if (n < 4) return false;
    long long edge_ends = 0;
    for (int v = 0; v < n; ++v) {
        if (rot[v].size() < 3) return false;
        std::set<int> distinct(rot[v].begin(), rot[v].end());
        if (static_cast<int>(distinct.size()) != static_cast<int>(rot[v].size()))
            return false;
        if (distinct.count(v)) return false;
        edge_ends += static_cast<long long>(rot[v].size());
    }
    if (edge_ends % 2 != 0) return false;
    const long long e = edge_ends / 2;
    if (e != 3LL * n - 6) return false;
    const auto faces = faces_of_rotation(rot);
    if (static_cast<long long>(faces.size()) != 2LL * n - 4) return false;
    for (const auto& f : faces)
        if (f.size() != 3) return false;
    return true;
}

/// Breadth-first code of the rotation system from one directed start edge.
/// Vertices are numbered in discovery order; each vertex contributes its
/// degree followed by its rotation read from the discovery edge.
inline std::vector<int> rotation_code(const std::vector<std::vector<int>>& rot,
                                      bool mirror) {
    const int n = static_cast<int>(rot.size());
    std::vector<std::vector<int>> r(rot.size());
    for (int v = 0; v < n; ++v) {
        r[static_cast<std::size_t>(v)] = rot[static_cast<std::size_t>(v)];
        if (mirror)
            std::reverse(r[static_cast<std::size_t>(v)].begin(),
                         r[static_cast<std::size_t>(v)].end());
    }
    std::vector<int> best;
    std::vector<int> ids(rot.size());
    std::vector<int> entry(rot.size());
    for (int u = 0; u < n; ++u) {
        for (int v : r[static_cast<std::size_t>(u)]) {
            std::fill(ids.begin(), ids.end(), -1);
            ids[static_cast<std::size_t>(u)] = 0;
            ids[static_cast<std::size_t>(v)] = 1;
            entry[static_cast<std::size_t>(u)] = v;
            entry[static_cast<std::size_t>(v)] = u;
            std::vector<int> order = {u, v};
            for (std::size_t qi = 0; qi < order.size(); ++qi) {
                const int x = order[qi];
                const auto& rx = r[static_cast<std::size_t>(x)];
                const auto it = std::find(rx.begin(), rx.end(),
                                          entry[static_cast<std::size_t>(x)]);
                const auto i0 = static_cast<std::size_t>(it - rx.begin());
                for (std::size_t t = 0; t < rx.size(); ++t) {
                    const int w = rx[(i0 + t) % rx.size()];
                    if (ids[static_cast<std::size_t>(w)] < 0) {
                        ids[static_cast<std::size_t>(w)] =
                            static_cast<int>(order.size());
                        entry[static_cast<std::size_t>(w)] = x;
                        order.push_back(w);
                    }
                }
            }
            std::vector<int> code;
            code.reserve(rot.size() * 8);
            for (int x : order) {
                const auto& rx = r[static_cast<std::size_t>(x)];
                const auto it = std::find(rx.begin(), rx.end(),
                                          entry[static_cast<std::size_t>(x)]);
                const auto i0 = static_cast<std::size_t>(it - rx.begin());
                code.push_back(static_cast<int>(rx.size()));
                for (std::size_t t = 0; t < rx.size(); ++t)
                    code.push_back(ids[static_cast<std::size_t>(
                        rx[(i0 + t) % rx.size()])]);
            }
            if (best.empty() || code < best) best = std::move(code);
        }
    }
    return best;
}

inline std::vector<int> canonical_rotation_code(
    const std::vector<std::vector<int>>& rot) {
    return std::min(rotation_code(rot, false), rotation_code(rot, true));
}

/// All valid ways to split vertex `v` between rotation positions `i < j`.
/// The two shared endpoints each become adjacent to both halves; the two
/// possible insertion orders at each endpoint are tried and only closures
/// that remain simple triangulations are kept.
inline std::vector<PlanarTriangulation> vertex_splits(
    const std::vector<std::vector<int>>& rot, int v, int i, int j) {
    const auto& rv = rot[static_cast<std::size_t>(v)];
    const int d = static_cast<int>(rv.size());
    std::vector<int> arc1;
    for (int t = 0; t <= (j - i + d) % d; ++t) arc1.push_back(rv[(i + t) % d]);
    std::vector<int> arc2;
    for (int t = 0; t <= (i - j + d) % d; ++t) arc2.push_back(rv[(j + t) % d]);
    const int x = arc1.front();
    const int y = arc1.back();
    const int v2 = static_cast<int>(rot.size());

    std::vector<std::vector<int>> base = rot;
    base[static_cast<std::size_t>(v)] = arc1;
    base[static_cast<std::size_t>(v)].push_back(v2);
    base.push_back(arc2);
    base.back().push_back(v);
    for (std::size_t t = 1; t + 1 < arc2.size(); ++t) {
        auto& rw = base[static_cast<std::size_t>(arc2[t])];
        *std::find(rw.begin(), rw.end(), v) = v2;
    }

    std::vector<PlanarTriangulation> out;
    for (int xo = 0; xo < 2; ++xo) {
        for (int yo = 0; yo < 2; ++yo) {
            auto g = base;
            auto& rx = g[static_cast<std::size_t>(x)];
            auto itx = std::find(rx.begin(), rx.end(), v);
            itx = rx.insert(xo == 0 ? itx + 1 : itx, v2);
            auto& ry = g[static_cast<std::size_t>(y)];
            auto ity = std::find(ry.begin(), ry.end(), v);
            ity = ry.insert(yo == 0 ? ity + 1 : ity, v2);
            if (is_triangulation(g)) out.push_back(PlanarTriangulation{g});
        }
    }
    return out;
}

}  // namespace detail

/// All combinatorial types of planar triangulations on `n` vertices, in
/// canonical-code order.  Every type on five or more vertices arises from a
/// type on one fewer vertex by a vertex split, starting from the
/// tetrahedron.
inline std::vector<PlanarTriangulation> generate_triangulations(int n) {
    if (n < 4) throw std::invalid_argument("generate_triangulations: n >= 4");
    if (n > 10)
        throw InstanceTooLarge("generate_triangulations: " + std::to_string(n) +
                               " vertices exceeds the cap of 10");
    std::map<std::vector<int>, PlanarTriangulation> level;
    const std::vector<std::vector<int>> k4 = {
        {1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}};
    if (!detail::is_triangulation(k4))
        throw std::logic_error("tetrahedron seed is not a triangulation");
    level.emplace(detail::canonical_rotation_code(k4), PlanarTriangulation{k4});
    for (int m = 5; m <= n; ++m) {
        std::map<std::vector<int>, PlanarTriangulation> next;
        for (const auto& [code, tri] : level) {
            const int nv = tri.vertex_count();
            for (int v = 0; v < nv; ++v) {
                const int d = static_cast<int>(
                    tri.rotation[static_cast<std::size_t>(v)].size());
                for (int i = 0; i < d; ++i) {
                    for (int j = i + 1; j < d; ++j) {
                        for (auto& g :
                             detail::vertex_splits(tri.rotation, v, i, j)) {
                            auto c = detail::canonical_rotation_code(g.rotation);
                            next.emplace(std::move(c), std::move(g));
                        }
                    }
                }
            }
        }
        level = std::move(next);
    }
    std::vector<PlanarTriangulation> out;
    out.reserve(level.size());
    for (auto& [code, tri] : level) out.push_back(std::move(tri));
    return out;
}

/// A 3-regular planar 3-connected graph together with its face cycles.
/// Vertices are the faces of the primal triangulation; faces are the link
/// cycles of the primal vertices, so there are `facet_count` of them.
struct CubicPlanarGraph {
    int facet_count = 0;
    std::vector<std::array<int, 3>> adjacency;
    std::vector<std::vector<int>> faces;

    int vertex_count() const { return static_cast<int>(adjacency.size()); }
};

/// Planar dual of a triangulation.
inline CubicPlanarGraph dual_graph(const PlanarTriangulation& tri) {
    const auto faces = detail::faces_of_rotation(tri.rotation);
    std::map<std::pair<int, int>, int> left;
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = faces[fi];
        for (std::size_t t = 0; t < f.size(); ++t)
            left[{f[t], f[(t + 1) % f.size()]}] = static_cast<int>(fi);
    }
    CubicPlanarGraph g;
    g.facet_count = tri.vertex_count();
    g.adjacency.resize(faces.size());
    for (std::size_t fi = 0; fi < faces.size(); ++fi) {
        const auto& f = faces[fi];
        for (std::size_t t = 0; t < 3; ++t) {
            const int a = f[t];
            const int b = f[(t + 1) % 3];
            g.adjacency[fi][t] = left.at({b, a});
        }
    }
    g.faces.reserve(tri.rotation.size());
    for (int v = 0; v < tri.vertex_count(); ++v) {
        std::vector<int> cyc;
        for (int w : tri.rotation[static_cast<std::size_t>(v)])
            cyc.push_back(left.at({v, w}));
        g.faces.push_back(std::move(cyc));
    }
    return g;
}

/// All 3-regular planar 3-connected graphs with `n_facets` faces, obtained
/// by dualising the triangulation census.
inline std::vector<CubicPlanarGraph> generate_cubic_planar_3connected(
    int n_facets) {
    if (n_facets < 4)
        throw std::invalid_argument(
            "generate_cubic_planar_3connected: need at least 4 facets");
    if (n_facets > 10)
        throw InstanceTooLarge("generate_cubic_planar_3connected: " +
                               std::to_string(n_facets) +
                               " facets exceeds the cap of 10");
    std::vector<CubicPlanarGraph> out;
    for (const auto& tri : generate_triangulations(n_facets))
        out.push_back(dual_graph(tri));
    return out;
}

namespace detail {

/// Compact one-line form of the down-lists: vertices 1..V-1 joined by ';',
/// each down-list comma-separated.  Vertex 0 is the sink and is omitted.
inline std::string digraph_serial(const PolytopeDigraph& g) {
    std::ostringstream out;
    for (int v = 1; v < g.vertex_count; ++v) {
        if (v > 1) out << ';';
        const auto& down = g.down[static_cast<std::size_t>(v)];
        for (std::size_t i = 0; i < down.size(); ++i) {
            if (i > 0) out << ',';
            out << down[i];
        }
    }
    return out.str();
}

inline PolytopeDigraph digraph_from_serial(int n_facets,
                                           const std::string& serial) {
    PolytopeDigraph g;
    g.facet_count = n_facets;
    g.down.push_back({});
    std::stringstream vertices(serial);
    std::string part;
    while (std::getline(vertices, part, ';')) {
        std::vector<int> down;
        std::stringstream items(part);
        std::string item;
        while (std::getline(items, item, ',')) down.push_back(std::stoi(item));
        g.down.push_back(std::move(down));
    }
    g.vertex_count = static_cast<int>(g.down.size());
    if (g.vertex_count != 2 * n_facets - 4)
        throw std::runtime_error("digraph_from_serial: vertex count " +
                                 std::to_string(g.vertex_count) +
                                 " does not match facet count " +
                                 std::to_string(n_facets));
    return g;
}

/// Depth-first orientation search over one 3-regular graph.
///
/// Edges are ordered so that faces complete as early as possible (faces in
/// breadth-first order over shared edges, edges grouped by face).  Each
/// edge direction update maintains global sink/source counts, the vertex
/// out-degree profile, and per-face local sink/source counts, and the
/// branch is abandoned as soon as any admissibility condition is violated.
class OrientationDfs {
public:
    explicit OrientationDfs(const CubicPlanarGraph& g) : g_(&g) {
        const int v_count = g.vertex_count();
        const int f_count = static_cast<int>(g.faces.size());
        std::vector<std::vector<int>> eid(
            static_cast<std::size_t>(v_count),
            std::vector<int>(static_cast<std::size_t>(v_count), -1));

        std::map<std::pair<int, int>, std::vector<int>> edge_faces;
        for (int f = 0; f < f_count; ++f) {
            const auto& cyc = g.faces[static_cast<std::size_t>(f)];
            for (std::size_t t = 0; t < cyc.size(); ++t) {
                const int a = cyc[t];
                const int b = cyc[(t + 1) % cyc.size()];
                edge_faces[{std::min(a, b), std::max(a, b)}].push_back(f);
            }
        }

        std::vector<int> face_order;
        std::vector<char> visited(static_cast<std::size_t>(f_count), 0);
        std::queue<int> bfs;
        bfs.push(0);
        visited[0] = 1;
        while (!bfs.empty()) {
            const int f = bfs.front();
            bfs.pop();
            face_order.push_back(f);
            const auto& cyc = g.faces[static_cast<std::size_t>(f)];
            for (std::size_t t = 0; t < cyc.size(); ++t) {
                const int a = cyc[t];
                const int b = cyc[(t + 1) % cyc.size()];
                for (int f2 : edge_faces.at({std::min(a, b), std::max(a, b)})) {
                    if (!visited[static_cast<std::size_t>(f2)]) {
                        visited[static_cast<std::size_t>(f2)] = 1;
                        bfs.push(f2);
                    }
                }
            }
        }

        for (int f : face_order) {
            const auto& cyc = g.faces[static_cast<std::size_t>(f)];
            for (std::size_t t = 0; t < cyc.size(); ++t) {
                const int a = std::min(cyc[t], cyc[(t + 1) % cyc.size()]);
                const int b = std::max(cyc[t], cyc[(t + 1) % cyc.size()]);
                if (eid[static_cast<std::size_t>(a)]
                       [static_cast<std::size_t>(b)] < 0) {
                    eid[static_cast<std::size_t>(a)]
                       [static_cast<std::size_t>(b)] =
                           static_cast<int>(edges_.size());
                    edges_.emplace_back(a, b);
                }
            }
        }

        per_edge_corners_.resize(edges_.size());
        face_size_.resize(static_cast<std::size_t>(f_count));
        for (int f = 0; f < f_count; ++f) {
            const auto& cyc = g.faces[static_cast<std::size_t>(f)];
            const std::size_t k = cyc.size();
            face_size_[static_cast<std::size_t>(f)] = static_cast<int>(k);
            for (std::size_t t = 0; t < k; ++t) {
                const int prev = cyc[(t + k - 1) % k];
                const int b = cyc[t];
                const int next = cyc[(t + 1) % k];
                const int e1 = eid[static_cast<std::size_t>(std::min(prev, b))]
                                  [static_cast<std::size_t>(std::max(prev, b))];
                const int e2 = eid[static_cast<std::size_t>(std::min(b, next))]
                                  [static_cast<std::size_t>(std::max(b, next))];
                per_edge_corners_[static_cast<std::size_t>(e1)].push_back(
                    Corner{f, b, e2});
                per_edge_corners_[static_cast<std::size_t>(e2)].push_back(
                    Corner{f, b, e1});
            }
        }

        dir_.assign(edges_.size(), -1);
        out_cnt_.assign(static_cast<std::size_t>(v_count), 0);
        asg_cnt_.assign(static_cast<std::size_t>(v_count), 0);
        face_done_.assign(static_cast<std::size_t>(f_count), 0);
        face_sink_.assign(static_cast<std::size_t>(f_count), 0);
        face_src_.assign(static_cast<std::size_t>(f_count), 0);
    }

    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Visit every admissible orientation whose first `prefix_len` edges are
    /// directed according to the bits of `prefix` (bit t set means edge t
    /// runs from its higher-numbered endpoint to its lower-numbered one).
    /// `leaf` receives the canonically relabelled digraph and its serial.
    template <class Fn>
    void explore(int prefix_len, unsigned prefix, Fn&& leaf) {
        int applied = 0;
        bool ok = true;
        for (int e = 0; e < prefix_len && ok; ++e) {
            ok = assign(e, static_cast<int>(prefix >> e & 1u));
            ++applied;
        }
        if (ok) step(prefix_len, leaf);
        for (int e = applied - 1; e >= 0; --e)
            unassign(e, static_cast<int>(prefix >> e & 1u));
    }

private:
    struct Corner {
        int face;
        int vertex;
        int other_edge;
    };

    const CubicPlanarGraph* g_;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<Corner>> per_edge_corners_;
    std::vector<int> face_size_;
    std::vector<signed char> dir_;
    std::vector<int> out_cnt_;
    std::vector<int> asg_cnt_;
    std::vector<int> face_done_;
    std::vector<int> face_sink_;
    std::vector<int> face_src_;
    int sink_cnt_ = 0;
    int src_cnt_ = 0;
    int deg1_cnt_ = 0;
    int deg2_cnt_ = 0;

    int head_of(int e) const {
        return dir_[static_cast<std::size_t>(e)] == 0
                   ? edges_[static_cast<std::size_t>(e)].second
                   : edges_[static_cast<std::size_t>(e)].first;
    }

    /// Direct edge `e` (d = 0: low to high endpoint, 1: high to low) and
    /// report whether the partial orientation can still be admissible.
    bool assign(int e, int d) {
        const auto [a, b] = edges_[static_cast<std::size_t>(e)];
        dir_[static_cast<std::size_t>(e)] = static_cast<signed char>(d);
        const int tail = d == 0 ? a : b;
        ++out_cnt_[static_cast<std::size_t>(tail)];
        bool ok = true;
        for (int v : {a, b}) {
            if (++asg_cnt_[static_cast<std::size_t>(v)] == 3) {
                const int out = out_cnt_[static_cast<std::size_t>(v)];
                if (out == 0 && ++sink_cnt_ > 1) ok = false;
                if (out == 3 && ++src_cnt_ > 1) ok = false;
                if (out == 1 && ++deg1_cnt_ > g_->facet_count - 3) ok = false;
                if (out == 2 && ++deg2_cnt_ > g_->facet_count - 3) ok = false;
            }
        }
        const int head = d == 0 ? b : a;
        for (const Corner& c : per_edge_corners_[static_cast<std::size_t>(e)]) {
            if (dir_[static_cast<std::size_t>(c.other_edge)] < 0) continue;
            const bool in1 = head == c.vertex;
            const bool in2 = head_of(c.other_edge) == c.vertex;
            auto f = static_cast<std::size_t>(c.face);
            ++face_done_[f];
            if (in1 && in2 && ++face_sink_[f] > 1) ok = false;
            if (!in1 && !in2 && ++face_src_[f] > 1) ok = false;
            if (face_done_[f] == face_size_[f] &&
                (face_sink_[f] != 1 || face_src_[f] != 1))
                ok = false;
        }
        return ok;
    }

    void unassign(int e, int d) {
        const auto [a, b] = edges_[static_cast<std::size_t>(e)];
        const int head = d == 0 ? b : a;
        for (const Corner& c : per_edge_corners_[static_cast<std::size_t>(e)]) {
            if (dir_[static_cast<std::size_t>(c.other_edge)] < 0) continue;
            const bool in1 = head == c.vertex;
            const bool in2 = head_of(c.other_edge) == c.vertex;
            auto f = static_cast<std::size_t>(c.face);
            --face_done_[f];
            if (in1 && in2) --face_sink_[f];
            if (!in1 && !in2) --face_src_[f];
        }
        for (int v : {a, b}) {
            if (asg_cnt_[static_cast<std::size_t>(v)]-- == 3) {
                const int out = out_cnt_[static_cast<std::size_t>(v)];
                if (out == 0) --sink_cnt_;
                if (out == 3) --src_cnt_;
                if (out == 1) --deg1_cnt_;
                if (out == 2) --deg2_cnt_;
            }
        }
        const int tail = d == 0 ? a : b;
        --out_cnt_[static_cast<std::size_t>(tail)];
        dir_[static_cast<std::size_t>(e)] = -1;
    }

    template <class Fn>
    void step(int depth, Fn& leaf) {
        if (depth == edge_count()) {
            finish(leaf);
            return;
        }
        for (int d = 0; d < 2; ++d) {
            if (assign(depth, d)) step(depth + 1, leaf);
            unassign(depth, d);
        }
    }

    /// Full assignment: verify global extremes, test acyclicity while
    /// relabelling canonically (sink first, then repeatedly the
    /// smallest-numbered vertex all of whose out-neighbours are labelled),
    /// filter through the realizability validator, and hand over the
    /// digraph.
    template <class Fn>
    void finish(Fn& leaf) {
        if (sink_cnt_ != 1 || src_cnt_ != 1) return;
        const int v_count = g_->vertex_count();
        std::vector<std::vector<int>> outs(static_cast<std::size_t>(v_count));
        std::vector<std::vector<int>> ins(static_cast<std::size_t>(v_count));
        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const int tail = dir_[e] == 0 ? edges_[e].first : edges_[e].second;
            const int head = dir_[e] == 0 ? edges_[e].second : edges_[e].first;
            outs[static_cast<std::size_t>(tail)].push_back(head);
            ins[static_cast<std::size_t>(head)].push_back(tail);
        }
        std::vector<int> remaining(static_cast<std::size_t>(v_count));
        std::priority_queue<int, std::vector<int>, std::greater<int>> ready;
        for (int v = 0; v < v_count; ++v) {
            remaining[static_cast<std::size_t>(v)] =
                static_cast<int>(outs[static_cast<std::size_t>(v)].size());
            if (remaining[static_cast<std::size_t>(v)] == 0) ready.push(v);
        }
        std::vector<int> newid(static_cast<std::size_t>(v_count), -1);
        int next_id = 0;
        while (!ready.empty()) {
            const int v = ready.top();
            ready.pop();
            newid[static_cast<std::size_t>(v)] = next_id++;
            for (int w : ins[static_cast<std::size_t>(v)])
                if (--remaining[static_cast<std::size_t>(w)] == 0)
                    ready.push(w);
        }
        if (next_id != v_count) return;  // directed cycle
        PolytopeDigraph dg;
        dg.facet_count = g_->facet_count;
        dg.vertex_count = v_count;
        dg.down.assign(static_cast<std::size_t>(v_count), {});
        for (int v = 0; v < v_count; ++v) {
            auto& down =
                dg.down[static_cast<std::size_t>(newid[static_cast<std::size_t>(v)])];
            for (int w : outs[static_cast<std::size_t>(v)])
                down.push_back(newid[static_cast<std::size_t>(w)]);
            std::sort(down.begin(), down.end(), std::greater<int>());
        }
        const std::string serial = digraph_serial(dg);
        auto it = validated_.find(serial);
        if (it == validated_.end())
            it = validated_
                     .emplace(serial, validate_mihalisin_klee(dg).realizable)
                     .first;
        if (!it->second) return;  // not realizable: filtered out
        leaf(dg, serial);
    }

    std::map<std::string, bool> validated_;
};

/// Outcome of one work unit: a (graph, 4-edge direction prefix) pair.
struct UnitResult {
    bool any = false;
    Rational best;
    std::string witness;
    int start = -1;
    long long labeled = 0;
};

inline constexpr int kUnitPrefixEdges = 4;  // 16 units per graph

inline UnitResult run_unit(const CubicPlanarGraph& g, unsigned prefix) {
    OrientationDfs dfs(g);
    UnitResult r;
    dfs.explore(kUnitPrefixEdges, prefix,
                [&](const PolytopeDigraph& dg, const std::string& serial) {
                    ++r.labeled;
                    const auto table = expected_steps(dg);
                    for (int s = 0; s < dg.vertex_count; ++s) {
                        if (!r.any || table.at(s) > r.best) {
                            r.any = true;
                            r.best = table.at(s);
                            r.witness = serial;
                            r.start = s;
                        }
                    }
                });
    return r;
}

inline std::string checkpoint_header(int n_facets) {
    return "enumckpt 1 facets " + std::to_string(n_facets);
}

inline std::string checkpoint_line(long long unit, const UnitResult& r) {
    std::ostringstream out;
    out << "unit " << unit / 16 << ' ' << unit % 16 << " labeled " << r.labeled;
    if (r.any)
        out << " best " << to_fraction_string(r.best) << " start " << r.start
            << " witness " << r.witness;
    else
        out << " none";
    return out.str();
}

/// Read a checkpoint written by `compute_f`, filling completed unit slots.
/// The header must match the expected facet count exactly.  Returns false
/// when no file exists yet.
inline bool load_checkpoint(const std::string& path, int n_facets,
                            std::vector<UnitResult>& results,
                            std::vector<char>& done) {
    std::ifstream in(path);
    if (!in) return false;  // nothing recorded yet
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("checkpoint: empty file: " + path);
    if (line != checkpoint_header(n_facets))
        throw std::runtime_error("checkpoint: header \"" + line +
                                 "\" does not match expected \"" +
                                 checkpoint_header(n_facets) + "\"");
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string tag, word;
        long long graph = -1, prefix = -1;
        UnitResult r;
        fields >> tag >> graph >> prefix >> word >> r.labeled;
        if (!fields || tag != "unit" || word != "labeled")
            throw std::runtime_error("checkpoint: bad line " +
                                     std::to_string(line_no) + ": " + line);
        fields >> word;
        if (word == "best") {
            std::string frac;
            fields >> frac;
            const auto value = parse_rational(frac);
            if (!value)
                throw std::runtime_error("checkpoint: bad value on line " +
                                         std::to_string(line_no));
            r.best = *value;
            fields >> word >> r.start;
            if (!fields || word != "start")
                throw std::runtime_error("checkpoint: bad line " +
                                         std::to_string(line_no) + ": " + line);
            fields >> word >> r.witness;
            if (!fields || word != "witness")
                throw std::runtime_error("checkpoint: bad line " +
                                         std::to_string(line_no) + ": " + line);
            r.any = true;
        } else if (word != "none") {
            throw std::runtime_error("checkpoint: bad line " +
                                     std::to_string(line_no) + ": " + line);
        }
        const long long unit = graph * 16 + prefix;
        if (graph < 0 || prefix < 0 || prefix >= 16 ||
            unit >= static_cast<long long>(results.size()))
            throw std::runtime_error("checkpoint: unit out of range on line " +
                                     std::to_string(line_no));
        results[static_cast<std::size_t>(unit)] = r;
        done[static_cast<std::size_t>(unit)] = 1;
    }
    return true;
}

}  // namespace detail

/// The admissible digraphs of one 3-regular graph, deduplicated by the
/// canonical height relabelling, in first-encounter order, together with
/// the number of labelled admissible orientations.
struct OrientationSet {
    std::vector<PolytopeDigraph> digraphs;
    long long labeled_count = 0;
};

inline OrientationSet admissible_orientations(const CubicPlanarGraph& g) {
    detail::OrientationDfs dfs(g);
    OrientationSet out;
    std::set<std::string> seen;
    dfs.explore(0, 0,
                [&](const PolytopeDigraph& dg, const std::string& serial) {
                    ++out.labeled_count;
                    if (seen.insert(serial).second) out.digraphs.push_back(dg);
                });
    return out;
}

/// Outcome of the exhaustive search at one facet count.
struct EnumerationResult {
    int n_facets = 0;
    Rational f_value;
    PolytopeDigraph witness;
    int witness_start = -1;
    long long graphs_examined = 0;
    long long orientations_admissible = 0;
    double wall_time_seconds = 0.0;
};

/// Maximum expected walk length over every admissible digraph with
/// `n_facets` facets and every start vertex.
///
/// The search is deterministic for any `jobs` count: work units are folded
/// in ascending order, and ties keep the earliest unit (then the earliest
/// orientation in search order, then the smallest start vertex).  With a
/// `checkpoint_path`, completed units are appended to the file as they
/// finish and skipped on restart.  Facet count 10 is refused unless
/// `allow_long` is set; larger counts are always refused.
inline EnumerationResult compute_f(int n_facets, int jobs = 1,
                                   const std::string& checkpoint_path = {},
                                   bool allow_long = false) {
    if (n_facets < 4)
        throw std::invalid_argument("compute_f: need at least 4 facets");
    if (n_facets > 10)
        throw InstanceTooLarge("compute_f: " + std::to_string(n_facets) +
                               " facets exceeds the cap of 10");
    if (n_facets == 10 && !allow_long)
        throw InstanceTooLarge(
            "compute_f: 10 facets is a long run; set allow_long to proceed");
    const auto t0 = std::chrono::steady_clock::now();
    const auto graphs = generate_cubic_planar_3connected(n_facets);
    const auto unit_count = static_cast<long long>(graphs.size()) * 16;
    std::vector<detail::UnitResult> results(
        static_cast<std::size_t>(unit_count));
    std::vector<char> done(static_cast<std::size_t>(unit_count), 0);

    std::ofstream checkpoint;
    if (!checkpoint_path.empty()) {
        const bool existed =
            detail::load_checkpoint(checkpoint_path, n_facets, results, done);
        checkpoint.open(checkpoint_path, std::ios::app);
        if (!checkpoint)
            throw std::runtime_error("checkpoint: cannot open for append: " +
                                     checkpoint_path);
        if (!existed) checkpoint << detail::checkpoint_header(n_facets) << '\n';
        checkpoint.flush();
    }

    std::atomic<long long> next_unit{0};
    std::mutex checkpoint_mutex;
    auto worker = [&] {
        while (true) {
            const long long unit = next_unit.fetch_add(1);
            if (unit >= unit_count) return;
            if (done[static_cast<std::size_t>(unit)]) continue;
            auto r = detail::run_unit(graphs[static_cast<std::size_t>(unit / 16)],
                                      static_cast<unsigned>(unit % 16));
            results[static_cast<std::size_t>(unit)] = std::move(r);
            if (checkpoint.is_open()) {
                const std::lock_guard<std::mutex> lock(checkpoint_mutex);
                checkpoint << detail::checkpoint_line(
                                  unit, results[static_cast<std::size_t>(unit)])
                           << '\n';
                checkpoint.flush();
            }
        }
    };
    const int thread_count = std::max(1, jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < thread_count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    EnumerationResult out;
    out.n_facets = n_facets;
    out.graphs_examined = static_cast<long long>(graphs.size());
    std::string witness_serial;
    bool any = false;
    for (const auto& r : results) {
        out.orientations_admissible += r.labeled;
        if (r.any && (!any || r.best > out.f_value)) {
            any = true;
            out.f_value = r.best;
            witness_serial = r.witness;
            out.witness_start = r.start;
        }
    }
    if (!any)
        throw std::logic_error("compute_f: no admissible orientation found");
    out.witness = detail::digraph_from_serial(n_facets, witness_serial);
    out.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    return out;
}

}  // namespace redge
