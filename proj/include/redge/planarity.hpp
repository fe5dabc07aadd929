// Planarity testing and canonical face extraction.
//
// planar_embedding returns the face cycles of a planar embedding of the
// underlying undirected graph. For 3-connected planar graphs the spherical
// embedding is unique up to reflection; the result is made canonical by
// normalizing every cycle (minimum vertex first, cycle order preserved),
// sorting the face list, computing the same for the mirrored embedding, and
// returning the lexicographically smaller of the two lists. Non-planar input
// raises NonPlanarError carrying a Kuratowski-subdivision edge witness.
#pragma once

#include <redge/digraph.hpp>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>
#include <boost/graph/properties.hpp>
#include <boost/property_map/property_map.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace redge {

struct FaceSet {
    std::vector<std::vector<int>> faces;

    int face_count() const { return static_cast<int>(faces.size()); }
};

class NonPlanarError : public std::runtime_error {
public:
    explicit NonPlanarError(std::vector<std::pair<int, int>> witness)
        : std::runtime_error("graph is not planar (Kuratowski witness with " +
                             std::to_string(witness.size()) + " edges)"),
          witness_(std::move(witness)) {}
    /// Edges of a K5 or K3,3 subdivision found in the graph.
    const std::vector<std::pair<int, int>>& witness_edges() const {
        return witness_;
    }

private:
    std::vector<std::pair<int, int>> witness_;
};

namespace detail {

using BoostPlanarGraph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::undirectedS, boost::no_property,
    boost::property<boost::edge_index_t, int>>;

/// Runs the planarity test; fills `rotations` (per-vertex cyclic neighbor
/// order) on success, `witness` on failure.
inline bool planarity_probe(const PolytopeDigraph& g,
                            std::vector<std::vector<int>>* rotations,
                            std::vector<std::pair<int, int>>* witness) {
    BoostPlanarGraph bg(static_cast<std::size_t>(g.vertex_count));
    for (int v = 0; v < g.vertex_count; ++v)
        for (int w : g.down[static_cast<std::size_t>(v)])
            boost::add_edge(static_cast<std::size_t>(v),
                            static_cast<std::size_t>(w), bg);
    auto e_index = boost::get(boost::edge_index, bg);
    int next_index = 0;
    for (auto [ei, ee] = boost::edges(bg); ei != ee; ++ei)
        boost::put(e_index, *ei, next_index++);

    using Edge = boost::graph_traits<BoostPlanarGraph>::edge_descriptor;
    std::vector<std::vector<Edge>> storage(
        static_cast<std::size_t>(g.vertex_count));
    auto embedding = boost::make_iterator_property_map(
        storage.begin(), boost::get(boost::vertex_index, bg));
    std::vector<Edge> kuratowski;

    const bool planar = boost::boyer_myrvold_planarity_test(
        boost::boyer_myrvold_params::graph = bg,
        boost::boyer_myrvold_params::embedding = embedding,
        boost::boyer_myrvold_params::kuratowski_subgraph =
            std::back_inserter(kuratowski));

    if (!planar) {
        if (witness) {
            for (const Edge& e : kuratowski)
                witness->emplace_back(
                    static_cast<int>(boost::source(e, bg)),
                    static_cast<int>(boost::target(e, bg)));
        }
        return false;
    }
    if (rotations) {
        rotations->assign(static_cast<std::size_t>(g.vertex_count), {});
        for (int v = 0; v < g.vertex_count; ++v)
            for (const Edge& e : storage[static_cast<std::size_t>(v)]) {
                const int a = static_cast<int>(boost::source(e, bg));
                const int b = static_cast<int>(boost::target(e, bg));
                (*rotations)[static_cast<std::size_t>(v)].push_back(
                    a == v ? b : a);
            }
    }
    return true;
}

/// Traces all face cycles of a rotation system. `mirror` selects the
/// reflected embedding.
inline std::vector<std::vector<int>> trace_faces(
    const std::vector<std::vector<int>>& rotations, bool mirror) {
    const int vcount = static_cast<int>(rotations.size());
    // Position of each neighbor within a vertex's rotation.
    std::vector<std::map<int, int>> pos(static_cast<std::size_t>(vcount));
    for (int v = 0; v < vcount; ++v) {
        const auto& rot = rotations[static_cast<std::size_t>(v)];
        for (int i = 0; i < static_cast<int>(rot.size()); ++i)
            pos[static_cast<std::size_t>(v)]
               [rot[static_cast<std::size_t>(i)]] = i;
    }
    // Darts keyed by (tail, position-of-head-in-tail's-rotation).
    std::vector<std::vector<char>> used(static_cast<std::size_t>(vcount));
    for (int v = 0; v < vcount; ++v)
        used[static_cast<std::size_t>(v)].assign(
            rotations[static_cast<std::size_t>(v)].size(), 0);

    std::vector<std::vector<int>> faces;
    for (int v = 0; v < vcount; ++v) {
        const int deg =
            static_cast<int>(rotations[static_cast<std::size_t>(v)].size());
        for (int i = 0; i < deg; ++i) {
            if (used[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)])
                continue;
            std::vector<int> cycle;
            int cu = v;
            int ci = i;
            while (!used[static_cast<std::size_t>(cu)]
                        [static_cast<std::size_t>(ci)]) {
                used[static_cast<std::size_t>(cu)]
                    [static_cast<std::size_t>(ci)] = 1;
                cycle.push_back(cu);
                const int cw = rotations[static_cast<std::size_t>(cu)]
                                        [static_cast<std::size_t>(ci)];
                const int back = pos[static_cast<std::size_t>(cw)].at(cu);
                const int wdeg = static_cast<int>(
                    rotations[static_cast<std::size_t>(cw)].size());
                const int next =
                    mirror ? (back + wdeg - 1) % wdeg : (back + 1) % wdeg;
                cu = cw;
                ci = next;
            }
            faces.push_back(std::move(cycle));
        }
    }
    return faces;
}

/// Rotates each cycle so its minimum vertex comes first (cycle direction
/// preserved) and sorts the face list.
inline std::vector<std::vector<int>> normalize_faces(
    std::vector<std::vector<int>> faces) {
    for (auto& f : faces) {
        const auto it = std::min_element(f.begin(), f.end());
        std::rotate(f.begin(), it, f.end());
    }
    std::sort(faces.begin(), faces.end());
    return faces;
}

}  // namespace detail

/// True iff the underlying undirected graph is planar; optionally fills a
/// Kuratowski-subdivision witness when it is not.
inline bool is_planar(const PolytopeDigraph& g,
                      std::vector<std::pair<int, int>>* witness = nullptr) {
    return detail::planarity_probe(g, nullptr, witness);
}

/// Canonical face cycles of a planar embedding (see file comment). Throws
/// NonPlanarError for non-planar input and invalid_argument when a stored
/// rotation system does not describe a sphere embedding.
inline FaceSet planar_embedding(const PolytopeDigraph& g) {
    std::vector<std::vector<int>> rotations;
    if (g.has_embedding()) {
        rotations.assign(static_cast<std::size_t>(g.vertex_count), {});
        for (int v = 0; v < g.vertex_count; ++v) {
            const auto& cyc = g.embed[static_cast<std::size_t>(v)];
            rotations[static_cast<std::size_t>(v)]
                .assign(cyc.begin(), cyc.end());
        }
    } else {
        std::vector<std::pair<int, int>> witness;
        if (!detail::planarity_probe(g, &rotations, &witness))
            throw NonPlanarError(std::move(witness));
    }

    const auto straight = detail::normalize_faces(
        detail::trace_faces(rotations, /*mirror=*/false));
    const auto mirrored = detail::normalize_faces(
        detail::trace_faces(rotations, /*mirror=*/true));

    FaceSet result;
    result.faces = std::min(straight, mirrored);

    // Euler relation: a rotation system describes a sphere embedding exactly
    // when V - E + F = 2.
    const int euler = g.vertex_count - g.edge_count() +
                      static_cast<int>(result.faces.size());
    if (euler != 2)
        throw std::invalid_argument(
            "planar_embedding: rotation system is not spherical (V-E+F = " +
            std::to_string(euler) + ")");
    return result;
}

}  // namespace redge
