// Shared hand-built instances for tests and the acceptance runner.
#pragma once

#include <redge/digraph.hpp>

#include <utility>
#include <vector>

namespace fixtures {

inline redge::PolytopeDigraph make_graph(int facet_count,
                                         std::vector<std::vector<int>> down) {
    redge::PolytopeDigraph g;
    g.vertex_count = static_cast<int>(down.size());
    g.facet_count = facet_count;
    g.down = std::move(down);
    return g;
}

inline redge::PolytopeDigraph tetrahedron() {
    return make_graph(4, {{}, {0}, {1, 0}, {2, 1, 0}});
}

// Edge reversal in an 8-vertex wedge digraph, re-indexed by height: creates a
// second sink (vertex 3) and, collaterally, a second source (vertex 4).
inline redge::PolytopeDigraph mutation_second_sink() {
    return make_graph(
        6, {{}, {0}, {1}, {}, {2, 0, 3}, {3, 2}, {5, 1}, {6, 3, 0}});
}

// K3,3 with a height order: 3-regular and acyclic with unique source and
// sink, but not planar.
inline redge::PolytopeDigraph mutation_non_planar() {
    return make_graph(5, {{}, {0}, {1}, {0, 2}, {1, 3}, {0, 2, 4}});
}

// Two K4-like blocks joined through the 2-cut {4, 5}: planar, cubic, unique
// source/sink, every face has one local sink, but not 3-connected and only
// two interior-disjoint top-to-bottom paths exist.
inline redge::PolytopeDigraph mutation_two_cut() {
    return make_graph(
        6, {{}, {0}, {0, 1}, {0, 1}, {2}, {3}, {4, 5}, {6, 4, 5}});
}

// Planar, cubic, 3-connected orientation with a unique source whose face on
// vertex set {0, 2, 3, 5} carries two local sinks (vertices 0 and 2); vertex
// 1 is a collateral second sink.
inline redge::PolytopeDigraph mutation_two_face_sinks() {
    return make_graph(
        6, {{}, {}, {1}, {0, 2}, {1, 3}, {0, 2}, {0, 4}, {1, 5, 6}});
}

inline redge::PolytopeDigraph k5() {
    return make_graph(6, {{}, {0}, {1, 0}, {2, 1, 0}, {3, 2, 1, 0}});
}

// Cube graph oriented by bit-clearing: vertex = 3-bit word, edges drop one
// set bit.
inline redge::PolytopeDigraph cube() {
    return make_graph(
        6, {{}, {0}, {0}, {2, 1}, {0}, {4, 1}, {4, 2}, {6, 5, 3}});
}

// Two tetrahedra sharing exactly the two vertices {0, 1}.
inline redge::PolytopeDigraph shared_pair_gadget() {
    return make_graph(6, {{}, {0}, {1, 0}, {2, 1, 0}, {1, 0}, {4, 1, 0}});
}

// All top-vertex flow funnels through vertex 1.
inline redge::PolytopeDigraph funnel() {
    return make_graph(5, {{}, {0}, {1}, {1}, {1}, {4, 3, 2}});
}

}  // namespace fixtures
