// Realizability validator for directed polytope graphs.
//
// A directed graph is induced by a 3-dimensional linear program exactly when
// it is planar and 3-connected, acyclic with a unique source and unique sink,
// has a unique local sink in every face cycle, and admits three source-to-
// sink directed paths with pairwise disjoint interiors. validate_mihalisin_klee
// evaluates all conditions without short-circuiting and aggregates them into
// an MkReport. Inputs that are not 3-regular are refused with a distinct
// diagnostic (the conditions are only meaningful on polytope graphs).
#pragma once

#include <redge/connectivity.hpp>
#include <redge/digraph.hpp>
#include <redge/planarity.hpp>

#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

namespace redge {

struct MkReport {
    bool three_regular = false;
    bool planar = false;
    bool three_connected = false;
    bool acyclic_unique_source_sink = false;
    bool unique_local_sink_per_face = false;
    bool face_condition_evaluated = false;  ///< false when no embedding exists
    std::vector<std::vector<int>> violating_faces;
    bool three_disjoint_paths = false;
    bool realizable = false;
    std::string diagnostic;  ///< refusal or evaluation note, empty if none

    std::string to_text() const {
        std::ostringstream out;
        auto line = [&](const char* name, bool v) {
            out << name << ": " << (v ? "pass" : "FAIL") << "\n";
        };
        line("three_regular", three_regular);
        line("planar", planar);
        line("three_connected", three_connected);
        line("acyclic_unique_source_sink", acyclic_unique_source_sink);
        line("unique_local_sink_per_face", unique_local_sink_per_face);
        if (!violating_faces.empty()) {
            for (const auto& f : violating_faces) {
                out << "violating_face:";
                for (int v : f) out << ' ' << v;
                out << "\n";
            }
        }
        line("three_disjoint_paths", three_disjoint_paths);
        out << "realizable: " << (realizable ? "yes" : "no") << "\n";
        if (!diagnostic.empty()) out << "diagnostic: " << diagnostic << "\n";
        return out.str();
    }
};

/// True iff exactly one vertex has no down-neighbor and exactly one has no
/// up-neighbor. Acyclicity holds structurally (edges decrease the index).
inline bool check_unique_source_sink(const PolytopeDigraph& g) {
    int sinks = 0;
    std::vector<char> has_up(static_cast<std::size_t>(g.vertex_count), 0);
    for (int v = 0; v < g.vertex_count; ++v) {
        if (g.down_degree(v) == 0) ++sinks;
        for (int w : g.down[static_cast<std::size_t>(v)])
            has_up[static_cast<std::size_t>(w)] = 1;
    }
    int sources = 0;
    for (int v = 0; v < g.vertex_count; ++v)
        if (!has_up[static_cast<std::size_t>(v)]) ++sources;
    return sinks == 1 && sources == 1;
}

/// Faces whose number of local sinks differs from one. A local sink of a face
/// is a vertex lower than both of its neighbors along that face cycle.
inline std::vector<std::vector<int>> check_face_local_sinks(
    const PolytopeDigraph& g, const FaceSet& faces) {
    std::vector<std::vector<int>> violating;
    for (const auto& face : faces.faces) {
        const int len = static_cast<int>(face.size());
        int local_sinks = 0;
        for (int i = 0; i < len; ++i) {
            const int v = face[static_cast<std::size_t>(i)];
            const int prev = face[static_cast<std::size_t>((i + len - 1) % len)];
            const int next = face[static_cast<std::size_t>((i + 1) % len)];
            if (v < prev && v < next) ++local_sinks;
        }
        if (local_sinks != 1) violating.push_back(face);
    }
    return violating;
}

/// True iff three directed paths with pairwise disjoint interiors run from
/// the top vertex to the bottom vertex.
inline bool check_three_disjoint_paths(const PolytopeDigraph& g) {
    if (g.vertex_count < 2) return false;
    return count_disjoint_directed_paths(g, g.vertex_count - 1, 0, 3) >= 3;
}

/// Evaluates all realizability conditions; never short-circuits, so the
/// report carries full diagnostics even when several conditions fail.
inline MkReport validate_mihalisin_klee(const PolytopeDigraph& g) {
    MkReport r;

    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count), 0);
    for (int v = 0; v < g.vertex_count; ++v)
        for (int w : g.down[static_cast<std::size_t>(v)]) {
            ++degree[static_cast<std::size_t>(v)];
            ++degree[static_cast<std::size_t>(w)];
        }
    r.three_regular = true;
    for (int v = 0; v < g.vertex_count; ++v)
        if (degree[static_cast<std::size_t>(v)] != 3) {
            r.three_regular = false;
            break;
        }
    if (!r.three_regular)
        r.diagnostic =
            "input is not 3-regular; realizability conditions apply to "
            "polytope graphs only";

    r.planar = is_planar(g);
    r.three_connected = is_three_connected(g);
    r.acyclic_unique_source_sink = check_unique_source_sink(g);

    if (r.planar && g.vertex_count >= 2) {
        const FaceSet faces = planar_embedding(g);
        r.violating_faces = check_face_local_sinks(g, faces);
        r.unique_local_sink_per_face = r.violating_faces.empty();
        r.face_condition_evaluated = true;
    } else {
        r.unique_local_sink_per_face = false;
        r.face_condition_evaluated = false;
        if (r.diagnostic.empty() && !r.planar)
            r.diagnostic = "face condition not evaluable without an embedding";
    }

    r.three_disjoint_paths = check_three_disjoint_paths(g);

    r.realizable = r.three_regular && r.planar && r.three_connected &&
                   r.acyclic_unique_source_sink &&
                   r.unique_local_sink_per_face && r.three_disjoint_paths;
    return r;
}

}  // namespace redge
