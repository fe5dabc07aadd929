// Undirected connectivity tests and directed vertex-disjoint path counting.
#pragma once

#include <redge/digraph.hpp>

#include <algorithm>
#include <cstddef>
#include <queue>
#include <vector>

namespace redge {

namespace detail {

/// True iff the vertices with skip[v]==0 induce a connected subgraph
/// (vacuously true when none remain).
inline bool connected_excluding(const std::vector<std::vector<int>>& adj,
                                const std::vector<char>& skip) {
    const int vcount = static_cast<int>(adj.size());
    int start = -1;
    int alive = 0;
    for (int v = 0; v < vcount; ++v)
        if (!skip[static_cast<std::size_t>(v)]) {
            if (start < 0) start = v;
            ++alive;
        }
    if (alive <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(vcount), 0);
    std::queue<int> frontier;
    frontier.push(start);
    seen[static_cast<std::size_t>(start)] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int w : adj[static_cast<std::size_t>(v)])
            if (!skip[static_cast<std::size_t>(w)] &&
                !seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                ++reached;
                frontier.push(w);
            }
    }
    return reached == alive;
}

/// Articulation-vertex existence among the vertices with skip[v]==0, by
/// Tarjan low-link search restricted to that induced subgraph.
inline bool has_cut_vertex(const std::vector<std::vector<int>>& adj,
                           const std::vector<char>& skip) {
    const int vcount = static_cast<int>(adj.size());
    std::vector<int> disc(static_cast<std::size_t>(vcount), -1);
    std::vector<int> low(static_cast<std::size_t>(vcount), 0);
    int timer = 0;
    bool found = false;

    // Iterative DFS; frame = (vertex, parent, next-neighbor position).
    struct Frame {
        int v;
        int parent;
        std::size_t next;
        int child_count;
    };
    for (int root = 0; root < vcount && !found; ++root) {
        if (skip[static_cast<std::size_t>(root)] ||
            disc[static_cast<std::size_t>(root)] != -1)
            continue;
        std::vector<Frame> stack;
        disc[static_cast<std::size_t>(root)] =
            low[static_cast<std::size_t>(root)] = timer++;
        stack.push_back({root, -1, 0, 0});
        while (!stack.empty() && !found) {
            Frame& f = stack.back();
            const auto& nbrs = adj[static_cast<std::size_t>(f.v)];
            if (f.next < nbrs.size()) {
                const int w = nbrs[f.next++];
                if (skip[static_cast<std::size_t>(w)] || w == f.parent)
                    continue;
                if (disc[static_cast<std::size_t>(w)] == -1) {
                    ++f.child_count;
                    disc[static_cast<std::size_t>(w)] =
                        low[static_cast<std::size_t>(w)] = timer++;
                    stack.push_back({w, f.v, 0, 0});
                } else {
                    low[static_cast<std::size_t>(f.v)] =
                        std::min(low[static_cast<std::size_t>(f.v)],
                                 disc[static_cast<std::size_t>(w)]);
                }
            } else {
                const Frame done = f;
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& up = stack.back();
                    low[static_cast<std::size_t>(up.v)] =
                        std::min(low[static_cast<std::size_t>(up.v)],
                                 low[static_cast<std::size_t>(done.v)]);
                    if (up.parent != -1 &&
                        low[static_cast<std::size_t>(done.v)] >=
                            disc[static_cast<std::size_t>(up.v)])
                        found = true;
                } else if (done.child_count > 1) {
                    found = true;  // root with two DFS children
                }
            }
        }
    }
    return found;
}

}  // namespace detail

/// Undirected connectivity.
inline bool is_connected(const PolytopeDigraph& g) {
    if (g.vertex_count == 0) return true;
    return detail::connected_excluding(
        g.adjacency(),
        std::vector<char>(static_cast<std::size_t>(g.vertex_count), 0));
}

/// True iff no vertex cut of size <= 2 exists (undirected sense): the graph
/// has at least 4 vertices, is connected, has no cut vertex, and stays
/// cut-vertex-free after removing any single vertex.
inline bool is_three_connected(const PolytopeDigraph& g) {
    if (g.vertex_count < 4) return false;
    const auto adj = g.adjacency();
    std::vector<char> skip(static_cast<std::size_t>(g.vertex_count), 0);
    if (!detail::connected_excluding(adj, skip)) return false;
    if (detail::has_cut_vertex(adj, skip)) return false;
    for (int v = 0; v < g.vertex_count; ++v) {
        skip[static_cast<std::size_t>(v)] = 1;
        if (!detail::connected_excluding(adj, skip) ||
            detail::has_cut_vertex(adj, skip))
            return false;
        skip[static_cast<std::size_t>(v)] = 0;
    }
    return true;
}

/// Maximum number (capped at `need`) of directed paths from `source` to
/// `sink` that share no interior vertices: unit-capacity vertex-split
/// max-flow with deterministic shortest-path augmentation.
inline int count_disjoint_directed_paths(const PolytopeDigraph& g, int source,
                                         int sink, int need = 3) {
    if (source == sink) return need;
    const int vcount = g.vertex_count;
    // Node 2v = entry half of v, 2v+1 = exit half.
    struct Arc {
        int to;
        int cap;
        int rev;
    };
    std::vector<std::vector<Arc>> net(static_cast<std::size_t>(2 * vcount));
    auto add_arc = [&](int a, int b, int cap) {
        net[static_cast<std::size_t>(a)].push_back(
            {b, cap, static_cast<int>(net[static_cast<std::size_t>(b)].size())});
        net[static_cast<std::size_t>(b)].push_back(
            {a, 0,
             static_cast<int>(net[static_cast<std::size_t>(a)].size()) - 1});
    };
    for (int v = 0; v < vcount; ++v) {
        const int cap = (v == source || v == sink) ? need : 1;
        add_arc(2 * v, 2 * v + 1, cap);
    }
    for (int v = 0; v < vcount; ++v)
        for (int w : g.down[static_cast<std::size_t>(v)])
            add_arc(2 * v + 1, 2 * w, 1);

    const int s = 2 * source + 1;  // after source's internal arc
    const int t = 2 * sink;        // before sink's internal arc
    int flow = 0;
    while (flow < need) {
        std::vector<int> prev_node(static_cast<std::size_t>(2 * vcount), -1);
        std::vector<int> prev_arc(static_cast<std::size_t>(2 * vcount), -1);
        std::queue<int> frontier;
        frontier.push(s);
        prev_node[static_cast<std::size_t>(s)] = s;
        while (!frontier.empty() &&
               prev_node[static_cast<std::size_t>(t)] == -1) {
            const int a = frontier.front();
            frontier.pop();
            const auto& arcs = net[static_cast<std::size_t>(a)];
            for (int i = 0; i < static_cast<int>(arcs.size()); ++i) {
                const Arc& arc = arcs[static_cast<std::size_t>(i)];
                if (arc.cap > 0 &&
                    prev_node[static_cast<std::size_t>(arc.to)] == -1) {
                    prev_node[static_cast<std::size_t>(arc.to)] = a;
                    prev_arc[static_cast<std::size_t>(arc.to)] = i;
                    frontier.push(arc.to);
                }
            }
        }
        if (prev_node[static_cast<std::size_t>(t)] == -1) break;
        for (int a = t; a != s;) {
            const int pa = prev_node[static_cast<std::size_t>(a)];
            const int pi = prev_arc[static_cast<std::size_t>(a)];
            Arc& fwd = net[static_cast<std::size_t>(pa)]
                          [static_cast<std::size_t>(pi)];
            --fwd.cap;
            ++net[static_cast<std::size_t>(a)]
                 [static_cast<std::size_t>(fwd.rev)]
                     .cap;
            a = pa;
        }
        ++flow;
    }
    return flow;
}

}  // namespace redge
