// Lower-bound instance generators.
//
// Four families: the wedge digraphs dual to cyclic polytopes, the backbone
// polytopes P_k carrying a unique-down chain, and the two splice families
// that replace every chain vertex of P_k by a 7-vertex (cost 3 facets) or
// 19-vertex (cost 9 facets) gadget. Each generator designates the start
// vertex whose expectation attains the family's closed form, and
// gadget_search exhaustively rediscovers optimal gadgets for small budgets.
#pragma once

#include <redge/digraph.hpp>
#include <redge/mk.hpp>
#include <redge/rational.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace redge {

enum class Family { dual_cyclic, backbone, example2, example3 };

/// Wedge digraph on 2n-4 vertices; n = 4 gives the simplex.
///
/// The underlying graph is the dual of the cyclic 3-polytope with n facets: a
/// twisted ladder whose faces are two triangles, n-4 quadrilaterals, and two
/// (n-1)-gons. Vertices 2j, 2j+1 form the j-th rung; the vertex above the top
/// rung closes the top triangle, and the source closes the bottom one. The
/// same formulas degenerate to the simplex at n = 4.
inline PolytopeDigraph dual_cyclic(int n) {
    if (n < 4) throw std::invalid_argument("dual_cyclic: need n >= 4");
    PolytopeDigraph g;
    g.facet_count = n;
    g.vertex_count = 2 * n - 4;
    g.down.assign(static_cast<std::size_t>(g.vertex_count), {});
    g.down[1] = {0};
    for (int j = 1; j <= n - 4; ++j) {
        g.down[static_cast<std::size_t>(2 * j)] = {2 * j - 1};
        g.down[static_cast<std::size_t>(2 * j + 1)] = {2 * j, 2 * j - 2};
    }
    g.down[static_cast<std::size_t>(2 * n - 6)] = {2 * n - 7, 2 * n - 8};
    g.down[static_cast<std::size_t>(2 * n - 5)] = {2 * n - 6, 1, 0};
    return g;
}

/// Replaces a vertex with up-neighbors p > q and single down-neighbor r by
/// the triangle x > y > z (inserted at the vertex's height), attaching
/// p to x, q to y, and z to r. Adds one facet and two vertices.
inline PolytopeDigraph cut_chain_vertex(const PolytopeDigraph& g, int v) {
    if (v < 0 || v >= g.vertex_count)
        throw std::out_of_range("cut_chain_vertex: vertex out of range");
    const auto ups = g.up_lists();
    const auto& up = ups[static_cast<std::size_t>(v)];
    const auto& down = g.down[static_cast<std::size_t>(v)];
    if (up.size() != 2 || down.size() != 1)
        throw std::invalid_argument(
            "cut_chain_vertex: vertex " + std::to_string(v) +
            " needs two up-neighbors and one down-neighbor");
    const int p = std::max(up[0], up[1]);
    const int q = std::min(up[0], up[1]);
    const int r = down[0];

    PolytopeDigraph out;
    out.facet_count = g.facet_count + 1;
    out.vertex_count = g.vertex_count + 2;
    out.down.assign(static_cast<std::size_t>(out.vertex_count), {});
    const auto shift = [&](int w) { return w > v ? w + 2 : w; };
    for (int w = 0; w < g.vertex_count; ++w) {
        if (w == v) continue;
        auto& list = out.down[static_cast<std::size_t>(shift(w))];
        for (int d : g.down[static_cast<std::size_t>(w)]) {
            if (d != v) {
                list.push_back(shift(d));
            } else {
                // p keeps the highest triangle vertex, q the middle one.
                list.push_back(w == p ? v + 2 : v + 1);
            }
        }
        std::sort(list.rbegin(), list.rend());
    }
    out.down[static_cast<std::size_t>(v)] = {r};          // z
    out.down[static_cast<std::size_t>(v + 1)] = {v};      // y
    out.down[static_cast<std::size_t>(v + 2)] = {v + 1, v};  // x
    return out;
}

/// P_k: k+2 facets, 2k vertices; chain k-1 > ... > 0 where each chain vertex
/// has its predecessor as the only down-neighbor. Built from the simplex by
/// repeatedly cutting the chain top.
inline PolytopeDigraph backbone(int k) {
    if (k < 2) throw std::invalid_argument("backbone: need k >= 2");
    PolytopeDigraph g;
    g.facet_count = 4;
    g.vertex_count = 4;
    g.down = {{}, {0}, {1, 0}, {2, 1, 0}};
    for (int i = 3; i <= k; ++i) g = cut_chain_vertex(g, i - 2);
    return g;
}

struct GeneratedInstance {
    PolytopeDigraph graph;
    int start = 0;  ///< designated walk start (emitted as a file comment)
};

/// Where the replaced chain vertex's boundary edges land inside the gadget.
struct BoundaryAttachments {
    int upper_in = 0;  ///< first inbound edge enters here (the entry vertex)
    int side_in = 0;   ///< second inbound edge enters here
    int down_out = 0;  ///< the outbound edge leaves from here (the exit)
};

struct GadgetSpec {
    int internal_vertex_count = 0;
    int facet_cost = 0;  ///< extra facets contributed per spliced copy
    int entry = 0;       ///< unique local source (highest local id)
    int exit = 0;        ///< unique local sink (local id 0)
    std::vector<std::vector<int>> local_down_lists;
    BoundaryAttachments boundary_attachments;
    Rational expected_increment;  ///< per-copy contribution to E
};

/// Total visit probability over all gadget vertices for a walk entering at
/// the top local vertex: the per-copy expectation increment.
inline Rational gadget_visit_total(
    const std::vector<std::vector<int>>& down_lists) {
    const std::size_t m = down_lists.size();
    std::vector<Rational> visit(m, Rational(0));
    visit[m - 1] = 1;
    Rational total = 0;
    for (std::size_t v = m; v-- > 0;) {
        total += visit[v];
        const auto& d = down_lists[v];
        if (d.empty()) continue;
        const Rational share = visit[v] / static_cast<int>(d.size());
        for (int w : d) visit[static_cast<std::size_t>(w)] += share;
    }
    return total;
}

namespace detail {

inline GadgetSpec make_gadget(int facet_cost,
                              std::vector<std::vector<int>> down_lists,
                              int side) {
    GadgetSpec spec;
    spec.internal_vertex_count = static_cast<int>(down_lists.size());
    spec.facet_cost = facet_cost;
    spec.entry = spec.internal_vertex_count - 1;
    spec.exit = 0;
    spec.local_down_lists = std::move(down_lists);
    spec.boundary_attachments = {spec.entry, side, spec.exit};
    spec.expected_increment = gadget_visit_total(spec.local_down_lists);
    return spec;
}

}  // namespace detail

/// The 7-vertex gadget: 43/8 expected steps per copy, 3 extra facets.
inline GadgetSpec example2_gadget() {
    return detail::make_gadget(
        3, {{}, {0}, {1, 0}, {2}, {3}, {4, 1}, {5, 4}}, /*side=*/3);
}

/// The 19-vertex gadget: 1721/128 expected steps per copy, 9 extra facets.
inline GadgetSpec example3_gadget() {
    return detail::make_gadget(9,
                               {{},       {0},      {1, 0},  {2},     {3},
                                {4, 1},   {5, 4},   {6},     {7},     {8},
                                {9, 7},   {10, 9},  {11},    {12},    {12, 3},
                                {14, 13}, {13},     {16, 15}, {17, 16}},
                               /*side=*/8);
}

/// Replaces every chain vertex of a backbone digraph by a gadget copy.
/// Copy i (0 = bottom) occupies global ids [i*m, i*m + m - 1]; the k
/// non-chain backbone vertices keep their relative order above the copies.
/// Inbound edges at each copy fill, in order: entry then side for the top
/// copy, side only for middle copies, and side then exit for the bottom
/// copy (whose exit vertex is the global sink).
inline GeneratedInstance splice_gadget(const PolytopeDigraph& bk,
                                       const GadgetSpec& gadget) {
    const int k = bk.vertex_count / 2;
    if (k < 2 || bk.vertex_count != 2 * k)
        throw std::invalid_argument("splice_gadget: not a backbone digraph");
    for (int i = 1; i < k; ++i) {
        const auto& d = bk.down[static_cast<std::size_t>(i)];
        if (d.size() != 1 || d[0] != i - 1)
            throw std::invalid_argument(
                "splice_gadget: chain property fails at vertex " +
                std::to_string(i));
    }
    const int m = gadget.internal_vertex_count;
    GeneratedInstance result;
    PolytopeDigraph& out = result.graph;
    out.facet_count = bk.facet_count + k * gadget.facet_cost;
    out.vertex_count = k * m + k;
    out.down.assign(static_cast<std::size_t>(out.vertex_count), {});

    for (int i = 0; i < k; ++i) {
        for (int v = 0; v < m; ++v) {
            auto& list = out.down[static_cast<std::size_t>(i * m + v)];
            for (int w : gadget.local_down_lists[static_cast<std::size_t>(v)])
                list.push_back(i * m + w);
        }
        if (i > 0)
            out.down[static_cast<std::size_t>(i * m + gadget.exit)].push_back(
                (i - 1) * m + gadget.entry);
    }

    const int side = gadget.boundary_attachments.side_in;
    std::vector<std::deque<int>> slots(static_cast<std::size_t>(k),
                                       std::deque<int>{side});
    slots[static_cast<std::size_t>(k - 1)] = {gadget.entry, side};
    slots[0] = {side, gadget.exit};

    for (int u = k; u < 2 * k; ++u) {
        auto& list = out.down[static_cast<std::size_t>(k * m + (u - k))];
        std::vector<int> targets = bk.down[static_cast<std::size_t>(u)];
        std::sort(targets.rbegin(), targets.rend());
        for (int w : targets) {
            if (w >= k) {
                list.push_back(k * m + (w - k));
            } else {
                auto& fifo = slots[static_cast<std::size_t>(w)];
                if (fifo.empty())
                    throw std::logic_error(
                        "splice_gadget: inbound slots exhausted");
                list.push_back(w * m + fifo.front());
                fifo.pop_front();
            }
        }
    }
    for (auto& list : out.down) std::sort(list.rbegin(), list.rend());
    result.start = (k - 1) * m + gadget.entry;
    return result;
}

/// 8k vertices, 4k+2 facets; E(start) = k*43/8 - 1.
inline GeneratedInstance example2(int k) {
    if (k < 2) throw std::invalid_argument("example2: need k >= 2");
    return splice_gadget(backbone(k), example2_gadget());
}

/// 20k vertices, 10k+2 facets; E(start) = k*1721/128 - 1. The k = 1 member
/// is a single gadget copy plus an apex feeding its entry, side, and sink.
inline GeneratedInstance example3(int k) {
    if (k < 1) throw std::invalid_argument("example3: need k >= 1");
    const GadgetSpec gadget = example3_gadget();
    if (k == 1) {
        GeneratedInstance result;
        PolytopeDigraph& g = result.graph;
        const int m = gadget.internal_vertex_count;
        g.facet_count = 12;
        g.vertex_count = m + 1;
        g.down.assign(static_cast<std::size_t>(g.vertex_count), {});
        for (int v = 0; v < m; ++v)
            g.down[static_cast<std::size_t>(v)] =
                gadget.local_down_lists[static_cast<std::size_t>(v)];
        g.down[static_cast<std::size_t>(m)] = {
            gadget.entry, gadget.boundary_attachments.side_in, gadget.exit};
        for (auto& list : g.down) std::sort(list.rbegin(), list.rend());
        result.start = gadget.entry;
        return result;
    }
    return splice_gadget(backbone(k), gadget);
}

/// Closed-form values used as oracles against the exact engine:
/// dual_cyclic yields the lower-bound threshold (4n-14)/3 (an inequality
/// target, not an exact expectation); the other three are exact E(start).
inline Rational closed_form_expectation(Family family, int param) {
    switch (family) {
        case Family::dual_cyclic:
            return rational(4 * static_cast<long long>(param) - 14, 3);
        case Family::backbone:
            return Rational(param - 1);
        case Family::example2:
            return rational(43 * static_cast<long long>(param) - 8, 8);
        case Family::example3:
            return rational(1721 * static_cast<long long>(param) - 128, 128);
    }
    throw std::invalid_argument("closed_form_expectation: unknown family");
}

namespace detail {

struct GadgetCandidate {
    std::vector<std::vector<int>> down_lists;
    int side = 0;
};

/// Depth-first enumeration of internal gadget digraphs on m = 2*cost+1
/// vertices: local edges only descend, the top vertex is the unique source
/// with two down-edges, vertex 0 the unique sink with two inbound edges,
/// exactly one interior vertex has one inbound and one down edge (it takes
/// the side attachment), and every other interior vertex pairs one inbound
/// with two down or two inbound with one down (3-regular after splicing).
inline void enumerate_gadgets(int m,
                              std::vector<GadgetCandidate>& out) {
    std::vector<std::vector<int>> lists(static_cast<std::size_t>(m));
    std::vector<int> indeg(static_cast<std::size_t>(m), 0);
    int side_count = 0;
    int side_vertex = -1;

    // Vertices take their down-sets from the top down so that a vertex's
    // inbound degree is final when its own turn comes.
    std::function<void(int)> recurse = [&](int v) {
        if (v == 0) {
            if (indeg[0] == 2 && side_count == 1)
                out.push_back({lists, side_vertex});
            return;
        }
        const bool top = v == m - 1;
        const int in = indeg[static_cast<std::size_t>(v)];
        if (!top && (in < 1 || in > 2)) return;
        std::vector<int> choice;
        const auto apply = [&](int degree) {
            // Degree pattern bookkeeping for interior vertices.
            int is_side = 0;
            if (!top) {
                if (in + degree < 2 || in + degree > 3) return;
                is_side = (in == 1 && degree == 1) ? 1 : 0;
                if (side_count + is_side > 1) return;
            }
            choice.assign(static_cast<std::size_t>(degree), 0);
            // Enumerate descending index tuples.
            std::function<void(int, int)> pick = [&](int slot, int from) {
                if (slot == degree) {
                    lists[static_cast<std::size_t>(v)] = choice;
                    for (int w : choice) ++indeg[static_cast<std::size_t>(w)];
                    side_count += is_side;
                    if (is_side) side_vertex = v;
                    recurse(v - 1);
                    if (is_side) side_vertex = -1;
                    side_count -= is_side;
                    for (int w : choice) --indeg[static_cast<std::size_t>(w)];
                    return;
                }
                for (int w = from; w >= degree - slot - 1; --w) {
                    choice[static_cast<std::size_t>(slot)] = w;
                    pick(slot + 1, w - 1);
                }
            };
            pick(0, v - 1);
        };
        if (top) {
            apply(2);
        } else {
            apply(1);
            apply(2);
        }
        lists[static_cast<std::size_t>(v)].clear();
    };
    recurse(m - 1);
}

}  // namespace detail

/// Exhaustive search over gadget digraphs for the given per-copy facet cost
/// (2*cost+1 internal vertices). Candidates must produce a realizable
/// two-copy splice; the winner maximizes the expectation increment, with
/// ties broken toward the lexicographically smallest down-list table.
inline GadgetSpec gadget_search(int facet_cost, int vertex_budget,
                                int jobs = 1) {
    if (vertex_budget > 9)
        throw std::invalid_argument(
            "gadget_search: vertex budget capped at 9");
    if (facet_cost < 1)
        throw std::invalid_argument("gadget_search: need facet_cost >= 1");
    const int m = 2 * facet_cost + 1;
    if (m > vertex_budget)
        throw std::invalid_argument(
            "gadget_search: facet cost needs " + std::to_string(m) +
            " vertices, over the budget of " + std::to_string(vertex_budget));

    std::vector<detail::GadgetCandidate> candidates;
    detail::enumerate_gadgets(m, candidates);

    const PolytopeDigraph base = backbone(2);
    struct Best {
        bool found = false;
        Rational increment;
        std::vector<std::vector<int>> lists;
        int side = 0;
    };
    const auto consider = [&](const detail::GadgetCandidate& cand,
                              Best& best) {
        GadgetSpec spec = detail::make_gadget(
            facet_cost, cand.down_lists, cand.side);
        const auto spliced = splice_gadget(base, spec);
        if (!validate_mihalisin_klee(spliced.graph).realizable) return;
        // Normalized ascending lists for the deterministic tie-break.
        auto key = cand.down_lists;
        for (auto& l : key) std::sort(l.begin(), l.end());
        if (!best.found || spec.expected_increment > best.increment ||
            (spec.expected_increment == best.increment &&
             key < best.lists)) {
            best = {true, spec.expected_increment, std::move(key), cand.side};
        }
    };

    std::vector<Best> partial(static_cast<std::size_t>(std::max(jobs, 1)));
    if (jobs <= 1 || candidates.size() < 2) {
        for (const auto& cand : candidates) consider(cand, partial[0]);
    } else {
        std::vector<std::thread> workers;
        const std::size_t chunk =
            (candidates.size() + static_cast<std::size_t>(jobs) - 1) /
            static_cast<std::size_t>(jobs);
        for (int j = 0; j < jobs; ++j) {
            const std::size_t lo =
                std::min(candidates.size(), chunk * static_cast<std::size_t>(j));
            const std::size_t hi = std::min(candidates.size(), lo + chunk);
            workers.emplace_back([&, lo, hi, j] {
                for (std::size_t i = lo; i < hi; ++i)
                    consider(candidates[i], partial[static_cast<std::size_t>(j)]);
            });
        }
        for (auto& w : workers) w.join();
    }
    Best best;
    for (const auto& b : partial) {
        if (!b.found) continue;
        if (!best.found || b.increment > best.increment ||
            (b.increment == best.increment && b.lists < best.lists)) {
            best = b;
        }
    }
    if (!best.found)
        throw std::runtime_error("gadget_search: no admissible gadget found");
    // Stored tables keep the serializer's descending convention.
    auto lists = best.lists;
    for (auto& l : lists) std::sort(l.rbegin(), l.rend());
    return detail::make_gadget(facet_cost, std::move(lists), best.side);
}

}  // namespace redge
