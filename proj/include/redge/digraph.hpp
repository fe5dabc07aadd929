// Core digraph type and the DPG text format.
//
// A PolytopeDigraph stores an orientation of the edge graph of a simple
// 3-polytope by *down-lists*: vertex i records the heads of its out-edges,
// all of which must have smaller index. Index order is the height order (a
// fixed linear extension): in a well-formed instance 0 is the unique sink and
// the highest index the unique source. The text format (header "DPG 1")
// serializes the down-lists one vertex per line; parsing is purely syntactic
// plus index discipline and never checks polytope-ness, so malformed
// combinatorics can round-trip through files and be diagnosed by the
// validators.
#pragma once

#include <redge/rational.hpp>

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace redge {

struct PolytopeDigraph {
    int vertex_count = 0;
    int facet_count = 0;
    /// down[i] = indices j < i such that i -> j is an edge.
    std::vector<std::vector<int>> down;
    /// Optional combinatorial embedding: cyclic order of the three neighbors
    /// around each vertex. Empty when absent.
    std::vector<std::array<int, 3>> embed;

    bool has_embedding() const { return !embed.empty(); }

    int edge_count() const {
        std::size_t total = 0;
        for (const auto& d : down) total += d.size();
        return static_cast<int>(total);
    }

    int down_degree(int v) const {
        return static_cast<int>(down[static_cast<std::size_t>(v)].size());
    }

    /// Up-lists (tails of in-edges), derived from down-lists.
    std::vector<std::vector<int>> up_lists() const {
        std::vector<std::vector<int>> up(down.size());
        for (int v = 0; v < vertex_count; ++v)
            for (int w : down[static_cast<std::size_t>(v)])
                up[static_cast<std::size_t>(w)].push_back(v);
        return up;
    }

    /// Undirected adjacency lists.
    std::vector<std::vector<int>> adjacency() const {
        std::vector<std::vector<int>> adj(down.size());
        for (int v = 0; v < vertex_count; ++v)
            for (int w : down[static_cast<std::size_t>(v)]) {
                adj[static_cast<std::size_t>(v)].push_back(w);
                adj[static_cast<std::size_t>(w)].push_back(v);
            }
        return adj;
    }

    bool has_edge(int v, int w) const {  // directed v -> w
        const auto& d = down[static_cast<std::size_t>(v)];
        return std::find(d.begin(), d.end(), w) != d.end();
    }
};

struct ParsedDpg {
    PolytopeDigraph graph;
    std::optional<int> start;  ///< From a "# start: <i>" comment, if present.
};

class DpgParseError : public std::runtime_error {
public:
    DpgParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline std::string strip(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

inline bool parse_int(const std::string& tok, int& out) {
    if (tok.empty()) return false;
    std::size_t i = (tok[0] == '-') ? 1 : 0;
    if (i == tok.size()) return false;
    for (std::size_t k = i; k < tok.size(); ++k)
        if (tok[k] < '0' || tok[k] > '9') return false;
    try {
        out = std::stoi(tok);
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

}  // namespace detail

/// Parses the DPG v1 text format. Throws DpgParseError with a 1-based line
/// number on malformed input. Enforces syntax and index discipline (neighbors
/// strictly lower, no duplicates) but does NOT run polytope validation.
inline ParsedDpg parse_dpg(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    ParsedDpg result;
    PolytopeDigraph& g = result.graph;

    bool seen_header = false;
    bool seen_counts = false;
    int next_vertex = 1;  // vertex 0 has no down-list line
    int embed_next = -1;  // -1 until the first embed line

    auto next_line = [&](std::string& out) {
        while (std::getline(in, raw)) {
            ++line_no;
            std::string s = detail::strip(raw);
            if (s.empty()) continue;
            if (s[0] == '#') {
                std::string c = detail::strip(s.substr(1));
                if (c.rfind("start:", 0) == 0) {
                    int idx = 0;
                    if (detail::parse_int(detail::strip(c.substr(6)), idx))
                        result.start = idx;
                }
                continue;
            }
            out = s;
            return true;
        }
        return false;
    };

    std::string line;
    while (next_line(line)) {
        if (!seen_header) {
            if (line != "DPG 1")
                throw DpgParseError(line_no, "expected header \"DPG 1\"");
            seen_header = true;
            continue;
        }
        if (!seen_counts) {
            std::istringstream ls(line);
            std::string kw1, kw2, tv, tn, extra;
            int v = 0, n = 0;
            if (!(ls >> kw1 >> tv >> kw2 >> tn) || kw1 != "vertices" ||
                kw2 != "facets" || !detail::parse_int(tv, v) ||
                !detail::parse_int(tn, n) || (ls >> extra))
                throw DpgParseError(line_no,
                                    "expected \"vertices <V> facets <n>\"");
            if (v < 1)
                throw DpgParseError(line_no, "vertex count must be positive");
            g.vertex_count = v;
            g.facet_count = n;
            g.down.assign(static_cast<std::size_t>(v), {});
            seen_counts = true;
            continue;
        }

        if (line.rfind("embed", 0) == 0 &&
            (line.size() == 5 || line[5] == ' ' || line[5] == '\t')) {
            if (embed_next == -1) {
                if (next_vertex != g.vertex_count)
                    throw DpgParseError(
                        line_no, "embedding block before all vertex lines");
                embed_next = 0;
                g.embed.assign(static_cast<std::size_t>(g.vertex_count),
                               {-1, -1, -1});
            }
            std::istringstream ls(line);
            std::string kw, idx_tok;
            ls >> kw >> idx_tok;
            if (idx_tok.empty() || idx_tok.back() != ':')
                throw DpgParseError(line_no,
                                    "expected \"embed <i>: <a> <b> <c>\"");
            idx_tok.pop_back();
            int idx = 0;
            if (!detail::parse_int(idx_tok, idx) || idx != embed_next)
                throw DpgParseError(
                    line_no,
                    "embedding lines must cover vertices 0..V-1 in order; "
                    "expected vertex " +
                        std::to_string(embed_next));
            std::string ta, tb, tc, extra;
            if (!(ls >> ta >> tb >> tc) || (ls >> extra))
                throw DpgParseError(line_no,
                                    "expected exactly 3 neighbor indices");
            std::array<int, 3> cyc{};
            for (int k = 0; k < 3; ++k) {
                const std::string& tok = k == 0 ? ta : (k == 1 ? tb : tc);
                int val = 0;
                if (!detail::parse_int(tok, val) || val < 0 ||
                    val >= g.vertex_count)
                    throw DpgParseError(line_no,
                                        "bad neighbor index \"" + tok + "\"");
                cyc[static_cast<std::size_t>(k)] = val;
            }
            g.embed[static_cast<std::size_t>(idx)] = cyc;
            ++embed_next;
            continue;
        }

        if (embed_next != -1)
            throw DpgParseError(line_no, "vertex line after embedding block");

        // Vertex down-list line: "<i>: <j1> <j2> ...".
        const auto colon = line.find(':');
        if (colon == std::string::npos)
            throw DpgParseError(line_no, "expected \"<i>: <neighbors>\"");
        int idx = 0;
        if (!detail::parse_int(detail::strip(line.substr(0, colon)), idx))
            throw DpgParseError(line_no, "bad vertex index");
        if (idx >= g.vertex_count)
            throw DpgParseError(line_no, "vertex index " +
                                             std::to_string(idx) +
                                             " out of range");
        if (idx != next_vertex)
            throw DpgParseError(
                line_no,
                "vertex lines must cover 1..V-1 in increasing order; "
                "expected vertex " +
                    std::to_string(next_vertex));
        std::istringstream ls(line.substr(colon + 1));
        std::string tok;
        std::vector<int>& dl = g.down[static_cast<std::size_t>(idx)];
        while (ls >> tok) {
            int j = 0;
            if (!detail::parse_int(tok, j))
                throw DpgParseError(line_no, "bad neighbor \"" + tok + "\"");
            if (j < 0 || j >= g.vertex_count)
                throw DpgParseError(line_no, "neighbor index " +
                                                 std::to_string(j) +
                                                 " out of range");
            if (j >= idx)
                throw DpgParseError(line_no, "neighbor index " +
                                                 std::to_string(j) +
                                                 " not lower than vertex " +
                                                 std::to_string(idx));
            if (std::find(dl.begin(), dl.end(), j) != dl.end())
                throw DpgParseError(line_no, "duplicate neighbor " +
                                                 std::to_string(j));
            dl.push_back(j);
        }
        ++next_vertex;
    }

    if (!seen_header) throw DpgParseError(line_no, "missing header \"DPG 1\"");
    if (!seen_counts)
        throw DpgParseError(line_no, "missing \"vertices ... facets ...\"");
    if (next_vertex != g.vertex_count)
        throw DpgParseError(line_no, "missing line for vertex " +
                                         std::to_string(next_vertex));
    if (embed_next != -1 && embed_next != g.vertex_count)
        throw DpgParseError(line_no, "missing embedding for vertex " +
                                         std::to_string(embed_next));
    if (embed_next == g.vertex_count) {
        // Each cyclic order must list exactly the vertex's neighbors.
        const auto adj = g.adjacency();
        for (int v = 0; v < g.vertex_count; ++v) {
            std::vector<int> a = adj[static_cast<std::size_t>(v)];
            const auto& e = g.embed[static_cast<std::size_t>(v)];
            std::vector<int> b(e.begin(), e.end());
            std::sort(a.begin(), a.end());
            std::sort(b.begin(), b.end());
            if (a != b)
                throw DpgParseError(
                    line_no, "embedding of vertex " + std::to_string(v) +
                                 " does not list its neighbors");
        }
    }

    if (result.start &&
        (*result.start < 0 || *result.start >= g.vertex_count))
        result.start.reset();
    return result;
}

/// Reads a whole file and parses it as DPG v1. Throws std::runtime_error if
/// the file cannot be opened.
inline ParsedDpg parse_dpg_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dpg(buf.str());
}

/// Serializes to DPG v1 text. Neighbor lists are emitted in decreasing order,
/// which is the normal form: serialize(parse(t)) equals t up to that
/// normalization.
inline std::string serialize_dpg(const PolytopeDigraph& g,
                                 std::optional<int> start = std::nullopt) {
    std::ostringstream out;
    out << "DPG 1\n";
    if (start) out << "# start: " << *start << "\n";
    out << "vertices " << g.vertex_count << " facets " << g.facet_count
        << "\n";
    for (int i = 1; i < g.vertex_count; ++i) {
        out << i << ":";
        std::vector<int> sorted = g.down[static_cast<std::size_t>(i)];
        std::sort(sorted.rbegin(), sorted.rend());
        for (int j : sorted) out << ' ' << j;
        out << "\n";
    }
    if (g.has_embedding()) {
        for (int i = 0; i < g.vertex_count; ++i) {
            const auto& e = g.embed[static_cast<std::size_t>(i)];
            out << "embed " << i << ": " << e[0] << ' ' << e[1] << ' ' << e[2]
                << "\n";
        }
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Structural validation: counting checks every height-ordered orientation of
// a simple 3-polytope graph must satisfy.
// ---------------------------------------------------------------------------

struct ValidationReport {
    bool three_regular = false;        ///< every vertex has degree 3
    bool vertex_count_matches = false; ///< V == 2n - 4
    bool edge_count_matches = false;   ///< E == 3n - 6
    bool unique_extremes = false;      ///< one vertex each of down-degree 0, 3
    bool degree_counts_match = false;  ///< n-3 each of down-degree 1 and 2
    bool ok = false;
    std::vector<int> non_cubic_vertices;  ///< vertices with degree != 3

    std::string to_text() const {
        std::ostringstream out;
        auto line = [&](const char* name, bool v) {
            out << name << ": " << (v ? "pass" : "FAIL") << "\n";
        };
        line("three_regular", three_regular);
        line("vertex_count_2n_minus_4", vertex_count_matches);
        line("edge_count_3n_minus_6", edge_count_matches);
        line("unique_bottom_and_top", unique_extremes);
        line("one_two_vertex_counts", degree_counts_match);
        if (!non_cubic_vertices.empty()) {
            out << "non_cubic_vertices:";
            for (int v : non_cubic_vertices) out << ' ' << v;
            out << "\n";
        }
        line("structure", ok);
        return out.str();
    }
};

inline ValidationReport validate_polytope(const PolytopeDigraph& g) {
    ValidationReport r;
    const int n = g.facet_count;
    r.vertex_count_matches = (g.vertex_count == 2 * n - 4);
    r.edge_count_matches = (g.edge_count() == 3 * n - 6);

    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count), 0);
    for (int v = 0; v < g.vertex_count; ++v)
        for (int w : g.down[static_cast<std::size_t>(v)]) {
            ++degree[static_cast<std::size_t>(v)];
            ++degree[static_cast<std::size_t>(w)];
        }
    for (int v = 0; v < g.vertex_count; ++v)
        if (degree[static_cast<std::size_t>(v)] != 3)
            r.non_cubic_vertices.push_back(v);
    r.three_regular = r.non_cubic_vertices.empty();

    std::array<int, 5> histogram{0, 0, 0, 0, 0};
    for (const auto& d : g.down)
        ++histogram[std::min<std::size_t>(d.size(), 4)];
    r.unique_extremes = histogram[0] == 1 && histogram[3] == 1 &&
                        histogram[4] == 0;
    r.degree_counts_match =
        histogram[1] == n - 3 && histogram[2] == n - 3 && histogram[4] == 0;

    r.ok = r.three_regular && r.vertex_count_matches && r.edge_count_matches &&
           r.unique_extremes && r.degree_counts_match;
    return r;
}

// ---------------------------------------------------------------------------
// Per-vertex counting profiles used by the expectation bounds.
// ---------------------------------------------------------------------------

struct VertexProfile {
    int down_degree = 0;
    int n1_below = 0;  ///< down-degree-1 vertices with index <= this vertex
    int n2_below = 0;  ///< down-degree-2 vertices with index <= this vertex
    int n_below = 0;   ///< n1_below + n2_below
};

/// Profiles for all vertices in one pass. For polytope-valid instances
/// n_below(v) equals v for v < v_max and 2n-6 for v_max itself.
inline std::vector<VertexProfile> vertex_profiles(const PolytopeDigraph& g) {
    std::vector<VertexProfile> p(static_cast<std::size_t>(g.vertex_count));
    int n1 = 0, n2 = 0;
    for (int v = 0; v < g.vertex_count; ++v) {
        const int d = g.down_degree(v);
        if (d == 1) ++n1;
        if (d == 2) ++n2;
        auto& pr = p[static_cast<std::size_t>(v)];
        pr.down_degree = d;
        pr.n1_below = n1;
        pr.n2_below = n2;
        pr.n_below = n1 + n2;
    }
    return p;
}

inline VertexProfile vertex_profile(const PolytopeDigraph& g, int v) {
    if (v < 0 || v >= g.vertex_count)
        throw std::out_of_range("vertex_profile: index out of range");
    return vertex_profiles(g)[static_cast<std::size_t>(v)];
}

struct DeltaPair {
    int delta_1 = 0;  ///< N1(v) - N1(w)
    int delta = 0;    ///< number of indices in the interval (w, v]
};

/// Index-interval counts between two vertices, w strictly below v. delta is
/// one plus the number of vertices strictly between w and v.
inline DeltaPair deltas(const PolytopeDigraph& g, int v, int w) {
    if (v < 0 || v >= g.vertex_count || w < 0 || w >= g.vertex_count)
        throw std::out_of_range("deltas: vertex index out of range");
    if (w >= v) throw std::invalid_argument("deltas: w must be lower than v");
    const auto profiles = vertex_profiles(g);
    DeltaPair d;
    d.delta_1 = profiles[static_cast<std::size_t>(v)].n1_below -
                profiles[static_cast<std::size_t>(w)].n1_below;
    d.delta = v - w;
    return d;
}

class InstanceTooLarge : public std::runtime_error {
public:
    explicit InstanceTooLarge(const std::string& what)
        : std::runtime_error(what) {}
};

/// True iff the orientation admits a directed Hamiltonian path. Every edge
/// decreases the index, so such a path must be V-1, V-2, ..., 0; it exists
/// exactly when each consecutive pair i+1 -> i is an edge. The cap guards the
/// documented interface; the check itself is linear.
inline bool has_directed_hamiltonian_path(const PolytopeDigraph& g,
                                          int vertex_cap = 64) {
    if (g.vertex_count > vertex_cap)
        throw InstanceTooLarge("has_directed_hamiltonian_path: " +
                               std::to_string(g.vertex_count) +
                               " vertices exceeds cap " +
                               std::to_string(vertex_cap));
    for (int v = 1; v < g.vertex_count; ++v)
        if (!g.has_edge(v, v - 1)) return false;
    return true;
}

}  // namespace redge
