// Exact Random Edge engine.
//
// expected_steps evaluates E(v) = 1 + (1/d_v) * sum of E over down-neighbors
// bottom-up in exact rationals (the index order is a topological order).
// edge_probabilities gives the traversal-probability view: the walk from a
// start vertex induces a unit flow whose total edge mass equals E(start).
// simulate cross-checks the exact values with a reproducible seeded walk, and
// check_expectation_bounds verifies the per-vertex linear bound
// E(v) <= alpha*N1(v) + beta*N(v) plus the global bound for a given (alpha,
// beta) pair.
//
// PRNG contract (pinned; never change silently): trial t of a run with seed s
// uses an independent splitmix64 stream with initial internal state
// mix64(s ^ mix64(t * 0x9E3779B97F4A7C15)), where mix64 is the splitmix64
// output permutation. Down-neighbor choices consume bits most-significant
// first from each 64-bit output: 1 bit for two candidates, 2 bits with
// rejection of the value 3 for three candidates. Trials are therefore
// independent of worker partitioning.
#pragma once

#include <redge/digraph.hpp>
#include <redge/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace redge {

class SinkNotUnique : public std::runtime_error {
public:
    explicit SinkNotUnique(int vertex)
        : std::runtime_error(
              "vertex " + std::to_string(vertex) +
              " has no down-neighbor; expectation undefined above a second "
              "sink") {}
};

struct ExpectationTable {
    std::vector<Rational> values;

    const Rational& at(int v) const {
        return values.at(static_cast<std::size_t>(v));
    }
};

/// Exact expected number of steps from every vertex to the bottom vertex.
inline ExpectationTable expected_steps(const PolytopeDigraph& g) {
    ExpectationTable table;
    table.values.assign(static_cast<std::size_t>(g.vertex_count), Rational(0));
    for (int v = 1; v < g.vertex_count; ++v) {
        const auto& down = g.down[static_cast<std::size_t>(v)];
        if (down.empty()) throw SinkNotUnique(v);
        Rational sum = 0;
        for (int w : down) sum += table.values[static_cast<std::size_t>(w)];
        table.values[static_cast<std::size_t>(v)] =
            1 + sum / static_cast<int>(down.size());
    }
    return table;
}

struct DirectedEdge {
    int from = 0;
    int to = 0;
};

struct EdgeProbabilities {
    int start = 0;
    /// Edges in serialization order: tail ascending, head descending.
    std::vector<DirectedEdge> edges;
    std::vector<Rational> prob;

    Rational total() const {
        Rational sum = 0;
        for (const auto& p : prob) sum += p;
        return sum;
    }
};

/// Traversal probability of every directed edge for the walk started at
/// `start`: the visit probability of a vertex splits equally among its
/// down-edges. The probabilities form a flow of value 1 from start to the
/// bottom vertex, and their sum equals E(start).
inline EdgeProbabilities edge_probabilities(const PolytopeDigraph& g,
                                            int start) {
    if (start < 0 || start >= g.vertex_count)
        throw std::out_of_range("edge_probabilities: start out of range");
    for (int v = 1; v < g.vertex_count; ++v)
        if (g.down[static_cast<std::size_t>(v)].empty())
            throw SinkNotUnique(v);

    std::vector<Rational> visit(static_cast<std::size_t>(g.vertex_count),
                                Rational(0));
    visit[static_cast<std::size_t>(start)] = 1;
    std::map<std::pair<int, int>, Rational> flow;
    for (int v = g.vertex_count - 1; v >= 1; --v) {
        const auto& down = g.down[static_cast<std::size_t>(v)];
        if (visit[static_cast<std::size_t>(v)] == 0 || down.empty()) continue;
        const Rational share =
            visit[static_cast<std::size_t>(v)] / static_cast<int>(down.size());
        for (int w : down) {
            flow[{v, w}] = share;
            visit[static_cast<std::size_t>(w)] += share;
        }
    }

    EdgeProbabilities result;
    result.start = start;
    for (int v = 1; v < g.vertex_count; ++v) {
        std::vector<int> heads = g.down[static_cast<std::size_t>(v)];
        std::sort(heads.rbegin(), heads.rend());
        for (int w : heads) {
            result.edges.push_back({v, w});
            const auto it = flow.find({v, w});
            result.prob.push_back(it == flow.end() ? Rational(0) : it->second);
        }
    }
    return result;
}

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        state += 0x9E3779B97F4A7C15ULL;
        return mix64(state);
    }
};

/// Per-trial bit source; see the PRNG contract in the file comment.
struct TrialBits {
    SplitMix64 gen;
    std::uint64_t buffer = 0;
    int available = 0;

    TrialBits(std::uint64_t seed, std::uint64_t trial) {
        gen.state = mix64(seed ^ mix64(trial * 0x9E3779B97F4A7C15ULL));
    }

    int take_bit() {
        if (available == 0) {
            buffer = gen.next();
            available = 64;
        }
        const int bit = static_cast<int>(buffer >> 63);
        buffer <<= 1;
        --available;
        return bit;
    }

    /// Uniform value in {0, 1, 2}: two bits, rejecting the pattern 11.
    int take_trit() {
        for (;;) {
            const int hi = take_bit();
            const int lo = take_bit();
            const int v = 2 * hi + lo;
            if (v < 3) return v;
        }
    }
};

}  // namespace detail

struct SimulationStats {
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    Rational mean;             ///< exact sample mean
    Rational sample_variance;  ///< exact unbiased sample variance
    std::map<int, std::uint64_t> histogram;  ///< path length -> count

    std::string mean_decimal() const { return to_decimal_string(mean); }
    std::string variance_decimal() const {
        return to_decimal_string(sample_variance);
    }
};

/// Runs `trials` seeded Random Edge walks from `start`. Deterministic given
/// (graph, start, trials, seed); the histogram is independent of `jobs`
/// because trials own their substreams by index.
inline SimulationStats simulate(const PolytopeDigraph& g, int start,
                                std::uint64_t trials, std::uint64_t seed,
                                int jobs = 1) {
    if (start < 0 || start >= g.vertex_count)
        throw std::out_of_range("simulate: start out of range");
    if (trials < 1) throw std::invalid_argument("simulate: trials must be >=1");
    if (jobs < 1) jobs = 1;
    for (int v = 1; v < g.vertex_count; ++v)
        if (g.down[static_cast<std::size_t>(v)].empty()) throw SinkNotUnique(v);

    // Down-lists sorted ascending: the PRNG contract indexes candidates in
    // increasing vertex order.
    std::vector<std::vector<int>> down_sorted(g.down);
    for (auto& d : down_sorted) std::sort(d.begin(), d.end());

    auto run_range = [&](std::uint64_t lo, std::uint64_t hi,
                         std::map<int, std::uint64_t>& hist) {
        for (std::uint64_t t = lo; t < hi; ++t) {
            detail::TrialBits bits(seed, t);
            int v = start;
            int steps = 0;
            while (!down_sorted[static_cast<std::size_t>(v)].empty()) {
                const auto& d = down_sorted[static_cast<std::size_t>(v)];
                int pick = 0;
                if (d.size() == 2)
                    pick = bits.take_bit();
                else if (d.size() == 3)
                    pick = bits.take_trit();
                v = d[static_cast<std::size_t>(pick)];
                ++steps;
            }
            ++hist[steps];
        }
    };

    std::vector<std::map<int, std::uint64_t>> partial(
        static_cast<std::size_t>(jobs));
    if (jobs == 1) {
        run_range(0, trials, partial[0]);
    } else {
        std::vector<std::thread> workers;
        const std::uint64_t chunk =
            (trials + static_cast<std::uint64_t>(jobs) - 1) /
            static_cast<std::uint64_t>(jobs);
        for (int j = 0; j < jobs; ++j) {
            const std::uint64_t lo =
                std::min(trials, chunk * static_cast<std::uint64_t>(j));
            const std::uint64_t hi = std::min(trials, lo + chunk);
            workers.emplace_back(
                [&, lo, hi, j] { run_range(lo, hi, partial[static_cast<std::size_t>(j)]); });
        }
        for (auto& w : workers) w.join();
    }

    SimulationStats stats;
    stats.trials = trials;
    stats.seed = seed;
    for (const auto& h : partial)
        for (const auto& [len, count] : h) stats.histogram[len] += count;

    BigInt sum = 0;
    BigInt sum_sq = 0;
    for (const auto& [len, count] : stats.histogram) {
        sum += BigInt(len) * count;
        sum_sq += BigInt(len) * len * count;
    }
    stats.mean = Rational(sum, BigInt(trials));
    if (trials > 1) {
        // Unbiased: (sum_sq - trials*mean^2) / (trials - 1), exactly.
        const Rational mean_sq = stats.mean * stats.mean;
        stats.sample_variance =
            (Rational(sum_sq) - Rational(BigInt(trials)) * mean_sq) /
            Rational(BigInt(trials - 1));
    } else {
        stats.sample_variance = 0;
    }
    return stats;
}

struct VertexBoundMargin {
    int vertex = 0;
    Rational expected;
    Rational bound;
    Rational margin;  ///< bound - expected; negative = violation
};

struct BoundCheckReport {
    bool per_vertex_ok = false;  ///< E(v) <= alpha*N1(v)+beta*N(v), v != top
    bool global_ok = false;      ///< E(v) <= 1+alpha*(n-3)+beta*(2n-7), all v
    std::vector<VertexBoundMargin> margins;     ///< one entry per v != top
    std::vector<int> global_violations;

    bool ok() const { return per_vertex_ok && global_ok; }
};

/// Exact per-vertex check of E(v) <= alpha*N1(v) + beta*N(v) for every vertex
/// except the top one, plus the instance-level cap 1+alpha(n-3)+beta(2n-7)
/// for every vertex including the top.
inline BoundCheckReport check_expectation_bounds(const PolytopeDigraph& g,
                                                 const Rational& alpha,
                                                 const Rational& beta) {
    BoundCheckReport report;
    const ExpectationTable table = expected_steps(g);
    const auto profiles = vertex_profiles(g);
    report.per_vertex_ok = true;
    for (int v = 0; v + 1 < g.vertex_count; ++v) {
        const auto& p = profiles[static_cast<std::size_t>(v)];
        VertexBoundMargin m;
        m.vertex = v;
        m.expected = table.values[static_cast<std::size_t>(v)];
        m.bound = alpha * p.n1_below + beta * p.n_below;
        m.margin = m.bound - m.expected;
        if (m.margin < 0) report.per_vertex_ok = false;
        report.margins.push_back(std::move(m));
    }
    const int n = g.facet_count;
    const Rational global_cap =
        Rational(1) + alpha * (n - 3) + beta * (2 * n - 7);
    report.global_ok = true;
    for (int v = 0; v < g.vertex_count; ++v)
        if (table.values[static_cast<std::size_t>(v)] > global_cap) {
            report.global_ok = false;
            report.global_violations.push_back(v);
        }
    return report;
}

}  // namespace redge
