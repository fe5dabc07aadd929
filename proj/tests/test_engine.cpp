// Exact expectation engine: recurrence values, the flow view, the seeded
// walk, and the per-vertex linear bound check.
#include <catch2/catch_amalgamated.hpp>

#include <redge/engine.hpp>

#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "fixtures.hpp"

using redge::PolytopeDigraph;
using redge::Rational;
using fixtures::make_graph;

namespace {

Rational rat(long long p, long long q = 1) { return redge::rational(p, q); }

/// Five facets, six vertices: the triangular-prism wedge, the mid-size exact
/// fixture. Expectations are hand-evaluated below. Its vertex v4 (downs
/// {3, 2}) is the deep configuration whose E = 3 exceeds the linear form's
/// 260/87 at the optimum coefficients.
PolytopeDigraph dc5() {
    return make_graph(5, {{}, {0}, {1}, {2, 0}, {3, 2}, {4, 1, 0}});
}

/// A different admissible prism orientation: its 2-vertex v2 sits directly
/// above the sink triangle, where E = 3/2 exceeds the linear form's 130/87.
PolytopeDigraph prism_bottom_violator() {
    return make_graph(5, {{}, {0}, {1, 0}, {0}, {3, 1}, {4, 3, 2}});
}

/// Brute-force oracle: sum path probabilities over every directed walk from
/// `start` to the sink, accumulating per-edge mass.
std::map<std::pair<int, int>, Rational> path_flow(const PolytopeDigraph& g,
                                                  int start) {
    std::map<std::pair<int, int>, Rational> acc;
    std::function<void(int, Rational)> walk = [&](int v, Rational p) {
        const auto& d = g.down[static_cast<std::size_t>(v)];
        if (d.empty()) return;
        const Rational share = p / static_cast<int>(d.size());
        for (int w : d) {
            acc[{v, w}] += share;
            walk(w, share);
        }
    };
    walk(start, Rational(1));
    return acc;
}

void require_flow_matches_oracle(const PolytopeDigraph& g, int start) {
    const auto ep = redge::edge_probabilities(g, start);
    const auto oracle = path_flow(g, start);
    for (std::size_t i = 0; i < ep.edges.size(); ++i) {
        const auto key = std::make_pair(ep.edges[i].from, ep.edges[i].to);
        const auto it = oracle.find(key);
        const Rational want = it == oracle.end() ? Rational(0) : it->second;
        REQUIRE(ep.prob[i] == want);
    }
}

void require_recurrence_holds(const PolytopeDigraph& g) {
    const auto table = redge::expected_steps(g);
    REQUIRE(table.at(0) == 0);
    for (int v = 1; v < g.vertex_count; ++v) {
        const auto& d = g.down[static_cast<std::size_t>(v)];
        Rational sum = 0;
        for (int w : d) sum += table.at(w);
        REQUIRE((table.at(v) - 1) * static_cast<int>(d.size()) == sum);
        REQUIRE(table.at(v) >= 1);
    }
}

}  // namespace

TEST_CASE("expected steps on the tetrahedron", "[engine]") {
    const auto table = redge::expected_steps(fixtures::tetrahedron());
    REQUIRE(table.values.size() == 4);
    REQUIRE(table.at(0) == 0);
    REQUIRE(table.at(1) == 1);
    REQUIRE(table.at(2) == rat(3, 2));
    REQUIRE(table.at(3) == rat(11, 6));
}

TEST_CASE("expected steps on hand-evaluated fixtures", "[engine]") {
    SECTION("five-facet wedge") {
        const auto table = redge::expected_steps(dc5());
        const std::vector<Rational> want = {rat(0), rat(1), rat(2),
                                            rat(2), rat(3), rat(7, 3)};
        REQUIRE(table.values == want);
    }
    SECTION("prism with the low 2-vertex") {
        const auto table = redge::expected_steps(prism_bottom_violator());
        const std::vector<Rational> want = {rat(0),    rat(1), rat(3, 2),
                                            rat(1), rat(2), rat(5, 2)};
        REQUIRE(table.values == want);
    }
    SECTION("cube") {
        const auto table = redge::expected_steps(fixtures::cube());
        const std::vector<Rational> want = {rat(0), rat(1), rat(1), rat(2),
                                            rat(1), rat(2), rat(2), rat(3)};
        REQUIRE(table.values == want);
    }
}

TEST_CASE("expectation recurrence re-verified after construction", "[engine]") {
    require_recurrence_holds(fixtures::tetrahedron());
    require_recurrence_holds(dc5());
    require_recurrence_holds(fixtures::cube());
    require_recurrence_holds(prism_bottom_violator());
}

TEST_CASE("expected steps refuses a second sink", "[engine]") {
    // Vertex 2 has no downward edge, so the walk from above it never ends.
    const auto g = make_graph(4, {{}, {0}, {}, {2, 1, 0}});
    REQUIRE_THROWS_MATCHES(
        redge::expected_steps(g), redge::SinkNotUnique,
        Catch::Matchers::MessageMatches(
            Catch::Matchers::ContainsSubstring("vertex 2")));
    REQUIRE_THROWS_AS(redge::edge_probabilities(g, 3), redge::SinkNotUnique);
    REQUIRE_THROWS_AS(redge::simulate(g, 3, 10, 1), redge::SinkNotUnique);
}

TEST_CASE("edge probabilities on the tetrahedron from the top", "[engine]") {
    const auto ep = redge::edge_probabilities(fixtures::tetrahedron(), 3);
    REQUIRE(ep.start == 3);
    // Serialized edge order: tails ascending, heads descending per tail.
    const std::vector<std::pair<int, int>> want_edges = {
        {1, 0}, {2, 1}, {2, 0}, {3, 2}, {3, 1}, {3, 0}};
    REQUIRE(ep.edges.size() == want_edges.size());
    for (std::size_t i = 0; i < want_edges.size(); ++i) {
        REQUIRE(ep.edges[i].from == want_edges[i].first);
        REQUIRE(ep.edges[i].to == want_edges[i].second);
    }
    const std::vector<Rational> want_prob = {rat(1, 2), rat(1, 6), rat(1, 6),
                                             rat(1, 3), rat(1, 3), rat(1, 3)};
    REQUIRE(ep.prob == want_prob);
    REQUIRE(ep.total() == rat(11, 6));
}

TEST_CASE("edge probabilities from a mid vertex leave higher edges dry",
          "[engine]") {
    const auto g = fixtures::tetrahedron();
    const auto ep = redge::edge_probabilities(g, 1);
    for (std::size_t i = 0; i < ep.edges.size(); ++i) {
        if (ep.edges[i].from == 1 && ep.edges[i].to == 0) {
            REQUIRE(ep.prob[i] == 1);
        } else {
            REQUIRE(ep.prob[i] == 0);
        }
    }
    REQUIRE(ep.total() == 1);
}

TEST_CASE("total edge mass equals the expectation for every start",
          "[engine]") {
    for (const auto& g : {fixtures::tetrahedron(), dc5(), fixtures::cube()}) {
        const auto table = redge::expected_steps(g);
        for (int s = 0; s < g.vertex_count; ++s) {
            REQUIRE(redge::edge_probabilities(g, s).total() == table.at(s));
        }
    }
}

TEST_CASE("flow conservation at interior vertices", "[engine]") {
    const auto g = dc5();
    const int start = 5;
    const auto ep = redge::edge_probabilities(g, start);
    std::vector<Rational> in(static_cast<std::size_t>(g.vertex_count), 0);
    std::vector<Rational> out(static_cast<std::size_t>(g.vertex_count), 0);
    for (std::size_t i = 0; i < ep.edges.size(); ++i) {
        out[static_cast<std::size_t>(ep.edges[i].from)] += ep.prob[i];
        in[static_cast<std::size_t>(ep.edges[i].to)] += ep.prob[i];
    }
    REQUIRE(out[static_cast<std::size_t>(start)] == 1);
    for (int v = 1; v < g.vertex_count; ++v) {
        if (v == start) continue;
        REQUIRE(in[static_cast<std::size_t>(v)] ==
                out[static_cast<std::size_t>(v)]);
    }
    REQUIRE(in[0] == 1);
}

TEST_CASE("edge probabilities match the path-enumeration oracle", "[engine]") {
    require_flow_matches_oracle(fixtures::tetrahedron(), 3);
    require_flow_matches_oracle(fixtures::tetrahedron(), 2);
    require_flow_matches_oracle(dc5(), 5);
    require_flow_matches_oracle(dc5(), 4);
    require_flow_matches_oracle(fixtures::cube(), 7);
    require_flow_matches_oracle(fixtures::cube(), 3);
}

TEST_CASE("generator matches the reference stream", "[engine]") {
    // First outputs of the documented generator from internal state zero.
    redge::detail::SplitMix64 gen{0};
    REQUIRE(gen.next() == 0xE220A8397B1DCDAFULL);
    REQUIRE(gen.next() == 0x6E789E6AA1B965F4ULL);
    REQUIRE(gen.next() == 0x06C45D188009454FULL);
}

TEST_CASE("trial streams are pinned", "[engine]") {
    redge::detail::TrialBits bits(5, 7);
    REQUIRE(bits.gen.state == 0x8DB61B2A65965BDAULL);
    const std::vector<int> want = {1, 0, 1, 0, 0, 0, 1, 1,
                                   0, 1, 1, 1, 0, 0, 0, 0};
    for (int b : want) REQUIRE(bits.take_bit() == b);
}

TEST_CASE("trit extraction stays in range and rejects the high pattern",
          "[engine]") {
    redge::detail::TrialBits bits(99, 3);
    for (int i = 0; i < 200; ++i) {
        const int t = bits.take_trit();
        REQUIRE(t >= 0);
        REQUIRE(t <= 2);
    }
}

TEST_CASE("simulation from the sink is a point mass at zero", "[engine]") {
    const auto stats = redge::simulate(fixtures::tetrahedron(), 0, 1000, 7);
    REQUIRE(stats.mean == 0);
    REQUIRE(stats.sample_variance == 0);
    REQUIRE(stats.histogram.size() == 1);
    REQUIRE(stats.histogram.at(0) == 1000);
    REQUIRE(stats.mean_decimal() == "0.000000");
}

TEST_CASE("simulation is deterministic for a fixed seed", "[engine]") {
    const auto g = dc5();
    const auto a = redge::simulate(g, 5, 2000, 12345);
    const auto b = redge::simulate(g, 5, 2000, 12345);
    REQUIRE(a.histogram == b.histogram);
    REQUIRE(a.mean == b.mean);
    REQUIRE(a.sample_variance == b.sample_variance);
    const auto c = redge::simulate(g, 5, 2000, 54321);
    REQUIRE(a.histogram != c.histogram);
}

TEST_CASE("simulation histogram is independent of the worker count",
          "[engine]") {
    const auto g = fixtures::tetrahedron();
    const auto base = redge::simulate(g, 3, 1001, 2024, 1);
    for (int jobs : {2, 3, 4, 8}) {
        const auto split = redge::simulate(g, 3, 1001, 2024, jobs);
        REQUIRE(split.histogram == base.histogram);
        REQUIRE(split.mean == base.mean);
        REQUIRE(split.sample_variance == base.sample_variance);
    }
    // More workers than trials.
    const auto tiny1 = redge::simulate(g, 3, 3, 5, 1);
    const auto tiny8 = redge::simulate(g, 3, 3, 5, 8);
    REQUIRE(tiny1.histogram == tiny8.histogram);
}

TEST_CASE("simulation statistics are internally consistent", "[engine]") {
    const auto g = fixtures::tetrahedron();
    const auto stats = redge::simulate(g, 3, 100000, 42);
    std::uint64_t total = 0;
    redge::BigInt weighted = 0;
    for (const auto& [len, count] : stats.histogram) {
        REQUIRE(len >= 1);
        REQUIRE(len <= 3);  // walk lengths possible from the top
        total += count;
        weighted += redge::BigInt(len) * count;
    }
    REQUIRE(total == stats.trials);
    REQUIRE(stats.mean == Rational(weighted, redge::BigInt(total)));
}

TEST_CASE("simulated mean lands within four standard errors", "[engine]") {
    const auto g = fixtures::tetrahedron();
    const Rational exact = rat(11, 6);
    const auto stats = redge::simulate(g, 3, 100000, 42);
    const Rational diff = stats.mean - exact;
    // (mean - E)^2 * T <= 16 * variance, exactly.
    REQUIRE(diff * diff * 100000 <= 16 * stats.sample_variance);
}

TEST_CASE("per-vertex bound margins on the tetrahedron", "[engine]") {
    const Rational alpha = rat(46, 87);
    const Rational beta = rat(42, 87);
    const auto report =
        redge::check_expectation_bounds(fixtures::tetrahedron(), alpha, beta);
    REQUIRE(report.margins.size() == 3);
    REQUIRE(report.margins[0].vertex == 0);
    REQUIRE(report.margins[0].margin == 0);
    REQUIRE(report.margins[1].margin == rat(1, 87));
    // The 2-vertex directly above the sink's triangle: E = 3/2 while the
    // linear form gives 130/87, so the check must flag a deficit of 1/174.
    REQUIRE(report.margins[2].expected == rat(3, 2));
    REQUIRE(report.margins[2].bound == rat(130, 87));
    REQUIRE(report.margins[2].margin == rat(-1, 174));
    REQUIRE_FALSE(report.per_vertex_ok);
    // The instance-level cap still holds: max E is 11/6 < 175/87.
    REQUIRE(report.global_ok);
    REQUIRE(report.global_violations.empty());
    REQUIRE_FALSE(report.ok());
}

TEST_CASE("deep deficit on the five-facet wedge", "[engine]") {
    const auto report =
        redge::check_expectation_bounds(dc5(), rat(46, 87), rat(42, 87));
    // Margins from the bottom up: 0, 1/87, 2/87, 44/87, then the deep
    // configuration at v4 comes out 1/87 short.
    REQUIRE(report.margins[0].margin == 0);
    REQUIRE(report.margins[1].margin == rat(1, 87));
    REQUIRE(report.margins[2].margin == rat(2, 87));
    REQUIRE(report.margins[3].margin == rat(44, 87));
    REQUIRE(report.margins[4].expected == 3);
    REQUIRE(report.margins[4].bound == rat(260, 87));
    REQUIRE(report.margins[4].margin == rat(-1, 87));
    REQUIRE_FALSE(report.per_vertex_ok);
    // The instance-level cap 305/87 still clears every vertex.
    REQUIRE(report.global_ok);
    REQUIRE_FALSE(report.ok());
}

TEST_CASE("bottom deficit on the other prism orientation", "[engine]") {
    const auto report = redge::check_expectation_bounds(
        prism_bottom_violator(), rat(46, 87), rat(42, 87));
    REQUIRE_FALSE(report.per_vertex_ok);
    REQUIRE(report.margins[2].expected == rat(3, 2));
    REQUIRE(report.margins[2].bound == rat(130, 87));
    REQUIRE(report.margins[2].margin == rat(-1, 174));
    // The deep slot passes here: E(v4) = 2 against 260/87.
    REQUIRE(report.margins[4].margin == rat(86, 87));
    REQUIRE(report.global_ok);
}

TEST_CASE("coefficient pair summing to three halves clears the bottom",
          "[engine]") {
    // alpha + 2*beta = 3/2 is exactly what the bottom 2-vertex requires.
    const auto report = redge::check_expectation_bounds(fixtures::tetrahedron(),
                                                        rat(1, 2), rat(1, 2));
    REQUIRE(report.per_vertex_ok);
    REQUIRE(report.margins[2].margin == 0);
    REQUIRE(report.global_ok);
}

TEST_CASE("zero coefficients trip the instance-level cap", "[engine]") {
    const auto report = redge::check_expectation_bounds(fixtures::tetrahedron(),
                                                        rat(0), rat(0));
    REQUIRE_FALSE(report.global_ok);
    REQUIRE(report.global_violations == std::vector<int>{2, 3});
}
