// Command-line front end for the Random Edge laboratory.
//
// One binary, one subcommand per library capability.  Every command writes a
// deterministic text report; numbers are exact fractions first, decimals
// (6 places, half-even) second.  Exit codes: 0 = success, 1 = a checked
// property failed (instance not realizable, certificate infeasible,
// reproduction mismatch), 2 = bad input (unparseable file, bad flag, size
// guard).
//
// Output plumbing: a command's report goes to stdout unless --quiet; when
// --out is given the report is also written there.  For gen and export the
// product *is* the data file, which goes to --out when given, else stdout.
// For enumerate, --out receives the witness instance while the report stays
// on stdout.

#include <CLI11.hpp>

#include <redge/cert.hpp>
#include <redge/constructions.hpp>
#include <redge/digraph.hpp>
#include <redge/engine.hpp>
#include <redge/enumeration.hpp>
#include <redge/mk.hpp>
#include <redge/rational.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using redge::PolytopeDigraph;
using redge::Rational;

std::string frac(const Rational& r) { return redge::to_fraction_string(r); }

std::string frac_dec(const Rational& r) {
    return redge::to_fraction_string(r) + " ~ " + redge::to_decimal_string(r);
}

/// Renders a pair of rationals over their least common denominator so both
/// coordinates share one scale ("46/87 42/87" rather than "46/87 14/29").
std::string pair_over_common_denominator(const Rational& a, const Rational& b) {
    using boost::multiprecision::cpp_int;
    const cpp_int da = denominator(a);
    const cpp_int db = denominator(b);
    const cpp_int l = lcm(da, db);
    const auto one = [&](const Rational& r, const cpp_int& d) {
        std::ostringstream s;
        s << numerator(r) * (l / d);
        if (l != 1) s << "/" << l;
        return s.str();
    };
    return one(a, da) + " " + one(b, db);
}

Rational parse_rational_arg(const std::string& text, const std::string& what) {
    const auto r = redge::parse_rational(text);
    if (!r) throw std::runtime_error(what + ": cannot parse '" + text + "'");
    return *r;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
    f.flush();
    if (!f) throw std::runtime_error("write failed: " + path);
}

/// Shared --out / --quiet plumbing.
struct OutputSink {
    std::string out_path;
    bool quiet = false;

    /// Textual report: stdout unless --quiet, copied to --out when given.
    void report(const std::string& text) const {
        if (!out_path.empty()) write_file(out_path, text);
        if (!quiet) std::cout << text;
    }

    /// Generated data (DPG / DOT): --out when given, else stdout.
    void document(const std::string& text) const {
        if (!out_path.empty())
            write_file(out_path, text);
        else
            std::cout << text;
    }
};

PolytopeDigraph load_graph(const std::string& path) {
    return redge::parse_dpg_file(path).graph;
}

/// The designated default start: the top vertex (no up-neighbor).  For a
/// valid instance it is unique; ties break to the largest index.
int default_start(const PolytopeDigraph& g) {
    std::vector<int> up_degree(static_cast<std::size_t>(g.vertex_count), 0);
    for (const auto& downs : g.down)
        for (int w : downs) up_degree[static_cast<std::size_t>(w)]++;
    for (int v = g.vertex_count - 1; v >= 0; --v)
        if (up_degree[static_cast<std::size_t>(v)] == 0) return v;
    throw std::runtime_error("no start vertex: every vertex has an up-edge");
}

void check_start(const PolytopeDigraph& g, int start) {
    if (start < 0 || start >= g.vertex_count)
        throw std::runtime_error("start vertex " + std::to_string(start) +
                                 " out of range [0, " +
                                 std::to_string(g.vertex_count - 1) + "]");
}

// ---------------------------------------------------------------------------
// Individual commands.
// ---------------------------------------------------------------------------

int run_validate(const OutputSink& sink, const std::string& in_path) {
    const PolytopeDigraph g = load_graph(in_path);
    const auto structure = redge::validate_polytope(g);
    const auto mk = redge::validate_mihalisin_klee(g);
    std::ostringstream out;
    out << "vertices: " << g.vertex_count << "\n";
    out << "facets: " << g.facet_count << "\n";
    out << structure.to_text();
    out << mk.to_text();
    sink.report(out.str());
    return (structure.ok && mk.realizable) ? 0 : 1;
}

int run_eval(const OutputSink& sink, const std::string& in_path,
             std::optional<int> start_opt) {
    const PolytopeDigraph g = load_graph(in_path);
    const int start = start_opt ? *start_opt : default_start(g);
    check_start(g, start);
    const auto table = redge::expected_steps(g);
    std::ostringstream out;
    out << "start = " << start << "\n";
    out << "E = " << frac_dec(table.at(start)) << "\n";
    sink.report(out.str());
    return 0;
}

int run_probs(const OutputSink& sink, const std::string& in_path, int start) {
    const PolytopeDigraph g = load_graph(in_path);
    check_start(g, start);
    const auto ep = redge::edge_probabilities(g, start);
    std::ostringstream out;
    out << "start = " << ep.start << "\n";
    for (std::size_t i = 0; i < ep.edges.size(); ++i)
        out << ep.edges[i].from << " -> " << ep.edges[i].to << " = "
            << frac_dec(ep.prob[i]) << "\n";
    out << "total = " << frac_dec(ep.total()) << "\n";
    sink.report(out.str());
    return 0;
}

int run_simulate(const OutputSink& sink, const std::string& in_path, int start,
                 std::uint64_t trials, std::uint64_t seed, int jobs) {
    const PolytopeDigraph g = load_graph(in_path);
    check_start(g, start);
    const auto stats = redge::simulate(g, start, trials, seed, jobs);
    std::ostringstream out;
    out << "trials = " << stats.trials << "\n";
    out << "seed = " << stats.seed << "\n";
    out << "mean = " << frac_dec(stats.mean) << "\n";
    out << "variance = " << frac_dec(stats.sample_variance) << "\n";
    for (const auto& [length, count] : stats.histogram)
        out << "hist " << length << " = " << count << "\n";
    sink.report(out.str());
    return 0;
}

int run_gen(const OutputSink& sink, const std::string& family, int param) {
    PolytopeDigraph g;
    int start = 0;
    if (family == "dual-cyclic") {
        g = redge::dual_cyclic(param);
        const auto table = redge::expected_steps(g);
        start = 0;
        for (int v = 1; v < g.vertex_count; ++v)
            if (table.at(v) > table.at(start)) start = v;
    } else if (family == "backbone") {
        g = redge::backbone(param);
        start = param - 1;
    } else if (family == "example2") {
        const auto inst = redge::example2(param);
        g = inst.graph;
        start = inst.start;
    } else if (family == "example3") {
        const auto inst = redge::example3(param);
        g = inst.graph;
        start = inst.start;
    } else {
        throw std::runtime_error("unknown family: " + family);
    }
    sink.document(redge::serialize_dpg(g, start));
    return 0;
}

int run_export(const OutputSink& sink, const std::string& in_path,
               const std::string& format) {
    if (format != "dot") throw std::runtime_error("unknown format: " + format);
    const auto parsed = redge::parse_dpg_file(in_path);
    const PolytopeDigraph& g = parsed.graph;
    std::ostringstream out;
    out << "digraph dpg {\n";
    out << "  // vertices " << g.vertex_count << " facets " << g.facet_count
        << "\n";
    if (parsed.start) out << "  // start: " << *parsed.start << "\n";
    for (int v = 1; v < g.vertex_count; ++v)
        for (int w : g.down[static_cast<std::size_t>(v)])
            out << "  " << v << " -> " << w << ";\n";
    out << "}\n";
    sink.document(out.str());
    return 0;
}

int run_cert_show(const OutputSink& sink) {
    const auto sys = redge::builtin_system();
    std::ostringstream out;
    for (const auto& q : sys.inequalities) {
        out << q.label << "  a=" << frac(q.coeff_alpha)
            << " b=" << frac(q.coeff_beta) << " c=" << frac(q.rhs)
            << " source="
            << (q.source == redge::IneqSource::direct ? "direct" : "table");
        if (q.implied) out << " implied";
        if (!q.note.empty()) out << " # " << q.note;
        out << "\n";
    }
    sink.report(out.str());
    return 0;
}

int run_cert_check(const OutputSink& sink, const std::string& alpha_text,
                   const std::string& beta_text) {
    redge::CertPoint p;
    p.alpha = parse_rational_arg(alpha_text, "--alpha");
    p.beta = parse_rational_arg(beta_text, "--beta");
    const auto sys = redge::builtin_system();
    const auto rep = redge::is_feasible(sys, p);
    std::ostringstream out;
    out << "point = " << frac(p.alpha) << " " << frac(p.beta) << "\n";
    out << "feasible = " << (rep.feasible ? "yes" : "no") << "\n";
    if (rep.feasible) {
        out << "tight =";
        for (const auto& label : redge::tight_set(sys, p)) out << " " << label;
        out << "\n";
    } else {
        out << "violated =";
        for (const auto& label : rep.violated) out << " " << label;
        out << "\n";
    }
    sink.report(out.str());
    return rep.feasible ? 0 : 1;
}

int run_cert_solve(const OutputSink& sink, const std::string& obj_text) {
    const auto comma = obj_text.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("--obj expects 'a,b', got '" + obj_text +
                                 "'");
    const Rational oa =
        parse_rational_arg(obj_text.substr(0, comma), "--obj first weight");
    const Rational ob =
        parse_rational_arg(obj_text.substr(comma + 1), "--obj second weight");
    const auto sys = redge::builtin_system();
    const auto m = redge::minimize(sys, oa, ob);
    std::ostringstream out;
    out << "objective = " << frac(oa) << " " << frac(ob) << "\n";
    out << "alpha = " << frac(m.point.alpha) << "\n";
    out << "beta = " << frac(m.point.beta) << "\n";
    out << "value = " << frac_dec(m.value) << "\n";
    out << "advisory = " << (m.advisory ? "yes" : "no") << "\n";
    sink.report(out.str());
    return 0;
}

int run_bound(const OutputSink& sink, int n,
              const std::optional<std::string>& alpha_text,
              const std::optional<std::string>& beta_text) {
    if (alpha_text.has_value() != beta_text.has_value())
        throw std::runtime_error("--alpha and --beta must be given together");
    redge::CertPoint p;
    if (alpha_text) {
        p.alpha = parse_rational_arg(*alpha_text, "--alpha");
        p.beta = parse_rational_arg(*beta_text, "--beta");
    } else {
        p = redge::optimum_point();
    }
    const Rational b = redge::upper_bound(n, p);
    std::ostringstream out;
    out << "n = " << n << "\n";
    out << "alpha = " << frac(p.alpha) << "\n";
    out << "beta = " << frac(p.beta) << "\n";
    out << "bound = " << frac_dec(b) << "\n";
    sink.report(out.str());
    return 0;
}

int run_enumerate(const OutputSink& sink, int facets, int jobs,
                  const std::string& checkpoint, bool allow_long) {
    const auto res = redge::compute_f(facets, jobs, checkpoint, allow_long);
    std::ostringstream out;
    out << "n_facets = " << res.n_facets << "\n";
    out << "f_value = " << frac_dec(res.f_value) << "\n";
    out << "witness_start = " << res.witness_start << "\n";
    out << "graphs_examined = " << res.graphs_examined << "\n";
    out << "orientations_admissible = " << res.orientations_admissible << "\n";
    if (!sink.quiet) std::cout << out.str();
    if (!sink.out_path.empty())
        write_file(sink.out_path,
                   redge::serialize_dpg(res.witness, res.witness_start));
    std::ostringstream wall;
    wall.setf(std::ios::fixed);
    wall.precision(3);
    wall << "wall_time_seconds = " << res.wall_time_seconds << "\n";
    std::cerr << wall.str();
    return 0;
}

// ---------------------------------------------------------------------------
// reproduce: recompute every number pinned in the manifest and compare.
// ---------------------------------------------------------------------------

std::map<std::string, std::string> read_manifest(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open manifest: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(f, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        const auto sep = line.find(" = ");
        if (sep == std::string::npos)
            throw std::runtime_error("manifest: bad line '" + line + "'");
        kv[line.substr(0, sep)] = line.substr(sep + 3);
    }
    return kv;
}

struct Manifest {
    std::map<std::string, std::string> kv;

    const std::string& text(const std::string& key) const {
        const auto it = kv.find(key);
        if (it == kv.end())
            throw std::runtime_error("manifest: missing key '" + key + "'");
        return it->second;
    }

    Rational number(const std::string& key) const {
        return parse_rational_arg(text(key), "manifest key '" + key + "'");
    }

    int integer(const std::string& key) const {
        return std::stoi(text(key));
    }
};

int run_reproduce(const OutputSink& sink, const std::string& manifest_path) {
    const Manifest man{read_manifest(manifest_path)};
    std::ostringstream out;
    std::vector<std::string> mismatches;
    const auto record = [&](const std::string& what) {
        mismatches.push_back(what);
    };
    const auto expect = [&](const std::string& item, const Rational& got,
                            const Rational& want) {
        if (got != want)
            record(item + ": computed " + frac(got) + " expected " +
                   frac(want));
    };

    // Linear relations along the dual-cyclic family, plus the growth floor
    // of its top pair.
    const int n_max = man.integer("relations.n_max");
    bool relations_ok = true;
    for (int n = 4; n <= n_max; ++n) {
        const auto g = redge::dual_cyclic(n);
        const auto table = redge::expected_steps(g);
        for (int j = 0; j + 4 <= n; ++j) {
            const Rational lhs =
                table.at(2 * j) + Rational(2) * table.at(2 * j + 1);
            if (lhs != Rational(4 * j + 2)) {
                relations_ok = false;
                record("relations n=" + std::to_string(n) +
                       " j=" + std::to_string(j) + ": pair sum " + frac(lhs));
            }
        }
        const Rational top = std::max(table.at(2 * n - 8), table.at(2 * n - 7));
        const Rational floor = Rational(4 * n - 14, 3);
        if (top < floor) {
            relations_ok = false;
            record("relations n=" + std::to_string(n) + ": top pair " +
                   frac(top) + " below " + frac(floor));
        }
    }
    out << "relations.dual_cyclic n=4.." << n_max << " = "
        << (relations_ok ? "ok" : "FAIL") << "\n";

    // Closed forms of the two lower-bound families against direct expectation
    // solves.
    const int k2_max = man.integer("example2.k_max");
    bool ex2_ok = true;
    for (int k = 2; k <= k2_max; ++k) {
        const auto inst = redge::example2(k);
        const Rational direct =
            redge::expected_steps(inst.graph).at(inst.start);
        const Rational closed =
            redge::closed_form_expectation(redge::Family::example2, k);
        const Rational formula =
            Rational(43, 32) * Rational(4 * k + 2) - Rational(59, 16);
        if (direct != closed || closed != formula) {
            ex2_ok = false;
            record("example2 k=" + std::to_string(k) + ": direct " +
                   frac(direct) + " closed " + frac(closed));
        }
    }
    out << "example2 closed-form k=2.." << k2_max << " = "
        << (ex2_ok ? "ok" : "FAIL") << "\n";
    const Rational ex2_k2 =
        redge::closed_form_expectation(redge::Family::example2, 2);
    expect("example2.k2.E", ex2_k2, man.number("example2.k2.E"));
    out << "example2 k=2 E = " << frac(ex2_k2) << "\n";

    const int k3_max = man.integer("example3.k_max");
    bool ex3_ok = true;
    for (int k = 1; k <= k3_max; ++k) {
        const auto inst = redge::example3(k);
        const Rational direct =
            redge::expected_steps(inst.graph).at(inst.start);
        const Rational closed =
            redge::closed_form_expectation(redge::Family::example3, k);
        const Rational formula = Rational(1721, 1280) * Rational(10 * k + 2) -
                                 Rational(4722, 1280);
        if (direct != closed || closed != formula) {
            ex3_ok = false;
            record("example3 k=" + std::to_string(k) + ": direct " +
                   frac(direct) + " closed " + frac(closed));
        }
    }
    out << "example3 closed-form k=1.." << k3_max << " = "
        << (ex3_ok ? "ok" : "FAIL") << "\n";
    const Rational ex3_k1 =
        redge::closed_form_expectation(redge::Family::example3, 1);
    expect("example3.k1.E", ex3_k1, man.number("example3.k1.E"));
    out << "example3 k=1 E = " << frac(ex3_k1) << "\n";

    // Certificate: optimum, feasibility, tight constraints.
    const auto sys = redge::builtin_system();
    const auto m = redge::minimize(sys, Rational(1), Rational(2));
    const bool feasible = redge::is_feasible(sys, m.point).feasible;
    if (!feasible) record("cert: optimum point reported infeasible");
    out << "cert.feasible = " << (feasible ? "yes" : "no") << "\n";
    std::string tight_text;
    for (const auto& label : redge::tight_set(sys, m.point)) {
        if (!tight_text.empty()) tight_text += " ";
        tight_text += label;
    }
    if (tight_text != man.text("cert.tight"))
        record("cert.tight: computed '" + tight_text + "' expected '" +
               man.text("cert.tight") + "'");
    out << "cert.tight = " << tight_text << "\n";
    expect("cert.optimum.alpha", m.point.alpha,
           man.number("cert.optimum.alpha"));
    expect("cert.optimum.beta", m.point.beta, man.number("cert.optimum.beta"));
    expect("cert.optimum.value", m.value, man.number("cert.optimum.value"));
    out << "cert.optimum = "
        << pair_over_common_denominator(m.point.alpha, m.point.beta)
        << " value " << frac(m.value) << "\n";

    // Best known construction value vs. certified cap at the listed sizes.
    const auto best_lower = [&](int n) {
        const auto table = redge::expected_steps(redge::dual_cyclic(n));
        Rational best = table.at(0);
        for (int v = 1; v < 2 * n - 4; ++v) best = std::max(best, table.at(v));
        if ((n - 2) % 4 == 0 && (n - 2) / 4 >= 2)
            best = std::max(best, redge::closed_form_expectation(
                                      redge::Family::example2, (n - 2) / 4));
        if ((n - 2) % 10 == 0 && (n - 2) / 10 >= 1)
            best = std::max(best, redge::closed_form_expectation(
                                      redge::Family::example3, (n - 2) / 10));
        return best;
    };
    {
        std::istringstream rows(man.text("sandwich.rows"));
        int n = 0;
        while (rows >> n) {
            const Rational lower = best_lower(n);
            const Rational upper = redge::upper_bound(n, m.point);
            const std::string tag = "sandwich.n" + std::to_string(n);
            expect(tag + ".lower", lower, man.number(tag + ".lower"));
            expect(tag + ".upper", upper, man.number(tag + ".upper"));
            if (lower > upper)
                record(tag + ": lower " + frac(lower) + " above upper " +
                       frac(upper));
            out << "sandwich n=" << n << " lower " << frac(lower) << " upper "
                << frac(upper) << "\n";
        }
    }

    // Large-n growth rates: the lower family's per-facet rate against its
    // pinned floor, and the certified cap against its pinned per-facet cap.
    {
        const int big = man.integer("sandwich.large_n");
        const Rational rate =
            (redge::closed_form_expectation(redge::Family::example3, 3) -
             redge::closed_form_expectation(redge::Family::example3, 2)) /
            Rational(10);
        expect("sandwich.lower_rate", rate, man.number("sandwich.lower_rate"));
        const Rational rate_floor = man.number("sandwich.lower_rate_floor");
        if (rate < rate_floor)
            record("sandwich: lower rate " + frac(rate) + " below floor " +
                   frac(rate_floor));
        const Rational big_upper = redge::upper_bound(big, m.point);
        expect("sandwich.n" + std::to_string(big) + ".upper", big_upper,
               man.number("sandwich.n" + std::to_string(big) + ".upper"));
        const Rational cap = man.number("sandwich.upper_rate_cap");
        const Rational cap_total = cap * Rational(big);
        if (big_upper > cap_total)
            record("sandwich: upper " + frac(big_upper) + " above cap " +
                   frac(cap_total));
        out << "sandwich n=" << big << " lower-rate " << frac(rate)
            << " upper " << frac(big_upper) << " cap " << frac(cap_total)
            << "\n";
    }

    for (const auto& miss : mismatches) out << "MISMATCH " << miss << "\n";
    out << "reproduce = " << (mismatches.empty() ? "ok" : "FAIL") << "\n";
    sink.report(out.str());
    return mismatches.empty() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic laboratory for the Random Edge pivot rule"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputSink sink;
    app.add_option("--out", sink.out_path, "Write output to this file");
    app.add_flag("--quiet", sink.quiet, "Suppress the stdout report");

    std::string in_path;
    std::optional<int> start_opt;
    int start = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string family;
    int param = 0;
    std::string format = "dot";
    std::string alpha_text;
    std::string beta_text;
    std::optional<std::string> alpha_opt;
    std::optional<std::string> beta_opt;
    std::string obj_text = "1,2";
    int bound_n = 0;
    int facets = 0;
    std::string checkpoint;
    bool allow_long = false;
#ifdef REDGE_DATA_DIR
    std::string manifest_path = std::string(REDGE_DATA_DIR) +
                                "/reproduce-manifest.txt";
#else
    std::string manifest_path = "data/reproduce-manifest.txt";
#endif

    auto* validate = app.add_subcommand("validate",
                                        "Check a .dpg instance for "
                                        "realizability as a polytope "
                                        "orientation");
    validate->add_option("--in", in_path, "Input .dpg file")->required();

    auto* eval = app.add_subcommand("eval",
                                    "Exact expected number of Random Edge "
                                    "steps from a start vertex");
    eval->add_option("--in", in_path, "Input .dpg file")->required();
    eval->add_option("--start", start_opt,
                     "Start vertex (default: the top vertex)");

    auto* probs = app.add_subcommand("probs",
                                     "Per-edge traversal probabilities of "
                                     "the walk");
    probs->add_option("--in", in_path, "Input .dpg file")->required();
    probs->add_option("--start", start, "Start vertex")->required();

    auto* simulate = app.add_subcommand("simulate",
                                        "Seeded Monte Carlo walks with exact "
                                        "summary statistics");
    simulate->add_option("--in", in_path, "Input .dpg file")->required();
    simulate->add_option("--start", start, "Start vertex")->required();
    simulate->add_option("--trials", trials, "Number of walks")->required();
    simulate->add_option("--seed", seed, "PRNG seed")->required();
    simulate->add_option("--jobs", jobs, "Worker threads");

    auto* gen = app.add_subcommand("gen",
                                   "Emit a named construction as a .dpg "
                                   "file");
    gen->add_option("--family", family, "Construction family")
        ->required()
        ->check(CLI::IsMember(
            {"dual-cyclic", "backbone", "example2", "example3"}));
    gen->add_option("--param", param, "Family parameter (n or k)")->required();

    auto* cert = app.add_subcommand("cert",
                                    "Inspect or solve the upper-bound "
                                    "inequality system");
    cert->require_subcommand(1);
    auto* cert_show = cert->add_subcommand("show", "List the inequalities");
    auto* cert_check = cert->add_subcommand("check",
                                            "Test a point for feasibility");
    cert_check->add_option("--alpha", alpha_text, "Alpha as p/q")->required();
    cert_check->add_option("--beta", beta_text, "Beta as p/q")->required();
    auto* cert_solve = cert->add_subcommand("solve",
                                            "Minimize an objective over the "
                                            "feasible region");
    cert_solve->add_option("--obj", obj_text, "Objective weights 'a,b'");

    auto* bound = app.add_subcommand("bound",
                                     "Certified cap on the expected number "
                                     "of steps at n facets");
    bound->add_option("--n", bound_n, "Number of facets")->required();
    bound->add_option("--alpha", alpha_opt, "Alpha as p/q (default: optimum)");
    bound->add_option("--beta", beta_opt, "Beta as p/q (default: optimum)");

    auto* enumerate = app.add_subcommand("enumerate",
                                         "Exhaustive worst case over all "
                                         "instances with a given facet "
                                         "count");
    enumerate->add_option("--facets", facets, "Number of facets")->required();
    enumerate->add_option("--jobs", jobs, "Worker threads");
    enumerate->add_option("--checkpoint", checkpoint,
                          "Append-only progress file for resuming");
    enumerate->add_flag("--allow-long", allow_long,
                        "Permit the largest supported facet count");

    auto* export_cmd = app.add_subcommand("export",
                                          "Convert a .dpg file to another "
                                          "format");
    export_cmd->add_option("--in", in_path, "Input .dpg file")->required();
    export_cmd->add_option("--format", format, "Target format")
        ->check(CLI::IsMember({"dot"}));

    auto* reproduce = app.add_subcommand("reproduce",
                                         "Recompute every pinned headline "
                                         "number and compare");
    reproduce->add_option("--manifest", manifest_path,
                          "Manifest file of pinned values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) return run_validate(sink, in_path);
        if (eval->parsed()) return run_eval(sink, in_path, start_opt);
        if (probs->parsed()) return run_probs(sink, in_path, start);
        if (simulate->parsed())
            return run_simulate(sink, in_path, start, trials, seed, jobs);
        if (gen->parsed()) return run_gen(sink, family, param);
        if (cert_show->parsed()) return run_cert_show(sink);
        if (cert_check->parsed())
            return run_cert_check(sink, alpha_text, beta_text);
        if (cert_solve->parsed()) return run_cert_solve(sink, obj_text);
        if (bound->parsed())
            return run_bound(sink, bound_n, alpha_opt, beta_opt);
        if (enumerate->parsed())
            return run_enumerate(sink, facets, jobs, checkpoint, allow_long);
        if (export_cmd->parsed()) return run_export(sink, in_path, format);
        if (reproduce->parsed()) return run_reproduce(sink, manifest_path);
        std::cerr << "no command selected\n";
        return 2;
    } catch (const redge::DpgParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const redge::InstanceTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "internal check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
