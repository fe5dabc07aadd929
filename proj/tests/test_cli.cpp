// End-to-end tests of the command-line binary: byte-stable reports, the
// exit-code contract (0 success, 1 failed check, 2 bad input), and the
// --out / --quiet plumbing.  The binary path arrives via REDGE_CLI_PATH.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("redge_cli_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    REQUIRE(f.good());
    f << text;
}

CmdResult run_cli(const std::string& args) {
    static int counter = 0;
    const fs::path capture =
        scratch_dir() / ("stdout_" + std::to_string(++counter) + ".txt");
    const std::string cmd = std::string(REDGE_CLI_PATH) + " " + args + " > " +
                            capture.string() + " 2>/dev/null";
    const int raw = std::system(cmd.c_str());
    CmdResult r;
    r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    r.out = read_file(capture);
    return r;
}

/// Generates a family instance into the scratch dir and returns its path.
fs::path gen_instance(const std::string& family, int param) {
    const fs::path path =
        scratch_dir() / (family + "_" + std::to_string(param) + ".dpg");
    const auto r = run_cli("gen --family " + family + " --param " +
                           std::to_string(param) + " --out " + path.string());
    REQUIRE(r.exit_code == 0);
    return path;
}

}  // namespace

TEST_CASE("gen emits every family and validate accepts the output", "[cli]") {
    const std::vector<std::pair<std::string, int>> cases = {
        {"dual-cyclic", 7}, {"backbone", 4}, {"example2", 2}, {"example3", 1}};
    for (const auto& [family, param] : cases) {
        INFO(family << " " << param);
        const fs::path path = gen_instance(family, param);
        const std::string text = read_file(path);
        CHECK(text.rfind("DPG 1\n# start: ", 0) == 0);
        const auto v = run_cli("validate --in " + path.string());
        CHECK(v.exit_code == 0);
        CHECK(v.out.find("realizable: yes\n") != std::string::npos);
        CHECK(v.out.find("structure: pass\n") != std::string::npos);
    }
}

TEST_CASE("eval defaults to the top vertex and honors --start", "[cli]") {
    const fs::path dc5 = gen_instance("dual-cyclic", 5);
    const auto top = run_cli("eval --in " + dc5.string());
    CHECK(top.exit_code == 0);
    CHECK(top.out == "start = 5\nE = 7/3 ~ 2.333333\n");

    const auto mid = run_cli("eval --in " + dc5.string() + " --start 4");
    CHECK(mid.exit_code == 0);
    CHECK(mid.out == "start = 4\nE = 3 ~ 3.000000\n");

    const auto off = run_cli("eval --in " + dc5.string() + " --start 99");
    CHECK(off.exit_code == 2);
}

TEST_CASE("probs lists every edge and sums to the expectation", "[cli]") {
    const fs::path dc5 = gen_instance("dual-cyclic", 5);
    const auto r = run_cli("probs --in " + dc5.string() + " --start 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out ==
          "start = 4\n"
          "1 -> 0 = 3/4 ~ 0.750000\n"
          "2 -> 1 = 3/4 ~ 0.750000\n"
          "3 -> 2 = 1/4 ~ 0.250000\n"
          "3 -> 0 = 1/4 ~ 0.250000\n"
          "4 -> 3 = 1/2 ~ 0.500000\n"
          "4 -> 2 = 1/2 ~ 0.500000\n"
          "5 -> 4 = 0 ~ 0.000000\n"
          "5 -> 1 = 0 ~ 0.000000\n"
          "5 -> 0 = 0 ~ 0.000000\n"
          "total = 3 ~ 3.000000\n");
}

TEST_CASE("simulate is reproducible and worker-count independent", "[cli]") {
    const fs::path dc5 = gen_instance("dual-cyclic", 5);
    const std::string base =
        "simulate --in " + dc5.string() + " --start 4 --trials 2000 --seed 7";
    const auto a = run_cli(base);
    const auto b = run_cli(base);
    const auto c = run_cli(base + " --jobs 3");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    CHECK(a.out.rfind("trials = 2000\nseed = 7\nmean = ", 0) == 0);
    CHECK(a.out.find("\nvariance = ") != std::string::npos);
    CHECK(a.out.find("\nhist 2 = ") != std::string::npos);
}

TEST_CASE("exit codes separate bad input from failed checks", "[cli]") {
    CHECK(run_cli("eval --no-such-flag").exit_code == 2);
    CHECK(run_cli("eval --in " + (scratch_dir() / "missing.dpg").string())
              .exit_code == 2);
    CHECK(run_cli("gen --family nonsense --param 5").exit_code == 2);
    CHECK(run_cli("enumerate --facets 11").exit_code == 2);
    CHECK(run_cli("--help").exit_code == 0);

    // Structurally broken instance: two vertices with a single down-edge to
    // the bottom makes the one/two–vertex counts wrong.
    const fs::path bad = scratch_dir() / "bad.dpg";
    write_file(bad,
               "DPG 1\nvertices 6 facets 5\n1: 0\n2: 0\n3: 2 1\n4: 3 2\n"
               "5: 4 3 1\n");
    const auto v = run_cli("validate --in " + bad.string());
    CHECK(v.exit_code == 1);
    CHECK(v.out.find("realizable: no\n") != std::string::npos);

    CHECK(run_cli("cert check --alpha 0 --beta 0").exit_code == 1);
    const fs::path garbled = scratch_dir() / "garbled.dpg";
    write_file(garbled, "DPG 1\nvertices 4 facets 4\n1: zero\n");
    CHECK(run_cli("validate --in " + garbled.string()).exit_code == 2);
}

TEST_CASE("cert subcommands report the inequality system", "[cli]") {
    const auto show = run_cli("cert show");
    CHECK(show.exit_code == 0);
    CHECK(show.out.rfind("e01  a=1 b=1 c=1 source=direct\n", 0) == 0);
    int lines = 0;
    for (char ch : show.out) lines += (ch == '\n');
    CHECK(lines == 28);

    const auto check = run_cli("cert check --alpha 46/87 --beta 42/87");
    CHECK(check.exit_code == 0);
    CHECK(check.out ==
          "point = 46/87 14/29\nfeasible = yes\ntight = e04 e18\n");

    const auto solve = run_cli("cert solve");
    CHECK(solve.exit_code == 0);
    CHECK(solve.out ==
          "objective = 1 2\nalpha = 46/87\nbeta = 14/29\n"
          "value = 130/87 ~ 1.494253\nadvisory = no\n");
}

TEST_CASE("bound evaluates the certified cap", "[cli]") {
    const auto n12 = run_cli("bound --n 12");
    CHECK(n12.exit_code == 0);
    CHECK(n12.out ==
          "n = 12\nalpha = 46/87\nbeta = 14/29\n"
          "bound = 405/29 ~ 13.965517\n");

    const auto n10 = run_cli("bound --n 10");
    CHECK(n10.out.find("bound = 955/87 ~ 10.977011\n") != std::string::npos);

    const auto unit = run_cli("bound --n 10 --alpha 1 --beta 1");
    CHECK(unit.exit_code == 0);
    CHECK(unit.out.find("bound = 21 ~ 21.000000\n") != std::string::npos);

    CHECK(run_cli("bound --n 10 --alpha 1").exit_code == 2);
    CHECK(run_cli("bound --n 3").exit_code == 2);
}

TEST_CASE("export writes stable DOT output", "[cli]") {
    const fs::path dc5 = gen_instance("dual-cyclic", 5);
    const auto a = run_cli("export --in " + dc5.string() + " --format dot");
    const auto b = run_cli("export --in " + dc5.string() + " --format dot");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out ==
          "digraph dpg {\n"
          "  // vertices 6 facets 5\n"
          "  // start: 4\n"
          "  1 -> 0;\n"
          "  2 -> 1;\n"
          "  3 -> 2;\n"
          "  3 -> 0;\n"
          "  4 -> 3;\n"
          "  4 -> 2;\n"
          "  5 -> 4;\n"
          "  5 -> 1;\n"
          "  5 -> 0;\n"
          "}\n");

    // A file without a start comment exports without the start line.
    const fs::path tetra = scratch_dir() / "tetra.dpg";
    write_file(tetra, "DPG 1\nvertices 4 facets 4\n1: 0\n2: 1 0\n3: 2 1 0\n");
    const auto t = run_cli("export --in " + tetra.string() + " --format dot");
    CHECK(t.exit_code == 0);
    CHECK(t.out.find("// start") == std::string::npos);
    CHECK(t.out.find("  3 -> 0;\n") != std::string::npos);

    // A 10-facet instance: 16 vertices, 24 directed edges, start annotated.
    const fs::path e2 = gen_instance("example2", 2);
    const auto d = run_cli("export --in " + e2.string() + " --format dot");
    CHECK(d.exit_code == 0);
    CHECK(d.out.find("  // vertices 16 facets 10\n") != std::string::npos);
    CHECK(d.out.find("  // start: ") != std::string::npos);
    std::size_t arrows = 0;
    for (std::size_t pos = d.out.find(" -> "); pos != std::string::npos;
         pos = d.out.find(" -> ", pos + 1))
        ++arrows;
    CHECK(arrows == 24);
}

TEST_CASE("enumerate reports the worst case and writes the witness", "[cli]") {
    const fs::path wit = scratch_dir() / "witness4.dpg";
    const auto r4 = run_cli("enumerate --facets 4 --out " + wit.string());
    CHECK(r4.exit_code == 0);
    CHECK(r4.out ==
          "n_facets = 4\nf_value = 11/6 ~ 1.833333\nwitness_start = 3\n"
          "graphs_examined = 1\norientations_admissible = 24\n");
    CHECK(read_file(wit) ==
          "DPG 1\n# start: 3\nvertices 4 facets 4\n1: 0\n2: 1 0\n3: 2 1 0\n");

    // The witness round-trips through the validator and the evaluator.
    CHECK(run_cli("validate --in " + wit.string()).exit_code == 0);
    const auto ev = run_cli("eval --in " + wit.string());
    CHECK(ev.out == "start = 3\nE = 11/6 ~ 1.833333\n");

    const auto r5 = run_cli("enumerate --facets 5");
    CHECK(r5.exit_code == 0);
    CHECK(r5.out.find("f_value = 3 ~ 3.000000\n") != std::string::npos);
    CHECK(r5.out.find("orientations_admissible = 120\n") !=
          std::string::npos);
}

TEST_CASE("reproduce recomputes the pinned summary numbers", "[cli]") {
    const auto r = run_cli("reproduce");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("cert.optimum = 46/87 42/87 value 130/87\n") !=
          std::string::npos);
    CHECK(r.out.find("example3 k=1 E = 1593/128\n") != std::string::npos);
    CHECK(r.out.find("example2 k=2 E = 39/4\n") != std::string::npos);
    CHECK(r.out.find("sandwich n=10 lower 39/4 upper 955/87\n") !=
          std::string::npos);
    CHECK(r.out.find("sandwich n=12 lower 1593/128 upper 405/29\n") !=
          std::string::npos);
    CHECK(r.out.find("sandwich n=10000 lower-rate 1721/1280 "
                     "upper 1299655/87 cap 14943\n") != std::string::npos);
    CHECK(r.out.find("MISMATCH") == std::string::npos);
    CHECK(r.out.find("reproduce = ok\n") != std::string::npos);

    // A tampered manifest is caught and reported with exit code 1.
    const std::string manifest =
        read_file(fs::path(REDGE_DATA_DIR) / "reproduce-manifest.txt");
    std::string tampered = manifest;
    const std::string key = "example2.k2.E = 39/4";
    const auto pos = tampered.find(key);
    REQUIRE(pos != std::string::npos);
    tampered.replace(pos, key.size(), "example2.k2.E = 7/2");
    const fs::path bad_manifest = scratch_dir() / "tampered-manifest.txt";
    write_file(bad_manifest, tampered);
    const auto bad = run_cli("reproduce --manifest " + bad_manifest.string());
    CHECK(bad.exit_code == 1);
    CHECK(bad.out.find("MISMATCH example2.k2.E") != std::string::npos);
    CHECK(bad.out.find("reproduce = FAIL\n") != std::string::npos);
}

TEST_CASE("the --quiet and --out flags route output", "[cli]") {
    const fs::path dc5 = gen_instance("dual-cyclic", 5);

    const auto quiet = run_cli("eval --in " + dc5.string() + " --quiet");
    CHECK(quiet.exit_code == 0);
    CHECK(quiet.out.empty());

    const fs::path report = scratch_dir() / "eval_report.txt";
    const auto copied =
        run_cli("eval --in " + dc5.string() + " --out " + report.string());
    CHECK(copied.exit_code == 0);
    CHECK(copied.out == read_file(report));
    CHECK(copied.out == "start = 5\nE = 7/3 ~ 2.333333\n");

    // For data-producing commands --quiet leaves the document alone.
    const auto gen_quiet =
        run_cli("gen --family dual-cyclic --param 4 --quiet");
    CHECK(gen_quiet.exit_code == 0);
    CHECK(gen_quiet.out.rfind("DPG 1\n", 0) == 0);
}
