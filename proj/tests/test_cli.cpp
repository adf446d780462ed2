// End-to-end runs of the raonet binary on fixture files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run(const std::string& args, const std::string& env = "") {
    fs::path out_file = fs::temp_directory_path() / "raonet_cli_out.txt";
    std::string cmd = (env.empty() ? "" : env + " ") + std::string(RAONET_BIN) + " " + args +
                      " > " + out_file.string() + " 2>&1";
    int status = std::system(cmd.c_str());
    int code = status == -1 ? -1 : WEXITSTATUS(status);
    std::ifstream in(out_file);
    std::stringstream ss;
    ss << in.rdbuf();
    return {code, ss.str()};
}

std::string fixture(const std::string& name) {
    return (fs::path(FIXTURE_DIR) / name).string();
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "raonet_cli_work";
    fs::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("summary prints the statistics block") {
    auto r = run("summary --input " + fixture("five_nodes.net"));
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("nodes") != std::string::npos);
    CHECK(r.output.find("density") != std::string::npos);
    CHECK(r.output.find("maximum distance") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
    CHECK(run("summary --no-such-flag").exit_code == 1);
    CHECK(run("no-such-command").exit_code == 1);
    CHECK(run("").exit_code == 1); // missing subcommand
}

TEST_CASE("data errors exit 2 with a one-line diagnostic") {
    auto missing = run("summary --input /nonexistent/net.net");
    CHECK(missing.exit_code == 2);
    CHECK(missing.output.find("error:") != std::string::npos);

    fs::path bad = work_dir() / "bad.net";
    std::ofstream(bad) << "*Vertices 1\n1 \"A\"\n*Arcs\n1 2 1\n";
    auto parse_fail = run("summary --input " + bad.string());
    CHECK(parse_fail.exit_code == 2);
    CHECK(parse_fail.output.find("line 4") != std::string::npos);
}

TEST_CASE("diversity writes the report and a manifest") {
    fs::path out = work_dir() / "rao1.csv";
    auto r = run("diversity --input " + fixture("five_nodes.net") + " --direction both --output " +
                 out.string());
    CHECK(r.exit_code == 0);
    std::string csv = read_file(out);
    CHECK(csv.rfind("node,label,delta_cited,d2_cited,delta_citing,d2_citing,sum_cited,sum_citing",
                    0) == 0);
    CHECK(fs::exists(out.string() + ".manifest.json"));
    std::string manifest = read_file(out.string() + ".manifest.json");
    CHECK(manifest.find("profile_convention") != std::string::npos);
    CHECK(manifest.find("fnv1a64") != std::string::npos);
}

TEST_CASE("bc with valued columns") {
    fs::path out = work_dir() / "bc.csv";
    auto r = run("bc --input " + fixture("five_nodes.net") + " --valued --output " + out.string());
    CHECK(r.exit_code == 0);
    std::string csv = read_file(out);
    CHECK(csv.rfind("node,label,bc_raw,bc_normalized,bc_valued_raw,bc_valued_normalized", 0) == 0);
}

TEST_CASE("restrict by labels, unknown label exits 2") {
    fs::path out = work_dir() / "sub.net";
    auto ok = run("restrict --input " + fixture("five_nodes.net") + " --labels A,B,C --output " +
                  out.string());
    CHECK(ok.exit_code == 0);
    CHECK(read_file(out).rfind("*Vertices 3", 0) == 0);

    auto bad = run("restrict --input " + fixture("five_nodes.net") +
                   " --labels A,Nonesuch --output " + out.string());
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("Nonesuch") != std::string::npos);
}

TEST_CASE("components writes a partition") {
    fs::path out = work_dir() / "comp.clu";
    auto r = run("components --input " + fixture("minimal.net") + " --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(read_file(out).rfind("*Vertices 2", 0) == 0);
}

TEST_CASE("neighborhood export") {
    fs::path out = work_dir() / "nbh.net";
    auto r = run("neighborhood --input " + fixture("five_nodes.net") +
                 " --focal A --mode integration --output " + out.string());
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("integration network") != std::string::npos);
    CHECK(fs::exists(out));
}

TEST_CASE("decompose with a partition file") {
    fs::path out = work_dir() / "decomp.csv";
    auto r = run("decompose --input " + fixture("five_nodes.net") + " --partition " +
                 fixture("five_nodes.clu") + " --direction both --mode grand --output " +
                 out.string());
    CHECK(r.exit_code == 0);
    std::string csv = read_file(out);
    CHECK(csv.find("between") != std::string::npos);
    CHECK(csv.find("cited") != std::string::npos);
    CHECK(csv.find("citing") != std::string::npos);
}

TEST_CASE("cells then correlate then anova over generated tables") {
    fs::path dir = work_dir();
    fs::path cells = dir / "rao2.csv";
    auto r1 = run("cells --input " + fixture("five_nodes.net") +
                  " --direction citing --output " + cells.string());
    CHECK(r1.exit_code == 0);
    CHECK(read_file(cells).rfind("focal,i,j,p_i,p_j,d_ij,cell", 0) == 0);

    fs::path rao1 = dir / "rao1b.csv";
    run("diversity --input " + fixture("five_nodes.net") + " --output " + rao1.string());
    fs::path corr = dir / "corr.csv";
    auto r2 = run("correlate --input " + rao1.string() +
                  " --vars d2_cited,d2_citing,sum_cited --output " + corr.string());
    CHECK(r2.exit_code == 0);
    CHECK(read_file(corr).rfind("var_a,var_b,n,", 0) == 0);

    auto r3 = run("anova --input " + rao1.string() + " --partition " + fixture("five_nodes.clu") +
                  " --field d2_citing --alpha 0.05");
    CHECK(r3.exit_code == 0);
    CHECK(r3.output.find("one-way ANOVA") != std::string::npos);
    CHECK(r3.output.find("homogeneous subsets") != std::string::npos);
}

TEST_CASE("export-vec emits a Pajek vector") {
    fs::path dir = work_dir();
    fs::path rao1 = dir / "rao1c.csv";
    run("diversity --input " + fixture("five_nodes.net") + " --output " + rao1.string());
    fs::path vec = dir / "d2.vec";
    auto r = run("export-vec --input " + rao1.string() + " --field d2_citing --net " +
                 fixture("five_nodes.net") + " --output " + vec.string());
    CHECK(r.exit_code == 0);
    CHECK(read_file(vec).rfind("*Vertices 5", 0) == 0);
}

TEST_CASE("pipeline: nested subsets produce per-level tables plus the combined table") {
    fs::path dir = work_dir() / "pipe";
    fs::create_directories(dir);
    fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << R"({
      "input": ")" << fixture("five_nodes.net") << R"(",
      "partition": ")" << fixture("five_nodes.clu") << R"(",
      "output_dir": ")" << dir.string() << R"(",
      "levels": [
        {"name": "abc", "labels": ["A", "B", "C"]},
        {"name": "ab", "labels": ["A", "B"]}
      ],
      "reports": ["bc", "diversity", "correlate"],
      "valued": true
    })";
    auto r = run("pipeline --config " + cfg.string());
    CHECK(r.exit_code == 0);
    for (const char* name : {"rao1_full.csv", "rao1_abc.csv", "rao1_ab.csv", "bc_full.csv",
                             "corr_full.csv", "merged_full.csv", "combined_levels.csv",
                             "pipeline_manifest.json"})
        CHECK(fs::exists(dir / name));

    auto bad_cfg = dir / "bad.json";
    std::ofstream(bad_cfg) << R"({"input": ")" << fixture("five_nodes.net")
                           << R"(", "levels": [{"name": "x", "labels": ["Nope"]}]})";
    auto bad = run("pipeline --config " + bad_cfg.string());
    CHECK(bad.exit_code == 2);
    CHECK(bad.output.find("Nope") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
    fs::path dir = work_dir();
    fs::path a = dir / "det_a.csv", b = dir / "det_b.csv";
    CHECK(run("diversity --input " + fixture("loops.net") + " --output " + a.string()).exit_code ==
          0);
    CHECK(run("diversity --input " + fixture("loops.net") + " --output " + b.string()).exit_code ==
          0);
    CHECK(!read_file(a).empty());
    CHECK(read_file(a) == read_file(b));

    fs::path ba = dir / "det_bc_a.csv", bb = dir / "det_bc_b.csv";
    CHECK(run("bc --input " + fixture("loops.net") + " --valued --threads 1 --output " +
              ba.string())
              .exit_code == 0);
    CHECK(run("bc --input " + fixture("loops.net") + " --valued --threads 3 --output " +
              bb.string())
              .exit_code == 0);
    CHECK(!read_file(ba).empty());
    CHECK(read_file(ba) == read_file(bb));
}

TEST_CASE("worker count comes from the environment when not given") {
    fs::path out = work_dir() / "env_threads.csv";
    auto r = run("bc --input " + fixture("loops.net") + " --output " + out.string(),
                 "RAONET_THREADS=2");
    CHECK(r.exit_code == 0);
    CHECK(!read_file(out).empty());
}

TEST_CASE("unknown CSV field is a data error") {
    fs::path dir = work_dir();
    fs::path rao1 = dir / "rao1d.csv";
    run("diversity --input " + fixture("five_nodes.net") + " --output " + rao1.string());
    auto r = run("export-vec --input " + rao1.string() + " --field no_such_column --output " +
                 (dir / "x.vec").string());
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("no_such_column") != std::string::npos);
}

TEST_CASE("diversity --direction both emits one cell file per direction") {
    fs::path dir = work_dir();
    fs::path rao1 = dir / "rao1e.csv";
    fs::path cells = dir / "cells_e.csv";
    auto r = run("diversity --input " + fixture("five_nodes.net") + " --direction both --output " +
                 rao1.string() + " --cells " + cells.string());
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "cells_e_cited.csv"));
    CHECK(fs::exists(dir / "cells_e_citing.csv"));
}
