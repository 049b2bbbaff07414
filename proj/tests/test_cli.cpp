#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "report.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path kFixtures = SOC_FIXTURE_DIR;

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("soc_cascade_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Outcome run(const std::string& args, const std::string& env = "") {
  static const fs::path logs = scratch("logs");
  const auto out = logs / "stdout.txt";
  const auto err = logs / "stderr.txt";
  const std::string cmd = env + (env.empty() ? "" : " ") + "\"" SOC_CASCADE_CLI "\" " + args + " >\"" +
                          out.string() + "\" 2>\"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = slurp(out);
  o.err = slurp(err);
  return o;
}

std::string q(const fs::path& p) { return "\"" + p.string() + "\""; }

}  // namespace

TEST_CASE("generate writes the ingest inputs and a network") {
  const auto dir = scratch("gen");
  const auto o = run("generate --ba 100 2 --capital pareto:2:50 --seed 7 --out " + q(dir));
  REQUIRE(o.code == 0);
  for (const char* f : {"triplets.csv", "attributes.csv", "network.json"}) CHECK(fs::exists(dir / f));
  CHECK(Json::parse(slurp(dir / "network.json")).at("edges").size() == 197);
  CHECK(slurp(dir / "triplets.csv").rfind("head,relation,tail,source\n", 0) == 0);
  CHECK(o.out.find("edges=197") != std::string::npos);
}

TEST_CASE("analyze on the bridged triangles finds both triangles") {
  const auto dir = scratch("analyze");
  const auto o = run("analyze --net " + q(kFixtures / "two_triangles.json") + " --out-dir " + q(dir));
  REQUIRE(o.code == 0);
  const auto stats = Json::parse(slurp(dir / "stats.json"));
  CHECK(stats.at("diameter") == 3);
  CHECK(stats.at("nodes") == 6);
  CHECK(stats.at("edges") == 7);
  CHECK(stats.at("communities") == 2);
  CHECK(stats.at("modularity").get<double>() == doctest::Approx(5.0 / 14.0).epsilon(1e-12));
  CHECK(stats.at("average_path_length").get<double>() == doctest::Approx(1.8).epsilon(1e-12));

  const auto metrics = slurp(dir / "metrics.csv");
  CHECK(metrics.rfind("firm,degree,closeness,betweenness,eigenvector,pagerank,clustering,triangles,capital\n", 0) == 0);
  CHECK(std::count(metrics.begin(), metrics.end(), '\n') == 7);

  const auto corr = Json::parse(slurp(dir / "correlation.json"));
  REQUIRE(corr.is_array());
  CHECK(corr.size() == 2 * 8 * 8);
  for (const auto& row : corr) {
    CHECK(row.contains("metric_a"));
    CHECK(row.contains("metric_b"));
    CHECK((row.at("kind") == "pearson" || row.at("kind") == "spearman"));
    CHECK((row.at("value").is_null() || row.at("value").is_number()));
  }
  CHECK(fs::exists(dir / "distributions.json"));
}

TEST_CASE("analyze refuses a disconnected network unless asked for the largest component") {
  const auto dir = scratch("disc");
  run("ingest --triplets " + q(kFixtures / "alias_triplets.csv") + " --out " + q(dir / "net.json"));
  const auto bad = run("analyze --net " + q(dir / "net.json") + " --out-dir " + q(dir / "a"));
  CHECK(bad.code == 1);
  CHECK(bad.err.find("--lcc") != std::string::npos);
  CHECK(run("analyze --net " + q(dir / "net.json") + " --lcc --out-dir " + q(dir / "a")).code == 0);
}

TEST_CASE("ingest reports merges, drops and bad rows") {
  const auto dir = scratch("ingest");
  const auto o = run("ingest --triplets " + q(kFixtures / "alias_triplets.csv") + " --attrs " +
                     q(kFixtures / "alias_attributes.csv") + " --out " + q(dir / "net.json"));
  REQUIRE(o.code == 0);
  CHECK(o.err.find("alias_triplets.csv:13") != std::string::npos);
  const auto rep = Json::parse(slurp(dir / "net.report.json"));
  CHECK(rep.at("raw_names") == 13);
  CHECK(rep.at("groups") == 9);
  CHECK(rep.at("merged") == 4);
  CHECK(rep.at("self_loops_dropped") == 1);
  CHECK(rep.at("duplicate_edges") == 1);
  CHECK(rep.at("bad_rows") == 1);
  CHECK(rep.at("defaulted_capital") == 1);
  const auto net = Json::parse(slurp(dir / "net.json"));
  CHECK(net.at("firms").size() == 9);
  CHECK(net.at("edges").size() == 9);
}

TEST_CASE("simulations, sweeps and reports write their files and repeat exactly") {
  const auto dir = scratch("sim");
  REQUIRE(run("generate --ba 150 2 --seed 3 --out " + q(dir)).code == 0);
  const auto net = q(dir / "network.json");
  for (int pass = 0; pass < 2; ++pass) {
    const auto tag = std::to_string(pass);
    CHECK(run("simulate-rc --net " + net + " --fraction 0.05 --out " + q(dir / ("rc" + tag + ".csv"))).code == 0);
    CHECK(run("simulate-rt --net " + net + " --policy random --seed 4 --out " + q(dir / ("rt" + tag + ".csv"))).code == 0);
    const auto sw = run("sweep --net " + net + " --ratios 0.2,0.6,1.0 --out " + q(dir / ("sw" + tag + ".csv")));
    CHECK(sw.code == 0);
    CHECK(sw.out.find("critical_ratio=") != std::string::npos);
    CHECK(run("report --in " + q(dir / "sw0.csv") + " --out " + q(dir / ("sw" + tag + ".svg"))).code == 0);
  }
  for (const char* f : {"rc", "rt", "sw"}) {
    CHECK(slurp(dir / (std::string(f) + "0.csv")) == slurp(dir / (std::string(f) + "1.csv")));
  }
  CHECK(slurp(dir / "rc0.csv").rfind("step,affected_ratio\n", 0) == 0);
  CHECK(slurp(dir / "rt0.csv").rfind("step,affected_ratio,capacity_ratio\n", 0) == 0);
  CHECK(slurp(dir / "sw0.csv").rfind("ratio,terminal_affected_ratio\n", 0) == 0);
  const auto svg = slurp(dir / "sw0.svg");
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg == slurp(dir / "sw1.svg"));
}

TEST_CASE("experiment command writes a campaign directory") {
  const auto dir = scratch("exp");
  REQUIRE(run("generate --ba 80 2 --seed 5 --out " + q(dir)).code == 0);
  std::ofstream(dir / "spec.json") << R"({"network": {"file": "network.json"}, "model": "rt",
    "grid": {"policy": ["absorb", "transfer"]}, "plans": [{"strategy": "HDA", "n": 2, "rng_seed": 0}],
    "replicates": 2, "master_seed": 1})";
  const auto o = run("experiment --spec " + q(dir / "spec.json") + " --out " + q(dir / "out"));
  REQUIRE(o.code == 0);
  CHECK(fs::exists(dir / "out" / "summary.csv"));
  CHECK(fs::exists(dir / "out" / "runs" / "1" / "1" / "trace.csv"));
}

TEST_CASE("usage errors exit 2 and runtime failures exit 1") {
  CHECK(run("simulate-rc --net x.json --bogus").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("simulate-rt --net x.json --beta uniform:7 --out y.csv").code == 2);
  CHECK(run("generate --ba 10 2 --er 10 0.1 --out y").code == 2);
  CHECK(run("simulate-rc --net x.json --fraction 0.1 --count 3 --out y.csv").code == 2);
  CHECK(run("sweep --net x.json --ratios 0.5,0.2 --out y.csv").code == 2);
  const auto missing = run("simulate-rc --net /nonexistent/net.json --out y.csv");
  CHECK(missing.code == 1);
  CHECK(missing.err.find("/nonexistent/net.json") != std::string::npos);
}

TEST_CASE("help on every command exits 0 and lists its flags") {
  const std::vector<std::pair<std::string, std::vector<std::string>>> commands = {
      {"ingest", {"--triplets", "--attrs", "--threshold", "--blocking", "--capital-default", "--out", "--report"}},
      {"analyze", {"--net", "--lcc", "--seed", "--out-dir"}},
      {"generate", {"--ba", "--er", "--capital", "--seed", "--out"}},
      {"simulate-rc", {"--net", "--lcc", "--config", "--lambda", "--mu", "--delta", "--tau", "--beta", "--recovery",
                       "--threshold", "--max-steps", "--eps", "--strategy", "--fraction", "--count", "--seed", "--out"}},
      {"simulate-rt", {"--net", "--lcc", "--config", "--policy", "--p-absorb", "--delta-c", "--c-floor", "--beta",
                       "--tau", "--max-steps", "--seed", "--swap-capacity-rules", "--strategy", "--attack-seed", "--out"}},
      {"sweep", {"--net", "--lcc", "--ratios", "--lambda", "--strategy", "--out"}},
      {"report", {"--in", "--out", "--title"}},
      {"experiment", {"--spec", "--out"}},
  };
  CHECK(run("--help").code == 0);
  for (const auto& [cmd, flags] : commands) {
    const auto o = run(cmd + " --help");
    INFO(cmd);
    CHECK(o.code == 0);
    for (const auto& f : flags) CHECK_MESSAGE(o.out.find(f) != std::string::npos, f);
  }
}

TEST_CASE("series CSV parsing") {
  using soc_cascade::cli::parse_series_csv;
  const auto t = parse_series_csv("step,a,b\n0,1,2\n1,0.5,3e-1\n");
  CHECK(t.columns == std::vector<std::string>{"step", "a", "b"});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[1][2] == 0.3);
  CHECK_THROWS_AS(parse_series_csv("x,y\n1,abc\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_series_csv("x,y\n1,2,3\n"), std::runtime_error);
}

TEST_CASE("rendered charts are stable and escape their title") {
  using namespace soc_cascade::cli;
  const auto t = parse_series_csv("ratio,terminal_affected_ratio\n0.05,0.9\n0.5,0.2\n1,0.01\n");
  const auto a = render_svg(t, "sweep <A&B>");
  CHECK(a == render_svg(t, "sweep <A&B>"));
  CHECK(a.find("sweep &lt;A&amp;B&gt;") != std::string::npos);
  CHECK(a.find("<polyline") != std::string::npos);
  CHECK(a.find("terminal_affected_ratio") != std::string::npos);
}
