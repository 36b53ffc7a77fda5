#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

#include "icluster/cli.hpp"
#include "icluster/dataset.hpp"
#include "icluster/interpretability.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace icluster;

namespace {

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "icluster_cli" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

json load_json(const fs::path& path) { return json::parse(slurp(path)); }

// synth + return the data/schema paths for follow-up runs.
fs::path synth_into(const std::string& name, const std::string& n = "40",
                    const std::string& card = "4") {
  fs::path dir = fresh_dir(name);
  REQUIRE(cli::run({"synth", "--n", n, "--features", "3", "--foi-card", card,
                    "--blobs", "2", "--seed", "9", "--out", dir.string()}) == 0);
  return dir;
}

std::size_t line_count(const fs::path& path) {
  std::string text = slurp(path);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  return lines;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("synth emits a deterministic dataset with a schema sidecar") {
  fs::path a = synth_into("synth_a");
  fs::path b = synth_into("synth_b");
  CHECK(slurp(a / "data.csv") == slurp(b / "data.csv"));
  json schema = load_json(a / "schema.json");
  CHECK(schema["foi"] == json::array({"foi"}));
  CHECK(schema["features"].size() == 4);  // 3 numeric + the FoI column
}

TEST_CASE("cluster report matches a recomputation from its own files") {
  fs::path data = synth_into("cluster_kc");
  fs::path out = fresh_dir("cluster_kc_out");
  REQUIRE(cli::run({"cluster", "--data", (data / "data.csv").string(),
                    "--schema", (data / "schema.json").string(), "--algo",
                    "kc", "--k", "3", "--seed", "5", "--out",
                    out.string()}) == 0);

  json rep = load_json(out / "report.json");
  CHECK(rep["algorithm"] == "kc");
  CHECK(rep["clusters"].size() <= 3);

  // Rebuild the clustering from assignments.csv + reported centers.
  FeatureSchema s;
  json schema_json = load_json(data / "schema.json");
  for (const json& f : schema_json["features"])
    s.features.push_back({f["name"].get<std::string>(),
                          f["kind"] == "numeric" ? FeatureKind::numeric
                                                 : FeatureKind::categorical});
  s.foi_indices = {3};
  Dataset d = load_csv((data / "data.csv").string(), s);
  Distances dist(d, euclidean_metric());

  std::map<std::size_t, std::vector<NodeId>> members;
  std::ifstream in(out / "assignments.csv");
  std::string line;
  std::getline(in, line);
  CHECK(line == "node_id,cluster,foi_value");
  while (std::getline(in, line)) {
    const auto c1 = line.find(','), c2 = line.find(',', c1 + 1);
    members[std::stoul(line.substr(c1 + 1, c2 - c1 - 1))].push_back(
        static_cast<NodeId>(std::stoul(line.substr(0, c1))));
  }
  Clustering c;
  c.k_requested = 3;
  for (const json& cl : rep["clusters"]) {
    Cluster built;
    built.center = cl["center"].get<NodeId>();
    built.members = members.at(cl["index"].get<std::size_t>());
    c.clusters.push_back(built);
  }
  validate_clustering(c, d.all_ids());
  CHECK(kcenter_objective(d, dist, c) == rep["objective"].get<double>());
  CHECK(score_clustering(d, c).clustering_score ==
        rep["interpretability"].get<double>());
}

TEST_CASE("ikc and pf reach full interpretability on four values") {
  fs::path data = synth_into("cluster_pure");
  for (const char* algo : {"ikc", "pf"}) {
    fs::path out = fresh_dir(std::string("cluster_pure_") + algo);
    REQUIRE(cli::run({"cluster", "--data", (data / "data.csv").string(),
                      "--schema", (data / "schema.json").string(), "--algo",
                      algo, "--k", "4", "--out", out.string()}) == 0);
    json rep = load_json(out / "report.json");
    CHECK(rep["interpretability"] == 1.0);
    for (const json& cl : rep["clusters"]) CHECK(cl["score"] == 1.0);
  }
}

TEST_CASE("a beta-ic run that falls short exits with code 2") {
  fs::path dir = fresh_dir("betaic_short");
  std::ofstream(dir / "data.csv") << "x,v\n0,A\n1,A\n2,B\n3,B\n4,C\n";
  const int rc =
      cli::run({"cluster", "--data", (dir / "data.csv").string(), "--foi", "v",
                "--algo", "beta-ic", "--k", "2", "--beta", "1.0", "--out",
                dir.string()});
  CHECK(rc == 2);
  json rep = load_json(dir / "report.json");
  CHECK(rep["converged"] == false);
  CHECK(rep["interpretability"].get<double>() < 1.0);
  CHECK_FALSE(rep["warnings"].empty());
  CHECK(rep["trace"].size() >= 1);
}

TEST_CASE("input mistakes exit with code 1") {
  fs::path dir = fresh_dir("bad_inputs");
  std::ofstream(dir / "data.csv") << "x,v\n0,A\n1,B\n2,C\n";
  const std::string data = (dir / "data.csv").string();
  CHECK(cli::run({"cluster", "--algo", "kc", "--k", "2"}) == 1);
  CHECK(cli::run({"cluster", "--data", data, "--foi", "v", "--algo", "nope",
                  "--k", "2"}) == 1);
  CHECK(cli::run({"cluster", "--data", data, "--foi", "v", "--algo", "ikc",
                  "--k", "2"}) == 1);  // |F| = 3 > k
  CHECK(cli::run({"cluster", "--data", data, "--foi", "w", "--algo", "kc",
                  "--k", "2"}) == 1);  // unknown feature
  CHECK(cli::run({"bogus-subcommand"}) == 1);
}

TEST_CASE("sweep writes one row per beta-seed pair plus aggregates") {
  fs::path data = synth_into("sweep_data");
  fs::path out = fresh_dir("sweep_out");
  REQUIRE(cli::run({"sweep", "--data", (data / "data.csv").string(),
                    "--schema", (data / "schema.json").string(), "--algo",
                    "beta-ic", "--k", "3", "--betas", "0.5,1.0", "--seeds",
                    "2", "--out", out.string()}) == 0);
  CHECK(line_count(out / "tradeoff.csv") == 5);  // header + 2 betas x 2 seeds
  json rep = load_json(out / "report.json");
  CHECK(rep["command"] == "sweep");
  REQUIRE(rep["aggregates"].size() == 2);
  for (const json& agg : rep["aggregates"]) {
    CHECK(agg["min_objective"].get<double>() <=
          agg["max_objective"].get<double>());
    CHECK(agg.contains("converged_rate"));
  }
  CHECK(rep["aggregates"][0]["beta"] == 0.5);
}

TEST_CASE("sweep-k reports kc and ikc as identical on a single value") {
  fs::path dir = fresh_dir("sweepk");
  std::ofstream csv(dir / "data.csv");
  csv << "x,v\n";
  for (int i = 0; i < 12; ++i) csv << i * i << ",A\n";
  csv.close();
  fs::path out = fresh_dir("sweepk_out");
  REQUIRE(cli::run({"sweep-k", "--data", (dir / "data.csv").string(), "--foi",
                    "v", "--ks", "1,2,3", "--algos", "kc,ikc", "--out",
                    out.string()}) == 0);
  CHECK(line_count(out / "tradeoff.csv") == 7);  // header + 2 algos x 3 ks
  json rep = load_json(out / "report.json");
  REQUIRE(rep["series"].size() == 2);
  const json& kc = rep["series"][0];
  const json& ikc = rep["series"][1];
  CHECK(kc["algo"] == "kc");
  CHECK(kc["objective_nonincreasing"] == true);
  CHECK(ikc["objective_nonincreasing"] == true);
  REQUIRE(kc["points"].size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(kc["points"][i]["objective"] == ikc["points"][i]["objective"]);
    CHECK(ikc["points"][i]["interpretability"] == 1.0);
  }
}

TEST_CASE("numeric FoI columns load through the bins flag") {
  fs::path dir = fresh_dir("bins_flag");
  std::ofstream(dir / "data.csv")
      << "x,age\n0,12\n1,17\n2,34\n3,56\n4,61\n5,88\n";
  fs::path out = fresh_dir("bins_out");
  REQUIRE(cli::run({"cluster", "--data", (dir / "data.csv").string(), "--foi",
                    "age", "--bins", "0,30,60,90", "--algo", "kc", "--k", "2",
                    "--out", out.string()}) == 0);
  json rep = load_json(out / "report.json");
  bool saw_interval = false;
  for (const json& cl : rep["clusters"])
    saw_interval |= cl["majority"].get<std::string>().find('[') == 0;
  CHECK(saw_interval);
}

}  // TEST_SUITE
