#include "icluster/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"

#include "icluster/baselines.hpp"
#include "icluster/beta_cluster.hpp"
#include "icluster/dataset.hpp"
#include "icluster/explain.hpp"
#include "icluster/interpretability.hpp"
#include "icluster/kcenter.hpp"
#include "icluster/metric.hpp"
#include "icluster/strong_cluster.hpp"

namespace icluster::cli {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

// ---- input assembly ---------------------------------------------------

struct InputOpts {
  std::string data;
  std::string schema_path;
  std::string foi;   // comma-separated feature names
  std::string bins;  // "e0,e1,..." or "name:e0,e1;name2:..."
};

void apply_foi(FeatureSchema& schema, const std::string& foi_csv) {
  schema.foi_indices.clear();
  for (const std::string& name : split(foi_csv, ',')) {
    std::size_t idx = schema.features.size();
    for (std::size_t f = 0; f < schema.features.size(); ++f)
      if (schema.features[f].name == name) idx = f;
    if (idx == schema.features.size())
      throw std::invalid_argument("--foi names unknown feature: " + name);
    schema.foi_indices.push_back(idx);
  }
}

std::vector<double> parse_edges(const std::string& text) {
  std::vector<double> edges;
  for (const std::string& piece : split(text, ',')) {
    double x;
    if (!parse_double(piece, x))
      throw std::invalid_argument("--bins: bad edge value: " + piece);
    edges.push_back(x);
  }
  return edges;
}

void apply_bins(FeatureSchema& schema, const std::string& spec) {
  if (spec.find(':') == std::string::npos) {
    // One anonymous edge list: applies to the sole numeric FoI feature.
    std::vector<std::string> numeric;
    for (std::size_t idx : schema.foi_indices)
      if (schema.features[idx].kind == FeatureKind::numeric)
        numeric.push_back(schema.features[idx].name);
    if (numeric.size() != 1)
      throw std::invalid_argument(
          "--bins without a feature name needs exactly one numeric FoI "
          "feature; use name:edge,edge,...");
    schema.foi_bins[numeric.front()] = parse_edges(spec);
    return;
  }
  for (const std::string& group : split(spec, ';')) {
    auto colon = group.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--bins: missing feature name in " + group);
    schema.foi_bins[group.substr(0, colon)] =
        parse_edges(group.substr(colon + 1));
  }
}

FeatureSchema schema_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open schema: " + path);
  json j = json::parse(in);
  FeatureSchema schema;
  for (const json& f : j.at("features")) {
    const std::string kind = f.at("kind");
    if (kind != "numeric" && kind != "categorical")
      throw std::invalid_argument("schema kind must be numeric|categorical");
    schema.features.push_back(
        {f.at("name"), kind == "numeric" ? FeatureKind::numeric
                                         : FeatureKind::categorical});
  }
  if (j.contains("foi")) {
    std::string names;
    for (const json& n : j["foi"]) {
      if (!names.empty()) names += ",";
      names += n.get<std::string>();
    }
    apply_foi(schema, names);
  }
  if (j.contains("bins"))
    for (auto& [name, edges] : j["bins"].items())
      schema.foi_bins[name] = edges.get<std::vector<double>>();
  return schema;
}

FeatureSchema infer_schema(const std::vector<std::vector<std::string>>& rows) {
  if (rows.size() < 2)
    throw std::runtime_error("need a header row and at least one data row");
  FeatureSchema schema;
  for (std::size_t f = 0; f < rows[0].size(); ++f) {
    bool numeric = true;
    double x;
    for (std::size_t r = 1; r < rows.size() && numeric; ++r)
      numeric = parse_double(rows[r][f], x);
    schema.features.push_back(
        {rows[0][f], numeric ? FeatureKind::numeric : FeatureKind::categorical});
  }
  return schema;
}

Dataset load_input(const InputOpts& in) {
  if (in.data.empty()) throw std::invalid_argument("--data is required");
  FeatureSchema schema = in.schema_path.empty()
                             ? infer_schema(read_csv(in.data))
                             : schema_from_json(in.schema_path);
  if (!in.foi.empty()) apply_foi(schema, in.foi);
  if (!in.bins.empty()) apply_bins(schema, in.bins);
  if (schema.foi_indices.empty())
    throw std::invalid_argument(
        "no features of interest: pass --foi or a schema with \"foi\"");
  return load_csv(in.data, schema);
}

std::vector<std::uint64_t> seed_list(std::uint64_t base, const std::string& seeds) {
  if (seeds.empty()) return {base};
  std::vector<std::uint64_t> out;
  if (seeds.find(',') != std::string::npos) {
    for (const std::string& piece : split(seeds, ','))
      out.push_back(std::stoull(piece));
    return out;
  }
  std::uint64_t count = std::stoull(seeds);
  if (count == 0) throw std::invalid_argument("--seeds must not be 0");
  for (std::uint64_t i = 0; i < count; ++i) out.push_back(base + i);
  return out;
}

// ---- running ----------------------------------------------------------

struct RunOutcome {
  Clustering clustering;
  InterpretabilityReport scores;
  bool converged = true;
  std::size_t iterations = 0;
  std::vector<TracePoint> trace;
  std::vector<std::string> warnings;
};

RunOutcome run_algo(const std::string& algo, const Dataset& d,
                    const Distances& dist, std::size_t k, double beta,
                    std::uint64_t seed, std::size_t max_iters) {
  RunOutcome out;
  if (algo == "kc") {
    out.clustering = kc_baseline(d, dist, k, seed);
  } else if (algo == "kcf") {
    out.clustering = kcf_baseline(d, dist, k, seed);
  } else if (algo == "pf") {
    out.clustering = pf_baseline(d, dist, k, seed);
  } else if (algo == "ikc") {
    out.clustering = strong_interpretability(d, dist, k, seed, 1);
  } else if (algo == "beta-ic") {
    BetaRunConfig cfg;
    cfg.beta = beta;
    cfg.max_iterations = max_iters;
    cfg.seed = seed;
    BetaRunResult r = beta_interpretable_clustering(d, dist, k, cfg);
    out.clustering = std::move(r.clustering);
    out.converged = r.converged;
    out.iterations = r.iterations;
    out.trace = std::move(r.trace);
    out.warnings = std::move(r.warnings);
  } else {
    throw std::invalid_argument("unknown --algo: " + algo +
                                " (use kc|kcf|pf|beta-ic|ikc)");
  }
  out.scores = score_clustering(d, out.clustering);
  return out;
}

void write_assignments(const std::filesystem::path& path, const Dataset& d,
                       const Clustering& c) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "node_id,cluster,foi_value\n";
  std::vector<std::size_t> of(d.size());
  for (std::size_t i = 0; i < c.clusters.size(); ++i)
    for (NodeId v : c.clusters[i].members) of[v] = i;
  for (NodeId v = 0; v < d.size(); ++v)
    out << v << "," << of[v] << "," << csv_field(d.foi_label(v)) << "\n";
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

json trace_json(const std::vector<TracePoint>& trace) {
  json arr = json::array();
  for (const TracePoint& t : trace)
    arr.push_back({{"interpretability", t.interpretability},
                   {"objective", t.objective}});
  return arr;
}

json clusters_json(const Dataset& d, const RunOutcome& run,
                   double min_support) {
  const std::vector<Explanation> expl =
      cluster_explanation(d, run.clustering, min_support);
  json arr = json::array();
  for (std::size_t i = 0; i < run.clustering.clusters.size(); ++i) {
    const auto& pc = run.scores.per_cluster[i];
    json e = explanation_json(d, expl[i]);
    arr.push_back({{"index", i},
                   {"size", pc.size},
                   {"center", run.clustering.clusters[i].center},
                   {"majority", d.foi(pc.majority).label},
                   {"score", pc.score},
                   {"explanation", render_explanation(d, expl[i])},
                   {"terms", e["terms"]}});
  }
  return arr;
}

void print_summary(const Dataset& d, const std::string& algo,
                   const RunOutcome& run) {
  std::printf("%-8s objective %-12g interpretability %-8g clusters %zu\n",
              algo.c_str(), run.clustering.objective,
              run.scores.clustering_score, run.clustering.clusters.size());
  for (std::size_t i = 0; i < run.clustering.clusters.size(); ++i) {
    const auto& pc = run.scores.per_cluster[i];
    std::printf("  cluster %-3zu size %-5zu score %-8g majority %s\n", i,
                pc.size, pc.score, d.foi(pc.majority).label.c_str());
  }
}

// ---- subcommands ------------------------------------------------------

struct CommonOpts {
  InputOpts input;
  std::string algo = "beta-ic";
  std::size_t k = 0;
  double beta = 1.0;
  std::uint64_t seed = 0;
  std::string seeds;
  double min_support = 0.2;
  std::size_t max_iters = 0;
  std::string out_dir = ".";
};

int do_cluster(const CommonOpts& o) {
  const auto t0 = std::chrono::steady_clock::now();
  Dataset d = load_input(o.input);
  Distances dist(d, euclidean_metric());
  RunOutcome run = run_algo(o.algo, d, dist, o.k, o.beta, o.seed, o.max_iters);
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();

  json rep;
  rep["algorithm"] = o.algo;
  rep["parameters"] = {{"k", o.k},          {"beta", o.beta},
                       {"seed", o.seed},    {"min_support", o.min_support},
                       {"max_iters", o.max_iters}};
  rep["objective"] = run.clustering.objective;
  rep["interpretability"] = run.scores.clustering_score;
  rep["converged"] = run.converged;
  if (o.algo == "beta-ic") {
    rep["iterations"] = run.iterations;
    rep["trace"] = trace_json(run.trace);
  }
  rep["warnings"] = run.warnings;
  rep["clusters"] = clusters_json(d, run, o.min_support);
  rep["wall_ms"] = wall_ms;

  std::filesystem::create_directories(o.out_dir);
  write_json(std::filesystem::path(o.out_dir) / "report.json", rep);
  write_assignments(std::filesystem::path(o.out_dir) / "assignments.csv", d,
                    run.clustering);
  print_summary(d, o.algo, run);
  for (const std::string& w : run.warnings)
    std::cerr << "warning: " << w << "\n";
  return run.converged ? 0 : 2;
}

int do_sweep(const CommonOpts& o, const std::string& betas_csv) {
  Dataset d = load_input(o.input);
  Distances dist(d, euclidean_metric());
  const std::vector<std::uint64_t> seeds = seed_list(o.seed, o.seeds);
  std::vector<double> betas;
  if (o.algo == "beta-ic") {
    for (const std::string& piece : split(betas_csv, ',')) {
      double b;
      if (!parse_double(piece, b))
        throw std::invalid_argument("--betas: bad value: " + piece);
      betas.push_back(b);
    }
  } else {
    betas.push_back(-1);  // placeholder: beta is meaningless for this algo
  }

  std::filesystem::create_directories(o.out_dir);
  std::ofstream tc(std::filesystem::path(o.out_dir) / "tradeoff.csv",
                   std::ios::binary);
  if (!tc) throw std::runtime_error("cannot write tradeoff.csv in " + o.out_dir);
  tc << "algo,k,beta,seed,objective,interpretability,converged,iterations\n";

  json aggregates = json::array();
  for (double beta : betas) {
    double sum_obj = 0, min_obj = 0, max_obj = 0, sum_beta = 0;
    std::size_t converged = 0;
    for (std::size_t s = 0; s < seeds.size(); ++s) {
      RunOutcome run =
          run_algo(o.algo, d, dist, o.k, beta < 0 ? 1.0 : beta, seeds[s],
                   o.max_iters);
      const double obj = run.clustering.objective;
      sum_obj += obj;
      min_obj = s ? std::min(min_obj, obj) : obj;
      max_obj = s ? std::max(max_obj, obj) : obj;
      sum_beta += run.scores.clustering_score;
      converged += run.converged ? 1 : 0;
      tc << o.algo << "," << o.k << ","
         << (beta < 0 ? std::string() : format_double(beta)) << "," << seeds[s]
         << "," << format_double(obj) << ","
         << format_double(run.scores.clustering_score) << ","
         << (run.converged ? 1 : 0) << "," << run.iterations << "\n";
    }
    const double n = static_cast<double>(seeds.size());
    json agg = {{"mean_objective", sum_obj / n},
                {"min_objective", min_obj},
                {"max_objective", max_obj},
                {"mean_interpretability", sum_beta / n},
                {"converged_rate", static_cast<double>(converged) / n}};
    if (beta >= 0) agg["beta"] = beta;
    aggregates.push_back(agg);
  }

  json rep;
  rep["command"] = "sweep";
  rep["algorithm"] = o.algo;
  rep["parameters"] = {{"k", o.k},
                       {"seeds", seeds},
                       {"min_support", o.min_support},
                       {"max_iters", o.max_iters}};
  rep["aggregates"] = aggregates;
  write_json(std::filesystem::path(o.out_dir) / "report.json", rep);
  return 0;
}

int do_sweep_k(const CommonOpts& o, const std::string& ks_csv,
               const std::string& algos_csv) {
  Dataset d = load_input(o.input);
  Distances dist(d, euclidean_metric());
  std::vector<std::size_t> ks;
  for (const std::string& piece : split(ks_csv, ','))
    ks.push_back(std::stoull(piece));
  if (ks.empty()) throw std::invalid_argument("--ks is required");
  for (std::size_t k : ks)
    if (k == 0 || k > d.size())
      throw std::invalid_argument("--ks entry out of range: " +
                                  std::to_string(k));
  const std::vector<std::string> algos = split(algos_csv, ',');
  const std::size_t m = foi_partition(d).size();

  std::filesystem::create_directories(o.out_dir);
  std::ofstream tc(std::filesystem::path(o.out_dir) / "tradeoff.csv",
                   std::ios::binary);
  if (!tc) throw std::runtime_error("cannot write tradeoff.csv in " + o.out_dir);
  tc << "algo,k,objective,interpretability\n";

  json series = json::array();
  for (const std::string& algo : algos) {
    // Everything except beta-ic sweeps k' <= k and keeps the best run, so
    // the per-algo series is non-increasing by construction.
    auto runner = [&](std::size_t kk) -> std::optional<Clustering> {
      if (algo == "kc") return greedy_kcenter(d, dist, d.all_ids(), kk, o.seed);
      if (algo == "kcf") return kcf_baseline(d, dist, kk, o.seed);
      if (algo == "pf")
        return kk < m ? std::nullopt
                      : std::optional<Clustering>(pf_baseline(d, dist, kk, o.seed));
      if (algo == "ikc")
        return kk < m ? std::nullopt
                      : std::optional<Clustering>(
                            strong_interpretability(d, dist, kk, o.seed, 1));
      throw std::invalid_argument("unknown --algos entry: " + algo);
    };

    json points = json::array();
    bool nonincreasing = true;
    double prev = 0;
    for (std::size_t i = 0; i < ks.size(); ++i) {
      Clustering c;
      if (algo == "beta-ic") {
        BetaRunConfig cfg;
        cfg.beta = o.beta;
        cfg.max_iterations = o.max_iters;
        cfg.seed = o.seed;
        c = beta_interpretable_clustering(d, dist, ks[i], cfg).clustering;
      } else {
        c = best_of_k(d, dist, ks[i], runner);
      }
      const double score = score_clustering(d, c).clustering_score;
      if (i && c.objective > prev) nonincreasing = false;
      prev = c.objective;
      points.push_back({{"k", ks[i]},
                        {"objective", c.objective},
                        {"interpretability", score}});
      tc << algo << "," << ks[i] << "," << format_double(c.objective) << ","
         << format_double(score) << "\n";
    }
    series.push_back({{"algo", algo},
                      {"points", points},
                      {"objective_nonincreasing", nonincreasing}});
  }

  json rep;
  rep["command"] = "sweep-k";
  rep["parameters"] = {{"seed", o.seed}, {"beta", o.beta}};
  rep["series"] = series;
  write_json(std::filesystem::path(o.out_dir) / "report.json", rep);
  return 0;
}

int do_synth(std::size_t n, std::size_t features, std::size_t card,
             const std::string& mix_csv, std::size_t blobs,
             std::uint64_t seed, const std::string& out_dir) {
  std::vector<double> mix;
  if (!mix_csv.empty()) {
    for (const std::string& piece : split(mix_csv, ',')) {
      double x;
      if (!parse_double(piece, x))
        throw std::invalid_argument("--mix: bad value: " + piece);
      mix.push_back(x);
    }
  }
  Dataset d = synthesize(n, features, card, mix, blobs, seed);
  std::filesystem::create_directories(out_dir);
  d.to_csv((std::filesystem::path(out_dir) / "data.csv").string());

  json features_json = json::array();
  for (const FeatureSpec& f : d.schema().features)
    features_json.push_back(
        {{"name", f.name},
         {"kind", f.kind == FeatureKind::numeric ? "numeric" : "categorical"}});
  json schema = {{"features", features_json}, {"foi", json::array({"foi"})}};
  write_json(std::filesystem::path(out_dir) / "schema.json", schema);
  return 0;
}

}  // namespace

int run(std::vector<std::string> args) {
  CLI::App app{"interpretable k-center clustering"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string betas = "0.5,0.6,0.7,0.8,0.9,1.0";
  std::string ks, algos = "kc,ikc";

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("--data", o.input.data, "input CSV with a header row");
    cmd->add_option("--schema", o.input.schema_path, "schema JSON");
    cmd->add_option("--foi", o.input.foi, "feature-of-interest name(s), comma separated");
    cmd->add_option("--bins", o.input.bins,
                    "bin edges for numeric FoI: e0,e1,... or name:e0,e1;...");
    cmd->add_option("--out", o.out_dir, "output directory");
  };

  CLI::App* cl = app.add_subcommand("cluster", "run one algorithm once");
  add_input(cl);
  cl->add_option("--algo", o.algo, "kc|kcf|pf|beta-ic|ikc");
  cl->add_option("--k", o.k, "number of clusters")->required();
  cl->add_option("--beta", o.beta, "target interpretability (beta-ic)");
  cl->add_option("--seed", o.seed, "random seed");
  cl->add_option("--min-support", o.min_support, "explanation support threshold");
  cl->add_option("--max-iters", o.max_iters, "beta-ic iteration cap (0 = 50k)");

  CLI::App* sw = app.add_subcommand("sweep", "sweep beta over seeds at fixed k");
  add_input(sw);
  sw->add_option("--algo", o.algo, "kc|kcf|pf|beta-ic|ikc");
  sw->add_option("--k", o.k, "number of clusters")->required();
  sw->add_option("--betas", betas, "comma-separated beta grid (beta-ic)");
  sw->add_option("--seed", o.seed, "base seed");
  sw->add_option("--seeds", o.seeds, "seed count from base, or explicit list");
  sw->add_option("--min-support", o.min_support, "explanation support threshold");
  sw->add_option("--max-iters", o.max_iters, "beta-ic iteration cap (0 = 50k)");

  CLI::App* sk = app.add_subcommand("sweep-k", "compare algorithms across k");
  add_input(sk);
  sk->add_option("--ks", ks, "comma-separated k values")->required();
  sk->add_option("--algos", algos, "comma-separated algorithms");
  sk->add_option("--beta", o.beta, "target for beta-ic entries");
  sk->add_option("--seed", o.seed, "random seed");
  sk->add_option("--max-iters", o.max_iters, "beta-ic iteration cap (0 = 50k)");

  std::size_t sy_n = 500, sy_features = 4, sy_card = 4, sy_blobs = 5;
  std::uint64_t sy_seed = 0;
  std::string sy_mix, sy_out = ".";
  CLI::App* sy = app.add_subcommand("synth", "write a synthetic dataset");
  sy->add_option("--n", sy_n, "rows");
  sy->add_option("--features", sy_features, "numeric feature count");
  sy->add_option("--foi-card", sy_card, "distinct FoI values");
  sy->add_option("--mix", sy_mix, "FoI value proportions, comma separated");
  sy->add_option("--blobs", sy_blobs, "gaussian blob count");
  sy->add_option("--seed", sy_seed, "random seed");
  sy->add_option("--out", sy_out, "output directory");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(std::move(args));
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*cl) return do_cluster(o);
    if (*sw) return do_sweep(o, betas);
    if (*sk) return do_sweep_k(o, ks, algos);
    if (*sy) return do_synth(sy_n, sy_features, sy_card, sy_mix, sy_blobs,
                             sy_seed, sy_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace icluster::cli
