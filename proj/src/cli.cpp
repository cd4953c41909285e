#include "assouad/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <sstream>

#include "assouad/constructions.hpp"
#include "assouad/covering.hpp"
#include "assouad/dimension.hpp"
#include "assouad/errors.hpp"
#include "assouad/experiments.hpp"
#include "assouad/gh.hpp"
#include "assouad/kernels.hpp"
#include "assouad/metric_io.hpp"
#include "assouad/report.hpp"

namespace assouad::cli {

namespace fs = std::filesystem;
using report::Json;

FiniteMetricSpace load_space(const std::string& spec) {
  if (fs::exists(spec)) return io::read_metric(spec);
  static const std::regex builtin(R"((cantor|ap|grid|path)(\d+))");
  std::smatch m;
  if (std::regex_match(spec, m, builtin)) {
    const auto k = std::stoul(m[2].str());
    const std::string kind = m[1].str();
    if (kind == "cantor") return cantor_sample(static_cast<int>(k));
    if (kind == "ap") return arithmetic_progression(k);
    if (kind == "grid") return sup_grid(k);
    return path_graph(0.0, 2.0, k);
  }
  throw ParseError("no such file or built-in sample: " + spec);
}

namespace {

struct RunConfig {
  std::string format = "table";
  int threads = 0;
  std::string out;  // output file; stdout when empty
  std::string matrix_format = "structured";

  // inputs
  std::string in, a, b;
  std::vector<std::string> components;

  // tolerances and limits
  double tol = kDefaultTolMetric;
  std::size_t exact_limit = 8;
  std::size_t exact_cover_limit = 20;

  // ghdist
  std::string gh_mode = "auto";
  bool approx = false;

  // dim
  std::string method = "subsets";
  double rho_min = 4.0, r_min = 0.0, r_max = 0.0;
  std::size_t random_subsets = 0;
  std::uint64_t seed = 0;

  // cover
  double radius = 0.0;
  std::string cover_mode = "greedy";
  std::vector<std::size_t> subset;
  std::optional<std::size_t> center;
  double ball_radius = 0.0;
  bool doubling = false;

  // telescope
  bool no_rescale = false;
  std::string infinity_label = "inf";
  bool schedule = false;

  // asymcone
  std::size_t truncation = 8;
  double lemma_radius = 1.0;
  bool checks = false;

  // experiment
  std::string scenario = "suite";
  std::string out_dir;
};

struct Output {
  std::ostream& out;
  const RunConfig& cfg;

  void emit(const Json& structured, const std::string& table) const {
    const std::string text = cfg.format == "structured" ? report::dump_structured(structured) : table;
    if (cfg.out.empty()) out << text;
    else io::write_text(cfg.out, text);
  }
};

std::string kv_table(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::vector<std::vector<std::string>> r;
  for (const auto& [k, v] : rows) r.push_back({k, v});
  return report::render_table({"field", "value"}, r);
}

std::string tn(double v) { return report::table_number(v); }

io::MatrixFormat matrix_format(const RunConfig& c) {
  return c.matrix_format == "flat" ? io::MatrixFormat::flat : io::MatrixFormat::structured;
}

// ---------------------------------------------------------------------------

int cmd_validate(const RunConfig& c, const Output& o) {
  const FiniteMetricSpace x = io::read_metric(c.in, c.tol);
  Json j;
  j["valid"] = true;
  j["points"] = x.size();
  j["diameter"] = diameter(x);
  j["separation"] = separation(x);
  o.emit(j, kv_table({{"valid", "yes"},
                      {"points", std::to_string(x.size())},
                      {"diameter", tn(diameter(x))},
                      {"separation", tn(separation(x))}}));
  return kOk;
}

int cmd_ghdist(const RunConfig& c, const Output& o) {
  const FiniteMetricSpace x = load_space(c.a), y = load_space(c.b);
  GhOptions opt;
  opt.exact_limit = c.exact_limit;
  opt.tol = c.tol;
  GhResult r;
  if (c.gh_mode == "exact") r = gh_exact(x, y, opt);
  else if (c.gh_mode == "bounds") r = gh_bounds(x, y, opt);
  else r = gh_distance(x, y, opt);
  Json j = to_json(r);
  std::vector<std::pair<std::string, std::string>> rows{
      {"value", tn(r.value)}, {"kind", to_string(r.kind)}, {"lower", tn(r.lower)},
      {"upper", tn(r.upper)}, {"witness_pairs", std::to_string(r.witness.pairs.size())}};
  if (c.approx) {
    const ApproximationPair ap = extract_approximation(r.witness, x, y, c.tol);
    j["approximation"] = to_json(ap);
    rows.emplace_back("approximation_epsilon", tn(ap.epsilon));
  }
  o.emit(j, kv_table(rows));
  return kOk;
}

int cmd_dim(const RunConfig& c, const Output& o) {
  const FiniteMetricSpace x = load_space(c.in);
  DimensionParams p;
  p.rho_min = c.rho_min;
  p.r_min = c.r_min;
  p.r_max = c.r_max;
  p.random_subsets = c.random_subsets;
  p.seed = c.seed;
  DimensionEstimate e;
  if (c.method == "covering") e = assouad_estimate_covering(x, p);
  else if (c.method == "lower") e = lower_assouad_estimate(x, p);
  else e = assouad_estimate_subsets(x, p);
  o.emit(to_json(e), kv_table({{"beta_hat", tn(e.beta_hat)},
                               {"constant_C", tn(e.constant_C)},
                               {"method", to_string(e.method)},
                               {"bound", e.lower ? "lower" : "upper"},
                               {"rho_min", tn(e.window.rho_min)},
                               {"r_min", tn(e.window.r_min)},
                               {"r_max", tn(e.window.r_max)},
                               {"samples", std::to_string(e.samples)},
                               {"points", std::to_string(e.points.size())},
                               {"extremal_beta", tn(e.extremal_beta)},
                               {"lsq_slope", tn(e.lsq_slope)},
                               {"capped", e.capped ? "yes" : "no"},
                               {"note", "empirical estimate over the window"}}));
  return kOk;
}

int cmd_cover(const RunConfig& c, const Output& o) {
  const FiniteMetricSpace x = load_space(c.in);
  CoverOptions opt;
  opt.exact_cover_limit = c.exact_cover_limit;
  if (c.doubling) {
    const DoublingEstimate d = doubling_constant_empirical(x, opt);
    o.emit(to_json(d), kv_table({{"doubling_constant", std::to_string(d.constant)},
                                 {"exact", d.exact ? "yes" : "no"},
                                 {"witness_center", std::to_string(d.witness_center)},
                                 {"witness_radius", tn(d.witness_radius)},
                                 {"balls_examined", std::to_string(d.balls_examined)},
                                 {"note", "empirical: only balls are examined"}}));
    return kOk;
  }
  if (!(c.radius > 0.0)) throw UsageError("cover needs --r > 0 (or --doubling)");
  SubsetView s = SubsetView::all(x);
  if (c.center) s = closed_ball(x, *c.center, c.ball_radius);
  else if (!c.subset.empty()) s = SubsetView(x, c.subset);
  const CoverCertificate cert =
      covering_number(x, s, c.radius, c.cover_mode == "exact" ? CoverMode::exact : CoverMode::greedy, opt);
  std::vector<std::vector<std::string>> rows;
  for (std::size_t b = 0; b < cert.blocks.size(); ++b) {
    std::string idx;
    for (std::size_t v : cert.blocks[b].indices()) idx += (idx.empty() ? "" : " ") + std::to_string(v);
    rows.push_back({std::to_string(b), tn(diameter(cert.blocks[b])), idx});
  }
  std::string table = "r=" + tn(cert.radius) + " count=" + std::to_string(cert.count) +
                      " exactness=" + to_string(cert.exactness) + " blocks drawn from the subset\n";
  table += report::render_table({"block", "diameter", "points"}, rows);
  o.emit(to_json(cert), table);
  return kOk;
}

int cmd_telescope(const RunConfig& c, const Output& o) {
  TelescopeSpec spec;
  for (const auto& s : c.components) spec.components.push_back(load_space(s));
  spec.rescale = !c.no_rescale;
  spec.infinity_label = c.infinity_label;
  const FiniteMetricSpace t = telescope(spec);
  if (c.schedule) {
    std::vector<double> diams;
    for (const auto& comp : spec.components) diams.push_back(diameter(comp));
    const auto r = factorial_rescale_schedule(diams);
    Json j;
    j["rescale_schedule"] = r;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < r.size(); ++i) rows.push_back({std::to_string(i), tn(r[i])});
    o.emit(j, report::render_table({"i", "r_i"}, rows));
    return kOk;
  }
  const std::string text = io::format_metric(t, matrix_format(c));
  if (c.out.empty()) o.out << text;
  else io::write_text(c.out, text);
  return kOk;
}

int cmd_asymcone(const RunConfig& c, const Output& o) {
  const AsymptoticExampleSpec spec = default_asymptotic_spec(c.truncation);
  if (c.checks) {
    const ExperimentReport r = telescope_lemma_checks(spec, c.lemma_radius);
    o.emit(to_json(r), report_table(r));
    return r.verdict ? kOk : kVerdictFail;
  }
  const FiniteMetricSpace x = asymptotic_example(spec);
  if (!c.out.empty()) io::write_metric(c.out, x, matrix_format(c));
  const AsymptoticBlocks b = asymptotic_blocks(spec);
  Json j;
  j["points"] = x.size();
  Json blocks = Json::array();
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < b.blocks.size(); ++i) {
    const auto& code = b.codes[i];
    Json e;
    e["i"] = i;
    e["code"] = Json::array({code.x, code.y, code.z});
    e["weight"] = b.weights[i];
    e["separation"] = separation(b.blocks[i]);
    e["diameter"] = diameter(b.blocks[i]);
    e["ambient_points"] = b.blocks[i].indices();
    blocks.push_back(e);
    rows.push_back({std::to_string(i),
                    "(" + std::to_string(code.x) + "," + std::to_string(code.y) + "," +
                        std::to_string(code.z) + ")",
                    tn(b.weights[i]), tn(separation(b.blocks[i])), tn(diameter(b.blocks[i]))});
  }
  j["blocks"] = std::move(blocks);
  const std::string table = "points=" + std::to_string(x.size()) + "\n" +
                            report::render_table({"i", "C(i)", "weight", "separation", "diameter"}, rows);
  const std::string text = c.format == "structured" ? report::dump_structured(j) : table;
  o.out << text;
  return kOk;
}

std::vector<ExperimentReport> run_scenario(const RunConfig& c) {
  if (c.scenario == "suite") return run_suite(c.seed);
  if (c.scenario == "cantor") return scenario_reports("cantor", cantor_scenario());
  if (c.scenario == "grid") return scenario_reports("grid", grid_scenario());
  if (c.scenario == "ball") return {ball_convergence_scenario()};
  if (c.scenario == "concentric") return {concentric_ball_check(suite_graphs(c.seed))};
  if (c.scenario == "asymptotic")
    return {telescope_lemma_checks(default_asymptotic_spec(c.truncation), c.lemma_radius)};
  if (c.scenario == "precompact") return {precompact_scenario()};
  throw UsageError("unknown scenario '" + c.scenario + "'");
}

int cmd_experiment(const RunConfig& c, const Output& o) {
  const auto reports = run_scenario(c);
  Json all = Json::array();
  std::string table;
  bool ok = true;
  for (const auto& r : reports) {
    all.push_back(to_json(r));
    table += report_table(r) + "\n";
    ok = ok && r.verdict;
    if (!c.out_dir.empty()) {
      std::string stem = r.name;
      for (char& ch : stem)
        if (ch == '/') ch = '_';
      io::write_text(fs::path(c.out_dir) / (stem + ".json"), report::dump_structured(to_json(r)));
      std::vector<std::vector<std::string>> rows;
      for (const auto& s : r.steps)
        rows.push_back({std::to_string(s.index), s.label, report::full_number(s.measured),
                        report::full_number(s.bound), s.pass ? "1" : "0"});
      io::write_text(fs::path(c.out_dir) / (stem + ".csv"),
                     report::render_csv({"index", "label", "measured", "bound", "pass"}, rows));
    }
  }
  Json j;
  j["verdict"] = ok ? "pass" : "fail";
  j["reports"] = std::move(all);
  o.emit(j, table + "overall: " + (ok ? "pass" : "fail") + "\n");
  return ok ? kOk : kVerdictFail;
}

int cmd_embed(const RunConfig& c, const Output& o) {
  const FiniteMetricSpace x = load_space(c.in);
  const EmbeddedVectors e = frechet_embed(x, c.tol);
  Json j;
  j["dimension"] = e.dimension;
  j["metric"] = "max-coordinate";
  j["labels"] = x.labels();
  j["vectors"] = e.vectors;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < e.vectors.size(); ++i) {
    std::string v;
    for (double t : e.vectors[i]) v += (v.empty() ? "" : " ") + tn(t);
    rows.push_back({x.label(i), v});
  }
  o.emit(j, report::render_table({"point", "vector"}, rows));
  return kOk;
}

// ---------------------------------------------------------------------------

// Turns a config document into arguments: the `command` field names the
// subcommand and every other field becomes --field value.
std::vector<std::string> config_args(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(io::read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed config: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("command") || !doc["command"].is_string())
    throw UsageError("config needs a string field 'command'");
  std::vector<std::string> global, local;
  const auto scalar = [](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number()) return report::full_number(v.get<double>());
    throw UsageError("config values must be strings, numbers, booleans or arrays");
  };
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (it.key() == "command") continue;
    std::string flag = "--" + it.key();
    for (char& ch : flag)
      if (ch == '_') ch = '-';
    auto& dst = (it.key() == "format" || it.key() == "threads") ? global : local;
    const Json& v = it.value();
    if (v.is_boolean()) {
      if (v.get<bool>()) dst.push_back(flag);
    } else if (v.is_array()) {
      dst.push_back(flag);
      for (const auto& e : v) dst.push_back(scalar(e));
    } else {
      dst.push_back(flag);
      dst.push_back(scalar(v));
    }
  }
  global.push_back(doc["command"].get<std::string>());
  global.insert(global.end(), local.begin(), local.end());
  return global;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::vector<std::string> args;
  try {
    std::vector<std::string> rest;
    std::string config;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      if (raw_args[i] == "--config" && i + 1 < raw_args.size()) config = raw_args[++i];
      else if (raw_args[i].rfind("--config=", 0) == 0) config = raw_args[i].substr(9);
      else rest.push_back(raw_args[i]);
    }
    if (!config.empty()) {
      args = config_args(config);
      args.insert(args.end(), rest.begin(), rest.end());
    } else {
      args = std::move(rest);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  CLI::App app{"Finite metric geometry lab: GH distances, covers, dimension estimates, constructions",
               "assouad_lab"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", c.format, "Output format")
      ->check(CLI::IsMember({"table", "structured"}));
  app.add_option("--threads", c.threads, "Worker thread cap (default: all cores)")
      ->envname("ASSOUAD_LAB_THREADS");
  app.add_option("--config", "Config document with a top-level 'command' field");

  const auto output = [&](CLI::App* s) {
    s->add_option("--out", c.out, "Write output to this file instead of stdout");
  };
  const auto tolerance = [&](CLI::App* s) {
    s->add_option("--tol", c.tol, "Metric tolerance")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check a distance matrix file");
  validate->add_option("--in", c.in, "Distance matrix file")->required();
  tolerance(validate);
  output(validate);

  auto* ghdist = app.add_subcommand("ghdist", "Gromov-Hausdorff distance of two spaces");
  ghdist->add_option("--a", c.a, "First space")->required();
  ghdist->add_option("--b", c.b, "Second space")->required();
  ghdist->add_option("--mode", c.gh_mode, "auto, exact or bounds")
      ->check(CLI::IsMember({"auto", "exact", "bounds"}));
  ghdist->add_option("--exact-limit", c.exact_limit, "Largest side for the exact solver");
  ghdist->add_flag("--approx", c.approx, "Also extract an epsilon-approximation");
  tolerance(ghdist);
  output(ghdist);

  auto* dim = app.add_subcommand("dim", "Empirical Assouad-type exponent");
  dim->add_option("--in", c.in, "Space")->required();
  dim->add_option("--method", c.method, "subsets, covering or lower")
      ->check(CLI::IsMember({"subsets", "covering", "lower"}));
  dim->add_option("--rho-min", c.rho_min, "Smallest scale ratio");
  dim->add_option("--r-min", c.r_min, "Smallest scale (default 2 x min distance)");
  dim->add_option("--r-max", c.r_max, "Largest scale (default diameter / 2)");
  dim->add_option("--random-subsets", c.random_subsets, "Extra seeded random subsets");
  dim->add_option("--seed", c.seed, "Seed for random subsets");
  output(dim);

  auto* cover = app.add_subcommand("cover", "Covering number or doubling constant");
  cover->add_option("--in", c.in, "Space")->required();
  cover->add_option("--r", c.radius, "Block diameter bound");
  cover->add_option("--mode", c.cover_mode, "exact or greedy")->check(CLI::IsMember({"exact", "greedy"}));
  cover->add_option("--subset", c.subset, "Point indices of S (default: all)")->delimiter(',');
  cover->add_option("--center", c.center, "Use the ball around this point as S");
  cover->add_option("--ball-radius", c.ball_radius, "Radius of that ball");
  cover->add_option("--exact-cover-limit", c.exact_cover_limit, "Largest S for exact mode");
  cover->add_flag("--doubling", c.doubling, "Empirical doubling constant over balls");
  output(cover);

  auto* tele = app.add_subcommand("telescope", "Telescope space of the given components");
  tele->add_option("--components", c.components, "Component spaces X_0 X_1 ...")->required();
  tele->add_flag("--no-rescale", c.no_rescale, "Require diam(X_i) <= 2^-i instead of rescaling");
  tele->add_option("--infinity-label", c.infinity_label, "Label of the extra point");
  tele->add_flag("--schedule", c.schedule, "Print the factorial rescale schedule instead");
  tele->add_option("--matrix-format", c.matrix_format)->check(CLI::IsMember({"structured", "flat"}));
  output(tele);

  auto* asym = app.add_subcommand("asymcone", "Asymptotic-cone example space on the default ambient");
  asym->add_option("--truncation", c.truncation, "Number of blocks (1..31)");
  asym->add_option("--R", c.lemma_radius, "Ball radius for --checks");
  asym->add_flag("--checks", c.checks, "Run the block lemma checks");
  asym->add_option("--matrix-format", c.matrix_format)->check(CLI::IsMember({"structured", "flat"}));
  output(asym);

  auto* exp = app.add_subcommand("experiment", "Run a scenario or the whole suite");
  exp->add_option("--scenario", c.scenario, "suite, cantor, grid, ball, concentric, asymptotic or precompact");
  exp->add_option("--seed", c.seed, "Suite seed");
  exp->add_option("--truncation", c.truncation, "Blocks for the asymptotic scenario");
  exp->add_option("--R", c.lemma_radius, "Ball radius for the asymptotic scenario");
  exp->add_option("--out-dir", c.out_dir, "Also write one .json and .csv per report here");
  output(exp);

  auto* embed = app.add_subcommand("embed", "Frechet embedding into (R^n, max metric)");
  embed->add_option("--in", c.in, "Space")->required();
  tolerance(embed);
  output(embed);

  std::vector<std::string> argv_store{"assouad_lab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  if (c.threads < 0) {
    err << "usage error: --threads must be non-negative\n";
    return kUsage;
  }
  kernels::set_thread_limit(c.threads);
  const Output o{out, c};
  try {
    if (validate->parsed()) return cmd_validate(c, o);
    if (ghdist->parsed()) return cmd_ghdist(c, o);
    if (dim->parsed()) return cmd_dim(c, o);
    if (cover->parsed()) return cmd_cover(c, o);
    if (tele->parsed()) return cmd_telescope(c, o);
    if (asym->parsed()) return cmd_asymcone(c, o);
    if (exp->parsed()) return cmd_experiment(c, o);
    if (embed->parsed()) return cmd_embed(c, o);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsage;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace assouad::cli
