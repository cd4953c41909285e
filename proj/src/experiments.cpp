#include "assouad/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>

#include "assouad/errors.hpp"

namespace assouad {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string num(double v) { return report::full_number(v); }

}  // namespace

FiniteMetricSpace scaled_item(const ScaledSubsetSequence& seq, std::size_t i) {
  const auto& [a, u] = seq.items.at(i);
  return scale(restrict_to(a), u);
}

void finalize(ExperimentReport& r) {
  r.verdict = std::all_of(r.steps.begin(), r.steps.end(), [](const StepRecord& s) { return s.pass; });
}

report::Json to_json(const ExperimentReport& r) {
  report::Json j;
  j["name"] = r.name;
  j["verdict"] = r.verdict ? "pass" : "fail";
  report::Json steps = report::Json::array();
  for (const auto& s : r.steps) {
    report::Json o;
    o["index"] = s.index;
    o["label"] = s.label;
    o["measured"] = s.measured;
    o["bound"] = s.bound;
    o["pass"] = s.pass;
    o["detail"] = s.detail;
    steps.push_back(std::move(o));
  }
  j["steps"] = std::move(steps);
  j["notes"] = r.notes;
  return j;
}

std::string report_table(const ExperimentReport& r) {
  std::vector<std::vector<std::string>> rows;
  for (const auto& s : r.steps)
    rows.push_back({std::to_string(s.index), s.label, report::table_number(s.measured),
                    report::table_number(s.bound), s.pass ? "pass" : "FAIL", s.detail});
  std::string out = r.name + ": " + (r.verdict ? "pass" : "fail") + "\n";
  out += report::render_table({"i", "check", "measured", "bound", "result", "detail"}, rows);
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

// ---------------------------------------------------------------------------

ExperimentReport pseudo_cone_convergence(const ScaledSubsetSequence& seq, const FiniteMetricSpace& p,
                                         const ConvergenceOptions& options) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.name = "pseudo-cone-convergence";
  const double dp = diameter(p);
  double prev = kInfinity;
  for (std::size_t i = 0; i < seq.items.size(); ++i) {
    const FiniteMetricSpace y = scaled_item(seq, i);
    const GhResult g = gh_distance(y, p, options.gh);
    StepRecord s;
    s.index = i;
    s.label = "gh";
    s.measured = g.value;
    s.bound = i < options.burn_in ? kInfinity : prev + options.monotone_tol;
    if (i + 1 == seq.items.size()) s.bound = std::min(s.bound, options.convergence_tol);
    const double gap = std::abs(diameter(y) - dp);
    const bool diameter_ok = gap <= 2.0 * g.upper * (1.0 + 1e-12) + 1e-15;
    s.pass = s.measured <= s.bound && diameter_ok;
    s.detail = std::string("kind=") + to_string(g.kind) + " lower=" + num(g.lower) +
               " diameter_gap=" + num(gap) + (diameter_ok ? "" : " diameter-bound-violated");
    rep.steps.push_back(std::move(s));
    prev = g.value;
  }
  rep.notes.push_back("convergence_tol=" + num(options.convergence_tol) +
                      " burn_in=" + std::to_string(options.burn_in));
  rep.notes.push_back("interval results are judged by their upper end");
  finalize(rep);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

ExperimentReport dimension_inequality_check(const FiniteMetricSpace& x, const ScaledSubsetSequence& seq,
                                            const FiniteMetricSpace& p, const InequalityOptions& options,
                                            const ExperimentReport* convergence) {
  const auto t0 = Clock::now();
  ExperimentReport conv;
  if (!convergence) {
    conv = pseudo_cone_convergence(seq, p, options.convergence);
    convergence = &conv;
  }
  if (!convergence->verdict)
    throw PrerequisiteNotMet("pseudo-cone convergence failed; the inequality check needs it");

  // Unless the caller fixes the scales, both windows start at each space's
  // own default r_min and span the same number of octaves (the smaller span).
  DimensionParams px = options.params, pp = options.params;
  if (options.params.r_min <= 0.0 && options.params.r_max <= 0.0) {
    const ScaleWindow wx = resolve_window(x, options.params), wp = resolve_window(p, options.params);
    const double span = std::min(wx.r_max / wx.r_min, wp.r_max / wp.r_min);
    px.r_min = wx.r_min;
    px.r_max = wx.r_min * span;
    pp.r_min = wp.r_min;
    pp.r_max = wp.r_min * span;
  }
  const auto upper = [&](const FiniteMetricSpace& s, const DimensionParams& prm) {
    return options.upper_method == DimensionMethod::subset_extremal ? assouad_estimate_subsets(s, prm)
                                                                    : assouad_estimate_covering(s, prm);
  };
  const DimensionEstimate ux = upper(x, px), up = upper(p, pp);
  const DimensionEstimate lx = lower_assouad_estimate(x, px);
  const DimensionEstimate lp = lower_assouad_estimate(p, pp);

  ExperimentReport rep;
  rep.name = "dimension-inequality";
  StepRecord a;
  a.index = 0;
  a.label = "upper(P)<=upper(X)+slack";
  a.measured = up.beta_hat;
  a.bound = ux.beta_hat + options.slack;
  a.pass = a.measured <= a.bound;
  a.detail = std::string("method=") + to_string(options.upper_method);
  StepRecord b;
  b.index = 1;
  b.label = "lower(X)<=lower(P)+slack";
  b.measured = lx.beta_hat;
  b.bound = lp.beta_hat + options.slack;
  b.pass = b.measured <= b.bound;
  b.detail = "method=subset-extremal";
  rep.steps = {a, b};
  rep.notes.push_back("empirical window-restricted exponents, not dimensions; slack=" +
                      num(options.slack));
  rep.notes.push_back("window X: rho_min=" + num(px.rho_min) + " r_min=" + num(px.r_min) +
                      " r_max=" + num(px.r_max));
  rep.notes.push_back("window P: rho_min=" + num(pp.rho_min) + " r_min=" + num(pp.r_min) +
                      " r_max=" + num(pp.r_max));
  finalize(rep);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

ExperimentReport ball_convergence_check(const FiniteMetricSpace& k, std::size_t p,
                                        const std::vector<SubsetView>& samples, double r,
                                        double mesh, std::size_t first_index) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.name = "ball-convergence";
  const auto trace = [&](const SubsetView& ball, const SubsetView& a) {
    std::vector<std::size_t> idx;
    for (std::size_t v : ball.indices())
      if (a.contains(v)) idx.push_back(v);
    return SubsetView(k, std::move(idx));
  };
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const std::size_t i = first_index + s;
    const SubsetView& a = samples[s];
    if (!a.base().same_instance(k)) throw DifferentBaseSpace();
    if (!a.contains(p)) throw HypothesisViolated(i, 0);
    const double step = std::ldexp(1.0, -static_cast<int>(i));
    const std::uint64_t kmax = std::uint64_t{1} << (2 * i);
    std::map<std::size_t, double> seen;  // ball size -> Hausdorff distance
    double worst = 0.0;
    for (std::uint64_t kk = 0; kk <= kmax; ++kk) {
      const SubsetView ball = closed_ball(k, p, static_cast<double>(kk) * step);
      auto it = seen.find(ball.size());
      if (it == seen.end())
        it = seen.emplace(ball.size(), hausdorff_distance(k, ball, trace(ball, a))).first;
      if (it->second > step) throw HypothesisViolated(i, static_cast<std::size_t>(kk));
      worst = std::max(worst, it->second);
    }
    const SubsetView ball = closed_ball(k, p, r);
    StepRecord rec;
    rec.index = i;
    rec.label = "d_H(B(p,R;K),B(p,R;A_i))";
    rec.measured = hausdorff_distance(k, ball, trace(ball, a));
    rec.bound = 2.0 * step + mesh;
    rec.pass = rec.measured <= rec.bound;
    rec.detail = "hypothesis_max=" + num(worst);
    rep.steps.push_back(std::move(rec));
  }
  rep.notes.push_back("R=" + num(r) + " mesh=" + num(mesh));
  finalize(rep);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

GraphSample random_connected_graph(std::size_t vertices, std::size_t extra_edges, std::uint64_t seed) {
  if (vertices == 0) throw EmptySubset();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> length(0.1, 1.0);
  std::vector<Edge> edges;
  for (std::size_t v = 1; v < vertices; ++v) {
    std::uniform_int_distribution<std::size_t> parent(0, v - 1);
    edges.push_back({parent(rng), v, length(rng)});
  }
  if (vertices > 1) {
    std::uniform_int_distribution<std::size_t> any(0, vertices - 1);
    for (std::size_t e = 0; e < extra_edges; ++e) {
      const std::size_t u = any(rng), v = any(rng);
      if (u != v) edges.push_back({u, v, length(rng)});
    }
  }
  GraphSample g;
  for (const auto& e : edges) g.mesh = std::max(g.mesh, e.length);
  g.space = graph_length_space(vertices, edges);
  return g;
}

ExperimentReport concentric_ball_check(const std::vector<GraphSample>& graphs) {
  const auto t0 = Clock::now();
  ExperimentReport rep;
  rep.name = "concentric-balls";
  for (std::size_t gi = 0; gi < graphs.size(); ++gi) {
    const auto& g = graphs[gi];
    const FiniteMetricSpace& x = g.space;
    double ecc = 0.0;
    for (double v : x.row(0)) ecc = std::max(ecc, v);
    std::vector<double> radii;
    for (int t = 0; t <= 8; ++t) radii.push_back(ecc * t / 8.0);
    double worst = -kInfinity;
    double wr = 0.0, wR = 0.0;
    for (std::size_t a = 0; a < radii.size(); ++a)
      for (std::size_t b = a + 1; b < radii.size(); ++b) {
        const double excess = hausdorff_distance(x, closed_ball(x, 0, radii[a]), closed_ball(x, 0, radii[b])) -
                              (radii[b] - radii[a]);
        if (excess > worst) {
          worst = excess;
          wr = radii[a];
          wR = radii[b];
        }
      }
    StepRecord s;
    s.index = gi;
    s.label = "d_H-|r-R|<=mesh";
    s.measured = worst;
    s.bound = g.mesh;
    s.pass = worst <= g.mesh;
    s.detail = "n=" + std::to_string(x.size()) + " worst r=" + num(wr) + " R=" + num(wR);
    rep.steps.push_back(std::move(s));
  }
  finalize(rep);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

ExperimentReport telescope_lemma_checks(const AsymptoticExampleSpec& spec, double r) {
  const auto t0 = Clock::now();
  if (spec.truncation < 2) throw TruncationTooSmall("lemma checks need at least two blocks");
  const FiniteMetricSpace x = asymptotic_example(spec);
  const AsymptoticBlocks ab = asymptotic_blocks(spec);
  const std::vector<long> block = asymptotic_block_of(spec);
  const std::size_t nb = ab.blocks.size();

  ExperimentReport rep;
  rep.name = "asymptotic-example-lemmas";
  std::vector<std::size_t> skipped;
  for (std::size_t i = 0; i < nb; ++i) {
    if (i >= 1) {
      StepRecord s;
      s.index = i;
      s.label = "sep-ratio<16";
      s.measured = separation(ab.blocks[i]) / separation(ab.blocks[i - 1]);
      s.bound = 16.0;
      s.pass = s.measured < s.bound;
      rep.steps.push_back(std::move(s));
    }
    const double a = ab.weights[i];
    if (!(std::ldexp(diameter(ab.blocks[i]), static_cast<int>(i) + 1) > r)) {
      skipped.push_back(i);
      continue;
    }
    const SubsetView ball = closed_ball(x, 0, a * r);
    std::size_t later = 0;
    std::vector<std::size_t> own;
    for (std::size_t v : ball.indices()) {
      if (block[v] > static_cast<long>(i)) ++later;
      if (block[v] < 0 || block[v] == static_cast<long>(i)) own.push_back(v);
    }
    StepRecord e;
    e.index = i;
    e.label = "ball-misses-later-blocks";
    e.measured = static_cast<double>(later);
    e.bound = 0.0;
    e.pass = later == 0;
    rep.steps.push_back(std::move(e));

    StepRecord h;
    h.index = i;
    h.label = "d_H(B_i,S_i)<32*2^-i";
    h.measured = hausdorff_distance(x, ball, SubsetView(x, std::move(own))) / a;
    h.bound = 32.0 * std::ldexp(1.0, -static_cast<int>(i));
    h.pass = h.measured < h.bound;
    h.detail = "ball_size=" + std::to_string(ball.size());
    rep.steps.push_back(std::move(h));
  }
  std::string note = "R=" + num(r) + " blocks=" + std::to_string(nb) + " infeasible i:";
  for (std::size_t i : skipped) note += " " + std::to_string(i);
  if (skipped.empty()) note += " none";
  rep.notes.push_back(note);
  finalize(rep);
  rep.runtime_seconds = seconds_since(t0);
  return rep;
}

std::vector<std::size_t> precompact_subsequence(const std::vector<FiniteMetricSpace>& spaces, double eps,
                                                const GhOptions& options) {
  std::vector<std::size_t> chain;
  if (spaces.empty()) return chain;
  chain.push_back(0);
  for (std::size_t j = 1; j < spaces.size(); ++j)
    if (gh_distance(spaces[chain.back()], spaces[j], options).upper <= eps) chain.push_back(j);
  return chain;
}

// ---------------------------------------------------------------------------

Scenario cantor_scenario() {
  Scenario s;
  s.x = cantor_sample(10);
  s.seq.base = s.x;
  for (int i = 1; i <= 6; ++i) {
    const double width = std::pow(3.0, -i);
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v < s.x.size(); ++v)
      if (s.x(0, v) <= width * (1.0 + 1e-12)) idx.push_back(v);
    s.seq.items.emplace_back(SubsetView(s.x, std::move(idx)), std::pow(3.0, i));
  }
  s.p = cantor_sample(4);
  s.slack = 0.1;
  return s;
}

Scenario grid_scenario() {
  Scenario s;
  const std::size_t side = 32, half = 16;
  s.x = sup_grid(side);
  s.seq.base = s.x;
  const double u = 1.0 / static_cast<double>(half - 1);
  for (std::size_t q = 0; q < 4; ++q) {
    const std::size_t ox = (q % 2) * half, oy = (q / 2) * half;
    std::vector<std::size_t> idx;
    for (std::size_t y = oy; y < oy + half; ++y)
      for (std::size_t x = ox; x < ox + half; ++x) idx.push_back(y * side + x);
    s.seq.items.emplace_back(SubsetView(s.x, std::move(idx)), u);
  }
  s.p = sup_grid(half, u);
  s.slack = 0.15;
  return s;
}

ExperimentReport ball_convergence_scenario(double r) {
  const std::size_t segments = 512;  // mesh 2^-8
  const FiniteMetricSpace k = path_graph(0.0, 2.0, segments);
  std::vector<SubsetView> samples;
  for (std::size_t i = 0; i <= 6; ++i) {
    const std::size_t stride = std::size_t{1} << (8 - i);
    std::vector<std::size_t> idx;
    for (std::size_t v = 0; v <= segments; v += stride) idx.push_back(v);
    samples.emplace_back(k, std::move(idx));
  }
  return ball_convergence_check(k, 0, samples, r, 2.0 / static_cast<double>(segments), 0);
}

std::vector<GraphSample> suite_graphs(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 master(seed);
  std::vector<GraphSample> graphs;
  for (std::size_t g = 0; g < count; ++g) {
    const std::uint64_t gs = master();
    const std::size_t n = 5 + static_cast<std::size_t>(gs % 26);
    graphs.push_back(random_connected_graph(n, n / 2, gs));
  }
  return graphs;
}

std::vector<ExperimentReport> scenario_reports(const std::string& name, const Scenario& s) {
  ExperimentReport conv = pseudo_cone_convergence(s.seq, s.p);
  conv.name = name + "/convergence";
  InequalityOptions opt;
  opt.slack = s.slack;
  ExperimentReport dim;
  try {
    dim = dimension_inequality_check(s.x, s.seq, s.p, opt, &conv);
  } catch (const PrerequisiteNotMet& e) {
    dim.verdict = false;
    dim.notes.push_back(e.what());
  }
  dim.name = name + "/dimension-inequality";
  return {conv, dim};
}

ExperimentReport precompact_scenario() {
  const Scenario cantor = cantor_scenario();
  std::vector<FiniteMetricSpace> pieces;
  for (std::size_t i = 0; i < cantor.seq.items.size(); ++i) pieces.push_back(scaled_item(cantor.seq, i));
  const double eps = 2e-2;
  const auto t0 = Clock::now();
  const auto chain = precompact_subsequence(pieces, eps);
  ExperimentReport pre;
  pre.name = "precompact-subsequence";
  for (std::size_t c = 1; c < chain.size(); ++c) {
    StepRecord s;
    s.index = chain[c];
    s.label = "gh-upper-to-previous";
    s.measured = gh_distance(pieces[chain[c - 1]], pieces[chain[c]]).upper;
    s.bound = eps;
    s.pass = s.measured <= eps;
    s.detail = "previous=" + std::to_string(chain[c - 1]);
    pre.steps.push_back(std::move(s));
  }
  std::string sel = "chain:";
  for (std::size_t c : chain) sel += " " + std::to_string(c);
  pre.notes.push_back(sel);
  finalize(pre);
  pre.runtime_seconds = seconds_since(t0);
  return pre;
}

std::vector<ExperimentReport> run_suite(std::uint64_t seed) {
  std::vector<ExperimentReport> out;
  for (auto& r : scenario_reports("cantor", cantor_scenario())) out.push_back(std::move(r));
  for (auto& r : scenario_reports("grid", grid_scenario())) out.push_back(std::move(r));
  out.push_back(ball_convergence_scenario());
  out.push_back(concentric_ball_check(suite_graphs(seed)));
  out.push_back(telescope_lemma_checks(default_asymptotic_spec(12), 1.0));
  out.push_back(precompact_scenario());
  return out;
}

}  // namespace assouad
