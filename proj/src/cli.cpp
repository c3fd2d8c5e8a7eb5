#include "mebkit/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <numeric>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "mebkit/cluster_testing.hpp"
#include "mebkit/convexity.hpp"
#include "mebkit/diameter.hpp"
#include "mebkit/errors.hpp"
#include "mebkit/io.hpp"
#include "mebkit/meb.hpp"
#include "mebkit/mkeb.hpp"

namespace mebkit {

namespace {

using json = nlohmann::ordered_json;

json to_json(PointView p) { return json(std::vector<double>(p.begin(), p.end())); }

json to_json(const PointSet& points) {
  json rows = json::array();
  for (std::size_t i = 0; i < points.size(); ++i) rows.push_back(to_json(points[i]));
  return rows;
}

json ball_payload(const MebSolution& sol, const PointSet& points) {
  const double tol = geometric_tol(points);
  bool encloses = true;
  for (std::size_t i = 0; i < points.size(); ++i) {
    encloses = encloses && sol.ball.contains(points[i], tol);
  }
  return json{{"algorithm", to_string(sol.algorithm)},
              {"center", sol.ball.center.coords()},
              {"radius", sol.ball.radius},
              {"squared_radius", sol.squared_radius},
              {"support_indices", sol.support.indices},
              {"multipliers", sol.support.multipliers},
              {"iterations", sol.iterations},
              {"encloses", encloses}};
}

json verdict_payload(const TestVerdict& v) {
  return json{{"outcome", to_string(v.outcome)},
              {"witness", v.witness ? to_json(*v.witness) : json(nullptr)},
              {"witness_indices", v.witness_indices},
              {"rounds", v.rounds_used},
              {"round_budget", v.round_budget},
              {"seed", v.seed}};
}

json mkeb_payload(const MkebSolution& s) {
  return json{{"center", s.ball.center.coords()},
              {"radius", s.ball.radius},
              {"k", s.k},
              {"covered_count", s.covered.size()},
              {"covered", s.covered},
              {"sample_size", s.sample_size},
              {"exact_path", s.exact_path}};
}

// Options shared by every subcommand.
struct Globals {
  std::string input;
  std::string format;
  std::string output;
  std::uint64_t seed = 0;
};

std::optional<PointFormat> chosen_format(const Globals& g) {
  if (g.format.empty()) return std::nullopt;
  return parse_format(g.format);
}

std::string read_input_text(const Globals& g) {
  if (g.input.empty() || g.input == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(g.input, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open input '" + g.input + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

PointFormat input_format(const Globals& g) {
  if (auto f = chosen_format(g)) return *f;
  if (g.input.empty() || g.input == "-") return PointFormat::csv;
  return infer_format(g.input);
}

PointSet load_points(const Globals& g) {
  const std::string text = read_input_text(g);
  return input_format(g) == PointFormat::json ? parse_points_json(text) : parse_points_csv(text);
}

std::vector<AABox> load_boxes(const Globals& g) {
  const std::string text = read_input_text(g);
  std::vector<AABox> boxes;
  if (input_format(g) == PointFormat::json) {
    json doc;
    try {
      doc = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), 1);
    }
    if (!doc.is_object() || !doc.contains("boxes") || !doc["boxes"].is_array()) {
      throw ParseError("expected an object with a \"boxes\" array", 1);
    }
    for (const auto& b : doc["boxes"]) {
      if (!b.is_object() || !b.contains("lower") || !b.contains("upper")) {
        throw ParseError("each box needs \"lower\" and \"upper\"", 1);
      }
      try {
        boxes.emplace_back(b["lower"].get<std::vector<double>>(),
                           b["upper"].get<std::vector<double>>());
      } catch (const json::type_error&) {
        throw ParseError("box bounds must be numeric arrays", 1);
      }
    }
  } else {
    // One box per row: lower_1..lower_d, upper_1..upper_d.
    const PointSet rows = parse_points_csv(text);
    if (rows.dim() % 2 != 0) throw InvalidArgument("box rows need an even number of columns");
    const std::size_t d = rows.dim() / 2;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      PointView r = rows[i];
      boxes.emplace_back(std::vector<double>(r.begin(), r.begin() + d),
                         std::vector<double>(r.begin() + d, r.end()));
    }
  }
  return boxes;
}

ConvexCombination combination_from(const PointSet& points, std::vector<double> weights) {
  const std::size_t n = points.size();
  if (weights.empty()) weights.assign(n, 1.0 / static_cast<double>(n));
  if (weights.size() != n) {
    throw InvalidArgument("--weights needs one entry per point (" + std::to_string(n) + ")");
  }
  std::vector<double> target(points.dim(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t a = 0; a < points.dim(); ++a) target[a] += weights[i] * points[i][a];
  }
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  return ConvexCombination{std::move(idx), std::move(weights), Point(std::move(target))};
}

ConvexBody make_body(const std::string& shape, double radius, const std::vector<double>& half,
                     std::size_t d) {
  if (shape == "ball") return ConvexBody::ball(radius);
  if (half.empty()) return ConvexBody::box(std::vector<double>(d, radius));
  if (half.size() != d) {
    throw DimensionMismatch("--half-extents has " + std::to_string(half.size()) +
                            " entries, points have d = " + std::to_string(d));
  }
  return ConvexBody::box(half);
}

json error_payload(const std::string& command, const char* kind, const std::string& message,
                   int code) {
  return json{{"command", command},
              {"error", json{{"kind", kind}, {"message", message}}},
              {"exit_code", code},
              {"tool_version", kToolVersion}};
}

int exit_code_for(const Error& e) {
  if (dynamic_cast<const GuardExceeded*>(&e) || dynamic_cast<const ConvergenceError*>(&e)) {
    return kExitCompute;
  }
  return kExitInput;
}

void emit(const json& doc, const std::string& path, std::ostream& out) {
  const std::string text = doc.dump(2) + "\n";
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InvalidArgument("cannot write output '" + path + "'");
  file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum enclosing balls, clustering testers, convexity and diameter tools",
               "meb-kit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  Globals g;
  app.add_option("--input", g.input, "Point file (CSV or JSON); stdin when omitted");
  app.add_option("--format", g.format, "Input/output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", g.seed, "Master seed for all randomness");
  app.add_option("--output", g.output, "Write the report here instead of stdout");

  // meb
  auto* meb = app.add_subcommand("meb", "Minimum enclosing ball")->fallthrough();
  std::string meb_algo = "exact";
  std::size_t bc_k = 100;
  double meb_tol = 1e-6;
  std::size_t max_iter = 100000;
  meb->add_option("--algo", meb_algo)->check(CLI::IsMember({"exact", "bc", "eh", "hr"}));
  meb->add_option("--k", bc_k, "Iterations for bc")->check(CLI::PositiveNumber);
  meb->add_option("--tol", meb_tol, "Relative duality-gap tolerance for eh");
  meb->add_option("--max-iter", max_iter, "Iteration limit for eh");

  // mkeb
  auto* mkeb = app.add_subcommand("mkeb", "Minimum k-enclosing ball")->fallthrough();
  std::optional<std::size_t> mk_k, mk_z;
  bool mk_sample = false;
  double mk_eps = 0.1, mk_delta = 0.1;
  auto* opt_k = mkeb->add_option("--k", mk_k, "Points to cover");
  auto* opt_z = mkeb->add_option("--z", mk_z, "Outliers to drop (k = n - z)");
  opt_k->excludes(opt_z);
  mkeb->add_flag("--sample", mk_sample, "Sampled outlier variant driven by --eps/--delta");
  mkeb->add_option("--eps", mk_eps);
  mkeb->add_option("--delta", mk_delta);

  // diameter
  auto* diam = app.add_subcommand("diameter", "Diameter, exact or streamed")->fallthrough();
  std::string diam_algo = "brute";
  double diam_eps = 0.1;
  diam->add_option("--algo", diam_algo)
      ->check(CLI::IsMember({"brute", "calipers", "sweep", "stream2", "streameps"}));
  diam->add_option("--eps", diam_eps, "Accuracy for streameps");

  // test-cluster
  auto* tc = app.add_subcommand("test-cluster", "Clustering property testers")->fallthrough();
  std::string tc_mode = "1s", tc_body = "ball";
  double tc_radius = 1.0, tc_eps = 0.1, tc_delta = 0.1, tc_c = kDefaultRoundConstant;
  std::vector<double> tc_half;
  std::size_t tc_k = 1, tc_trials = 1;
  tc->add_option("--mode", tc_mode)->check(CLI::IsMember({"1s", "kg", "outliers"}));
  tc->add_option("--body", tc_body)->check(CLI::IsMember({"ball", "box"}));
  tc->add_option("--radius", tc_radius, "Ball radius (box: default half extent)");
  tc->add_option("--half-extents", tc_half, "Box half extents, comma separated")->delimiter(',');
  tc->add_option("--eps", tc_eps);
  tc->add_option("--delta", tc_delta);
  tc->add_option("--k", tc_k, "Translates for kg");
  tc->add_option("--c", tc_c, "Round constant for kg");
  tc->add_option("--trials", tc_trials, "Independent runs; trial t uses seed + t")
      ->check(CLI::PositiveNumber);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Jung, variant and fractional Helly bounds")->fallthrough();
  std::string bound_kind;
  double frac_alpha = 0.5;
  std::optional<std::size_t> frac_dim;
  bounds->add_option("kind", bound_kind)
      ->required()
      ->check(CLI::IsMember({"jung", "variant", "fractional-helly"}));
  bounds->add_option("--alpha", frac_alpha);
  bounds->add_option("--dim", frac_dim, "Dimension for fractional-helly without input");

  // convexity
  auto* conv = app.add_subcommand("convexity", "Radon, Caratheodory and Helly routines")->fallthrough();
  std::string conv_op;
  std::size_t nodim_r = 1;
  std::vector<double> conv_weights;
  conv->add_option("op", conv_op)
      ->required()
      ->check(CLI::IsMember({"radon", "caratheodory", "helly-boxes", "nodim"}));
  conv->add_option("--r", nodim_r, "Points to select for nodim")->check(CLI::PositiveNumber);
  conv->add_option("--weights", conv_weights, "Convex weights, comma separated; uniform by default")
      ->delimiter(',');

  // gen
  auto* gen = app.add_subcommand("gen", "Synthetic instances")->fallthrough();
  std::string gen_kind = "uniform-ball", points_out;
  std::size_t gen_n = 100, gen_d = 2;
  GenParams gp;
  std::vector<std::string> kinds(std::begin(kInstanceKinds), std::end(kInstanceKinds));
  gen->add_option("--kind", gen_kind)->check(CLI::IsMember(kinds));
  gen->add_option("--n", gen_n)->check(CLI::PositiveNumber);
  gen->add_option("--d", gen_d)->check(CLI::PositiveNumber);
  gen->add_option("--k", gp.k);
  gen->add_option("--separation", gp.separation);
  gen->add_option("--radius", gp.radius);
  gen->add_option("--sigma", gp.sigma);
  gen->add_option("--eps", gp.eps);
  gen->add_option("--delta", gp.delta);
  gen->add_option("--points-out", points_out, "Also write the points to this file");

  // promise
  auto* promise = app.add_subcommand("promise", "Label a clustering promise instance")->fallthrough();
  std::size_t pr_k1 = 1, pr_k2 = 2;
  double pr_eps = 1.0, pr_delta = 1.0;
  promise->add_option("--k1", pr_k1);
  promise->add_option("--eps", pr_eps);
  promise->add_option("--k2", pr_k2);
  promise->add_option("--delta", pr_delta);

  std::string command = "meb-kit";
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (!app.get_subcommands().empty()) command = app.get_subcommands().front()->get_name();
    err << "meb-kit: " << e.what() << "\nRun with --help for usage.\n";
    out << error_payload(command, "usage", e.what(), kExitUsage).dump(2) << "\n";
    return kExitUsage;
  }

  CLI::App* sub = app.get_subcommands().front();
  command = sub->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  json params = json::object();
  json result;

  try {
    if (sub == meb) {
      params = {{"algo", meb_algo}};
      const PointSet points = load_points(g);
      if (meb_algo == "exact") {
        result = ball_payload(exact_meb(points, g.seed), points);
      } else if (meb_algo == "hr") {
        result = ball_payload(hopp_reeve_meb(points), points);
        result["iteration_bound"] = hopp_reeve_iteration_cap(points.size(), points.dim());
      } else if (meb_algo == "bc") {
        params["k"] = bc_k;
        const auto bc = badoiu_clarkson(points, bc_k);
        result = ball_payload(bc.solution, points);
        result["core_indices"] = bc.core_indices;
      } else {
        params["tol"] = meb_tol;
        params["max_iter"] = max_iter;
        const DualSolution dual = elzinga_hearn_dual(points, meb_tol, max_iter);
        result = ball_payload(dual.solution, points);
        const KtResiduals kt = kt_residuals(points, dual.solution.ball, dual.lambda);
        result["dual_objective"] = dual.dual_objective;
        result["duality_gap"] = dual.duality_gap;
        result["kt_residuals"] = {{"multiplier_sum", kt.multiplier_sum},
                                  {"stationarity", kt.stationarity},
                                  {"slackness", kt.slackness},
                                  {"negativity", kt.negativity},
                                  {"feasibility", kt.feasibility}};
      }
    } else if (sub == mkeb) {
      const PointSet points = load_points(g);
      if (mk_sample) {
        params = {{"sample", true}, {"eps", mk_eps}, {"delta", mk_delta}};
        result = mkeb_payload(outlier_meb_sample(points, mk_eps, mk_delta, g.seed));
      } else {
        if (!mk_k && !mk_z) throw InvalidArgument("mkeb needs --k or --z (or --sample)");
        std::size_t k = 0;
        if (mk_k) {
          k = *mk_k;
          params["k"] = k;
        } else {
          if (*mk_z >= points.size()) throw InvalidArgument("--z must be below n");
          k = points.size() - *mk_z;
          params["z"] = *mk_z;
        }
        result = mkeb_payload(exact_mkeb(points, k));
      }
    } else if (sub == diam) {
      params = {{"algo", diam_algo}};
      const PointSet points = load_points(g);
      auto exact_payload = [](const DiameterResult& r) {
        return json{{"value", r.value},
                    {"pair", r.pair ? json{r.pair->first, r.pair->second} : json(nullptr)},
                    {"exact", r.exact},
                    {"pairs_at_max", r.pairs_at_max}};
      };
      if (diam_algo == "brute") {
        result = exact_payload(diameter_bruteforce(points));
      } else if (diam_algo == "calipers") {
        result = exact_payload(diameter_calipers_2d(points));
      } else if (diam_algo == "sweep") {
        result = exact_payload(diameter_doublesweep(points, g.seed));
      } else if (diam_algo == "stream2") {
        const StreamEstimate e = stream_2approx(points);
        result = {{"estimate", e.estimate}, {"count", e.count},
                  {"lower", e.estimate}, {"upper", 2.0 * e.estimate}};
      } else {
        params["eps"] = diam_eps;
        const StreamEstimate e = stream_eps_2d(points, diam_eps);
        result = {{"estimate", e.estimate}, {"count", e.count},
                  {"lower", e.estimate}, {"upper", (1.0 + diam_eps) * e.estimate},
                  {"directions", DirectionalSketch::direction_count(diam_eps)}};
      }
    } else if (sub == tc) {
      params = {{"mode", tc_mode}, {"eps", tc_eps}, {"delta", tc_delta}, {"trials", tc_trials}};
      const PointSet points = load_points(g);
      std::optional<ConvexBody> body;
      if (tc_mode != "outliers") {
        params["body"] = tc_body;
        if (tc_body == "ball") {
          params["radius"] = tc_radius;
        } else {
          params["half_extents"] = tc_half.empty() ? std::vector<double>(points.dim(), tc_radius) : tc_half;
        }
        body = make_body(tc_body, tc_radius, tc_half, points.dim());
      }
      if (tc_mode == "kg") {
        params["k"] = tc_k;
        params["c"] = tc_c;
      }
      json runs = json::array();
      std::size_t rejections = 0;
      for (std::size_t t = 0; t < tc_trials; ++t) {
        const std::uint64_t seed = g.seed + t;
        if (tc_mode == "outliers") {
          const MkebSolution s = outlier_meb_sample(points, tc_eps, tc_delta, seed);
          json run = mkeb_payload(s);
          const bool ok = s.covered.size() >= s.k;
          run.erase("covered");
          run["outcome"] = ok ? "accept" : "reject";
          run["seed"] = seed;
          rejections += ok ? 0 : 1;
          runs.push_back(std::move(run));
        } else {
          const TestVerdict v = tc_mode == "1s"
                                    ? one_s_tester(points, *body, tc_eps, tc_delta, seed)
                                    : k_g_tester(points, *body, tc_k, tc_c, tc_delta, seed);
          rejections += v.outcome == Outcome::reject ? 1 : 0;
          runs.push_back(verdict_payload(v));
        }
      }
      result = {{"trials", tc_trials},
                {"rejections", rejections},
                {"rejection_rate", static_cast<double>(rejections) / static_cast<double>(tc_trials)},
                {"verdicts", std::move(runs)}};
    } else if (sub == bounds) {
      params = {{"kind", bound_kind}};
      if (bound_kind == "fractional-helly") {
        params["alpha"] = frac_alpha;
        std::size_t d = 0;
        if (frac_dim) {
          d = *frac_dim;
        } else {
          d = load_points(g).dim();
        }
        params["dim"] = d;
        result = {{"beta", fractional_helly_beta(d, frac_alpha)}};
      } else {
        const PointSet points = load_points(g);
        const JungBound jb = jung_bound(points);
        const double tol = geometric_tol(points);
        if (bound_kind == "jung") {
          result = {{"bound", jb.bound},
                    {"diameter", jb.diameter},
                    {"meb_radius", jb.meb_radius},
                    {"holds", jb.meb_radius <= jb.bound + tol},
                    {"tight", jb.tight}};
        } else {
          const double beta = barycentric_circumradius(points);
          const double bound = std::min(beta, jb.bound);
          result = {{"meb_radius", jb.meb_radius},
                    {"barycentric_circumradius", beta},
                    {"jung", jb.bound},
                    {"bound", bound},
                    {"holds", jb.meb_radius <= bound + tol}};
        }
      }
    } else if (sub == conv) {
      params = {{"op", conv_op}};
      if (conv_op == "helly-boxes") {
        const std::vector<AABox> boxes = load_boxes(g);
        const HellyReport h = helly_check_boxes(boxes);
        result = {{"boxes", boxes.size()},
                  {"subfamilies_intersect", h.subfamilies_intersect},
                  {"family_intersects", h.family_intersects},
                  {"implication_holds", h.implication_holds},
                  {"common_point", h.common_point ? json(h.common_point->coords()) : json(nullptr)},
                  {"failing_subfamily", h.failing_subfamily}};
      } else {
        const PointSet points = load_points(g);
        if (conv_op == "radon") {
          const RadonPartition rp = radon_partition(points);
          result = {{"positive", rp.positive},
                    {"rest", rp.rest},
                    {"alpha", rp.alpha},
                    {"witness", rp.witness.coords()}};
        } else if (conv_op == "caratheodory") {
          if (!conv_weights.empty()) params["weights"] = conv_weights;
          const ConvexCombination combo = combination_from(points, conv_weights);
          const ConvexCombination reduced = caratheodory_reduce(points, combo);
          std::vector<double> recon(points.dim(), 0.0);
          for (std::size_t j = 0; j < reduced.indices.size(); ++j) {
            for (std::size_t a = 0; a < points.dim(); ++a) {
              recon[a] += reduced.coefficients[j] * points[reduced.indices[j]][a];
            }
          }
          result = {{"indices", reduced.indices},
                    {"coefficients", reduced.coefficients},
                    {"target", reduced.target.coords()},
                    {"reconstruction_error", distance(recon, reduced.target)}};
        } else {
          params["r"] = nodim_r;
          if (!conv_weights.empty()) params["weights"] = conv_weights;
          const ConvexCombination combo = combination_from(points, conv_weights);
          const NodimSelection sel = nodim_caratheodory(points, combo, nodim_r);
          const double r = static_cast<double>(nodim_r);
          result = {{"chosen", sel.chosen},
                    {"achieved", sel.achieved},
                    {"diameter", sel.diameter},
                    {"existence_bound", sel.diameter / std::sqrt(2.0 * r)},
                    {"greedy_bound", sel.diameter / std::sqrt(r)},
                    {"target", combo.target.coords()}};
        }
      }
    } else if (sub == gen) {
      params = {{"kind", gen_kind}, {"n", gen_n}, {"d", gen_d}};
      if (gen_kind == "clustered" || gen_kind == "clusterable" || gen_kind == "far") params["k"] = gp.k;
      if (gen_kind == "clustered") {
        params["separation"] = gp.separation;
        params["radius"] = gp.radius;
      } else if (gen_kind == "clusterable") {
        params["separation"] = gp.separation;
        params["eps"] = gp.eps;
      } else if (gen_kind == "far") {
        params["delta"] = gp.delta;
      } else if (gen_kind == "gaussian") {
        params["sigma"] = gp.sigma;
      } else {
        params["radius"] = gp.radius;
      }
      const GeneratedInstance inst = gen_instance(gen_kind, gen_n, gen_d, g.seed, gp);
      result = {{"kind", inst.kind}, {"n", inst.points.size()}, {"d", inst.points.dim()}};
      if (!inst.labels.empty()) result["labels"] = inst.labels;
      if (!inst.centers.empty()) {
        json centers = json::array();
        for (const auto& c : inst.centers) centers.push_back(c.coords());
        result["centers"] = std::move(centers);
      }
      if (gen_kind == "clusterable") result["cover_radius"] = inst.cover_radius;
      if (gen_kind == "far") result["scattered"] = inst.scattered;
      if (points_out.empty()) {
        result["points"] = to_json(inst.points);
      } else {
        const PointFormat f = chosen_format(g).value_or(infer_format(points_out));
        write_points(points_out, inst.points, f);
        result["points_out"] = points_out;
      }
    } else if (sub == promise) {
      params = {{"k1", pr_k1}, {"eps", pr_eps}, {"k2", pr_k2}, {"delta", pr_delta}};
      const PointSet points = load_points(g);
      const PromiseLabel label = promise_label(points, pr_k1, pr_eps, pr_k2, pr_delta);
      const ScatteredPoints sc = scattered_points(points, pr_delta);
      result = {{"yes_holds", label.yes_holds},
                {"no_holds", label.no_holds},
                {"label", to_string(label.label)},
                {"scattered_count", sc.count},
                {"scattered_exact", sc.exact}};
    }
  } catch (const Error& e) {
    const int code = exit_code_for(e);
    err << "meb-kit " << command << ": " << e.what() << "\n";
    json payload = error_payload(command, e.kind(), e.what(), code);
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) payload["error"]["line"] = pe->line();
    if (const auto* de = dynamic_cast<const DegenerateInput*>(&e)) payload["error"]["subset"] = de->subset();
    try {
      emit(payload, g.output, out);
    } catch (const Error&) {
      emit(payload, "", out);
    }
    return code;
  } catch (const std::exception& e) {
    err << "meb-kit " << command << ": " << e.what() << "\n";
    out << error_payload(command, "internal", e.what(), kExitCompute).dump(2) << "\n";
    return kExitCompute;
  }

  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  json report = {{"command", command},
                 {"parameters", std::move(params)},
                 {"result", std::move(result)},
                 {"seed", g.seed},
                 {"timing_ms", ms},
                 {"tool_version", kToolVersion}};
  try {
    emit(report, g.output, out);
  } catch (const Error& e) {
    err << "meb-kit: " << e.what() << "\n";
    out << error_payload(command, e.kind(), e.what(), kExitInput).dump(2) << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace mebkit
