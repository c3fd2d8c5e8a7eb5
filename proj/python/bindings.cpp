#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

#include "mebkit/cli.hpp"
#include "mebkit/cluster_testing.hpp"
#include "mebkit/convexity.hpp"
#include "mebkit/diameter.hpp"
#include "mebkit/errors.hpp"
#include "mebkit/io.hpp"
#include "mebkit/meb.hpp"
#include "mebkit/mkeb.hpp"

namespace py = pybind11;
using namespace mebkit;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

PointSet to_points(const Array& a) {
  if (a.ndim() != 2) throw InvalidArgument("points must be a 2-d array of shape (n, d)");
  const auto n = static_cast<std::size_t>(a.shape(0));
  const auto d = static_cast<std::size_t>(a.shape(1));
  if (d == 0) throw InvalidArgument("points must have at least one coordinate");
  return PointSet::from_flat(d, std::vector<double>(a.data(), a.data() + n * d));
}

Array to_array(const PointSet& p) {
  Array out({p.size(), p.dim()});
  std::copy(p.data().begin(), p.data().end(), out.mutable_data());
  return out;
}

ConvexBody make_body(std::optional<double> radius,
                     std::optional<std::vector<double>> half_extents) {
  if (radius && half_extents) throw InvalidArgument("give either radius or half_extents");
  if (half_extents) return ConvexBody::box(*half_extents);
  return ConvexBody::ball(radius.value_or(1.0));
}

py::dict ball_dict(const MebSolution& s) {
  py::dict d;
  d["algorithm"] = to_string(s.algorithm);
  d["center"] = s.ball.center.coords();
  d["radius"] = s.ball.radius;
  d["squared_radius"] = s.squared_radius;
  d["support_indices"] = s.support.indices;
  d["multipliers"] = s.support.multipliers;
  d["iterations"] = s.iterations;
  return d;
}

py::dict mkeb_dict(const MkebSolution& s) {
  py::dict d;
  d["center"] = s.ball.center.coords();
  d["radius"] = s.ball.radius;
  d["k"] = s.k;
  d["covered"] = s.covered;
  d["sample_size"] = s.sample_size;
  d["exact_path"] = s.exact_path;
  return d;
}

py::dict verdict_dict(const TestVerdict& v) {
  py::dict d;
  d["outcome"] = to_string(v.outcome);
  d["witness_indices"] = v.witness_indices;
  d["rounds_used"] = v.rounds_used;
  d["round_budget"] = v.round_budget;
  return d;
}

py::dict diameter_dict(const DiameterResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["pair"] = r.pair;
  d["exact"] = r.exact;
  d["pairs_at_max"] = r.pairs_at_max;
  return d;
}

}  // namespace

PYBIND11_MODULE(_mebkit, m) {
  m.doc() = "Minimum enclosing balls, clustering testers and related convex geometry";
  const std::string tool = kToolVersion;
  m.attr("__version__") = tool.substr(tool.find('/') + 1);

  auto base = py::register_exception<Error>(m, "MebkitError");
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DegenerateInput>(m, "DegenerateInput", base.ptr());
  py::register_exception<GuardExceeded>(m, "GuardExceeded", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  m.def(
      "meb",
      [](const Array& pts, const std::string& algo, std::size_t k, double tol,
         std::size_t max_iter, std::uint64_t seed) {
        const PointSet p = to_points(pts);
        if (algo == "exact") return ball_dict(exact_meb(p, seed));
        if (algo == "hr") return ball_dict(hopp_reeve_meb(p));
        if (algo == "bc") {
          const auto r = badoiu_clarkson(p, k, seed);
          py::dict d = ball_dict(r.solution);
          d["core_indices"] = r.core_indices;
          return d;
        }
        if (algo == "eh") {
          const DualSolution r = elzinga_hearn_dual(p, tol, max_iter);
          py::dict d = ball_dict(r.solution);
          d["lambda"] = r.lambda;
          d["dual_objective"] = r.dual_objective;
          d["duality_gap"] = r.duality_gap;
          return d;
        }
        throw InvalidArgument("unknown algorithm '" + algo + "' (exact, bc, eh, hr)");
      },
      py::arg("points"), py::arg("algo") = "exact", py::arg("k") = 100,
      py::arg("tol") = 1e-6, py::arg("max_iter") = 100000, py::arg("seed") = 0);

  m.def(
      "mkeb", [](const Array& pts, std::size_t k) { return mkeb_dict(exact_mkeb(to_points(pts), k)); },
      py::arg("points"), py::arg("k"));
  m.def(
      "outlier_meb_sample",
      [](const Array& pts, double eps, double delta, std::uint64_t seed) {
        return mkeb_dict(outlier_meb_sample(to_points(pts), eps, delta, seed));
      },
      py::arg("points"), py::arg("eps"), py::arg("delta"), py::arg("seed") = 0);

  m.def(
      "diameter",
      [](const Array& pts, const std::string& algo, std::uint64_t seed) {
        const PointSet p = to_points(pts);
        if (algo == "brute") return diameter_dict(diameter_bruteforce(p));
        if (algo == "calipers") return diameter_dict(diameter_calipers_2d(p));
        if (algo == "sweep") return diameter_dict(diameter_doublesweep(p, seed));
        throw InvalidArgument("unknown algorithm '" + algo + "' (brute, calipers, sweep)");
      },
      py::arg("points"), py::arg("algo") = "brute", py::arg("seed") = 0);
  m.def("stream_2approx", [](const Array& pts) { return stream_2approx(to_points(pts)).estimate; },
        py::arg("points"));
  m.def(
      "stream_eps_2d",
      [](const Array& pts, double eps) { return stream_eps_2d(to_points(pts), eps).estimate; },
      py::arg("points"), py::arg("eps"));

  m.def(
      "one_s_tester",
      [](const Array& pts, double eps, double delta, std::uint64_t seed,
         std::optional<double> radius, std::optional<std::vector<double>> half_extents) {
        return verdict_dict(
            one_s_tester(to_points(pts), make_body(radius, half_extents), eps, delta, seed));
      },
      py::arg("points"), py::arg("eps"), py::arg("delta"), py::arg("seed") = 0,
      py::arg("radius") = py::none(), py::arg("half_extents") = py::none());
  m.def(
      "k_g_tester",
      [](const Array& pts, std::size_t k, double c, double delta, std::uint64_t seed,
         std::optional<double> radius, std::optional<std::vector<double>> half_extents) {
        return verdict_dict(
            k_g_tester(to_points(pts), make_body(radius, half_extents), k, c, delta, seed));
      },
      py::arg("points"), py::arg("k"), py::arg("c") = 0.01, py::arg("delta") = 0.1,
      py::arg("seed") = 0, py::arg("radius") = py::none(), py::arg("half_extents") = py::none());

  m.def(
      "radon_partition",
      [](const Array& pts) {
        const RadonPartition r = radon_partition(to_points(pts));
        py::dict d;
        d["positive"] = r.positive;
        d["rest"] = r.rest;
        d["alpha"] = r.alpha;
        d["witness"] = r.witness.coords();
        return d;
      },
      py::arg("points"));
  m.def(
      "caratheodory_reduce",
      [](const Array& pts, const std::vector<double>& weights) {
        const PointSet p = to_points(pts);
        if (weights.size() != p.size()) throw DimensionMismatch("one weight per point required");
        std::vector<std::size_t> idx(p.size());
        std::vector<double> target(p.dim(), 0.0);
        for (std::size_t i = 0; i < p.size(); ++i) {
          idx[i] = i;
          for (std::size_t a = 0; a < p.dim(); ++a) target[a] += weights[i] * p[i][a];
        }
        const ConvexCombination r = caratheodory_reduce(p, {idx, weights, Point(target)});
        py::dict d;
        d["indices"] = r.indices;
        d["coefficients"] = r.coefficients;
        d["target"] = r.target.coords();
        return d;
      },
      py::arg("points"), py::arg("weights"));
  m.def(
      "jung_bound",
      [](const Array& pts) {
        const JungBound j = jung_bound(to_points(pts));
        py::dict d;
        d["bound"] = j.bound;
        d["diameter"] = j.diameter;
        d["meb_radius"] = j.meb_radius;
        d["tight"] = j.tight;
        return d;
      },
      py::arg("points"));

  m.def(
      "gen_instance",
      [](const std::string& kind, std::size_t n, std::size_t d, std::uint64_t seed,
         std::size_t k, double separation, double radius, double sigma, double eps,
         double delta) {
        GenParams gp{k, separation, radius, sigma, eps, delta};
        return to_array(gen_instance(kind, n, d, seed, gp).points);
      },
      py::arg("kind"), py::arg("n"), py::arg("d"), py::arg("seed") = 0, py::arg("k") = 2,
      py::arg("separation") = 10.0, py::arg("radius") = 1.0, py::arg("sigma") = 1.0,
      py::arg("eps") = 1.0, py::arg("delta") = 1.0);
}
