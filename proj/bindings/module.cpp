#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "thinstruct/diamond.hpp"
#include "thinstruct/distortion.hpp"
#include "thinstruct/graph.hpp"
#include "thinstruct/io.hpp"
#include "thinstruct/laakso.hpp"
#include "thinstruct/metric.hpp"

namespace py = pybind11;
using namespace thinstruct;

namespace {

EmbeddingMap map_from_spec(const GeneratedStructure& g, const std::string& spec,
                           double target_q) {
  if (spec == "identity") return identity_embedding(g.cloud, target_q);
  if (spec.rfind("randproj:", 0) == 0) {
    auto parts = split(spec, ':');
    if (parts.size() != 3)
      throw std::invalid_argument("expected randproj:<dim>:<seed>");
    return random_projection_embed(g.cloud, std::stoul(parts[1]),
                                   std::stoull(parts[2]));
  }
  throw std::invalid_argument("map must be identity or randproj:<dim>:<seed>");
}

py::dict verify_dict(const VerifyReport& vr) {
  py::dict d;
  d["pass"] = vr.pass;
  d["rel_tol"] = vr.rel_tol;
  d["copies"] = vr.copies;
  d["checks"] = vr.checks;
  d["worst"] = vr.worst_overall();
  py::dict by;
  for (std::size_t i = 0; i < vr.conditions.size(); ++i)
    by[vr.conditions[i].c_str()] = vr.worst[i];
  d["worst_by_condition"] = by;
  py::list viol;
  for (const auto& v : vr.violations) {
    py::dict h;
    h["copy"] = v.copy;
    h["condition"] = v.condition;
    h["rel_err"] = v.rel_err;
    viol.append(h);
  }
  d["violations"] = viol;
  return d;
}

py::dict bound_dict(const BoundResult& b) {
  py::dict d;
  d["family"] = b.family;
  d["k"] = b.k;
  d["p"] = b.p;
  d["q"] = b.q;
  d["c"] = b.c;
  d["gamma_max"] = b.gamma_max;
  d["gamma"] = b.gamma;
  d["eps_star"] = b.eps_star;
  d["D_min"] = b.D_min;
  return d;
}

py::dict modulus_dict(const ModulusEstimate& e) {
  py::dict d;
  d["t"] = e.t;
  d["value"] = e.value;
  d["fitted_c"] = e.fitted.c;
  d["fitted_power"] = e.fitted.power;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "recursive thin substructures, exact distance-identity verification, "
      "and embedding-obstruction audits";

  py::class_<GeneratedStructure>(m, "Structure")
      .def_property_readonly(
          "n", [](const GeneratedStructure& g) { return g.cloud.n(); })
      .def_property_readonly(
          "dim", [](const GeneratedStructure& g) { return g.cloud.dim; })
      .def_property_readonly(
          "kind", [](const GeneratedStructure& g) { return g.cloud.kind; })
      .def_property_readonly(
          "k", [](const GeneratedStructure& g) { return g.cloud.k; })
      .def_property_readonly(
          "exponent", [](const GeneratedStructure& g) { return g.cloud.q; })
      .def_property_readonly(
          "epsilon",
          [](const GeneratedStructure& g) { return g.cloud.epsilon; })
      .def_property_readonly(
          "branching",
          [](const GeneratedStructure& g) { return g.cloud.branching; })
      .def_property_readonly(
          "labels", [](const GeneratedStructure& g) { return g.cloud.labels; })
      .def_property_readonly(
          "copies",
          [](const GeneratedStructure& g) { return g.index.total_copies(); })
      .def("point",
           [](const GeneratedStructure& g, std::size_t i) {
             if (i >= g.cloud.n()) throw py::index_error();
             return std::vector<double>(g.cloud.point(i),
                                        g.cloud.point(i) + g.cloud.dim);
           })
      .def("dist",
           [](const GeneratedStructure& g, std::size_t i, std::size_t j) {
             if (i >= g.cloud.n() || j >= g.cloud.n())
               throw py::index_error();
             return g.cloud.dist(i, j);
           })
      .def("index_of",
           [](const GeneratedStructure& g, const std::string& label) {
             return g.cloud.index_of(label);
           })
      .def("__repr__", [](const GeneratedStructure& g) {
        return "<Structure kind=" + g.cloud.kind +
               " k=" + std::to_string(g.cloud.k) +
               " n=" + std::to_string(g.cloud.n()) + ">";
      });

  m.def(
      "gen_laakso",
      [](int k, double q, double eps) {
        return generate_thin_laakso(k, q, eps);
      },
      py::arg("k"), py::arg("q"), py::arg("eps"));

  m.def(
      "gen_diamond",
      [](int k, double p, double eps, int b) {
        return generate_thin_diamond(k, p, eps, b);
      },
      py::arg("k"), py::arg("p"), py::arg("eps"), py::arg("b"));

  m.def(
      "verify",
      [](const GeneratedStructure& g, double rel_tol) {
        auto vr = g.index.kind == "laakso"
                      ? verify_conditions(g.cloud, g.index, rel_tol)
                      : verify_diamond_conditions(g.cloud, g.index, rel_tol);
        return verify_dict(vr);
      },
      py::arg("structure"), py::arg("rel_tol") = 1e-9);

  m.def(
      "distortion",
      [](const GeneratedStructure& g, const std::string& map,
         double target_q) {
        auto f = map_from_spec(g, map, target_q);
        auto rep = measure_distortion(f);
        py::dict d;
        d["map"] = f.name;
        d["lip"] = rep.lip;
        d["colip"] = rep.colip;
        d["distortion"] = rep.distortion;
        d["pairs"] = rep.pairs;
        if (!g.index.levels.empty() && rep.colip > 0 && rep.colip < kInf)
          d["D_j"] = measure_level_ratios(f, g.index, rep.colip);
        return d;
      },
      py::arg("structure"), py::arg("map") = "identity",
      py::arg("target_q") = 2.0);

  m.def(
      "contract",
      [](const GeneratedStructure& g, const std::string& family,
         const std::string& map, double target_q, double c, double power) {
        auto f = map_from_spec(g, map, target_q);
        auto rep = measure_distortion(f);
        if (!(rep.colip > 0))
          throw std::invalid_argument("map is not injective on the cloud");
        ContractionAudit audit;
        if (family == "uc") {
          ModulusModel model =
              c > 0 ? power_uc_model(c, power) : lp_uc_model(target_q);
          audit = contraction_check_uc(f, g.index, model, rep.distortion,
                                       rep.colip);
        } else if (family == "rb") {
          ModulusModel model = four_point_rb_model(power);
          if (c > 0) model = power_rb_model(c, power);
          audit = contraction_check_rb(f, g.index, model, 1.0 / rep.colip,
                                       rep.lip);
        } else if (family == "amuc") {
          ModulusModel model = amuc_lp_model(g.cloud.q);
          if (c > 0) {
            model = power_uc_model(c, power);
            model.family = ModulusFamily::kAMUC;
          }
          audit = contraction_check_amuc(f, g.index, model, rep.distortion,
                                         rep.colip);
        } else {
          throw std::invalid_argument("family must be uc, rb, or amuc");
        }
        py::dict d;
        d["family"] = audit.family;
        d["copies"] = audit.copies;
        d["failures"] = audit.failures;
        d["worst_margin"] = audit.worst_margin;
        d["worst_copy"] = audit.worst_copy;
        d["D"] = audit.D;
        d["modulus_arg"] = audit.modulus_arg;
        return d;
      },
      py::arg("structure"), py::arg("family") = "uc",
      py::arg("map") = "identity", py::arg("target_q") = 2.0,
      py::arg("c") = 0.0, py::arg("power") = 2.0);

  m.def(
      "doubling",
      [](const GeneratedStructure& g, std::size_t max_radii) {
        auto est =
            doubling_constant(FiniteMetric::from_cloud(g.cloud), max_radii);
        py::dict d;
        d["upper"] = est.upper;
        d["lower"] = est.lower;
        d["balls"] = est.balls_scanned;
        return d;
      },
      py::arg("structure"), py::arg("max_radii") = 0);

  m.def(
      "mid_set",
      [](const GeneratedStructure& g, const std::string& x,
         const std::string& y, double eta) {
        auto m = FiniteMetric::from_cloud(g.cloud);
        int xi = g.cloud.index_of(x), yi = g.cloud.index_of(y);
        if (xi < 0 || yi < 0) throw std::invalid_argument("label not in cloud");
        auto ms = thinstruct::mid_set(m, xi, yi, eta);
        py::dict d;
        py::list members;
        for (int i : ms.members) members.append(m.labels[i]);
        d["members"] = members;
        d["diameter"] = ms.diameter;
        return d;
      },
      py::arg("structure"), py::arg("x"), py::arg("y"), py::arg("eta"));

  m.def(
      "four_point",
      [](const std::vector<std::vector<double>>& points, double q, double p,
         double C, std::uint64_t samples, std::uint64_t seed) {
        if (points.empty()) throw std::invalid_argument("no points");
        PointCloud c;
        c.dim = points[0].size();
        c.q = q;
        for (std::size_t i = 0; i < points.size(); ++i) {
          if (points[i].size() != c.dim)
            throw std::invalid_argument("inconsistent point dimensions");
          c.labels.push_back("p" + std::to_string(i));
          c.data.insert(c.data.end(), points[i].begin(), points[i].end());
        }
        auto r =
            four_point_check(FiniteMetric::from_cloud(c), p, C, samples, seed);
        py::dict d;
        d["max_ratio"] = r.max_ratio;
        d["violated"] = r.violated;
        d["lemma_range"] = r.lemma_range;
        d["quadruples"] = r.quadruples;
        d["witness"] = std::vector<int>(r.witness.begin(), r.witness.end());
        return d;
      },
      py::arg("points"), py::arg("q") = 2.0, py::arg("p") = 2.0,
      py::arg("C") = 4.0, py::arg("samples") = 0, py::arg("seed") = 0);

  m.def(
      "lower_bound_uc",
      [](int k, double p, double q, double c, double gamma) {
        return bound_dict(lower_bound_uc(k, p, q, c, gamma));
      },
      py::arg("k"), py::arg("p"), py::arg("q"), py::arg("c"),
      py::arg("gamma") = 0.0);

  m.def(
      "lower_bound_rb",
      [](int k, double p, double q, double c, double gamma) {
        return bound_dict(lower_bound_rb(k, p, q, c, gamma));
      },
      py::arg("k"), py::arg("p"), py::arg("q"), py::arg("c"),
      py::arg("gamma") = 0.0);

  m.def(
      "uc_modulus",
      [](double p, std::size_t dim, const std::vector<double>& t_grid,
         std::size_t restarts, std::size_t iters, std::uint64_t seed) {
        return modulus_dict(
            uc_modulus_estimate(p, dim, t_grid, restarts, iters, seed));
      },
      py::arg("p"), py::arg("dim"), py::arg("t_grid"),
      py::arg("restarts") = 8, py::arg("iters") = 300, py::arg("seed") = 1);

  m.def(
      "amuc_modulus",
      [](double p, std::size_t dim, std::size_t tail_start,
         const std::vector<double>& t_grid, std::size_t samples,
         std::uint64_t seed) {
        return modulus_dict(
            amuc_modulus_estimate(p, dim, tail_start, t_grid, samples, seed));
      },
      py::arg("p"), py::arg("dim"), py::arg("tail_start"), py::arg("t_grid"),
      py::arg("samples") = 32, py::arg("seed") = 1);

  m.def("save_cloud", &save_cloud, py::arg("path"), py::arg("structure"));
  m.def("load_cloud", &load_cloud, py::arg("path"));

  m.def(
      "graph_counts",
      [](const std::string& base, int k, int b) {
        auto g = power_graph(base_by_name(base, b), k);
        py::dict d;
        d["vertices"] = g.num_vertices();
        d["edges"] = g.num_edges();
        return d;
      },
      py::arg("base"), py::arg("k"), py::arg("b") = 0);
}
