#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "thinstruct/diamond.hpp"
#include "thinstruct/distortion.hpp"
#include "thinstruct/graph.hpp"
#include "thinstruct/io.hpp"
#include "thinstruct/laakso.hpp"
#include "thinstruct/metric.hpp"

using namespace thinstruct;

namespace {

// exit code 2: the mathematics failed, as opposed to the invocation
struct VerifyFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string yn(bool b) { return b ? "pass" : "FAIL"; }

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// --config FILE holds flat key=value lines mirroring the long flags.
// Explicit flags win; the file only fills in what was not given.
std::vector<std::string> expand_config_args(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
    } else {
      ++i;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("config line is not key=value: " + t);
    std::string key = "--" + trim(t.substr(0, eq));
    bool given = false;
    for (const auto& a : args)
      if (a == key || a.rfind(key + "=", 0) == 0) given = true;
    if (!given) args.push_back(key + "=" + trim(t.substr(eq + 1)));
  }
  return args;
}

void add_config_flag(CLI::App* c) {
  static std::string sink;  // handled before CLI11 parses; shown in help only
  c->add_option("--config", sink,
                "flat key=value file mirroring the flags (flags win)");
}

void print_kv(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string line;
  for (std::size_t i = 0; i < kv.size(); ++i) {
    if (i) line += ' ';
    line += kv[i].first + "=" + kv[i].second;
  }
  std::puts(line.c_str());
}

EmbeddingMap make_map(const GeneratedStructure& g, const std::string& spec,
                      double target_q) {
  if (spec == "identity") return identity_embedding(g.cloud, target_q);
  if (spec.rfind("randproj:", 0) == 0) {
    auto parts = split(spec, ':');
    if (parts.size() != 3)
      throw CLI::ValidationError("--map", "expected randproj:<dim>:<seed>");
    return random_projection_embed(g.cloud, std::stoul(parts[1]),
                                   std::stoull(parts[2]));
  }
  if (std::filesystem::exists(spec)) return load_map(spec, g.cloud);
  throw CLI::ValidationError(
      "--map", "expected identity, randproj:<dim>:<seed>, or a map file");
}

void emit_verify(const std::string& kind, const GeneratedStructure& g,
                 const VerifyReport& vr,
                 std::vector<std::pair<std::string, std::string>> head) {
  head.emplace_back("n", std::to_string(g.cloud.n()));
  head.emplace_back("dim", std::to_string(g.cloud.dim));
  head.emplace_back("copies", std::to_string(g.index.total_copies()));
  head.emplace_back("checks", std::to_string(vr.checks));
  head.emplace_back("worst", format17(vr.worst_overall()));
  head.emplace_back("verify", yn(vr.pass));
  print_kv(head);
  for (const auto& v : vr.violations)
    std::printf("violation copy=%s condition=%s rel_err=%s\n", v.copy.c_str(),
                v.condition.c_str(), format17(v.rel_err).c_str());
  if (!vr.pass)
    throw VerifyFailure(kind + " verification failed, worst rel err " +
                        format17(vr.worst_overall()));
}

ModulusModel build_model(const std::string& family, const std::string& kind,
                         double target_q, double model_p, double c,
                         double power) {
  ModulusModel m;
  if (kind == "exact") {
    if (family != "uc")
      throw CLI::ValidationError("--model", "exact is a uc-family model");
    if (target_q == 2.0) return l2_uc_model();
    if (target_q > 2.0 && target_q != kInf) return lp_uc_model(target_q);
    throw CLI::ValidationError(
        "--model", "no exact model for this target exponent; use power");
  }
  if (kind == "fourpoint") {
    if (family != "rb")
      throw CLI::ValidationError("--model", "fourpoint is an rb-family model");
    return four_point_rb_model(model_p);
  }
  if (kind == "amuc") {
    if (family != "amuc")
      throw CLI::ValidationError("--model", "amuc model needs --family amuc");
    return amuc_lp_model(model_p);
  }
  if (kind == "power") {
    m = power_uc_model(c, power);
    if (family == "rb") m.family = ModulusFamily::kRoundedBall;
    if (family == "amuc") m.family = ModulusFamily::kAMUC;
    return m;
  }
  throw CLI::ValidationError("--model", "unknown model " + kind);
}

struct GenLaaksoOpts {
  int k = 1;
  std::string q = "2";
  double eps = 0.1;
  double rel_tol = 1e-9;
  std::string out;
};

struct GenDiamondOpts {
  int k = 1;
  double p = 2;
  double eps = 0.1;
  int b = 2;
  double rel_tol = 1e-9;
  std::string out;
};

struct GenGraphOpts {
  std::string base = "laakso";
  int b = 0;
  int k = 1;
  std::string out, metric_out;
};

struct DoublingOpts {
  std::string cloud, metric, out;
  std::size_t max_radii = 0;
};

struct MidpointsOpts {
  std::string cloud, x = "L0:s", y = "L0:t", out;
  double eta = 0.0;
};

struct RoundnessOpts {
  std::string mode = "fourpoint";
  std::string cloud, gauss, out;
  double p = 2.0, C = 0.0, t = 1.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  std::string eta_grid = "0";
};

struct DistortionOpts {
  std::string cloud, map = "identity", out, json_out, map_out;
  std::string target_q = "2";
};

struct BoundOpts {
  std::string family = "uc";
  int k = 2, k_max = 0;
  double p = 2, q = 4, cst = 0.125, gamma = 0;
  std::string out;
};

struct ContractOpts {
  std::string cloud, family = "uc", map = "identity", model;
  std::string target_q = "2";
  double model_p = 0, cst = 0, power = 2, D = 0, A = 0, B = 0, tau = -1;
  bool allow_failures = false, escape = false;
  std::string out, escape_out;
};

struct SweepOpts {
  std::string k_list = "1", q_list = "2", eps_list = "0.1";
  double rel_tol = 1e-9;
  bool strict = false;
  std::string out;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "thinstruct: recursive thin substructures, their exact distance "
      "identities, and embedding-obstruction audits"};
  app.require_subcommand(1);

  try {
    // ---- gen-laakso ----
    {
      auto* c = app.add_subcommand(
          "gen-laakso", "build a thin iterated-split cloud and verify it");
      auto o = std::make_shared<GenLaaksoOpts>();
      c->add_option("--k", o->k, "recursion depth")->required();
      c->add_option("--q", o->q, "norm exponent (number or inf)");
      c->add_option("--eps", o->eps, "midpoint separation")->required();
      c->add_option("--rel-tol", o->rel_tol, "verification tolerance");
      c->add_option("--out", o->out, "cloud json output path");
      add_config_flag(c);
      c->callback([o] {
        auto g = generate_thin_laakso(o->k, parse_exponent(o->q), o->eps);
        auto vr = verify_conditions(g.cloud, g.index, o->rel_tol);
        if (!o->out.empty()) save_cloud(o->out, g);
        emit_verify("laakso", g, vr,
                    {{"laakso", std::to_string(o->k)},
                     {"q", exponent_str(g.cloud.q)},
                     {"eps", format17(o->eps)}});
      });
    }

    // ---- gen-diamond ----
    {
      auto* c = app.add_subcommand(
          "gen-diamond", "build a thin branching-diamond cloud and verify it");
      auto o = std::make_shared<GenDiamondOpts>();
      c->add_option("--k", o->k, "recursion depth")->required();
      c->add_option("--p", o->p, "norm exponent (finite)");
      c->add_option("--eps", o->eps, "midpoint separation")->required();
      c->add_option("--b", o->b, "branching (midpoints per copy)");
      c->add_option("--rel-tol", o->rel_tol, "verification tolerance");
      c->add_option("--out", o->out, "cloud json output path");
      add_config_flag(c);
      c->callback([o] {
        auto g = generate_thin_diamond(o->k, o->p, o->eps, o->b);
        auto vr = verify_diamond_conditions(g.cloud, g.index, o->rel_tol);
        if (!o->out.empty()) save_cloud(o->out, g);
        emit_verify("diamond", g, vr,
                    {{"diamond", std::to_string(o->k)},
                     {"p", format17(o->p)},
                     {"b", std::to_string(o->b)},
                     {"eps", format17(o->eps)}});
      });
    }

    // ---- gen-graph ----
    {
      auto* c = app.add_subcommand(
          "gen-graph", "build an iterated-substitution two-terminal graph");
      auto o = std::make_shared<GenGraphOpts>();
      c->add_option("--base", o->base, "base pattern: laakso | C4 | K2b");
      c->add_option("--b", o->b, "branch count for K2b");
      c->add_option("--k", o->k, "substitution depth")->required();
      c->add_option("--out", o->out, "graph json output path");
      c->add_option("--metric-out", o->metric_out, "hop metric csv path");
      add_config_flag(c);
      c->callback([o] {
        auto g = power_graph(base_by_name(o->base, o->b), o->k);
        if (!o->out.empty()) save_graph(o->out, g);
        std::vector<std::pair<std::string, std::string>> kv{
            {"graph", o->base},
            {"k", std::to_string(o->k)},
            {"vertices", std::to_string(g.num_vertices())},
            {"edges", std::to_string(g.num_edges())}};
        if (!o->metric_out.empty() || g.num_vertices() <= 8192) {
          auto hop = graph_metric(g);
          kv.emplace_back(
              "dst", std::to_string(hop[g.source * g.num_vertices() + g.sink]));
          if (!o->metric_out.empty())
            write_metric_csv(o->metric_out,
                             FiniteMetric::from_int_matrix(g.vertices, hop));
        }
        print_kv(kv);
      });
    }

    // ---- doubling ----
    {
      auto* c = app.add_subcommand(
          "doubling", "greedy two-sided doubling-constant estimate");
      auto o = std::make_shared<DoublingOpts>();
      auto* oc = c->add_option("--cloud", o->cloud, "cloud json input");
      c->add_option("--metric", o->metric, "matrix csv input")->excludes(oc);
      c->add_option("--max-radii", o->max_radii,
                    "radius scales per center (0 = all distinct)");
      c->add_option("--out", o->out, "csv output path");
      add_config_flag(c);
      c->callback([o] {
        FiniteMetric m;
        if (!o->metric.empty())
          m = load_metric_csv(o->metric);
        else if (!o->cloud.empty())
          m = FiniteMetric::from_cloud(load_cloud(o->cloud).cloud);
        else
          throw CLI::ValidationError("--cloud", "need --cloud or --metric");
        auto est = doubling_constant(m, o->max_radii);
        std::vector<std::pair<std::string, std::string>> kv{
            {"doubling", std::to_string(m.n)},
            {"upper", std::to_string(est.upper)},
            {"lower", std::to_string(est.lower)},
            {"balls", std::to_string(est.balls_scanned)},
            {"upper_center",
             est.upper_center >= 0 ? m.labels[est.upper_center] : "-"},
            {"upper_radius", format17(est.upper_radius)},
            {"lower_center",
             est.lower_center >= 0 ? m.labels[est.lower_center] : "-"},
            {"lower_radius", format17(est.lower_radius)}};
        print_kv(kv);
        if (!o->out.empty()) {
          CsvTable t;
          t.header = {"n",           "upper",        "lower",
                      "balls",       "upper_center", "upper_radius",
                      "lower_center", "lower_radius"};
          t.rows.push_back(
              {std::to_string(m.n), std::to_string(est.upper),
               std::to_string(est.lower), std::to_string(est.balls_scanned),
               est.upper_center >= 0 ? m.labels[est.upper_center] : "-",
               format17(est.upper_radius),
               est.lower_center >= 0 ? m.labels[est.lower_center] : "-",
               format17(est.lower_radius)});
          write_csv_file(o->out, t);
        }
      });
    }

    // ---- midpoints ----
    {
      auto* c =
          app.add_subcommand("midpoints", "approximate midpoint set of a pair");
      auto o = std::make_shared<MidpointsOpts>();
      c->add_option("--cloud", o->cloud, "cloud json input")->required();
      c->add_option("--x", o->x, "first endpoint label");
      c->add_option("--y", o->y, "second endpoint label");
      c->add_option("--eta", o->eta, "approximation parameter")->required();
      c->add_option("--out", o->out, "csv output path");
      add_config_flag(c);
      c->callback([o] {
        auto g = load_cloud(o->cloud);
        auto m = FiniteMetric::from_cloud(g.cloud);
        int xi = g.cloud.index_of(o->x), yi = g.cloud.index_of(o->y);
        if (xi < 0 || yi < 0)
          throw CLI::ValidationError("--x/--y", "label not in cloud");
        auto ms = mid_set(m, xi, yi, o->eta);
        double dxy = m.at(xi, yi);
        print_kv({{"midset", o->x + "|" + o->y},
                  {"eta", format17(o->eta)},
                  {"size", std::to_string(ms.members.size())},
                  {"diameter", format17(ms.diameter)},
                  {"ratio", format17(dxy > 0 ? ms.diameter / dxy : 0.0)}});
        if (!o->out.empty()) {
          CsvTable t;
          t.header = {"member", "d_x", "d_y"};
          for (int i : ms.members)
            t.rows.push_back(
                {m.labels[i], format17(m.at(xi, i)), format17(m.at(yi, i))});
          write_csv_file(o->out, t);
        }
      });
    }

    // ---- roundness ----
    {
      auto* c = app.add_subcommand(
          "roundness", "four-point inequality scan / midpoint-set scan");
      auto o = std::make_shared<RoundnessOpts>();
      c->add_option("--mode", o->mode, "fourpoint | midscan");
      auto* oc = c->add_option("--cloud", o->cloud, "cloud json input");
      c->add_option("--gauss", o->gauss,
                    "seeded gaussian cloud n:dim:seed instead of a file")
          ->excludes(oc);
      c->add_option("--p", o->p, "roundness exponent");
      c->add_option("--C", o->C, "constant (default 2^p)");
      c->add_option("--samples", o->samples,
                    "sampled quadruples (0 = exhaustive)");
      c->add_option("--seed", o->seed, "sampling seed");
      c->add_option("--t", o->t, "diameter threshold for midscan");
      c->add_option("--eta-grid", o->eta_grid, "comma list of eta values");
      c->add_option("--out", o->out, "csv output path");
      add_config_flag(c);
      c->callback([o] {
        FiniteMetric m;
        if (!o->gauss.empty()) {
          auto parts = split(o->gauss, ':');
          if (parts.size() != 3)
            throw CLI::ValidationError("--gauss", "expected n:dim:seed");
          m = FiniteMetric::from_cloud(
              gaussian_cloud(std::stoul(parts[0]), std::stoul(parts[1]), 2.0,
                             std::stoull(parts[2])));
        } else if (!o->cloud.empty()) {
          m = FiniteMetric::from_cloud(load_cloud(o->cloud).cloud);
        } else {
          throw CLI::ValidationError("--cloud", "need --cloud or --gauss");
        }
        if (o->mode == "fourpoint") {
          double C = o->C > 0 ? o->C : std::pow(2.0, o->p);
          auto r = four_point_check(m, o->p, C, o->samples, o->seed);
          std::string wit;
          for (int i = 0; i < 4; ++i)
            wit += (i ? "|" : "") +
                   (r.witness[i] >= 0 ? m.labels[r.witness[i]] : "-");
          print_kv({{"fourpoint", std::to_string(m.n)},
                    {"p", format17(o->p)},
                    {"C", format17(C)},
                    {"quadruples", std::to_string(r.quadruples)},
                    {"max_ratio", format17(r.max_ratio)},
                    {"violated", r.violated ? "yes" : "no"},
                    {"lemma_range", r.lemma_range ? "yes" : "no"},
                    {"witness", wit}});
          if (!o->out.empty()) {
            CsvTable t;
            t.header = {"p", "C", "quadruples", "max_ratio", "violated",
                        "witness"};
            t.rows.push_back({format17(o->p), format17(C),
                              std::to_string(r.quadruples),
                              format17(r.max_ratio),
                              r.violated ? "yes" : "no", wit});
            write_csv_file(o->out, t);
          }
        } else if (o->mode == "midscan") {
          auto grid = parse_double_list(o->eta_grid);
          auto r = rounded_ball_scan(m, o->t, grid);
          print_kv({{"midscan", std::to_string(m.n)},
                    {"t", format17(o->t)},
                    {"eta_star", format17(r.eta_star)}});
          CsvTable t;
          t.header = {"eta", "worst_ratio"};
          for (std::size_t i = 0; i < r.eta_grid.size(); ++i)
            t.rows.push_back(
                {format17(r.eta_grid[i]), format17(r.worst_ratio[i])});
          if (!o->out.empty()) write_csv_file(o->out, t);
        } else {
          throw CLI::ValidationError("--mode", "unknown mode " + o->mode);
        }
      });
    }

    // ---- distortion ----
    {
      auto* c = app.add_subcommand(
          "distortion", "bi-Lipschitz constants of a map on a cloud");
      auto o = std::make_shared<DistortionOpts>();
      c->add_option("--cloud", o->cloud, "cloud json input")->required();
      c->add_option("--map", o->map,
                    "identity | randproj:<dim>:<seed> | map file");
      c->add_option("--target-q", o->target_q, "target exponent for identity");
      c->add_option("--out", o->out, "per-copy csv output");
      c->add_option("--json", o->json_out, "summary json output");
      c->add_option("--map-out", o->map_out, "save the map for reuse");
      add_config_flag(c);
      c->callback([o] {
        auto g = load_cloud(o->cloud);
        auto f = make_map(g, o->map, parse_exponent(o->target_q));
        auto rep = measure_distortion(f);
        std::vector<double> dj;
        if (!g.index.levels.empty() && rep.colip > 0 && rep.colip < kInf)
          dj = measure_level_ratios(f, g.index, rep.colip);
        if (!o->map_out.empty()) save_map(o->map_out, f);
        std::vector<std::pair<std::string, std::string>> kv{
            {"distortion", f.name},
            {"lip", format17(rep.lip)},
            {"colip", format17(rep.colip)},
            {"value", format17(rep.distortion)},
            {"pairs", std::to_string(rep.pairs)}};
        for (std::size_t j = 0; j < dj.size(); ++j)
          kv.emplace_back("D_" + std::to_string(j + 1), format17(dj[j]));
        print_kv(kv);
        if (!o->out.empty()) {
          CsvTable t;
          t.header = {"level", "copy", "pair", "ratio", "margin"};
          for (int j = 1; j <= static_cast<int>(g.index.levels.size()); ++j)
            for (const auto& cp : g.index.at_level(j)) {
              double worst = 0.0;
              std::pair<int, int> wp{cp.s(), cp.t()};
              for (auto [x, y] : designated_pairs_of(g.index, cp)) {
                double dd = g.cloud.dist(x, y);
                double r = dd > 0 ? f.idist(x, y) / dd : kInf;
                if (r > worst) {
                  worst = r;
                  wp = {x, y};
                }
              }
              worst /= rep.colip;
              t.rows.push_back({std::to_string(j), cp.id(),
                                g.cloud.labels[wp.first] + "|" +
                                    g.cloud.labels[wp.second],
                                format17(worst),
                                format17(rep.distortion - worst)});
            }
          write_csv_file(o->out, t);
        }
        if (!o->json_out.empty()) {
          nlohmann::ordered_json j;
          j["lip"] = rep.lip;
          j["colip"] = rep.colip;
          j["distortion"] = rep.distortion;
          j["D_j"] = dj;
          j["pairs"] = rep.pairs;
          write_text_file(o->json_out, j.dump() + "\n");
        }
      });
    }

    // ---- bound ----
    {
      auto* c =
          app.add_subcommand("bound", "closed-form self-improvement lower bound");
      auto o = std::make_shared<BoundOpts>();
      c->add_option("--family", o->family, "uc | rb");
      c->add_option("--k", o->k, "depth (or range start)")->required();
      c->add_option("--k-max", o->k_max, "range end (inclusive)");
      c->add_option("--p", o->p, "source exponent");
      c->add_option("--q", o->q, "target exponent");
      c->add_option("--c", o->cst, "modulus constant");
      c->add_option("--gamma", o->gamma, "window override (0 = midpoint)");
      c->add_option("--out", o->out, "csv output path");
      add_config_flag(c);
      c->callback([o] {
        if (o->family != "uc" && o->family != "rb")
          throw CLI::ValidationError("--family", "expected uc or rb");
        int hi = o->k_max > 0 ? o->k_max : o->k;
        if (hi < o->k) throw CLI::ValidationError("--k-max", "below --k");
        CsvTable t;
        t.header = {"family", "k",     "p",        "q",    "c",
                    "gamma_max", "gamma", "eps_star", "D_min"};
        std::vector<double> ks, ds;
        for (int k = o->k; k <= hi; ++k) {
          auto b = o->family == "uc"
                       ? lower_bound_uc(k, o->p, o->q, o->cst, o->gamma)
                       : lower_bound_rb(k, o->p, o->q, o->cst, o->gamma);
          print_kv({{"bound", o->family},
                    {"k", std::to_string(k)},
                    {"gamma", format17(b.gamma)},
                    {"eps_star", format17(b.eps_star)},
                    {"D_min", format17(b.D_min)}});
          t.rows.push_back({b.family, std::to_string(k), format17(b.p),
                            format17(b.q), format17(b.c),
                            format17(b.gamma_max), format17(b.gamma),
                            format17(b.eps_star), format17(b.D_min)});
          ks.push_back(k - 1.0);
          ds.push_back(b.D_min);
        }
        if (ks.size() >= 2) {
          auto [slope, intercept] = loglog_fit(ks, ds);
          print_kv(
              {{"fit", "logD_min~log(k-1)"},
               {"slope", format17(slope)},
               {"intercept", format17(intercept)},
               {"expected_slope", format17((o->q - o->p) / (o->p * o->q))}});
          t.comments.push_back("fit slope vs log(k-1): " + format17(slope));
        }
        if (!o->out.empty()) write_csv_file(o->out, t);
      });
    }

    // ---- contract ----
    {
      auto* c =
          app.add_subcommand("contract", "per-copy contraction-inequality audit");
      auto o = std::make_shared<ContractOpts>();
      c->add_option("--cloud", o->cloud, "cloud json input")->required();
      c->add_option("--family", o->family, "uc | rb | amuc");
      c->add_option("--map", o->map, "identity | randproj:<dim>:<seed> | file");
      c->add_option("--target-q", o->target_q, "target exponent for identity");
      c->add_option("--model", o->model,
                    "exact | fourpoint | amuc | power (default per family)");
      c->add_option("--model-p", o->model_p, "model exponent");
      c->add_option("--c", o->cst, "power-model constant");
      c->add_option("--power", o->power, "power-model exponent");
      c->add_option("--D", o->D, "distortion override (0 = measured)");
      c->add_option("--A", o->A, "rb colip constant (0 = measured)");
      c->add_option("--B", o->B, "rb lip constant (0 = measured)");
      c->add_flag("--allow-failures", o->allow_failures,
                  "report failures without exit code 2");
      c->add_flag("--escape", o->escape,
                  "also run the midpoint-escape check (amuc)");
      c->add_option("--tau", o->tau, "escape threshold (-1 = from model)");
      c->add_option("--out", o->out, "per-copy csv output");
      c->add_option("--escape-out", o->escape_out, "escape csv output");
      add_config_flag(c);
      c->callback([o] {
        auto g = load_cloud(o->cloud);
        double tq = parse_exponent(o->target_q);
        auto f = make_map(g, o->map, tq);
        auto rep = measure_distortion(f);
        if (!(rep.colip > 0))
          throw VerifyFailure("map is not injective on the cloud (colip 0)");
        std::string model_kind = o->model;
        if (model_kind.empty())
          model_kind = o->family == "uc"
                           ? "exact"
                           : (o->family == "rb" ? "fourpoint" : "amuc");
        double model_p = o->model_p > 0
                             ? o->model_p
                             : (o->family == "amuc" ? g.cloud.q : 2.0);
        auto model =
            build_model(o->family, model_kind, tq, model_p, o->cst, o->power);
        double D = o->D > 0 ? o->D : rep.distortion;
        ContractionAudit audit;
        if (o->family == "uc") {
          audit = contraction_check_uc(f, g.index, model, D, rep.colip);
        } else if (o->family == "rb") {
          double A = o->A > 0 ? o->A : 1.0 / rep.colip;
          double B = o->B > 0 ? o->B : rep.lip;
          audit = contraction_check_rb(f, g.index, model, A, B);
        } else if (o->family == "amuc") {
          audit = contraction_check_amuc(f, g.index, model, D, rep.colip);
        } else {
          throw CLI::ValidationError("--family", "expected uc, rb, or amuc");
        }
        print_kv({{"contract", audit.family},
                  {"map", f.name},
                  {"copies", std::to_string(audit.copies)},
                  {"failures", std::to_string(audit.failures)},
                  {"worst_margin", format17(audit.worst_margin)},
                  {"worst_copy", audit.worst_copy},
                  {"D", format17(audit.D)},
                  {"modulus_arg", format17(audit.modulus_arg)}});
        if (!o->out.empty()) {
          CsvTable t;
          t.header = {"family", "level", "copy", "lhs", "rhs", "margin",
                      "pass"};
          for (const auto& r : audit.rows)
            t.rows.push_back({audit.family, std::to_string(r.level), r.copy,
                              format17(r.lhs), format17(r.rhs),
                              format17(r.margin), r.pass ? "yes" : "no"});
          write_csv_file(o->out, t);
        }
        if (o->escape) {
          if (g.index.kind != "diamond")
            throw CLI::ValidationError("--escape",
                                       "escape check needs a diamond cloud");
          ModulusModel am = model.family == ModulusFamily::kAMUC
                                ? model
                                : amuc_lp_model(model_p);
          double tau =
              o->tau >= 0 ? o->tau : escape_tau(am, g.cloud.epsilon, D);
          auto esc = midpoint_escape_check(f, g.index, tau);
          print_kv({{"escape", format17(esc.tau)},
                    {"copies", std::to_string(esc.copies)},
                    {"escaped", std::to_string(esc.escaped)}});
          if (!o->escape_out.empty()) {
            CsvTable t;
            t.header = {"level", "copy", "first_branch"};
            for (const auto& r : esc.rows)
              t.rows.push_back({std::to_string(r.level), r.copy,
                                r.first_branch >= 0
                                    ? std::to_string(r.first_branch)
                                    : "none"});
            write_csv_file(o->escape_out, t);
          }
        }
        if (audit.failures > 0 && !o->allow_failures)
          throw VerifyFailure(
              "contraction audit failed on " + std::to_string(audit.failures) +
              " copies (the supplied modulus overstates the target)");
      });
    }

    // ---- sweep ----
    {
      auto* c = app.add_subcommand("sweep",
                                   "verification grid over (k, q, eps) cells");
      auto o = std::make_shared<SweepOpts>();
      c->add_option("--k-list", o->k_list, "comma list of depths");
      c->add_option("--q-list", o->q_list, "comma list of exponents");
      c->add_option("--eps-list", o->eps_list, "comma list of separations");
      c->add_option("--rel-tol", o->rel_tol, "verification tolerance");
      c->add_flag("--strict", o->strict, "exit 2 if any cell fails");
      c->add_option("--out", o->out, "csv output path")->required();
      add_config_flag(c);
      c->callback([o] {
        auto ks = parse_int_list(o->k_list);
        auto qs = parse_double_list(o->q_list);
        auto es = parse_double_list(o->eps_list);
        CsvTable t;
        t.header = {"k", "q", "eps", "n", "copies", "checks", "worst", "pass"};
        std::size_t failures = 0;
        for (int k : ks)
          for (double q : qs)
            for (double eps : es) {
              auto g = generate_thin_laakso(k, q, eps);
              auto vr = verify_conditions(g.cloud, g.index, o->rel_tol);
              if (!vr.pass) ++failures;
              t.rows.push_back(
                  {std::to_string(k), exponent_str(q), format17(eps),
                   std::to_string(g.cloud.n()),
                   std::to_string(g.index.total_copies()),
                   std::to_string(vr.checks), format17(vr.worst_overall()),
                   yn(vr.pass)});
            }
        write_csv_file(o->out, t);
        print_kv({{"sweep", std::to_string(t.rows.size())},
                  {"failures", std::to_string(failures)}});
        if (failures > 0 && o->strict)
          throw VerifyFailure(std::to_string(failures) + " cells failed");
      });
    }

    auto args = expand_config_args(argc, argv);
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const VerifyFailure& e) {
    std::fprintf(stderr, "verification failure: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
