// Full acceptance gate for the library and the command line tool: one
// pass/fail line per criterion, nonzero exit if any of them fails.
// argv[1] names the CLI binary for the determinism criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "thinstruct/diamond.hpp"
#include "thinstruct/distortion.hpp"
#include "thinstruct/laakso.hpp"
#include "thinstruct/metric.hpp"

using namespace thinstruct;
namespace fs = std::filesystem;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

bool g_all = true;

void report(int num, const char* name, bool pass, const std::string& detail) {
  g_all = g_all && pass;
  std::printf("criterion %d (%s): %s (%s)\n", num, name,
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
}

// ---- 1: every split identity on every copy, full parameter grid ----
void criterion1() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t cells = 0, fails = 0;
  double worst = 0.0;
  for (int k = 1; k <= 6; ++k)
    for (double q : {1.0, 2.0, 2.5, 3.0, 4.0, kInf})
      for (double eps : {0.05, 0.1}) {
        auto g = generate_thin_laakso(k, q, eps);
        auto vr = verify_conditions(g.cloud, g.index, 1e-9);
        ++cells;
        if (!vr.pass) ++fails;
        worst = std::max(worst, vr.worst_overall());
      }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu cells, %zu failing, worst rel err %.2e, %.1fs < 60s",
                cells, fails, worst, secs);
  report(1, "split identity grid", cells == 72 && fails == 0 && secs < 60.0,
         buf);
}

// ---- 2: branching diamond identities, full parameter grid ----
void criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  std::size_t cells = 0, fails = 0;
  double worst = 0.0;
  for (int k = 1; k <= 4; ++k)
    for (double p : {1.0, 1.5, 2.0, 3.0})
      for (int b : {2, 4, 6})
        for (double eps : {0.05, 0.1}) {
          auto g = generate_thin_diamond(k, p, eps, b);
          auto vr = verify_diamond_conditions(g.cloud, g.index, 1e-9);
          ++cells;
          if (!vr.pass) ++fails;
          worst = std::max(worst, vr.worst_overall());
        }
  double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%zu cells, %zu failing, worst rel err %.2e, %.1fs", cells,
                fails, worst, secs);
  report(2, "branching identity grid", cells == 96 && fails == 0, buf);
}

// ---- 3: doubling estimates stay under the cap at thin separation ----
void criterion3() {
  auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t cap = 1ull << 32;
  bool ok = true;
  std::ostringstream rec;
  rec << "uppers";
  for (double q : {2.5, 3.0, 4.0}) {
    rec << " q" << q << ":";
    for (int k = 1; k <= 5; ++k) {
      auto g = generate_thin_laakso(k, q, 0.1);
      auto est = doubling_constant(FiniteMetric::from_cloud(g.cloud), 16);
      ok = ok && est.upper <= cap && est.lower <= est.upper;
      rec << (k > 1 ? "," : "") << est.upper;
    }
  }
  double secs = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, ", %.1fs < 300s", secs);
  report(3, "doubling estimate cap", ok && secs < 300.0, rec.str() + buf);
}

// ---- 4: measured distortions sit above the closed-form floor ----
void criterion4() {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double min_margin = kInf, worst_gap = kInf;
  for (int k = 3; k <= 6; ++k) {
    auto bd = lower_bound_uc(k, 2.0, 4.0, 0.125);
    auto g = generate_thin_laakso(k, 4.0, bd.eps_star);
    auto id = identity_embedding(g.cloud, 2.0);
    auto p2 = random_projection_embed(g.cloud, 2, 20260819);
    auto p3 = random_projection_embed(g.cloud, 3, 20260819);
    auto reps = measure_distortion_multi(g.cloud, {&id, &p2, &p3});
    double cap = std::pow(k + 1.0, 0.25);
    for (const auto& r : reps) {
      ok = ok && r.distortion > bd.D_min;
      min_margin = std::min(min_margin, r.distortion - bd.D_min);
    }
    ok = ok && reps[0].distortion <= cap;
    worst_gap = std::min(worst_gap, cap - reps[0].distortion);
  }
  double secs = seconds_since(t0);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "k 3..6, 3 maps each, min floor margin %.4f, identity cap "
                "slack %.4f, %.1fs",
                min_margin, worst_gap, secs);
  report(4, "distortion above closed-form floor", ok, buf);
}

// ---- 5: the floor scales with the advertised exponent ----
void criterion5() {
  bool ok = true;
  std::ostringstream rec;
  for (auto [p, q] : {std::pair{2.0, 4.0}, {2.0, 3.0}}) {
    std::vector<double> xs, ys;
    for (int k = 4; k <= 64; ++k) {
      xs.push_back(k - 1.0);  // the closed form grows with the level count
      ys.push_back(lower_bound_uc(k, p, q, 0.125).D_min);
    }
    auto [slope, icpt] = loglog_fit(xs, ys);
    (void)icpt;
    double want = 1.0 / p - 1.0 / q;
    ok = ok && std::fabs(slope - want) < 1e-6;
    rec << (rec.tellp() > 0 ? "; " : "") << "p" << p << ",q" << q << ": "
        << slope << " vs " << want;
  }
  report(5, "floor scaling exponent", ok, rec.str());
}

// ---- 6: four point inequality holds on gaussian samples, fails flat ----
void criterion6() {
  auto cloud = gaussian_cloud(512, 8, 2.0, 20260819);
  auto gm = FiniteMetric::from_cloud(cloud);
  auto sampled = four_point_check(gm, 2.0, 4.0, 100000, 7);

  PointCloud flat;
  flat.dim = 2;
  flat.q = kInf;
  double pts[4][2] = {{0, 0}, {1, 1}, {2, 0}, {1, -1}};
  for (int i = 0; i < 4; ++i) {
    auto id = flat.add("p" + std::to_string(i));
    flat.point(id)[0] = pts[i][0];
    flat.point(id)[1] = pts[i][1];
  }
  auto witness = four_point_check(FiniteMetric::from_cloud(flat), 2.0, 4.0);

  bool ok = !sampled.violated && sampled.quadruples == 100000 &&
            witness.violated && witness.lemma_range &&
            std::fabs(witness.max_ratio - 2.0) <= 1e-12;
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "100000 samples max ratio %.6f, flat witness ratio %.15f",
                sampled.max_ratio, witness.max_ratio);
  report(6, "four point inequality", ok, buf);
}

// ---- 7: modulus estimators reproduce the analytic curves ----
void criterion7() {
  bool ok = true;
  double worst_uc = 0.0, worst_am = 0.0;
  auto uc = uc_modulus_estimate(2.0, 8, {0.2, 0.6, 1.0, 1.4, 1.8});
  for (std::size_t i = 0; i < uc.t.size(); ++i) {
    double exact = 1.0 - std::sqrt(1.0 - uc.t[i] * uc.t[i] / 4.0);
    double err = std::fabs(uc.value[i] - exact);
    worst_uc = std::max(worst_uc, err);
    ok = ok && err <= 1e-3;
  }
  for (double p : {1.0, 2.0, 3.0}) {
    auto am = amuc_modulus_estimate(p, 64, 33, {0.25, 0.5});
    for (std::size_t i = 0; i < am.t.size(); ++i) {
      double exact = std::pow(1.0 + std::pow(am.t[i], p), 1.0 / p) - 1.0;
      double rel = std::fabs(am.value[i] - exact) / exact;
      worst_am = std::max(worst_am, rel);
      ok = ok && rel <= 0.05;
    }
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "uc worst abs err %.2e (cap 1e-3), amuc worst rel err %.2e "
                "(cap 5e-2)",
                worst_uc, worst_am);
  report(7, "modulus estimators", ok, buf);
}

// ---- 8: contraction audit passes with the true modulus, fails inflated ----
void criterion8() {
  bool ok = true;
  std::uint64_t copies = 0, inflated_fails = 0;
  double worst_margin = kInf;
  for (int k = 2; k <= 5; ++k) {
    auto bd = lower_bound_uc(k, 2.0, 4.0, 0.125);
    auto g = generate_thin_laakso(k, 4.0, bd.eps_star);
    auto f = identity_embedding(g.cloud, 2.0);
    auto rep = measure_distortion(f);
    auto audit = contraction_check_uc(f, g.index, l2_uc_model(),
                                      rep.distortion, rep.colip);
    ok = ok && audit.failures == 0;
    copies += audit.copies;
    worst_margin = std::min(worst_margin, audit.worst_margin);
    auto bad = contraction_check_uc(f, g.index, power_uc_model(1.25, 2.0),
                                    rep.distortion, rep.colip);
    ok = ok && bad.failures >= 1;
    inflated_fails += bad.failures;
  }
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "%llu copies clean, worst margin %.2e, inflated modulus "
                "trips %llu",
                static_cast<unsigned long long>(copies), worst_margin,
                static_cast<unsigned long long>(inflated_fails));
  report(8, "contraction audits", ok, buf);
}

// ---- 9: identical invocations give byte-identical report bodies ----
std::string body_of(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind("#", 0) != 0) out << line << '\n';
  return out.str();
}

void criterion9(const char* cli) {
  if (!cli) {
    report(9, "deterministic reports", false, "CLI binary path not supplied");
    return;
  }
  auto dir = fs::temp_directory_path() / "thinstruct_accept";
  fs::create_directories(dir);
  auto quoted = "\"" + std::string(cli) + "\"";
  auto runs = [&](const std::string& tail) {
    return std::system((quoted + " " + tail + " > /dev/null").c_str());
  };

  bool ok = true;
  std::string cloud = (dir / "cloud.json").string();

  for (auto pass : {1, 2}) {
    std::string n = std::to_string(pass);
    ok = ok && runs("gen-laakso --k 3 --q 4 --eps 0.25 --out " +
                    (dir / ("c" + n + ".json")).string()) == 0;
    ok = ok && runs("sweep --k-list 2,3 --q-list 2,4 --eps-list 0.05,0.1 "
                    "--out " +
                    (dir / ("s" + n + ".csv")).string()) == 0;
  }
  ok = ok && runs("gen-laakso --k 3 --q 4 --eps 0.25 --out " + cloud) == 0;
  for (auto pass : {1, 2}) {
    std::string n = std::to_string(pass);
    ok = ok && runs("distortion --cloud " + cloud +
                    " --map randproj:3:11 --out " +
                    (dir / ("d" + n + ".csv")).string() + " --json " +
                    (dir / ("d" + n + ".json")).string()) == 0;
  }

  int identical = 0;
  for (const char* stem : {"c", "s", "d"}) {
    for (const char* ext : {".json", ".csv"}) {
      auto a = dir / (std::string(stem) + "1" + ext);
      auto b = dir / (std::string(stem) + "2" + ext);
      if (!fs::exists(a) || !fs::exists(b)) continue;
      if (body_of(a) == body_of(b))
        ++identical;
      else
        ok = false;
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d report pairs byte-identical", identical);
  report(9, "deterministic reports", ok && identical == 4, buf);
}

}  // namespace

int main(int argc, char** argv) {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9(argc > 1 ? argv[1] : nullptr);
  std::printf("acceptance: %s\n", g_all ? "all criteria passed" : "FAILURES");
  return g_all ? 0 : 1;
}
