#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "thinstruct/graph.hpp"
#include "thinstruct/io.hpp"
#include "thinstruct/laakso.hpp"

using namespace thinstruct;

TEST_CASE("point labels mirror the recursive graph, in order") {
  for (int k = 1; k <= 3; ++k) {
    auto g = generate_thin_laakso(k, 4.0, 0.1);
    auto gr = power_graph(laakso_base(), k);
    REQUIRE(g.cloud.n() == gr.num_vertices());
    CHECK(g.cloud.labels == gr.vertices);
    CHECK(g.cloud.dim == static_cast<std::size_t>(k) + 1);
    CHECK(g.cloud.kind == "laakso");
    CHECK(g.cloud.k == k);
  }
}

TEST_CASE("copy index covers every level with the right counts") {
  int k = 3;
  auto g = generate_thin_laakso(k, 2.0, 0.1);
  CHECK(g.index.total_copies() == 43);  // 36 + 6 + 1
  std::size_t want = 36;
  for (int j = 1; j <= k; ++j) {
    const auto& level = g.index.at_level(j);
    CHECK(level.size() == want);
    want /= 6;
    for (const auto& cp : level) {
      CHECK(cp.level == j);
      CHECK(cp.members.size() == 6);
      CHECK(cp.edge_path.size() == static_cast<std::size_t>(k - j));
    }
  }
  CHECK_THROWS_AS(g.index.at_level(0), std::invalid_argument);
  CHECK_THROWS_AS(g.index.at_level(k + 1), std::invalid_argument);

  // member labels agree with the graph-side copy enumeration
  for (int j = 1; j <= k; ++j) {
    auto expected = copies_at_level(laakso_base(), k, j);
    const auto& level = g.index.at_level(j);
    REQUIRE(level.size() == expected.size());
    for (std::size_t i = 0; i < level.size(); ++i)
      for (std::size_t r = 0; r < 6; ++r)
        CHECK(g.cloud.labels[level[i].members[r]] == expected[i][r]);
  }
}

TEST_CASE("hand checked coordinates at depth one") {
  auto g = generate_thin_laakso(1, 2.0, 0.1);
  REQUIRE(g.cloud.n() == 6);
  REQUIRE(g.cloud.dim == 2);
  int s = g.cloud.index_of("L0:s");
  int t = g.cloud.index_of("L0:t");
  int a = g.cloud.index_of("L0::a");
  int b = g.cloud.index_of("L0::b");
  int m1 = g.cloud.index_of("L0::m1");
  int m2 = g.cloud.index_of("L0::m2");
  CHECK(g.cloud.point(s)[0] == -1.0);
  CHECK(g.cloud.point(t)[0] == 1.0);
  CHECK(g.cloud.point(a)[0] == -0.5);
  CHECK(g.cloud.point(b)[0] == 0.5);
  CHECK(g.cloud.point(m1)[0] == 0.0);
  CHECK(g.cloud.point(m1)[1] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.cloud.point(m2)[1] == doctest::Approx(-0.1).epsilon(1e-15));

  CHECK(g.cloud.dist(s, t) == 2.0);
  CHECK(g.cloud.dist(s, a) == 0.5);
  CHECK(g.cloud.dist(a, b) == 1.0);
  CHECK(g.cloud.dist(m1, m2) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(g.cloud.dist(s, m1) ==
        doctest::Approx(std::sqrt(1.0 + 0.01)).epsilon(1e-15));
  // quarter of (1+(2 eps)^2)^{1/2} d(s,t): sqrt(1.04)/2
  CHECK(g.cloud.dist(a, m1) == doctest::Approx(std::sqrt(0.26)).epsilon(1e-15));
}

TEST_CASE("distance identities hold across the parameter grid") {
  for (int k : {1, 2, 3}) {
    for (double q : {1.0, 2.0, 2.5, 4.0, kInf}) {
      for (double eps : {0.05, 0.25}) {
        auto g = generate_thin_laakso(k, q, eps);
        auto vr = verify_conditions(g.cloud, g.index, 1e-9);
        CAPTURE(k);
        CAPTURE(q);
        CAPTURE(eps);
        CHECK(vr.pass);
        CHECK(vr.worst_overall() < 1e-12);
        CHECK(vr.copies == g.index.total_copies());
        CHECK(vr.checks == 14 * vr.copies);
        CHECK(vr.conditions.size() == 5);
      }
    }
  }
}

TEST_CASE("copies shrink by a quarter per level, up to the thin factor") {
  int k = 3;
  double q = 2.5, eps = 0.1;
  auto g = generate_thin_laakso(k, q, eps);
  // spine edges scale by exactly 1/4; branch edges pick up one thin factor
  double fac = one_plus_pow(2.0 * eps, q);
  for (int j = 1; j <= k; ++j) {
    double base = 2.0 * std::pow(4.0, j - k);
    bool saw_exact = false;
    for (const auto& cp : g.index.at_level(j)) {
      double d = g.cloud.dist(cp.s(), cp.t());
      CHECK(d >= base * (1.0 - 1e-13));
      CHECK(d <= base * std::pow(fac, k - j) * (1.0 + 1e-13));
      bool spine = true;
      for (int e : cp.edge_path) spine = spine && e == 0;
      if (spine) {
        saw_exact = true;
        CHECK(d == doctest::Approx(base).epsilon(1e-13));
      }
    }
    CHECK(saw_exact);
  }
}

TEST_CASE("max norm degenerates the thin direction as expected") {
  auto g = generate_thin_laakso(2, kInf, 0.3);
  auto vr = verify_conditions(g.cloud, g.index, 1e-9);
  CHECK(vr.pass);
  // (1 + x^inf)^{1/inf} = max(1, x): both midpoint conditions collapse
  const auto& top = g.index.at_level(2)[0];
  double dst = g.cloud.dist(top.s(), top.t());
  CHECK(g.cloud.dist(top.s(), top.members[2]) ==
        doctest::Approx(0.5 * dst).epsilon(1e-15));
  CHECK(g.cloud.dist(top.members[2], top.members[3]) ==
        doctest::Approx(0.3 * dst).epsilon(1e-15));
}

TEST_CASE("degenerate parameters are rejected") {
  CHECK_THROWS_AS(generate_thin_laakso(0, 2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(generate_thin_laakso(9, 2.0, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(generate_thin_laakso(2, 2.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(generate_thin_laakso(2, 2.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(generate_thin_laakso(2, 0.5, 0.1), std::invalid_argument);
  // (1+eps^q)^{1/q} > 2 makes the split non-geodesic
  CHECK_THROWS_AS(generate_thin_laakso(2, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(generate_thin_laakso(2, kInf, 2.5), std::invalid_argument);
  CHECK_NOTHROW(generate_thin_laakso(2, kInf, 1.5));
}

TEST_CASE("a corrupted coordinate is caught and localized") {
  auto g = generate_thin_laakso(2, 2.0, 0.1);
  int m1 = g.cloud.index_of("L1:3:m1");
  REQUIRE(m1 >= 0);
  g.cloud.point(m1)[0] += 1e-6;
  auto vr = verify_conditions(g.cloud, g.index, 1e-9);
  CHECK_FALSE(vr.pass);
  REQUIRE_FALSE(vr.violations.empty());
  bool named = false;
  for (const auto& v : vr.violations)
    if (v.copy == "L1:3") named = true;
  CHECK(named);
  CHECK(vr.worst_overall() > 1e-9);

  // the same perturbation is invisible at a loose tolerance
  auto loose = verify_conditions(g.cloud, g.index, 1e-2);
  CHECK(loose.pass);
  CHECK(loose.violations.empty());
}

TEST_CASE("violation list is capped but the count is not") {
  auto g = generate_thin_laakso(3, 2.0, 0.1);
  for (std::size_t i = 0; i < g.cloud.n(); ++i)
    g.cloud.point(i)[0] *= 1.001;  // skew everything at once
  auto vr = verify_conditions(g.cloud, g.index, 1e-12);
  CHECK_FALSE(vr.pass);
  CHECK(vr.violations.size() == VerifyReport::kMaxViolations);
}

TEST_CASE("designated pairs attach each midpoint to both endpoints") {
  auto g = generate_thin_laakso(2, 4.0, 0.25);
  auto pairs = designated_pairs(g.index, 1);
  CHECK(pairs.size() == 4 * 6);
  const auto& cp = g.index.at_level(2)[0];
  auto top = designated_pairs_of(g.index, cp);
  REQUIRE(top.size() == 4);
  CHECK(top[0].first == cp.s());
  CHECK(top[0].second == cp.members[2]);
  CHECK(top[1].first == cp.s());
  CHECK(top[1].second == cp.members[3]);
  CHECK(top[2].first == cp.members[2]);
  CHECK(top[2].second == cp.t());
  CHECK(top[3].first == cp.members[3]);
  CHECK(top[3].second == cp.t());
}

TEST_CASE("cloud json round trip preserves the structure exactly") {
  auto g = generate_thin_laakso(2, 2.5, 0.15);
  auto path = std::filesystem::temp_directory_path() / "laakso_rt.json";
  save_cloud(path.string(), g);
  auto h = load_cloud(path.string());
  std::filesystem::remove(path);

  CHECK(h.cloud.labels == g.cloud.labels);
  CHECK(h.cloud.data == g.cloud.data);  // bitwise, via shortest round trip
  CHECK(h.cloud.q == g.cloud.q);
  CHECK(h.cloud.epsilon == g.cloud.epsilon);
  CHECK(h.index.total_copies() == g.index.total_copies());
  for (int j = 1; j <= 2; ++j) {
    const auto& a = g.index.at_level(j);
    const auto& b = h.index.at_level(j);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].members == b[i].members);
      CHECK(a[i].edge_path == b[i].edge_path);
    }
  }
  CHECK(verify_conditions(h.cloud, h.index, 1e-9).pass);
}
