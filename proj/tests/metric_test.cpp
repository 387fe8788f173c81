#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <stdexcept>

#include "thinstruct/graph.hpp"
#include "thinstruct/io.hpp"
#include "thinstruct/laakso.hpp"
#include "thinstruct/metric.hpp"

using namespace thinstruct;

namespace {

// 3x3 integer grid as a point cloud under the requested norm
PointCloud grid_cloud(double q) {
  PointCloud c;
  c.dim = 2;
  c.q = q;
  for (int x = 0; x <= 2; ++x)
    for (int y = 0; y <= 2; ++y) {
      auto i = c.add("g" + std::to_string(x) + std::to_string(y));
      c.point(i)[0] = x;
      c.point(i)[1] = y;
    }
  return c;
}

}  // namespace

TEST_CASE("metric construction and validation") {
  auto g = generate_thin_laakso(2, 2.0, 0.1);
  auto m = FiniteMetric::from_cloud(g.cloud);
  CHECK(m.n == 30);
  CHECK(m.labels == g.cloud.labels);
  CHECK(m.at(0, 1) == g.cloud.dist(0, 1));
  CHECK(m.at(3, 3) == 0.0);
  m.validate();

  SUBCASE("asymmetry is rejected") {
    m.d[1] += 1e-6;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("negative entries are rejected") {
    m.d[1] = -m.d[1];
    m.d[m.n] = m.d[1];
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("nonzero diagonal is rejected") {
    m.d[0] = 1e-3;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  }
  SUBCASE("triangle violations are rejected, unless skipped") {
    m.d[1] = m.d[m.n] = 1e9;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    CHECK_NOTHROW(m.validate(1e-12, false));
  }
}

TEST_CASE("integer matrices adopt graph hop distances") {
  auto g = power_graph(laakso_base(), 1);
  auto hops = graph_metric(g);
  auto m = FiniteMetric::from_int_matrix(g.vertices, hops);
  m.validate();
  CHECK(m.at(g.source, g.sink) == 4.0);
  CHECK_THROWS_AS(FiniteMetric::from_int_matrix({"a"}, {0, 1, 1, 0}),
                  std::invalid_argument);
}

TEST_CASE("doubling on tiny spaces") {
  PointCloud c;
  c.dim = 1;
  c.q = 2.0;
  c.add("a");
  auto one = doubling_constant(FiniteMetric::from_cloud(c));
  CHECK(one.upper == 1);
  CHECK(one.lower == 1);

  c.point(c.add("b"))[0] = 1.0;
  auto two = doubling_constant(FiniteMetric::from_cloud(c));
  CHECK(two.upper == 2);
  CHECK(two.lower == 1);  // no pair beats the r-separation at scale r
}

TEST_CASE("doubling brackets the recursive clouds") {
  std::uint64_t upper_want[] = {3, 7, 7};
  std::uint64_t lower_want[] = {2, 3, 4};
  for (int k = 1; k <= 3; ++k) {
    auto g = generate_thin_laakso(k, 3.0, 0.1);
    auto est = doubling_constant(FiniteMetric::from_cloud(g.cloud));
    CAPTURE(k);
    CHECK(est.upper == upper_want[k - 1]);
    CHECK(est.lower == lower_want[k - 1]);
    CHECK(est.lower <= est.upper);
    CHECK(est.upper_center >= 0);
    CHECK(est.upper_radius > 0);
  }
}

TEST_CASE("radius subsampling can only weaken the scan") {
  auto g = generate_thin_laakso(2, 3.0, 0.1);
  auto m = FiniteMetric::from_cloud(g.cloud);
  auto full = doubling_constant(m);
  auto sub = doubling_constant(m, 4);
  CHECK(sub.upper <= full.upper);
  CHECK(sub.lower <= full.lower);
  CHECK(sub.balls_scanned < full.balls_scanned);
  CHECK(sub.upper >= sub.lower);
}

TEST_CASE("midpoint sets see the flat directions of the max norm") {
  auto grid = grid_cloud(kInf);
  auto m = FiniteMetric::from_cloud(grid);
  int x = grid.index_of("g01"), y = grid.index_of("g21");
  auto mid = mid_set(m, x, y, 0.0);
  CHECK(mid.members.size() == 3);  // the whole middle column
  CHECK(mid.diameter == 2.0);      // as wide as d(x,y) itself

  auto e2 = FiniteMetric::from_cloud(grid_cloud(2.0));
  auto tight = mid_set(e2, x, y, 0.0);
  CHECK(tight.members.size() == 1);
  CHECK(tight.diameter == 0.0);
  // a slightly larger window captures the off-axis neighbors
  auto wide = mid_set(e2, x, y, std::sqrt(2.0) - 1.0 + 1e-12);
  CHECK(wide.members.size() == 3);

  CHECK_THROWS_AS(mid_set(m, x, x, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(mid_set(m, x, y, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(mid_set(m, x, 99, 0.1), std::invalid_argument);
}

TEST_CASE("rounded ball scan separates the two grid geometries") {
  auto minf = FiniteMetric::from_cloud(grid_cloud(kInf));
  auto flat = rounded_ball_scan(minf, 1.0, {0.0, 0.1});
  CHECK(flat.eta_star == -1.0);  // midpoint sets stay as wide as the pair
  CHECK(flat.worst_ratio[0] >= 1.0);

  auto m2 = FiniteMetric::from_cloud(grid_cloud(2.0));
  auto round = rounded_ball_scan(m2, 1.0, {0.0, 0.05});
  CHECK(round.eta_star >= 0.0);
  CHECK(round.worst_ratio[0] < 1.0);

  CHECK_THROWS_AS(rounded_ball_scan(m2, 0.0, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(rounded_ball_scan(m2, 1.5, {0.1}), std::invalid_argument);
  CHECK_THROWS_AS(rounded_ball_scan(m2, 0.5, {}), std::invalid_argument);
  CHECK_THROWS_AS(rounded_ball_scan(m2, 0.5, {-0.1}), std::invalid_argument);
}

TEST_CASE("four point inequality: flat witness versus euclidean sample") {
  PointCloud flat;
  flat.dim = 2;
  flat.q = kInf;
  double pts[4][2] = {{0, 0}, {1, 1}, {2, 0}, {1, -1}};
  for (int i = 0; i < 4; ++i) {
    auto id = flat.add("p" + std::to_string(i));
    flat.point(id)[0] = pts[i][0];
    flat.point(id)[1] = pts[i][1];
  }
  auto fm = FiniteMetric::from_cloud(flat);
  auto r = four_point_check(fm, 2.0, 4.0);
  CHECK(r.violated);
  CHECK(r.lemma_range);
  CHECK(r.max_ratio == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.quadruples == 3);  // one unordered quadruple, three pairings
  for (int w : r.witness) CHECK(w >= 0);

  auto r3 = four_point_check(fm, 3.0, 8.0);
  CHECK(r3.violated);
  CHECK(r3.lemma_range);

  auto wide = four_point_check(fm, 2.0, 9.0);
  CHECK_FALSE(wide.lemma_range);  // C beyond 2^p proves nothing

  auto gauss = gaussian_cloud(64, 8, 2.0, 11);
  auto gm = FiniteMetric::from_cloud(gauss);
  auto ok = four_point_check(gm, 2.0, 4.0, 20000, 5);
  CHECK_FALSE(ok.violated);
  CHECK(ok.quadruples == 20000);
  CHECK(ok.max_ratio > 0.0);

  auto exhaustive = four_point_check(fm, 2.0, 4.0, 0, 0);
  CHECK(exhaustive.quadruples == 3);
  CHECK_THROWS_AS(four_point_check(fm, -1.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(four_point_check(fm, 2.0, 0.0), std::invalid_argument);
}

TEST_CASE("gaussian clouds are reproducible by seed") {
  auto a = gaussian_cloud(16, 4, 2.0, 42);
  auto b = gaussian_cloud(16, 4, 2.0, 42);
  auto c = gaussian_cloud(16, 4, 2.0, 43);
  CHECK(a.data == b.data);
  CHECK(a.data != c.data);
  CHECK(a.n() == 16);
  CHECK(a.labels[0] == "g0");
  CHECK(a.q == 2.0);
}

TEST_CASE("metric csv round trip") {
  auto g = generate_thin_laakso(1, 2.0, 0.1);
  auto m = FiniteMetric::from_cloud(g.cloud);
  auto path = std::filesystem::temp_directory_path() / "metric_rt.csv";
  write_metric_csv(path.string(), m);
  auto back = load_metric_csv(path.string());
  std::filesystem::remove(path);
  CHECK(back.labels == m.labels);
  CHECK(back.d == m.d);
}
