#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "thinstruct/cloud.hpp"

namespace thinstruct {

struct FiniteMetric {
  std::vector<std::string> labels;
  std::vector<double> d;  // n * n
  std::size_t n = 0;

  double at(std::size_t i, std::size_t j) const { return d[i * n + j]; }
  const double* row(std::size_t i) const { return d.data() + i * n; }

  // symmetry, zero diagonal, nonnegativity, and (optionally, O(n^3)) the
  // triangle inequality, all with relative slack
  void validate(double rel_slack = 1e-12, bool triangle = true) const;

  static FiniteMetric from_cloud(const PointCloud& c);
  static FiniteMetric from_int_matrix(const std::vector<std::string>& labels,
                                      const std::vector<int>& dist);
};

// Greedy two-sided doubling estimate. For every center and a set of radii,
// upper takes the size of a farthest-first cover of B(x,r) by r/2-balls
// centered inside the ball, lower the size of an r-separated subset of
// B(x,r) grown farthest-first. Any r-separated subset meets each r/2-ball
// at most once, so lower <= min cover <= upper certifiably.
// max_radii_per_center = 0 scans every distinct distance scale; a positive
// value subsamples radii at quantiles (always keeping the extremes).
struct DoublingEstimate {
  std::uint64_t upper = 1, lower = 1;
  int upper_center = -1;
  double upper_radius = 0.0;
  int lower_center = -1;
  double lower_radius = 0.0;
  std::uint64_t balls_scanned = 0;
};

DoublingEstimate doubling_constant(const FiniteMetric& m,
                                   std::size_t max_radii_per_center = 0);

// {z : max(d(x,z), d(y,z)) <= (1+eta)/2 d(x,y)} and its diameter
struct MidSet {
  std::vector<int> members;
  double diameter = 0.0;
};

MidSet mid_set(const FiniteMetric& m, int x, int y, double eta);

// For each eta in the grid, the worst diam(Mid(x,y,eta))/d(x,y) over all
// pairs, and the largest grid eta whose worst ratio stays below t. The
// result is witnessed by this finite sample only; it can certify failures
// of the rounded-ball property, not the ambient modulus.
struct RoundedBallScan {
  double t = 0.0;
  std::vector<double> eta_grid;
  std::vector<double> worst_ratio;
  double eta_star = -1.0;  // -1 when no grid value qualifies
};

RoundedBallScan rounded_ball_scan(const FiniteMetric& m, double t,
                                  std::vector<double> eta_grid);

// Worst ratio of (d13^p + d24^p) / ((C/4) sum of the four cycle sides^p)
// over quadruples: all distinct quadruples with their three diagonal
// pairings when samples = 0, otherwise seeded random ordered quadruples.
// C values above 2^p are accepted but flagged as outside the range where
// the inequality implies the rounded-ball property.
struct FourPointResult {
  double p = 2.0, C = 4.0;
  double max_ratio = 0.0;
  std::array<int, 4> witness{{-1, -1, -1, -1}};
  std::uint64_t quadruples = 0;
  bool violated = false;
  bool lemma_range = true;
};

FourPointResult four_point_check(const FiniteMetric& m, double p, double C,
                                 std::uint64_t samples = 0,
                                 std::uint64_t seed = 0);

// seeded standard-normal cloud under the lq norm, for sampling experiments
PointCloud gaussian_cloud(std::size_t n, std::size_t dim, double q,
                          std::uint64_t seed);

}  // namespace thinstruct
