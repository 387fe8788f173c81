#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "thinstruct/cloud.hpp"

namespace thinstruct {

// A map from a point cloud into a coordinate target: stores one image vector
// per domain point, plus the target norm (exponent + cell measure).
struct EmbeddingMap {
  const PointCloud* domain = nullptr;
  std::vector<double> image;  // n * target_dim, row-major, domain order
  std::size_t target_dim = 0;
  double target_q = 2.0;
  double target_weight = 1.0;
  std::string name;

  const double* ipoint(std::size_t i) const {
    return image.data() + i * target_dim;
  }
  double idist(std::size_t i, std::size_t j) const {
    return lp_dist(ipoint(i), ipoint(j), target_dim, target_q, target_weight);
  }
};

EmbeddingMap identity_embedding(const PointCloud& c, double target_q);

// Orthonormalized seeded Gaussian frame, scaled by sqrt(dim/d) so that a
// full-dimension draw is an isometry on l2 clouds. Rejects d < 1 or d > dim.
EmbeddingMap random_projection_embed(const PointCloud& c, std::size_t d,
                                     std::uint64_t seed);

struct EmbeddingReport {
  double lip = 0.0;
  double colip = kInf;
  double distortion = kInf;  // lip / colip
  std::pair<int, int> lip_pair{-1, -1};
  std::pair<int, int> colip_pair{-1, -1};
  std::uint64_t pairs = 0;
};

EmbeddingReport measure_distortion(const EmbeddingMap& f);

// Shares the domain-distance evaluation across several maps of the same
// cloud; one pass over all pairs.
std::vector<EmbeddingReport> measure_distortion_multi(
    const PointCloud& domain, const std::vector<const EmbeddingMap*>& maps);

// Per-level constants of the self-improvement recursion: for j = 1..k, the
// worst image/domain ratio over the designated pairs of level-j copies,
// normalized by colip. Nonincreasing in j for the structures built here.
std::vector<double> measure_level_ratios(const EmbeddingMap& f,
                                         const SubstructureIndex& index,
                                         double colip);

enum class ModulusFamily { kUC, kRoundedBall, kAMUC };

// A concrete modulus t -> value. "power" is the abstract c t^p lower-bound
// form the contraction lemmas assume; the analytic forms are exact for lp
// targets and carry provenance "analytic", fitted ones "empirical".
struct ModulusModel {
  ModulusFamily family = ModulusFamily::kUC;
  std::string form = "power";  // "power" | "l2_exact" | "lp_extremal" | "amuc_lp"
  double c = 0.0;
  double power = 2.0;
  double norm_p = 2.0;
  std::string provenance = "analytic";

  double eval(double t) const;
};

ModulusModel l2_uc_model();                       // 1 - sqrt(1 - t^2/4)
ModulusModel lp_uc_model(double p);               // 1 - (1-(t/2)^p)^{1/p}, p >= 2
ModulusModel power_uc_model(double c, double p);  // c t^p
ModulusModel four_point_rb_model(double p);       // t^p/(2^p - 1)
ModulusModel power_rb_model(double c, double p);
ModulusModel amuc_lp_model(double p);             // (1+t^p)^{1/p} - 1

// Empirical modulus estimation: per grid point the constrained minimum over
// unit-sphere pairs (uc) or sphere-plus-tail configurations (amuc), plus a
// log-log power-law fit over the grid.
struct ModulusEstimate {
  ModulusModel fitted;
  std::vector<double> t;
  std::vector<double> value;
};

ModulusEstimate uc_modulus_estimate(double p, std::size_t dim,
                                    std::vector<double> t_grid,
                                    std::size_t restarts = 8,
                                    std::size_t iters = 300,
                                    std::uint64_t seed = 1);

ModulusEstimate amuc_modulus_estimate(double p, std::size_t dim,
                                      std::size_t tail_start,
                                      std::vector<double> t_grid,
                                      std::size_t samples = 32,
                                      std::uint64_t seed = 1);

// Per-copy audit of a contraction inequality. These audit a (model, map)
// pair: a failure means the supplied modulus overstates the target's
// convexity for this map, never that the inequality itself is wrong.
struct ContractionRow {
  std::string copy;
  int level = 0;
  double lhs = 0.0, rhs = 0.0, margin = 0.0;
  bool pass = true;
};

struct ContractionAudit {
  std::string family;
  std::uint64_t copies = 0, failures = 0;
  double worst_margin = kInf;
  std::string worst_copy;
  double D = 0.0, A = 0.0, B = 0.0, eps = 0.0, modulus_arg = 0.0;
  std::vector<ContractionRow> rows;
};

// ||f(s)-f(t)||/colip <= D d(s,t) (1+e^q)^{1/q} (1 - delta(2e/(D(1+e^q)^{1/q})))
ContractionAudit contraction_check_uc(const EmbeddingMap& f,
                                      const SubstructureIndex& index,
                                      const ModulusModel& delta, double D,
                                      double colip);

// ||f(s)-f(t)|| <= B d(s,t) (1+e^q)^{1/q} (1 - eta(e/(2AB))/2), A = 1/colip
ContractionAudit contraction_check_rb(const EmbeddingMap& f,
                                      const SubstructureIndex& index,
                                      const ModulusModel& eta, double A,
                                      double B);

// ||f(s)-f(t)||/colip <= D d(s,t) (1+(2e)^p)^{1/p} (1 - amuc(e/(16D))/5)
ContractionAudit contraction_check_amuc(const EmbeddingMap& f,
                                        const SubstructureIndex& index,
                                        const ModulusModel& amuc, double D,
                                        double colip);

// Which branch (if any) leaves the tau-approximate midpoint set of the
// images of the copy endpoints; -1 records "none within the branching".
struct EscapeRow {
  std::string copy;
  int level = 0;
  int first_branch = -1;
};

struct EscapeReport {
  double tau = 0.0;
  std::uint64_t copies = 0, escaped = 0;
  std::vector<EscapeRow> rows;
};

EscapeReport midpoint_escape_check(const EmbeddingMap& f,
                                   const SubstructureIndex& index, double tau);

// amuc escape threshold of the contraction argument: delta~(e/(16 D))/4
double escape_tau(const ModulusModel& amuc, double eps, double D);

// Closed-form evaluation of the self-improvement lower bounds. gamma = 0
// picks the midpoint of the admissible window; an explicit gamma must lie
// strictly inside it.
struct BoundResult {
  std::string family;
  int k = 0;
  double p = 0.0, q = 0.0, c = 0.0;
  double gamma_max = 0.0, gamma = 0.0;
  double eps_star = 0.0;
  double D_min = 0.0;
};

BoundResult lower_bound_uc(int k, double p, double q, double c,
                           double gamma = 0.0);
BoundResult lower_bound_rb(int k, double p, double q, double c,
                           double gamma = 0.0);

// least-squares slope/intercept of log y against log x
std::pair<double, double> loglog_fit(const std::vector<double>& x,
                                     const std::vector<double>& y);

}  // namespace thinstruct
