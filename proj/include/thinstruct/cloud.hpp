#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "thinstruct/common.hpp"

namespace thinstruct {

// Finite set of coordinate vectors under an lp-type norm. For discretized
// function-space clouds, cell_weight is the uniform cell measure (grid mesh),
// so ||v||^q = cell_weight * sum |v_i|^q; coordinate clouds use weight 1.
struct PointCloud {
  std::vector<double> data;  // n * dim, row-major
  std::size_t dim = 0;
  double q = 2.0;            // norm exponent, kInf for max-norm
  double cell_weight = 1.0;

  std::vector<std::string> labels;

  // generation parameters; kind "" for ad-hoc clouds
  std::string kind;          // "laakso" | "diamond" | ""
  int k = 0;
  double epsilon = 0.0;
  int branching = 0;         // diamond only

  std::size_t n() const { return dim == 0 ? 0 : data.size() / dim; }
  const double* point(std::size_t i) const { return data.data() + i * dim; }
  double* point(std::size_t i) { return data.data() + i * dim; }

  double dist(std::size_t i, std::size_t j) const {
    return lp_dist(point(i), point(j), dim, q, cell_weight);
  }

  int index_of(const std::string& label) const;

  std::size_t add(const std::string& label);  // appends a zero point

 private:
  mutable std::unordered_map<std::string, int> lmap_;
};

// One base-pattern copy inside a recursive structure: members are point
// indices in the order [s, interior roles..., t]. level counts from the
// bottom (level 1 = finest copies, level k = the whole structure); the
// copy was created at generation step k - level + 1 by expanding the edge
// with the recorded path.
struct Copy {
  int level = 0;
  std::vector<int> edge_path;
  std::vector<int> members;

  int s() const { return members.front(); }
  int t() const { return members.back(); }
  std::string id() const;  // "L{depth}" or "L{depth}:{e1.e2...}"
};

struct SubstructureIndex {
  std::string kind;  // "laakso" | "diamond"
  int k = 0;
  int branching = 0;                      // diamond branching, 0 for laakso
  std::vector<std::vector<Copy>> levels;  // levels[j-1] = level-j copies

  const std::vector<Copy>& at_level(int j) const;
  std::size_t total_copies() const;
};

struct GeneratedStructure {
  PointCloud cloud;
  SubstructureIndex index;
};

struct ConditionHit {
  std::string copy;
  std::string condition;
  double rel_err = 0.0;
};

// Outcome of checking the defining distance identities on every copy.
// Errors are relative to each copy's own d(s,t), never absolute: distances
// shrink geometrically with depth, so a flat tolerance would be meaningless
// at the bottom levels.
struct VerifyReport {
  bool pass = true;
  double rel_tol = 0.0;
  std::size_t copies = 0;
  std::size_t checks = 0;
  std::vector<std::string> conditions;   // condition names, report order
  std::vector<double> worst;             // worst relative error per condition
  std::vector<ConditionHit> violations;  // failing checks, capped
  static constexpr std::size_t kMaxViolations = 64;

  double worst_overall() const;
};

}  // namespace thinstruct
