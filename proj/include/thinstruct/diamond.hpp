#pragma once

#include "thinstruct/cloud.hpp"

namespace thinstruct {

// Thin b-branching diamond structure as dyadic step functions on [0, k+1]
// with mesh 2^{-b}: endpoints +-chi_[0,1], and each split places b midpoints
// (s'+t')/2 + alternating bumps of height eps*||s'-t'|| on 2^i equal cells of
// the unit interval [step, step+1]. All functions are grid-aligned, so the
// weighted p-norms are exact sums, no quadrature. Rejects p = inf, b outside
// [2,12], and eps with (1+(2 eps)^p)^{1/p} > 2.
GeneratedStructure generate_thin_diamond(int k, double p, double epsilon,
                                         int branching, int max_k = 8);

// Checks on every copy: all midpoints sit at 1/2 (1+(2e)^p)^{1/p} d(s,t)
// from both endpoints, and every midpoint pair is 2^{1-1/p} e d(s,t) apart.
VerifyReport verify_diamond_conditions(const PointCloud& cloud,
                                       const SubstructureIndex& index,
                                       double rel_tol = 1e-9);

}  // namespace thinstruct
