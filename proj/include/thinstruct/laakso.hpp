#pragma once

#include <utility>
#include <vector>

#include "thinstruct/cloud.hpp"

namespace thinstruct {

// Thin Laakso structure in lq^{k+1}: top endpoints at -e1/+e1, then each
// edge {s',t'} splits into a = 3/4 s' + 1/4 t', b = 1/4 s' + 3/4 t' and two
// near-midpoints (s'+t')/2 +- (eps/2)||s'-t'|| along a coordinate axis that
// is fresh for the whole split step. Point labels match the vertex labels of
// the corresponding recursive graph power, in the same order.
// Rejects eps <= 0 and eps with (1+eps^q)^{1/q} > 2; k capped by max_k.
GeneratedStructure generate_thin_laakso(int k, double q, double epsilon,
                                        int max_k = 8);

// Checks, on every copy at every level, the five identities relating
// {s,a,m1,m2,b,t}: the 1/4-3/4 split distances, the midpoint distances
// 1/4 (1+(2e)^q)^{1/q} and 1/2 (1+e^q)^{1/q} of d(s,t), and the midpoint
// separation e*d(s,t).
VerifyReport verify_conditions(const PointCloud& cloud,
                               const SubstructureIndex& index,
                               double rel_tol = 1e-9);

// The pairs whose image/domain ratios define the per-level constants of the
// self-improvement recursion: {s,m_i} and {m_i,t} for each level-j copy.
std::vector<std::pair<int, int>> designated_pairs(
    const SubstructureIndex& index, int j);
std::vector<std::pair<int, int>> designated_pairs_of(
    const SubstructureIndex& index, const Copy& cp);

}  // namespace thinstruct
