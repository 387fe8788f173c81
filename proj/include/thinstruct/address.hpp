#pragma once

#include <string>
#include <vector>

namespace thinstruct {

// Hierarchical vertex name inside an iterated edge-substitution graph.
//
// The two endpoints of the whole structure are "L0:s" and "L0:t".  Every
// other vertex was created when some edge of the depth-j structure was
// expanded into a copy of the base pattern; its address records that edge's
// lineage (one local edge index per completed expansion step, each in
// [0, |E(base)|)) plus the role it plays inside the pattern.  creation_level
// always equals the lineage length, so the first-generation pattern vertices
// sit at level 0 with an empty path and print as "L0::a", "L0::m1", ...
struct VertexAddress {
  int level = 0;
  std::vector<int> edge_path;
  std::string role;  // "s"/"t" only for the two endpoints, else a base role

  bool endpoint() const { return role == "s" || role == "t"; }
  std::string str() const;
  static VertexAddress parse(const std::string& s);

  bool operator==(const VertexAddress& o) const = default;
};

}  // namespace thinstruct
