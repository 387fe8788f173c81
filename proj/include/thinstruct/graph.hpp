#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thinstruct/address.hpp"

namespace thinstruct {

// Directed two-terminal graph.  Vertices are canonical address strings;
// edges keep the orientation induced by the source-to-sink direction of the
// base patterns.
struct StGraph {
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;
  int source = 0;
  int sink = 1;

  // provenance of iterated constructions ("" for generic compositions)
  std::string base;
  int base_b = 0;
  int k = 0;

  std::size_t num_vertices() const { return vertices.size(); }
  std::size_t num_edges() const { return edges.size(); }
  int index_of(const std::string& label) const;  // -1 when absent
  void validate() const;  // distinct labels, s != t, no loops/duplicate edges

 private:
  mutable std::unordered_map<std::string, int> vmap_;
};

// Base pattern for edge substitution: interior roles plus the directed edge
// list, with -2 standing for the pattern source and -1 for the sink.
struct BasePattern {
  std::string name;
  std::vector<std::string> roles;
  std::vector<std::pair<int, int>> edges;
  int b = 0;  // branch count for K2b-style patterns (0 otherwise)
};

BasePattern laakso_base();      // roles a,m1,m2,b; 6 edges
BasePattern k2b_base(int b);    // roles m1..mb; 2b edges; b=2 is the 4-cycle
BasePattern diamond_base();     // k2b_base(2) under the name C4
BasePattern base_by_name(const std::string& name, int b = 0);

// k-fold left-iterated substitution of `base` into a single edge.
// k = 0 yields the two-vertex single-edge graph.
StGraph power_graph(const BasePattern& base, int k);

// One substitution step on arbitrary graphs: every directed edge of h is
// replaced by a copy of g (g needs interior vertices and must not contain a
// direct source-sink edge).  Labels of the new vertices are synthesized; use
// power_graph for canonical addresses.
StGraph oslash(const StGraph& h, const StGraph& g);

// Copies of the depth-j substructure inside power_graph(base, k), j in [1,k].
// Each copy lists [s, role vertices in pattern order..., t] as address
// strings; there are |E(base)|^(k-j) copies.
std::vector<std::vector<std::string>> copies_at_level(const BasePattern& base,
                                                      int k, int j);

// Hop metric of the undirected support, as a dense matrix in vertex order.
// Guarded because the matrix is quadratic in |V|.
std::vector<int> graph_metric(const StGraph& g, std::size_t max_vertices = 8192);

// Backtracking isomorphism test with source and sink pinned; intended for
// the small instances used in structural checks.
bool st_isomorphic(const StGraph& a, const StGraph& b,
                   std::size_t node_budget = 4000000);

}  // namespace thinstruct
