#include "thinstruct/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace thinstruct {

int StGraph::index_of(const std::string& label) const {
  if (vmap_.size() != vertices.size()) {
    vmap_.clear();
    for (std::size_t i = 0; i < vertices.size(); ++i)
      vmap_[vertices[i]] = static_cast<int>(i);
  }
  auto it = vmap_.find(label);
  return it == vmap_.end() ? -1 : it->second;
}

void StGraph::validate() const {
  if (vertices.size() < 2) throw std::invalid_argument("graph needs at least source and sink");
  if (source == sink) throw std::invalid_argument("source equals sink");
  std::set<std::string> seen(vertices.begin(), vertices.end());
  if (seen.size() != vertices.size())
    throw std::invalid_argument("duplicate vertex labels");
  std::set<std::pair<int, int>> es;
  for (auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= static_cast<int>(vertices.size()) ||
        v >= static_cast<int>(vertices.size()))
      throw std::invalid_argument("edge endpoint out of range");
    if (u == v) throw std::invalid_argument("self loop");
    if (!es.insert({u, v}).second) throw std::invalid_argument("duplicate edge");
  }
}

BasePattern laakso_base() {
  BasePattern p;
  p.name = "L1";
  p.roles = {"a", "m1", "m2", "b"};
  // s->a, a->m1, a->m2, m1->b, m2->b, b->t  (indices into roles; -2 = s, -1 = t)
  p.edges = {{-2, 0}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {3, -1}};
  return p;
}

BasePattern k2b_base(int b) {
  if (b < 2 || b > 12)
    throw std::invalid_argument("k2b branch count must be in [2, 12]");
  BasePattern p;
  p.name = "K2b";
  p.b = b;
  for (int i = 0; i < b; ++i) p.roles.push_back("m" + std::to_string(i + 1));
  for (int i = 0; i < b; ++i) {
    p.edges.push_back({-2, i});
    p.edges.push_back({i, -1});
  }
  return p;
}

BasePattern diamond_base() {
  BasePattern p = k2b_base(2);
  p.name = "C4";
  p.b = 0;
  return p;
}

BasePattern base_by_name(const std::string& name, int b) {
  if (name == "L1" || name == "laakso") return laakso_base();
  if (name == "C4" || name == "diamond") return diamond_base();
  if (name == "K2b" || name == "k2b") return k2b_base(b ? b : 2);
  throw std::invalid_argument("unknown base pattern: " + name);
}

namespace {

struct EdgeRec {
  int u, v;
  std::vector<int> path;
};

// expands every current edge once; appends created vertices to g
std::vector<EdgeRec> expand_step(const BasePattern& base, StGraph& g,
                                 const std::vector<EdgeRec>& cur) {
  std::vector<EdgeRec> nxt;
  nxt.reserve(cur.size() * base.edges.size());
  for (const auto& e : cur) {
    VertexAddress proto;
    proto.level = static_cast<int>(e.path.size());
    proto.edge_path = e.path;
    std::vector<int> interior(base.roles.size());
    for (std::size_t r = 0; r < base.roles.size(); ++r) {
      proto.role = base.roles[r];
      interior[r] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(proto.str());
    }
    auto resolve = [&](int x) {
      if (x == -2) return e.u;
      if (x == -1) return e.v;
      return interior[x];
    };
    for (std::size_t c = 0; c < base.edges.size(); ++c) {
      EdgeRec child;
      child.u = resolve(base.edges[c].first);
      child.v = resolve(base.edges[c].second);
      child.path = e.path;
      child.path.push_back(static_cast<int>(c));
      nxt.push_back(std::move(child));
    }
  }
  return nxt;
}

}  // namespace

StGraph power_graph(const BasePattern& base, int k) {
  if (k < 0) throw std::invalid_argument("power_graph: k must be nonnegative");
  if (base.roles.empty())
    throw std::invalid_argument("base pattern needs interior vertices");
  StGraph g;
  g.base = base.name;
  g.base_b = base.b;
  g.k = k;
  g.vertices = {"L0:s", "L0:t"};
  std::vector<EdgeRec> cur = {{0, 1, {}}};
  for (int step = 1; step <= k; ++step) cur = expand_step(base, g, cur);
  g.edges.reserve(cur.size());
  for (auto& e : cur) g.edges.push_back({e.u, e.v});
  return g;
}

std::vector<std::vector<std::string>> copies_at_level(const BasePattern& base,
                                                      int k, int j) {
  if (k < 1) throw std::invalid_argument("copies_at_level: k must be >= 1");
  if (j < 1 || j > k)
    throw std::invalid_argument("copies_at_level: level must be in [1, k]");
  StGraph g;
  g.vertices = {"L0:s", "L0:t"};
  std::vector<EdgeRec> cur = {{0, 1, {}}};
  for (int step = 1; step <= k - j; ++step) cur = expand_step(base, g, cur);
  std::vector<std::vector<std::string>> out;
  out.reserve(cur.size());
  for (const auto& e : cur) {
    std::vector<std::string> copy;
    copy.push_back(g.vertices[e.u]);
    VertexAddress proto;
    proto.level = static_cast<int>(e.path.size());
    proto.edge_path = e.path;
    for (const auto& r : base.roles) {
      proto.role = r;
      copy.push_back(proto.str());
    }
    copy.push_back(g.vertices[e.v]);
    out.push_back(std::move(copy));
  }
  return out;
}

StGraph oslash(const StGraph& h, const StGraph& g) {
  h.validate();
  g.validate();
  int gi = 0;
  for (int v = 0; v < static_cast<int>(g.num_vertices()); ++v)
    if (v != g.source && v != g.sink) ++gi;
  if (gi == 0)
    throw std::invalid_argument("oslash: pattern graph has no interior vertices");
  for (auto& [u, v] : g.edges)
    if ((u == g.source && v == g.sink) || (u == g.sink && v == g.source))
      throw std::invalid_argument("oslash: pattern graph has a direct source-sink edge");

  StGraph out;
  out.vertices = h.vertices;
  out.source = h.source;
  out.sink = h.sink;
  // vertex (e, w) for every edge e of h and interior w of g
  std::vector<std::vector<int>> inner(h.edges.size(),
                                      std::vector<int>(g.num_vertices(), -1));
  for (std::size_t e = 0; e < h.edges.size(); ++e)
    for (int w = 0; w < static_cast<int>(g.num_vertices()); ++w) {
      if (w == g.source || w == g.sink) continue;
      inner[e][w] = static_cast<int>(out.vertices.size());
      out.vertices.push_back("(e" + std::to_string(e) + "|" + g.vertices[w] + ")");
    }
  for (std::size_t e = 0; e < h.edges.size(); ++e) {
    auto [hu, hv] = h.edges[e];
    auto resolve = [&](int w) {
      if (w == g.source) return hu;
      if (w == g.sink) return hv;
      return inner[e][w];
    };
    for (auto& [gu, gv] : g.edges) out.edges.push_back({resolve(gu), resolve(gv)});
  }
  return out;
}

std::vector<int> graph_metric(const StGraph& g, std::size_t max_vertices) {
  g.validate();
  std::size_t n = g.num_vertices();
  if (n > max_vertices)
    throw std::invalid_argument(
        "graph_metric: " + std::to_string(n) + " vertices exceeds the dense-matrix guard (" +
        std::to_string(max_vertices) + "); raise max_vertices explicitly if intended");
  std::vector<std::vector<int>> adj(n);
  for (auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::vector<int> dist(n * n, -1);
  std::deque<int> queue;
  for (std::size_t s = 0; s < n; ++s) {
    int* row = dist.data() + s * n;
    row[s] = 0;
    queue.clear();
    queue.push_back(static_cast<int>(s));
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adj[u])
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (row[v] < 0) throw std::invalid_argument("graph_metric: graph is disconnected");
  }
  return dist;
}

namespace {

// stable colors from (source/sink flag, degrees, neighbor colors), then
// backtracking search respecting colors
struct IsoEnv {
  const StGraph *a, *b;
  std::vector<std::vector<int>> aout, ain, bout, bin;
  std::vector<int> ca, cb;
  std::vector<int> order;      // a-vertices, most constrained first
  std::vector<int> match_ab, match_ba;
  std::size_t budget;

  bool feasible(int va, int vb) {
    if (ca[va] != cb[vb]) return false;
    for (int w : aout[va]) {
      int mw = match_ab[w];
      if (mw >= 0 && std::find(bout[vb].begin(), bout[vb].end(), mw) == bout[vb].end())
        return false;
    }
    for (int w : ain[va]) {
      int mw = match_ab[w];
      if (mw >= 0 && std::find(bin[vb].begin(), bin[vb].end(), mw) == bin[vb].end())
        return false;
    }
    // reverse direction: matched b-neighbors must map back to a-neighbors
    for (int w : bout[vb]) {
      int mw = match_ba[w];
      if (mw >= 0 && std::find(aout[va].begin(), aout[va].end(), mw) == aout[va].end())
        return false;
    }
    for (int w : bin[vb]) {
      int mw = match_ba[w];
      if (mw >= 0 && std::find(ain[va].begin(), ain[va].end(), mw) == ain[va].end())
        return false;
    }
    return true;
  }

  bool search(std::size_t depth) {
    if (budget-- == 0) throw std::runtime_error("st_isomorphic: node budget exhausted");
    if (depth == order.size()) return true;
    int va = order[depth];
    for (int vb = 0; vb < static_cast<int>(b->num_vertices()); ++vb) {
      if (match_ba[vb] >= 0 || !feasible(va, vb)) continue;
      match_ab[va] = vb;
      match_ba[vb] = va;
      if (search(depth + 1)) return true;
      match_ab[va] = -1;
      match_ba[vb] = -1;
    }
    return false;
  }
};

std::vector<int> refine_colors(const StGraph& g,
                               const std::vector<std::vector<int>>& out,
                               const std::vector<std::vector<int>>& in) {
  std::size_t n = g.num_vertices();
  std::vector<long long> sig(n);
  std::vector<int> color(n);
  for (std::size_t v = 0; v < n; ++v)
    sig[v] = (v == static_cast<std::size_t>(g.source) ? 1 : 0) * 1000000 +
             (v == static_cast<std::size_t>(g.sink) ? 1 : 0) * 100000 +
             static_cast<long long>(out[v].size()) * 300 + static_cast<long long>(in[v].size());
  for (int round = 0; round < 16; ++round) {
    std::vector<long long> uniq(sig);
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (std::size_t v = 0; v < n; ++v)
      color[v] = static_cast<int>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
    std::vector<long long> next(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<int> no, ni;
      for (int w : out[v]) no.push_back(color[w]);
      for (int w : in[v]) ni.push_back(color[w]);
      std::sort(no.begin(), no.end());
      std::sort(ni.begin(), ni.end());
      long long h = color[v];
      for (int c : no) h = h * 1000003 + c + 1;
      h = h * 1000033 + 7;
      for (int c : ni) h = h * 1000003 + c + 1;
      next[v] = h;
    }
    if (next == sig) break;
    sig = std::move(next);
  }
  return color;
}

std::vector<std::vector<int>> out_adj(const StGraph& g, bool reversed) {
  std::vector<std::vector<int>> adj(g.num_vertices());
  for (auto& [u, v] : g.edges)
    reversed ? adj[v].push_back(u) : adj[u].push_back(v);
  return adj;
}

}  // namespace

bool st_isomorphic(const StGraph& a, const StGraph& b, std::size_t node_budget) {
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges())
    return false;
  IsoEnv env;
  env.a = &a;
  env.b = &b;
  env.aout = out_adj(a, false);
  env.ain = out_adj(a, true);
  env.bout = out_adj(b, false);
  env.bin = out_adj(b, true);
  env.ca = refine_colors(a, env.aout, env.ain);
  env.cb = refine_colors(b, env.bout, env.bin);
  {
    std::vector<int> ha(env.ca), hb(env.cb);
    std::sort(ha.begin(), ha.end());
    std::sort(hb.begin(), hb.end());
    if (ha != hb) return false;
  }
  env.match_ab.assign(a.num_vertices(), -1);
  env.match_ba.assign(b.num_vertices(), -1);
  env.budget = node_budget;
  // rarest color classes first keeps the search shallow
  std::vector<int> class_size(a.num_vertices() + 1, 0);
  for (int c : env.ca) ++class_size[c];
  env.order.resize(a.num_vertices());
  for (std::size_t i = 0; i < a.num_vertices(); ++i) env.order[i] = static_cast<int>(i);
  std::sort(env.order.begin(), env.order.end(), [&](int x, int y) {
    if (class_size[env.ca[x]] != class_size[env.ca[y]])
      return class_size[env.ca[x]] < class_size[env.ca[y]];
    return x < y;
  });
  return env.search(0);
}

}  // namespace thinstruct
