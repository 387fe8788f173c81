#include "thinstruct/laakso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thinstruct/address.hpp"

namespace thinstruct {

namespace {

struct PendingEdge {
  int u, v;
  std::vector<int> path;
};

}  // namespace

GeneratedStructure generate_thin_laakso(int k, double q, double epsilon,
                                        int max_k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > max_k)
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " exceeds the point budget (max k = " +
                                std::to_string(max_k) + ")");
  if (!valid_exponent(q)) throw std::invalid_argument("exponent must be in [1, inf]");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (one_plus_pow(epsilon, q) > 2.0)
    throw std::invalid_argument("epsilon too large: (1+eps^q)^{1/q} must be <= 2");

  GeneratedStructure out;
  PointCloud& c = out.cloud;
  c.dim = static_cast<std::size_t>(k) + 1;
  c.q = q;
  c.kind = "laakso";
  c.k = k;
  c.epsilon = epsilon;

  c.add("L0:s");
  c.add("L0:t");
  c.point(0)[0] = -1.0;
  c.point(1)[0] = 1.0;

  out.index.kind = "laakso";
  out.index.k = k;
  out.index.levels.resize(k);

  std::vector<PendingEdge> cur = {{0, 1, {}}};
  std::vector<PendingEdge> nxt;
  std::vector<double> su(c.dim), sv(c.dim);
  for (int step = 1; step <= k; ++step) {
    std::size_t axis = static_cast<std::size_t>(step);  // fresh coordinate
    nxt.clear();
    nxt.reserve(cur.size() * 6);
    auto& level = out.index.levels[k - step];
    level.reserve(cur.size());
    for (const auto& e : cur) {
      // copy endpoints out: add() reallocates the backing store
      std::copy_n(c.point(e.u), c.dim, su.begin());
      std::copy_n(c.point(e.v), c.dim, sv.begin());
      double nrm = lp_dist(su.data(), sv.data(), c.dim, q);

      VertexAddress proto;
      proto.level = static_cast<int>(e.path.size());
      proto.edge_path = e.path;

      proto.role = "a";
      int a = static_cast<int>(c.add(proto.str()));
      proto.role = "m1";
      int m1 = static_cast<int>(c.add(proto.str()));
      proto.role = "m2";
      int m2 = static_cast<int>(c.add(proto.str()));
      proto.role = "b";
      int b = static_cast<int>(c.add(proto.str()));

      double* pa = c.point(a);
      double* pm1 = c.point(m1);
      double* pm2 = c.point(m2);
      double* pb = c.point(b);
      for (std::size_t i = 0; i < c.dim; ++i) {
        pa[i] = 0.75 * su[i] + 0.25 * sv[i];
        pb[i] = 0.25 * su[i] + 0.75 * sv[i];
        pm1[i] = pm2[i] = 0.5 * (su[i] + sv[i]);
      }
      pm1[axis] += 0.5 * epsilon * nrm;
      pm2[axis] -= 0.5 * epsilon * nrm;

      Copy cp;
      cp.level = k - step + 1;
      cp.edge_path = e.path;
      cp.members = {e.u, a, m1, m2, b, e.v};
      level.push_back(std::move(cp));

      const int child_u[6] = {e.u, a, a, m1, m2, b};
      const int child_v[6] = {a, m1, m2, b, b, e.v};
      for (int ci = 0; ci < 6; ++ci) {
        PendingEdge ch;
        ch.u = child_u[ci];
        ch.v = child_v[ci];
        ch.path = e.path;
        ch.path.push_back(ci);
        nxt.push_back(std::move(ch));
      }
    }
    cur.swap(nxt);
  }
  return out;
}

namespace {

struct Partial {
  std::vector<double> worst;
  std::vector<ConditionHit> hits;
  std::size_t checks = 0;
};

}  // namespace

VerifyReport verify_conditions(const PointCloud& cloud,
                               const SubstructureIndex& index,
                               double rel_tol) {
  if (index.kind != "laakso" || cloud.kind != "laakso")
    throw std::invalid_argument("verify_conditions expects a laakso cloud and index");
  if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");

  const double eps = cloud.epsilon;
  const double q = cloud.q;
  const double r3f = 0.25 * one_plus_pow(2.0 * eps, q);
  const double r4f = 0.5 * one_plus_pow(eps, q);
  static const char* kNames[5] = {"c1", "c2", "c3", "c4", "c5"};

  std::vector<const Copy*> copies;
  copies.reserve(index.total_copies());
  for (const auto& lv : index.levels)
    for (const auto& cp : lv) {
      if (cp.members.size() != 6)
        throw std::invalid_argument("copy " + cp.id() + " is not a 6-point copy");
      for (int m : cp.members)
        if (m < 0 || m >= static_cast<int>(cloud.n()))
          throw std::invalid_argument("copy " + cp.id() + " indexes outside the cloud");
      copies.push_back(&cp);
    }

  unsigned nw = worker_count();
  std::vector<Partial> parts(std::max(1u, nw));
  for (auto& p : parts) p.worst.assign(5, 0.0);

  parallel_chunks(copies.size(), [&](std::size_t w, std::size_t lo,
                                     std::size_t hi) {
    Partial& part = parts[w];
    for (std::size_t ci = lo; ci < hi; ++ci) {
      const Copy& cp = *copies[ci];
      int s = cp.members[0], a = cp.members[1], m1 = cp.members[2],
          m2 = cp.members[3], b = cp.members[4], t = cp.members[5];
      double dst = cloud.dist(s, t);
      auto check = [&](int cond, double actual, double expected) {
        double err = dst > 0 ? std::abs(actual - expected) / dst : kInf;
        ++part.checks;
        if (err > part.worst[cond]) part.worst[cond] = err;
        if (!(err <= rel_tol))
          part.hits.push_back({cp.id(), kNames[cond], err});
      };
      if (!(dst > 0)) {
        check(0, 0.0, 1.0);  // degenerate copy: endpoints coincide
        continue;
      }
      check(0, cloud.dist(s, a), 0.25 * dst);
      check(0, cloud.dist(b, t), 0.25 * dst);
      check(0, 0.5 * cloud.dist(a, b), 0.25 * dst);
      check(1, cloud.dist(s, b), 0.75 * dst);
      check(1, cloud.dist(a, t), 0.75 * dst);
      double r3 = r3f * dst, r4 = r4f * dst;
      for (int m : {m1, m2}) {
        check(2, cloud.dist(m, a), r3);
        check(2, cloud.dist(m, b), r3);
        check(3, cloud.dist(s, m), r4);
        check(3, cloud.dist(m, t), r4);
      }
      check(4, cloud.dist(m1, m2), eps * dst);
    }
  });

  VerifyReport rep;
  rep.rel_tol = rel_tol;
  rep.copies = copies.size();
  rep.conditions.assign(kNames, kNames + 5);
  rep.worst.assign(5, 0.0);
  for (const auto& part : parts) {
    rep.checks += part.checks;
    for (int i = 0; i < 5; ++i) rep.worst[i] = std::max(rep.worst[i], part.worst[i]);
    for (const auto& h : part.hits)
      if (rep.violations.size() < VerifyReport::kMaxViolations)
        rep.violations.push_back(h);
  }
  rep.pass = rep.worst_overall() <= rel_tol;
  return rep;
}

std::vector<std::pair<int, int>> designated_pairs_of(
    const SubstructureIndex& index, const Copy& cp) {
  std::vector<std::pair<int, int>> pairs;
  int s = cp.s(), t = cp.t();
  if (index.kind == "laakso") {
    int m1 = cp.members[2], m2 = cp.members[3];
    pairs.emplace_back(s, m1);
    pairs.emplace_back(s, m2);
    pairs.emplace_back(m1, t);
    pairs.emplace_back(m2, t);
  } else {
    for (std::size_t i = 1; i + 1 < cp.members.size(); ++i) {
      pairs.emplace_back(s, cp.members[i]);
      pairs.emplace_back(cp.members[i], t);
    }
  }
  return pairs;
}

std::vector<std::pair<int, int>> designated_pairs(
    const SubstructureIndex& index, int j) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& cp : index.at_level(j))
    for (auto pr : designated_pairs_of(index, cp)) pairs.push_back(pr);
  return pairs;
}

}  // namespace thinstruct
