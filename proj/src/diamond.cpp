#include "thinstruct/diamond.hpp"

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

GeneratedStructure generate_thin_diamond(int k, double p, double epsilon,
                                         int branching, int max_k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (k > max_k)
    throw std::invalid_argument("k = " + std::to_string(k) +
                                " exceeds the point budget (max k = " +
                                std::to_string(max_k) + ")");
  if (!valid_exponent(p) || p == kInf)
    throw std::invalid_argument("exponent must be finite and >= 1");
  if (branching < 2 || branching > 12)
    throw std::invalid_argument("branching must be in [2, 12]");
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  if (one_plus_pow(2.0 * epsilon, p) > 2.0)
    throw std::invalid_argument(
        "epsilon too large: (1+(2 eps)^p)^{1/p} must be <= 2");

  const int J = branching;  // mesh 2^{-J}: the finest bump uses 2^b cells
  const std::size_t unit = std::size_t{1} << J;
  const std::size_t cells = unit * (static_cast<std::size_t>(k) + 1);

  // n = 2 + b((2b)^k - 1)/(2b - 1) points of `cells` doubles each
  double npts = 2.0;
  double edges = 1.0;
  for (int step = 1; step <= k; ++step) {
    npts += edges * branching;
    edges *= 2.0 * branching;
  }
  if (npts * static_cast<double>(cells) > 6.4e7)
    throw std::invalid_argument("structure exceeds the memory budget");

  GeneratedStructure out;
  PointCloud& c = out.cloud;
  c.dim = cells;
  c.q = p;
  c.cell_weight = std::ldexp(1.0, -J);
  c.kind = "diamond";
  c.k = k;
  c.epsilon = epsilon;
  c.branching = branching;

  c.add("L0:s");
  c.add("L0:t");
  for (std::size_t i = 0; i < unit; ++i) {
    c.point(0)[i] = 1.0;
    c.point(1)[i] = -1.0;
  }

  out.index.kind = "diamond";
  out.index.k = k;
  out.index.branching = branching;
  out.index.levels.resize(k);

  std::vector<PendingEdge> cur = {{0, 1, {}}};
  std::vector<PendingEdge> nxt;
  std::vector<double> su(cells), sv(cells);
  for (int step = 1; step <= k; ++step) {
    std::size_t off = unit * static_cast<std::size_t>(step);
    nxt.clear();
    nxt.reserve(cur.size() * 2 * branching);
    auto& level = out.index.levels[k - step];
    level.reserve(cur.size());
    for (const auto& e : cur) {
      std::copy_n(c.point(e.u), cells, su.begin());
      std::copy_n(c.point(e.v), cells, sv.begin());
      double nrm = lp_dist(su.data(), sv.data(), cells, p, c.cell_weight);

      VertexAddress proto;
      proto.level = static_cast<int>(e.path.size());
      proto.edge_path = e.path;

      Copy cp;
      cp.level = k - step + 1;
      cp.edge_path = e.path;
      cp.members.push_back(e.u);
      for (int i = 1; i <= branching; ++i) {
        proto.role = "m" + std::to_string(i);
        int mi = static_cast<int>(c.add(proto.str()));
        double* pm = c.point(mi);
        for (std::size_t cidx = 0; cidx < cells; ++cidx)
          pm[cidx] = 0.5 * (su[cidx] + sv[cidx]);
        std::size_t seg = unit >> i;  // 2^{J-i} cells per alternation block
        double bump = epsilon * nrm;
        for (std::size_t r = 1; r <= (std::size_t{1} << i); ++r) {
          double sign = (r % 2 == 1) ? -1.0 : 1.0;
          for (std::size_t cidx = off + (r - 1) * seg; cidx < off + r * seg;
               ++cidx)
            pm[cidx] += sign * bump;
        }
        cp.members.push_back(mi);

        PendingEdge in, outn;
        in.u = e.u;
        in.v = mi;
        in.path = e.path;
        in.path.push_back(2 * (i - 1));
        outn.u = mi;
        outn.v = e.v;
        outn.path = e.path;
        outn.path.push_back(2 * (i - 1) + 1);
        nxt.push_back(std::move(in));
        nxt.push_back(std::move(outn));
      }
      cp.members.push_back(e.v);
      level.push_back(std::move(cp));
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

VerifyReport verify_diamond_conditions(const PointCloud& cloud,
                                       const SubstructureIndex& index,
                                       double rel_tol) {
  if (index.kind != "diamond" || cloud.kind != "diamond")
    throw std::invalid_argument(
        "verify_diamond_conditions expects a diamond cloud and index");
  if (!(rel_tol > 0)) throw std::invalid_argument("rel_tol must be positive");

  const double eps = cloud.epsilon;
  const double p = cloud.q;
  const std::size_t b = static_cast<std::size_t>(index.branching);
  const double r1f = 0.5 * one_plus_pow(2.0 * eps, p);
  const double r2f = std::pow(2.0, 1.0 - 1.0 / p) * eps;
  static const char* kNames[2] = {"d1", "d2"};

  std::vector<const Copy*> copies;
  copies.reserve(index.total_copies());
  for (const auto& lv : index.levels)
    for (const auto& cp : lv) {
      if (cp.members.size() != b + 2)
        throw std::invalid_argument("copy " + cp.id() +
                                    " does not match the branching count");
      for (int m : cp.members)
        if (m < 0 || m >= static_cast<int>(cloud.n()))
          throw std::invalid_argument("copy " + cp.id() +
                                      " indexes outside the cloud");
      copies.push_back(&cp);
    }

  std::vector<Partial> parts(std::max(1u, worker_count()));
  for (auto& pt : parts) pt.worst.assign(2, 0.0);

  parallel_chunks(copies.size(), [&](std::size_t w, std::size_t lo,
                                     std::size_t hi) {
    Partial& part = parts[w];
    for (std::size_t ci = lo; ci < hi; ++ci) {
      const Copy& cp = *copies[ci];
      int s = cp.s(), t = cp.t();
      double dst = cloud.dist(s, t);
      auto check = [&](int cond, double actual, double expected) {
        double err = dst > 0 ? std::abs(actual - expected) / dst : kInf;
        ++part.checks;
        if (err > part.worst[cond]) part.worst[cond] = err;
        if (!(err <= rel_tol))
          part.hits.push_back({cp.id(), kNames[cond], err});
      };
      if (!(dst > 0)) {
        check(0, 0.0, 1.0);
        continue;
      }
      double r1 = r1f * dst, r2 = r2f * dst;
      for (std::size_t i = 1; i + 1 < cp.members.size(); ++i) {
        check(0, cloud.dist(s, cp.members[i]), r1);
        check(0, cloud.dist(cp.members[i], t), r1);
        for (std::size_t j = i + 1; j + 1 < cp.members.size(); ++j)
          check(1, cloud.dist(cp.members[i], cp.members[j]), r2);
      }
    }
  });

  VerifyReport rep;
  rep.rel_tol = rel_tol;
  rep.copies = copies.size();
  rep.conditions.assign(kNames, kNames + 2);
  rep.worst.assign(2, 0.0);
  for (const auto& part : parts) {
    rep.checks += part.checks;
    for (int i = 0; i < 2; ++i) rep.worst[i] = std::max(rep.worst[i], part.worst[i]);
    for (const auto& h : part.hits)
      if (rep.violations.size() < VerifyReport::kMaxViolations)
        rep.violations.push_back(h);
  }
  rep.pass = rep.worst_overall() <= rel_tol;
  return rep;
}

}  // namespace thinstruct
