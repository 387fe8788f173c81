#include "thinstruct/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace thinstruct {

void FiniteMetric::validate(double rel_slack, bool triangle) const {
  if (n == 0) throw std::invalid_argument("empty metric");
  if (d.size() != n * n || labels.size() != n)
    throw std::invalid_argument("metric matrix shape mismatch");
  double scale = 0.0;
  for (double v : d) scale = std::max(scale, v);
  double slack = rel_slack * std::max(scale, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(at(i, i)) > slack)
      throw std::invalid_argument("nonzero diagonal at " + labels[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      if (at(i, j) < 0 || at(j, i) < 0)
        throw std::invalid_argument("negative distance");
      if (std::abs(at(i, j) - at(j, i)) > slack)
        throw std::invalid_argument("asymmetric distance at (" + labels[i] +
                                    ", " + labels[j] + ")");
    }
  }
  if (!triangle) return;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double dij = at(i, j);
      const double* ri = row(i);
      const double* rj = row(j);
      for (std::size_t l = 0; l < n; ++l)
        if (dij > ri[l] + rj[l] + slack)
          throw std::invalid_argument("triangle inequality fails at (" +
                                      labels[i] + ", " + labels[j] + ", " +
                                      labels[l] + ")");
    }
}

FiniteMetric FiniteMetric::from_cloud(const PointCloud& c) {
  FiniteMetric m;
  m.n = c.n();
  if (m.n == 0) throw std::invalid_argument("empty cloud");
  m.labels = c.labels;
  m.d.assign(m.n * m.n, 0.0);
  parallel_chunks(m.n, [&](std::size_t, std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i)
      for (std::size_t j = i + 1; j < m.n; ++j) {
        double v = c.dist(i, j);
        m.d[i * m.n + j] = v;
        m.d[j * m.n + i] = v;
      }
  });
  return m;
}

FiniteMetric FiniteMetric::from_int_matrix(
    const std::vector<std::string>& labels, const std::vector<int>& dist) {
  FiniteMetric m;
  m.n = labels.size();
  if (dist.size() != m.n * m.n)
    throw std::invalid_argument("matrix size does not match label count");
  m.labels = labels;
  m.d.assign(dist.begin(), dist.end());
  return m;
}

namespace {

struct BallScanBest {
  std::uint64_t upper = 1, lower = 1;
  int upper_center = -1, lower_center = -1;
  double upper_radius = 0.0, lower_radius = 0.0;
  std::uint64_t balls = 0;
};

void scan_center(const FiniteMetric& m, std::size_t x, std::size_t max_radii,
                 std::vector<int>& order, std::vector<double>& mind,
                 std::vector<double>& radii, BallScanBest& best) {
  const std::size_t n = m.n;
  const double* xrow = m.row(x);
  order.resize(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return xrow[a] < xrow[b]; });

  radii.clear();
  for (std::size_t i = 0; i < n; ++i) {
    double v = xrow[order[i]];
    if (v > 0 && (radii.empty() || v > radii.back())) radii.push_back(v);
  }
  if (radii.empty()) return;
  if (max_radii > 0 && radii.size() > max_radii) {
    std::vector<double> picked;
    picked.reserve(max_radii);
    for (std::size_t i = 0; i < max_radii; ++i) {
      std::size_t idx = (i * (radii.size() - 1)) / (max_radii - 1);
      if (picked.empty() || radii[idx] > picked.back())
        picked.push_back(radii[idx]);
    }
    radii.swap(picked);
  }

  for (std::size_t ri = radii.size(); ri-- > 0;) {
    double r = radii[ri];
    // members of B(x, r) form a prefix of the sorted order
    std::size_t mc =
        std::upper_bound(order.begin(), order.end(), r,
                         [&](double rv, int a) { return rv < xrow[a]; }) -
        order.begin();
    if (mc <= best.upper && mc <= best.lower) break;  // smaller r only shrinks
    ++best.balls;

    mind.resize(mc);
    for (std::size_t i = 0; i < mc; ++i) mind[i] = xrow[order[i]];
    std::uint64_t picks = 1;  // center seeds the cover
    std::size_t fm = mc - 1;
    double maxv = mind[fm];
    while (maxv > 0.5 * r) {
      ++picks;
      const double* prow = m.row(static_cast<std::size_t>(order[fm]));
      maxv = 0.0;
      fm = 0;
      for (std::size_t i = 0; i < mc; ++i) {
        double v = prow[order[i]];
        if (v < mind[i]) mind[i] = v;
        if (mind[i] > maxv) {
          maxv = mind[i];
          fm = i;
        }
      }
    }

    // r-separated subset, seeded at the boundary: the center is within r of
    // everything here and would freeze the growth at one point
    std::uint64_t sep = 1;
    {
      const double* srow = m.row(static_cast<std::size_t>(order[mc - 1]));
      std::size_t fs = 0;
      double maxs = 0.0;
      for (std::size_t i = 0; i < mc; ++i) {
        mind[i] = srow[order[i]];
        if (mind[i] > maxs) {
          maxs = mind[i];
          fs = i;
        }
      }
      while (maxs > r) {
        ++sep;
        const double* prow = m.row(static_cast<std::size_t>(order[fs]));
        maxs = 0.0;
        fs = 0;
        for (std::size_t i = 0; i < mc; ++i) {
          double v = prow[order[i]];
          if (v < mind[i]) mind[i] = v;
          if (mind[i] > maxs) {
            maxs = mind[i];
            fs = i;
          }
        }
      }
    }
    if (picks > best.upper) {
      best.upper = picks;
      best.upper_center = static_cast<int>(x);
      best.upper_radius = r;
    }
    if (sep > best.lower) {
      best.lower = sep;
      best.lower_center = static_cast<int>(x);
      best.lower_radius = r;
    }
  }
}

}  // namespace

DoublingEstimate doubling_constant(const FiniteMetric& m,
                                   std::size_t max_radii_per_center) {
  if (m.n == 0) throw std::invalid_argument("empty metric");
  std::vector<BallScanBest> parts(std::max(1u, worker_count()));
  parallel_chunks(m.n, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    BallScanBest& best = parts[w];
    std::vector<int> order;
    std::vector<double> mind, radii;
    for (std::size_t x = lo; x < hi; ++x)
      scan_center(m, x, max_radii_per_center, order, mind, radii, best);
  });
  DoublingEstimate est;
  for (const auto& b : parts) {
    est.balls_scanned += b.balls;
    if (b.upper > est.upper) {
      est.upper = b.upper;
      est.upper_center = b.upper_center;
      est.upper_radius = b.upper_radius;
    }
    if (b.lower > est.lower) {
      est.lower = b.lower;
      est.lower_center = b.lower_center;
      est.lower_radius = b.lower_radius;
    }
  }
  if (est.upper_center < 0) {
    est.upper_center = est.lower_center = 0;
    est.upper_radius = est.lower_radius = 0.0;
  }
  return est;
}

MidSet mid_set(const FiniteMetric& m, int x, int y, double eta) {
  if (x == y) throw std::invalid_argument("mid_set needs two distinct points");
  if (eta < 0) throw std::invalid_argument("eta must be nonnegative");
  if (x < 0 || y < 0 || x >= static_cast<int>(m.n) || y >= static_cast<int>(m.n))
    throw std::invalid_argument("point index out of range");
  MidSet out;
  double thresh = 0.5 * (1.0 + eta) * m.at(x, y);
  const double* rx = m.row(x);
  const double* ry = m.row(y);
  for (std::size_t z = 0; z < m.n; ++z)
    if (std::max(rx[z], ry[z]) <= thresh)
      out.members.push_back(static_cast<int>(z));
  for (std::size_t i = 0; i < out.members.size(); ++i)
    for (std::size_t j = i + 1; j < out.members.size(); ++j)
      out.diameter = std::max(out.diameter, m.at(out.members[i], out.members[j]));
  return out;
}

RoundedBallScan rounded_ball_scan(const FiniteMetric& m, double t,
                                  std::vector<double> eta_grid) {
  if (!(t > 0) || t > 1)
    throw std::invalid_argument("t must be in (0, 1]");
  if (eta_grid.empty()) throw std::invalid_argument("empty eta grid");
  for (double e : eta_grid)
    if (e < 0) throw std::invalid_argument("eta must be nonnegative");
  std::sort(eta_grid.begin(), eta_grid.end());

  RoundedBallScan out;
  out.t = t;
  out.eta_grid = eta_grid;
  out.worst_ratio.assign(eta_grid.size(), 0.0);

  std::vector<int> bymx(m.n);
  std::vector<double> mx(m.n);
  std::vector<int> members;
  for (std::size_t x = 0; x < m.n; ++x)
    for (std::size_t y = x + 1; y < m.n; ++y) {
      double dxy = m.at(x, y);
      if (!(dxy > 0)) continue;
      const double* rx = m.row(x);
      const double* ry = m.row(y);
      for (std::size_t z = 0; z < m.n; ++z) mx[z] = std::max(rx[z], ry[z]);
      std::iota(bymx.begin(), bymx.end(), 0);
      std::sort(bymx.begin(), bymx.end(),
                [&](int a, int b) { return mx[a] < mx[b]; });
      // walk the grid once per pair, growing the midpoint set incrementally
      members.clear();
      double diam = 0.0;
      std::size_t ptr = 0;
      for (std::size_t gi = 0; gi < eta_grid.size(); ++gi) {
        double thresh = 0.5 * (1.0 + eta_grid[gi]) * dxy;
        while (ptr < m.n && mx[bymx[ptr]] <= thresh) {
          int z = bymx[ptr++];
          const double* rz = m.row(z);
          for (int w : members) diam = std::max(diam, rz[w]);
          members.push_back(z);
        }
        double ratio = members.size() > 1 ? diam / dxy : 0.0;
        if (ratio > out.worst_ratio[gi]) out.worst_ratio[gi] = ratio;
      }
    }

  for (std::size_t gi = 0; gi < eta_grid.size(); ++gi)
    if (out.worst_ratio[gi] < t) out.eta_star = eta_grid[gi];
  return out;
}

namespace {

double quad_ratio(const FiniteMetric& m, int a, int b, int c, int d, double p,
                  double C) {
  double num = std::pow(m.at(a, c), p) + std::pow(m.at(b, d), p);
  double den = 0.25 * C *
               (std::pow(m.at(a, b), p) + std::pow(m.at(b, c), p) +
                std::pow(m.at(c, d), p) + std::pow(m.at(d, a), p));
  if (den <= 0) return 0.0;  // fully degenerate quadruple: vacuously satisfied
  return num / den;
}

}  // namespace

FourPointResult four_point_check(const FiniteMetric& m, double p, double C,
                                 std::uint64_t samples, std::uint64_t seed) {
  if (!(p > 0)) throw std::invalid_argument("p must be positive");
  if (!(C > 0)) throw std::invalid_argument("C must be positive");
  if (m.n < 4) throw std::invalid_argument("need at least 4 points");

  FourPointResult out;
  out.p = p;
  out.C = C;
  out.lemma_range = C <= std::pow(2.0, p) * (1.0 + 1e-12);

  auto consider = [&](int a, int b, int c, int d) {
    double r = quad_ratio(m, a, b, c, d, p, C);
    ++out.quadruples;
    if (r > out.max_ratio) {
      out.max_ratio = r;
      out.witness = {a, b, c, d};
    }
  };

  if (samples == 0) {
    int n = static_cast<int>(m.n);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int d = c + 1; d < n; ++d) {
            consider(a, b, c, d);  // diagonals {ac, bd}
            consider(a, c, b, d);  // diagonals {ab, cd}
            consider(a, b, d, c);  // diagonals {ad, bc}
          }
  } else {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, static_cast<int>(m.n) - 1);
    for (std::uint64_t s = 0; s < samples; ++s) {
      int q[4];
      for (int i = 0; i < 4; ++i) {
        bool fresh;
        do {
          q[i] = pick(rng);
          fresh = true;
          for (int j = 0; j < i; ++j) fresh = fresh && q[j] != q[i];
        } while (!fresh);
      }
      consider(q[0], q[1], q[2], q[3]);
    }
  }
  // hair of slack so exact-equality cases survive float rounding
  out.violated = out.max_ratio > 1.0 + 1e-12;
  return out;
}

PointCloud gaussian_cloud(std::size_t n, std::size_t dim, double q,
                          std::uint64_t seed) {
  if (n == 0 || dim == 0) throw std::invalid_argument("empty cloud shape");
  if (!valid_exponent(q)) throw std::invalid_argument("exponent must be in [1, inf]");
  PointCloud c;
  c.dim = dim;
  c.q = q;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = c.add("g" + std::to_string(i));
    double* pt = c.point(idx);
    for (std::size_t j = 0; j < dim; ++j) pt[j] = gauss(rng);
  }
  return c;
}

}  // namespace thinstruct
