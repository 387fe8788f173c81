#include "thinstruct/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "thinstruct/laakso.hpp"

namespace thinstruct {

EmbeddingMap identity_embedding(const PointCloud& c, double target_q) {
  if (!valid_exponent(target_q))
    throw std::invalid_argument("exponent must be in [1, inf]");
  EmbeddingMap f;
  f.domain = &c;
  f.image = c.data;
  f.target_dim = c.dim;
  f.target_q = target_q;
  f.target_weight = c.cell_weight;
  f.name = "identity";
  return f;
}

EmbeddingMap random_projection_embed(const PointCloud& c, std::size_t d,
                                     std::uint64_t seed) {
  if (d < 1 || d > c.dim)
    throw std::invalid_argument("target dimension must be in [1, dim]");
  std::size_t dim = c.dim;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  // columns of q: an orthonormal frame from Gram-Schmidt on Gaussian draws
  std::vector<double> q(dim * d);
  for (std::size_t col = 0; col < d; ++col) {
    double nrm = 0.0;
    for (int attempt = 0; attempt < 64 && nrm < 1e-8; ++attempt) {
      for (std::size_t i = 0; i < dim; ++i) q[i * d + col] = gauss(rng);
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t prev = 0; prev < col; ++prev) {
          double dot = 0.0;
          for (std::size_t i = 0; i < dim; ++i)
            dot += q[i * d + col] * q[i * d + prev];
          for (std::size_t i = 0; i < dim; ++i)
            q[i * d + col] -= dot * q[i * d + prev];
        }
      nrm = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        nrm += q[i * d + col] * q[i * d + col];
      nrm = std::sqrt(nrm);
    }
    if (nrm < 1e-8)
      throw std::runtime_error("projection frame degenerated");
    for (std::size_t i = 0; i < dim; ++i) q[i * d + col] /= nrm;
  }

  EmbeddingMap f;
  f.domain = &c;
  f.target_dim = d;
  f.target_q = 2.0;
  f.name = "randproj:" + std::to_string(d) + ":" + std::to_string(seed);
  f.image.assign(c.n() * d, 0.0);
  double scale = std::sqrt(static_cast<double>(dim) / static_cast<double>(d));
  for (std::size_t i = 0; i < c.n(); ++i) {
    const double* x = c.point(i);
    double* y = f.image.data() + i * d;
    for (std::size_t col = 0; col < d; ++col) {
      double acc = 0.0;
      for (std::size_t r = 0; r < dim; ++r) acc += q[r * d + col] * x[r];
      y[col] = scale * acc;
    }
  }
  return f;
}

namespace {

struct RatioPartial {
  double maxk = -kInf, mink = kInf;
  std::pair<int, int> maxp{-1, -1}, minp{-1, -1};
};

inline double sq_dist2(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

inline double pow4_sum(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = a[i] - b[i];
    d *= d;
    s += d * d;
  }
  return s;
}

}  // namespace

std::vector<EmbeddingReport> measure_distortion_multi(
    const PointCloud& domain, const std::vector<const EmbeddingMap*>& maps) {
  std::size_t n = domain.n();
  if (n < 2) throw std::invalid_argument("need at least 2 points");
  if (maps.empty()) throw std::invalid_argument("no maps given");
  for (const auto* f : maps) {
    if (f->domain != &domain)
      throw std::invalid_argument("map does not belong to this cloud");
    if (f->image.size() != n * f->target_dim)
      throw std::invalid_argument("image size mismatch");
  }

  // ratios are tracked through a monotone key to keep the hot loop free of
  // roots: key = ratio^4 when domain is l4 and the target l2 (both weight 1),
  // otherwise the ratio itself
  bool fast_domain = domain.q == 4.0 && domain.cell_weight == 1.0;
  std::vector<bool> fast(maps.size());
  for (std::size_t mi = 0; mi < maps.size(); ++mi)
    fast[mi] = fast_domain && maps[mi]->target_q == 2.0 &&
               maps[mi]->target_weight == 1.0;

  unsigned nw = std::max(1u, worker_count());
  std::vector<std::vector<RatioPartial>> parts(
      nw, std::vector<RatioPartial>(maps.size()));
  std::vector<std::uint64_t> pair_counts(nw, 0);

  parallel_chunks(n, [&](std::size_t w, std::size_t lo, std::size_t hi) {
    auto& part = parts[w];
    std::uint64_t cnt = 0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double* di = domain.point(i);
      for (std::size_t j = i + 1; j < n; ++j) {
        ++cnt;
        double dd4 = 0.0, dd = 0.0;
        if (fast_domain)
          dd4 = pow4_sum(di, domain.point(j), domain.dim);
        else
          dd = domain.dist(i, j);
        for (std::size_t mi = 0; mi < maps.size(); ++mi) {
          const EmbeddingMap& f = *maps[mi];
          double key;
          if (fast[mi]) {
            double s2 = sq_dist2(f.ipoint(i), f.ipoint(j), f.target_dim);
            key = dd4 > 0 ? s2 * s2 / dd4 : kInf;
          } else {
            double dn = fast_domain ? std::sqrt(std::sqrt(dd4)) : dd;
            double in = f.idist(i, j);
            key = dn > 0 ? in / dn : kInf;
          }
          RatioPartial& rp = part[mi];
          if (key > rp.maxk) {
            rp.maxk = key;
            rp.maxp = {static_cast<int>(i), static_cast<int>(j)};
          }
          if (key < rp.mink) {
            rp.mink = key;
            rp.minp = {static_cast<int>(i), static_cast<int>(j)};
          }
        }
      }
    }
    pair_counts[w] = cnt;
  });

  std::vector<EmbeddingReport> reports(maps.size());
  std::uint64_t pairs = 0;
  for (auto c : pair_counts) pairs += c;
  for (std::size_t mi = 0; mi < maps.size(); ++mi) {
    RatioPartial best;
    for (const auto& part : parts) {
      const RatioPartial& rp = part[mi];
      if (rp.maxk > best.maxk) {
        best.maxk = rp.maxk;
        best.maxp = rp.maxp;
      }
      if (rp.mink < best.mink) {
        best.mink = rp.mink;
        best.minp = rp.minp;
      }
    }
    EmbeddingReport& rep = reports[mi];
    rep.pairs = pairs;
    auto unkey = [&](double k) {
      if (!fast[mi]) return k;
      return k == kInf ? kInf : std::sqrt(std::sqrt(k));
    };
    rep.lip = unkey(best.maxk);
    rep.colip = unkey(best.mink);
    rep.lip_pair = best.maxp;
    rep.colip_pair = best.minp;
    rep.distortion = rep.colip > 0 ? rep.lip / rep.colip : kInf;
  }
  return reports;
}

EmbeddingReport measure_distortion(const EmbeddingMap& f) {
  return measure_distortion_multi(*f.domain, {&f})[0];
}

std::vector<double> measure_level_ratios(const EmbeddingMap& f,
                                         const SubstructureIndex& index,
                                         double colip) {
  if (!(colip > 0)) throw std::invalid_argument("colip must be positive");
  std::vector<double> dj(index.levels.size(), 0.0);
  for (int j = 1; j <= static_cast<int>(index.levels.size()); ++j) {
    double worst = 0.0;
    for (auto [x, y] : designated_pairs(index, j)) {
      double dd = f.domain->dist(x, y);
      double r = dd > 0 ? f.idist(x, y) / dd : kInf;
      worst = std::max(worst, r);
    }
    dj[j - 1] = worst / colip;
  }
  return dj;
}

double ModulusModel::eval(double t) const {
  if (t < 0) throw std::invalid_argument("modulus argument must be nonnegative");
  if (form == "power") return c * std::pow(t, power);
  if (form == "l2_exact") {
    double u = std::min(t, 2.0);
    return 1.0 - std::sqrt(std::max(0.0, 1.0 - u * u / 4.0));
  }
  if (form == "lp_extremal") {
    double u = std::min(t, 2.0);
    return 1.0 - std::pow(std::max(0.0, 1.0 - std::pow(u / 2.0, norm_p)),
                          1.0 / norm_p);
  }
  if (form == "amuc_lp") return std::pow(1.0 + std::pow(t, norm_p), 1.0 / norm_p) - 1.0;
  throw std::logic_error("unknown modulus form: " + form);
}

ModulusModel l2_uc_model() {
  ModulusModel m;
  m.family = ModulusFamily::kUC;
  m.form = "l2_exact";
  m.norm_p = 2.0;
  return m;
}

ModulusModel lp_uc_model(double p) {
  if (p < 2) throw std::invalid_argument("extremal-pair model needs p >= 2");
  ModulusModel m;
  m.family = ModulusFamily::kUC;
  m.form = "lp_extremal";
  m.norm_p = p;
  return m;
}

ModulusModel power_uc_model(double c, double p) {
  if (!(c > 0) || !(p >= 1)) throw std::invalid_argument("need c > 0, p >= 1");
  ModulusModel m;
  m.family = ModulusFamily::kUC;
  m.c = c;
  m.power = p;
  return m;
}

ModulusModel four_point_rb_model(double p) {
  if (!(p >= 1)) throw std::invalid_argument("need p >= 1");
  ModulusModel m;
  m.family = ModulusFamily::kRoundedBall;
  m.c = 1.0 / (std::pow(2.0, p) - 1.0);
  m.power = p;
  m.norm_p = p;
  return m;
}

ModulusModel power_rb_model(double c, double p) {
  ModulusModel m = power_uc_model(c, p);
  m.family = ModulusFamily::kRoundedBall;
  return m;
}

ModulusModel amuc_lp_model(double p) {
  if (!(p >= 1)) throw std::invalid_argument("need p >= 1");
  ModulusModel m;
  m.family = ModulusFamily::kAMUC;
  m.form = "amuc_lp";
  m.norm_p = p;
  return m;
}

namespace {

double vnorm(const std::vector<double>& v, double p) {
  return lp_norm(v.data(), v.size(), p);
}

void normalize(std::vector<double>& v, double p) {
  double n = vnorm(v, p);
  if (n <= 0) throw std::runtime_error("cannot normalize zero vector");
  for (double& x : v) x /= n;
}

double pair_sep(const std::vector<double>& x, const std::vector<double>& y,
                double p) {
  return lp_dist(x.data(), y.data(), x.size(), p);
}

// move y toward -x along the sphere until ||x - y|| >= t; the separation is
// 2 at the far end, so bisection always lands
void enforce_separation(const std::vector<double>& x, std::vector<double>& y,
                        double p, double t, std::mt19937_64& rng) {
  if (pair_sep(x, y, p) >= t) return;
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t dim = x.size();
  std::vector<double> cand(dim);
  auto at = [&](double alpha) {
    for (std::size_t i = 0; i < dim; ++i)
      cand[i] = (1.0 - alpha) * y[i] - alpha * x[i];
    double n = vnorm(cand, p);
    if (n < 1e-12) {  // y ~ x: bend through a random direction instead
      for (std::size_t i = 0; i < dim; ++i) cand[i] += 1e-3 * gauss(rng);
      n = vnorm(cand, p);
    }
    for (double& v : cand) v /= n;
    return pair_sep(x, cand, p);
  };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    if (at(mid) >= t)
      hi = mid;
    else
      lo = mid;
  }
  at(hi);
  y = cand;
}

double midpoint_objective(const std::vector<double>& x,
                          const std::vector<double>& y, double p) {
  std::vector<double> mid(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mid[i] = 0.5 * (x[i] + y[i]);
  return 1.0 - vnorm(mid, p);
}

ModulusModel fit_power(ModulusFamily family, const std::vector<double>& t,
                       const std::vector<double>& value) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] > 0 && value[i] > 0) {
      xs.push_back(t[i]);
      ys.push_back(value[i]);
    }
  ModulusModel m;
  m.family = family;
  m.provenance = "empirical";
  if (xs.size() >= 2) {
    auto [slope, intercept] = loglog_fit(xs, ys);
    m.power = slope;
    m.c = std::exp(intercept);
  }
  return m;
}

}  // namespace

ModulusEstimate uc_modulus_estimate(double p, std::size_t dim,
                                    std::vector<double> t_grid,
                                    std::size_t restarts, std::size_t iters,
                                    std::uint64_t seed) {
  if (!(p > 1) || p == kInf)
    throw std::invalid_argument("exponent must be finite and > 1");
  if (dim < 2) throw std::invalid_argument("dim must be >= 2");
  if (t_grid.empty()) throw std::invalid_argument("empty t grid");
  for (double t : t_grid)
    if (!(t > 0) || t > 2) throw std::invalid_argument("t must be in (0, 2]");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  ModulusEstimate est;
  est.t = t_grid;
  est.value.resize(t_grid.size());

  std::vector<double> x(dim), y(dim), xs(dim), ys(dim);
  for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
    double t = t_grid[ti];
    double best = 1.0;
    for (std::size_t r = 0; r <= restarts; ++r) {
      if (r == 0) {
        // axis-aligned warm start: the two-dimensional extremal pair
        std::fill(x.begin(), x.end(), 0.0);
        std::fill(y.begin(), y.end(), 0.0);
        double a = std::pow(std::max(0.0, 1.0 - std::pow(t / 2.0, p)), 1.0 / p);
        x[0] = a;
        x[1] = t / 2.0;
        y[0] = a;
        y[1] = -t / 2.0;
      } else {
        for (std::size_t i = 0; i < dim; ++i) {
          x[i] = gauss(rng);
          y[i] = gauss(rng);
        }
        normalize(x, p);
        normalize(y, p);
        enforce_separation(x, y, p, t, rng);
      }
      double val = midpoint_objective(x, y, p);
      double step = 0.25;
      for (std::size_t it = 0; it < iters; ++it) {
        xs = x;
        ys = y;
        for (std::size_t i = 0; i < dim; ++i) {
          xs[i] += step * gauss(rng);
          ys[i] += step * gauss(rng);
        }
        normalize(xs, p);
        normalize(ys, p);
        enforce_separation(xs, ys, p, t, rng);
        double cand = midpoint_objective(xs, ys, p);
        if (cand < val) {
          val = cand;
          x = xs;
          y = ys;
        }
        step *= 0.985;
      }
      if (pair_sep(x, y, p) < t * (1.0 - 1e-9))
        throw std::runtime_error("modulus optimizer left the feasible set");
      best = std::min(best, val);
    }
    est.value[ti] = best;
  }
  est.fitted = fit_power(ModulusFamily::kUC, est.t, est.value);
  return est;
}

ModulusEstimate amuc_modulus_estimate(double p, std::size_t dim,
                                      std::size_t tail_start,
                                      std::vector<double> t_grid,
                                      std::size_t samples,
                                      std::uint64_t seed) {
  if (!(p >= 1) || p == kInf)
    throw std::invalid_argument("exponent must be finite and >= 1");
  if (tail_start < 2 || tail_start >= dim)
    throw std::invalid_argument("tail_start must be in [2, dim)");
  if (dim - tail_start + 1 < 2)
    throw std::invalid_argument("tail needs at least 2 coordinates");
  if (t_grid.empty()) throw std::invalid_argument("empty t grid");
  for (double t : t_grid)
    if (!(t > 0) || t >= 1) throw std::invalid_argument("t must be in (0, 1)");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::size_t head = tail_start - 1;  // x lives on coordinates [0, head)

  // tail candidates: every tail axis plus random unit tail vectors
  std::vector<std::vector<double>> tails;
  for (std::size_t a = head; a < dim; ++a) {
    std::vector<double> z(dim, 0.0);
    z[a] = 1.0;
    tails.push_back(std::move(z));
  }
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<double> z(dim, 0.0);
    for (std::size_t i = head; i < dim; ++i) z[i] = gauss(rng);
    normalize(z, p);
    tails.push_back(std::move(z));
  }

  ModulusEstimate est;
  est.t = t_grid;
  est.value.assign(t_grid.size(), kInf);

  std::vector<double> x(dim), plus(dim), minus(dim);
  for (std::size_t s = 0; s < samples; ++s) {
    std::fill(x.begin(), x.end(), 0.0);
    if (s == 0) {
      x[0] = 1.0;  // deterministic axis representative
    } else {
      for (std::size_t i = 0; i < head; ++i) x[i] = gauss(rng);
      normalize(x, p);
    }
    for (std::size_t ti = 0; ti < t_grid.size(); ++ti) {
      double t = t_grid[ti];
      double inf_z = kInf;
      for (const auto& z : tails) {
        for (std::size_t i = 0; i < dim; ++i) {
          plus[i] = x[i] + t * z[i];
          minus[i] = x[i] - t * z[i];
        }
        double v = std::max(vnorm(plus, p), vnorm(minus, p)) - 1.0;
        inf_z = std::min(inf_z, v);
      }
      est.value[ti] = std::min(est.value[ti], inf_z);
    }
  }
  est.fitted = fit_power(ModulusFamily::kAMUC, est.t, est.value);
  return est;
}

namespace {

ContractionAudit run_copy_audit(const EmbeddingMap& f,
                                const SubstructureIndex& index,
                                double factor, double lhs_scale) {
  const PointCloud& dom = *f.domain;
  ContractionAudit audit;
  for (const auto& level : index.levels)
    for (const auto& cp : level) {
      double dst = dom.dist(cp.s(), cp.t());
      double lhs = f.idist(cp.s(), cp.t()) * lhs_scale;
      double rhs = factor * dst;
      double margin = rhs - lhs;
      bool pass = lhs <= rhs * (1.0 + 1e-12);
      ++audit.copies;
      if (!pass) ++audit.failures;
      if (margin < audit.worst_margin) {
        audit.worst_margin = margin;
        audit.worst_copy = cp.id();
      }
      audit.rows.push_back({cp.id(), cp.level, lhs, rhs, margin, pass});
    }
  return audit;
}

}  // namespace

ContractionAudit contraction_check_uc(const EmbeddingMap& f,
                                      const SubstructureIndex& index,
                                      const ModulusModel& delta, double D,
                                      double colip) {
  if (delta.family != ModulusFamily::kUC)
    throw std::invalid_argument("model family must be the convexity modulus");
  if (!(D >= 1) || !(colip > 0))
    throw std::invalid_argument("need D >= 1 and colip > 0");
  const PointCloud& dom = *f.domain;
  double fq = one_plus_pow(dom.epsilon, dom.q);
  double arg = 2.0 * dom.epsilon / (D * fq);
  double shrink = 1.0 - delta.eval(arg);
  ContractionAudit audit = run_copy_audit(f, index, D * fq * shrink, 1.0 / colip);
  audit.family = "uc";
  audit.D = D;
  audit.eps = dom.epsilon;
  audit.modulus_arg = arg;
  return audit;
}

ContractionAudit contraction_check_rb(const EmbeddingMap& f,
                                      const SubstructureIndex& index,
                                      const ModulusModel& eta, double A,
                                      double B) {
  if (eta.family != ModulusFamily::kRoundedBall)
    throw std::invalid_argument("model family must be the rounded-ball modulus");
  if (!(A > 0) || !(B > 0)) throw std::invalid_argument("need A, B > 0");
  const PointCloud& dom = *f.domain;
  double fq = one_plus_pow(dom.epsilon, dom.q);
  double arg = dom.epsilon / (2.0 * A * B);
  double shrink = 1.0 - 0.5 * eta.eval(arg);
  ContractionAudit audit = run_copy_audit(f, index, B * fq * shrink, 1.0);
  audit.family = "rb";
  audit.A = A;
  audit.B = B;
  audit.D = A * B;
  audit.eps = dom.epsilon;
  audit.modulus_arg = arg;
  return audit;
}

ContractionAudit contraction_check_amuc(const EmbeddingMap& f,
                                        const SubstructureIndex& index,
                                        const ModulusModel& amuc, double D,
                                        double colip) {
  if (amuc.family != ModulusFamily::kAMUC)
    throw std::invalid_argument("model family must be the asymptotic modulus");
  if (!(D >= 1) || !(colip > 0))
    throw std::invalid_argument("need D >= 1 and colip > 0");
  const PointCloud& dom = *f.domain;
  double fp = one_plus_pow(2.0 * dom.epsilon, dom.q);
  double arg = dom.epsilon / (16.0 * D);
  double shrink = 1.0 - amuc.eval(arg) / 5.0;
  ContractionAudit audit =
      run_copy_audit(f, index, D * fp * shrink, 1.0 / colip);
  audit.family = "amuc";
  audit.D = D;
  audit.eps = dom.epsilon;
  audit.modulus_arg = arg;
  return audit;
}

EscapeReport midpoint_escape_check(const EmbeddingMap& f,
                                   const SubstructureIndex& index,
                                   double tau) {
  if (tau < 0) throw std::invalid_argument("tau must be nonnegative");
  EscapeReport rep;
  rep.tau = tau;
  for (const auto& level : index.levels)
    for (const auto& cp : level) {
      double thresh = 0.5 * (1.0 + tau) * f.idist(cp.s(), cp.t());
      int branch = -1;
      for (std::size_t i = 1; i + 1 < cp.members.size(); ++i) {
        double reach = std::max(f.idist(cp.s(), cp.members[i]),
                                f.idist(cp.members[i], cp.t()));
        if (reach > thresh) {
          branch = static_cast<int>(i);
          break;
        }
      }
      ++rep.copies;
      if (branch >= 0) ++rep.escaped;
      rep.rows.push_back({cp.id(), cp.level, branch});
    }
  return rep;
}

double escape_tau(const ModulusModel& amuc, double eps, double D) {
  if (amuc.family != ModulusFamily::kAMUC)
    throw std::invalid_argument("model family must be the asymptotic modulus");
  if (!(eps > 0) || !(D >= 1)) throw std::invalid_argument("need eps > 0, D >= 1");
  return amuc.eval(eps / (16.0 * D)) / 4.0;
}

namespace {

BoundResult eval_bound(const std::string& family, int k, double p, double q,
                       double c, double gamma, double gamma_max,
                       double c_eff) {
  if (!(gamma >= 0)) throw std::invalid_argument("gamma must be nonnegative");
  if (gamma == 0.0) gamma = 0.5 * gamma_max;
  if (!(gamma > 0) || gamma >= gamma_max)
    throw std::invalid_argument("gamma must lie strictly inside (0, " +
                                format17(gamma_max) + ")");
  BoundResult b;
  b.family = family;
  b.k = k;
  b.p = p;
  b.q = q;
  b.c = c;
  b.gamma_max = gamma_max;
  b.gamma = gamma;
  double expo = (q - p) / (p * q);
  b.D_min = std::pow(c_eff * std::pow(gamma, p) * (k - 1), expo);
  b.eps_star = gamma * std::pow(b.D_min, -p / (q - p));
  return b;
}

}  // namespace

BoundResult lower_bound_uc(int k, double p, double q, double c, double gamma) {
  if (!(p >= 2) || !(q > p) || q == kInf)
    throw std::invalid_argument("need 2 <= p < q < inf");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (!(c > 0)) throw std::invalid_argument("c must be positive");
  double gamma_max = std::pow(c / std::pow(2.0, q + 1.0), 1.0 / (q - p));
  return eval_bound("uc", k, p, q, c, gamma, gamma_max, 0.5 * c);
}

BoundResult lower_bound_rb(int k, double p, double q, double c, double gamma) {
  if (!(p > 1) || !(q > p) || q == kInf)
    throw std::invalid_argument("need 1 < p < q < inf");
  if (k < 2) throw std::invalid_argument("k must be >= 2");
  if (!(c > 0)) throw std::invalid_argument("c must be positive");
  double gamma_max = std::pow(c / std::pow(2.0, p + q + 2.0), 1.0 / (q - p));
  return eval_bound("rb", k, p, q, c, gamma, gamma_max,
                    c / std::pow(2.0, p + 2.0));
}

std::pair<double, double> loglog_fit(const std::vector<double>& x,
                                     const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("need at least two (x, y) samples");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0))
      throw std::invalid_argument("log fit needs positive samples");
    double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-15)
    throw std::invalid_argument("degenerate regressor");
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  return {slope, intercept};
}

}  // namespace thinstruct
