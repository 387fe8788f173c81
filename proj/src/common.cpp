#include "thinstruct/common.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

namespace thinstruct {

bool valid_exponent(double q) {
  return (q >= 1.0 && q < kInf) || q == kInf;
}

double lp_pow_sum(const double* v, std::size_t n, double q) {
  if (q == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(v[i]));
    return m;
  }
  double s = 0.0;
  if (q == 2.0) {
    for (std::size_t i = 0; i < n; ++i) s += v[i] * v[i];
  } else if (q == 1.0) {
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(v[i]);
  } else if (q == 4.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double d2 = v[i] * v[i];
      s += d2 * d2;
    }
  } else if (q == 3.0) {
    for (std::size_t i = 0; i < n; ++i) s += v[i] * v[i] * std::fabs(v[i]);
  } else {
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(v[i]), q);
  }
  return s;
}

double lp_root(double s, double q) {
  if (q == kInf) return s;
  if (q == 1.0) return s;
  if (q == 2.0) return std::sqrt(s);
  if (q == 4.0) return std::sqrt(std::sqrt(s));
  return std::pow(s, 1.0 / q);
}

double lp_dist(const double* a, const double* b, std::size_t n, double q,
               double weight) {
  if (q == kInf) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
  }
  double s = 0.0;
  if (q == 2.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = a[i] - b[i];
      s += d * d;
    }
  } else if (q == 1.0) {
    for (std::size_t i = 0; i < n; ++i) s += std::fabs(a[i] - b[i]);
  } else if (q == 4.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = a[i] - b[i];
      double d2 = d * d;
      s += d2 * d2;
    }
  } else if (q == 3.0) {
    for (std::size_t i = 0; i < n; ++i) {
      double d = std::fabs(a[i] - b[i]);
      s += d * d * d;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) s += std::pow(std::fabs(a[i] - b[i]), q);
  }
  return lp_root(weight * s, q);
}

double lp_norm(const double* v, std::size_t n, double q, double weight) {
  if (q == kInf) return lp_pow_sum(v, n, q);
  return lp_root(weight * lp_pow_sum(v, n, q), q);
}

double one_plus_pow(double x, double q) {
  if (x < 0) throw std::invalid_argument("one_plus_pow: negative argument");
  if (q == kInf) return std::max(1.0, x);
  return std::pow(1.0 + std::pow(x, q), 1.0 / q);
}

std::string format17(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_exponent(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return kInf;
  std::size_t pos = 0;
  double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad exponent: " + s);
  if (!valid_exponent(v)) throw std::invalid_argument("exponent must be in [1, inf]: " + s);
  return v;
}

std::string exponent_str(double q) {
  if (q == kInf) return "inf";
  return format17(q);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(s.substr(start));
      break;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (auto& tok : split(s, ',')) {
    if (tok.empty()) continue;
    if (tok == "inf" || tok == "Inf" || tok == "INF")
      out.push_back(kInf);
    else
      out.push_back(std::stod(tok));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (auto& tok : split(s, ','))
    if (!tok.empty()) out.push_back(std::stoi(tok));
  return out;
}

unsigned worker_count() {
  if (const char* env = std::getenv("THINSTRUCT_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn) {
  unsigned workers = worker_count();
  if (workers <= 1 || n < 2 * workers) {
    fn(0, 0, n);
    return;
  }
  std::vector<std::thread> pool;
  std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, w, lo, hi] { fn(w, lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace thinstruct
