#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace thinstruct {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// All norm exponents run through these helpers so the q = inf convention
// (max coordinate, and (1+x^q)^{1/q} -> max(1,x)) lives in one place.
bool valid_exponent(double q);                      // q in [1, inf]

// sum_i |v_i|^q (q < inf), or max_i |v_i| (q = inf)
double lp_pow_sum(const double* v, std::size_t n, double q);

// (weight * sum |a_i - b_i|^q)^{1/q}; weight is a uniform cell measure and is
// ignored for q = inf.
double lp_dist(const double* a, const double* b, std::size_t n, double q,
               double weight = 1.0);
double lp_norm(const double* v, std::size_t n, double q, double weight = 1.0);

// x >= 0 -> (1 + x^q)^{1/q}, with the q = inf limit max(1, x).
double one_plus_pow(double x, double q);

// root of a nonnegative pow-sum: s^{1/q} (q = inf returns s unchanged)
double lp_root(double s, double q);

std::string format17(double v);                     // %.17g, inf -> "inf"
double parse_exponent(const std::string& s);        // "inf" -> kInf, else numeric
std::string exponent_str(double q);                 // inverse of parse_exponent

std::vector<std::string> split(const std::string& s, char sep);
std::vector<double> parse_double_list(const std::string& s);  // "a,b,c"
std::vector<int> parse_int_list(const std::string& s);

// thread count for the few parallel loops; THINSTRUCT_THREADS overrides
unsigned worker_count();

// run fn(chunk_begin, chunk_end) over [0, n) on worker_count() threads;
// callers merge per-chunk partials in chunk order to stay deterministic
void parallel_chunks(std::size_t n,
                     const std::function<void(std::size_t, std::size_t,
                                              std::size_t)>& fn);

}  // namespace thinstruct
