#pragma once

#include <cstdint>
#include <cstdlib>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace granda {

// Every parallel kernel here has a serial twin with identical semantics and
// identical floating-point results: parallel loops write to disjoint slots and
// sums are accumulated per fixed-size chunk, with chunk results combined in
// index order. Results therefore do not depend on the thread count, which the
// verification reports rely on for byte-identical output.

inline bool& parallel_flag() {
  static bool on = [] {
#ifdef _OPENMP
    const char* env = std::getenv("GRANDA_SERIAL");
    return !(env && env[0] == '1');
#else
    return false;
#endif
  }();
  return on;
}

inline bool parallel_enabled() { return parallel_flag(); }
inline void set_parallel(bool on) { parallel_flag() = on; }

inline constexpr std::int64_t kSumChunk = 16384;

// fn(i) -> double, written into out[i]; out is resized to n.
template <class F>
void map_indexed_serial(std::size_t n, std::vector<double>& out, F&& fn) {
  out.resize(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
}

template <class F>
void map_indexed(std::size_t n, std::vector<double>& out, F&& fn) {
  out.resize(n);
#ifdef _OPENMP
  if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
}

// fn(i) performs its own slot writes; used for per-case suite evaluation.
template <class F>
void for_indexed_serial(std::size_t n, F&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

template <class F>
void for_indexed(std::size_t n, F&& fn) {
#ifdef _OPENMP
  if (parallel_enabled() && n > 1) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i)
      fn(static_cast<std::size_t>(i));
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Sum of term(i) over [begin, end). Each chunk of kSumChunk consecutive terms
// is accumulated left to right; chunk subtotals are then added in chunk order.
template <class F>
double chunked_sum_serial(std::int64_t begin, std::int64_t end, F&& term) {
  double total = 0.0;
  for (std::int64_t c = begin; c < end; c += kSumChunk) {
    const std::int64_t hi = std::min(end, c + kSumChunk);
    double part = 0.0;
    for (std::int64_t i = c; i < hi; ++i) part += term(i);
    total += part;
  }
  return total;
}

template <class F>
double chunked_sum(std::int64_t begin, std::int64_t end, F&& term) {
#ifdef _OPENMP
  if (parallel_enabled() && end - begin > 2 * kSumChunk) {
    const std::int64_t nchunks = (end - begin + kSumChunk - 1) / kSumChunk;
    std::vector<double> parts(static_cast<std::size_t>(nchunks), 0.0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < nchunks; ++c) {
      const std::int64_t lo = begin + c * kSumChunk;
      const std::int64_t hi = std::min(end, lo + kSumChunk);
      double part = 0.0;
      for (std::int64_t i = lo; i < hi; ++i) part += term(i);
      parts[static_cast<std::size_t>(c)] = part;
    }
    double total = 0.0;
    for (double p : parts) total += p;
    return total;
  }
#endif
  return chunked_sum_serial(begin, end, term);
}

}  // namespace granda
