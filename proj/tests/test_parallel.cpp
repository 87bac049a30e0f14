// The parallel kernels must return bit-identical results to their serial
// twins for any thread count: sums are chunked in fixed batches combined in
// index order, maps write disjoint slots.  Exercised around the chunk
// boundaries with terms whose accumulation order would visibly matter if the
// kernels reassociated freely.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <initializer_list>
#include <vector>

#include "granda/parallel.hpp"

static int failures = 0;

#define CHECK(cond)                                               \
  do {                                                            \
    if (!(cond)) {                                                \
      std::printf("FAIL %s:%d  %s\n", __FILE__, __LINE__, #cond); \
      ++failures;                                                 \
    }                                                             \
  } while (0)

static bool same_bits(double a, double b) {
  return std::memcmp(&a, &b, sizeof(double)) == 0;
}

int main() {
  const bool was_on = granda::parallel_enabled();

  // Terms of wildly mixed magnitude and sign: any change in association
  // order shows up in the low bits.
  auto term = [](std::int64_t i) {
    const double x = static_cast<double>(i + 1);
    const double mag = std::exp(std::sin(0.37 * x) * 20.0);
    return (i % 3 == 0 ? -1.0 : 1.0) * mag / (x * x);
  };

  const std::int64_t c = granda::kSumChunk;
  for (std::int64_t n : {std::int64_t{0}, std::int64_t{1}, std::int64_t{7},
                         c - 1, c, c + 1, 2 * c, 2 * c + 1, 3 * c + 1237,
                         5 * c + 17}) {
    const double serial = granda::chunked_sum_serial(0, n, term);
    granda::set_parallel(true);
    const double par = granda::chunked_sum(0, n, term);
    granda::set_parallel(false);
    const double off = granda::chunked_sum(0, n, term);
    if (!same_bits(serial, par) || !same_bits(serial, off)) {
      std::printf("FAIL chunked_sum n=%lld: serial %.17g parallel %.17g off %.17g\n",
                  static_cast<long long>(n), serial, par, off);
      ++failures;
    }
  }

  // Nonzero begin offsets hit the same chunk grid.
  for (std::int64_t b : {std::int64_t{1}, c / 2, c + 3}) {
    const double serial = granda::chunked_sum_serial(b, b + 3 * c + 11, term);
    granda::set_parallel(true);
    const double par = granda::chunked_sum(b, b + 3 * c + 11, term);
    CHECK(same_bits(serial, par));
  }

  // map_indexed: same values in the same slots.
  {
    auto fn = [&](std::size_t i) {
      return term(static_cast<std::int64_t>(i)) * 1.000000001;
    };
    std::vector<double> a, b;
    granda::map_indexed_serial(10007, a, fn);
    granda::set_parallel(true);
    granda::map_indexed(10007, b, fn);
    CHECK(a.size() == b.size());
    bool equal = a.size() == b.size();
    for (std::size_t i = 0; equal && i < a.size(); ++i)
      equal = same_bits(a[i], b[i]);
    CHECK(equal);
  }

  // for_indexed: disjoint slot writes land identically.
  {
    std::vector<double> a(5001, 0.0), b(5001, 0.0);
    granda::for_indexed_serial(a.size(), [&](std::size_t i) {
      a[i] = std::cos(static_cast<double>(i) * 0.001) * term(17 + 31 * i);
    });
    granda::set_parallel(true);
    granda::for_indexed(b.size(), [&](std::size_t i) {
      b[i] = std::cos(static_cast<double>(i) * 0.001) * term(17 + 31 * i);
    });
    bool equal = true;
    for (std::size_t i = 0; i < a.size(); ++i) equal = equal && same_bits(a[i], b[i]);
    CHECK(equal);
  }

  // The switch reports what was set.
  granda::set_parallel(false);
  CHECK(!granda::parallel_enabled());
  granda::set_parallel(true);
  CHECK(granda::parallel_enabled());
  granda::set_parallel(was_on);

  if (failures == 0) std::printf("test_parallel: all checks passed\n");
  return failures == 0 ? 0 : 1;
}
