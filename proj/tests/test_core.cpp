#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "rumorsim/kernels/kernels.hpp"
#include "rumorsim/rng.hpp"

using namespace rumorsim;

TEST_CASE("splitmix64 reference values") {
  std::uint64_t state = 0;
  CHECK(splitmix64(state) == 0xE220A8397B1DCDAFull);
  CHECK(splitmix64(state) == 0x6E789E6AA1B965F4ull);
}

TEST_CASE("fnv1a64 reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("streams are deterministic and label-separated") {
  Rng a = stream(42, "graph");
  Rng b = stream(42, "graph");
  Rng c = stream(42, "activation");
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs = differs || x != c.next();
  }
  CHECK(differs);
}

TEST_CASE("bounded draws stay in range and look uniform") {
  Rng r(7);
  std::vector<int> hist(6, 0);
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) {
    const auto v = r.uniform_below(6);
    REQUIRE(v < 6);
    ++hist[v];
  }
  // 3 sigma of a binomial(60000, 1/6)
  const double sigma = std::sqrt(draws * (1.0 / 6) * (5.0 / 6));
  for (int h : hist) CHECK(std::abs(h - draws / 6.0) < 3 * sigma);
  for (int i = 0; i < 1000; ++i) {
    const double u = r.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const auto k = r.uniform_int(-3, 3);
    CHECK(k >= -3);
    CHECK(k <= 3);
  }
}

namespace {

std::uint64_t naive_and_popcount(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (int bit = 0; bit < 64; ++bit) total += ((a[i] & b[i]) >> bit) & 1u;
  }
  return total;
}

std::vector<const kernels::KernelTable*> tables() {
  std::vector<const kernels::KernelTable*> t{&kernels::scalar_table()};
  if (auto* x = kernels::avx2_table()) t.push_back(x);
  if (auto* x = kernels::neon_table()) t.push_back(x);
  return t;
}

}  // namespace

TEST_CASE("and_popcount: every variant matches a bitwise count") {
  Rng r(11);
  for (std::size_t words : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 9u, 31u, 64u, 100u}) {
    std::vector<std::uint64_t> a(words), b(words);
    for (auto& w : a) w = r.next();
    for (auto& w : b) w = r.next();
    if (words > 0) a[0] = b[0] = ~0ull;
    const auto expect = naive_and_popcount(a, b);
    for (const auto* t : tables()) {
      INFO(t->name, " words=", words);
      CHECK(t->and_popcount(a.data(), b.data(), words) == expect);
    }
  }
}

TEST_CASE("count_at_least: every variant matches the reference") {
  Rng r(12);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 9u, 17u, 100u, 1001u}) {
    std::vector<double> v(n);
    for (auto& x : v) x = r.uniform01();
    for (std::size_t i = 0; i < n; i += 7) v[i] = (i % 2) ? nan : 0.5;
    for (double thr : {0.0, 0.25, 0.5, 1.0}) {
      std::size_t expect = 0;
      for (double x : v) expect += x >= thr;
      for (const auto* t : tables()) {
        INFO(t->name, " n=", n, " thr=", thr);
        CHECK(t->count_at_least(v.data(), n, thr) == expect);
      }
    }
  }
}

TEST_CASE("active kernel table is one of the compiled variants") {
  const auto& a = kernels::active();
  bool found = false;
  for (const auto* t : tables()) found = found || t == &a;
  CHECK(found);
}
