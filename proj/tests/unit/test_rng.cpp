#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "colearn/rng.hpp"

using namespace colearn;

TEST_CASE("philox4x32-10 known-answer vectors") {
  using B = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == B{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        B{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        B{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams replay and separate") {
  Rng a = Rng::stream(7, {1, 2, 0});
  Rng b = Rng::stream(7, {1, 2, 0});
  Rng c = Rng::stream(7, {1, 2, 1});
  int same_c = 0;
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    same_c += x == c.next_u64();
  }
  CHECK(same_c == 0);
  CHECK(derive_seed(1, {2}) != derive_seed(1, {3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
}

TEST_CASE("uniform and below stay in range and look uniform") {
  Rng r(42);
  std::vector<int> counts(10, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const auto v = r.below(10);
    REQUIRE(v < 10);
    ++counts[v];
  }
  // Binomial(n, 0.1): sd = 94.9; 5 sd band.
  for (int c : counts) CHECK(std::abs(c - n / 10) < 475);
  CHECK(r.below(1) == 0);
}
