#include <doctest.h>

#include <random>
#include <tuple>

#include "parcc/buckets.hpp"
#include "parcc/samplesort.hpp"
#include "support.hpp"

using namespace parcc;
using parcc::testing::block_of;
using parcc::testing::concat;

TEST_SUITE("psort") {

TEST_CASE("samplesort equals std::sort on random, skewed and degenerate inputs") {
  std::mt19937_64 rng(3);
  std::vector<std::vector<std::uint64_t>> inputs;
  inputs.emplace_back();
  inputs.push_back({42});
  inputs.push_back(std::vector<std::uint64_t>(1000, 5));
  {
    std::vector<std::uint64_t> v(20000);
    for (auto& x : v) x = rng() % 17;  // heavy duplicates
    inputs.push_back(v);
  }
  {
    std::vector<std::uint64_t> v(20000);
    for (auto& x : v) x = rng();
    inputs.push_back(v);
  }
  {
    std::vector<std::uint64_t> v(5000);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = v.size() - i;  // reversed
    inputs.push_back(v);
  }
  for (const auto& input : inputs) {
    auto expected = input;
    std::sort(expected.begin(), expected.end());
    for (int rho : {1, 2, 3, 4, 8}) {
      auto out = concat(run_team(rho, [&](TeamContext& ctx) { return samplesort(ctx, block_of(ctx, input)); }));
      CHECK(out == expected);
    }
  }
}

TEST_CASE("all input on one rank still sorts") {
  std::mt19937_64 rng(11);
  std::vector<int> input(3000);
  for (auto& x : input) x = static_cast<int>(rng() % 1000);
  auto expected = input;
  std::sort(expected.begin(), expected.end());
  auto out = concat(run_team(4, [&](TeamContext& ctx) {
    return samplesort(ctx, ctx.rank() == 2 ? input : std::vector<int>{});
  }));
  CHECK(out == expected);
}

TEST_CASE("samplesort_by with a composite key and custom comparator") {
  struct Rec {
    int a;
    int b;
  };
  std::vector<Rec> input;
  for (int i = 0; i < 500; ++i) input.push_back({i % 7, 500 - i});
  auto out = concat(run_team(3, [&](TeamContext& ctx) {
    return samplesort_by(ctx, block_of(ctx, input), [](const Rec& r) { return std::tuple(r.a, r.b); });
  }));
  REQUIRE(out.size() == input.size());
  CHECK(std::is_sorted(out.begin(), out.end(),
                       [](const Rec& x, const Rec& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); }));

  auto desc = concat(run_team(3, [&](TeamContext& ctx) {
    std::vector<int> v;
    for (const auto& r : block_of(ctx, input)) v.push_back(r.b);
    return samplesort(ctx, v, std::greater<int>());
  }));
  CHECK(std::is_sorted(desc.begin(), desc.end(), std::greater<int>()));
}

TEST_CASE("reduce_buckets sums buckets spanning several ranks") {
  // Keys: 0 x1, 1 x40, 2 x3, 3 x1 spread over 8 ranks so key 1 spans many.
  std::vector<int> keys;
  keys.push_back(0);
  keys.insert(keys.end(), 40, 1);
  keys.insert(keys.end(), 3, 2);
  keys.push_back(3);
  auto per_rank = run_team(8, [&](TeamContext& ctx) {
    const auto mine = block_of(ctx, keys);
    const auto buckets = reduce_buckets(
        ctx, std::span<const int>(mine), [](int k) { return k; }, [](int) { return 1; },
        [](int a, int b) { return a + b; });
    std::vector<std::pair<int, int>> owned;
    for (const auto& b : buckets) {
      CHECK(b.value == (b.key == 1 ? 40 : b.key == 2 ? 3 : 1));
      if (b.owns_first) owned.emplace_back(b.key, b.value);
    }
    return owned;
  });
  CHECK(concat(per_rank) == std::vector<std::pair<int, int>>{{0, 1}, {1, 40}, {2, 3}, {3, 1}});
}

}
