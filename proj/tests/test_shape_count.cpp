#include <gtest/gtest.h>

#include <map>
#include <string>

#include "oracles.hpp"
#include "permutwin/random.hpp"
#include "permutwin/shape_count.hpp"

using namespace permutwin;

namespace {

Shape alternating_shape(std::size_t len, bool plus_first) {
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s += ((i % 2 == 0) == plus_first) ? '+' : '-';
  return Shape::parse(s);
}

std::string reversed(std::string s) { return {s.rbegin(), s.rend()}; }

}  // namespace

TEST(CountShape, Examples) {
  EXPECT_EQ(count_shape_dp(Shape::parse("")), 1);
  EXPECT_EQ(count_shape_dp(Shape::parse("+")), 1);
  EXPECT_EQ(count_shape_dp(Shape::parse("+-")), 2);
  EXPECT_EQ(count_shape_dp(Shape::parse("+-+")), 5);
  EXPECT_EQ(count_shape_dp(Shape::parse("++++")), 1);
  EXPECT_EQ(count_shape_recursive(Shape::parse("+-+")), 5);
  EXPECT_EQ(brute_count_shape(Shape::parse("-+-++--+")), count_shape_dp(Shape::parse("-+-++--+")));
}

TEST(CountShape, ThreeMethodsAgreeOnEveryShortShape) {
  for (std::size_t len = 0; len <= 7; ++len) {
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << len); ++bits) {
      const Shape s = Shape::from_bits(bits, len);
      const BigCount dp = count_shape_dp(s);
      ASSERT_EQ(dp, count_shape_recursive(s)) << s.to_string();
      ASSERT_EQ(dp, brute_count_shape(s)) << s.to_string();
      if (len <= 6) {
        ASSERT_EQ(dp, oracle::count_shape(static_cast<std::uint32_t>(bits), len)) << s.to_string();
      }
    }
  }
}

TEST(CountShape, MachineIntegersMatchBigOnLongShapes) {
  TrialRng rng(SeedSpec{77, 0});
  for (int t = 0; t < 200; ++t) {
    const std::uint64_t bits = rng.next();
    const Shape s = Shape::from_bits(bits, 19);
    EXPECT_EQ(BigCount(count_shape_dp<std::uint64_t>(s)), count_shape_dp(s));
    EXPECT_EQ(count_shape_recursive(s), count_shape_dp(s));
  }
}

TEST(CountShape, SymmetriesAndTotal) {
  for (std::size_t n = 1; n <= 12; ++n) {
    BigCount total = 0;
    std::map<std::string, BigCount> seen;
    for_each_shape_count(n, [&](std::uint64_t bits, SweepCount c) {
      total += to_big(c);
      seen[Shape::from_bits(bits, n - 1).to_string()] = to_big(c);
    });
    BigCount fact = 1;
    for (std::size_t i = 2; i <= n; ++i) fact *= i;
    EXPECT_EQ(total, fact);
    for (const auto& [s, c] : seen) {
      ASSERT_EQ(c, seen.at(complement_shape(Shape::parse(s)).to_string()));
      ASSERT_EQ(c, seen.at(reversed(s)));
    }
  }
}

TEST(CountShape, BruteForceLimits) {
  EXPECT_THROW(brute_count_shape(Shape::parse("++++++++++")), SizeLimitExceeded);
  EXPECT_THROW(brute_count_shape(Shape::parse("+"), 13), PreconditionViolation);
}

TEST(Andre, FirstValues) {
  const auto a = andre_numbers(12);
  const std::vector<int> want = {1, 1, 1, 2, 5, 16, 61, 272, 1385, 7936, 50521, 353792, 2702765};
  ASSERT_EQ(a.size(), want.size());
  for (std::size_t i = 0; i < want.size(); ++i) EXPECT_EQ(a[i], want[i]) << i;
}

TEST(Andre, MatchesUpDownCountsAndAlternatingShapes) {
  const auto a = andre_numbers(40);
  for (std::size_t n = 1; n <= 9; ++n) EXPECT_EQ(a[n], oracle::count_up_down(n)) << n;
  for (std::size_t n = 1; n <= 40; ++n) {
    EXPECT_EQ(a[n], count_shape_dp(alternating_shape(n - 1, true))) << n;
    EXPECT_EQ(a[n], count_shape_dp(alternating_shape(n - 1, false))) << n;
  }
}

TEST(Andre, ConvolutionIdentity) {
  EXPECT_TRUE(verify_convolution_identity(200));
  const auto a = andre_numbers(5);
  EXPECT_FALSE(convolution_identity_holds(0, a));
  EXPECT_TRUE(convolution_identity_holds(3, a));
  EXPECT_THROW(convolution_identity_holds(5, a), PreconditionViolation);
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(5, 2), 10);
  EXPECT_EQ(binomial(5, 7), 0);
  EXPECT_EQ(binomial(0, 0), 1);
  EXPECT_EQ(binomial(100, 50), BigCount("100891344545564193334812497256"));
}

TEST(Sweep, WideCountsRoundTrip) {
  const auto a = andre_numbers(30);
  for (const auto& x : a) EXPECT_EQ(to_big(to_sweep(x)), x);
  EXPECT_EQ(to_big(~SweepCount{0}), (BigCount(1) << 128) - 1);
}

TEST(Sweep, LimitsAreEnforced) {
  EXPECT_THROW(for_each_shape_count(0, [](std::uint64_t, SweepCount) {}), SizeLimitExceeded);
  EXPECT_THROW(for_each_shape_count(26, [](std::uint64_t, SweepCount) {}), SizeLimitExceeded);
  EXPECT_THROW(verify_most_popular(0), PreconditionViolation);
  EXPECT_THROW(verify_most_popular(25), SizeLimitExceeded);
}

TEST(MostPopular, AlternatingShapesWinForSmallN) {
  const auto a = andre_numbers(14);
  for (std::size_t n = 1; n <= 14; ++n) {
    const PopularReport r = verify_most_popular(n);
    EXPECT_TRUE(r.ok) << n;
    EXPECT_FALSE(r.witness) << n;
    EXPECT_EQ(r.a_n, a[n]);
    EXPECT_EQ(r.max_count, a[n]);
    if (n >= 3) {
      ASSERT_TRUE(r.max_nonalt_shape);
      EXPECT_LT(r.max_nonalt, a[n]);
      EXPECT_EQ(count_shape_dp(*r.max_nonalt_shape), r.max_nonalt);
    }
  }
}

TEST(MostPopular, RunnerUpAtTen) {
  const PopularReport r = verify_most_popular(10);
  EXPECT_EQ(r.max_nonalt, 33486);
  ASSERT_TRUE(r.max_nonalt_shape);
  EXPECT_EQ(r.max_nonalt_shape->to_string(), "+--+-+-+-");
}

TEST(MostPopular, IndependentOfWorkerCount) {
  for (std::size_t n : {5, 9, 13}) {
    const PopularReport one = verify_most_popular(n, 1);
    for (std::size_t w : {2, 3, 7}) {
      const PopularReport many = verify_most_popular(n, w);
      EXPECT_EQ(many.max_count, one.max_count);
      EXPECT_EQ(many.max_nonalt, one.max_nonalt);
      EXPECT_EQ(many.max_nonalt_shape, one.max_nonalt_shape);
    }
  }
}
