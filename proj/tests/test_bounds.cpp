#include <gtest/gtest.h>

#include "convcode/bounds.hpp"
#include "convcode/conversion.hpp"

using namespace convcode;

TEST(Bounds, AccessLowerBound) {
  EXPECT_EQ(access_lower_bound({2, 10, 4, 4}), 12u);
  EXPECT_EQ(access_lower_bound({2, 2, 1, 1}), 3u);
  EXPECT_EQ(access_lower_bound({2, 2, 1, 2}), 6u);
  EXPECT_EQ(access_lower_bound({2, 3, 5, 5}), 11u);
  EXPECT_EQ(baseline_access({2, 10, 4, 4}), 24u);
}

TEST(Bounds, ReadsPerStripe) {
  EXPECT_EQ(read_lower_bound_per_stripe({2, 5, 4, 2}), 2u);
  EXPECT_EQ(read_lower_bound_per_stripe({2, 10, 4, 4}), 4u);
  EXPECT_EQ(read_lower_bound_per_stripe({2, 10, 4, 0}), 0u);
  EXPECT_EQ(read_lower_bound_per_stripe({2, 3, 1, 2}), 3u);
}

TEST(Bounds, MaxUnchanged) {
  EXPECT_EQ(max_unchanged({2, 2, 1, 1}), 4u);
  EXPECT_EQ(max_unchanged({3, 1, 0, 0}), 3u);
  EXPECT_EQ(max_unchanged({2, 10, 4, 4}), 20u);
}

TEST(Bounds, MonotoneInFinalParities) {
  for (unsigned lambda = 2; lambda <= 4; ++lambda) {
    for (unsigned k = 1; k <= 6; ++k) {
      for (unsigned ri = 0; ri <= 6; ++ri) {
        for (unsigned rf = 0; rf < 8; ++rf) {
          EXPECT_LE(access_lower_bound({lambda, k, ri, rf}), access_lower_bound({lambda, k, ri, rf + 1}));
          EXPECT_LE(access_lower_bound({lambda, k, ri, rf}), baseline_access({lambda, k, ri, rf}));
        }
      }
    }
  }
}

TEST(Bounds, OptimalityVerdict) {
  AccessCostReport r;
  r.total_access = 6;
  EXPECT_TRUE(is_access_optimal(r, {2, 5, 4, 2}));
  r.total_access = 12;
  EXPECT_FALSE(is_access_optimal(r, {2, 5, 4, 2}));
  r.total_access = 0;
  EXPECT_TRUE(is_access_optimal(r, {2, 5, 4, 0}));
}
