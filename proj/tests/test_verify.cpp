#include <gtest/gtest.h>

#include "convcode/bounds.hpp"
#include "convcode/constructions.hpp"
#include "convcode/error.hpp"
#include "convcode/verify.hpp"

using namespace convcode;

namespace {

std::vector<ConvertibleCode> small_fixtures() {
  return {general_construction({2, 2, 1, 1}), hankel2({2, 4, 3, 2}, Field::make(13, 1)),
          general_construction({2, 3, 3, 3}), hankel1({2, 5, 4, 2}, Field::make(11, 1)),
          hankel_family(3, {2, 3, 4, 2}, Field::make(11, 1)), trivial_construction({2, 2, 1, 2}, Field::make(11, 1))};
}

}  // namespace

TEST(ErasureOracle, Examples) {
  const Field f = Field::make(11, 1);
  EXPECT_TRUE(is_mds_by_erasure(Matrix::identity(f, 4)));
  const ConvertibleCode xor_code = general_construction({2, 2, 1, 1});
  EXPECT_TRUE(is_mds_by_erasure(xor_code.generator_initial()));
  EXPECT_TRUE(is_mds_by_erasure(xor_code.generator_final()));
  Matrix repeated = hconcat(Matrix::identity(f, 2), Matrix::from_integers(f, 2, 2, std::vector<std::uint64_t>{1, 1, 2, 2}));
  EXPECT_FALSE(is_mds_by_erasure(repeated));
}

TEST(ErasureOracle, AgreesWithSuperregularity) {
  for (const auto& c : small_fixtures()) {
    EXPECT_TRUE(is_mds_by_erasure(c.generator_initial()));
    EXPECT_TRUE(is_mds_by_erasure(c.generator_final()));
    EXPECT_TRUE(is_superregular(c.parity_initial));
    EXPECT_TRUE(is_superregular(c.parity_final));
  }
}

TEST(EmbeddedGenerator, Bands) {
  const ConvertibleCode c = hankel2({2, 4, 3, 2}, Field::make(13, 1));
  const Matrix e = embedded_generator(c);
  const Matrix g = c.generator_initial();
  ASSERT_EQ(e.rows(), 8u);
  ASSERT_EQ(e.cols(), 14u);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      for (std::size_t r = 0; r < 8; ++r) {
        const bool in_band = r / 4 == i;
        EXPECT_EQ(e(r, i * 7 + j), in_band ? g(r % 4, j) : c.field.zero());
      }
    }
  }
}

TEST(BlockConstructible, HankelTwoFixture) {
  const ConvertibleCode c = hankel2({2, 4, 3, 2}, Field::make(13, 1));
  const auto two = block_constructible_witness(c.parity_final, c.parity_initial, 2);
  ASSERT_TRUE(two);
  EXPECT_EQ((*two)[0], (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ((*two)[1], (std::vector<std::size_t>{1, 2}));
  EXPECT_FALSE(block_constructible_witness(c.parity_final, c.parity_initial, 1));
}

TEST(BlockConstructible, SingleBand) {
  const ConvertibleCode c = hankel1({2, 5, 4, 2}, Field::make(11, 1));
  const Matrix pf = c.parity_initial.block(0, 5, 0, 2);
  const auto w = block_constructible_witness(pf, c.parity_initial, 2);
  ASSERT_TRUE(w);
  ASSERT_EQ(w->size(), 1u);
  EXPECT_EQ((*w)[0], (std::vector<std::size_t>{0, 1}));
}

TEST(BlockConstructible, EveryStructuredScheme) {
  for (const auto& c : small_fixtures()) {
    if (c.scheme == Scheme::Trivial) continue;
    EXPECT_TRUE(block_constructible_witness(c.parity_final, c.parity_initial, c.params.r_final))
        << c.params.to_string();
  }
}

TEST(MinReadSet, Examples) {
  EXPECT_EQ(min_read_set_search(general_construction({2, 2, 1, 1})).min_reads, 2u);
  EXPECT_EQ(min_read_set_search(hankel2({2, 4, 3, 2}, Field::make(13, 1))).min_reads, 4u);
  EXPECT_EQ(min_read_set_search(hankel1({2, 5, 4, 0}, Field::make(11, 1))).min_reads, 0u);
}

TEST(MinReadSet, MatchesLowerBoundAndJointSearch) {
  for (const auto& c : small_fixtures()) {
    const auto per_band = min_read_set_search(c);
    EXPECT_EQ(per_band.min_reads, c.params.lambda * read_lower_bound_per_stripe(c.params)) << c.params.to_string();
    if (c.params.lambda * c.params.n_initial() <= kMaxJointSearchColumns) {
      const auto joint = min_read_set_search_joint(c);
      EXPECT_EQ(joint.min_reads, per_band.min_reads) << c.params.to_string();
      EXPECT_EQ(joint.per_stripe, per_band.per_stripe);
    }
  }
}

TEST(MinReadSet, RefusesLargeJointSearch) {
  const ConvertibleCode c = hankel1({2, 5, 4, 2}, Field::make(11, 1));
  try {
    min_read_set_search_joint(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::InstanceTooLarge);
  }
}

TEST(PlanChecks, ConstructedSchemesPass) {
  for (const auto& c : small_fixtures()) {
    EXPECT_TRUE(check_stability(c)) << c.params.to_string();
    EXPECT_TRUE(check_plan_soundness(c)) << c.params.to_string();
  }
}

TEST(PlanChecks, DetectCorruption) {
  ConvertibleCode c = hankel1({2, 5, 4, 2}, Field::make(11, 1));
  ConvertibleCode perturbed = c;
  perturbed.plan.new_blocks[1][0].coeff += c.field.one();
  EXPECT_FALSE(check_plan_soundness(perturbed));

  ConvertibleCode extra_read = c;
  extra_read.plan.read_set.push_back({1, 0});
  EXPECT_FALSE(check_plan_soundness(extra_read));

  ConvertibleCode unstable = c;
  unstable.plan.new_blocks.push_back({});
  EXPECT_FALSE(check_stability(unstable));

  ConvertibleCode swapped = c;
  std::swap(swapped.plan.unchanged[0].position, swapped.plan.unchanged[1].position);
  EXPECT_FALSE(check_stability(swapped));
}

TEST(NonStable, AlwaysCostsMore) {
  for (const auto& c : small_fixtures()) {
    EXPECT_GT(min_non_stable_access(c), access_lower_bound(c.params)) << c.params.to_string();
  }
}
