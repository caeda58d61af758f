#include <gtest/gtest.h>

#include "convcode/bounds.hpp"
#include "convcode/constructions.hpp"
#include "convcode/error.hpp"
#include "convcode/verify.hpp"
#include "oracles.hpp"

using namespace convcode;

namespace {

Errc code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return Errc::Io;
}

void expect_invariants(const ConvertibleCode& c) {
  EXPECT_TRUE(oracle::all_minors_nonzero(c.parity_initial));
  EXPECT_TRUE(oracle::all_minors_nonzero(c.parity_final));
  EXPECT_TRUE(check_stability(c));
  EXPECT_TRUE(check_plan_soundness(c));
  EXPECT_EQ(c.plan.read_set.size() + c.params.r_final, access_lower_bound(c.params));
}

// Stacks the listed columns of pi, one per band.
std::vector<Element> stacked(const Matrix& pi, std::initializer_list<std::size_t> cols) {
  std::vector<Element> out;
  for (auto c : cols) {
    for (std::size_t r = 0; r < pi.rows(); ++r) out.push_back(pi(r, c));
  }
  return out;
}

}  // namespace

TEST(DegreeBound, MatchesExhaustiveDiagonalSearch) {
  EXPECT_EQ(degree_bound({2, 3, 3, 3}), 14u);
  EXPECT_EQ(degree_bound({2, 10, 4, 4}), 110u);
  EXPECT_EQ(degree_bound({3, 5, 1, 1}), 0u);
  EXPECT_EQ(degree_bound({2, 1, 1, 0}), 0u);
  for (unsigned lambda = 2; lambda <= 3; ++lambda) {
    for (unsigned k = 1; k <= 4; ++k) {
      for (unsigned ri = 0; ri <= 4; ++ri) {
        for (unsigned rf = 0; rf <= std::min(ri, k); ++rf) {
          const long long brute = std::max(oracle::max_exponent_diagonal(k, ri),
                                           oracle::max_exponent_diagonal(lambda * k, rf));
          EXPECT_EQ(degree_bound({lambda, k, ri, rf}), brute) << lambda << k << ri << rf;
        }
      }
    }
  }
  EXPECT_EQ(degree_bound({2, 10, 4, 4}),
            std::max(oracle::max_exponent_diagonal(10, 4), oracle::max_exponent_diagonal(20, 4)));
}

TEST(General, PowerPatternFixture) {
  const ConvertibleCode c = general_construction({2, 3, 3, 3});
  EXPECT_EQ(c.field.degree(), 15u);
  EXPECT_EQ(c.field.characteristic(), 2u);
  ASSERT_TRUE(c.theta);
  const Element theta = *c.theta;
  EXPECT_EQ(theta, c.field.primitive_element());
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c.parity_initial(i, j), theta.pow(std::int64_t(i * j)));
  }
  for (std::size_t i = 0; i < 6; ++i) {
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(c.parity_final(i, j), theta.pow(std::int64_t(i * j)));
  }
  EXPECT_EQ(c.parity_final(5, 1), theta.pow(5));
  EXPECT_EQ(c.parity_final(5, 2), theta.pow(10));
  expect_invariants(c);
}

TEST(General, HeadlinePlanCoefficients) {
  const ConvertibleCode c = general_construction({2, 10, 4, 4});
  EXPECT_EQ(c.field.degree(), 111u);
  const Element theta = *c.theta;
  ASSERT_EQ(c.plan.new_blocks.size(), 4u);
  for (std::size_t l = 0; l < 4; ++l) {
    ASSERT_EQ(c.plan.new_blocks[l].size(), 2u);
    EXPECT_EQ(c.plan.new_blocks[l][0].from, (BlockRef{0, 10 + l}));
    EXPECT_TRUE(c.plan.new_blocks[l][0].coeff.is_one());
    EXPECT_EQ(c.plan.new_blocks[l][1].from, (BlockRef{1, 10 + l}));
    EXPECT_EQ(c.plan.new_blocks[l][1].coeff, theta.pow(std::int64_t(10 * l)));
  }
  EXPECT_TRUE(check_plan_soundness(c));
  EXPECT_EQ(c.plan.read_set.size() + 4, 12u);
}

TEST(General, Preconditions) {
  EXPECT_EQ(code_of([] { general_construction({2, 2, 1, 2}); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([] { general_construction({1, 2, 1, 1}); }), Errc::InvalidParams);
  EXPECT_EQ(code_of([] { general_construction({2, 0, 1, 1}); }), Errc::InvalidParams);
}

TEST(General, XorFixture) {
  const ConvertibleCode c = general_construction({2, 2, 1, 1});
  EXPECT_EQ(c.field.describe(), "GF(2)");
  for (std::size_t r = 0; r < 2; ++r) EXPECT_TRUE(c.parity_initial(r, 0).is_one());
  for (const auto& t : c.plan.new_blocks[0]) EXPECT_TRUE(t.coeff.is_one());
  expect_invariants(c);
}

TEST(Hankel1, NineToTwelveFixture) {
  const ConvertibleCode c = hankel1({2, 5, 4, 2}, Field::make(11, 1));
  EXPECT_EQ(c.hankel->size(), 11u);
  const auto col0 = stacked(c.parity_initial, {0, 2});
  const auto col1 = stacked(c.parity_initial, {1, 3});
  for (std::size_t r = 0; r < 10; ++r) {
    EXPECT_EQ(c.parity_final(r, 0), col0[r]);
    EXPECT_EQ(c.parity_final(r, 1), col1[r]);
  }
  EXPECT_EQ(c.hankel_columns, (std::vector<std::size_t>{0, 1, 5, 6}));
  expect_invariants(c);
}

TEST(Hankel1, SingleAndNoNewParity) {
  const ConvertibleCode one = hankel1({2, 5, 4, 1}, Field::make(11, 1));
  ASSERT_EQ(one.plan.new_blocks.size(), 1u);
  EXPECT_EQ(one.plan.new_blocks[0].size(), 2u);
  expect_invariants(one);

  const ConvertibleCode none = hankel1({2, 5, 4, 0}, Field::make(11, 1));
  EXPECT_EQ(none.parity_final.cols(), 0u);
  EXPECT_TRUE(none.plan.new_blocks.empty());
  EXPECT_TRUE(none.plan.read_set.empty());
}

TEST(Hankel1, Preconditions) {
  EXPECT_EQ(code_of([] { hankel1({2, 4, 3, 2}, Field::make(13, 1)); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([] { hankel1({2, 5, 4, 2}, Field::make(7, 1)); }), Errc::SizeExceedsField);
}

TEST(Hankel2, SevenToTenFixture) {
  const ConvertibleCode c = hankel2({2, 4, 3, 2}, Field::make(13, 1));
  EXPECT_EQ(c.hankel->size(), 12u);
  const auto col0 = stacked(c.parity_initial, {0, 1});
  const auto col1 = stacked(c.parity_initial, {1, 2});
  for (std::size_t r = 0; r < 8; ++r) {
    EXPECT_EQ(c.parity_final(r, 0), col0[r]);
    EXPECT_EQ(c.parity_final(r, 1), col1[r]);
  }
  expect_invariants(c);
}

TEST(Hankel2, ThreeStripes) {
  const ConvertibleCode c = hankel2({3, 2, 3, 1}, Field::make(7, 1));
  EXPECT_EQ(c.hankel->size(), 6u);
  ASSERT_EQ(c.plan.new_blocks.size(), 1u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(c.plan.new_blocks[0][i].from, (BlockRef{i, 2 + i}));
    EXPECT_TRUE(c.plan.new_blocks[0][i].coeff.is_one());
  }
  expect_invariants(c);
  EXPECT_TRUE(hankel2({2, 4, 3, 0}, Field::make(13, 1)).plan.new_blocks.empty());
  EXPECT_EQ(code_of([] { hankel2({2, 4, 3, 3}, Field::make(13, 1)); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([] { hankel2({2, 4, 3, 2}, Field::make(11, 1)); }), Errc::SizeExceedsField);
}

TEST(HankelFamily, IntermediateGroupCount) {
  const MergeParams p{2, 3, 4, 2};
  EXPECT_EQ(hankel_family_max_r_final(3, p), 2u);
  EXPECT_EQ(hankel_family_min_order(3, p), 9);
  const ConvertibleCode c = hankel_family(3, p, Field::make(11, 1));
  EXPECT_EQ(c.scheme, Scheme::HankelFamily);
  EXPECT_EQ(c.s, 3u);
  expect_invariants(c);
  EXPECT_EQ(code_of([&] { hankel_family(3, {2, 3, 4, 3}, Field::make(11, 1)); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { hankel_family(3, p, Field::make(7, 1)); }), Errc::SizeExceedsField);
}

TEST(HankelFamily, SweepKeepsInvariants) {
  for (unsigned lambda = 2; lambda <= 3; ++lambda) {
    for (unsigned k = 2; k <= 3; ++k) {
      for (unsigned ri = lambda; ri <= 6; ++ri) {
        for (unsigned s = lambda; s <= ri; ++s) {
          const MergeParams base{lambda, k, ri, 0};
          if ((ri + s - 1) / s > k) continue;
          const unsigned max_rf = hankel_family_max_r_final(s, base);
          for (unsigned rf = 0; rf <= max_rf; ++rf) {
            const MergeParams p{lambda, k, ri, rf};
            if (s == lambda && ri > (lambda - 1) * k + rf) continue;
            const Field f = Field::smallest_with_order_at_least(hankel_family_min_order(s, p));
            const ConvertibleCode c = hankel_family(s, p, f);
            EXPECT_TRUE(is_superregular(c.parity_initial)) << p.to_string() << " s=" << s;
            EXPECT_TRUE(is_superregular(c.parity_final)) << p.to_string() << " s=" << s;
            EXPECT_TRUE(check_plan_soundness(c)) << p.to_string() << " s=" << s;
            EXPECT_EQ(c.plan.read_set.size(), lambda * rf) << p.to_string() << " s=" << s;
            if (rf <= k) {
              EXPECT_EQ(c.plan.read_set.size() + rf, access_lower_bound(p)) << p.to_string() << " s=" << s;
            }
          }
        }
      }
    }
  }
}

TEST(HankelFamily, EndpointsReproduceHankelOneAndTwo) {
  const Field f11 = Field::make(11, 1), f13 = Field::make(13, 1);
  EXPECT_TRUE(same_code(hankel_family(2, {2, 5, 4, 2}, f11), hankel1({2, 5, 4, 2}, f11)));
  EXPECT_TRUE(same_code(hankel_family(3, {2, 4, 3, 2}, f13), hankel2({2, 4, 3, 2}, f13)));
}

TEST(Trivial, ReadsEveryDataBlock) {
  const ConvertibleCode c = trivial_construction({2, 2, 1, 2}, Field::make(11, 1));
  EXPECT_EQ(c.plan.read_set.size(), 4u);
  for (const auto& r : c.plan.read_set) EXPECT_LT(r.block, 2u);
  EXPECT_EQ(c.plan.read_set.size() + 2, access_lower_bound(c.params));
  EXPECT_TRUE(oracle::all_minors_nonzero(c.parity_initial));
  EXPECT_TRUE(oracle::all_minors_nonzero(c.parity_final));
  EXPECT_TRUE(check_stability(c));
  EXPECT_TRUE(check_plan_soundness(c));

  const ConvertibleCode small = trivial_construction({2, 1, 1, 1}, Field::make(3, 1));
  EXPECT_EQ(small.plan.read_set.size(), 2u);
  EXPECT_EQ(small.plan.read_set.size() + 1, access_lower_bound(small.params));

  const ConvertibleCode none = trivial_construction({2, 3, 2, 0}, Field::make(7, 1));
  EXPECT_TRUE(none.plan.read_set.empty());
  EXPECT_EQ(code_of([] { trivial_construction({2, 2, 1, 2}, Field::make(5, 1)); }), Errc::SizeExceedsField);
}

TEST(Restrict, HankelCodes) {
  const ConvertibleCode h1 = hankel1({2, 5, 4, 2}, Field::make(11, 1));
  const ConvertibleCode r1 = restrict_code(h1, 2, 1);
  EXPECT_EQ(r1.plan.read_set.size() + 1, 3u);
  EXPECT_TRUE(r1.parity_initial == h1.parity_initial);
  expect_invariants(r1);
  EXPECT_TRUE(same_code(restrict_code(h1, 2, 2), h1));

  const ConvertibleCode h2 = hankel2({2, 4, 3, 2}, Field::make(13, 1));
  const ConvertibleCode r2 = restrict_code(h2, 2, 1);
  ASSERT_EQ(r2.plan.new_blocks.size(), 1u);
  EXPECT_EQ(r2.plan.new_blocks[0][0].from, (BlockRef{0, 4}));
  EXPECT_EQ(r2.plan.new_blocks[0][1].from, (BlockRef{1, 5}));
  expect_invariants(r2);

  const ConvertibleCode h3 = hankel2({3, 2, 3, 1}, Field::make(7, 1));
  const ConvertibleCode r3 = restrict_code(h3, 2, 1);
  EXPECT_EQ(r3.params.lambda, 2u);
  expect_invariants(r3);
}

TEST(Restrict, Errors) {
  const ConvertibleCode g = general_construction({2, 2, 1, 1});
  EXPECT_EQ(code_of([&] { restrict_code(g, 2, 1); }), Errc::NotRestrictable);
  const ConvertibleCode h1 = hankel1({2, 5, 4, 2}, Field::make(11, 1));
  EXPECT_EQ(code_of([&] { restrict_code(h1, 3, 1); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { restrict_code(h1, 2, 3); }), Errc::PreconditionViolated);
  EXPECT_EQ(code_of([&] { restrict_code(h1, 1, 1); }), Errc::PreconditionViolated);
}

TEST(AutoSelection, Order) {
  const ConvertibleCode a = construct_auto({2, 5, 4, 2});
  EXPECT_EQ(a.scheme, Scheme::Hankel1);
  EXPECT_EQ(a.field.describe(), "GF(11)");

  const ConvertibleCode b = construct_auto({2, 4, 3, 2});
  EXPECT_EQ(b.scheme, Scheme::Hankel2);
  EXPECT_EQ(b.field.describe(), "GF(13)");
  EXPECT_EQ(b.selection.size(), 2u);

  const ConvertibleCode c = construct_auto({2, 3, 5, 3});
  EXPECT_EQ(c.scheme, Scheme::HankelFamily);
  EXPECT_EQ(c.s, 3u);

  const ConvertibleCode d = construct_auto({3, 2, 2, 2});
  EXPECT_EQ(d.scheme, Scheme::General);
  EXPECT_EQ(d.field.describe(), "GF(2^6)");

  const ConvertibleCode e = construct_auto({2, 2, 1, 2});
  EXPECT_EQ(e.scheme, Scheme::Trivial);

  const ConvertibleCode degenerate = construct_auto({2, 3, 0, 0});
  EXPECT_TRUE(degenerate.plan.new_blocks.empty());
}

TEST(AutoSelection, AlwaysMeetsTheAccessBound) {
  for (unsigned lambda = 2; lambda <= 3; ++lambda) {
    for (unsigned k = 1; k <= 3; ++k) {
      for (unsigned ri = 0; ri <= 4; ++ri) {
        for (unsigned rf = 0; rf <= 4; ++rf) {
          const MergeParams p{lambda, k, ri, rf};
          const ConvertibleCode c = construct_auto(p);
          EXPECT_EQ(c.plan.read_set.size() + rf, access_lower_bound(p)) << p.to_string() << " " << scheme_name(c.scheme);
        }
      }
    }
  }
  const ConvertibleCode wide = construct_auto({2, 2, 4, 3});
  EXPECT_EQ(wide.scheme, Scheme::Trivial);
  EXPECT_EQ(wide.selection.front(), "hankel: rF > kI, parity reads cannot meet the access bound");
}

TEST(AutoSelection, GivenField) {
  ConstructOptions opts;
  opts.field = Field::make(13, 1);
  const ConvertibleCode a = construct_auto({2, 5, 4, 2}, opts);
  EXPECT_EQ(a.scheme, Scheme::Hankel1);
  EXPECT_EQ(a.field.describe(), "GF(13)");
  EXPECT_EQ(code_of([&] { construct(Scheme::General, {2, 3, 3, 3}, opts); }), Errc::PreconditionViolated);
}

TEST(Construction, Deterministic) {
  EXPECT_TRUE(same_code(construct(Scheme::Hankel1, {2, 5, 4, 2}), construct(Scheme::Hankel1, {2, 5, 4, 2})));
  EXPECT_TRUE(same_code(general_construction({2, 3, 3, 3}), general_construction({2, 3, 3, 3})));
  EXPECT_EQ(parse_scheme("hankel-s"), Scheme::HankelFamily);
  EXPECT_EQ(code_of([] { parse_scheme("reed-solomon"); }), Errc::InvalidParams);
}
