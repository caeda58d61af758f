#include <gtest/gtest.h>

#include <random>

#include "convcode/error.hpp"
#include "convcode/gf.hpp"
#include "oracles.hpp"

using convcode::Errc;
using convcode::Error;
using convcode::gf::Element;
using convcode::gf::Field;

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

}  // namespace

TEST(GaloisField, PrimeFieldArithmetic) {
  const Field f = Field::make(11, 1);
  EXPECT_EQ(f.describe(), "GF(11)");
  EXPECT_EQ((f.from_u64(7) + f.from_u64(5)).to_u64(), 1u);
  EXPECT_EQ(f.from_u64(2).inv().to_u64(), 6u);
  EXPECT_EQ((f.from_u64(3) - f.from_u64(5)).to_u64(), 9u);
  EXPECT_EQ(f.from_u64(2).pow(-1).to_u64(), 6u);
  EXPECT_EQ(f.from_u64(2).pow(10).to_u64(), 1u);
  EXPECT_EQ(Field::make(13, 1).order(), 13);
}

TEST(GaloisField, RejectsBadSpecs) {
  EXPECT_EQ(code_of([] { Field::make(4, 1); }), Errc::NotPrime);
  EXPECT_EQ(code_of([] { Field::make(2, 2, std::vector<std::uint32_t>{1, 0, 1}); }), Errc::NotIrreducible);
  EXPECT_EQ(code_of([] { Field::make(2, 3, std::vector<std::uint32_t>{1, 1, 1}); }), Errc::DegreeMismatch);
  EXPECT_EQ(code_of([] { Field::make(2, 3, std::vector<std::uint32_t>{1, 1, 0, 0}); }), Errc::DegreeMismatch);
  EXPECT_EQ(code_of([] { Field::make(3, 0); }), Errc::DegreeMismatch);
  EXPECT_EQ(code_of([] { Field::with_order(12); }), Errc::NotPrime);
}

TEST(GaloisField, DivisionAndMixing) {
  const Field a = Field::make(11, 1), b = Field::make(13, 1);
  EXPECT_EQ(code_of([&] { a.zero().inv(); }), Errc::DivisionByZero);
  EXPECT_EQ(code_of([&] { a.one() / a.zero(); }), Errc::DivisionByZero);
  EXPECT_EQ(code_of([&] { a.one() + b.one(); }), Errc::FieldMismatch);
  EXPECT_EQ(code_of([&] { a.one() * b.one(); }), Errc::FieldMismatch);
}

TEST(GaloisField, DefaultModulusIsFirstIrreducible) {
  const Field f = Field::make(2, 15);
  std::uint64_t expected = 0;
  for (std::uint64_t cand = 1ull << 15; cand < (1ull << 16); ++cand) {
    if (oracle::irreducible2(cand)) {
      expected = cand;
      break;
    }
  }
  std::uint64_t got = 0;
  for (std::size_t i = 0; i < f.modulus().size(); ++i) got |= std::uint64_t(f.modulus()[i]) << i;
  EXPECT_EQ(got, expected);
  EXPECT_EQ(f.describe(), "GF(2^15)");
  EXPECT_EQ(f.symbol_bytes(), 2u);

  for (unsigned m = 2; m <= 10; ++m) {
    const Field g = Field::make(2, m);
    std::uint64_t enc = 0;
    for (std::size_t i = 0; i < g.modulus().size(); ++i) enc |= std::uint64_t(g.modulus()[i]) << i;
    EXPECT_TRUE(oracle::irreducible2(enc)) << m;
    for (std::uint64_t cand = 1ull << m; cand < enc; ++cand) EXPECT_FALSE(oracle::irreducible2(cand)) << m;
  }
}

TEST(GaloisField, PrimitiveElements) {
  EXPECT_EQ(Field::make(11, 1).primitive_element().to_u64(), 2u);
  EXPECT_EQ(Field::make(13, 1).primitive_element().to_u64(), 2u);
  EXPECT_EQ(Field::make(2, 1).primitive_element().to_u64(), 1u);
  for (auto [p, m] : {std::pair{2u, 4u}, {3u, 3u}, {7u, 1u}, {5u, 2u}, {2u, 8u}, {17u, 1u}}) {
    const Field f = Field::make(p, m);
    const std::uint64_t q1 = f.order().get_ui() - 1;
    std::uint64_t smallest = 0;
    for (std::uint64_t v = 1; v <= q1; ++v) {
      if (oracle::naive_order(f.from_u64(v)) == q1) {
        smallest = v;
        break;
      }
    }
    EXPECT_EQ(f.primitive_element().to_u64(), smallest) << f.describe();
  }
}

TEST(GaloisField, PrimitiveOfLargeBinaryField) {
  const Field f = Field::make(2, 15);
  const Element theta = f.primitive_element();
  EXPECT_TRUE(theta.pow(32767).is_one());
  EXPECT_EQ(oracle::naive_order(theta), 32767u);

  const Field big = Field::make(2, 111);
  const Element t = big.primitive_element();
  EXPECT_TRUE(t.pow(big.order() - 1).is_one());
  for (const auto& factor : big.order_minus_one_factors()) {
    EXPECT_FALSE(t.pow((big.order() - 1) / factor).is_one());
  }
  EXPECT_EQ(convcode::gf::multiplicative_order(t), big.order() - 1);
}

TEST(GaloisField, AxiomsOnRandomElements) {
  std::mt19937_64 rng(2024);
  for (const Field& f : {Field::make(11, 1), Field::make(2, 15), Field::make(2, 111), Field::make(3, 5),
                         Field::make(7, 3), Field::make(2, 64), Field::make(2, 65)}) {
    for (int trial = 0; trial < 200; ++trial) {
      const Element a = f.random(rng), b = f.random(rng), c = f.random(rng);
      EXPECT_EQ((a + b) + c, a + (b + c));
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * b, b * a);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a - a, f.zero());
      if (!a.is_zero()) {
        EXPECT_TRUE((a * a.inv()).is_one());
        EXPECT_EQ(a.pow(-3) * a.pow(3), f.one());
      }
      EXPECT_EQ(f.from_integer(a.to_integer()), a);
    }
  }
}

TEST(GaloisField, InverseExhaustiveSmallFields) {
  for (const Field& f : {Field::make(2, 10), Field::make(3, 6), Field::make(31, 2), Field::make(1021, 1)}) {
    const std::uint64_t q = f.order().get_ui();
    for (std::uint64_t v = 1; v < q; ++v) {
      const Element a = f.from_u64(v);
      ASSERT_TRUE((a.inv() * a).is_one()) << f.describe() << " " << v;
    }
  }
}

TEST(GaloisField, CanonicalEncoding) {
  const Field f = Field::make(3, 2);
  const Element e = f.from_coeffs(std::vector<std::uint32_t>{2, 1});
  EXPECT_EQ(e.to_u64(), 2u + 1u * 3u);
  EXPECT_EQ(e.coeffs(), (std::vector<std::uint32_t>{2, 1}));
  EXPECT_EQ(code_of([&] { f.from_u64(9); }), Errc::Format);
  EXPECT_EQ(Field::smallest_with_order_at_least(10).order(), 11);
  EXPECT_EQ(Field::smallest_with_order_at_least(14).order(), 16);
  EXPECT_EQ(Field::with_order(27).degree(), 3u);
}
