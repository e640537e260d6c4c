#include <gtest/gtest.h>

#include <random>

#include "tqa/linalg.hpp"

using namespace tqa;

namespace {

Matrix d00() { return Matrix::from_dense({{-1, 1, 0}, {0, 0, 0}, {0, -1, 1}}); }

Matrix column_n(int N) { return Matrix::from_dense({{N - 1}, {N}, {N - 1}, {N - 2}}); }

SparseVec vec(std::initializer_list<Rational> xs) {
  SparseVec v;
  std::size_t i = 0;
  for (const auto& x : xs) {
    if (x != 0) v.emplace(i, x);
    ++i;
  }
  return v;
}

Matrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c) {
  std::uniform_int_distribution<int> val(-3, 3), keep(0, 2);
  Matrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (keep(rng) == 0) m.set(i, j, Rational(val(rng), 1 + keep(rng)));
  return m;
}

}  // namespace

TEST(Rational, Serialization) {
  EXPECT_EQ(to_string(Rational(3, 6)), "1/2");
  EXPECT_EQ(to_string(Rational(4, 2)), "2");
  EXPECT_EQ(to_string(Rational(-2, 4)), "-1/2");
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_THROW(parse_rational("1/0"), ValidationError);
  EXPECT_THROW(parse_rational("x"), ValidationError);
}

TEST(Rank, PrintedMatrices) {
  EXPECT_EQ(rank(d00()), 2u);
  EXPECT_EQ(rank(Matrix(4, 4)), 0u);
  EXPECT_EQ(rank(column_n(3)), 1u);
}

TEST(Kernel, PrintedMatrices) {
  auto k = kernel_basis(d00());
  ASSERT_EQ(k.size(), 1u);
  EXPECT_EQ(k[0], vec({1, 1, 1}));
  EXPECT_TRUE(kernel_basis(Matrix::from_dense({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
  EXPECT_EQ(kernel_basis(column_n(3).transpose()).size(), 3u);
}

TEST(Image, Membership) {
  auto c = in_image(d00(), vec({-2, 0, 0}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(*c, vec({2, 0, 0}));
  EXPECT_FALSE(in_image(d00(), vec({1, 1, 1})).has_value());
  EXPECT_THROW(in_image(d00(), vec({0, 0, 0, 1})), ValidationError);
}

TEST(Image, QuotientReps) {
  auto img = image_basis(column_n(3));
  ASSERT_EQ(img.size(), 1u);
  auto reps = quotient_reps(4, img);
  EXPECT_EQ(reps, (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_THROW(quotient_reps(2, img), ValidationError);
}

TEST(Properties, RankNullityAndSolve) {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix m = random_matrix(rng, r, c);
    auto k = kernel_basis(m);
    EXPECT_EQ(rank(m) + k.size(), c);
    EXPECT_EQ(rank(m), rank(m.transpose()));
    for (const auto& v : k) EXPECT_TRUE(m.apply(v).empty());
    SparseVec x;
    for (std::size_t j = 0; j < c; ++j)
      if (rng() % 2) x.emplace(j, canonical(Rational(static_cast<int>(rng() % 5) - 2, 1 + rng() % 3)));
    std::erase_if(x, [](const auto& e) { return e.second == 0; });
    auto y = m.apply(x);
    auto sol = in_image(m, y);
    ASSERT_TRUE(sol.has_value());
    EXPECT_EQ(m.apply(*sol), y);
  }
}

TEST(Properties, InsertionOrderIndependent) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix m = random_matrix(rng, 6, 5);
    std::vector<std::tuple<std::size_t, std::size_t, Rational>> entries;
    for (std::size_t c = 0; c < m.cols(); ++c)
      for (const auto& [r, v] : m.column(c)) entries.emplace_back(r, c, v);
    std::shuffle(entries.begin(), entries.end(), rng);
    Matrix m2(6, 5);
    for (const auto& [r, c, v] : entries) m2.add(r, c, v);
    EXPECT_EQ(m, m2);
    EXPECT_EQ(kernel_basis(m), kernel_basis(m2));
    EXPECT_EQ(image_basis(m), image_basis(m2));
  }
}

TEST(Matrix, StoresNoZeros) {
  Matrix m(2, 2);
  m.add(0, 0, 1);
  m.add(0, 0, -1);
  EXPECT_EQ(m.nonzeros(), 0u);
  m.set(1, 1, 0);
  EXPECT_EQ(m.nonzeros(), 0u);
  EXPECT_THROW(m.add(2, 0, 1), ValidationError);
}
