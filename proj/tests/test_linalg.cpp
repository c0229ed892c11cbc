#include "dglforge/linalg.hpp"
#include "dglforge/modular.hpp"

#include <doctest.h>

#include <random>

using namespace dglforge;

namespace {

RationalMatrix random_matrix(std::mt19937& rng, int rows, int cols, double density, int rank_hint = -1) {
  std::uniform_int_distribution<int> val(-4, 4);
  std::uniform_real_distribution<double> coin(0, 1);
  std::vector<Triplet<Rational>> t;
  if (rank_hint < 0) {
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (coin(rng) < density) t.emplace_back(i, j, Rational(val(rng), 1 + (val(rng) + 4) % 3));
    return sparse_from_triplets<Rational>(rows, cols, t);
  }
  // Product of rows x r and r x cols factors.
  DenseMatrix<Rational> A(rows, rank_hint), B(rank_hint, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rank_hint; ++j) A(i, j) = coin(rng) < density ? Rational(val(rng)) : Rational(0);
  for (int i = 0; i < rank_hint; ++i)
    for (int j = 0; j < cols; ++j) B(i, j) = coin(rng) < density ? Rational(val(rng)) : Rational(0);
  DenseMatrix<Rational> P = A * B;
  return sparse_from_dense<Rational>(P);
}

// Textbook elimination on a dense copy.
std::size_t reference_rank(const RationalMatrix& m) {
  DenseMatrix<Rational> d = DenseMatrix<Rational>(m);
  std::size_t r = 0;
  for (int c = 0; c < d.cols() && r < static_cast<std::size_t>(d.rows()); ++c) {
    int piv = -1;
    for (int i = static_cast<int>(r); i < d.rows(); ++i)
      if (!d(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    d.row(piv).swap(d.row(static_cast<int>(r)));
    for (int i = 0; i < d.rows(); ++i)
      if (i != static_cast<int>(r) && !d(i, c).is_zero()) {
        const Rational f = d(i, c) / d(static_cast<int>(r), c);
        for (int j = 0; j < d.cols(); ++j) d(i, j) -= f * d(static_cast<int>(r), j);
      }
    ++r;
  }
  return r;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("rationals parse and print in lowest terms") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("-7") == Rational(-7));
    CHECK(format_rational(Rational(-2, 4)) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  }

  TEST_CASE("rank agrees with textbook elimination on sparse and dense paths") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
      const int rows = 1 + trial % 9, cols = 1 + (trial * 7) % 11;
      const RationalMatrix m = trial % 2 == 0 ? random_matrix(rng, rows, cols, 0.4)
                                              : random_matrix(rng, rows, cols, 0.7, 1 + trial % 4);
      const std::size_t want = reference_rank(m);
      LinalgOptions sparse_only;
      sparse_only.dense_threshold = 0;
      LinalgOptions dense_only;
      dense_only.dense_threshold = 1 << 20;
      dense_only.split_components = false;
      CHECK(rank(m) == want);
      CHECK(rank(m, sparse_only) == want);
      CHECK(rank(m, dense_only) == want);
      CHECK(multimodular_rank(m) == want);
    }
  }

  TEST_CASE("solve, kernel and Farkas witness") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const RationalMatrix m = random_matrix(rng, 6, 5, 0.8, 1 + trial % 4);
      RationalVector x0(5);
      for (int j = 0; j < 5; ++j) x0(j) = Rational(trial - j);
      const RationalVector b = multiply(m, x0);
      auto x = solve(m, b);
      REQUIRE(x.has_value());
      CHECK(multiply(m, *x) == b);
      CHECK_FALSE(infeasibility_witness(m, b).has_value());
      CHECK(modular_feasible(m, b));

      const auto ker = kernel_basis(m);
      CHECK(ker.size() == 5 - rank(m));
      for (const auto& k : ker) CHECK(multiply(m, k).isZero());

      RationalVector off = b;
      off(trial % 6) += 1;
      if (auto y = infeasibility_witness(m, off)) {
        CHECK(left_multiply(*y, m).isZero());
        CHECK(y->dot(off) == Rational(1));
        CHECK_FALSE(solve(m, off).has_value());
        CHECK_FALSE(modular_feasible(m, off));
      } else {
        CHECK(solve(m, off).has_value());
      }
    }
  }

  TEST_CASE("row echelon tracks pivots and membership") {
    RowEchelon<Rational> e;
    CHECK(e.insert({{0, Rational(1)}, {2, Rational(2)}}).has_value());
    CHECK(e.insert({{1, Rational(1)}}).has_value());
    CHECK(e.in_span({{0, Rational(2)}, {1, Rational(-3)}, {2, Rational(4)}}));
    CHECK_FALSE(e.in_span({{2, Rational(1)}}));
    CHECK_FALSE(e.insert({{0, Rational(3)}, {2, Rational(6)}}).has_value());
    CHECK(e.rank() == 2);
  }

  TEST_CASE("modular reduction rejects vanishing denominators") {
    const auto m = sparse_from_triplets<Rational>(1, 1, {Triplet<Rational>(0, 0, Rational(1, 2147483647))});
    CHECK_FALSE(reduce_mod<Mod1>(m).has_value());
    CHECK(reduce_mod<Mod2>(m).has_value());
    CHECK(multimodular_rank(m) == 1);
    CHECK(rank(m) == 1);
  }
}
