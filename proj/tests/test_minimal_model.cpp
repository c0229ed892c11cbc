#include "dglforge/minimal_model.hpp"
#include "dglforge/quotient.hpp"
#include "dglforge/quillen.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace dglforge;

TEST_SUITE("minimal_model") {
  TEST_CASE("random generator produces filtered dgls with linear parts") {
    std::mt19937 rng(1);
    int with_linear = 0;
    for (int i = 0; i < 20; ++i) {
      const DglPresentation p = oracle::random_filtered_dgl(rng);
      CHECK(check_d_squared(p, p.max_degree()).ok);
      REQUIRE(p.declared_filtration().has_value());
      CHECK(is_valid_decomposition(p, *p.declared_filtration()));
      CHECK(p.declared_filtration()->length() <= 3);
      CHECK(p.max_degree() <= 15);
      if (!p.is_minimal()) ++with_linear;
    }
    CHECK(with_linear >= 10);
  }

  TEST_CASE("contractible pair disappears") {
    DglPresentation p(Alphabet({{"x", 3, 1}, {"y", 4, 2}, {"z", 5, 1}}));
    p.set_differential(1, p.generator("x"));
    const MinimalModel m = minimalize(p, 12);
    CHECK(m.minimal.alphabet().names() == std::vector<std::string>{"z"});
    CHECK(check_minimal_model(p, m, 12).ok());
  }

  TEST_CASE("minimal input is returned unchanged up to names") {
    const DglPresentation A = lstar(truncated_monogenic(4, 4));
    const MinimalModel m = minimalize(A, 16);
    CHECK(m.minimal == A);
  }

  TEST_CASE("cap below a generator is an error") {
    DglPresentation p(Alphabet({{"x", 3, {}}, {"y", 9, {}}}));
    CHECK_THROWS_AS(minimalize(p, 5), std::domain_error);
  }

  TEST_CASE("randomized models keep homology and both filtration properties") {
    std::mt19937 rng(20260601);
    for (int i = 0; i < 20; ++i) {
      const DglPresentation p = oracle::random_filtered_dgl(rng);
      const int cap = p.max_degree() + 1;
      const MinimalModel m = minimalize(p, cap);
      const MinimalModelCheck c = check_minimal_model(p, m, cap);
      CAPTURE(i);
      CHECK(c.decomposable);
      CHECK(c.d_squared);
      CHECK(c.homology_preserved);
      CHECK(c.quadratic_decomposition);
      CHECK(c.top_stage);
      CHECK(c.output_length <= c.input_length);
    }
  }
}

TEST_SUITE("quotient") {
  TEST_CASE("quotient of a cone by its base") {
    DglPresentation p(Alphabet({{"x", 3, {}}, {"y", 4, {}}, {"z", 5, {}}}));
    p.set_differential(1, p.generator("x"));
    const std::vector<LieElement> gens{p.generator("x"), p.generator("y")};
    QuotientComplex q(p, gens, 12);
    CHECK(q.is_zero_class(bracket(p.generator("z"), p.generator("x"))));
    CHECK_FALSE(q.is_zero_class(bracket(p.generator("z"), p.generator("z"))));
    CHECK(q.dimension(5) == 1);
    CHECK(q.dimension(10) == 1);
    CHECK(q.homology_dimension(10) == 1);
    CHECK(q.homology_dimension(3) == 0);
  }

  TEST_CASE("unstable generators are rejected") {
    DglPresentation p(Alphabet({{"x", 3, {}}, {"y", 4, {}}}));
    p.set_differential(1, p.generator("x"));
    const std::vector<LieElement> gens{p.generator("y")};
    CHECK_THROWS_AS(QuotientComplex(p, gens, 8), std::invalid_argument);
  }
}
