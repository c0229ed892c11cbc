#include "dglforge/quillen.hpp"

#include <doctest.h>

using namespace dglforge;

TEST_SUITE("quillen") {
  TEST_CASE("lstar of a truncated polynomial algebra") {
    for (int k = 3; k <= 6; ++k) {
      const DglPresentation A = lstar(truncated_monogenic(4, k + 1));
      const LieElement a = A.generator("a"), a2 = A.generator("a2"), a3 = A.generator("a3");
      for (int i = 1; i <= k; ++i) CHECK(A.alphabet().degree(A.alphabet().at(i == 1 ? "a" : "a" + std::to_string(i))) == 4 * i - 1);
      CHECK(A.differential("a").is_zero());
      CHECK(A.differential("a2") == bracket(a, a));
      CHECK(A.differential("a3") == bracket(a, a2));
      if (k >= 4) CHECK(A.differential("a4") == bracket(a2, a2) + Rational(4) * bracket(a, a3));
      CHECK(A.is_quadratic());
      CHECK(check_d_squared(A, 4 * k + 1).ok);
    }
    const DglPresentation B = lstar(truncated_monogenic(6, 3, "b"));
    CHECK(B.differential("b2") == bracket(B.generator("b"), B.generator("b")));
  }

  TEST_CASE("dual scales") {
    const TruncatedAlgebra A = truncated_monogenic(4, 6);
    CHECK(A.dual_scale == std::vector<Rational>{1, 2, 2, 8, 4});
    CHECK(A.dual_names == std::vector<std::string>{"a", "a2", "a3", "a4", "a5"});
  }

  TEST_CASE("validation") {
    TruncatedAlgebra bad;
    bad.basis = {{"1", 0}, {"u", 1}};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    TruncatedAlgebra noncomm = truncated_monogenic(4, 3);
    noncomm.basis.push_back({"v", 3});
    noncomm.product[{1, 3}] = {};
    noncomm.product[{3, 3}] = {};
    noncomm.dual_names.clear();
    noncomm.dual_scale.clear();
    CHECK_NOTHROW(noncomm.validate());
    noncomm.basis.push_back({"w", 7});
    noncomm.product[{1, 3}] = {{4, Rational(1)}};
    CHECK_THROWS_AS(noncomm.validate(), std::invalid_argument);  // u v = w but v u = 0
    CHECK_THROWS_AS(truncated_monogenic(3, 3), std::invalid_argument);
  }

  TEST_CASE("homology of lstar is concentrated in two degrees") {
    for (int k : {3, 4}) {
      const DglPresentation A = lstar(truncated_monogenic(4, k));
      for (int n = 1; n <= 4 * k; ++n) {
        CAPTURE(n);
        CHECK(homology_dimension(A, n) == (n == 3 || n == 4 * k - 2 ? 1u : 0u));
      }
    }
  }
}
