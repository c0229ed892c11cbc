#include "dglforge/dgl.hpp"
#include "dglforge/quillen.hpp"

#include <doctest.h>

#include <random>

using namespace dglforge;

namespace {

// L(a,b,e,f): |a|=1, |b|=3, |e|=4, |f|=6, db=[a,a], df=[a,e]+[a,[a,b]].
DglPresentation length_three_example() {
  DglPresentation p(Alphabet({{"a", 1, {}}, {"b", 3, {}}, {"e", 4, {}}, {"f", 6, {}}}));
  const LieElement a = p.generator("a"), b = p.generator("b"), e = p.generator("e");
  p.set_differential(p.alphabet().at("b"), bracket(a, a));
  p.set_differential(p.alphabet().at("f"), bracket(a, e) + bracket(a, bracket(a, b)));
  return p;
}

DglPresentation cone(int x_degree) {
  DglPresentation p(Alphabet({{"x", x_degree, {}}, {"y", x_degree + 1, {}}}));
  p.set_differential(1, p.generator("x"));
  return p;
}

}  // namespace

TEST_SUITE("dgl") {
  TEST_CASE("derivation rule") {
    const DglPresentation A = lstar(truncated_monogenic(4, 5));
    const LieElement a = A.generator("a"), a2 = A.generator("a2");
    CHECK(extend_derivation(A, bracket(a, a)).is_zero());
    CHECK(extend_derivation(A, bracket(a2, a2)) == Rational(4) * bracket(a, bracket(a, a2)));
    CHECK(extend_derivation(A, A.differential("a4")).is_zero());
    // Leibniz with the sign of the left factor.
    const LieElement x = bracket(a, a2);
    CHECK(extend_derivation(A, x) == bracket(A.differential("a"), a2) - bracket(a, A.differential("a2")));
  }

  TEST_CASE("set_differential validates degree and letters") {
    DglPresentation p(Alphabet({{"a", 3, {}}, {"b", 5, {}}}));
    CHECK_THROWS_AS(p.set_differential(1, p.generator("a")), std::invalid_argument);
    CHECK_NOTHROW(p.set_differential(1, {}));
    Alphabet other({{"a", 3, {}}, {"b", 5, {}}, {"z", 4, {}}});
    CHECK_THROWS_AS(p.set_differential(1, LieElement::generator(other, "z")), std::invalid_argument);
  }

  TEST_CASE("d squared") {
    CHECK(check_d_squared(DglPresentation(Alphabet({{"a", 2, {}}, {"b", 3, {}}})), 10).ok);
    CHECK(check_d_squared(length_three_example(), 10).ok);
    // d b = [a,a] with da = x makes d^2 b = 2[x,a] != 0.
    DglPresentation bad(Alphabet({{"x", 2, {}}, {"a", 3, {}}, {"b", 7, {}}}));
    bad.set_differential(1, bad.generator("x"));
    bad.set_differential(2, bracket(bad.generator("a"), bad.generator("a")));
    const D2Report r = check_d_squared(bad, 10);
    CHECK_FALSE(r.ok);
    REQUIRE(r.first_failure.has_value());
    CHECK(bad.alphabet()[*r.first_failure].name == "b");
    CHECK_THROWS_AS(require_d_squared(bad, 10), std::invalid_argument);
  }

  TEST_CASE("homology of an acyclic cone vanishes") {
    for (int d : {2, 3}) {
      const DglPresentation p = cone(d);
      for (int n = 1; n <= 14; ++n) CHECK(homology_dimension(p, n) == 0);
    }
  }

  TEST_CASE("homology of a sphere model") {
    // L(x), |x| = 2: H = Q x in degree 2 and zero elsewhere ([x,x] = 0).
    const DglPresentation even(Alphabet({{"x", 2, {}}}));
    CHECK(homology_dimension(even, 2) == 1);
    CHECK(homology_dimension(even, 4) == 0);
    // |x| = 3: x and [x,x].
    const DglPresentation odd(Alphabet({{"x", 3, {}}}));
    CHECK(homology_dimension(odd, 3) == 1);
    CHECK(homology_dimension(odd, 6) == 1);
    CHECK(homology_dimension(odd, 9) == 0);
    CHECK(indecomposables_homology(cone(3), 3) == 0);
  }

  TEST_CASE("solve_boundary") {
    const DglPresentation p = cone(2);
    const auto s = solve_boundary(p, p.generator("x"), SearchSpace{p.alphabet().letters(), 1, std::nullopt, 3});
    REQUIRE(s.has_value());
    CHECK(*s == p.generator("y"));
    const DglPresentation A = lstar(truncated_monogenic(4, 4));
    // [a,a2] is not a boundary of weight-2 elements of L(a) in degree 11, but is d a3.
    const LieElement t = bracket(A.generator("a"), A.generator("a2"));
    const auto r = solve_boundary_with_witness(A, t, SearchSpace{{A.alphabet().at("a"), A.alphabet().at("a2")}, 2, 2, 11});
    CHECK_FALSE(r.solution.has_value());
    CHECK_FALSE(r.farkas.empty());
    CHECK(solve_boundary(A, t, SearchSpace{A.alphabet().letters(), 1, std::nullopt, 11}) == A.generator("a3"));
    CHECK_THROWS_AS(solve_boundary(A, A.generator("a2"), SearchSpace{A.alphabet().letters(), 1, std::nullopt, 8}),
                    std::invalid_argument);
  }

  TEST_CASE("greedy decomposition and a length-reducing substitution") {
    const DglPresentation p = length_three_example();
    const auto before = infer_decomposition(p);
    REQUIRE(before.has_value());
    CHECK(before->length() == 3);
    CHECK(is_valid_decomposition(p, *before));
    const Letter e = p.alphabet().at("e");
    const std::map<Letter, LieElement> subst{{e, p.generator("e") + bracket(p.generator("a"), p.generator("b"))}};
    const DglPresentation q = substitute_generators(p, subst);
    CHECK(q.differential("f") == bracket(q.generator("a"), q.generator("e")));
    CHECK(q.differential("e").is_zero());
    const auto after = infer_decomposition(q);
    REQUIRE(after.has_value());
    CHECK(after->length() == 2);
    // A non-invertible change of generators is rejected.
    const std::map<Letter, LieElement> bad{{e, bracket(p.generator("a"), p.generator("b"))}};
    CHECK_THROWS_AS(substitute_generators(p, bad), std::invalid_argument);
  }

  TEST_CASE("membership by support agrees with the rank test") {
    std::mt19937 rng(21);
    Alphabet a({{"a", 2, {}}, {"b", 3, {}}, {"c", 5, {}}});
    std::uniform_int_distribution<int> c(-2, 2);
    for (int n = 5; n <= 12; ++n) {
      LieElement e = LieElement::from_coords({}, n);
      for (const auto& t : spanning_set(a, n)) e += Rational(c(rng)) * LieElement::from_tree(t);
      for (const std::vector<Letter>& letters : {std::vector<Letter>{0, 1}, std::vector<Letter>{0, 2}, std::vector<Letter>{0, 1, 2}}) {
        CHECK(in_subalgebra_by_support(e, letters) == in_subalgebra_by_rank(e, a, letters));
        LieElement sub = LieElement::from_coords({}, n);
        for (const auto& t : spanning_set(a, letters, n)) sub += Rational(c(rng)) * LieElement::from_tree(t);
        CHECK(in_subalgebra_by_support(sub, letters));
        CHECK(in_subalgebra_by_rank(sub, a, letters));
      }
    }
  }

  TEST_CASE("renaming, disjoint union and suffixes") {
    const DglPresentation p = length_three_example();
    const DglPresentation q = with_suffix(p, "'");
    CHECK(q.alphabet().names() == std::vector<std::string>{"a'", "b'", "e'", "f'"});
    const DglPresentation u = disjoint_union(p, q);
    CHECK(u.size() == 8);
    CHECK(u.differential("f'") == rename_into(p.differential("f"), q.alphabet(), u.alphabet()));
    CHECK(check_d_squared(u, 10).ok);
    CHECK_THROWS(disjoint_union(p, p));
  }
}
