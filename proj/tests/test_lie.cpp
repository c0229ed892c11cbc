#include "dglforge/lie.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace dglforge;

namespace {

Alphabet alphabet_of(const std::vector<int>& degrees) {
  Alphabet a;
  for (std::size_t i = 0; i < degrees.size(); ++i) a.add(Generator{std::string(1, static_cast<char>('x' + i)), degrees[i], std::nullopt});
  return a;
}

LieElement random_element(std::mt19937& rng, const Alphabet& a, int degree) {
  const auto basis = lie_basis(a, a.letters(), degree);
  LieElement e = LieElement::from_coords({}, degree);
  std::uniform_int_distribution<int> c(-3, 3);
  for (const auto& b : basis) e += Rational(c(rng)) * LieElement::from_tree(b.tree);
  return e;
}

int deg(const LieElement& e) { return *e.degree(); }

}  // namespace

TEST_SUITE("lie") {
  TEST_CASE("graded bracket signs") {
    Alphabet a({{"a", 3, {}}, {"e", 4, {}}});
    const LieElement x = LieElement::generator(a, "a"), y = LieElement::generator(a, "e");
    // Odd elements commute with themselves up to a factor: [a,a] = 2aa.
    CHECK(bracket(x, x).coords() == TensorPoly::monomial({0, 0}, Rational(2)));
    CHECK(bracket(y, y).is_zero());
    CHECK(bracket(x, y) == -bracket(y, x));
    CHECK(bracket(x, bracket(x, x)).is_zero());
    CHECK(*bracket(x, y).degree() == 7);
  }

  TEST_CASE("antisymmetry and Jacobi on random elements") {
    std::mt19937 rng(3);
    const Alphabet a = alphabet_of({1, 2, 3});
    for (int t = 0; t < 12; ++t) {
      const LieElement x = random_element(rng, a, 1 + t % 3), y = random_element(rng, a, 2 + t % 4),
                       z = random_element(rng, a, 3 + t % 2);
      CHECK(bracket(x, y) == Rational(-koszul_sign(deg(x), deg(y))) * bracket(y, x));
      const LieElement jac = Rational(koszul_sign(deg(x), deg(z))) * bracket(x, bracket(y, z)) +
                             Rational(koszul_sign(deg(y), deg(x))) * bracket(y, bracket(z, x)) +
                             Rational(koszul_sign(deg(z), deg(y))) * bracket(z, bracket(x, y));
      CHECK(jac.is_zero());
    }
  }

  TEST_CASE("Lyndon and super-Lyndon words") {
    const Alphabet a = alphabet_of({1, 2});
    CHECK(is_lyndon({0, 1}));
    CHECK(is_lyndon({0, 0, 1}));
    CHECK_FALSE(is_lyndon({1, 0}));
    CHECK_FALSE(is_lyndon({0, 1, 0, 1}));
    CHECK(is_super_lyndon({0, 0}, a));       // odd letter squared
    CHECK_FALSE(is_super_lyndon({1, 1}, a));  // even letter squared
    CHECK(is_super_lyndon({0, 1, 0, 1}, a));  // (01)(01), 01 odd
    CHECK(standard_bracketing({0, 0, 1}, a).to_string(a) == "[x,[x,y]]");
  }

  TEST_CASE("basis dimensions match the right-normed oracle and the PBW formula") {
    const std::vector<std::pair<std::vector<int>, int>> cases{
        {{1}, 12}, {{1, 2}, 11}, {{2, 3}, 20}, {{3, 4, 5}, 20}, {{1, 2, 3}, 9}, {{3, 7, 5}, 20}};
    for (const auto& [degrees, top] : cases) {
      const Alphabet a = alphabet_of(degrees);
      const auto pbw = oracle::pbw_dimensions(degrees, top);
      for (int n = 1; n <= top; ++n) {
        const auto span = spanning_set(a, n);
        CAPTURE(n);
        CHECK(static_cast<std::int64_t>(span.size()) == pbw[static_cast<std::size_t>(n)]);
        CHECK(span.size() == oracle::right_normed_rank(degrees, n));
        std::vector<LieElement> elems;
        for (const auto& t : span) elems.push_back(LieElement::from_tree(t));
        if (!elems.empty()) CHECK(rank(subspace_matrix(elems).matrix) == span.size());
      }
    }
  }

  TEST_CASE("multilinear component on four distinct letters has dimension 6") {
    Alphabet a({{"a", 3, {}}, {"c", 11, {}}, {"a'", 3, {}}, {"c'", 11, {}}});
    const std::vector<Letter> four{0, 1, 2, 3};
    const auto comp = multidegree_component(a, four);
    CHECK(comp.size() == 6);
    std::vector<LieElement> elems;
    for (const auto& t : comp) elems.push_back(LieElement::from_tree(t));
    CHECK(rank(subspace_matrix(elems).matrix) == 6);
    CHECK(multidegree_basis(a, Multidegree{1, 1, 1, 1}).size() == 6);
    const std::vector<Letter> repeated{0, 0, 1};
    CHECK_THROWS_AS(multidegree_component(a, repeated), std::invalid_argument);
  }

  TEST_CASE("lie_terms rewrites in the basis and rejects non-Lie coordinates") {
    std::mt19937 rng(9);
    const Alphabet a = alphabet_of({1, 2, 3});
    for (int n = 2; n <= 8; ++n) {
      const LieElement e = random_element(rng, a, n);
      LieElement back = LieElement::from_coords({}, n);
      for (const auto& [t, c] : lie_terms(e, a)) back += c * LieElement::from_tree(t);
      CHECK(back == e);
    }
    CHECK_THROWS_AS(lie_terms(LieElement::from_coords(TensorPoly::monomial({0, 1}), 3), a), std::domain_error);
  }

  TEST_CASE("display form") {
    Alphabet a({{"a", 3, {}}, {"a2", 7, {}}, {"b", 5, {}}});
    const LieElement x = LieElement::generator(a, "a"), y = LieElement::generator(a, "a2"), b = LieElement::generator(a, "b");
    CHECK(to_string(-bracket(b, b) - bracket(x, y), a) == "-[a,a2] - [b,b]");
    CHECK(to_string(Rational(1, 4) * bracket(y, y), a) == "1/4 [a2,a2]");
    CHECK(to_string(LieElement{}, a) == "0");
  }

  TEST_CASE("letter substitution is an algebra map") {
    Alphabet a({{"a", 3, {}}, {"b", 5, {}}});
    const LieElement x = LieElement::generator(a, "a"), b = LieElement::generator(a, "b");
    const std::vector<LieElement> images{x, b + bracket(x, bracket(x, x))};
    CHECK(substitute_letters(bracket(x, b), images) == bracket(x, b));  // [a,[a,[a,a]]] = 0
    const std::vector<LieElement> swap{x, Rational(2) * b};
    CHECK(substitute_letters(bracket(b, b), swap) == Rational(4) * bracket(b, b));
  }

  TEST_CASE("ideal membership by multidegree") {
    Alphabet a({{"a", 3, {}}, {"b", 5, {}}, {"c", 7, {}}});
    const LieElement x = LieElement::generator(a, "a"), y = LieElement::generator(a, "b"), z = LieElement::generator(a, "c");
    const std::vector<LieElement> gens{bracket(x, y)};
    MultigradedIdeal I(gens, a, a.letters());
    CHECK(I.contains(bracket(z, bracket(x, y))));
    CHECK(I.contains(bracket(x, bracket(x, y))));
    CHECK_FALSE(I.contains(bracket(x, z)));
    CHECK_FALSE(I.contains(bracket(y, bracket(x, z))));
    const auto span = ideal_span_in_degree(gens, a, a.letters(), 15);
    // Only the multidegree (1,1,1) meets the ideal in degree 15.
    CHECK(span.size() == 1);
  }
}
