#include "dglforge/constructions.hpp"
#include "dglforge/quillen.hpp"

#include <doctest.h>

using namespace dglforge;

namespace {

const LkBundle& bundle3() {
  static const LkBundle b = build_Lk(3);
  return b;
}

std::vector<int> degrees(const DglPresentation& p) {
  std::vector<int> out;
  for (Letter l : p.alphabet().letters()) out.push_back(p.alphabet().degree(l));
  return out;
}

}  // namespace

TEST_SUITE("constructions") {
  TEST_CASE("connected sum") {
    const DglPresentation L = build_connected_sum(3);
    CHECK(L.alphabet().names() == std::vector<std::string>{"a", "a2", "b", "c"});
    CHECK(degrees(L) == std::vector<int>{3, 7, 5, 11});
    const LieElement b = L.generator("b");
    CHECK(L.differential("c") == -bracket(b, b) - bracket(L.generator("a"), L.generator("a2")));
    CHECK(check_d_squared(L, 12).ok);
    for (int k : {3, 4, 5}) CHECK(infer_decomposition(build_connected_sum(k))->length() == k);
    CHECK_THROWS_AS(build_connected_sum(2), std::invalid_argument);
  }

  TEST_CASE("f witness") {
    const DglPresentation L = build_connected_sum(3);
    const LieElement f = compute_f(L, 3);
    const LieElement a2 = L.generator("a2");
    CHECK(f == Rational(1, 4) * bracket(a2, a2));
    const LieElement a = L.generator("a"), b = L.generator("b");
    CHECK(extend_derivation(L, bracket(a, L.generator("c")) - f) == bracket(a, bracket(b, b)));
    for (int k : {4, 5}) {
      const DglPresentation Lk = build_connected_sum(k);
      const LieElement fk = compute_f(Lk, k);
      const LieElement dak = -Lk.differential("c") - bracket(Lk.generator("b"), Lk.generator("b"));
      CHECK(extend_derivation(Lk, fk) == bracket(Lk.generator("a"), dak));
      CHECK(fk.min_weight() == 2);
      CHECK(fk.max_weight() == 2);
      CHECK(*fk.degree() == 4 * k + 2);
    }
  }

  TEST_CASE("product model") {
    const DglPresentation L = build_connected_sum(3);
    const DglPresentation P = build_product_model(L, with_suffix(L, "'"));
    const auto names = P.alphabet().names();
    REQUIRE(names.size() == 12);
    CHECK(std::vector<std::string>(names.end() - 4, names.end()) ==
          std::vector<std::string>{"s(a*a')", "s(a*b')", "s(b*a')", "s(b*b')"});
    const auto deg = degrees(P);
    CHECK(std::vector<int>(deg.end() - 4, deg.end()) == std::vector<int>{7, 9, 9, 11});
    CHECK(P.differential("s(a*b')") == bracket(P.generator("a"), P.generator("b'")));
    CHECK(*P.alphabet()[P.alphabet().at("s(a*a')")].filtration == 2);
    CHECK(check_d_squared(P, 12).ok);
    CHECK(infer_decomposition(P)->length() == 3);
    CHECK_THROWS_AS(build_product_model(DglPresentation(Alphabet({{"x", 3, {}}})), with_suffix(L, "'")),
                    std::invalid_argument);
  }

  TEST_CASE("gamma and the assembled L_3") {
    const LkBundle& b = bundle3();
    const DglPresentation& P = b.Lk;
    CHECK(b.n == 13);
    CHECK(extend_derivation(P, b.alpha_hat) == b.alpha);
    CHECK(extend_derivation(P, b.gamma) == bracket(b.alpha, b.alpha_p));
    CHECK(b.gamma.min_weight() == 5);
    CHECK(b.gamma.max_weight() == 5);
    for (Letter l : b.gamma.support_letters()) {
      const auto& g = P.alphabet()[l];
      CHECK((g.filtration == 1 || g.name.rfind("s(", 0) == 0));
    }
    CHECK(P.alphabet().degree(P.alphabet().at("v")) == 28);
    CHECK(P.differential("v") == bracket(b.alpha, b.alpha_hat_p) + b.gamma);
    CHECK(check_d_squared(P, 29).ok);
    CHECK(b.greedy.length() == 4);
    CHECK(b.greedy.stage[P.alphabet().at("v")] == 4);
    CHECK(b.greedy.stage[P.alphabet().at("c")] == 3);
    CHECK(b.greedy.stage[P.alphabet().at("c'")] == 3);
    CHECK(b.declared.length() == 4);
  }

  TEST_CASE("corrupting dc breaks the f-consistency point, and d^2 at v") {
    const LkBundle& bundle = bundle3();
    DglPresentation P = bundle.Lk;
    const LieElement b = P.generator("b"), bp = P.generator("b'");
    P.set_differential(P.alphabet().at("c"), -bracket(b, b));
    CHECK(extend_derivation(P, bundle.alpha_hat) != bundle.alpha);
    // dv only sees c', so d^2 v survives until c' is corrupted too.
    CHECK(check_d_squared(P, 29).ok);
    P.set_differential(P.alphabet().at("c'"), -bracket(bp, bp));
    const D2Report r = check_d_squared(P, 29);
    CHECK_FALSE(r.ok);
    REQUIRE(r.first_failure.has_value());
    CHECK(P.alphabet()[*r.first_failure].name == "v");
  }

  TEST_CASE("assemble_Lk rejects a wrong witness") {
    const LkBundle& b = bundle3();
    const DglPresentation L = build_connected_sum(3);
    CHECK_THROWS_AS(assemble_Lk(3, Rational(2) * compute_f(L, 3), b.gamma), std::logic_error);
    const DglPresentation P = build_product_model(L, with_suffix(L, "'"));
    const LieElement gamma = rename_into(b.gamma, b.Lk.alphabet(), P.alphabet());
    CHECK_NOTHROW(assemble_Lk(3, compute_f(L, 3), gamma));
    CHECK_THROWS_AS(assemble_Lk(3, compute_f(L, 3), -gamma), std::logic_error);
  }

  TEST_CASE("category certificate") {
    const CatResult r = cat_certificate_data(bundle3());
    CHECK(r.identity_holds);
    CHECK(r.dv_after == r.dv_expected);
    CHECK(r.greedy_before.length() == 4);
    CHECK(r.greedy_after.length() <= 3);
    CHECK(is_valid_decomposition(r.after, r.greedy_after));
  }

  TEST_CASE("correction system for k = 3") {
    const LkBundle& b = bundle3();
    const Prop51Result r = check_prop51(b);
    CHECK_FALSE(r.feasible);
    REQUIRE(r.modular_feasible.has_value());
    CHECK_FALSE(*r.modular_feasible);
    CHECK_FALSE(r.farkas.empty());
    CHECK(verify_prop51(b, r));
    CHECK(r.dimensions.at("degree") == 28);

    // A tampered witness fails one of the two dot-product families.
    Prop51Result bad = r;
    bad.farkas.front().second += 1;
    CHECK_FALSE(verify_prop51(b, bad));

    Prop51Options control;
    control.control = true;
    const Prop51Result c = check_prop51(b, control);
    CHECK(c.feasible);
    CHECK(c.modular_feasible == true);
    CHECK(verify_prop51(b, c));
    // The recovered witness differs from [[a,c],[a',c']] by something whose
    // boundary avoids c and c'.
    const DglPresentation& P = b.Lk;
    const LieElement X = bracket(bracket(P.generator("a"), P.generator("c")), bracket(P.generator("a'"), P.generator("c'")));
    CHECK(in_subalgebra_by_support(extend_derivation(P, c.witness_x - X), lower_letters(b)));
  }

  TEST_CASE("budget exhaustion is reported with dimensions") {
    Prop51Options o;
    o.budget = Budget(0.0);
    try {
      check_prop51(bundle3(), o);
      FAIL("expected BudgetExhausted");
    } catch (const BudgetExhausted& e) {
      CHECK(e.dimensions().count("degree") == 1);
    }
  }

  TEST_CASE("cancellation identity") {
    const ClaimResult r = verify_claim_identity(bundle3());
    CHECK(r.remainder_in_lower);
    CHECK(r.remainder_matches_reduced);
    CHECK_FALSE(r.literal_in_lower);
    CHECK(r.multilinear_dimension == 6);
    CHECK(r.multilinear_rank == 6);
    CHECK(r.quotient_class_nonzero);
  }
}
