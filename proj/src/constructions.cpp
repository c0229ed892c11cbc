#include "dglforge/constructions.hpp"

#include "dglforge/parallel.hpp"
#include "dglforge/quillen.hpp"
#include "dglforge/quotient.hpp"

#include <set>
#include <unordered_map>

namespace dglforge {

Budget::Budget(double seconds) : limit_(seconds) {}

bool Budget::expired() const { return limit_ && elapsed_seconds() > *limit_; }

double Budget::elapsed_seconds() const {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
}

namespace {

LieElement gen(const DglPresentation& p, const std::string& name) { return p.generator(name); }

std::string a_name(int i) { return i == 1 ? "a" : "a" + std::to_string(i); }

Rational sign_pow(int n) { return Rational(n % 2 == 0 ? 1 : -1); }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("construction check failed: " + what);
}

}  // namespace

DglPresentation build_connected_sum(int k) {
  if (k < 3) throw std::invalid_argument("k must be at least 3");
  const DglPresentation A = lstar(truncated_monogenic(4, k + 1, "a"));
  const DglPresentation B = lstar(truncated_monogenic(2 * k, 3, "b"));
  Alphabet alphabet;
  alphabet.add(Generator{"a", 3, 1});
  for (int i = 2; i < k; ++i) alphabet.add(Generator{a_name(i), 4 * i - 1, i});
  alphabet.add(Generator{"b", B.alphabet().degree(B.alphabet().at("b")), 1});
  alphabet.add(Generator{"c", 4 * k - 1, k});
  DglPresentation L(alphabet);
  for (int i = 2; i < k; ++i)
    L.set_differential(alphabet.at(a_name(i)), rename_into(A.differential(a_name(i)), A.alphabet(), alphabet));
  const LieElement dak = rename_into(A.differential(a_name(k)), A.alphabet(), alphabet);
  const LieElement b = gen(L, "b");
  L.set_differential(alphabet.at("c"), -bracket(b, b) - dak);
  return L;
}

LieElement compute_f(const DglPresentation& L, int k) {
  const LieElement a = gen(L, "a");
  const LieElement b = gen(L, "b");
  // da_k = -dc - [b,b]
  const LieElement dak = -L.differential("c") - bracket(b, b);
  const LieElement target = bracket(a, dak);
  SearchSpace space;
  for (int i = 1; i < k; ++i) space.letters.push_back(L.alphabet().at(a_name(i)));
  space.min_weight = 2;
  space.max_weight = 2;
  space.degree = 4 * k + 2;
  auto f = solve_boundary(L, target, space);
  require(f.has_value(), "[a, da_k] is not a boundary in L^[2](a, ..., a_{k-1})");
  return *f;
}

LieElement compute_f(int k) { return compute_f(build_connected_sum(k), k); }

DglPresentation build_product_model(const DglPresentation& L, const DglPresentation& Lp) {
  const auto fl = L.declared_filtration();
  const auto fp = Lp.declared_filtration();
  if (!fl || !fp) throw std::invalid_argument("product model needs filtrations on both factors");
  DglPresentation out = disjoint_union(L, Lp);
  const std::size_t shift = L.size();
  for (Letter x : L.alphabet().letters()) {
    if (fl->stage[x] != 1) continue;
    for (Letter y : Lp.alphabet().letters()) {
      if (fp->stage[y] != 1) continue;
      const Letter yy = static_cast<Letter>(y + shift);
      const auto& ax = out.alphabet();
      const std::string name = "s(" + ax[x].name + "*" + ax[yy].name + ")";
      const LieElement d = bracket(LieElement::generator(x, ax.degree(x)), LieElement::generator(yy, ax.degree(yy)));
      out.add_generator(Generator{name, ax.degree(x) + ax.degree(yy) + 1, 2}, d);
    }
  }
  return out;
}

LieElement compute_gamma(const DglPresentation& product, const LieElement& alpha, const LieElement& alpha_p) {
  const int n = *alpha.degree();
  const LieElement target = sign_pow(n + 1) * bracket(alpha, alpha_p);
  const auto f = product.declared_filtration();
  require(f.has_value(), "product model carries a filtration");
  SearchSpace space;
  for (Letter l : product.alphabet().letters())
    if (f->stage[l] == 1 || product.alphabet()[l].name.rfind("s(", 0) == 0) space.letters.push_back(l);
  space.min_weight = 5;
  space.max_weight = 5;
  space.degree = 2 * n + 1;
  auto g = solve_boundary(product, target, space);
  require(g.has_value(), "(-1)^{n+1}[alpha, alpha'] is not a boundary in L^[5] of the first stages");
  return *g;
}

namespace {

LieElement alpha_in(const DglPresentation& P, const std::string& suffix) {
  const LieElement b = gen(P, "b" + suffix);
  return bracket(gen(P, "a" + suffix), bracket(b, b));
}

}  // namespace

LkBundle build_Lk(int k) {
  const DglPresentation L = build_connected_sum(k);
  const LieElement f = compute_f(L, k);
  const DglPresentation P = build_product_model(L, with_suffix(L, "'"));
  const LieElement gamma = compute_gamma(P, alpha_in(P, ""), alpha_in(P, "'"));
  return assemble_Lk(k, f, gamma);
}

LkBundle assemble_Lk(int k, const LieElement& f, const LieElement& gamma) {
  LkBundle out;
  out.k = k;
  out.L = build_connected_sum(k);
  const DglPresentation Lp = with_suffix(out.L, "'");
  out.product = build_product_model(out.L, Lp);
  const DglPresentation& P = out.product;
  const Alphabet& ap = P.alphabet();

  require(extend_derivation(out.L, f) ==
              bracket(gen(out.L, "a"), -out.L.differential("c") - bracket(gen(out.L, "b"), gen(out.L, "b"))),
          "df = [a, da_k]");
  require(f.is_zero() || (f.min_weight() == 2 && f.max_weight() == 2 && *f.degree() == 4 * k + 2),
          "f in L^[2] of degree 4k+2");
  out.f = rename_into(f, out.L.alphabet(), ap);
  out.f_p = rename_into(f, Lp.alphabet(), ap);
  out.alpha = alpha_in(P, "");
  out.alpha_p = alpha_in(P, "'");
  out.alpha_hat = bracket(gen(P, "a"), gen(P, "c")) - out.f;
  out.alpha_hat_p = bracket(gen(P, "a'"), gen(P, "c'")) - out.f_p;
  out.n = *out.alpha.degree();
  require(extend_derivation(P, out.alpha_hat) == out.alpha, "d alpha_hat = alpha");
  require(extend_derivation(P, out.alpha_hat_p) == out.alpha_p, "d alpha_hat' = alpha'");

  out.gamma = gamma;
  require(extend_derivation(P, out.gamma) == sign_pow(out.n + 1) * bracket(out.alpha, out.alpha_p),
          "d gamma = (-1)^{n+1}[alpha, alpha']");

  const LieElement dv = bracket(out.alpha, out.alpha_hat_p) + out.gamma;
  out.Lk = P;
  out.Lk.add_generator(Generator{"v", *dv.degree() + 1, k + 1}, dv);
  require(*dv.degree() + 1 == 8 * k + 4, "|v| = 8k+4");
  require(check_d_squared(out.Lk, 8 * k + 5).ok, "d^2 = 0");
  out.declared = *out.Lk.declared_filtration();
  require(is_valid_decomposition(out.Lk, out.declared), "declared stages form a decomposition");
  const auto greedy = infer_decomposition(out.Lk);
  require(greedy.has_value(), "greedy decomposition exists");
  out.greedy = *greedy;
  return out;
}

std::vector<Letter> lower_letters(const LkBundle& bundle) {
  std::vector<Letter> out;
  for (Letter l : bundle.Lk.alphabet().letters()) {
    const auto& name = bundle.Lk.alphabet()[l].name;
    if (name != "c" && name != "c'" && name != "v") out.push_back(l);
  }
  return out;
}

// -------------------------------------------------------------- category

CatResult cat_certificate_data(const LkBundle& bundle) {
  CatResult r;
  r.before = bundle.Lk;
  const Letter w = r.before.add_generator(Generator{"w", bundle.n + 1, 1});
  const Letter v = r.before.alphabet().at("v");
  const LieElement wg = LieElement::generator(w, bundle.n + 1);
  const LieElement shifted = wg + bundle.alpha_hat;
  r.substitution[w] = shifted;
  r.substitution[v] = r.before.generator("v") - bracket(shifted, bundle.alpha_hat_p);
  r.after = substitute_generators(r.before, r.substitution);
  r.dv_after = r.after.differential(v);
  r.dv_expected = bundle.gamma + sign_pow(bundle.n) * bracket(wg, bundle.alpha_p);
  r.identity_holds = r.dv_after == r.dv_expected;
  r.greedy_before = *infer_decomposition(r.before);
  if (auto g = infer_decomposition(r.after)) r.greedy_after = *g;
  return r;
}

// ---------------------------------------------------- correction system

namespace {

bool touches(const Word& w, const std::vector<bool>& outside) {
  for (Letter l : w)
    if (outside[l]) return true;
  return false;
}

struct Prop51System {
  std::vector<LieBasisElement> basis;  // columns that can reach the rows
  std::size_t total_basis = 0;
  std::vector<bool> outside;
};

Prop51System prop51_columns(const LkBundle& bundle) {
  const Alphabet& a = bundle.Lk.alphabet();
  Prop51System s;
  s.outside.assign(a.size(), false);
  for (const char* name : {"c", "c'"}) s.outside[a.at(name)] = true;
  std::vector<Letter> letters;
  for (Letter l : a.letters())
    if (a[l].name != "v") letters.push_back(l);
  auto all = lie_basis(a, letters, 8 * bundle.k + 4);
  for (auto& b : all) {
    if (b.word.size() < 2) continue;
    ++s.total_basis;
    if (touches(b.word, s.outside)) s.basis.push_back(std::move(b));
  }
  return s;
}

}  // namespace

Prop51Result check_prop51(const LkBundle& bundle, const Prop51Options& options) {
  const DglPresentation& P = bundle.Lk;
  const Alphabet& a = P.alphabet();
  Prop51Result r;
  for (const char* name : {"c", "c'"}) r.outside.push_back(a.at(name));
  if (options.control) {
    const LieElement X = bracket(bracket(P.generator("a"), P.generator("c")), bracket(P.generator("a'"), P.generator("c'")));
    r.rhs = extend_derivation(P, X) + bundle.gamma;
  } else {
    r.rhs = P.differential("v");
  }

  Prop51System sys = prop51_columns(bundle);
  r.dimensions["degree"] = static_cast<std::size_t>(8 * bundle.k + 4);
  r.dimensions["basis_weight_ge_2"] = sys.total_basis;
  r.dimensions["columns"] = sys.basis.size();
  if (options.budget.expired()) throw BudgetExhausted("basis enumeration", r.dimensions);

  // Columns: d of each basis element, on super-Lyndon words meeting c or c'.
  std::vector<std::vector<std::pair<Word, Rational>>> cols(sys.basis.size());
  std::atomic<bool> stop{false};
  parallel_for(sys.basis.size(), [&](std::size_t j) {
    if (stop || options.budget.expired()) {
      stop = true;
      return;
    }
    const LieElement d = extend_derivation(P, LieElement::from_tree(sys.basis[j].tree));
    for (const auto& [w, c] : d.coords())
      if (touches(w, sys.outside) && is_super_lyndon(w, a)) cols[j].emplace_back(w, c);
  });
  if (stop) throw BudgetExhausted("column assembly", r.dimensions);

  std::map<Word, int> rows;
  for (const auto& col : cols)
    for (const auto& [w, c] : col) rows.emplace(w, 0);
  for (const auto& [w, c] : r.rhs.coords())
    if (touches(w, sys.outside) && is_super_lyndon(w, a)) rows.emplace(w, 0);
  std::vector<Word> words;
  int i = 0;
  for (auto& [w, idx] : rows) {
    idx = i++;
    words.push_back(w);
  }
  std::vector<Triplet<Rational>> t;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [w, c] : cols[j]) t.emplace_back(rows.at(w), static_cast<int>(j), c);
  const auto M = sparse_from_triplets<Rational>(i, static_cast<int>(cols.size()), t);
  RationalVector b = RationalVector::Constant(i, Rational(0));
  for (const auto& [w, c] : r.rhs.coords())
    if (auto it = rows.find(w); it != rows.end()) b(it->second) = c;
  r.dimensions["rows"] = static_cast<std::size_t>(i);
  r.dimensions["nonzeros"] = static_cast<std::size_t>(M.nonZeros());
  if (options.budget.expired()) throw BudgetExhausted("matrix assembly", r.dimensions);

  if (options.modular_prepass) r.modular_feasible = modular_feasible(M, b);
  if (options.budget.expired()) throw BudgetExhausted("modular pre-pass", r.dimensions);

  if (auto y = infeasibility_witness(M, b)) {
    r.feasible = false;
    for (int k = 0; k < y->size(); ++k)
      if (!(*y)(k).is_zero()) r.farkas.emplace_back(words[static_cast<std::size_t>(k)], (*y)(k));
    r.dimensions["farkas_support"] = r.farkas.size();
  } else {
    auto x = solve(M, b);
    r.feasible = true;
    r.witness_x = LieElement::from_coords({}, 8 * bundle.k + 4);
    for (std::size_t j = 0; j < sys.basis.size(); ++j)
      if (!(*x)(static_cast<int>(j)).is_zero())
        r.witness_x += (*x)(static_cast<int>(j)) * LieElement::from_tree(sys.basis[j].tree);
  }
  return r;
}

bool verify_prop51(const LkBundle& bundle, const Prop51Result& r) {
  const DglPresentation& P = bundle.Lk;
  std::vector<bool> outside(P.size(), false);
  for (Letter l : r.outside) outside[l] = true;
  const auto lower = lower_letters(bundle);
  // Lower generators must stay lower, so only columns meeting c, c' matter.
  for (Letter l : lower)
    if (!in_subalgebra_by_support(P.differential(l), lower)) return false;
  if (r.feasible) {
    const Letter v = P.alphabet().at("v");
    if (!r.witness_x.is_zero() &&
        (r.witness_x.min_weight() < 2 || *r.witness_x.degree() != 8 * bundle.k + 4))
      return false;
    for (Letter l : r.witness_x.support_letters())
      if (l == v) return false;
    const LieElement diff = extend_derivation(P, r.witness_x) - r.rhs;
    return in_subalgebra_by_support(diff, lower);
  }
  if (r.farkas.empty()) return false;
  std::map<Word, Rational> y;
  for (const auto& [w, c] : r.farkas) {
    if (!touches(w, outside)) return false;
    y.emplace(w, c);
  }
  auto dot = [&](const LieElement& e) {
    Rational acc(0);
    for (const auto& [w, c] : e.coords())
      if (auto it = y.find(w); it != y.end()) acc += it->second * c;
    return acc;
  };
  if (dot(r.rhs).is_zero()) return false;
  const Prop51System sys = prop51_columns(bundle);
  std::vector<char> ok(sys.basis.size(), 1);
  parallel_for(sys.basis.size(), [&](std::size_t j) {
    ok[j] = dot(extend_derivation(P, LieElement::from_tree(sys.basis[j].tree))).is_zero() ? 1 : 0;
  });
  return std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
}

// ------------------------------------------------- cancellation identity

ClaimResult verify_claim_identity(const LkBundle& bundle) {
  const DglPresentation& P = bundle.Lk;
  ClaimResult r;
  const LieElement a = P.generator("a"), c = P.generator("c"), ap = P.generator("a'"), cp = P.generator("c'");
  const LieElement ac = bracket(a, c), apcp = bracket(ap, cp);
  const LieElement X = bracket(ac, apcp);
  const LieElement Y = bracket(bundle.f, apcp) + bracket(ac, bundle.f_p);
  const LieElement dX = extend_derivation(P, X), dY = extend_derivation(P, Y);
  const LieElement tail = bracket(ac, bundle.alpha_p);
  const auto lower = lower_letters(bundle);

  r.remainder = bracket(bundle.alpha, apcp) - dX + dY + tail;
  r.remainder_in_lower = in_subalgebra_by_support(r.remainder, lower);
  const LieElement df = extend_derivation(P, bundle.f), dfp = extend_derivation(P, bundle.f_p);
  const LieElement reduced =
      bracket(bundle.f, bundle.alpha_p) + bracket(bundle.f, dfp) + bracket(bundle.alpha, bundle.f_p) + bracket(df, bundle.f_p);
  r.remainder_matches_reduced = r.remainder == reduced;
  r.literal = dY + dX + tail;
  r.literal_in_lower = in_subalgebra_by_support(r.literal, lower);

  const std::vector<Letter> four{P.alphabet().at("a"), P.alphabet().at("c"), P.alphabet().at("a'"),
                                 P.alphabet().at("c'")};
  const auto multilinear = multidegree_component(P.alphabet(), four);
  r.multilinear_dimension = multilinear.size();
  std::vector<LieElement> elems;
  for (const auto& t : multilinear) elems.push_back(LieElement::from_tree(t));
  r.multilinear_rank = rank(subspace_matrix(elems).matrix);

  // Quotient of the product model by the list of brackets and s-generators.
  const DglPresentation& Q = bundle.product;
  std::vector<LieElement> ideal;
  for (Letter l : Q.alphabet().letters())
    if (Q.alphabet()[l].name.rfind("s(", 0) == 0) ideal.push_back(LieElement::generator(l, Q.alphabet().degree(l)));
  auto g = [&](const std::string& n) { return Q.generator(n); };
  for (const auto& [x, y] : std::vector<std::pair<std::string, std::string>>{
           {"a", "a'"}, {"a", "b'"}, {"b", "a'"}, {"b", "b'"}, {"a", "c'"}, {"a'", "a'"}})
    ideal.push_back(bracket(g(x), g(y)));
  for (int i = 2; i < bundle.k; ++i) ideal.push_back(bracket(g("a"), g(a_name(i) + "'")));
  QuotientComplex quotient(Q, ideal, 8 * bundle.k + 4);
  const LieElement qa = g("a"), qb = g("b");
  r.quotient_class_nonzero =
      !quotient.is_zero_class(bracket(bracket(qa, bracket(qb, qb)), bracket(g("a'"), g("c'"))));
  return r;
}

}  // namespace dglforge
