#include "dglforge/dgl.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace dglforge {

int FiltrationAssignment::length() const {
  int m = 0;
  for (int s : stage) m = std::max(m, s);
  return m;
}

std::vector<Letter> FiltrationAssignment::below(int s) const {
  std::vector<Letter> out;
  for (std::size_t l = 0; l < stage.size(); ++l)
    if (stage[l] < s) out.push_back(static_cast<Letter>(l));
  return out;
}

// ---------------------------------------------------------- DglPresentation

DglPresentation::DglPresentation(Alphabet alphabet) : alphabet_(std::move(alphabet)) {
  for (const auto& g : alphabet_.generators()) diff_.push_back(LieElement::from_coords({}, g.degree - 1));
}

Letter DglPresentation::add_generator(Generator g, LieElement d) {
  const Letter l = alphabet_.add(std::move(g));
  diff_.push_back(LieElement::from_coords({}, alphabet_.degree(l) - 1));
  try {
    set_differential(l, std::move(d));
  } catch (...) {
    // Leave the presentation unchanged on failure.
    Alphabet rebuilt;
    for (std::size_t i = 0; i + 1 < alphabet_.size(); ++i) rebuilt.add(alphabet_[static_cast<Letter>(i)]);
    alphabet_ = std::move(rebuilt);
    diff_.pop_back();
    throw;
  }
  return l;
}

void DglPresentation::set_differential(Letter l, LieElement d) {
  if (l >= size()) throw std::out_of_range("set_differential: letter outside alphabet");
  const int target = alphabet_.degree(l) - 1;
  const std::string& name = alphabet_[l].name;
  if (d.is_zero()) {
    diff_[l] = LieElement::from_coords({}, target);
    return;
  }
  if (!d.degree() || *d.degree() != target)
    throw std::invalid_argument("differential of " + name + " must have degree " + std::to_string(target));
  for (Letter x : d.support_letters())
    if (x >= size()) throw std::invalid_argument("differential of " + name + " uses a letter outside the alphabet");
  for (const auto& [w, c] : d.coords())
    if (alphabet_.degree(w) != target)
      throw std::invalid_argument("differential of " + name + " is not homogeneous");
  diff_[l] = std::move(d);
}

int DglPresentation::max_degree() const {
  int m = 0;
  for (const auto& g : alphabet_.generators()) m = std::max(m, g.degree);
  return m;
}

bool DglPresentation::is_minimal() const {
  return std::all_of(diff_.begin(), diff_.end(), [](const LieElement& d) { return d.is_decomposable(); });
}

bool DglPresentation::is_quadratic() const {
  return std::all_of(diff_.begin(), diff_.end(),
                     [](const LieElement& d) { return d.is_zero() || (d.min_weight() == 2 && d.max_weight() == 2); });
}

std::optional<FiltrationAssignment> DglPresentation::declared_filtration() const {
  FiltrationAssignment f;
  for (const auto& g : alphabet_.generators()) {
    if (!g.filtration) return std::nullopt;
    f.stage.push_back(*g.filtration);
  }
  return f;
}

void DglPresentation::set_filtration(const FiltrationAssignment& f) {
  if (f.stage.size() != size()) throw std::invalid_argument("filtration size differs from generator count");
  for (std::size_t l = 0; l < size(); ++l) alphabet_.set_filtration(static_cast<Letter>(l), f.stage[l]);
}

// -------------------------------------------------------------- derivation

LieElement extend_derivation(const DglPresentation& p, const LieElement& e) {
  TensorPoly out;
  const Alphabet& alphabet = p.alphabet();
  Word word;
  for (const auto& [w, c] : e.coords()) {
    int prefix = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const LieElement& d = p.differential(w[i]);
      if (!d.is_zero()) {
        const Rational s = (prefix % 2 != 0) ? Rational(-c) : c;
        for (const auto& [dw, dc] : d.coords()) {
          word.assign(w.begin(), w.begin() + static_cast<long>(i));
          word.insert(word.end(), dw.begin(), dw.end());
          word.insert(word.end(), w.begin() + static_cast<long>(i) + 1, w.end());
          out.add(word, s * dc);
        }
      }
      prefix += alphabet.degree(w[i]);
    }
  }
  std::optional<int> deg;
  if (e.degree()) deg = *e.degree() - 1;
  return LieElement::from_coords(std::move(out), deg);
}

D2Report check_d_squared(const DglPresentation& p, int degree_cap) {
  D2Report r;
  for (std::size_t l = 0; l < p.size(); ++l) {
    const auto letter = static_cast<Letter>(l);
    if (p.alphabet().degree(letter) > degree_cap) continue;
    ++r.checked;
    if (!extend_derivation(p, p.differential(letter)).is_zero() && r.ok) {
      r.ok = false;
      r.first_failure = letter;
    }
  }
  return r;
}

void require_d_squared(const DglPresentation& p, int degree) {
  const auto r = check_d_squared(p, degree);
  if (!r.ok)
    throw std::invalid_argument("d^2 != 0 on generator " + p.alphabet()[*r.first_failure].name);
}

// ---------------------------------------------------------------- homology

CoordinateMatrix boundary_matrix(const DglPresentation& p, int degree) {
  const auto letters = p.alphabet().letters();
  std::vector<LieElement> cols;
  for (const auto& b : lie_basis(p.alphabet(), letters, degree))
    cols.push_back(extend_derivation(p, LieElement::from_tree(b.tree)));
  return subspace_matrix(cols);
}

std::size_t homology_dimension(const DglPresentation& p, int degree) {
  if (degree < 1) return 0;
  require_d_squared(p, degree + 1);
  const auto letters = p.alphabet().letters();
  const std::size_t dim = lie_basis(p.alphabet(), letters, degree).size();
  const std::size_t out_rank = degree > 1 ? rank(boundary_matrix(p, degree).matrix) : 0;
  const std::size_t in_rank = rank(boundary_matrix(p, degree + 1).matrix);
  return dim - out_rank - in_rank;
}

namespace {

std::vector<Letter> letters_of_degree(const Alphabet& a, int degree) {
  std::vector<Letter> out;
  for (Letter l : a.letters())
    if (a.degree(l) == degree) out.push_back(l);
  return out;
}

/// Linear part of d from degree n to n-1 generators.
std::size_t linear_rank(const DglPresentation& p, int degree) {
  const auto src = letters_of_degree(p.alphabet(), degree);
  const auto dst = letters_of_degree(p.alphabet(), degree - 1);
  std::map<Letter, int> row;
  for (std::size_t i = 0; i < dst.size(); ++i) row.emplace(dst[i], static_cast<int>(i));
  std::vector<Triplet<Rational>> t;
  for (std::size_t j = 0; j < src.size(); ++j)
    for (const auto& [w, c] : p.differential(src[j]).coords())
      if (w.size() == 1) t.emplace_back(row.at(w[0]), static_cast<int>(j), c);
  return rank(sparse_from_triplets<Rational>(static_cast<int>(dst.size()), static_cast<int>(src.size()), t));
}

}  // namespace

std::size_t indecomposables_homology(const DglPresentation& p, int degree) {
  if (degree < 1) return 0;
  const std::size_t dim = letters_of_degree(p.alphabet(), degree).size();
  return dim - linear_rank(p, degree) - linear_rank(p, degree + 1);
}

// ------------------------------------------------------------ solve_boundary

BoundaryResult solve_boundary_with_witness(const DglPresentation& p, const LieElement& target,
                                           const SearchSpace& space) {
  if (!extend_derivation(p, target).is_zero())
    throw std::invalid_argument("solve_boundary: target is not a cycle");
  int degree = space.degree;
  if (degree == 0) {
    if (!target.degree()) throw std::invalid_argument("solve_boundary: degree unknown");
    degree = *target.degree() + 1;
  }
  BoundaryResult r;
  if (target.degree() && *target.degree() != degree - 1)
    throw std::invalid_argument("solve_boundary: search degree must be one above the target degree");
  std::vector<LieElement> basis;
  std::vector<LieElement> cols;
  for (const auto& b : lie_basis(p.alphabet(), space.letters, degree,
                                 space.max_weight ? std::optional<int>(static_cast<int>(*space.max_weight))
                                                  : std::nullopt)) {
    if (b.word.size() < space.min_weight) continue;
    basis.push_back(LieElement::from_tree(b.tree));
    cols.push_back(extend_derivation(p, basis.back()));
  }
  r.unknowns = basis.size();
  if (target.is_zero()) {
    r.solution = LieElement::from_coords({}, degree);
    return r;
  }
  std::map<Word, int> rows;
  for (const auto& c : cols)
    for (const auto& [w, v] : c.coords()) rows.emplace(w, 0);
  for (const auto& [w, v] : target.coords()) rows.emplace(w, 0);
  std::vector<Word> words;
  int i = 0;
  for (auto& [w, idx] : rows) {
    idx = i++;
    words.push_back(w);
  }
  r.equations = words.size();
  std::vector<Triplet<Rational>> t;
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [w, v] : cols[j].coords()) t.emplace_back(rows.at(w), static_cast<int>(j), v);
  const auto m = sparse_from_triplets<Rational>(i, static_cast<int>(cols.size()), t);
  RationalVector b = RationalVector::Constant(i, Rational(0));
  for (const auto& [w, v] : target.coords()) b(rows.at(w)) = v;
  if (auto x = solve(m, b)) {
    LieElement e = LieElement::from_coords({}, degree);
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (!(*x)(static_cast<int>(j)).is_zero()) e += (*x)(static_cast<int>(j)) * basis[j];
    r.solution = std::move(e);
    return r;
  }
  if (auto y = infeasibility_witness(m, b))
    for (int k = 0; k < y->size(); ++k)
      if (!(*y)(k).is_zero()) r.farkas.emplace_back(words[static_cast<std::size_t>(k)], (*y)(k));
  return r;
}

std::optional<LieElement> solve_boundary(const DglPresentation& p, const LieElement& target,
                                         const SearchSpace& space) {
  return solve_boundary_with_witness(p, target, space).solution;
}

// ------------------------------------------------------------ substitution

namespace {

std::vector<LieElement> identity_images(const Alphabet& a) {
  std::vector<LieElement> out;
  for (Letter l : a.letters()) out.push_back(LieElement::generator(l, a.degree(l)));
  return out;
}

void check_invertible(const DglPresentation& p, const std::map<Letter, LieElement>& subst) {
  const Alphabet& a = p.alphabet();
  for (const auto& [g, img] : subst) {
    if (g >= a.size()) throw std::invalid_argument("substitution: letter outside alphabet");
    if (img.is_zero() || img.degree() != a.degree(g))
      throw std::invalid_argument("substitution for " + a[g].name + " must be homogeneous of degree " +
                                  std::to_string(a.degree(g)));
    for (Letter x : img.support_letters())
      if (x >= a.size()) throw std::invalid_argument("substitution for " + a[g].name + " uses unknown letters");
    const LieElement corr = img - LieElement::generator(g, a.degree(g));
    const LieElement linear = corr.weight_component(1);
    for (const auto& [w, c] : linear.coords())
      if (subst.count(w[0]))
        throw std::invalid_argument("non-invertible substitution: image of " + a[g].name +
                                    " has a linear term on substituted generator " + a[w[0]].name);
  }
}

std::vector<LieElement> forward_images(const DglPresentation& p, const std::map<Letter, LieElement>& subst) {
  auto phi = identity_images(p.alphabet());
  for (const auto& [g, img] : subst) phi[g] = img;
  return phi;
}

/// d'(g) = inv(d(fwd(g))).
DglPresentation transport(const DglPresentation& p, const std::vector<LieElement>& fwd,
                          const std::vector<LieElement>& inv) {
  DglPresentation out(p.alphabet());
  for (Letter l : p.alphabet().letters())
    out.set_differential(l, substitute_letters(extend_derivation(p, fwd[l]), inv));
  return out;
}

}  // namespace

std::vector<LieElement> inverse_substitution(const DglPresentation& p, const std::map<Letter, LieElement>& subst) {
  check_invertible(p, subst);
  const Alphabet& a = p.alphabet();
  auto psi = identity_images(a);
  std::vector<Letter> order;
  for (const auto& [g, img] : subst) order.push_back(g);
  std::stable_sort(order.begin(), order.end(), [&](Letter x, Letter y) { return a.degree(x) < a.degree(y); });
  for (Letter g : order) {
    const LieElement gen = LieElement::generator(g, a.degree(g));
    const LieElement corr = subst.at(g) - gen;
    psi[g] = gen - substitute_letters(corr, psi);
  }
  return psi;
}

DglPresentation substitute_generators(const DglPresentation& p, const std::map<Letter, LieElement>& subst) {
  const auto psi = inverse_substitution(p, subst);
  const auto phi = forward_images(p, subst);
  DglPresentation out = transport(p, phi, psi);
  if (!(transport(out, psi, phi) == p))
    throw std::logic_error("substitution: inverse substitution does not restore the differential");
  return out;
}

// ------------------------------------------------------------ decomposition

bool in_subalgebra_by_support(const LieElement& e, std::span<const Letter> letters) {
  const std::set<Letter> allowed(letters.begin(), letters.end());
  for (const auto& [w, c] : e.coords())
    for (Letter l : w)
      if (!allowed.count(l)) return false;
  return true;
}

bool in_subalgebra_by_rank(const LieElement& e, const Alphabet& alphabet, std::span<const Letter> letters) {
  if (e.is_zero()) return true;
  std::vector<LieElement> span;
  for (const auto& b : lie_basis(alphabet, letters, *e.degree())) span.push_back(LieElement::from_tree(b.tree));
  const std::size_t base = span.empty() ? 0 : rank(subspace_matrix(span).matrix);
  span.push_back(e);
  return rank(subspace_matrix(span).matrix) == base;
}

std::optional<FiltrationAssignment> infer_decomposition(const DglPresentation& p) {
  FiltrationAssignment f;
  f.stage.assign(p.size(), 0);
  std::vector<Letter> allowed;
  std::size_t remaining = p.size();
  for (int level = 1; remaining > 0; ++level) {
    std::vector<Letter> fresh;
    for (Letter l : p.alphabet().letters())
      if (f.stage[l] == 0 && in_subalgebra_by_support(p.differential(l), allowed)) fresh.push_back(l);
    if (fresh.empty()) return std::nullopt;
    for (Letter l : fresh) f.stage[l] = level;
    allowed.insert(allowed.end(), fresh.begin(), fresh.end());
    remaining -= fresh.size();
  }
  return f;
}

namespace {

template <class Part>
bool valid_decomposition(const DglPresentation& p, const FiltrationAssignment& f, Part part) {
  if (f.stage.size() != p.size()) return false;
  for (Letter l : p.alphabet().letters()) {
    if (f.stage[l] < 1) return false;
    if (!in_subalgebra_by_support(part(p.differential(l)), f.below(f.stage[l]))) return false;
  }
  return true;
}

}  // namespace

bool is_valid_decomposition(const DglPresentation& p, const FiltrationAssignment& f) {
  return valid_decomposition(p, f, [](const LieElement& d) { return d; });
}

bool is_valid_quadratic_decomposition(const DglPresentation& p, const FiltrationAssignment& f) {
  return valid_decomposition(p, f, [](const LieElement& d) { return d.weight_component(2); });
}

// ------------------------------------------------------------------ helpers

LieElement rename_into(const LieElement& e, const Alphabet& from, const Alphabet& to) {
  for (Letter l : e.support_letters())
    if (!to.find(from[l].name)) throw std::invalid_argument("rename_into: no generator named " + from[l].name);
  std::vector<LieElement> images;
  for (const auto& g : from.generators()) {
    if (auto l = to.find(g.name))
      images.push_back(LieElement::generator(*l, to.degree(*l)));
    else
      images.push_back(LieElement::from_coords({}, g.degree));
  }
  return substitute_letters(e, images);
}

DglPresentation disjoint_union(const DglPresentation& p, const DglPresentation& q) {
  Alphabet a = p.alphabet();
  for (const auto& g : q.alphabet().generators()) a.add(g);
  DglPresentation out(a);
  for (Letter l : p.alphabet().letters()) out.set_differential(l, p.differential(l));
  for (Letter l : q.alphabet().letters())
    out.set_differential(static_cast<Letter>(l + p.size()), rename_into(q.differential(l), q.alphabet(), a));
  return out;
}

DglPresentation with_suffix(const DglPresentation& p, const std::string& suffix) {
  Alphabet a;
  for (auto g : p.alphabet().generators()) {
    g.name += suffix;
    a.add(std::move(g));
  }
  DglPresentation out(a);
  for (Letter l : p.alphabet().letters()) out.set_differential(l, p.differential(l));
  return out;
}

}  // namespace dglforge
