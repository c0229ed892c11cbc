#include "dglforge/lie.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dglforge {

// ----------------------------------------------------------------- Alphabet

Alphabet::Alphabet(std::vector<Generator> gens) {
  for (auto& g : gens) add(std::move(g));
}

Letter Alphabet::add(Generator g) {
  if (g.name.empty()) throw std::invalid_argument("generator name must be non-empty");
  if (g.degree < 1) throw std::invalid_argument("generator " + g.name + " must have degree >= 1");
  if (g.filtration && *g.filtration < 1)
    throw std::invalid_argument("generator " + g.name + " must have filtration >= 1");
  if (index_.count(g.name)) throw std::invalid_argument("duplicate generator " + g.name);
  if (gens_.size() >= 0xFFFF) throw std::length_error("alphabet too large");
  const auto l = static_cast<Letter>(gens_.size());
  index_.emplace(g.name, l);
  gens_.push_back(std::move(g));
  return l;
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::at(std::string_view name) const {
  if (auto l = find(name)) return *l;
  throw std::out_of_range("unknown generator " + std::string(name));
}

int Alphabet::degree(const Word& w) const {
  int d = 0;
  for (Letter l : w) d += gens_[l].degree;
  return d;
}

std::vector<Letter> Alphabet::letters() const {
  std::vector<Letter> out(gens_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<Letter>(i);
  return out;
}

std::vector<std::string> Alphabet::names() const {
  std::vector<std::string> out;
  for (const auto& g : gens_) out.push_back(g.name);
  return out;
}

// --------------------------------------------------------------- TensorPoly

TensorPoly TensorPoly::monomial(Word w, Rational c) {
  TensorPoly p;
  p.add(w, c);
  return p;
}

void TensorPoly::add(const Word& w, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational TensorPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? Rational(0) : it->second;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  for (const auto& [w, c] : o) add(w, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  for (const auto& [w, c] : o) add(w, -c);
  return *this;
}

TensorPoly& TensorPoly::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, v] : terms_) v *= c;
  return *this;
}

void TensorPoly::add_scaled(const TensorPoly& o, const Rational& c) {
  if (c.is_zero()) return;
  for (const auto& [w, v] : o) add(w, v * c);
}

TensorPoly operator*(const TensorPoly& a, const TensorPoly& b) {
  TensorPoly out;
  Word w;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      w.assign(wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      out.add(w, ca * cb);
    }
  return out;
}

// -------------------------------------------------------------- BracketTree

BracketTree BracketTree::leaf(Letter l, int degree) {
  auto n = std::make_shared<Node>();
  n->letter = l;
  n->degree = degree;
  n->weight = 1;
  return BracketTree(std::move(n));
}

BracketTree BracketTree::node(const BracketTree& left, const BracketTree& right) {
  auto n = std::make_shared<Node>();
  n->degree = left.degree() + right.degree();
  n->weight = left.weight() + right.weight();
  n->left = left.node_;
  n->right = right.node_;
  return BracketTree(std::move(n));
}

Word BracketTree::leaves() const {
  if (is_leaf()) return {letter()};
  Word w = left().leaves();
  Word r = right().leaves();
  w.insert(w.end(), r.begin(), r.end());
  return w;
}

TensorPoly BracketTree::expand() const {
  if (is_leaf()) return TensorPoly::monomial({letter()});
  const TensorPoly l = left().expand();
  const TensorPoly r = right().expand();
  TensorPoly out = l * r;
  out.add_scaled(r * l, Rational(-koszul_sign(left().degree(), right().degree())));
  return out;
}

std::string BracketTree::to_string(const Alphabet& alphabet) const {
  if (is_leaf()) return alphabet[letter()].name;
  return "[" + left().to_string(alphabet) + "," + right().to_string(alphabet) + "]";
}

std::strong_ordering operator<=>(const BracketTree& a, const BracketTree& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.weight() <=> b.weight(); c != 0) return c;
  if (a.is_leaf() && b.is_leaf()) return a.letter() <=> b.letter();
  if (a.is_leaf() != b.is_leaf()) return a.is_leaf() ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = a.left() <=> b.left(); c != 0) return c;
  return a.right() <=> b.right();
}

// --------------------------------------------------------------- LieElement

LieElement LieElement::generator(Letter l, int degree) {
  LieElement e;
  e.coords_ = TensorPoly::monomial({l});
  e.degree_ = degree;
  return e;
}

LieElement LieElement::generator(const Alphabet& alphabet, std::string_view name) {
  const Letter l = alphabet.at(name);
  return generator(l, alphabet.degree(l));
}

LieElement LieElement::from_tree(const BracketTree& t) {
  LieElement e;
  e.coords_ = t.expand();
  e.degree_ = t.degree();
  return e;
}

LieElement LieElement::from_coords(TensorPoly coords, std::optional<int> degree) {
  LieElement e;
  e.coords_ = std::move(coords);
  e.degree_ = degree;
  return e;
}

bool LieElement::is_decomposable() const {
  for (const auto& [w, c] : coords_)
    if (w.size() < 2) return false;
  return true;
}

LieElement LieElement::weight_component(std::size_t w) const { return weight_range(w, w); }

LieElement LieElement::weight_range(std::size_t lo, std::size_t hi) const {
  LieElement out;
  out.degree_ = degree_;
  for (const auto& [word, c] : coords_)
    if (word.size() >= lo && word.size() <= hi) out.coords_.add(word, c);
  return out;
}

std::size_t LieElement::min_weight() const {
  std::size_t m = 0;
  for (const auto& [w, c] : coords_) m = (m == 0) ? w.size() : std::min(m, w.size());
  return m;
}

std::size_t LieElement::max_weight() const {
  std::size_t m = 0;
  for (const auto& [w, c] : coords_) m = std::max(m, w.size());
  return m;
}

std::vector<Letter> LieElement::support_letters() const {
  std::set<Letter> s;
  for (const auto& [w, c] : coords_) s.insert(w.begin(), w.end());
  return {s.begin(), s.end()};
}

void LieElement::merge_degree(const LieElement& o) {
  if (!o.degree_) return;
  if (!degree_ || coords_.empty()) {
    if (!degree_ || !o.coords_.empty()) degree_ = o.degree_;
    return;
  }
  if (*degree_ != *o.degree_ && !o.coords_.empty())
    throw std::invalid_argument("adding Lie elements of different degrees " + std::to_string(*degree_) +
                                " and " + std::to_string(*o.degree_));
}

LieElement& LieElement::operator+=(const LieElement& o) {
  merge_degree(o);
  coords_ += o.coords_;
  return *this;
}

LieElement& LieElement::operator-=(const LieElement& o) {
  merge_degree(o);
  coords_ -= o.coords_;
  return *this;
}

LieElement& LieElement::operator*=(const Rational& c) {
  coords_ *= c;
  return *this;
}

LieElement bracket(const LieElement& u, const LieElement& v) {
  std::optional<int> deg;
  if (u.degree() && v.degree()) deg = *u.degree() + *v.degree();
  if (u.is_zero() || v.is_zero()) return LieElement::from_coords({}, deg);
  TensorPoly c = u.coords() * v.coords();
  c.add_scaled(v.coords() * u.coords(), Rational(-koszul_sign(*u.degree(), *v.degree())));
  return LieElement::from_coords(std::move(c), deg);
}

// ------------------------------------------------------------------ Lyndon

bool is_lyndon(const Word& w) {
  if (w.empty()) return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    // w must be strictly smaller than each proper suffix.
    if (!std::lexicographical_compare(w.begin(), w.end(), w.begin() + static_cast<long>(i), w.end()))
      return false;
  }
  return true;
}

bool is_super_lyndon(const Word& w, const Alphabet& alphabet) {
  if (is_lyndon(w)) return true;
  if (w.size() % 2 != 0) return false;
  const std::size_t h = w.size() / 2;
  if (!std::equal(w.begin(), w.begin() + static_cast<long>(h), w.begin() + static_cast<long>(h))) return false;
  Word u(w.begin(), w.begin() + static_cast<long>(h));
  return is_lyndon(u) && alphabet.degree(u) % 2 != 0;
}

namespace {

using TreeCache = std::map<Word, BracketTree>;

BracketTree bracketing(const Word& w, const Alphabet& alphabet, TreeCache& cache) {
  if (auto it = cache.find(w); it != cache.end()) return it->second;
  BracketTree t = BracketTree::leaf(w.front(), alphabet.degree(w.front()));
  if (w.size() > 1) {
    std::size_t split = w.size() - 1;
    for (std::size_t i = 1; i < w.size(); ++i) {
      if (is_lyndon(Word(w.begin() + static_cast<long>(i), w.end()))) {
        split = i;
        break;
      }
    }
    const Word u(w.begin(), w.begin() + static_cast<long>(split));
    const Word v(w.begin() + static_cast<long>(split), w.end());
    t = BracketTree::node(bracketing(u, alphabet, cache), bracketing(v, alphabet, cache));
  }
  cache.emplace(w, t);
  return t;
}

BracketTree basis_tree_cached(const Word& w, const Alphabet& alphabet, TreeCache& cache) {
  if (is_lyndon(w)) return bracketing(w, alphabet, cache);
  const Word u(w.begin(), w.begin() + static_cast<long>(w.size() / 2));
  const BracketTree p = bracketing(u, alphabet, cache);
  return BracketTree::node(p, p);
}

/// All words over `letters` of total degree `degree` and length at most
/// `max_len`, in lexicographic order.
void enumerate_words(const std::vector<Letter>& letters, const Alphabet& alphabet, int degree,
                     std::size_t max_len, const std::function<void(const Word&)>& emit) {
  Word cur;
  std::function<void(int)> rec = [&](int remaining) {
    if (remaining == 0) {
      if (!cur.empty()) emit(cur);
      return;
    }
    if (cur.size() == max_len) return;
    for (Letter l : letters) {
      const int d = alphabet.degree(l);
      if (d > remaining) continue;
      cur.push_back(l);
      rec(remaining - d);
      cur.pop_back();
    }
  };
  rec(degree);
}

std::vector<Letter> sorted_unique(std::span<const Letter> letters) {
  std::vector<Letter> v(letters.begin(), letters.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void sort_basis(std::vector<LieBasisElement>& basis) {
  std::sort(basis.begin(), basis.end(), [](const LieBasisElement& a, const LieBasisElement& b) {
    if (a.word.size() != b.word.size()) return a.word.size() < b.word.size();
    return a.word < b.word;
  });
}

}  // namespace

BracketTree standard_bracketing(const Word& lyndon, const Alphabet& alphabet) {
  if (!is_lyndon(lyndon)) throw std::invalid_argument("standard_bracketing: not a Lyndon word");
  TreeCache cache;
  return bracketing(lyndon, alphabet, cache);
}

BracketTree basis_tree(const Word& w, const Alphabet& alphabet) {
  if (!is_super_lyndon(w, alphabet)) throw std::invalid_argument("basis_tree: not a super-Lyndon word");
  TreeCache cache;
  return basis_tree_cached(w, alphabet, cache);
}

std::vector<LieBasisElement> lie_basis(const Alphabet& alphabet, std::span<const Letter> letters, int degree,
                                       std::optional<int> max_weight) {
  std::vector<LieBasisElement> out;
  if (degree < 1) return out;
  const auto ls = sorted_unique(letters);
  const std::size_t max_len = max_weight ? static_cast<std::size_t>(std::max(0, *max_weight))
                                         : static_cast<std::size_t>(degree);
  TreeCache cache;
  enumerate_words(ls, alphabet, degree, max_len, [&](const Word& w) {
    if (is_lyndon(w)) out.push_back({w, bracketing(w, alphabet, cache)});
  });
  if (degree % 2 == 0 && (degree / 2) % 2 != 0) {
    enumerate_words(ls, alphabet, degree / 2, max_len / 2, [&](const Word& u) {
      if (!is_lyndon(u)) return;
      Word w = u;
      w.insert(w.end(), u.begin(), u.end());
      const BracketTree p = bracketing(u, alphabet, cache);
      out.push_back({std::move(w), BracketTree::node(p, p)});
    });
  }
  sort_basis(out);
  return out;
}

std::vector<BracketTree> spanning_set(const Alphabet& alphabet, int degree, std::optional<int> max_weight) {
  const auto ls = alphabet.letters();
  return spanning_set(alphabet, ls, degree, max_weight);
}

std::vector<BracketTree> spanning_set(const Alphabet& alphabet, std::span<const Letter> letters, int degree,
                                      std::optional<int> max_weight) {
  std::vector<BracketTree> out;
  for (auto& b : lie_basis(alphabet, letters, degree, max_weight)) out.push_back(std::move(b.tree));
  return out;
}

Multidegree multidegree_of(const Word& w, std::size_t alphabet_size) {
  Multidegree m(alphabet_size, 0);
  for (Letter l : w) ++m.at(l);
  return m;
}

std::vector<LieBasisElement> multidegree_basis(const Alphabet& alphabet, const Multidegree& counts) {
  std::vector<LieBasisElement> out;
  TreeCache cache;
  auto words_with_counts = [&](Multidegree remaining, const std::function<void(const Word&)>& emit) {
    std::size_t total = 0;
    for (int c : remaining) total += static_cast<std::size_t>(c);
    Word cur;
    std::function<void()> rec = [&] {
      if (cur.size() == total) {
        if (!cur.empty()) emit(cur);
        return;
      }
      for (std::size_t l = 0; l < remaining.size(); ++l) {
        if (remaining[l] == 0) continue;
        --remaining[l];
        cur.push_back(static_cast<Letter>(l));
        rec();
        cur.pop_back();
        ++remaining[l];
      }
    };
    rec();
  };
  words_with_counts(counts, [&](const Word& w) {
    if (is_lyndon(w)) out.push_back({w, bracketing(w, alphabet, cache)});
  });
  bool all_even = true;
  for (int c : counts) all_even = all_even && c % 2 == 0;
  if (all_even) {
    Multidegree half(counts.size());
    for (std::size_t i = 0; i < counts.size(); ++i) half[i] = counts[i] / 2;
    words_with_counts(half, [&](const Word& u) {
      if (!is_lyndon(u) || alphabet.degree(u) % 2 == 0) return;
      Word w = u;
      w.insert(w.end(), u.begin(), u.end());
      const BracketTree p = bracketing(u, alphabet, cache);
      out.push_back({std::move(w), BracketTree::node(p, p)});
    });
  }
  sort_basis(out);
  return out;
}

std::vector<BracketTree> multidegree_component(const Alphabet& alphabet, std::span<const Letter> letters) {
  Multidegree counts(alphabet.size(), 0);
  for (Letter l : letters) {
    if (l >= alphabet.size()) throw std::out_of_range("multidegree_component: letter outside alphabet");
    if (++counts[l] > 1) throw std::invalid_argument("multidegree_component: duplicate letter " + alphabet[l].name);
  }
  std::vector<BracketTree> out;
  for (auto& b : multidegree_basis(alphabet, counts)) out.push_back(std::move(b.tree));
  return out;
}

std::map<Multidegree, LieElement> split_by_multidegree(const LieElement& e, std::size_t alphabet_size) {
  std::map<Multidegree, TensorPoly> parts;
  for (const auto& [w, c] : e.coords()) parts[multidegree_of(w, alphabet_size)].add(w, c);
  std::map<Multidegree, LieElement> out;
  for (auto& [m, p] : parts) out.emplace(m, LieElement::from_coords(std::move(p), e.degree()));
  return out;
}

std::vector<std::pair<BracketTree, Rational>> lie_terms(const LieElement& e, const Alphabet& alphabet) {
  std::vector<std::pair<BracketTree, Rational>> out;
  TensorPoly rest = e.coords();
  TreeCache cache;
  while (!rest.empty()) {
    const Word lead = rest.begin()->first;
    if (!is_super_lyndon(lead, alphabet))
      throw std::domain_error("coordinates are not those of a Lie element (leading word is not super-Lyndon)");
    const BracketTree t = basis_tree_cached(lead, alphabet, cache);
    const TensorPoly p = t.expand();
    const Rational lead_coeff = p.coefficient(lead);
    if (lead_coeff.is_zero() || p.begin()->first != lead)
      throw std::logic_error("super-Lyndon basis element lost its leading word");
    const Rational c = rest.begin()->second / lead_coeff;
    rest.add_scaled(p, -c);
    out.emplace_back(t, c);
  }
  return out;
}

std::string to_string(const LieElement& e, const Alphabet& alphabet) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [t, c] : lie_terms(e, alphabet)) {
    const bool neg = c < 0;
    const Rational mag = neg ? Rational(-c) : c;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    if (mag != 1) os << format_rational(mag) << " ";
    os << t.to_string(alphabet);
    first = false;
  }
  return os.str();
}

LieElement substitute_letters(const LieElement& e, std::span<const LieElement> images) {
  TensorPoly out;
  for (const auto& [w, c] : e.coords()) {
    TensorPoly prod = TensorPoly::monomial({}, c);
    for (Letter l : w) {
      if (l >= images.size()) throw std::out_of_range("substitute_letters: no image for letter");
      prod = prod * images[l].coords();
      if (prod.empty()) break;
    }
    out += prod;
  }
  return LieElement::from_coords(std::move(out), e.degree());
}

// ---------------------------------------------------------- coordinate spans

CoordinateMatrix subspace_matrix(std::span<const LieElement> elements) {
  std::optional<int> degree;
  std::map<Word, int> rows;
  for (const auto& e : elements) {
    if (e.is_zero()) continue;
    if (degree && e.degree() && *degree != *e.degree())
      throw std::invalid_argument("subspace_matrix: elements of mixed degrees");
    if (!degree) degree = e.degree();
    for (const auto& [w, c] : e.coords()) rows.emplace(w, 0);
  }
  CoordinateMatrix out;
  int i = 0;
  for (auto& [w, idx] : rows) {
    idx = i++;
    out.words.push_back(w);
  }
  std::vector<Triplet<Rational>> t;
  for (std::size_t j = 0; j < elements.size(); ++j)
    for (const auto& [w, c] : elements[j].coords()) t.emplace_back(rows.at(w), static_cast<int>(j), c);
  out.matrix = sparse_from_triplets<Rational>(i, static_cast<int>(elements.size()), t);
  return out;
}

bool SpanBuilder::add(const TensorPoly& p) {
  SparseRow<Rational> row;
  for (const auto& [w, c] : p) {
    auto [it, inserted] = index_.try_emplace(w, static_cast<int>(index_.size()));
    row.emplace_back(it->second, c);
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return echelon_.insert(std::move(row)).has_value();
}

bool SpanBuilder::contains(const TensorPoly& p) const {
  SparseRow<Rational> row;
  for (const auto& [w, c] : p) {
    auto it = index_.find(w);
    if (it == index_.end()) return false;
    row.emplace_back(it->second, c);
  }
  std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return echelon_.in_span(std::move(row));
}

std::vector<LieElement> ideal_span_in_degree(std::span<const LieElement> ideal_gens, const Alphabet& alphabet,
                                             std::span<const Letter> ambient, int degree) {
  std::map<int, std::vector<LieElement>> memo;
  std::function<const std::vector<LieElement>&(int)> component = [&](int d) -> const std::vector<LieElement>& {
    if (auto it = memo.find(d); it != memo.end()) return it->second;
    std::vector<LieElement> basis;
    if (d >= 1) {
      SpanBuilder span;
      for (const auto& g : ideal_gens)
        if (!g.is_zero() && g.degree() == d && span.add(g.coords())) basis.push_back(g);
      for (Letter x : ambient) {
        const int dx = alphabet.degree(x);
        if (dx >= d) continue;
        const LieElement gx = LieElement::generator(x, dx);
        for (const auto& e : component(d - dx)) {
          LieElement cand = bracket(gx, e);
          if (!cand.is_zero() && span.add(cand.coords())) basis.push_back(std::move(cand));
        }
      }
    }
    return memo.emplace(d, std::move(basis)).first->second;
  };
  return component(degree);
}

MultigradedIdeal::MultigradedIdeal(std::span<const LieElement> ideal_gens, const Alphabet& alphabet,
                                   std::span<const Letter> ambient)
    : alphabet_(&alphabet), ambient_(ambient.begin(), ambient.end()) {
  for (const auto& g : ideal_gens) {
    if (g.is_zero()) continue;
    auto parts = split_by_multidegree(g, alphabet.size());
    if (parts.size() != 1) throw std::invalid_argument("MultigradedIdeal: generator is not multihomogeneous");
    gens_by_multidegree_[parts.begin()->first].push_back(g);
  }
}

const std::vector<LieElement>& MultigradedIdeal::component(const Multidegree& m) {
  if (auto it = memo_.find(m); it != memo_.end()) return it->second;
  std::vector<LieElement> basis;
  SpanBuilder span;
  if (auto it = gens_by_multidegree_.find(m); it != gens_by_multidegree_.end())
    for (const auto& g : it->second)
      if (span.add(g.coords())) basis.push_back(g);
  int total = 0;
  for (int c : m) total += c;
  if (total > 1) {
    for (Letter x : ambient_) {
      if (m[x] == 0) continue;
      Multidegree sub = m;
      --sub[x];
      const LieElement gx = LieElement::generator(x, alphabet_->degree(x));
      const auto& lower = component(sub);
      for (const auto& e : lower) {
        LieElement cand = bracket(gx, e);
        if (!cand.is_zero() && span.add(cand.coords())) basis.push_back(std::move(cand));
      }
    }
  }
  return memo_.emplace(m, std::move(basis)).first->second;
}

bool MultigradedIdeal::contains(const LieElement& e) {
  for (const auto& [m, part] : split_by_multidegree(e, alphabet_->size())) {
    SpanBuilder span;
    for (const auto& b : component(m)) span.add(b.coords());
    if (!span.contains(part.coords())) return false;
  }
  return true;
}

}  // namespace dglforge
