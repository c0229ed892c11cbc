#ifndef DGLFORGE_LIE_HPP
#define DGLFORGE_LIE_HPP

// Free graded Lie algebras over Q with Koszul signs.
//
// A Lie element is stored through its image in the tensor algebra, where
// [x,y] = xy - (-1)^{|x||y|} yx. The embedding is injective, so equality,
// membership and rank questions reduce to linear algebra on word
// coordinates. Bracket trees are kept for construction and display only.

#include "dglforge/linalg.hpp"
#include "dglforge/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace dglforge {

using Letter = std::uint16_t;
using Word = std::vector<Letter>;
/// Letter counts indexed by letter.
using Multidegree = std::vector<int>;

struct Generator {
  std::string name;
  int degree = 1;
  std::optional<int> filtration;

  friend bool operator==(const Generator&, const Generator&) = default;
};

/// Ordered list of generators. The declaration order is the total order on
/// letters used for Lyndon words.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Generator> gens);

  Letter add(Generator g);
  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](Letter l) const { return gens_[l]; }
  const std::vector<Generator>& generators() const { return gens_; }
  std::optional<Letter> find(std::string_view name) const;
  /// Throws std::out_of_range naming the missing generator.
  Letter at(std::string_view name) const;
  int degree(Letter l) const { return gens_[l].degree; }
  int degree(const Word& w) const;
  std::vector<Letter> letters() const;
  std::vector<std::string> names() const;
  void set_filtration(Letter l, std::optional<int> f) { gens_[l].filtration = f; }

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.gens_ == b.gens_; }

 private:
  std::vector<Generator> gens_;
  std::unordered_map<std::string, Letter> index_;
};

/// Sparse element of the tensor algebra, words in lexicographic order
/// (a proper prefix sorts first).
class TensorPoly {
 public:
  using Map = std::map<Word, Rational>;
  using const_iterator = Map::const_iterator;

  TensorPoly() = default;
  static TensorPoly monomial(Word w, Rational c = Rational(1));

  void add(const Word& w, const Rational& c);
  Rational coefficient(const Word& w) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const Map& terms() const { return terms_; }

  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  TensorPoly& operator*=(const Rational& c);
  void add_scaled(const TensorPoly& o, const Rational& c);

  friend TensorPoly operator*(const TensorPoly& a, const TensorPoly& b);  // concatenation
  friend bool operator==(const TensorPoly&, const TensorPoly&) = default;

 private:
  Map terms_;
};

/// Iterated bracket of generators. Immutable; subtrees are shared.
class BracketTree {
 public:
  static BracketTree leaf(Letter l, int degree);
  static BracketTree node(const BracketTree& left, const BracketTree& right);

  bool is_leaf() const { return node_->left == nullptr; }
  Letter letter() const { return node_->letter; }
  BracketTree left() const { return BracketTree(node_->left); }
  BracketTree right() const { return BracketTree(node_->right); }
  int degree() const { return node_->degree; }
  /// Bracket length.
  int weight() const { return node_->weight; }
  Word leaves() const;
  TensorPoly expand() const;
  std::string to_string(const Alphabet& alphabet) const;

  friend std::strong_ordering operator<=>(const BracketTree& a, const BracketTree& b);
  friend bool operator==(const BracketTree& a, const BracketTree& b) { return (a <=> b) == 0; }

 private:
  struct Node {
    Letter letter = 0;
    int degree = 0;
    int weight = 1;
    std::shared_ptr<const Node> left, right;
  };
  explicit BracketTree(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Homogeneous element of the free graded Lie algebra.
class LieElement {
 public:
  LieElement() = default;
  static LieElement generator(Letter l, int degree);
  static LieElement generator(const Alphabet& alphabet, std::string_view name);
  static LieElement from_tree(const BracketTree& t);
  /// Wraps tensor coordinates the caller knows to be a Lie element of the
  /// given degree.
  static LieElement from_coords(TensorPoly coords, std::optional<int> degree);

  const TensorPoly& coords() const { return coords_; }
  /// Empty only for the zero element built without a degree.
  std::optional<int> degree() const { return degree_; }
  bool is_zero() const { return coords_.empty(); }
  /// Every term has bracket length at least two.
  bool is_decomposable() const;
  /// Part of bracket length exactly w.
  LieElement weight_component(std::size_t w) const;
  /// Parts with bracket length in [lo, hi].
  LieElement weight_range(std::size_t lo, std::size_t hi) const;
  std::size_t min_weight() const;
  std::size_t max_weight() const;
  /// Letters occurring in some word of the support.
  std::vector<Letter> support_letters() const;

  LieElement& operator+=(const LieElement& o);
  LieElement& operator-=(const LieElement& o);
  LieElement& operator*=(const Rational& c);
  friend LieElement operator+(LieElement a, const LieElement& b) { return a += b; }
  friend LieElement operator-(LieElement a, const LieElement& b) { return a -= b; }
  friend LieElement operator*(const Rational& c, LieElement a) { return a *= c; }
  LieElement operator-() const { return Rational(-1) * *this; }
  friend bool operator==(const LieElement& a, const LieElement& b) { return a.coords_ == b.coords_; }

 private:
  void merge_degree(const LieElement& o);
  TensorPoly coords_;
  std::optional<int> degree_;
};

/// Graded bracket [u,v] = uv - (-1)^{|u||v|} vu.
LieElement bracket(const LieElement& u, const LieElement& v);

/// Koszul sign (-1)^{p q}.
inline int koszul_sign(int p, int q) { return (p % 2 != 0 && q % 2 != 0) ? -1 : 1; }

// ---------------------------------------------------------------------------
// Lyndon words and the super-Lyndon basis.

bool is_lyndon(const Word& w);
/// Lyndon words, plus squares uu of odd-degree Lyndon words u.
bool is_super_lyndon(const Word& w, const Alphabet& alphabet);
/// Standard bracketing: P(w) = [P(u), P(v)] with v the longest proper
/// Lyndon suffix.
BracketTree standard_bracketing(const Word& lyndon, const Alphabet& alphabet);
/// Basis tree for a super-Lyndon word ([P(u),P(u)] for squares).
BracketTree basis_tree(const Word& super_lyndon, const Alphabet& alphabet);

struct LieBasisElement {
  Word word;
  BracketTree tree;
};

/// Super-Lyndon basis of the degree component of L(letters), sorted by
/// (weight, word). `max_weight` bounds the bracket length.
std::vector<LieBasisElement> lie_basis(const Alphabet& alphabet, std::span<const Letter> letters,
                                       int degree, std::optional<int> max_weight = std::nullopt);

/// Linearly independent spanning set of the degree component.
std::vector<BracketTree> spanning_set(const Alphabet& alphabet, int degree,
                                      std::optional<int> max_weight = std::nullopt);
std::vector<BracketTree> spanning_set(const Alphabet& alphabet, std::span<const Letter> letters,
                                      int degree, std::optional<int> max_weight = std::nullopt);

/// Basis of the multilinear component on distinct letters: the (n-1)!
/// standard bracketings of Lyndon words that start with the smallest letter.
/// Throws std::invalid_argument on repeated letters.
std::vector<BracketTree> multidegree_component(const Alphabet& alphabet, std::span<const Letter> letters);

/// Basis of the component with the given letter counts.
std::vector<LieBasisElement> multidegree_basis(const Alphabet& alphabet, const Multidegree& counts);

Multidegree multidegree_of(const Word& w, std::size_t alphabet_size);
/// Splits an element into multihomogeneous parts.
std::map<Multidegree, LieElement> split_by_multidegree(const LieElement& e, std::size_t alphabet_size);

/// Rewrites a Lie element in the super-Lyndon basis by triangular
/// elimination on leading words. Throws std::domain_error if the
/// coordinates are not those of a Lie element.
std::vector<std::pair<BracketTree, Rational>> lie_terms(const LieElement& e, const Alphabet& alphabet);

/// Display form, e.g. "-[b,b] - [a,a2]"; "0" for zero.
std::string to_string(const LieElement& e, const Alphabet& alphabet);

/// Applies the algebra map sending letter l to images[l].
LieElement substitute_letters(const LieElement& e, std::span<const LieElement> images);

// ---------------------------------------------------------------------------
// Linear algebra on coordinates.

struct CoordinateMatrix {
  RationalMatrix matrix;
  std::vector<Word> words;  // row labels
};

/// Columns are the canonical coordinates of the elements over the union of
/// words in their supports. Throws std::invalid_argument on mixed degrees.
CoordinateMatrix subspace_matrix(std::span<const LieElement> elements);

/// Incremental echelon basis of a subspace of the tensor algebra.
class SpanBuilder {
 public:
  /// True if `p` was independent of the current span (and is now part of it).
  bool add(const TensorPoly& p);
  bool contains(const TensorPoly& p) const;
  std::size_t rank() const { return echelon_.rank(); }

 private:
  std::map<Word, int> index_;
  RowEchelon<Rational> echelon_;
};

/// Rank-reduced spanning set of the degree component of the Lie ideal
/// generated by `ideal_gens` inside L(ambient).
std::vector<LieElement> ideal_span_in_degree(std::span<const LieElement> ideal_gens,
                                             const Alphabet& alphabet, std::span<const Letter> ambient,
                                             int degree);

/// Same for a multihomogeneous component; the generators must be
/// multihomogeneous.
class MultigradedIdeal {
 public:
  MultigradedIdeal(std::span<const LieElement> ideal_gens, const Alphabet& alphabet,
                   std::span<const Letter> ambient);
  const std::vector<LieElement>& component(const Multidegree& m);
  /// Membership of an arbitrary element (split by multidegree).
  bool contains(const LieElement& e);

 private:
  const Alphabet* alphabet_;
  std::vector<Letter> ambient_;
  std::map<Multidegree, std::vector<LieElement>> gens_by_multidegree_;
  std::map<Multidegree, std::vector<LieElement>> memo_;
};

}  // namespace dglforge

#endif  // DGLFORGE_LIE_HPP
