#ifndef DGLFORGE_DGL_HPP
#define DGLFORGE_DGL_HPP

#include "dglforge/lie.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dglforge {

/// Stage (filtered degree) of each letter, indexed by letter.
struct FiltrationAssignment {
  std::vector<int> stage;

  int length() const;
  /// Letters with stage < s.
  std::vector<Letter> below(int s) const;
  friend bool operator==(const FiltrationAssignment&, const FiltrationAssignment&) = default;
};

/// Free dgl (L(V), d) given by the images of the generators.
class DglPresentation {
 public:
  DglPresentation() = default;
  /// Zero differential on every generator.
  explicit DglPresentation(Alphabet alphabet);

  Letter add_generator(Generator g, LieElement d = {});
  /// Throws std::invalid_argument unless d is zero or homogeneous of degree
  /// |g| - 1 in letters of this alphabet.
  void set_differential(Letter l, LieElement d);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t size() const { return alphabet_.size(); }
  const LieElement& differential(Letter l) const { return diff_[l]; }
  const LieElement& differential(std::string_view name) const { return diff_[alphabet_.at(name)]; }
  LieElement generator(std::string_view name) const { return LieElement::generator(alphabet_, name); }
  int max_degree() const;

  /// Every differential is decomposable.
  bool is_minimal() const;
  /// Every differential has bracket length exactly two (or is zero).
  bool is_quadratic() const;

  /// Filtration carried by the generators, if every generator has one.
  std::optional<FiltrationAssignment> declared_filtration() const;
  void set_filtration(const FiltrationAssignment& f);

  friend bool operator==(const DglPresentation& a, const DglPresentation& b) {
    return a.alphabet_ == b.alphabet_ && a.diff_ == b.diff_;
  }

 private:
  Alphabet alphabet_;
  std::vector<LieElement> diff_;
};

/// d e by the derivation rule, applied letter by letter on tensor words.
LieElement extend_derivation(const DglPresentation& p, const LieElement& e);

struct D2Report {
  bool ok = true;
  std::optional<Letter> first_failure;
  std::size_t checked = 0;
};

/// d(d g) == 0 for every generator with |g| <= degree_cap.
D2Report check_d_squared(const DglPresentation& p, int degree_cap);

/// Throws std::invalid_argument unless d^2 = 0 on generators up to the degree.
void require_d_squared(const DglPresentation& p, int degree);

/// Matrix of d: L_n -> L_{n-1} in the super-Lyndon basis of L_n (columns)
/// against tensor words (rows).
CoordinateMatrix boundary_matrix(const DglPresentation& p, int degree);

std::size_t homology_dimension(const DglPresentation& p, int degree);
/// Homology of the indecomposables (V, linear part of d).
std::size_t indecomposables_homology(const DglPresentation& p, int degree);

/// Constrained space for solve_boundary.
struct SearchSpace {
  std::vector<Letter> letters;
  std::size_t min_weight = 1;
  std::optional<std::size_t> max_weight;
  int degree = 0;
};

struct BoundaryResult {
  std::optional<LieElement> solution;
  /// Left null vector over the rows when no solution exists.
  std::vector<std::pair<Word, Rational>> farkas;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

/// Some e in the search space with d e == target. Throws std::invalid_argument
/// when the target is not a cycle.
std::optional<LieElement> solve_boundary(const DglPresentation& p, const LieElement& target,
                                         const SearchSpace& space);
BoundaryResult solve_boundary_with_witness(const DglPresentation& p, const LieElement& target,
                                           const SearchSpace& space);

/// Transports the differential along g -> subst[g] (other generators fixed).
/// Each image must be g plus a correction whose bracket-length-one part
/// avoids the substituted generators. Throws std::invalid_argument otherwise.
DglPresentation substitute_generators(const DglPresentation& p, const std::map<Letter, LieElement>& subst);

/// Inverse of the automorphism g -> subst[g], as images of every letter.
std::vector<LieElement> inverse_substitution(const DglPresentation& p, const std::map<Letter, LieElement>& subst);

/// Greedy assignment: stage 1 holds the cycles, stage i+1 every remaining
/// generator whose differential lies in the subalgebra on stages <= i.
std::optional<FiltrationAssignment> infer_decomposition(const DglPresentation& p);

/// Literal check of a decomposition: d g lies in L(stages < stage(g)).
bool is_valid_decomposition(const DglPresentation& p, const FiltrationAssignment& f);
/// Same check restricted to the quadratic part of the differential.
bool is_valid_quadratic_decomposition(const DglPresentation& p, const FiltrationAssignment& f);

/// Membership in L(letters) from the support of the coordinates: the words
/// of an element of L(letters) use only those letters, and conversely.
bool in_subalgebra_by_support(const LieElement& e, std::span<const Letter> letters);
/// Membership by comparing ranks of the spanning set with and without e.
bool in_subalgebra_by_rank(const LieElement& e, const Alphabet& alphabet, std::span<const Letter> letters);

/// Re-expresses e (over `from`) in `to` by generator name.
LieElement rename_into(const LieElement& e, const Alphabet& from, const Alphabet& to);

/// Coproduct; names must be disjoint.
DglPresentation disjoint_union(const DglPresentation& p, const DglPresentation& q);
/// Copy with every generator name suffixed (e.g. "'").
DglPresentation with_suffix(const DglPresentation& p, const std::string& suffix);

}  // namespace dglforge

#endif  // DGLFORGE_DGL_HPP
