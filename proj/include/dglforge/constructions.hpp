#ifndef DGLFORGE_CONSTRUCTIONS_HPP
#define DGLFORGE_CONSTRUCTIONS_HPP

#include "dglforge/dgl.hpp"

#include <chrono>
#include <stdexcept>

namespace dglforge {

/// Wall-clock budget; an empty budget never expires.
class Budget {
 public:
  Budget() = default;
  explicit Budget(double seconds);
  bool expired() const;
  double elapsed_seconds() const;

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
  std::optional<double> limit_;
};

/// Raised when a budget runs out; carries the dimensions reached so far.
class BudgetExhausted : public std::runtime_error {
 public:
  BudgetExhausted(const std::string& stage, std::map<std::string, std::size_t> dims)
      : std::runtime_error("budget exhausted during " + stage), stage_(stage), dims_(std::move(dims)) {}
  const std::string& stage() const { return stage_; }
  const std::map<std::string, std::size_t>& dimensions() const { return dims_; }

 private:
  std::string stage_;
  std::map<std::string, std::size_t> dims_;
};

/// L(a, a2, ..., a_{k-1}, b, c) with the lstar differentials and
/// dc = -[b,b] - da_k; filtration a,b at 1, a_i at i, c at k.
DglPresentation build_connected_sum(int k);

/// f in L^[2](a, ..., a_{k-1}) of degree 4k+2 with df = [a, da_k], over the
/// alphabet of build_connected_sum(k).
LieElement compute_f(const DglPresentation& connected_sum, int k);
LieElement compute_f(int k);

/// L + L' + L(s(x*y')) for x, y' in the first stages, ds(x*y') = [x,y'];
/// s-generators at stage 2. Throws std::invalid_argument without filtrations.
DglPresentation build_product_model(const DglPresentation& L, const DglPresentation& Lp);

/// gamma in L^[5](first stages and s-generators) of degree 2n+1 with
/// d gamma = (-1)^{n+1}[alpha, alpha'], n = |alpha|.
LieElement compute_gamma(const DglPresentation& product, const LieElement& alpha, const LieElement& alpha_p);

struct LkBundle {
  int k = 0;
  int n = 0;  // |alpha|
  DglPresentation L;        // connected sum
  DglPresentation product;  // L + L' + s-generators
  DglPresentation Lk;       // product + v
  // Elements over the alphabet of Lk.
  LieElement alpha, alpha_hat, f, gamma;
  LieElement alpha_p, alpha_hat_p, f_p;
  FiltrationAssignment declared;  // stages as constructed
  FiltrationAssignment greedy;
};

/// Builds and verifies every identity of the construction; throws
/// std::logic_error if one fails.
LkBundle build_Lk(int k);
/// Same construction from given witnesses (f over the connected sum, gamma
/// over the product model); no searches are run.
LkBundle assemble_Lk(int k, const LieElement& f, const LieElement& gamma);

struct CatResult {
  DglPresentation before;  // Lk + L(w)
  DglPresentation after;   // after w -> w + alpha_hat, v -> v - [w + alpha_hat, alpha_hat']
  std::map<Letter, LieElement> substitution;
  LieElement dv_after;
  LieElement dv_expected;  // gamma + (-1)^n [w, alpha']
  bool identity_holds = false;
  FiltrationAssignment greedy_before, greedy_after;
};
CatResult cat_certificate_data(const LkBundle& bundle);

struct Prop51Options {
  Budget budget;
  /// Replace dv by d([[a,c],[a',c']]) + gamma (a solvable instance).
  bool control = false;
  bool modular_prepass = true;
};

struct Prop51Result {
  bool feasible = false;
  std::optional<bool> modular_feasible;
  /// Feasible: coefficients on basis words of the weight >= 2 space.
  LieElement witness_x;
  /// Infeasible: left null vector over coordinate words.
  std::vector<std::pair<Word, Rational>> farkas;
  std::map<std::string, std::size_t> dimensions;
  LieElement rhs;  // dv (or the control replacement)
  std::vector<Letter> outside;  // letters not in V_{<= k-1}
};
Prop51Result check_prop51(const LkBundle& bundle, const Prop51Options& options = {});

/// Independent re-check of a correction-system result by substitution and dot
/// products only.
bool verify_prop51(const LkBundle& bundle, const Prop51Result& r);

struct ClaimResult {
  LieElement remainder;        // corrected combination, expected in L(V_{<= k-1})
  bool remainder_in_lower = false;
  bool remainder_matches_reduced = false;  // equals [f,a'] + [f,df'] + [a,f'] + [df,f']
  LieElement literal;          // combination as written without the first two terms
  bool literal_in_lower = false;
  std::size_t multilinear_dimension = 0;
  std::size_t multilinear_rank = 0;
  bool quotient_class_nonzero = false;  // class of [[a,[b,b]],[a',c']] modulo the list
};
ClaimResult verify_claim_identity(const LkBundle& bundle);

/// Letters of V_{<= k-1}, i.e. everything except c, c' and v.
std::vector<Letter> lower_letters(const LkBundle& bundle);

}  // namespace dglforge

#endif  // DGLFORGE_CONSTRUCTIONS_HPP
