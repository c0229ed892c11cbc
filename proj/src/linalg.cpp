#include "dglforge/linalg.hpp"

#include <cctype>

namespace dglforge {

Rational parse_rational(std::string_view text) {
  auto is_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char ch : s)
      if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer(num) || !is_integer(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("malformed rational: " + std::string(text));
  if (num.front() == '+') num.remove_prefix(1);
  Integer n(std::string{num}), d(std::string{den});
  if (d == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
  return Rational(n, d);
}

std::string format_rational(const Rational& q) { return q.str(); }

namespace {

template <class Field>
std::optional<std::size_t> rank_mod(const RationalMatrix& m) {
  auto reduced = reduce_mod<Field>(m);
  if (!reduced) return std::nullopt;
  return rank(*reduced);
}

}  // namespace

std::size_t multimodular_rank(const RationalMatrix& m) {
  std::size_t best = 0;
  for (auto r : {rank_mod<Mod1>(m), rank_mod<Mod2>(m), rank_mod<Mod3>(m)})
    if (r) best = std::max(best, *r);
  return best;
}

RationalMatrix augment(const RationalMatrix& m, const RationalVector& b) {
  std::vector<Triplet<Rational>> t;
  for (int j = 0; j < m.cols(); ++j)
    for (RationalMatrix::InnerIterator it(m, j); it; ++it) t.emplace_back(it.row(), j, it.value());
  for (int i = 0; i < b.size(); ++i)
    if (!b(i).is_zero()) t.emplace_back(i, static_cast<int>(m.cols()), b(i));
  return sparse_from_triplets<Rational>(static_cast<int>(m.rows()), static_cast<int>(m.cols()) + 1, t);
}

bool modular_feasible(const RationalMatrix& m, const RationalVector& b) {
  return multimodular_rank(m) == multimodular_rank(augment(m, b));
}

}  // namespace dglforge
