#include "dglforge/quillen.hpp"

#include <stdexcept>

namespace dglforge {

TruncatedAlgebra::Combination TruncatedAlgebra::multiply(int i, int j) const {
  if (i == 0) return {{j, Rational(1)}};
  if (j == 0) return {{i, Rational(1)}};
  auto it = product.find({i, j});
  return it == product.end() ? Combination{} : it->second;
}

namespace {

std::map<int, Rational> collect(const TruncatedAlgebra::Combination& c) {
  std::map<int, Rational> out;
  for (const auto& [i, v] : c) {
    out[i] += v;
    if (out[i].is_zero()) out.erase(i);
  }
  return out;
}

}  // namespace

void TruncatedAlgebra::validate() const {
  const int n = static_cast<int>(basis.size());
  if (n == 0 || basis[0].degree != 0) throw std::invalid_argument("algebra needs a unit of degree 0");
  for (int i = 1; i < n; ++i)
    if (basis[static_cast<std::size_t>(i)].degree < 2)
      throw std::invalid_argument("augmentation ideal must start in degree 2 (simply connected)");
  for (const auto& [ij, c] : product)
    for (const auto& [k, v] : c) {
      if (k < 0 || k >= n || ij.first < 1 || ij.second < 1 || ij.first >= n || ij.second >= n)
        throw std::invalid_argument("multiplication table index out of range");
      if (!v.is_zero() && basis[static_cast<std::size_t>(k)].degree !=
                              basis[static_cast<std::size_t>(ij.first)].degree + basis[static_cast<std::size_t>(ij.second)].degree)
        throw std::invalid_argument("product of wrong degree");
    }
  auto sign = [&](int i, int j) {
    return Rational(koszul_sign(basis[static_cast<std::size_t>(i)].degree, basis[static_cast<std::size_t>(j)].degree));
  };
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) {
      auto ij = collect(multiply(i, j));
      auto ji = collect(multiply(j, i));
      for (auto& [k, v] : ji) v *= sign(i, j);
      if (ij != ji) throw std::invalid_argument("multiplication is not graded commutative");
      for (int k = 1; k < n; ++k) {
        Combination left, right;
        for (const auto& [m, v] : multiply(i, j))
          for (const auto& [r, w] : multiply(m, k)) left.emplace_back(r, v * w);
        for (const auto& [m, v] : multiply(j, k))
          for (const auto& [r, w] : multiply(i, m)) right.emplace_back(r, v * w);
        if (collect(left) != collect(right)) throw std::invalid_argument("multiplication is not associative");
      }
    }
  if (!dual_names.empty() && dual_names.size() + 1 != basis.size())
    throw std::invalid_argument("one dual name per non-unit basis element");
  if (!dual_scale.empty() && dual_scale.size() + 1 != basis.size())
    throw std::invalid_argument("one dual scale per non-unit basis element");
  for (const auto& s : dual_scale)
    if (s.is_zero()) throw std::invalid_argument("dual scale must be nonzero");
}

TruncatedAlgebra truncated_monogenic(int gen_degree, int power, const std::string& prefix) {
  if (gen_degree <= 0 || gen_degree % 2 != 0) throw std::invalid_argument("generator degree must be even and positive");
  if (power < 2) throw std::invalid_argument("truncation power must be at least 2");
  TruncatedAlgebra A;
  A.basis.push_back({"1", 0});
  for (int i = 1; i < power; ++i) A.basis.push_back({i == 1 ? "u" : "u^" + std::to_string(i), i * gen_degree});
  for (int i = 1; i < power; ++i)
    for (int j = 1; i + j < power; ++j) A.product[{i, j}] = {{i + j, Rational(1)}};
  std::vector<Rational> lambda(static_cast<std::size_t>(power), Rational(1));
  for (int i = 2; i < power; ++i) {
    const Rational lo = lambda[static_cast<std::size_t>(i / 2)];
    lambda[static_cast<std::size_t>(i)] =
        i % 2 == 0 ? Rational(2 * lo * lo) : Rational(lo * lambda[static_cast<std::size_t>(i / 2 + 1)]);
  }
  for (int i = 1; i < power; ++i) {
    A.dual_names.push_back(i == 1 ? prefix : prefix + std::to_string(i));
    A.dual_scale.push_back(lambda[static_cast<std::size_t>(i)]);
  }
  return A;
}

DglPresentation lstar(const TruncatedAlgebra& A) {
  A.validate();
  const int n = static_cast<int>(A.basis.size());
  Alphabet alphabet;
  auto scale = [&](int i) { return A.dual_scale.empty() ? Rational(1) : A.dual_scale[static_cast<std::size_t>(i - 1)]; };
  for (int i = 1; i < n; ++i) {
    std::string name = A.dual_names.empty() ? "x" + std::to_string(i) : A.dual_names[static_cast<std::size_t>(i - 1)];
    alphabet.add(Generator{std::move(name), A.basis[static_cast<std::size_t>(i)].degree - 1, std::nullopt});
  }
  std::vector<TensorPoly> diff(static_cast<std::size_t>(n));
  for (int p = 1; p < n; ++p)
    for (int q = 1; q < n; ++q)
      for (const auto& [b, m] : A.multiply(p, q)) {
        if (m.is_zero()) continue;
        const Rational sign(A.basis[static_cast<std::size_t>(p)].degree % 2 != 0 ? -1 : 1);
        const Word w{static_cast<Letter>(p - 1), static_cast<Letter>(q - 1)};
        diff[static_cast<std::size_t>(b)].add(w, sign * m * scale(b) / (scale(p) * scale(q)));
      }
  DglPresentation out(alphabet);
  for (int b = 1; b < n; ++b)
    out.set_differential(static_cast<Letter>(b - 1),
                         LieElement::from_coords(diff[static_cast<std::size_t>(b)], A.basis[static_cast<std::size_t>(b)].degree - 2));
  return out;
}

}  // namespace dglforge
