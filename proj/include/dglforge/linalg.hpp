#ifndef DGLFORGE_LINALG_HPP
#define DGLFORGE_LINALG_HPP

// Exact sparse linear algebra over Q (and prime fields for the modular
// pre-pass). Every routine is templated on the scalar; elimination never
// compares against a tolerance.

#include "dglforge/modular.hpp"
#include "dglforge/rational.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dglforge {

template <class Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor, int>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Triplet = Eigen::Triplet<Scalar, int>;

using RationalMatrix = SparseMatrix<Rational>;
using RationalVector = Vector<Rational>;

struct LinalgOptions {
  /// Blocks with rows*cols at or below this go through Eigen's dense
  /// full-pivot LU (rational scalars only).
  std::size_t dense_threshold = 400;
  /// Solve each connected component of the row/column incidence graph on
  /// its own.
  bool split_components = true;
};

/// Builds a matrix from triplets, summing duplicates and dropping zeros.
template <class Scalar>
SparseMatrix<Scalar> sparse_from_triplets(int rows, int cols,
                                          const std::vector<Triplet<Scalar>>& entries) {
  SparseMatrix<Scalar> m(rows, cols);
  m.setFromTriplets(entries.begin(), entries.end());
  m.prune([](int, int, const Scalar& v) { return !is_zero(v); });
  m.makeCompressed();
  return m;
}

template <class Scalar>
SparseMatrix<Scalar> sparse_from_dense(const DenseMatrix<Scalar>& d) {
  std::vector<Triplet<Scalar>> t;
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i)
      if (!is_zero(d(i, j))) t.emplace_back(i, j, d(i, j));
  return sparse_from_triplets<Scalar>(static_cast<int>(d.rows()), static_cast<int>(d.cols()), t);
}

/// A sparse row: (column, value) pairs sorted by column, no zero values.
template <class Scalar>
using SparseRow = std::vector<std::pair<int, Scalar>>;

/// Incremental row echelon form. The leading entry of a row is its smallest
/// column index; stored pivot rows are normalized to a leading 1.
template <class Scalar>
class RowEchelon {
 public:
  /// Reduces `row` against the stored pivots. Returns the new pivot column if
  /// the row was independent (and stores it), nothing if it reduced to zero.
  std::optional<int> insert(SparseRow<Scalar> row) {
    reduce(row);
    if (row.empty()) return std::nullopt;
    const Scalar lead = row.front().second;
    for (auto& e : row) e.second /= lead;
    const int col = row.front().first;
    pivot_of_.emplace(col, rows_.size());
    rows_.push_back(std::move(row));
    return col;
  }

  bool in_span(SparseRow<Scalar> row) const {
    reduce(row);
    return row.empty();
  }

  /// Reduces until the leading column has no pivot (or the row is zero).
  void reduce(SparseRow<Scalar>& row) const {
    while (!row.empty()) {
      auto it = pivot_of_.find(row.front().first);
      if (it == pivot_of_.end()) return;
      const Scalar factor = row.front().second;
      row = axpy(row, -factor, rows_[it->second]);
    }
  }

  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseRow<Scalar>>& rows() const { return rows_; }
  bool has_pivot(int col) const { return pivot_of_.count(col) != 0; }

  /// Back substitution. `rhs_col` marks the augmented column (if any); free
  /// columns take the values already in `x` (normally zero).
  void back_substitute(std::vector<Scalar>& x, int rhs_col) const {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rows_[a].front().first > rows_[b].front().first;
    });
    for (std::size_t idx : order) {
      const auto& row = rows_[idx];
      Scalar acc{};
      for (std::size_t k = 1; k < row.size(); ++k) {
        const int c = row[k].first;
        if (c == rhs_col)
          acc += row[k].second;
        else
          acc -= row[k].second * x[c];
      }
      x[row.front().first] = acc;
    }
  }

  static SparseRow<Scalar> axpy(const SparseRow<Scalar>& a, const Scalar& f,
                                const SparseRow<Scalar>& b) {
    SparseRow<Scalar> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i == a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, f * b[j].second);
        ++j;
      } else {
        Scalar v = a[i].second + f * b[j].second;
        if (!is_zero(v)) out.emplace_back(a[i].first, std::move(v));
        ++i;
        ++j;
      }
    }
    return out;
  }

 private:
  std::vector<SparseRow<Scalar>> rows_;
  std::unordered_map<int, std::size_t> pivot_of_;
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

/// Row/column index sets of one connected block.
struct Block {
  std::vector<int> rows;
  std::vector<int> cols;
};

template <class Scalar>
std::vector<Block> connected_blocks(const SparseMatrix<Scalar>& m) {
  const int R = static_cast<int>(m.rows()), C = static_cast<int>(m.cols());
  UnionFind uf(R + C);
  for (int j = 0; j < C; ++j)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, j); it; ++it) uf.unite(it.row(), R + j);
  std::unordered_map<int, std::size_t> index;
  std::vector<Block> blocks;
  auto block_of = [&](int node) -> Block& {
    const int root = uf.find(node);
    auto [it, inserted] = index.emplace(root, blocks.size());
    if (inserted) blocks.emplace_back();
    return blocks[it->second];
  };
  for (int i = 0; i < R; ++i) block_of(i).rows.push_back(i);
  for (int j = 0; j < C; ++j) block_of(R + j).cols.push_back(j);
  return blocks;
}

template <class Scalar>
Block whole(const SparseMatrix<Scalar>& m) {
  Block b;
  b.rows.resize(static_cast<std::size_t>(m.rows()));
  b.cols.resize(static_cast<std::size_t>(m.cols()));
  std::iota(b.rows.begin(), b.rows.end(), 0);
  std::iota(b.cols.begin(), b.cols.end(), 0);
  return b;
}

/// Rows of the block with columns relabeled so sparse columns come first
/// (a static minimal-fill ordering). `order[new] = old local index`.
template <class Scalar>
struct LocalSystem {
  std::vector<SparseRow<Scalar>> rows;
  std::vector<int> col_order;
};

template <class Scalar>
LocalSystem<Scalar> localize(const SparseMatrix<Scalar>& m, const Block& blk) {
  std::unordered_map<int, int> local_row;
  for (std::size_t i = 0; i < blk.rows.size(); ++i) local_row.emplace(blk.rows[i], static_cast<int>(i));
  std::vector<int> nnz(blk.cols.size(), 0);
  for (std::size_t j = 0; j < blk.cols.size(); ++j)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, blk.cols[j]); it; ++it)
      if (local_row.count(it.row())) ++nnz[j];
  LocalSystem<Scalar> sys;
  sys.col_order.resize(blk.cols.size());
  std::iota(sys.col_order.begin(), sys.col_order.end(), 0);
  std::stable_sort(sys.col_order.begin(), sys.col_order.end(),
                   [&](int a, int b) { return nnz[a] < nnz[b]; });
  std::vector<int> rank_of(blk.cols.size());
  for (std::size_t k = 0; k < sys.col_order.size(); ++k) rank_of[sys.col_order[k]] = static_cast<int>(k);
  sys.rows.assign(blk.rows.size(), {});
  for (std::size_t j = 0; j < blk.cols.size(); ++j)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, blk.cols[j]); it; ++it) {
      auto r = local_row.find(it.row());
      if (r != local_row.end()) sys.rows[r->second].emplace_back(rank_of[j], it.value());
    }
  for (auto& row : sys.rows) std::sort(row.begin(), row.end(), [](auto& a, auto& b) { return a.first < b.first; });
  return sys;
}

template <class Scalar>
std::vector<std::size_t> row_insertion_order(const std::vector<SparseRow<Scalar>>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].size() < rows[b].size(); });
  return order;
}

template <class Scalar>
DenseMatrix<Scalar> dense_block(const SparseMatrix<Scalar>& m, const Block& blk) {
  std::unordered_map<int, int> local_row;
  for (std::size_t i = 0; i < blk.rows.size(); ++i) local_row.emplace(blk.rows[i], static_cast<int>(i));
  DenseMatrix<Scalar> d = DenseMatrix<Scalar>::Zero(static_cast<int>(blk.rows.size()),
                                                    static_cast<int>(blk.cols.size()));
  for (std::size_t j = 0; j < blk.cols.size(); ++j)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, blk.cols[j]); it; ++it) {
      auto r = local_row.find(it.row());
      if (r != local_row.end()) d(r->second, static_cast<int>(j)) = it.value();
    }
  return d;
}

template <class Scalar>
bool use_dense(const Block& blk, const LinalgOptions& opt) {
  return std::is_same_v<Scalar, Rational> && blk.rows.size() * blk.cols.size() <= opt.dense_threshold;
}

template <class Scalar>
std::size_t block_rank(const SparseMatrix<Scalar>& m, const Block& blk, const LinalgOptions& opt) {
  if (blk.rows.empty() || blk.cols.empty()) return 0;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (use_dense<Scalar>(blk, opt)) {
      Eigen::FullPivLU<DenseMatrix<Scalar>> lu(dense_block(m, blk));
      lu.setThreshold(Scalar(0));
      return static_cast<std::size_t>(lu.rank());
    }
  }
  auto sys = localize(m, blk);
  RowEchelon<Scalar> ech;
  for (std::size_t i : row_insertion_order(sys.rows)) ech.insert(std::move(sys.rows[i]));
  return ech.rank();
}

/// Solves the block system; writes the solution into x at the block's
/// columns. Returns false if inconsistent.
template <class Scalar>
bool block_solve(const SparseMatrix<Scalar>& m, const Vector<Scalar>& b, const Block& blk,
                 const LinalgOptions& opt, Vector<Scalar>& x) {
  const int nc = static_cast<int>(blk.cols.size());
  if constexpr (std::is_same_v<Scalar, Rational>) {
    if (use_dense<Scalar>(blk, opt) && nc > 0) {
      DenseMatrix<Scalar> d = dense_block(m, blk);
      Vector<Scalar> rhs(static_cast<int>(blk.rows.size()));
      for (std::size_t i = 0; i < blk.rows.size(); ++i) rhs(static_cast<int>(i)) = b(blk.rows[i]);
      Eigen::FullPivLU<DenseMatrix<Scalar>> lu(d);
      lu.setThreshold(Scalar(0));
      Vector<Scalar> sol = lu.solve(rhs);
      if (d * sol != rhs) return false;
      for (int j = 0; j < nc; ++j) x(blk.cols[j]) = sol(j);
      return true;
    }
  }
  auto sys = localize(m, blk);
  for (std::size_t i = 0; i < blk.rows.size(); ++i)
    if (!is_zero(b(blk.rows[i]))) sys.rows[i].emplace_back(nc, b(blk.rows[i]));
  RowEchelon<Scalar> ech;
  for (std::size_t i : row_insertion_order(sys.rows)) {
    auto pivot = ech.insert(std::move(sys.rows[i]));
    if (pivot && *pivot == nc) return false;
  }
  std::vector<Scalar> local(static_cast<std::size_t>(nc), Scalar(0));
  ech.back_substitute(local, nc);
  for (int k = 0; k < nc; ++k) x(blk.cols[sys.col_order[k]]) = local[k];
  return true;
}

template <class Scalar>
void check_rhs(const SparseMatrix<Scalar>& m, const Vector<Scalar>& b) {
  if (b.size() != m.rows()) throw std::invalid_argument("dimension mismatch: rhs length differs from row count");
}

struct SolveOutcome {
  bool feasible = true;
  Block failing;  // meaningful when !feasible
};

template <class Scalar>
SolveOutcome solve_into(const SparseMatrix<Scalar>& m, const Vector<Scalar>& b,
                        const LinalgOptions& opt, Vector<Scalar>& x) {
  x = Vector<Scalar>::Constant(m.cols(), Scalar(0));
  std::vector<Block> blocks =
      opt.split_components ? connected_blocks(m) : std::vector<Block>{whole(m)};
  for (auto& blk : blocks) {
    bool needed = false;
    for (int r : blk.rows) needed = needed || !is_zero(b(r));
    if (!needed) continue;
    if (!block_solve(m, b, blk, opt, x)) return {false, blk};
  }
  return {};
}

}  // namespace detail

/// Exact rank.
template <class Scalar>
std::size_t rank(const SparseMatrix<Scalar>& m, const LinalgOptions& opt = {}) {
  std::size_t r = 0;
  if (opt.split_components) {
    for (const auto& blk : detail::connected_blocks(m)) r += detail::block_rank(m, blk, opt);
  } else {
    r = detail::block_rank(m, detail::whole(m), opt);
  }
  return r;
}

/// Some x with m*x == b, or nothing if the system is inconsistent.
template <class Scalar>
std::optional<Vector<Scalar>> solve(const SparseMatrix<Scalar>& m, const Vector<Scalar>& b,
                                    const LinalgOptions& opt = {}) {
  detail::check_rhs(m, b);
  Vector<Scalar> x;
  if (!detail::solve_into(m, b, opt, x).feasible) return std::nullopt;
  return x;
}

/// Basis of the null space; its size is cols - rank.
template <class Scalar>
std::vector<Vector<Scalar>> kernel_basis(const SparseMatrix<Scalar>& m, const LinalgOptions& opt = {}) {
  const int n = static_cast<int>(m.cols());
  std::vector<Vector<Scalar>> basis;
  if constexpr (std::is_same_v<Scalar, Rational>) {
    const auto blk = detail::whole(m);
    if (detail::use_dense<Scalar>(blk, opt) && m.rows() > 0 && n > 0) {
      Eigen::FullPivLU<DenseMatrix<Scalar>> lu(detail::dense_block(m, blk));
      lu.setThreshold(Scalar(0));
      if (lu.rank() == n) return basis;
      DenseMatrix<Scalar> k = lu.kernel();
      for (int j = 0; j < k.cols(); ++j) basis.emplace_back(k.col(j));
      return basis;
    }
  }
  auto sys = detail::localize(m, detail::whole(m));
  RowEchelon<Scalar> ech;
  for (std::size_t i : detail::row_insertion_order(sys.rows)) ech.insert(std::move(sys.rows[i]));
  for (int free_col = 0; free_col < n; ++free_col) {
    if (ech.has_pivot(free_col)) continue;
    std::vector<Scalar> local(static_cast<std::size_t>(n), Scalar(0));
    local[free_col] = Scalar(1);
    ech.back_substitute(local, -1);
    Vector<Scalar> v(n);
    for (int k = 0; k < n; ++k) v(sys.col_order[k]) = local[k];
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Farkas-style certificate for an inconsistent system: y with y^T m == 0 and
/// y^T b != 0 (normalized to y^T b == 1). Nothing if m*x == b is solvable.
template <class Scalar>
std::optional<Vector<Scalar>> infeasibility_witness(const SparseMatrix<Scalar>& m,
                                                    const Vector<Scalar>& b,
                                                    const LinalgOptions& opt = {}) {
  detail::check_rhs(m, b);
  Vector<Scalar> x;
  auto outcome = detail::solve_into(m, b, opt, x);
  if (outcome.feasible) return std::nullopt;
  // Within the failing block solve [M^T; b^T] y = e_last.
  const auto& blk = outcome.failing;
  std::unordered_map<int, int> local_col;
  for (std::size_t j = 0; j < blk.cols.size(); ++j) local_col.emplace(blk.cols[j], static_cast<int>(j));
  std::unordered_map<int, int> local_row;
  for (std::size_t i = 0; i < blk.rows.size(); ++i) local_row.emplace(blk.rows[i], static_cast<int>(i));
  std::vector<Triplet<Scalar>> t;
  for (int j : blk.cols)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, j); it; ++it) {
      auto r = local_row.find(it.row());
      if (r != local_row.end()) t.emplace_back(local_col[j], r->second, it.value());
    }
  const int last = static_cast<int>(blk.cols.size());
  for (std::size_t i = 0; i < blk.rows.size(); ++i)
    if (!is_zero(b(blk.rows[i]))) t.emplace_back(last, static_cast<int>(i), b(blk.rows[i]));
  auto transposed = sparse_from_triplets<Scalar>(last + 1, static_cast<int>(blk.rows.size()), t);
  Vector<Scalar> e = Vector<Scalar>::Constant(last + 1, Scalar(0));
  e(last) = Scalar(1);
  auto y_local = solve(transposed, e, opt);
  if (!y_local) throw std::logic_error("infeasibility_witness: Fredholm alternative violated");
  Vector<Scalar> y = Vector<Scalar>::Constant(m.rows(), Scalar(0));
  for (std::size_t i = 0; i < blk.rows.size(); ++i) y(blk.rows[i]) = (*y_local)(static_cast<int>(i));
  return y;
}

/// y^T m as a dense row vector.
template <class Scalar>
Vector<Scalar> left_multiply(const Vector<Scalar>& y, const SparseMatrix<Scalar>& m) {
  Vector<Scalar> out = Vector<Scalar>::Constant(m.cols(), Scalar(0));
  for (int j = 0; j < m.cols(); ++j)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, j); it; ++it) out(j) += y(it.row()) * it.value();
  return out;
}

template <class Scalar>
Vector<Scalar> multiply(const SparseMatrix<Scalar>& m, const Vector<Scalar>& x) {
  Vector<Scalar> out = Vector<Scalar>::Constant(m.rows(), Scalar(0));
  for (int j = 0; j < m.cols(); ++j) {
    if (is_zero(x(j))) continue;
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, j); it; ++it) out(it.row()) += it.value() * x(j);
  }
  return out;
}

/// Reduces a rational matrix modulo a prime; empty if a denominator vanishes.
template <class Field>
std::optional<SparseMatrix<Field>> reduce_mod(const RationalMatrix& m) {
  std::vector<Triplet<Field>> t;
  for (int j = 0; j < m.cols(); ++j)
    for (RationalMatrix::InnerIterator it(m, j); it; ++it) {
      auto v = Field::from_rational(it.value());
      if (!v) return std::nullopt;
      t.emplace_back(it.row(), j, *v);
    }
  return sparse_from_triplets<Field>(static_cast<int>(m.rows()), static_cast<int>(m.cols()), t);
}

/// Lower bound on the rational rank from several prime fields; equal to it
/// unless every prime divides some minor.
std::size_t multimodular_rank(const RationalMatrix& m);

/// Modular feasibility estimate for m*x == b (rank of m vs rank of [m|b]).
bool modular_feasible(const RationalMatrix& m, const RationalVector& b);

/// [m | b] as one matrix.
RationalMatrix augment(const RationalMatrix& m, const RationalVector& b);

}  // namespace dglforge

#endif  // DGLFORGE_LINALG_HPP
