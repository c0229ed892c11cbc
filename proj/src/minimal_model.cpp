#include "dglforge/minimal_model.hpp"

#include <stdexcept>

namespace dglforge {

namespace {

using Dense = DenseMatrix<Rational>;
using DenseVec = Vector<Rational>;

struct DegreeData {
  std::vector<Letter> gens;   // input generators of this degree
  Dense linear;               // rows: generators of degree - 1
  std::vector<Letter> r;      // complement of the cycles, as unit vectors
};

SparseRow<Rational> to_row(const DenseVec& v) {
  SparseRow<Rational> row;
  for (int i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) row.emplace_back(i, v(i));
  return row;
}

DenseVec unit(int n, int i) {
  DenseVec v = DenseVec::Constant(n, Rational(0));
  v(i) = Rational(1);
  return v;
}

/// Kernel of the linear part restricted to generators of stage <= level,
/// expanded to all generators of the degree.
std::vector<DenseVec> filtered_kernel(const DegreeData& d, const std::vector<int>& stage, int level) {
  std::vector<int> cols;
  for (std::size_t j = 0; j < d.gens.size(); ++j)
    if (stage[d.gens[j]] <= level) cols.push_back(static_cast<int>(j));
  std::vector<DenseVec> out;
  if (cols.empty()) return out;
  Dense sub(d.linear.rows(), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) sub.col(static_cast<int>(j)) = d.linear.col(cols[j]);
  std::vector<DenseVec> ker;
  if (sub.rows() == 0) {
    for (std::size_t j = 0; j < cols.size(); ++j) ker.push_back(unit(static_cast<int>(cols.size()), static_cast<int>(j)));
  } else {
    ker = kernel_basis(sparse_from_dense(sub));
  }
  for (const auto& k : ker) {
    DenseVec v = DenseVec::Constant(static_cast<int>(d.gens.size()), Rational(0));
    for (std::size_t j = 0; j < cols.size(); ++j) v(cols[j]) = k(static_cast<int>(j));
    out.push_back(std::move(v));
  }
  return out;
}

LieElement combination(const Alphabet& a, const std::vector<Letter>& gens, const DenseVec& v, int degree) {
  LieElement e = LieElement::from_coords({}, degree);
  for (int i = 0; i < v.size(); ++i)
    if (!v(i).is_zero()) e += v(i) * LieElement::generator(gens[static_cast<std::size_t>(i)], a.degree(gens[static_cast<std::size_t>(i)]));
  return e;
}

}  // namespace

MinimalModel minimalize(const DglPresentation& p, int degree_cap) {
  const Alphabet& a = p.alphabet();
  const int top = p.max_degree();
  if (top > degree_cap)
    throw std::domain_error("degree cap " + std::to_string(degree_cap) + " is below the generator degree " +
                            std::to_string(top) + "; the splitting cannot be closed");
  require_d_squared(p, top);
  const auto declared = p.declared_filtration();
  std::vector<int> stage(p.size(), 1);
  if (declared) stage = declared->stage;
  int levels = 1;
  for (int s : stage) levels = std::max(levels, s);

  std::vector<DegreeData> deg(static_cast<std::size_t>(top) + 2);
  for (Letter l : a.letters()) deg[static_cast<std::size_t>(a.degree(l))].gens.push_back(l);
  for (int n = 1; n <= top + 1; ++n) {
    auto& d = deg[static_cast<std::size_t>(n)];
    const auto& below = deg[static_cast<std::size_t>(n - 1)].gens;
    d.linear = Dense::Constant(static_cast<int>(below.size()), static_cast<int>(d.gens.size()), Rational(0));
    std::map<Letter, int> row;
    for (std::size_t i = 0; i < below.size(); ++i) row.emplace(below[i], static_cast<int>(i));
    for (std::size_t j = 0; j < d.gens.size(); ++j)
      for (const auto& [w, c] : p.differential(d.gens[j]).coords())
        if (w.size() == 1) d.linear(row.at(w[0]), static_cast<int>(j)) = c;
    // Complement of the cycles, built level by level.
    RowEchelon<Rational> ech;
    for (int level = 1; level <= levels; ++level) {
      for (const auto& z : filtered_kernel(d, stage, level)) ech.insert(to_row(z));
      for (std::size_t j = 0; j < d.gens.size(); ++j)
        if (stage[d.gens[j]] == level && ech.insert(to_row(unit(static_cast<int>(d.gens.size()), static_cast<int>(j)))))
          d.r.push_back(static_cast<Letter>(j));
    }
  }

  MinimalModel out;
  std::vector<LieElement> rho(p.size());
  std::vector<int> out_levels;
  for (int n = 1; n <= top; ++n) {
    const auto& d = deg[static_cast<std::size_t>(n)];
    const auto& up = deg[static_cast<std::size_t>(n + 1)];
    const int dim = static_cast<int>(d.gens.size());
    if (dim == 0) continue;

    // Boundary part: d1 r for r in R_{n+1}, with the rest D(r) of d r.
    std::vector<DenseVec> bvecs;
    std::vector<LieElement> brest;
    RowEchelon<Rational> ech;
    for (Letter j : up.r) {
      DenseVec v = up.linear.col(j);
      bvecs.push_back(v);
      const LieElement& dr = p.differential(up.gens[j]);
      brest.push_back(dr.weight_range(2, dr.max_weight()));
      ech.insert(to_row(v));
    }
    // K: cycles independent of the boundaries, by increasing level.
    std::vector<DenseVec> kvecs;
    std::vector<int> klevel;
    for (int level = 1; level <= levels; ++level) {
      std::vector<DenseVec> cands;
      for (int j = 0; j < dim; ++j)
        if (stage[d.gens[static_cast<std::size_t>(j)]] <= level && d.linear.col(j).isZero())
          cands.push_back(unit(dim, j));
      for (auto& z : filtered_kernel(d, stage, level)) cands.push_back(std::move(z));
      for (auto& z : cands)
        if (ech.insert(to_row(z))) {
          kvecs.push_back(std::move(z));
          klevel.push_back(level);
        }
    }

    // New generators and their differentials.
    std::vector<LieElement> knew;
    for (std::size_t i = 0; i < kvecs.size(); ++i) {
      const auto& z = kvecs[i];
      std::optional<Letter> single;
      int nnz = 0;
      for (int j = 0; j < dim; ++j)
        if (!z(j).is_zero()) {
          ++nnz;
          single = d.gens[static_cast<std::size_t>(j)];
        }
      std::string name;
      if (nnz == 1) {
        name = a[*single].name;
      } else {
        name = "k" + std::to_string(n) + "_" + std::to_string(i + 1);
        while (a.find(name) || out.minimal.alphabet().find(name)) name += "_";
      }
      const LieElement dz = extend_derivation(p, combination(a, d.gens, z, n));
      const LieElement image = substitute_letters(dz, rho);
      const Letter l = out.minimal.add_generator(Generator{name, n, std::nullopt},
                                                 LieElement::from_coords(image.coords(), n - 1));
      out_levels.push_back(klevel[i]);
      std::vector<std::pair<Letter, Rational>> vec;
      for (int j = 0; j < dim; ++j)
        if (!z(j).is_zero()) vec.emplace_back(d.gens[static_cast<std::size_t>(j)], z(j));
      out.generator_vectors.push_back(std::move(vec));
      knew.push_back(LieElement::generator(l, n));
    }

    // Express every generator in the basis K, R, d1 R.
    if (kvecs.size() + d.r.size() + bvecs.size() != static_cast<std::size_t>(dim))
      throw std::logic_error("minimalize: splitting does not match the generator count");
    Dense basis(dim, dim);
    int col = 0;
    for (const auto& z : kvecs) basis.col(col++) = z;
    for (Letter j : d.r) basis.col(col++) = unit(dim, j);
    for (const auto& b : bvecs) basis.col(col++) = b;
    Eigen::FullPivLU<Dense> lu(basis);
    lu.setThreshold(Rational(0));
    if (lu.rank() != dim) throw std::logic_error("minimalize: splitting is not a basis");
    std::vector<LieElement> brho;
    for (const auto& rest : brest) brho.push_back(substitute_letters(rest, rho));
    for (int j = 0; j < dim; ++j) {
      const DenseVec c = lu.solve(unit(dim, j));
      LieElement img = LieElement::from_coords({}, n);
      for (std::size_t i = 0; i < kvecs.size(); ++i)
        if (!c(static_cast<int>(i)).is_zero()) img += c(static_cast<int>(i)) * knew[i];
      const int off = static_cast<int>(kvecs.size() + d.r.size());
      for (std::size_t b = 0; b < bvecs.size(); ++b) {
        const Rational& cb = c(off + static_cast<int>(b));
        if (!cb.is_zero()) img -= cb * brho[b];
      }
      rho[d.gens[static_cast<std::size_t>(j)]] = std::move(img);
    }
  }
  out.retraction = std::move(rho);
  if (declared) {
    out.filtration = FiltrationAssignment{out_levels};
    out.minimal.set_filtration(*out.filtration);
  }
  return out;
}

MinimalModelCheck check_minimal_model(const DglPresentation& input, const MinimalModel& model, int degree_cap) {
  MinimalModelCheck c;
  const DglPresentation& m = model.minimal;
  c.decomposable = m.is_minimal();
  c.d_squared = check_d_squared(m, degree_cap + 1).ok;
  c.homology_preserved = c.d_squared;
  c.homology.assign(static_cast<std::size_t>(degree_cap) + 1, 0);
  if (c.d_squared) {
    for (int n = 1; n <= degree_cap; ++n) {
      const std::size_t h = homology_dimension(input, n);
      c.homology[static_cast<std::size_t>(n)] = h;
      if (homology_dimension(m, n) != h) c.homology_preserved = false;
    }
  }
  if (const auto f = input.declared_filtration()) {
    c.input_length = f->length();
    if (model.filtration) {
      c.output_length = model.filtration->length();
      c.quadratic_decomposition =
          is_valid_quadratic_decomposition(m, *model.filtration) && c.output_length <= c.input_length;
      const auto low = model.filtration->below(c.input_length);
      c.top_stage = true;
      for (Letter l : m.alphabet().letters())
        if (!in_subalgebra_by_support(m.differential(l), low)) c.top_stage = false;
    }
  }
  return c;
}

}  // namespace dglforge
