#include "modrep/radical.hpp"

#include <algorithm>

#include "ffield/errors.hpp"

namespace pib {

namespace {

// full-algebra rows (indexed by position in E.elements) -> J_E coordinates
FMatrix to_jcoords(const FMatrix& A, const Subgroup& E) {
  FMatrix out(A.field(), A.rows(), E.jbasis.size());
  std::vector<std::size_t> col(E.jbasis.size());
  for (std::size_t k = 0; k < E.jbasis.size(); ++k)
    col[k] = static_cast<std::size_t>(std::lower_bound(E.elements.begin(), E.elements.end(), E.jbasis[k]) -
                                      E.elements.begin());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < col.size(); ++k) out.at(i, k) = A.at(i, col[k]);
  out.row_reduce();
  return out;
}

}  // namespace

FMatrix RadicalBasis::power(unsigned j) const {
  if (j < 1) throw InvalidInput("radical power must be at least 1");
  if (j <= powers.size()) return powers[j - 1];
  return FMatrix(F, 0, dim());
}

std::vector<FMatrix::Elem> RadicalBasis::quotient_coordinates(const std::vector<FMatrix::Elem>& v) const {
  if (v.size() != dim()) throw InvalidInput("vector is not in J_E coordinates");
  std::vector<FMatrix::Elem> c(E.rank, 0);
  for (unsigned i = 0; i < E.rank; ++i)
    for (std::size_t k = 0; k < v.size(); ++k)
      if (v[k] && ann.at(i, k)) c[i] = F->add(c[i], F->mul(ann.at(i, k), v[k]));
  return c;
}

RadicalBasis radical_basis(const GroupTable& G, const Subgroup& E, unsigned p) {
  RadicalBasis R;
  R.E = E;
  R.p = p;
  R.F = GaloisField::get(p, 1);
  auto full = augmentation_powers(G, E.elements, p, R.top());
  for (auto& A : full) R.powers.push_back(to_jcoords(A, E));
  // B has rows g_1 - e, ..., g_r - e, then J^2; the coordinate forms are the first r rows of B^-T
  std::size_t n = R.dim();
  const FMatrix& J2 = R.powers.size() > 1 ? R.powers[1] : FMatrix(R.F, 0, n);
  if (J2.rows() + E.rank != n) throw Error("J_E^2 has unexpected dimension");
  FMatrix B(R.F, n, n);
  for (unsigned i = 0; i < E.rank; ++i) B.at(i, E.jindex(E.basis[i])) = 1;
  for (std::size_t i = 0; i < J2.rows(); ++i)
    for (std::size_t k = 0; k < n; ++k) B.at(E.rank + i, k) = J2.at(i, k);
  FMatrix C = B.transpose().inverse();
  R.ann = C.row_block(0, E.rank);
  return R;
}

FMatrix radical_power_basis(const GroupTable& G, const Subgroup& E, unsigned p, unsigned j) {
  if (j < 1) throw InvalidInput("radical power must be at least 1");
  auto full = augmentation_powers(G, E.elements, p, j);
  return to_jcoords(full.back(), E);
}

AdaptedBasis adapted_basis(const ModuleRep& M, const Subgroup& E) {
  auto F = M.field();
  std::size_t m = M.dim();
  FMatrix I = FMatrix::identity(F, m);
  std::vector<FMatrix> X;
  for (Elt g : E.basis) X.push_back(M.rho(g) - I);
  // echelon store of chosen vectors for independence tests
  std::vector<std::vector<FMatrix::Elem>> ech;
  std::vector<std::size_t> piv;
  auto reduce = [&](std::vector<FMatrix::Elem> v) {
    for (std::size_t i = 0; i < ech.size(); ++i) {
      auto c = v[piv[i]];
      if (!c) continue;
      for (std::size_t t = 0; t < m; ++t) v[t] = F->sub(v[t], F->mul(c, ech[i][t]));
    }
    return v;
  };
  auto insert = [&](const std::vector<FMatrix::Elem>& v) {
    auto w = reduce(v);
    std::size_t k = 0;
    while (k < m && !w[k]) ++k;
    if (k == m) return false;
    auto iv = F->inv(w[k]);
    for (auto& x : w) x = F->mul(x, iv);
    for (auto& row : ech) {
      auto c = row[k];
      if (!c) continue;
      for (std::size_t t = 0; t < m; ++t) row[t] = F->sub(row[t], F->mul(c, w[t]));
    }
    ech.push_back(std::move(w));
    piv.push_back(k);
    return true;
  };
  auto column = [&](const FMatrix& A, std::size_t c) {
    std::vector<FMatrix::Elem> v(m);
    for (std::size_t r = 0; r < m; ++r) v[r] = A.at(r, c);
    return v;
  };
  // J M first, then generators
  for (auto& A : X)
    for (std::size_t c = 0; c < m; ++c) insert(column(A, c));
  std::vector<std::vector<FMatrix::Elem>> gens;
  for (std::size_t c = 0; c < m; ++c) {
    auto e = column(I, c);
    if (insert(e)) gens.push_back(e);
  }
  ech.clear();
  piv.clear();
  std::vector<std::vector<FMatrix::Elem>> basis;
  AdaptedBasis out;
  // layer by layer: X^beta m_l with |beta| = s, beta in lex order
  std::vector<std::vector<std::vector<FMatrix::Elem>>> layer{gens};
  std::vector<std::vector<std::size_t>> last_var{std::vector<std::size_t>(gens.size(), 0)};
  for (int s = 0; !layer.back().empty() && basis.size() < m; ++s) {
    auto& cur = layer.back();
    for (auto& v : cur)
      if (insert(v)) {
        basis.push_back(v);
        out.degree.push_back(s);
      }
    std::vector<std::vector<FMatrix::Elem>> next;
    std::vector<std::size_t> next_var;
    for (std::size_t idx = 0; idx < cur.size(); ++idx)
      for (std::size_t i = last_var.back()[idx]; i < X.size(); ++i) {
        std::vector<FMatrix::Elem> w(m, 0);
        for (std::size_t r = 0; r < m; ++r)
          for (std::size_t c = 0; c < m; ++c)
            if (X[i].at(r, c) && cur[idx][c]) w[r] = F->add(w[r], F->mul(X[i].at(r, c), cur[idx][c]));
        bool zero = true;
        for (auto x : w) zero = zero && !x;
        if (zero) continue;
        next.push_back(std::move(w));
        next_var.push_back(i);
      }
    layer.push_back(std::move(next));
    last_var.push_back(std::move(next_var));
  }
  if (basis.size() != m) throw Error("adapted basis does not span the module");
  out.P = FMatrix(F, m, m);
  for (std::size_t c = 0; c < m; ++c)
    for (std::size_t r = 0; r < m; ++r) out.P.at(r, c) = basis[c][r];
  return out;
}

std::vector<FMatrix> nilpotent_generators(const ModuleRep& M, const Subgroup& E) {
  std::vector<FMatrix> out;
  FMatrix I = FMatrix::identity(M.field(), M.dim());
  for (Elt g : E.jbasis) out.push_back(M.rho(g) - I);
  return out;
}

FMatrix radical_action(const ModuleRep& M, const Subgroup& E, const FieldPtr& F,
                       const std::vector<FMatrix::Elem>& a) {
  if (a.size() != E.jbasis.size()) throw InvalidInput("coefficient vector does not match J_E");
  if (F->characteristic() != M.prime()) throw InvalidInput("coefficient field has the wrong characteristic");
  std::size_t m = M.dim();
  unsigned p = M.prime();
  FMatrix R(F, m, m);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k]) continue;
    const FMatrix& A = M.rho(E.jbasis[k]);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        FMatrix::Elem x = A.at(i, j);
        if (i == j) x = (x + p - 1) % p;
        if (x) R.at(i, j) = F->add(R.at(i, j), F->mul(a[k], x));
      }
  }
  return R;
}

}  // namespace pib
