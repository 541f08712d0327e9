#include "modrep/module.hpp"

#include <algorithm>
#include <map>

#include "ffield/errors.hpp"

namespace pib {

ModuleRep::ModuleRep(GroupPtr G, unsigned p, std::vector<FMatrix> gens, std::string name)
    : G_(std::move(G)), p_(p), F_(GaloisField::get(p, 1)), m_(0), name_(std::move(name)), gens_(std::move(gens)) {
  if (gens_.size() != G_->generators().size())
    throw InvalidInput("expected " + std::to_string(G_->generators().size()) + " generator matrices, got " +
                       std::to_string(gens_.size()));
  if (!gens_.empty()) m_ = gens_[0].rows();
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    auto& A = gens_[i];
    if (A.rows() != A.cols() || A.rows() != m_) throw InvalidInput("generator matrices must be square of one size");
    if (A.field()->characteristic() != p || A.field()->degree() != 1)
      throw InvalidInput("generator matrices must have entries in F_p");
    if (A.rank() != m_) throw InvalidInput("generator matrix " + std::to_string(i) + " is singular");
  }
  if (m_ == 0) m_ = 1;  // trivial group with no generators: use the 1-dim module
  memo_.resize(G_->order());
}

ModulePtr ModuleRep::load(GroupPtr G, unsigned p, std::vector<FMatrix> gens, std::string name) {
  if (!is_prime(p)) throw InvalidInput("module prime must be prime");
  auto M = std::make_shared<ModuleRep>(std::move(G), p, std::move(gens), std::move(name));
  M->validate();
  return M;
}

const FMatrix& ModuleRep::rho(Elt g) const {
  if (g >= G_->order()) throw InvalidInput("element out of range");
  std::lock_guard<std::mutex> lock(mu_);
  if (memo_[g]) return *memo_[g];
  // walk up the BFS tree to the nearest memoized ancestor, then back down
  std::vector<Elt> chain;
  Elt x = g;
  while (x != 0 && !memo_[x]) {
    chain.push_back(x);
    x = G_->parent(x);
  }
  if (!memo_[0]) memo_[0] = std::make_unique<FMatrix>(FMatrix::identity(F_, m_));
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Elt y = *it;
    memo_[y] = std::make_unique<FMatrix>(*memo_[G_->parent(y)] * gens_[G_->parent_gen(y)]);
  }
  return *memo_[g];
}

void ModuleRep::validate() const {
  // rho(g s) = rho(g) rho(s) for all g and generators s implies a homomorphism
  const auto& gens = G_->generators();
  for (Elt g = 0; g < G_->order(); ++g)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Elt gs = G_->mul(g, gens[s]);
      if (rho(gs) != rho(g) * gens_[s])
        throw InvalidInput("module violates the group relations at the pair (" + std::to_string(g) + ", " +
                           std::to_string(gens[s]) + ")");
    }
}

ModulePtr ModuleRep::trivial(GroupPtr G, unsigned p) {
  auto F = GaloisField::get(p, 1);
  std::vector<FMatrix> gens(G->generators().size(), FMatrix::identity(F, 1));
  return load(std::move(G), p, std::move(gens), "trivial");
}

ModulePtr ModuleRep::regular(GroupPtr G, unsigned p) {
  auto F = GaloisField::get(p, 1);
  std::size_t n = G->order();
  std::vector<FMatrix> gens;
  for (Elt s : G->generators()) {
    FMatrix A(F, n, n);
    for (Elt h = 0; h < n; ++h) A.at(G->mul(s, h), h) = 1;
    gens.push_back(std::move(A));
  }
  return load(std::move(G), p, std::move(gens), "regular");
}

ModulePtr ModuleRep::natural(GroupPtr G) {
  if (!G->has_matrices()) throw InvalidInput("natural module needs a matrix group");
  unsigned p = G->matrix_prime(), n = G->matrix_dim();
  auto F = GaloisField::get(p, 1);
  std::vector<FMatrix> gens;
  for (Elt s : G->generators()) {
    FMatrix A(F, n, n);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) A.at(i, j) = static_cast<FMatrix::Elem>(G->key(s)[i * n + j]);
    gens.push_back(std::move(A));
  }
  return load(std::move(G), p, std::move(gens), "natural");
}

namespace {

// monomials of degree m in n variables, lexicographically decreasing
void monomials(unsigned n, unsigned m, std::vector<unsigned>& cur, std::vector<std::vector<unsigned>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(m);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = static_cast<int>(m); a >= 0; --a) {
    cur.push_back(static_cast<unsigned>(a));
    monomials(n, m - a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

ModulePtr ModuleRep::symmetric_power(GroupPtr G, unsigned m) {
  auto nat = natural(G);
  unsigned p = nat->prime();
  unsigned n = static_cast<unsigned>(nat->dim());
  if (m == 0) return trivial(G, p);
  std::vector<std::vector<unsigned>> basis;
  std::vector<unsigned> cur;
  monomials(n, m, cur, basis);
  std::map<std::vector<unsigned>, std::size_t> pos;
  for (std::size_t i = 0; i < basis.size(); ++i) pos[basis[i]] = i;
  const GaloisField& F = *nat->field();
  std::vector<FMatrix> gens;
  for (const auto& A : nat->generator_matrices()) {
    FMatrix S(nat->field(), basis.size(), basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
      // expand prod_i (A v_i)^{alpha_i}, with A v_i = sum_k A(k,i) v_k
      std::map<std::vector<unsigned>, FMatrix::Elem> poly{{std::vector<unsigned>(n, 0), 1}};
      for (unsigned i = 0; i < n; ++i)
        for (unsigned t = 0; t < basis[c][i]; ++t) {
          std::map<std::vector<unsigned>, FMatrix::Elem> next;
          for (auto& [mono, coef] : poly)
            for (unsigned k = 0; k < n; ++k) {
              auto a = A.at(k, i);
              if (!a) continue;
              auto e = mono;
              ++e[k];
              auto& slot = next[e];
              slot = F.add(slot, F.mul(coef, a));
            }
          poly.swap(next);
        }
      for (auto& [mono, coef] : poly)
        if (coef) S.at(pos.at(mono), c) = coef;
    }
    gens.push_back(std::move(S));
  }
  return load(std::move(G), p, std::move(gens), "sym" + std::to_string(m));
}

ModulePtr ModuleRep::direct_sum(const ModuleRep& A, const ModuleRep& B) {
  if (A.G_ != B.G_ || A.p_ != B.p_) throw InvalidInput("direct sum of modules over different groups");
  std::size_t a = A.dim(), b = B.dim();
  std::vector<FMatrix> gens;
  for (std::size_t s = 0; s < A.gens_.size(); ++s) {
    FMatrix S(A.F_, a + b, a + b);
    for (std::size_t i = 0; i < a; ++i)
      for (std::size_t j = 0; j < a; ++j) S.at(i, j) = A.gens_[s].at(i, j);
    for (std::size_t i = 0; i < b; ++i)
      for (std::size_t j = 0; j < b; ++j) S.at(a + i, a + j) = B.gens_[s].at(i, j);
    gens.push_back(std::move(S));
  }
  return load(A.G_, A.p_, std::move(gens), A.name_ + "+" + B.name_);
}

ModulePtr ModuleRep::submodule(const ModuleRep& M, FMatrix W, std::string name) {
  if (W.cols() != M.dim()) throw InvalidInput("subspace has the wrong ambient dimension");
  auto piv = W.row_reduce();
  if (piv.empty()) throw InvalidInput("zero subspace");
  const GaloisField& F = *M.F_;
  std::size_t k = piv.size();
  std::vector<FMatrix> gens;
  for (const auto& A : M.gens_) {
    FMatrix S(M.F_, k, k);
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<FMatrix::Elem> v(M.dim(), 0);
      for (std::size_t r = 0; r < M.dim(); ++r)
        for (std::size_t c = 0; c < M.dim(); ++c)
          if (A.at(r, c) && W.at(i, c)) v[r] = F.add(v[r], F.mul(A.at(r, c), W.at(i, c)));
      // coordinates are read off the pivots; the remainder must vanish
      for (std::size_t j = 0; j < k; ++j) {
        auto c = v[piv[j]];
        S.at(j, i) = c;
        if (!c) continue;
        for (std::size_t t = 0; t < M.dim(); ++t) v[t] = F.sub(v[t], F.mul(c, W.at(j, t)));
      }
      for (auto x : v)
        if (x) throw InvalidInput("subspace is not invariant");
    }
    gens.push_back(std::move(S));
  }
  return load(M.G_, M.p_, std::move(gens), std::move(name));
}

ModulePtr ModuleRep::quotient(const ModuleRep& M, FMatrix W, std::string name) {
  if (W.cols() != M.dim()) throw InvalidInput("subspace has the wrong ambient dimension");
  auto piv = W.row_reduce();
  const GaloisField& F = *M.F_;
  std::size_t m = M.dim();
  std::vector<bool> is_piv(m, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> rest;
  for (std::size_t c = 0; c < m; ++c)
    if (!is_piv[c]) rest.push_back(c);
  if (rest.empty()) throw InvalidInput("quotient by the whole module");
  auto reduce = [&](std::vector<FMatrix::Elem>& v) {
    for (std::size_t j = 0; j < piv.size(); ++j) {
      auto c = v[piv[j]];
      if (!c) continue;
      for (std::size_t t = 0; t < m; ++t) v[t] = F.sub(v[t], F.mul(c, W.at(j, t)));
    }
  };
  std::vector<FMatrix> gens;
  for (const auto& A : M.gens_) {
    for (std::size_t i = 0; i < piv.size(); ++i) {
      std::vector<FMatrix::Elem> v(m, 0);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c)
          if (A.at(r, c) && W.at(i, c)) v[r] = F.add(v[r], F.mul(A.at(r, c), W.at(i, c)));
      reduce(v);
      for (auto x : v)
        if (x) throw InvalidInput("subspace is not invariant");
    }
    FMatrix S(M.F_, rest.size(), rest.size());
    for (std::size_t i = 0; i < rest.size(); ++i) {
      std::vector<FMatrix::Elem> v(m, 0);
      for (std::size_t r = 0; r < m; ++r) v[r] = A.at(r, rest[i]);
      reduce(v);
      for (std::size_t j = 0; j < rest.size(); ++j) S.at(j, i) = v[rest[j]];
    }
    gens.push_back(std::move(S));
  }
  return load(M.G_, M.p_, std::move(gens), std::move(name));
}

std::vector<FMatrix> augmentation_powers(const GroupTable& G, const std::vector<Elt>& elems, unsigned p,
                                         unsigned jmax) {
  auto F = GaloisField::get(p, 1);
  std::size_t n = elems.size();
  std::map<Elt, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[elems[i]] = i;
  if (!pos.count(0)) throw InvalidInput("element list must contain the identity");
  std::size_t e = pos.at(0);
  std::vector<FMatrix> out;
  FMatrix J(F, n - 1, n);
  {
    std::size_t r = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == e) continue;
      J.at(r, i) = 1;
      J.at(r, e) = F->neg(1);
      ++r;
    }
  }
  J.row_reduce();
  out.push_back(J);
  for (unsigned j = 2; j <= jmax; ++j) {
    const FMatrix& prev = out.back();
    std::vector<std::vector<FMatrix::Elem>> rows;
    for (Elt g : elems) {
      if (g == 0) continue;
      for (std::size_t i = 0; i < prev.rows(); ++i) {
        // (g - e) v
        std::vector<FMatrix::Elem> w(n, 0);
        for (std::size_t h = 0; h < n; ++h) {
          auto c = prev.at(i, h);
          if (!c) continue;
          auto it = pos.find(G.mul(g, elems[h]));
          if (it == pos.end()) throw InvalidInput("element list is not closed under multiplication");
          w[it->second] = F->add(w[it->second], c);
          w[h] = F->sub(w[h], c);
        }
        rows.push_back(std::move(w));
      }
    }
    FMatrix N = FMatrix::from_rows(F, rows, n);
    if (rows.empty()) N = FMatrix(F, 0, n);
    N.row_reduce();
    out.push_back(N);
  }
  return out;
}

ModulePtr ModuleRep::radical_quotient(GroupPtr G, unsigned p, unsigned k) {
  if (k == 0) throw InvalidInput("radical power must be positive");
  if (G->order() > 4096) throw ResourceLimit("group too large for a regular-module quotient");
  auto reg = regular(G, p);
  std::vector<Elt> all(G->order());
  for (Elt g = 0; g < G->order(); ++g) all[g] = g;
  auto pw = augmentation_powers(*G, all, p, k);
  if (pw.back().rows() == 0) return reg;
  return quotient(*reg, pw.back(), "kG/J^" + std::to_string(k));
}

ModulePtr ModuleRep::cyclic_quotient(GroupPtr G, unsigned p, const std::vector<Elt>& xs) {
  if (G->order() > 4096) throw ResourceLimit("group too large for a regular-module quotient");
  auto reg = regular(G, p);
  auto F = reg->field();
  std::vector<std::vector<FMatrix::Elem>> rows;
  for (Elt x : xs) {
    if (x >= G->order()) throw InvalidInput("element out of range");
    if (x == 0) continue;
    for (Elt h = 0; h < G->order(); ++h) {
      std::vector<FMatrix::Elem> w(G->order(), 0);
      w[G->mul(h, x)] = F->add(w[G->mul(h, x)], 1);
      w[h] = F->sub(w[h], 1);
      rows.push_back(std::move(w));
    }
  }
  if (rows.empty()) return reg;
  return quotient(*reg, FMatrix::from_rows(F, rows, G->order()), "cyclic-quotient");
}

ModulePtr ModuleRep::restrict_to(const ModuleRep& M, const std::vector<Elt>& H, GroupPtr S) {
  if (!S) S = M.G_->subgroup(H);
  if (S->order() != H.size()) throw InvalidInput("subgroup table does not match the element list");
  std::vector<FMatrix> gens;
  for (Elt s : S->generators()) gens.push_back(M.rho(H[s]));
  return load(S, M.p_, std::move(gens), M.name_ + "|H");
}

}  // namespace pib
