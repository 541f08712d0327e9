#include "grouplat/lattice.hpp"

#include <algorithm>
#include <set>

#include "ffield/errors.hpp"

namespace pib {

bool Subgroup::contains(Elt g) const { return std::binary_search(elements.begin(), elements.end(), g); }

std::size_t Subgroup::jindex(Elt g) const {
  for (std::size_t k = 0; k < jbasis.size(); ++k)
    if (jbasis[k] == g) return k;
  return npos;
}

Subgroup make_elementary(const GroupTable& G, unsigned p, std::vector<Elt> elements, std::vector<Elt> basis) {
  Subgroup S;
  std::sort(elements.begin(), elements.end());
  S.elements = elements;
  std::size_t n = elements.size();
  unsigned r = 0;
  std::size_t q = 1;
  while (q < n) {
    q *= p;
    ++r;
  }
  if (q != n) throw InvalidInput("subgroup order is not a power of p");
  S.rank = r;
  for (Elt g : elements) {
    if (g != 0 && G.elem_order(g) != p) throw InvalidInput("subgroup has an element of order other than p");
    for (Elt h : elements)
      if (!G.commute(g, h)) throw InvalidInput("subgroup is not abelian");
  }
  // greedy basis by element index unless supplied
  auto span_of = [&](const std::vector<Elt>& b) {
    std::set<Elt> span{0};
    for (Elt g : b) {
      std::set<Elt> next;
      for (Elt s : span) {
        Elt x = s;
        for (unsigned c = 0; c < p; ++c) {
          next.insert(x);
          x = G.mul(x, g);
        }
      }
      span.swap(next);
    }
    return span;
  };
  if (basis.empty()) {
    std::set<Elt> span{0};
    for (Elt g : elements) {
      if (span.count(g)) continue;
      basis.push_back(g);
      span = span_of(basis);
    }
  }
  if (basis.size() != r) throw InvalidInput("subgroup basis has the wrong size");
  for (Elt g : basis)
    if (!S.contains(g)) throw InvalidInput("basis element outside the subgroup");
  S.basis = basis;
  // exponent vectors; enumerate lexicographically
  std::vector<std::pair<std::vector<unsigned>, Elt>> all;
  std::vector<unsigned> c(r, 0);
  while (true) {
    Elt x = 0;
    for (unsigned i = 0; i < r; ++i)
      for (unsigned k = 0; k < c[i]; ++k) x = G.mul(x, basis[i]);
    all.emplace_back(c, x);
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && c[i] == p - 1) c[i--] = 0;
    if (i < 0) break;
    ++c[i];
  }
  std::set<Elt> hit;
  for (auto& [e, x] : all) {
    if (!S.contains(x) || !hit.insert(x).second) throw InvalidInput("basis does not generate the subgroup");
    if (x == 0) continue;
    S.jbasis.push_back(x);
    S.exponents.push_back(e);
  }
  return S;
}

ElabLattice::ElabLattice(GroupPtr G, unsigned p) : G_(std::move(G)), p_(p) {
  const GroupTable& T = *G_;
  if (T.order() % p != 0) throw InvalidInput("p does not divide the group order");
  std::vector<Elt> order_p;
  for (Elt g = 1; g < T.order(); ++g)
    if (T.elem_order(g) == p) order_p.push_back(g);

  auto cyclic = [&](Elt g) {
    std::vector<Elt> v;
    Elt x = 0;
    for (unsigned c = 0; c < p; ++c) {
      v.push_back(x);
      x = T.mul(x, g);
    }
    std::sort(v.begin(), v.end());
    return v;
  };

  std::set<std::vector<Elt>> found;
  std::vector<std::vector<Elt>> layer;
  for (Elt g : order_p) {
    auto v = cyclic(g);
    if (found.insert(v).second) layer.push_back(v);
  }
  while (!layer.empty()) {
    std::vector<std::vector<Elt>> next;
    for (auto& S : layer) {
      for (Elt h : order_p) {
        if (std::binary_search(S.begin(), S.end(), h)) continue;
        bool ok = true;
        for (Elt s : S)
          if (!T.commute(s, h)) {
            ok = false;
            break;
          }
        if (!ok) continue;
        std::vector<Elt> ext;
        for (Elt s : S) {
          Elt x = s;
          for (unsigned c = 0; c < p; ++c) {
            ext.push_back(x);
            x = T.mul(x, h);
          }
        }
        std::sort(ext.begin(), ext.end());
        ext.erase(std::unique(ext.begin(), ext.end()), ext.end());
        if (found.insert(ext).second) next.push_back(ext);
      }
    }
    layer.swap(next);
  }
  for (auto& v : found) {
    index_.emplace(v, members_.size());
    members_.push_back(make_elementary(T, p, v));
  }
  std::size_t m = members_.size();
  for (std::size_t a = 0; a < m; ++a) {
    bool maximal = true;
    for (std::size_t b = 0; b < m; ++b) {
      if (a == b) continue;
      if (includes(b, a)) {
        maximal = false;
        if (members_[b].rank == members_[a].rank + 1) covers_.emplace_back(a, b);
      }
    }
    if (maximal) maximals_.push_back(a);
  }
  conj_.assign(m, std::vector<std::size_t>(T.order()));
  for (std::size_t i = 0; i < m; ++i)
    for (Elt x = 0; x < T.order(); ++x) {
      std::vector<Elt> v;
      for (Elt g : members_[i].elements) v.push_back(T.conj(x, g));
      std::sort(v.begin(), v.end());
      conj_[i][x] = index_.at(v);
    }
}

bool ElabLattice::includes(std::size_t big, std::size_t small) const {
  const auto& B = members_[big].elements;
  const auto& S = members_[small].elements;
  return S.size() <= B.size() && std::includes(B.begin(), B.end(), S.begin(), S.end());
}

std::optional<std::size_t> ElabLattice::intersection(std::size_t a, std::size_t b) const {
  std::vector<Elt> v;
  const auto& A = members_[a].elements;
  const auto& B = members_[b].elements;
  std::set_intersection(A.begin(), A.end(), B.begin(), B.end(), std::back_inserter(v));
  if (v.size() <= 1) return std::nullopt;
  return index_.at(v);
}

std::optional<std::size_t> ElabLattice::find(const std::vector<Elt>& sorted_elements) const {
  auto it = index_.find(sorted_elements);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ConjugationMap ElabLattice::conjugation_map(std::size_t member, Elt x) const {
  if (member >= members_.size()) throw InvalidInput("subgroup not in lattice");
  if (x >= G_->order()) throw InvalidInput("element out of range");
  ConjugationMap cm;
  cm.target = conj_[member][x];
  for (Elt g : members_[member].elements) cm.map.emplace_back(g, G_->conj(x, g));
  return cm;
}

std::size_t ElabLattice::containing_maximal(std::size_t i) const {
  for (auto m : maximals_)
    if (includes(m, i)) return m;
  throw Error("member lies in no maximal subgroup");
}

}  // namespace pib
