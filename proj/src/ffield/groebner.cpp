#include "ffield/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

#include "ffield/errors.hpp"

namespace pib {

namespace {

struct Pair {
  Monomial lcm;
  size_t i, j;
};

struct PairLess {
  bool operator()(const Pair& a, const Pair& b) const {
    int c = grevlex_cmp(a.lcm, b.lcm);
    if (c != 0) return c < 0;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  }
};

const MultiPoly* find_reducer(const Monomial& m, const std::vector<MultiPoly>& G, const std::vector<bool>* active) {
  for (size_t k = 0; k < G.size(); ++k) {
    if (active && !(*active)[k]) continue;
    if (G[k].lm().divides(m)) return &G[k];
  }
  return nullptr;
}

MultiPoly reduce_full(MultiPoly f, const std::vector<MultiPoly>& G, const std::vector<bool>* active) {
  if (f.is_zero()) return f;
  const RingPtr R = f.ring();
  unsigned p = R->p();
  std::vector<MultiPoly::Term> done;
  while (!f.is_zero()) {
    const auto lt = f.terms().front();
    const MultiPoly* g = find_reducer(lt.first, G, active);
    if (g) {
      MultiPoly::Coeff c = lt.second * R->inv(g->lc()) % p;
      f = f.sub_mul(*g, lt.first / g->lm(), c);
    } else {
      done.push_back(lt);
      f = f.sub_mul(MultiPoly::term(R, lt.first, lt.second), Monomial{}, 1);
    }
  }
  return MultiPoly::from_terms(R, std::move(done));
}

MultiPoly spoly(const MultiPoly& a, const MultiPoly& b, const Monomial& l) {
  const RingPtr& R = a.ring();
  MultiPoly x = a.mul_term(l / a.lm(), R->inv(a.lc()));
  return x.sub_mul(b, l / b.lm(), R->inv(b.lc()));
}

}  // namespace

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
  return reduce_full(f, basis, nullptr);
}

std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens, const GroebnerLimits& lim) {
  RingPtr R;
  std::vector<MultiPoly> G;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (!R) R = g.ring();
    if (g.is_constant()) return {MultiPoly::constant(g.ring(), 1)};
    G.push_back(g.monic());
  }
  if (G.empty()) return {};
  // start from a self-reduced list to keep the pair queue short
  std::sort(G.begin(), G.end(), [](const MultiPoly& a, const MultiPoly& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
  {
    std::vector<MultiPoly> H;
    for (auto& g : G) {
      MultiPoly r = reduce_full(g, H, nullptr);
      if (r.is_zero()) continue;
      if (r.is_constant()) return {MultiPoly::constant(R, 1)};
      H.push_back(r.monic());
    }
    G.swap(H);
  }

  std::vector<MultiPoly> basis;
  std::vector<bool> active;
  std::set<Pair, PairLess> queue;
  size_t pairs_seen = 0;

  auto add_element = [&](MultiPoly h) {
    size_t t = basis.size();
    basis.push_back(std::move(h));
    active.push_back(true);
    const Monomial& lt = basis[t].lm();
    // criterion B on the existing queue
    for (auto it = queue.begin(); it != queue.end();) {
      const Pair& q = *it;
      if (lt.divides(q.lcm) && basis[q.i].lm().lcm(lt) != q.lcm && basis[q.j].lm().lcm(lt) != q.lcm)
        it = queue.erase(it);
      else
        ++it;
    }
    // new pairs, pruned by the chain and product criteria
    std::vector<Pair> fresh;
    for (size_t i = 0; i < t; ++i) {
      if (!active[i]) continue;
      fresh.push_back({basis[i].lm().lcm(lt), i, t});
    }
    std::vector<bool> keep(fresh.size(), true);
    for (size_t a = 0; a < fresh.size(); ++a) {
      for (size_t b = 0; b < fresh.size() && keep[a]; ++b) {
        if (a == b || !keep[b]) continue;
        if (fresh[b].lcm.divides(fresh[a].lcm) && (fresh[b].lcm != fresh[a].lcm || b < a)) keep[a] = false;
      }
    }
    for (size_t a = 0; a < fresh.size(); ++a) {
      if (!keep[a]) continue;
      if (basis[fresh[a].i].lm().coprime(lt)) continue;
      queue.insert(fresh[a]);
      if (++pairs_seen > lim.max_pairs) throw ResourceLimit("groebner pair cap exceeded");
    }
    for (size_t i = 0; i < t; ++i)
      if (active[i] && lt.divides(basis[i].lm()) && lt != basis[i].lm()) active[i] = false;
  };

  for (auto& g : G) add_element(g);

  while (!queue.empty()) {
    Pair pr = *queue.begin();
    queue.erase(queue.begin());
    if (pr.lcm.deg > lim.max_degree) throw ResourceLimit("groebner degree cap exceeded");
    MultiPoly s = spoly(basis[pr.i], basis[pr.j], pr.lcm);
    MultiPoly h = reduce_full(std::move(s), basis, nullptr);
    if (h.is_zero()) continue;
    if (h.is_constant()) return {MultiPoly::constant(R, 1)};
    add_element(h.monic());
  }

  // minimal, then reduced
  std::vector<MultiPoly> mins;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      if (basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i)) redundant = true;
    }
    if (!redundant) mins.push_back(basis[i]);
  }
  std::vector<MultiPoly> out;
  for (size_t i = 0; i < mins.size(); ++i) {
    std::vector<MultiPoly> others;
    for (size_t j = 0; j < mins.size(); ++j)
      if (j != i) others.push_back(mins[j]);
    MultiPoly lead = MultiPoly::term(R, mins[i].lm(), mins[i].lc());
    MultiPoly tail = reduce_full(mins[i] - lead, others, nullptr);
    out.push_back((lead + tail).monic());
  }
  std::sort(out.begin(), out.end(), [](const MultiPoly& a, const MultiPoly& b) { return grevlex_cmp(a.lm(), b.lm()) < 0; });
  return out;
}

bool ideal_is_unit(const std::vector<MultiPoly>& gens, const GroebnerLimits& lim) {
  auto gb = groebner_basis(gens, lim);
  return gb.size() == 1 && gb[0].is_constant();
}

bool radical_membership(const MultiPoly& f, const std::vector<MultiPoly>& gens, const GroebnerLimits& lim) {
  const RingPtr& R = f.ring();
  for (auto& g : gens)
    if (!g.ring()->same(*R)) throw InvalidInput("radical membership across rings");
  if (f.is_zero()) return true;
  auto names = R->names();
  names.push_back("_t" + std::to_string(names.size()));
  RingPtr S = PolyRing::make(R->p(), names);
  std::vector<MultiPoly> images;
  for (unsigned i = 0; i < R->nvars(); ++i) images.push_back(MultiPoly::variable(S, i));
  std::vector<MultiPoly> ext;
  for (auto& g : gens) ext.push_back(g.substitute(images, S));
  MultiPoly t = MultiPoly::variable(S, R->nvars());
  ext.push_back(MultiPoly::constant(S, 1) - t * f.substitute(images, S));
  return ideal_is_unit(ext, lim);
}

std::vector<MultiPoly> linear_basis(const std::vector<MultiPoly>& polys) {
  auto less = [](const Monomial& a, const Monomial& b) { return grevlex_cmp(a, b) < 0; };
  std::map<Monomial, size_t, decltype(less)> pivot(less);
  std::vector<MultiPoly> rows;
  for (auto f : polys) {
    if (f.is_zero()) continue;
    const RingPtr R = f.ring();
    size_t k = 0;
    while (k < f.size()) {
      auto it = pivot.find(f.terms()[k].first);
      if (it == pivot.end()) {
        ++k;
        continue;
      }
      const MultiPoly& r = rows[it->second];
      f = f.sub_mul(r, Monomial{}, f.terms()[k].second * R->inv(r.lc()) % R->p());
    }
    if (f.is_zero()) continue;
    pivot.emplace(f.lm(), rows.size());
    rows.push_back(f.monic());
  }
  return rows;
}

}  // namespace pib
