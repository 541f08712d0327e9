#include "theta/theta.hpp"

#include <algorithm>

#include "ffield/errors.hpp"
#include "modrep/radical.hpp"

namespace pib {

namespace {

RingPtr chart_ring(const Subgroup& E, std::size_t member, unsigned p) {
  std::vector<std::string> names;
  for (Elt g : E.jbasis) names.push_back(theta_var_name(g, member));
  if (names.size() > kMaxVars)
    throw ResourceLimit("subgroup of order " + std::to_string(E.order()) + " needs more than " +
                        std::to_string(kMaxVars) + " variables");
  return PolyRing::make(p, std::move(names));
}

// sum_k x_k N_k for constant matrices N_k over F_p
PolyMatrix linear_form_matrix(const RingPtr& R, const std::vector<FMatrix>& N, std::size_t m) {
  PolyMatrix out(R, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<MultiPoly::Term> terms;
      for (std::size_t k = 0; k < N.size(); ++k)
        if (auto c = N[k].at(i, j)) terms.emplace_back(Monomial::var(static_cast<unsigned>(k)), static_cast<MultiPoly::Coeff>(c));
      out.at(i, j) = MultiPoly::from_terms(R, std::move(terms));
    }
  out.set_degree_tag(1);
  return out;
}

unsigned small_binom(unsigned n, unsigned k) {
  if (k > n) return 0;
  unsigned long long r = 1;
  for (unsigned i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return static_cast<unsigned>(r);
}

}  // namespace

std::string theta_var_name(Elt g, std::size_t member) {
  return "x_" + std::to_string(g) + "@E" + std::to_string(member);
}

int ThetaOperator::degree() const {
  int d = static_cast<int>(j);
  for (unsigned i = 0; i < twist; ++i) d *= static_cast<int>(lattice->prime());
  return d;
}

const ThetaChart& ThetaOperator::chart_for(std::size_t maximal) const {
  for (auto& c : charts)
    if (c.member == maximal) return c;
  throw InvalidInput("no chart for lattice member " + std::to_string(maximal));
}

ThetaOperator theta_family(LatticePtr L, ModulePtr M, unsigned j) {
  unsigned p = L->prime();
  if (j < 1 || j > p - 1) throw InvalidInput("j must lie in 1..p-1");
  if (M->prime() != p || M->group_ptr().get() != L->group_ptr().get())
    throw InvalidInput("module and lattice disagree on group or prime");
  ThetaOperator T;
  T.lattice = L;
  T.module = M;
  T.j = j;
  for (auto m : L->maximals()) {
    const Subgroup& E = L->member(m);
    ThetaChart c;
    c.member = m;
    c.ring = chart_ring(E, m, p);
    c.linear = linear_form_matrix(c.ring, nilpotent_generators(*M, E), M->dim());
    c.theta = c.linear.power(j);
    c.theta.set_degree_tag(static_cast<int>(j));
    T.charts.push_back(std::move(c));
  }
  if (!family_compatible(T)) throw PropertyViolation("theta family is not compatible on intersections");
  return T;
}

bool charts_compatible(const ThetaOperator& T, std::size_t a, std::size_t b) {
  const ElabLattice& L = *T.lattice;
  const ThetaChart& A = T.charts.at(a);
  const ThetaChart& B = T.charts.at(b);
  auto I = L.intersection(A.member, B.member);
  std::vector<std::string> names;
  const Subgroup* S = I ? &L.member(*I) : nullptr;
  if (S)
    for (Elt g : S->jbasis) names.push_back("x_" + std::to_string(g));
  auto R = PolyRing::make(L.prime(), names);
  auto images = [&](const ThetaChart& C) {
    std::vector<MultiPoly> im;
    for (Elt g : L.member(C.member).jbasis) {
      std::size_t k = S ? S->jindex(g) : Subgroup::npos;
      im.push_back(k == Subgroup::npos ? MultiPoly(R) : MultiPoly::variable(R, static_cast<unsigned>(k)));
    }
    return im;
  };
  return A.theta.substitute(images(A), R) == B.theta.substitute(images(B), R);
}

bool family_compatible(const ThetaOperator& T) {
  for (std::size_t a = 0; a < T.charts.size(); ++a)
    for (std::size_t b = a + 1; b < T.charts.size(); ++b)
      if (!charts_compatible(T, a, b)) return false;
  return true;
}

PiPoint make_pi_point(const ElabLattice& L, std::size_t member, FieldPtr F, std::vector<GaloisField::Elem> a) {
  if (member >= L.size()) throw InvalidInput("subgroup not in lattice");
  const Subgroup& E = L.member(member);
  if (a.size() != E.jbasis.size()) throw InvalidInput("coefficient vector does not match J_E");
  if (F->characteristic() != L.prime()) throw InvalidInput("coefficient field has the wrong characteristic");
  PiPoint xi;
  xi.member = member;
  xi.field = F;
  xi.a = std::move(a);
  // class of g - e in J/J^2 is its exponent vector
  for (unsigned i = 0; i < E.rank && !xi.flat; ++i) {
    GaloisField::Elem c = 0;
    for (std::size_t k = 0; k < xi.a.size(); ++k)
      if (E.exponents[k][i] && xi.a[k]) c = F->add(c, F->mul(xi.a[k], E.exponents[k][i]));
    xi.flat = c != 0;
  }
  return xi;
}

FMatrix specialize_via(const ThetaOperator& T, const PiPoint& xi, std::size_t maximal) {
  const ElabLattice& L = *T.lattice;
  if (xi.member >= L.size()) throw InvalidInput("subgroup not in lattice");
  if (!L.includes(maximal, xi.member)) throw InvalidInput("chosen maximal does not contain the subgroup");
  const ThetaChart& C = T.chart_for(maximal);
  const Subgroup& E = L.member(xi.member);
  std::vector<GaloisField::Elem> pt;
  for (Elt g : L.member(maximal).jbasis) {
    auto k = E.jindex(g);
    pt.push_back(k == Subgroup::npos ? 0 : xi.a[k]);
  }
  return C.theta.evaluate(xi.field, pt);
}

FMatrix specialize(const ThetaOperator& T, const PiPoint& xi) {
  if (xi.member >= T.lattice->size()) throw InvalidInput("subgroup not in lattice");
  return specialize_via(T, xi, T.lattice->containing_maximal(xi.member));
}

bool verify_p_nilpotent(const ThetaOperator& T) {
  unsigned p = T.lattice->prime();
  for (auto& c : T.charts)
    if (!c.linear.power(p).is_zero()) return false;
  return true;
}

PolyMatrix pullback_sE(const ThetaOperator& T, std::size_t maximal) {
  const ThetaChart& C = T.chart_for(maximal);
  const Subgroup& E = T.lattice->member(maximal);
  if (E.basis.size() != E.rank) throw InvalidInput("subgroup basis not set");
  std::vector<std::string> names;
  for (unsigned i = 0; i < E.rank; ++i) names.push_back("y_" + std::to_string(i + 1));
  auto R = PolyRing::make(T.lattice->prime(), names);
  std::vector<MultiPoly> im(E.jbasis.size(), MultiPoly(R));
  for (unsigned i = 0; i < E.rank; ++i) im[E.jindex(E.basis[i])] = MultiPoly::variable(R, i);
  PolyMatrix out = C.theta.substitute(im, R);
  out.set_degree_tag(T.degree());
  return out;
}

ThetaOperator frobenius_twist(const ThetaOperator& T, unsigned e) {
  ThetaOperator out = T;
  unsigned k = 1;
  for (unsigned i = 0; i < e; ++i) k *= T.lattice->prime();
  if (static_cast<unsigned long long>(k) * T.j > 255) throw ResourceLimit("Frobenius twist exceeds the exponent range");
  out.twist = T.twist + e;
  for (auto& c : out.charts) {
    c.linear = c.linear.stretch(k);
    c.theta = c.theta.stretch(k);
    c.theta.set_degree_tag(out.degree());
  }
  return out;
}

ThetaOperator restrict_family(const ThetaOperator& T, const std::vector<Elt>& sigma) {
  if (!std::is_sorted(sigma.begin(), sigma.end()) || sigma.empty() || sigma[0] != 0)
    throw InvalidInput("subgroup must be a sorted element list containing the identity");
  const ElabLattice& L = *T.lattice;
  auto S = L.group().subgroup(sigma);
  auto Ls = std::make_shared<const ElabLattice>(S, L.prime());
  auto Ms = ModuleRep::restrict_to(*T.module, sigma, S);
  ThetaOperator out;
  out.lattice = Ls;
  out.module = Ms;
  out.j = T.j;
  out.twist = T.twist;
  for (auto m : Ls->maximals()) {
    const Subgroup& Es = Ls->member(m);
    std::vector<Elt> up;
    for (Elt g : Es.elements) up.push_back(sigma[g]);
    auto idx = L.find(up);
    if (!idx) throw Error("restricted subgroup missing from the ambient lattice");
    std::size_t big = L.containing_maximal(*idx);
    const ThetaChart& C = T.chart_for(big);
    ThetaChart c;
    c.member = m;
    c.ring = chart_ring(Es, m, L.prime());
    std::vector<MultiPoly> im;
    for (Elt g : L.member(big).jbasis) {
      auto it = std::lower_bound(sigma.begin(), sigma.end(), g);
      std::size_t k = Subgroup::npos;
      if (it != sigma.end() && *it == g) k = Es.jindex(static_cast<Elt>(it - sigma.begin()));
      im.push_back(k == Subgroup::npos ? MultiPoly(c.ring) : MultiPoly::variable(c.ring, static_cast<unsigned>(k)));
    }
    c.linear = C.linear.substitute(im, c.ring);
    c.theta = C.theta.substitute(im, c.ring);
    c.theta.set_degree_tag(out.degree());
    out.charts.push_back(std::move(c));
  }
  return out;
}

bool equivariance_holds(const ThetaOperator& T, std::size_t maximal, Elt x) {
  const ElabLattice& L = *T.lattice;
  const GroupTable& G = L.group();
  const ThetaChart& C = T.chart_for(maximal);
  std::size_t target = L.conjugate_index(maximal, x);
  const ThetaChart& D = T.chart_for(target);
  const Subgroup& Et = L.member(target);
  std::vector<MultiPoly> im;
  for (Elt g : L.member(maximal).jbasis)
    im.push_back(MultiPoly::variable(D.ring, static_cast<unsigned>(Et.jindex(G.conj(x, g)))));
  const FMatrix& rx = T.module->rho(x);
  const FMatrix& rxi = T.module->rho(G.inv(x));
  return C.theta.substitute(im, D.ring).conjugated(rx, rxi) == D.theta;
}

MonomialChart monomial_chart(const ElabLattice& L, const ModuleRep& M, std::size_t member, const FMatrix* basis) {
  const Subgroup& E = L.member(member);
  unsigned p = L.prime();
  MonomialChart mc;
  mc.member = member;
  mc.alphas = E.exponents;
  std::vector<std::string> names;
  for (auto& al : mc.alphas) {
    std::string s = "c_";
    for (std::size_t i = 0; i < al.size(); ++i) s += (i ? "." : "") + std::to_string(al[i]);
    names.push_back(s + "@E" + std::to_string(member));
  }
  if (names.size() > kMaxVars) throw ResourceLimit("too many chart variables");
  mc.ring = PolyRing::make(p, names);
  auto F = M.field();
  FMatrix I = FMatrix::identity(F, M.dim());
  std::vector<FMatrix> X;
  for (Elt g : E.basis) X.push_back(M.rho(g) - I);
  if (basis) {
    FMatrix Pi = basis->inverse();
    for (auto& x : X) x = Pi * x * *basis;
  }
  std::vector<FMatrix> N;
  for (auto& al : mc.alphas) {
    FMatrix P = I;
    for (unsigned i = 0; i < E.rank; ++i)
      for (unsigned t = 0; t < al[i]; ++t) P = P * X[i];
    N.push_back(std::move(P));
  }
  mc.linear = linear_form_matrix(mc.ring, N, M.dim());
  std::size_t n = mc.alphas.size();
  mc.a_to_c = FMatrix(F, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      unsigned v = 1;
      for (unsigned i = 0; i < E.rank; ++i) v = v * small_binom(E.exponents[c][i], mc.alphas[r][i]) % p;
      mc.a_to_c.at(r, c) = v;
    }
  for (unsigned i = 0; i < E.rank; ++i) {
    std::vector<unsigned> unit(E.rank, 0);
    unit[i] = 1;
    mc.unit_index.push_back(static_cast<std::size_t>(
        std::find(mc.alphas.begin(), mc.alphas.end(), unit) - mc.alphas.begin()));
  }
  return mc;
}

}  // namespace pib
