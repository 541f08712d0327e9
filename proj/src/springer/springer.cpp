#include "springer/springer.hpp"

#include "ffield/errors.hpp"
#include "modrep/radical.hpp"

namespace pib {

namespace {

unsigned field_prime(const FMatrix& A) { return A.field()->characteristic(); }

FMatrix group_matrix(const GroupTable& G, Elt g) {
  auto F = GaloisField::get(G.matrix_prime(), 1);
  unsigned n = G.matrix_dim();
  FMatrix A(F, n, n);
  const auto& k = G.key(g);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned c = 0; c < n; ++c) A.at(i, c) = static_cast<FMatrix::Elem>(k[i * n + c]);
  return A;
}

FMatrix bracket(const FMatrix& a, const FMatrix& b) { return a * b - b * a; }

// rank of a list of matrices as vectors
std::size_t span_rank(const std::vector<FMatrix>& v) {
  if (v.empty()) return 0;
  std::size_t n = v[0].rows() * v[0].cols();
  FMatrix A(v[0].field(), v.size(), n);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t r = 0; r < v[i].rows(); ++r)
      for (std::size_t c = 0; c < v[i].cols(); ++c) A.at(i, r * v[i].cols() + c) = v[i].at(r, c);
  return A.rank();
}

}  // namespace

unsigned nilpotency_class(const FMatrix& N) {
  if (N.rows() != N.cols()) throw InvalidInput("nilpotency class of a non-square matrix");
  FMatrix P = N;
  unsigned k = 0;
  while (!P.is_zero()) {
    if (++k > N.rows()) throw InvalidInput("matrix is not nilpotent");
    P = P * N;
  }
  return k;
}

FMatrix exp_nilpotent(const FMatrix& N) {
  unsigned p = field_prime(N);
  unsigned cls = nilpotency_class(N);
  if (cls >= p) throw InvalidInput("nilpotency class " + std::to_string(cls) + " is not below p");
  const auto& F = N.field();
  FMatrix out = FMatrix::identity(F, N.rows()), P = out;
  GaloisField::Elem fact = 1;
  for (unsigned k = 1; k <= cls; ++k) {
    P = P * N;
    fact = F->mul(fact, F->from_int(k));
    out = out + P.scaled(F->inv(fact));
  }
  return out;
}

FMatrix log_unipotent(const FMatrix& u) {
  const auto& F = u.field();
  FMatrix X = u - FMatrix::identity(F, u.rows());
  unsigned p = field_prime(u);
  unsigned cls = nilpotency_class(X);
  if (cls >= p) throw InvalidInput("unipotent class " + std::to_string(cls) + " is not below p");
  FMatrix out(F, u.rows(), u.cols()), P = FMatrix::identity(F, u.rows());
  for (unsigned k = 1; k <= cls; ++k) {
    P = P * X;
    auto c = F->inv(F->from_int(k));
    out = out + P.scaled(k % 2 ? c : F->neg(c));
  }
  return out;
}

const FMatrix& EllLattice::log_of(Elt g) const {
  if (g >= logs.size() || !logs[g]) throw InvalidInput("element is not a p-element");
  return *logs[g];
}

EllLattice ell_lattice(LatticePtr L) {
  const GroupTable& G = L->group();
  if (!G.has_matrices()) throw InvalidInput("group was not given by matrices");
  EllLattice EL;
  EL.lattice = L;
  EL.p = L->prime();
  EL.n = G.matrix_dim();
  if (G.matrix_prime() != EL.p) throw InvalidInput("matrix group is not over F_p");
  if (EL.p <= EL.n) throw InvalidInput("need p > n for the truncated exponential");
  EL.logs.resize(G.order());
  std::vector<Elt> pel;
  for (Elt g = 0; g < G.order(); ++g) {
    if (g && G.elem_order(g) != EL.p) continue;
    FMatrix u = group_matrix(G, g);
    FMatrix X = u - FMatrix::identity(u.field(), EL.n);
    if (!X.power(EL.n).is_zero()) throw InvalidInput("p-element " + std::to_string(g) + " is not unipotent");
    EL.logs[g] = log_unipotent(u);
    if (exp_nilpotent(*EL.logs[g]) != u) throw PropertyViolation("exp(log u) != u");
    pel.push_back(g);
  }
  // commuting elements <=> commuting logs
  for (std::size_t a = 0; a < pel.size(); ++a)
    for (std::size_t b = a + 1; b < pel.size(); ++b) {
      bool gc = G.commute(pel[a], pel[b]);
      bool lc = bracket(*EL.logs[pel[a]], *EL.logs[pel[b]]).is_zero();
      if (gc != lc) throw PropertyViolation("commuting differs between elements and their logs");
    }
  for (std::size_t m = 0; m < L->size(); ++m) {
    const Subgroup& E = L->member(m);
    std::vector<FMatrix> basis;
    for (Elt g : E.basis) basis.push_back(*EL.logs[g]);
    if (span_rank(basis) != E.rank) throw PropertyViolation("logs of a subgroup basis are dependent");
    for (std::size_t k = 0; k < E.jbasis.size(); ++k) {
      // log is additive on E: log(prod g_i^{k_i}) = sum k_i log(g_i)
      FMatrix s(basis[0].field(), EL.n, EL.n);
      for (unsigned i = 0; i < E.rank; ++i) s = s + basis[i].scaled(E.exponents[k][i]);
      const FMatrix& lg = *EL.logs[E.jbasis[k]];
      if (s != lg) throw PropertyViolation("log(E) is not the span of the basis logs");
      if (!lg.power(EL.p).is_zero()) throw PropertyViolation("log has nonzero p-th power");
    }
    EL.subalgebra.push_back(std::move(basis));
  }
  return EL;
}

bool ell_conjugation_compatible(const EllLattice& EL, std::size_t member, Elt x) {
  const ElabLattice& L = *EL.lattice;
  const GroupTable& G = L.group();
  FMatrix X = group_matrix(G, x), Xi = group_matrix(G, G.inv(x));
  std::size_t target = L.conjugate_index(member, x);
  std::vector<FMatrix> moved, there;
  for (Elt g : L.member(member).jbasis) {
    FMatrix ad = X * EL.log_of(g) * Xi;
    if (ad != EL.log_of(G.conj(x, g))) return false;
    moved.push_back(ad);
  }
  for (Elt g : L.member(target).jbasis) there.push_back(EL.log_of(g));
  // equal spans
  std::vector<FMatrix> both = moved;
  both.insert(both.end(), there.begin(), there.end());
  return span_rank(moved) == span_rank(there) && span_rank(both) == span_rank(there);
}

FMatrix ell_point(const EllLattice& EL, std::size_t member, const FieldPtr& F, const std::vector<GaloisField::Elem>& a) {
  const Subgroup& E = EL.lattice->member(member);
  if (a.size() != E.jbasis.size()) throw InvalidInput("coefficient vector does not match J_E");
  FMatrix out(F, EL.n, EL.n);
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k]) out = out + EL.log_of(E.jbasis[k]).lift(F).scaled(a[k]);
  return out;
}

OneParamPoint ell_r_point(const EllLattice& EL, std::size_t member, const FieldPtr& F,
                          const std::vector<GaloisField::Elem>& c, unsigned r) {
  const Subgroup& E = EL.lattice->member(member);
  if (c.size() != E.rank) throw InvalidInput("need one coordinate per basis element");
  OneParamPoint pt;
  pt.member = member;
  pt.field = F;
  pt.c = c;
  for (unsigned i = 0; i < r; ++i) {
    FMatrix psi(F, EL.n, EL.n);
    for (unsigned j = 0; j < E.rank; ++j)
      if (c[j]) psi = psi + EL.subalgebra[member][j].lift(F).scaled(F->frobenius(c[j], i));
    pt.psi.push_back(std::move(psi));
  }
  return pt;
}

std::vector<GaloisField::Elem> include_coordinates(const ElabLattice& L, std::size_t sub, std::size_t sup,
                                                   const FieldPtr& F, const std::vector<GaloisField::Elem>& c) {
  if (!L.includes(sup, sub)) throw InvalidInput("subgroup is not contained in the target");
  const Subgroup& S = L.member(sub);
  const Subgroup& T = L.member(sup);
  if (c.size() != S.rank) throw InvalidInput("need one coordinate per basis element");
  std::vector<GaloisField::Elem> out(T.rank, 0);
  for (unsigned k = 0; k < S.rank; ++k) {
    const auto& ex = T.exponents[T.jindex(S.basis[k])];
    for (unsigned i = 0; i < T.rank; ++i)
      if (ex[i] && c[k]) out[i] = F->add(out[i], F->mul(F->from_int(ex[i]), c[k]));
  }
  return out;
}

RankComparison rank_compare(const ModuleRep& M, const EllLattice& EL, const PiPoint& xi, unsigned j,
                            std::optional<std::size_t> chart, bool checked) {
  const ElabLattice& L = *EL.lattice;
  if (!xi.flat) throw InvalidInput("pi-point is not flat");
  if (j < 1 || j >= EL.p) throw InvalidInput("j must lie in 1..p-1");
  std::size_t mx = chart ? *chart : L.containing_maximal(xi.member);
  if (!L.includes(mx, xi.member)) throw InvalidInput("chart does not contain the point");
  if (!checked) {
    auto res = decide_chart_exact(M, L, mx, j, DecisionOptions{});
    if (res.status == Status::NonConstant) throw InvalidInput("module is not of constant j-rank on the chart");
    if (res.status == Status::Unknown) throw ResourceLimit("constant j-rank undecided on the chart");
  }
  const Subgroup& E = L.member(xi.member);
  const FieldPtr& F = xi.field;
  RankComparison out;
  out.rank_group = radical_action(M, E, F, xi.a).power(j).rank();
  FMatrix lie(F, M.dim(), M.dim());
  for (std::size_t k = 0; k < xi.a.size(); ++k)
    if (xi.a[k]) lie = lie + log_unipotent(M.rho(E.jbasis[k])).lift(F).scaled(xi.a[k]);
  out.rank_lie = lie.power(j).rank();
  out.equal = out.rank_group == out.rank_lie;
  return out;
}

}  // namespace pib
