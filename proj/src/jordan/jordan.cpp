#include "jordan/jordan.hpp"

#include <algorithm>
#include <random>

#include "ffield/errors.hpp"
#include "modrep/radical.hpp"

namespace pib {

std::string JordanType::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t k = i;
    while (k < parts.size() && parts[k] == parts[i]) ++k;
    if (i) s += ",";
    s += std::to_string(parts[i]);
    if (k - i > 1) s += "^" + std::to_string(k - i);
    i = k;
  }
  return s + "]";
}

JordanType jordan_type_from_ranks(std::vector<std::size_t> ranks, unsigned p) {
  if (ranks.size() != p + 1) throw InvalidInput("rank profile needs p+1 entries");
  if (ranks[p] != 0) throw InvalidInput("matrix is not p-nilpotent");
  JordanType J;
  J.p = p;
  J.ranks = ranks;
  for (unsigned s = p; s >= 1; --s) {
    long long next = s < p ? static_cast<long long>(ranks[s + 1]) : 0;
    long long m = static_cast<long long>(ranks[s - 1]) - 2 * static_cast<long long>(ranks[s]) + next;
    if (m < 0) throw InvalidInput("rank profile is not that of a nilpotent matrix");
    for (long long t = 0; t < m; ++t) J.parts.push_back(s);
  }
  return J;
}

JordanType jordan_type(const FMatrix& N, unsigned p) {
  if (N.rows() != N.cols()) throw InvalidInput("Jordan type of a non-square matrix");
  std::vector<std::size_t> ranks;
  FMatrix P = FMatrix::identity(N.field(), N.rows());
  for (unsigned s = 0; s <= p; ++s) {
    ranks.push_back(P.rank());
    if (s < p) P = P * N;
  }
  return jordan_type_from_ranks(ranks, p);
}

JordanType local_jordan_type(const ModuleRep& M, const ElabLattice& L, const PiPoint& xi, bool require_flat) {
  if (require_flat && !xi.flat) throw InvalidInput("pi-point is not flat");
  return jordan_type(radical_action(M, L.member(xi.member), xi.field, xi.a), L.prime());
}

namespace {

PolyMatrix linear_in(const RingPtr& R, const std::vector<FMatrix>& N, std::size_t m) {
  PolyMatrix out(R, m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<MultiPoly::Term> terms;
      for (std::size_t k = 0; k < N.size(); ++k)
        if (auto c = N[k].at(i, j)) terms.emplace_back(Monomial::var(static_cast<unsigned>(k)), static_cast<MultiPoly::Coeff>(c));
      out.at(i, j) = MultiPoly::from_terms(R, std::move(terms));
    }
  return out;
}

// images fixing every variable except v, which goes to 1
std::vector<MultiPoly> dehomogenize_at(const RingPtr& R, unsigned v) {
  std::vector<MultiPoly> im;
  for (unsigned k = 0; k < R->nvars(); ++k)
    im.push_back(k == v ? MultiPoly::constant(R, 1) : MultiPoly::variable(R, k));
  return im;
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return out;
  while (true) {
    out.push_back(c);
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) break;
    ++c[i];
    for (std::size_t t = i + 1; t < k; ++t) c[t] = c[t - 1] + 1;
  }
  return out;
}

unsigned long long binom_capped(std::size_t n, std::size_t k, unsigned long long cap) {
  if (k > n) return 0;
  unsigned long long r = 1;
  for (std::size_t i = 0; i < k; ++i) {
    r = r * (n - i) / (i + 1);
    if (r > cap) return cap + 1;
  }
  return r;
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = seed ^ (a * 0x9E3779B97F4A7C15ULL) ^ (b * 0xC2B2AE3D27D4EB4FULL);
  x ^= x >> 31;
  return x;
}

// c (monomial-chart coordinates) -> a (J_E coordinates) over F
std::vector<GaloisField::Elem> c_to_a(const MonomialChart& mc, const FieldPtr& F, const std::vector<GaloisField::Elem>& c) {
  FMatrix inv = mc.a_to_c.inverse().lift(F);
  std::vector<GaloisField::Elem> a(c.size(), 0);
  for (std::size_t r = 0; r < c.size(); ++r)
    for (std::size_t k = 0; k < c.size(); ++k)
      if (inv.at(r, k) && c[k]) a[r] = F->add(a[r], F->mul(inv.at(r, k), c[k]));
  return a;
}

std::optional<Witness> confirm_witness(const ModuleRep& M, const ElabLattice& L, std::size_t member, unsigned j,
                                       const FieldPtr& F, std::vector<GaloisField::Elem> a, std::size_t g) {
  PiPoint xi = make_pi_point(L, member, F, std::move(a));
  if (!xi.flat) return std::nullopt;
  FMatrix N = radical_action(M, L.member(member), F, xi.a);
  std::size_t r = N.power(j).rank();
  if (r == g) return std::nullopt;
  Witness w;
  w.point = xi;
  w.rank = r;
  w.type = jordan_type(N, L.prime());
  return w;
}

// rank drop search on the affine piece c_v = 1 of a monomial chart
std::optional<Witness> search_witness(const ModuleRep& M, const ElabLattice& L, const MonomialChart& mc, unsigned v,
                                      const PolyMatrix& A, unsigned j, std::size_t g, std::uint64_t seed) {
  unsigned p = L.prime();
  std::size_t n = mc.alphas.size();
  auto test = [&](const FieldPtr& F, const std::vector<GaloisField::Elem>& c) -> std::optional<Witness> {
    if (A.evaluate(F, c).rank() >= g) return std::nullopt;
    return confirm_witness(M, L, mc.member, j, F, c_to_a(mc, F, c), g);
  };
  auto Fp = GaloisField::get(p, 1);
  std::vector<GaloisField::Elem> c(n, 0);
  c[v] = 1;
  if (auto w = test(Fp, c)) return w;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == v) continue;
    for (unsigned lam = 1; lam < p; ++lam) {
      c.assign(n, 0);
      c[v] = 1;
      c[k] = lam;
      if (auto w = test(Fp, c)) return w;
    }
  }
  // all of F_p^{n-1} when small
  double total = 1;
  for (std::size_t k = 1; k < n; ++k) total *= p;
  if (total <= 50000) {
    c.assign(n, 0);
    c[v] = 1;
    while (true) {
      if (auto w = test(Fp, c)) return w;
      std::size_t k = 0;
      for (; k < n; ++k) {
        if (k == v) continue;
        if (++c[k] < p) break;
        c[k] = 0;
      }
      if (k == n) break;
    }
  }
  std::mt19937_64 rng(seed);
  for (unsigned d = 2; d <= 6; ++d) {
    auto F = GaloisField::get(p, d);
    for (int t = 0; t < 400; ++t) {
      for (std::size_t k = 0; k < n; ++k) c[k] = k == v ? 1 : rng() % F->order();
      if (auto w = test(F, c)) return w;
    }
  }
  return std::nullopt;
}

}  // namespace

std::size_t generic_rank_fast(const PolyMatrix& A, const std::vector<int>* col_priority) {
  PolyMatrix B = A;
  const RingPtr& R = A.ring();
  int d = -1;
  bool homog = true;
  for (std::size_t i = 0; i < A.rows() && homog; ++i)
    for (std::size_t j = 0; j < A.cols() && homog; ++j) {
      const auto& f = A.at(i, j);
      if (f.is_zero()) continue;
      if (d < 0) d = f.degree();
      homog = f.is_homogeneous(d);
    }
  if (homog && d > 0) {
    // dehomogenize at the variable that stands alone in the most entries
    std::vector<std::size_t> alone(R->nvars(), 0);
    for (std::size_t i = 0; i < A.rows(); ++i)
      for (std::size_t j = 0; j < A.cols(); ++j) {
        const auto& f = A.at(i, j);
        if (f.size() != 1) continue;
        const auto& m = f.lm();
        for (unsigned v = 0; v < R->nvars(); ++v)
          if (m.e[v] == m.deg) ++alone[v];
      }
    auto best = std::max_element(alone.begin(), alone.end());
    if (best != alone.end() && *best > 0)
      B = A.substitute(dehomogenize_at(R, static_cast<unsigned>(best - alone.begin())), R);
  }
  std::size_t k = unit_eliminate(B, col_priority);
  PolyMatrix S = trim_zero(B);
  return k + (S.rows() ? generic_rank(S) : 0);
}

JordanType generic_jordan_type(const ModuleRep& M, const ElabLattice& L, std::size_t member, ChartVia via) {
  unsigned p = L.prime();
  PolyMatrix T;
  AdaptedBasis ab = adapted_basis(M, L.member(member));
  const std::vector<int>* prio = nullptr;
  if (via == ChartVia::Full) {
    T = monomial_chart(L, M, member, &ab.P).linear;
    prio = &ab.degree;
  } else {
    const Subgroup& E = L.member(member);
    std::vector<std::string> names;
    for (unsigned i = 0; i < E.rank; ++i) names.push_back("y_" + std::to_string(i + 1));
    auto R = PolyRing::make(p, names);
    FMatrix I = FMatrix::identity(M.field(), M.dim());
    std::vector<FMatrix> N;
    for (Elt g : E.basis) N.push_back(M.rho(g) - I);
    T = linear_in(R, N, M.dim());
  }
  std::vector<std::size_t> ranks{M.dim()};
  PolyMatrix P = T;
  for (unsigned s = 1; s <= p; ++s) {
    ranks.push_back(P.is_zero() ? 0 : generic_rank_fast(P, prio));
    if (s < p) P = P * T;
  }
  return jordan_type_from_ranks(ranks, p);
}

const char* status_name(Status s) {
  switch (s) {
    case Status::Constant: return "constant";
    case Status::NonConstant: return "nonconstant";
    default: return "unknown";
  }
}

const char* method_name(Method m) { return m == Method::Exact ? "exact" : "sampled"; }

ChartResult decide_chart_sampled(const ModuleRep& M, const ElabLattice& L, std::size_t maximal, unsigned j,
                                 const DecisionOptions& opt) {
  ChartResult res;
  res.member = maximal;
  res.method = Method::Sampled;
  unsigned p = L.prime();
  const Subgroup& E = L.member(maximal);
  bool exact_g = true;
  try {
    AdaptedBasis ab = adapted_basis(M, E);
    res.generic_rank = generic_rank_fast(monomial_chart(L, M, maximal, &ab.P).linear.power(j), &ab.degree);
  } catch (const ResourceLimit&) {
    exact_g = false;
  }
  std::mt19937_64 rng(mix(opt.seed, maximal, j));
  std::vector<std::pair<PiPoint, std::size_t>> seen;
  std::size_t flat = 0;
  for (std::size_t t = 0; flat < opt.samples && t < 20 * opt.samples + 100; ++t) {
    unsigned d = 1 + static_cast<unsigned>(t % std::max(1u, opt.max_ext));
    auto F = GaloisField::get(p, d);
    std::vector<GaloisField::Elem> a(E.jbasis.size());
    for (auto& x : a) x = rng() % F->order();
    PiPoint xi = make_pi_point(L, maximal, F, a);
    if (!xi.flat) continue;
    ++flat;
    std::size_t r = radical_action(M, E, F, xi.a).power(j).rank();
    if (exact_g && r != res.generic_rank) {
      res.status = Status::NonConstant;
      Witness w;
      w.point = xi;
      w.rank = r;
      w.type = local_jordan_type(M, L, xi);
      res.witness = w;
      res.detail = "rank " + std::to_string(r) + " at a sampled flat point";
      return res;
    }
    seen.emplace_back(std::move(xi), r);
  }
  if (!exact_g) {
    std::size_t g = 0;
    for (auto& s : seen) g = std::max(g, s.second);
    res.generic_rank = g;
    for (auto& s : seen)
      if (s.second != g) {
        res.status = Status::NonConstant;
        res.witness = Witness{s.first, s.second, local_jordan_type(M, L, s.first)};
        res.detail = "sampled ranks differ";
        return res;
      }
  }
  res.status = Status::Constant;
  res.detail = std::to_string(flat) + " flat points";
  return res;
}

ChartResult decide_chart_exact(const ModuleRep& M, const ElabLattice& L, std::size_t maximal, unsigned j,
                               const DecisionOptions& opt) {
  ChartResult res;
  res.member = maximal;
  res.method = Method::Exact;
  const Subgroup& E = L.member(maximal);
  try {
    AdaptedBasis ab = adapted_basis(M, E);
    MonomialChart mc = monomial_chart(L, M, maximal, &ab.P);
    std::optional<std::size_t> g_all;
    std::size_t minors_total = 0;
    for (unsigned i = 0; i < E.rank; ++i) {
      unsigned v = static_cast<unsigned>(mc.unit_index[i]);
      // rank on {c_v != 0} is rank on the affine piece c_v = 1 (the minors ideal is homogeneous)
      PolyMatrix A = mc.linear.substitute(dehomogenize_at(mc.ring, v), mc.ring).power(j);
      PolyMatrix B = A;
      std::size_t k = unit_eliminate(B, &ab.degree);
      PolyMatrix S = trim_zero(B);
      std::size_t g = k + (S.rows() ? generic_rank(S) : 0);
      if (g_all && *g_all != g) throw PropertyViolation("affine pieces of one chart disagree on the generic rank");
      g_all = g;
      res.generic_rank = g;
      if (g == k) continue;  // rank is k at every point of the piece
      auto found_rank_drop = [&]() {
        res.status = Status::NonConstant;
        res.witness = search_witness(M, L, mc, v, A, j, g, mix(opt.seed, maximal, 100 + i));
        return res;
      };
      auto Fp = GaloisField::get(L.prime(), 1);
      std::vector<GaloisField::Elem> origin(mc.alphas.size(), 0);
      origin[v] = 1;
      if (A.evaluate(Fp, origin).rank() < g) {
        res.detail = "rank drops at the basis direction " + std::to_string(i + 1);
        return found_rank_drop();
      }
      std::size_t s = g - k;
      auto cap = static_cast<unsigned long long>(opt.minor_cap);
      auto count = binom_capped(S.rows(), s, cap);
      if (count <= cap) count *= binom_capped(S.cols(), s, cap);
      if (count > cap) {
        ChartResult sr = decide_chart_sampled(M, L, maximal, j, opt);
        sr.detail = "minor count above cap; " + sr.detail;
        return sr;
      }
      std::vector<MultiPoly> minors;
      bool unit = false;
      auto rsets = subsets(S.rows(), s), csets = subsets(S.cols(), s);
      for (auto& rs : rsets) {
        for (auto& cs : csets) {
          std::vector<std::vector<MultiPoly>> sub(s, std::vector<MultiPoly>(s));
          for (std::size_t a = 0; a < s; ++a)
            for (std::size_t b = 0; b < s; ++b) sub[a][b] = S.at(rs[a], cs[b]);
          MultiPoly d = determinant(std::move(sub), mc.ring);
          if (d.is_zero()) continue;
          if (d.is_constant()) {
            unit = true;
            break;
          }
          minors.push_back(std::move(d));
        }
        if (unit) break;
      }
      if (unit) continue;
      // minors with a constant term first, then by size
      std::stable_sort(minors.begin(), minors.end(), [](const MultiPoly& x, const MultiPoly& y) {
        bool cx = x.constant_term() != 0, cy = y.constant_term() != 0;
        if (cx != cy) return cx;
        return x.size() < y.size();
      });
      minors = linear_basis(minors);
      minors_total += minors.size();
      for (std::size_t batch = 8;; batch *= 4) {
        std::size_t take = std::min(batch, minors.size());
        std::vector<MultiPoly> gens(minors.begin(), minors.begin() + static_cast<std::ptrdiff_t>(take));
        if (ideal_is_unit(gens, opt.limits)) {
          unit = true;
          break;
        }
        if (take == minors.size()) break;
      }
      if (unit) continue;
      res.detail = "minors ideal is proper on the piece c_" + std::to_string(i + 1) + " = 1";
      return found_rank_drop();
    }
    res.status = Status::Constant;
    if (minors_total) res.detail = std::to_string(minors_total) + " independent minors";
  } catch (const ResourceLimit& e) {
    res.status = Status::Unknown;
    res.detail = e.what();
  }
  return res;
}

Verdict decide_constant_jrank(const ModuleRep& M, const ElabLattice& L, unsigned j, const DecisionOptions& opt) {
  unsigned p = L.prime();
  if (j < 1 || j > p - 1) throw InvalidInput("j must lie in 1..p-1");
  Verdict v;
  v.j = j;
  v.method = opt.method;
  if (opt.method == Method::Sampled) {
    v.samples = opt.samples;
    v.max_ext = opt.max_ext;
  }
  for (auto m : L.maximals())
    v.charts.push_back(opt.method == Method::Exact ? decide_chart_exact(M, L, m, j, opt)
                                                   : decide_chart_sampled(M, L, m, j, opt));
  std::size_t gmax = 0, gmin = static_cast<std::size_t>(-1);
  bool unknown = false;
  for (auto& c : v.charts) {
    if (c.method == Method::Sampled) {
      v.method = Method::Sampled;
      v.samples = opt.samples;
      v.max_ext = opt.max_ext;
    }
    if (c.status == Status::Unknown) {
      unknown = true;
      continue;
    }
    gmax = std::max(gmax, c.generic_rank);
    gmin = std::min(gmin, c.generic_rank);
  }
  v.rank = gmax;
  for (auto& c : v.charts)
    if (c.status == Status::NonConstant) {
      v.status = Status::NonConstant;
      v.witness = c.witness;
      v.reason = "chart E" + std::to_string(c.member) + ": " + c.detail;
      if (!v.witness) v.reason += " (no rational witness found)";
      return v;
    }
  if (unknown) {
    v.status = Status::Unknown;
    for (auto& c : v.charts)
      if (c.status == Status::Unknown) v.reason = "chart E" + std::to_string(c.member) + ": " + c.detail;
    return v;
  }
  if (gmin != gmax) {
    // a generic point of a chart with smaller rank is a witness
    v.status = Status::NonConstant;
    v.reason = "maximal charts have generic ranks " + std::to_string(gmin) + " and " + std::to_string(gmax);
    for (auto& c : v.charts) {
      if (c.generic_rank != gmin) continue;
      std::mt19937_64 rng(mix(opt.seed, c.member, 7));
      const Subgroup& E = L.member(c.member);
      for (int t = 0; t < 200 && !v.witness; ++t) {
        auto F = GaloisField::get(p, 1 + t % 3);
        std::vector<GaloisField::Elem> a(E.jbasis.size());
        for (auto& x : a) x = rng() % F->order();
        v.witness = confirm_witness(M, L, c.member, j, F, a, gmax);
      }
      break;
    }
    return v;
  }
  v.status = Status::Constant;
  return v;
}

JordanVerdict decide_constant_jordan_type(const ModuleRep& M, const ElabLattice& L, const DecisionOptions& opt) {
  unsigned p = L.prime();
  JordanVerdict out;
  out.method = opt.method;
  std::vector<std::size_t> ranks{M.dim()};
  bool unknown = false;
  for (unsigned j = 1; j < p; ++j) {
    out.per_j.push_back(decide_constant_jrank(M, L, j, opt));
    const Verdict& v = out.per_j.back();
    if (v.method == Method::Sampled) out.method = Method::Sampled;
    if (v.status == Status::NonConstant && out.status != Status::NonConstant) {
      out.status = Status::NonConstant;
      out.witness = v.witness;
    }
    unknown = unknown || v.status == Status::Unknown;
    ranks.push_back(v.rank);
  }
  if (out.status == Status::NonConstant) return out;
  if (unknown) {
    out.status = Status::Unknown;
    return out;
  }
  ranks.push_back(0);
  out.status = Status::Constant;
  out.type = jordan_type_from_ranks(ranks, p);
  return out;
}

std::vector<StratumResult> stratum_check(const ModuleRep& M, const ElabLattice& L, std::size_t samples,
                                         std::uint64_t seed) {
  unsigned p = L.prime();
  std::vector<StratumResult> out;
  for (auto m : L.maximals()) {
    const Subgroup& E = L.member(m);
    RadicalBasis R = radical_basis(L.group(), E, p);
    for (unsigned s = 1; s < R.top(); ++s) {
      StratumResult sr;
      sr.member = m;
      sr.s = s;
      FMatrix Js = R.power(s), Jn = R.power(s + 1);
      std::mt19937_64 rng(mix(seed, m, s));
      for (std::size_t t = 0; t < samples; ++t) {
        auto F = GaloisField::get(p, 1 + static_cast<unsigned>(t % 3));
        std::vector<GaloisField::Elem> a(E.jbasis.size(), 0);
        for (std::size_t i = 0; i < Js.rows(); ++i) {
          GaloisField::Elem c = rng() % F->order();
          for (std::size_t k = 0; k < a.size(); ++k)
            if (Js.at(i, k)) a[k] = F->add(a[k], F->mul(c, Js.at(i, k)));
        }
        // keep only points outside J^{s+1}
        FMatrix test = Jn.lift(F);
        FMatrix stack(F, test.rows() + 1, a.size());
        for (std::size_t i = 0; i < test.rows(); ++i)
          for (std::size_t k = 0; k < a.size(); ++k) stack.at(i, k) = test.at(i, k);
        for (std::size_t k = 0; k < a.size(); ++k) stack.at(test.rows(), k) = a[k];
        if (stack.rank() == test.rows()) continue;
        PiPoint xi = make_pi_point(L, m, F, a);
        auto J = local_jordan_type(M, L, xi, false);
        if (std::find(sr.types.begin(), sr.types.end(), J) == sr.types.end()) sr.types.push_back(J);
      }
      out.push_back(std::move(sr));
    }
  }
  return out;
}

}  // namespace pib
