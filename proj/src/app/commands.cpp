#include "app/commands.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "ffield/errors.hpp"
#include "modrep/radical.hpp"
#include "sheafk/sheafk.hpp"
#include "springer/springer.hpp"

namespace pib::app {

namespace {

struct Ctx {
  const JobConfig& cfg;
  GroupPtr G;
  unsigned p = 0;
  ModulePtr M;
  LatticePtr L;
  Json checks = Json::array();
  bool undecided = false;

  DecisionOptions decision() const {
    DecisionOptions o;
    o.method = cfg.method;
    o.samples = cfg.samples;
    o.max_ext = cfg.ext_cap;
    o.seed = cfg.seed;
    return o;
  }
  GradedOptions graded() const {
    GradedOptions o;
    o.degree_bound = cfg.degree_bound;
    return o;
  }
  std::mt19937_64 rng(std::uint64_t salt) const { return std::mt19937_64(cfg.seed * 0x9E3779B97F4A7C15ULL + salt); }
  std::vector<unsigned> js() const {
    if (cfg.j) return {*cfg.j};
    std::vector<unsigned> out;
    for (unsigned j = 1; j < p; ++j) out.push_back(j);
    return out;
  }
  unsigned j_or(unsigned d) const { return cfg.j ? *cfg.j : d; }

  void check(const std::string& id, const std::string& ref, bool pass, Json extra = Json::object()) {
    Json c;
    c["id"] = id;
    c["ref"] = ref;
    c["pass"] = pass;
    for (auto& [k, v] : extra.items()) c[k] = v;
    checks.push_back(std::move(c));
  }
};

Json elems(const std::vector<Elt>& v) { return Json(v); }

Json field_json(const FieldPtr& F) { return Json{{"p", F->characteristic()}, {"degree", F->degree()}}; }

Json point_json(const PiPoint& xi) {
  Json a = Json::array();
  for (auto x : xi.a) a.push_back(x);
  return Json{{"member", xi.member}, {"field", field_json(xi.field)}, {"a", a}, {"flat", xi.flat}};
}

Json type_json(const JordanType& t) { return Json{{"type", t.to_string()}, {"parts", t.parts}, {"ranks", t.ranks}}; }

Json witness_json(const Witness& w) {
  Json o = point_json(w.point);
  o["rank"] = w.rank;
  o["jordan"] = type_json(w.type);
  return o;
}

Json poly_json(const MultiPoly& f) {
  Json terms = Json::array();
  unsigned n = f.ring()->nvars();
  for (auto& [mono, c] : f.terms()) {
    Json m = Json::array();
    for (unsigned v = 0; v < n; ++v)
      if (mono.e[v]) m.push_back(Json::array({v, mono.e[v]}));
    terms.push_back(Json{{"c", c}, {"m", m}});
  }
  return terms;
}

Json polymatrix_json(const PolyMatrix& A) {
  Json out = Json::array();
  for (std::size_t r = 0; r < A.rows(); ++r)
    for (std::size_t c = 0; c < A.cols(); ++c)
      if (!A.at(r, c).is_zero()) out.push_back(Json{{"row", r}, {"col", c}, {"terms", poly_json(A.at(r, c))}});
  return out;
}

std::vector<GaloisField::Elem> random_vec(std::mt19937_64& rng, const GaloisField& F, std::size_t n) {
  std::vector<GaloisField::Elem> v(n);
  for (auto& x : v) x = rng() % F.order();
  return v;
}

// random flat point on member s over F_{p^d}
PiPoint random_flat(const ElabLattice& L, std::size_t s, const FieldPtr& F, std::mt19937_64& rng) {
  for (;;) {
    auto xi = make_pi_point(L, s, F, random_vec(rng, *F, L.member(s).jbasis.size()));
    if (xi.flat) return xi;
  }
}

FieldPtr sample_field(const Ctx& c, std::size_t t) {
  return GaloisField::get(c.p, 1 + static_cast<unsigned>(t % std::max(1u, c.cfg.ext_cap)));
}

const char* status_word(Status s) { return status_name(s); }

// ---------------------------------------------------------------- lattice

Json do_lattice(Ctx& c) {
  const ElabLattice& L = *c.L;
  const GroupTable& G = *c.G;
  Json members = Json::array();
  std::map<unsigned, std::size_t> by_rank;
  for (std::size_t i = 0; i < L.size(); ++i) {
    const Subgroup& E = L.member(i);
    ++by_rank[E.rank];
    members.push_back(Json{{"index", i}, {"rank", E.rank}, {"order", E.order()}, {"basis", elems(E.basis)},
                           {"elements", elems(E.elements)}});
  }
  Json counts = Json::object();
  for (auto& [r, n] : by_rank) counts[std::to_string(r)] = n;
  Json covers = Json::array();
  for (auto& [a, b] : L.covers()) covers.push_back(Json::array({a, b}));

  bool covered = true;
  for (std::size_t i = 0; i < L.size(); ++i) {
    bool any = false;
    for (auto m : L.maximals()) any = any || L.includes(m, i);
    covered = covered && any;
  }
  c.check("lattice.maximal-cover", "every member lies in a maximal member", covered);

  bool hasse = true;
  for (auto& [a, b] : L.covers())
    hasse = hasse && L.includes(b, a) && L.member(b).rank == L.member(a).rank + 1;
  c.check("lattice.hasse", "covers raise rank by one", hasse);

  bool conj = true;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (Elt x : G.generators()) {
      auto cm = L.conjugation_map(i, x);
      const Subgroup& T = L.member(cm.target);
      conj = conj && T.rank == L.member(i).rank && cm.target == L.conjugate_index(i, x);
      for (auto& [g, h] : cm.map) conj = conj && h == G.conj(x, g) && T.contains(h);
    }
  c.check("lattice.conjugation", "conjugation permutes the members", conj);

  bool meets = true;
  for (std::size_t a = 0; a < L.size(); ++a)
    for (std::size_t b = a + 1; b < L.size(); ++b) {
      auto m = L.intersection(a, b);
      if (!m) continue;
      meets = meets && L.includes(a, *m) && L.includes(b, *m);
    }
  c.check("lattice.intersections", "pairwise intersections are members", meets);

  return Json{{"members", members}, {"maximals", L.maximals()}, {"counts_by_rank", counts},
              {"maximal_count", L.maximals().size()}, {"covers", covers}};
}

// ---------------------------------------------------------------- theta

Json do_theta(Ctx& c, bool dump) {
  unsigned j = c.j_or(1);
  auto T = theta_family(c.L, c.M, j);
  const ElabLattice& L = *c.L;
  Json out{{"j", j}, {"degree", T.degree()}};
  if (dump) {
    Json charts = Json::array();
    for (auto& ch : T.charts)
      charts.push_back(Json{{"member", ch.member}, {"variables", ch.ring->names()}, {"entries", polymatrix_json(ch.theta)}});
    out["charts"] = charts;
  }

  c.check("theta.p-nilpotent", "symbolic p-th power of each chart vanishes", verify_p_nilpotent(T), {{"j", j}});
  c.check("theta.compatible", "charts agree on intersections", family_compatible(T), {{"j", j}});

  bool equi = true;
  for (auto m : L.maximals())
    for (Elt x : c.G->generators()) equi = equi && equivariance_holds(T, m, x);
  c.check("theta.equivariance", "relabel by conjugation and conjugate by rho(x)", equi, {{"j", j}});

  std::vector<char> nat(L.maximals().size(), 1);
  parallel_for(nat.size(), c.cfg.jobs, [&](std::size_t i) {
    auto R = restrict_family(T, L.member(L.maximals()[i]).elements);
    auto D = theta_family(R.lattice, R.module, j);
    bool ok = R.charts.size() == D.charts.size();
    for (std::size_t k = 0; ok && k < R.charts.size(); ++k)
      ok = R.charts[k].ring->names() == D.charts[k].ring->names() && R.charts[k].theta == D.charts[k].theta;
    nat[i] = ok;
  });
  c.check("theta.naturality", "restriction equals the direct construction",
          std::all_of(nat.begin(), nat.end(), [](char b) { return b; }), {{"j", j}});

  auto rng = c.rng(11);
  std::size_t n = std::min<std::size_t>(c.cfg.samples, 100);
  bool spec = true;
  for (std::size_t t = 0; t < n; ++t) {
    auto F = sample_field(c, t);
    std::size_t s = rng() % L.size();
    auto xi = make_pi_point(L, s, F, random_vec(rng, *F, L.member(s).jbasis.size()));
    auto want = radical_action(*c.M, L.member(s), F, xi.a).power(j);
    for (auto m : L.maximals())
      if (L.includes(m, s)) spec = spec && specialize_via(T, xi, m) == want;
  }
  c.check("theta.specialization", "value at a point is the radical action", spec, {{"j", j}, {"samples", n}});
  return out;
}

// ---------------------------------------------------------------- jordan

Json do_jordan(Ctx& c) {
  const ElabLattice& L = *c.L;
  const auto& mx = L.maximals();
  std::vector<JordanType> full(mx.size()), se(mx.size());
  parallel_for(mx.size(), c.cfg.jobs, [&](std::size_t i) {
    full[i] = generic_jordan_type(*c.M, L, mx[i], ChartVia::Full);
    se[i] = generic_jordan_type(*c.M, L, mx[i], ChartVia::SE);
  });
  Json gen = Json::array();
  bool agree = true;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    gen.push_back(Json{{"member", mx[i]}, {"full", type_json(full[i])}, {"se", type_json(se[i])}});
    agree = agree && full[i] == se[i];
  }
  c.check("jordan.generic-se", "generic type on J_E equals the one on the s_E chart", agree);

  auto rng = c.rng(23);
  std::size_t n = std::min<std::size_t>(c.cfg.samples, 20);
  Json local = Json::array();
  bool semi = true, conj = true;
  for (std::size_t t = 0; t < n; ++t) {
    auto F = sample_field(c, t);
    std::size_t s = rng() % L.size();
    auto xi = random_flat(L, s, F, rng);
    auto ty = local_jordan_type(*c.M, L, xi);
    Json e = point_json(xi);
    e["jordan"] = type_json(ty);
    local.push_back(e);
    for (std::size_t i = 0; i < mx.size(); ++i)
      if (L.includes(mx[i], s))
        for (std::size_t k = 1; k < ty.ranks.size() && k < full[i].ranks.size(); ++k) semi = semi && ty.ranks[k] <= full[i].ranks[k];
    Elt x = static_cast<Elt>(rng() % c.G->order());
    auto cm = L.conjugation_map(s, x);
    const Subgroup& E = L.member(s);
    const Subgroup& Ex = L.member(cm.target);
    std::vector<GaloisField::Elem> ax(xi.a.size(), 0);
    for (std::size_t k = 0; k < xi.a.size(); ++k) ax[Ex.jindex(c.G->conj(x, E.jbasis[k]))] = xi.a[k];
    conj = conj && local_jordan_type(*c.M, L, make_pi_point(L, cm.target, F, ax)) == ty;
  }
  c.check("jordan.semicontinuity", "local ranks never exceed generic ranks", semi, {{"samples", n}});
  c.check("jordan.conjugation", "local type is invariant under conjugation", conj, {{"samples", n}});
  return Json{{"generic", gen}, {"local", local}};
}

// ---------------------------------------------------------------- cjt

Json verdict_json(const Verdict& v) {
  Json charts = Json::array();
  for (auto& r : v.charts) {
    Json e{{"member", r.member}, {"generic_rank", r.generic_rank}, {"status", status_word(r.status)},
           {"method", method_name(r.method)}};
    if (!r.detail.empty()) e["detail"] = r.detail;
    if (r.witness) e["witness"] = witness_json(*r.witness);
    charts.push_back(e);
  }
  Json o{{"j", v.j}, {"status", status_word(v.status)}, {"method", method_name(v.method)}, {"rank", v.rank}};
  if (v.method == Method::Sampled) {
    o["samples"] = v.samples;
    o["ext_cap"] = v.max_ext;
  }
  if (!v.reason.empty()) o["reason"] = v.reason;
  if (v.witness) o["witness"] = witness_json(*v.witness);
  o["charts"] = charts;
  return o;
}

// rank at the witness differs from the generic rank of its chart
bool witness_holds(const Ctx& c, const Verdict& v) {
  if (v.status != Status::NonConstant) return true;
  if (!v.witness) return false;
  const auto& w = *v.witness;
  auto r = radical_action(*c.M, c.L->member(w.point.member), w.point.field, w.point.a).power(v.j).rank();
  if (r != w.rank) return false;
  for (auto& ch : v.charts)
    if (c.L->includes(ch.member, w.point.member) && ch.generic_rank != r) return true;
  return false;
}

Json do_cjt(Ctx& c) {
  auto opt = c.decision();
  Json out;
  if (c.cfg.j) {
    auto v = decide_constant_jrank(*c.M, *c.L, *c.cfg.j, opt);
    out["verdict"] = verdict_json(v);
    out["status"] = status_word(v.status);
    if (v.status == Status::Unknown) c.undecided = true;
    c.check("cjt.witness", "witness rank differs from the generic rank", witness_holds(c, v), {{"j", v.j}});
    return out;
  }
  auto jv = decide_constant_jordan_type(*c.M, *c.L, opt);
  out["status"] = status_word(jv.status);
  out["method"] = method_name(jv.method);
  if (jv.type) out["type"] = type_json(*jv.type);
  if (jv.witness) out["witness"] = witness_json(*jv.witness);
  Json per = Json::array();
  bool wit = true;
  for (auto& v : jv.per_j) {
    per.push_back(verdict_json(v));
    wit = wit && witness_holds(c, v);
  }
  out["per_j"] = per;
  if (jv.status == Status::Unknown) c.undecided = true;
  c.check("cjt.witness", "witness rank differs from the generic rank", wit);
  return out;
}

// ---------------------------------------------------------------- bundle

Json table_json(const GradedPieceTable& T, const HilbertData& H, const K0Vector& k) {
  Json poly = Json::array();
  for (auto& q : H.poly) poly.push_back(q.to_string());
  Json o{{"h-table", T.h}, {"hilbert-poly", poly}, {"d0", H.d0}, {"rank", H.rank}, {"degree", H.degree}, {"k0-vector", k.c}};
  if (T.kind != PieceKind::Coker) o["generator-degrees"] = T.generator_degrees;
  return o;
}

Json bundle_json(const ChartBundle& B) {
  Json o{{"chart", B.member}, {"basis", elems(B.basis)}, {"j", B.j}, {"m", B.m}};
  o["ker"] = table_json(B.ker, B.hker, B.kker);
  o["im"] = table_json(B.im, B.him, B.kim);
  o["coker"] = table_json(B.coker, B.hcoker, B.kcoker);
  if (B.splitting) o["splitting-type"] = *B.splitting;
  return o;
}

void bundle_checks(Ctx& c, const std::vector<ChartBundle>& bs, unsigned j) {
  bool src = true, tgt = true, split = true, k0 = true;
  for (auto& B : bs) {
    src = src && B.euler_source();
    tgt = tgt && B.euler_target();
    split = split && B.splitting_consistent();
    // k0 class reproduces the Hilbert polynomial
    for (auto [H, v] : {std::pair{&B.hker, &B.kker}, {&B.him, &B.kim}, {&B.hcoker, &B.kcoker}})
      k0 = k0 && k0_class(*H) == *v && v->rank() == H->rank && v->degree() == H->degree;
  }
  c.check("bundle.euler-source", "[ker] + [im] = m[O]", src, {{"j", j}});
  c.check("bundle.euler-target", "[im] + [coker] = m[O(j)]", tgt, {{"j", j}});
  c.check("bundle.splitting", "splitting type sums match the kernel Hilbert data", split, {{"j", j}});
  c.check("bundle.k0", "K0 classes carry rank and degree of the Hilbert data", k0, {{"j", j}});
}

Json do_bundle(Ctx& c) {
  unsigned j = c.j_or(1);
  auto opt = c.graded();
  auto v = decide_constant_jrank(*c.M, *c.L, j, c.decision());
  Json out{{"j", j}, {"constancy", status_word(v.status)},
           {"classes", "K0 only; isomorphism type of the bundle is not determined"}};
  std::vector<ChartBundle> bs(c.L->maximals().size());
  parallel_for(bs.size(), c.cfg.jobs,
               [&](std::size_t i) { bs[i] = chart_bundle(*c.M, *c.L, c.L->maximals()[i], j, nullptr, opt); });
  Json charts = Json::array();
  for (auto& B : bs) charts.push_back(bundle_json(B));
  out["charts"] = charts;
  bundle_checks(c, bs, j);

  if (v.status == Status::Unknown) {
    c.undecided = true;
    out["family-compatibility"] = Json{{"status", "undecided"}};
    return out;
  }
  if (v.status == Status::NonConstant) {
    out["family-compatibility"] = Json{{"status", "not-a-bundle"}};
    return out;
  }
  Json fam = Json::object();
  bool all = true;
  for (auto& F : k0_families(*c.L, *c.M, j, opt, &bs, true)) {
    Json pairs = Json::array();
    for (auto& pr : F.pairs) {
      Json e{{"a", pr.a}, {"b", pr.b}, {"compatible", pr.compatible}};
      if (pr.meet) {
        e["meet"] = *pr.meet;
        e["from_a"] = pr.from_a.c;
        e["from_b"] = pr.from_b.c;
        if (pr.direct) e["direct"] = pr.direct->c;
      }
      pairs.push_back(e);
    }
    fam[kind_name(F.kind)] = Json{{"compatible", F.compatible}, {"pairs", pairs}};
    all = all && F.compatible;
  }
  out["family-compatibility"] = fam;
  c.check("bundle.family", "chart classes agree after restriction to common charts", all, {{"j", j}});
  return out;
}

// ---------------------------------------------------------------- springer

Json do_springer(Ctx& c) {
  auto EL = ell_lattice(c.L);  // exp(log u) = u and the lattice checks
  const ElabLattice& L = *c.L;
  const GroupTable& G = *c.G;
  Json out{{"n", EL.n}, {"p", EL.p}, {"scope", "r = 1 rank comparison; truncated-operator comparison not modelled"}};
  c.check("springer.exp-log", "exp and log are inverse on the p-elements", true);

  bool conj = true;
  for (std::size_t m = 0; m < L.size(); ++m)
    for (Elt x : G.generators()) conj = conj && ell_conjugation_compatible(EL, m, x);
  c.check("springer.conjugation", "log(xEx^-1) = x log(E) x^-1", conj);

  auto Fp = GaloisField::get(c.p, 1);
  bool kills = true;
  for (auto m : L.maximals()) {
    const Subgroup& E = L.member(m);
    for (Elt g : E.jbasis)
      for (Elt k : E.jbasis) {
        std::vector<GaloisField::Elem> a(E.jbasis.size(), 0);
        auto add = [&](Elt x, GaloisField::Elem v) {
          if (x) a[E.jindex(x)] = Fp->add(a[E.jindex(x)], v);
        };
        add(G.mul(g, k), 1);
        add(g, c.p - 1);
        add(k, c.p - 1);
        kills = kills && ell_point(EL, m, Fp, a).is_zero();
      }
  }
  c.check("springer.ell-kills-J2", "the log map vanishes on J_E^2", kills);

  auto rng = c.rng(37);
  unsigned r = std::max(2u, c.cfg.ext_cap);
  auto Fr = GaloisField::get(c.p, r);
  bool axis = true, trunc = true, restr = true;
  for (auto m : L.maximals()) {
    const Subgroup& E = L.member(m);
    for (unsigned i = 0; i < E.rank; ++i) {
      std::vector<GaloisField::Elem> cc(E.rank, 0);
      cc[i] = 1 + rng() % (Fr->order() - 1);
      auto pt = ell_r_point(EL, m, Fr, cc, r);
      for (unsigned t = 0; t < r; ++t)
        axis = axis && pt.psi[t] == EL.subalgebra[m][i].lift(Fr).scaled(Fr->frobenius(cc[i], t));
    }
    auto cc = random_vec(rng, *Fr, E.rank);
    auto full = ell_r_point(EL, m, Fr, cc, r), part = ell_r_point(EL, m, Fr, cc, r - 1);
    for (unsigned t = 0; t + 1 < r; ++t) trunc = trunc && full.psi[t] == part.psi[t];
    for (std::size_t s = 0; s < L.size(); ++s) {
      if (s == m || !L.includes(m, s)) continue;
      auto cs = random_vec(rng, *Fr, L.member(s).rank);
      auto small = ell_r_point(EL, s, Fr, cs, r);
      auto big = ell_r_point(EL, m, Fr, include_coordinates(L, s, m, Fr, cs), r);
      for (unsigned t = 0; t < r; ++t) restr = restr && small.psi[t] == big.psi[t];
    }
  }
  c.check("springer.ell-r-axis", "axis points give Frobenius twists of one log", axis, {{"r", r}});
  c.check("springer.ell-r-truncation", "dropping the last coordinate truncates", trunc, {{"r", r}});
  c.check("springer.ell-r-restriction", "compatible with inclusions of subgroups", restr, {{"r", r}});

  // rank comparison on the charts where the module has constant j-rank
  Json cmp = Json::array();
  bool equal = true;
  std::size_t points = 0;
  for (unsigned j : c.js()) {
    for (auto m : L.maximals()) {
      auto res = decide_chart_exact(*c.M, L, m, j, c.decision());
      Json e{{"j", j}, {"chart", m}, {"status", status_word(res.status)}};
      if (res.status != Status::Constant) {
        if (res.status == Status::Unknown) c.undecided = true;
        cmp.push_back(e);
        continue;
      }
      const Subgroup& E = L.member(m);
      std::size_t here = 0, bad = 0, rank = res.generic_rank;
      auto one = [&](const PiPoint& xi) {
        auto rc = rank_compare(*c.M, EL, xi, j, m, true);
        ++here;
        if (!rc.equal || rc.rank_group != rank) ++bad;
      };
      // every s_E point over F_p
      std::vector<GaloisField::Elem> cc(E.rank, 0);
      for (;;) {
        std::size_t k = 0;
        while (k < E.rank && ++cc[k] == c.p) cc[k++] = 0;
        if (k == E.rank) break;
        std::vector<GaloisField::Elem> a(E.jbasis.size(), 0);
        for (unsigned i = 0; i < E.rank; ++i) a[E.jindex(E.basis[i])] = cc[i];
        one(make_pi_point(L, m, Fp, a));
      }
      std::size_t n = std::min<std::size_t>(c.cfg.samples, 50);
      for (std::size_t t = 0; t < n; ++t) one(random_flat(L, m, Fp, rng));
      e["points"] = here;
      e["rank"] = rank;
      e["mismatches"] = bad;
      cmp.push_back(e);
      points += here;
      equal = equal && bad == 0;
    }
  }
  out["rank-compare"] = cmp;
  c.check("springer.rank-compare", "group and Lie ranks agree at flat points of constant charts", equal,
          {{"points", points}});
  return out;
}

bool springer_applies(const Ctx& c) {
  return c.G->has_matrices() && c.G->matrix_prime() == c.p && c.p > c.G->matrix_dim();
}

Json header(const Ctx& c, const std::string& command) {
  Json h;
  h["schema"] = 1;
  h["command"] = command;
  h["group"] = Json{{"name", c.G->name()}, {"order", c.G->order()}};
  h["prime"] = c.p;
  if (c.M) h["module"] = Json{{"name", c.M->name()}, {"dim", c.M->dim()}};
  Json params{{"method", method_name(c.cfg.method)}, {"samples", c.cfg.samples}, {"ext_cap", c.cfg.ext_cap},
              {"seed", c.cfg.seed}, {"degree_bound", c.cfg.degree_bound}};
  if (c.cfg.j) params["j"] = *c.cfg.j;
  h["params"] = params;
  return h;
}

}  // namespace

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& f) {
  unsigned k = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), n));
  if (k <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < k; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next++) < n;) {
        try {
          f(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!err) err = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"lattice", "theta", "jordan", "cjt", "bundle", "springer", "verify"};
  return c;
}

RunResult run(const std::string& command, const JobConfig& cfg) {
  RunResult res;
  Json report;
  report["schema"] = 1;
  report["command"] = command;
  try {
    if (std::find(commands().begin(), commands().end(), command) == commands().end())
      throw InvalidInput("unknown command '" + command + "'");
    Ctx c{cfg, build_group(cfg.group, cfg.base_dir), 0, nullptr, nullptr};
    c.p = resolve_prime(cfg, *c.G);
    if (cfg.j && (*cfg.j < 1 || *cfg.j >= c.p)) throw InvalidInput("j must lie in 1..p-1");
    c.L = std::make_shared<const ElabLattice>(c.G, c.p);
    if (command != "lattice") c.M = build_module(cfg.module, c.G, c.p, cfg.base_dir);
    report = header(c, command);

    auto section = [&](const std::string& name, auto&& fn) {
      try {
        report[name] = fn();
      } catch (const ResourceLimit& e) {
        c.undecided = true;
        report[name] = Json{{"error", "resource-limit"}, {"message", e.what()}};
      }
    };
    if (command == "lattice") section("lattice", [&] { return do_lattice(c); });
    else if (command == "theta") section("theta", [&] { return do_theta(c, true); });
    else if (command == "jordan") section("jordan", [&] { return do_jordan(c); });
    else if (command == "cjt") section("cjt", [&] { return do_cjt(c); });
    else if (command == "bundle") section("bundle", [&] { return do_bundle(c); });
    else if (command == "springer") section("springer", [&] { return do_springer(c); });
    else {
      section("lattice", [&] { return do_lattice(c); });
      Json th = Json::array();
      for (unsigned j : c.js()) {
        JobConfig one = cfg;
        one.j = j;
        Ctx cj{one, c.G, c.p, c.M, c.L};
        section("theta", [&] { return do_theta(cj, false); });
        th.push_back(report["theta"]);
        for (auto& k : cj.checks) c.checks.push_back(k);
        c.undecided = c.undecided || cj.undecided;
      }
      report["theta"] = th;
      section("jordan", [&] { return do_jordan(c); });
      section("cjt", [&] { return do_cjt(c); });
      Json bs = Json::array();
      for (unsigned j : c.js()) {
        JobConfig one = cfg;
        one.j = j;
        Ctx cj{one, c.G, c.p, c.M, c.L};
        section("bundle", [&] { return do_bundle(cj); });
        bs.push_back(report["bundle"]);
        for (auto& k : cj.checks) c.checks.push_back(k);
        c.undecided = c.undecided || cj.undecided;
      }
      report["bundle"] = bs;
      if (springer_applies(c)) section("springer", [&] { return do_springer(c); });
      else report["springer"] = Json{{"skipped", "not a unipotent matrix group over F_p with p > n"}};
    }

    bool pass = std::all_of(c.checks.begin(), c.checks.end(), [](const Json& k) { return k["pass"].get<bool>(); });
    report["checks"] = c.checks;
    report["summary"] = Json{{"checks", c.checks.size()}, {"passed", pass}, {"undecided", c.undecided}};
    res.exit_code = !pass ? CheckFailed : c.undecided ? Undecided : Ok;
  } catch (const InvalidInput& e) {
    report["error"] = Json{{"kind", "invalid-input"}, {"message", e.what()}};
    res.exit_code = BadInput;
  } catch (const ResourceLimit& e) {
    report["error"] = Json{{"kind", "resource-limit"}, {"message", e.what()}};
    res.exit_code = Undecided;
  } catch (const PropertyViolation& e) {
    report["error"] = Json{{"kind", "property-violation"}, {"message", e.what()}};
    res.exit_code = CheckFailed;
  } catch (const std::exception& e) {
    report["error"] = Json{{"kind", "internal"}, {"message", e.what()}};
    res.exit_code = CheckFailed;
  }
  res.report = std::move(report);
  return res;
}

}  // namespace pib::app
