#include <random>

#include "doctest.h"
#include "ffield/errors.hpp"
#include "modrep/radical.hpp"
#include "theta/theta.hpp"

using namespace pib;

namespace {

std::vector<GaloisField::Elem> random_vec(std::mt19937_64& rng, const GaloisField& F, std::size_t n) {
  std::vector<GaloisField::Elem> v(n);
  for (auto& x : v) x = rng() % F.order();
  return v;
}

// max rank over all points of F^n (n small)
std::size_t max_rank_exhaustive(const PolyMatrix& A, const FieldPtr& F) {
  unsigned n = A.ring()->nvars();
  std::vector<GaloisField::Elem> pt(n, 0);
  std::size_t best = 0;
  while (true) {
    best = std::max(best, A.evaluate(F, pt).rank());
    unsigned i = 0;
    while (i < n && ++pt[i] == F->order()) pt[i++] = 0;
    if (i == n) break;
  }
  return best;
}

}  // namespace

TEST_CASE("trivial module gives the zero family") {
  auto H = GroupTable::heisenberg(3);
  auto L = std::make_shared<const ElabLattice>(H, 3);
  auto T = theta_family(L, ModuleRep::trivial(H, 3), 1);
  CHECK(T.charts.size() == 4);
  for (auto& c : T.charts) CHECK(c.theta.is_zero());
  CHECK(verify_p_nilpotent(T));
  CHECK_THROWS_AS(theta_family(L, ModuleRep::trivial(H, 3), 3), InvalidInput);
  CHECK_THROWS_AS(theta_family(L, ModuleRep::trivial(H, 3), 0), InvalidInput);
}

TEST_CASE("Z/2 regular module") {
  auto G = GroupTable::cyclic(2);
  auto L = std::make_shared<const ElabLattice>(G, 2);
  auto T = theta_family(L, ModuleRep::regular(G, 2), 1);
  REQUIRE(T.charts.size() == 1);
  auto& th = T.charts[0].theta;
  auto x = MultiPoly::variable(th.ring(), 0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(th.at(i, j) == x);
  CHECK(generic_rank(th) == 1);
  CHECK(T.charts[0].ring->names()[0] == "x_1@E0");
}

TEST_CASE("klein4 regular module") {
  auto K = GroupTable::klein4();
  auto L = std::make_shared<const ElabLattice>(K, 2);
  auto M = ModuleRep::regular(K, 2);
  auto T = theta_family(L, M, 1);
  REQUIRE(T.charts.size() == 1);
  auto& th = T.charts[0].theta;
  CHECK(th.ring()->nvars() == 3);
  CHECK(generic_rank(th) == 2);
  CHECK(max_rank_exhaustive(th, GaloisField::get(2, 2)) == 2);
  CHECK(verify_p_nilpotent(T));
  auto m = T.charts[0].member;
  auto& E = L->member(m);
  auto F2 = GaloisField::get(2);
  for (std::size_t k = 0; k < 3; ++k) {
    std::vector<GaloisField::Elem> a(3, 0);
    a[k] = 1;
    auto xi = make_pi_point(*L, m, F2, a);
    auto S = specialize(T, xi);
    CHECK(S == M->rho(E.jbasis[k]) - FMatrix::identity(F2, 4));
    CHECK(S.rank() == 2);
  }
  CHECK(specialize(T, make_pi_point(*L, m, F2, {0, 0, 0})).is_zero());
  // pullback
  auto P = pullback_sE(T, m);
  CHECK(P.ring()->nvars() == 2);
  auto N = nilpotent_generators(*M, E);
  for (auto [y1, y2] : std::vector<std::pair<unsigned, unsigned>>{{1, 0}, {0, 1}, {1, 1}}) {
    auto val = P.evaluate(F2, {y1, y2});
    auto want = N[E.jindex(E.basis[0])].scaled(y1) + N[E.jindex(E.basis[1])].scaled(y2);
    CHECK(val == want);
  }
  CHECK(generic_rank(P) == generic_rank(th));
  // twist
  auto T0 = frobenius_twist(T, 0);
  CHECK(T0.charts[0].theta == th);
  auto T1 = frobenius_twist(T, 1);
  CHECK(T1.degree() == 2);
  CHECK(T1.charts[0].theta.at(0, 1).is_homogeneous(2));
  // restriction to a rank-1 subgroup
  for (Elt g = 1; g < 4; ++g) {
    auto R = restrict_family(T, {0, g});
    REQUIRE(R.charts.size() == 1);
    CHECK(R.charts[0].ring->nvars() == 1);
    auto v = R.charts[0].theta.evaluate(F2, {1});
    CHECK(v == M->rho(g) - FMatrix::identity(F2, 4));
  }
  CHECK_THROWS_AS(restrict_family(T, {0, 1, 2}), InvalidInput);
}

TEST_CASE("specialization agrees with the radical action") {
  std::mt19937_64 rng(11);
  for (auto [G, p] : std::vector<std::pair<GroupPtr, unsigned>>{{GroupTable::heisenberg(3), 3u},
                                                                {GroupTable::klein4(), 2u},
                                                                {GroupTable::elementary_abelian(3, 2), 3u},
                                                                {GroupTable::alternating(4), 2u}}) {
    auto L = std::make_shared<const ElabLattice>(G, p);
    std::vector<ModulePtr> mods{ModuleRep::regular(G, p)};
    if (G->has_matrices()) mods.push_back(ModuleRep::natural(G));
    for (auto& M : mods)
      for (unsigned j = 1; j < p; ++j) {
        auto T = theta_family(L, M, j);
        CHECK(verify_p_nilpotent(T));
        for (unsigned d = 1; d <= 2; ++d) {
          auto F = GaloisField::get(p, d);
          for (std::size_t s = 0; s < L->size(); ++s) {
            auto xi = make_pi_point(*L, s, F, random_vec(rng, *F, L->member(s).jbasis.size()));
            auto want = radical_action(*M, L->member(s), F, xi.a).power(j);
            for (auto m : L->maximals())
              if (L->includes(m, s)) CHECK(specialize_via(T, xi, m) == want);
          }
        }
      }
  }
}

TEST_CASE("flatness of pi-points") {
  auto G = GroupTable::elementary_abelian(3, 2);
  ElabLattice L(G, 3);
  auto m = L.maximals()[0];
  auto& E = L.member(m);
  auto R = radical_basis(*G, E, 3);
  auto F = GaloisField::get(3, 2);
  std::mt19937_64 rng(5);
  int flat = 0;
  for (int t = 0; t < 200; ++t) {
    std::vector<GaloisField::Elem> a(E.jbasis.size(), 0);
    // half the samples inside J^2
    if (t % 2) {
      auto J2 = R.power(2);
      for (std::size_t i = 0; i < J2.rows(); ++i) {
        auto c = rng() % 9;
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = F->add(a[k], F->mul(c, J2.at(i, k)));
      }
    } else {
      a = random_vec(rng, *F, a.size());
    }
    auto xi = make_pi_point(L, m, F, a);
    // oracle: rank of [J^2 ; a] over F exceeds rank J^2
    auto J2 = R.power(2).lift(F);
    FMatrix S(F, J2.rows() + 1, a.size());
    for (std::size_t i = 0; i < J2.rows(); ++i)
      for (std::size_t k = 0; k < a.size(); ++k) S.at(i, k) = J2.at(i, k);
    for (std::size_t k = 0; k < a.size(); ++k) S.at(J2.rows(), k) = a[k];
    CHECK(xi.flat == (S.rank() > J2.rows()));
    flat += xi.flat;
  }
  CHECK(flat > 50);
  CHECK(flat <= 100);
}

TEST_CASE("rank-1 subgroup specializes identically through different maximals") {
  auto H = GroupTable::heisenberg(3);
  auto L = std::make_shared<const ElabLattice>(H, 3);
  auto T = theta_family(L, ModuleRep::natural(H), 1);
  auto F = GaloisField::get(3, 2);
  std::size_t checked = 0;
  for (std::size_t s = 0; s < L->size(); ++s) {
    if (L->member(s).rank != 1) continue;
    std::vector<std::size_t> ms;
    for (auto m : L->maximals())
      if (L->includes(m, s)) ms.push_back(m);
    if (ms.size() < 2) continue;
    for (GaloisField::Elem c = 1; c < 9; ++c) {
      auto xi = make_pi_point(*L, s, F, {c, F->mul(c, c)});
      for (auto m : ms) CHECK(specialize_via(T, xi, m) == specialize_via(T, xi, ms[0]));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("pullback on kE/J^2") {
  auto G = GroupTable::elementary_abelian(3, 2);
  auto L = std::make_shared<const ElabLattice>(G, 3);
  auto M = ModuleRep::radical_quotient(G, 3, 2);
  REQUIRE(M->dim() == 3);
  auto T = theta_family(L, M, 1);
  auto P = pullback_sE(T, L->maximals()[0]);
  CHECK(generic_rank(P) == 1);
  CHECK((P * P).is_zero());
  auto F = GaloisField::get(3);
  // images of y1 and y2 together span the 2-dim radical J/J^2 of the module
  auto A = P.evaluate(F, {1, 0}), B = P.evaluate(F, {0, 1});
  FMatrix both(F, 3, 6);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      both.at(i, j) = A.at(i, j);
      both.at(i, 3 + j) = B.at(i, j);
    }
  CHECK(both.rank() == 2);
  CHECK(A.rank() == 1);
  CHECK(B.rank() == 1);
}

TEST_CASE("frobenius twist commutes with specialization") {
  auto H = GroupTable::heisenberg(3);
  auto L = std::make_shared<const ElabLattice>(H, 3);
  auto T = theta_family(L, ModuleRep::natural(H), 2);
  auto T1 = frobenius_twist(T, 1);
  auto F = GaloisField::get(3, 3);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    std::size_t s = rng() % L->size();
    auto a = random_vec(rng, *F, L->member(s).jbasis.size());
    auto ap = a;
    for (auto& x : ap) x = F->frobenius(x, 1);
    CHECK(specialize(T1, make_pi_point(*L, s, F, a)) == specialize(T, make_pi_point(*L, s, F, ap)));
  }
  for (auto& c : T1.charts) CHECK(c.theta.at(0, 2).is_homogeneous(6));
}

TEST_CASE("restriction of the family") {
  auto H = GroupTable::heisenberg(3);
  auto L = std::make_shared<const ElabLattice>(H, 3);
  for (auto M : {ModuleRep::natural(H), ModuleRep::regular(H, 3)}) {
    auto T = theta_family(L, M, 1);
    std::vector<Elt> all(H->order());
    for (Elt g = 0; g < H->order(); ++g) all[g] = g;
    auto same = restrict_family(T, all);
    REQUIRE(same.charts.size() == T.charts.size());
    for (std::size_t i = 0; i < T.charts.size(); ++i) {
      CHECK(same.charts[i].member == T.charts[i].member);
      CHECK(same.charts[i].ring->names() == T.charts[i].ring->names());
      CHECK(same.charts[i].theta == T.charts[i].theta);
    }
    for (auto m : L->maximals()) {
      auto R = restrict_family(T, L->member(m).elements);
      auto direct = theta_family(R.lattice, R.module, 1);
      REQUIRE(R.charts.size() == direct.charts.size());
      for (std::size_t i = 0; i < R.charts.size(); ++i) {
        CHECK(R.charts[i].ring->names() == direct.charts[i].ring->names());
        CHECK(R.charts[i].theta == direct.charts[i].theta);
      }
    }
  }
}

TEST_CASE("equivariance and compatibility") {
  for (auto [G, p] : std::vector<std::pair<GroupPtr, unsigned>>{{GroupTable::heisenberg(3), 3u},
                                                                {GroupTable::symmetric(4), 2u},
                                                                {GroupTable::symmetric(4), 3u},
                                                                {GroupTable::dihedral(4), 2u}}) {
    auto L = std::make_shared<const ElabLattice>(G, p);
    std::vector<ModulePtr> mods{ModuleRep::regular(G, p)};
    if (G->has_matrices()) mods.push_back(ModuleRep::natural(G));
    bool moved = false;
    for (auto& M : mods) {
      auto T = theta_family(L, M, p - 1);
      CHECK(family_compatible(T));
      for (auto m : L->maximals())
        for (Elt x = 0; x < G->order(); ++x) {
          CHECK(equivariance_holds(T, m, x));
          moved = moved || L->conjugate_index(m, x) != m;
        }
    }
    if (G->order() == 24) CHECK(moved);
  }
}

TEST_CASE("monomial chart reproduces the group-element chart") {
  std::mt19937_64 rng(17);
  for (auto [G, p] : std::vector<std::pair<GroupPtr, unsigned>>{{GroupTable::heisenberg(3), 3u},
                                                                {GroupTable::elementary_abelian(2, 3), 2u},
                                                                {GroupTable::heisenberg(5), 5u}}) {
    auto L = std::make_shared<const ElabLattice>(G, p);
    auto M = G->has_matrices() ? ModuleRep::natural(G) : ModuleRep::regular(G, p);
    auto T = theta_family(L, M, 1);
    auto F = GaloisField::get(p, 2);
    for (auto& c : T.charts) {
      auto mc = monomial_chart(*L, *M, c.member);
      CHECK(mc.a_to_c.rank() == mc.alphas.size());
      auto R = radical_basis(*G, L->member(c.member), p);
      for (int t = 0; t < 10; ++t) {
        auto a = random_vec(rng, *F, mc.alphas.size());
        auto cv = (mc.a_to_c.lift(F) * [&] {
                    FMatrix col(F, a.size(), 1);
                    for (std::size_t k = 0; k < a.size(); ++k) col.at(k, 0) = a[k];
                    return col;
                  }());
        std::vector<GaloisField::Elem> cpt(a.size());
        for (std::size_t k = 0; k < a.size(); ++k) cpt[k] = cv.at(k, 0);
        CHECK(mc.linear.evaluate(F, cpt) == c.linear.evaluate(F, a));
      }
      // c_{e_i} are the J/J^2 coordinate forms
      for (unsigned i = 0; i < L->member(c.member).rank; ++i)
        for (std::size_t k = 0; k < mc.alphas.size(); ++k) CHECK(mc.a_to_c.at(mc.unit_index[i], k) == R.ann.at(i, k));
    }
  }
}
