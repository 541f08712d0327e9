#pragma once
// Brute-force oracles shared by unit tests and the acceptance binary. They avoid
// the core field and elimination code on purpose.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "modrep/module.hpp"
#include "grouplat/lattice.hpp"

namespace oracle {

// F_p or F_{p^2}; element a0 + a1 x stored as a0 + p a1
struct SmallField {
  unsigned p = 0, q = 0;
  std::vector<std::uint8_t> add, mul, neg, inv;

  static SmallField make(unsigned p, unsigned d) {
    SmallField F;
    F.p = p;
    F.q = d == 1 ? p : p * p;
    if (d != 1 && d != 2) throw std::invalid_argument("oracle field degree");
    // x^2 = c0 + c1 x
    unsigned c0 = 0, c1 = 0;
    if (d == 2) {
      if (p == 2) {
        c0 = 1, c1 = 1;
      } else {
        for (unsigned c = 2; c < p; ++c) {
          bool square = false;
          for (unsigned y = 1; y < p; ++y) square = square || (y * y) % p == c;
          if (!square) {
            c0 = c;
            break;
          }
        }
      }
    }
    unsigned q = F.q;
    F.add.resize(q * q);
    F.mul.resize(q * q);
    F.neg.resize(q);
    F.inv.resize(q);
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        unsigned a0 = a % p, a1 = a / p, b0 = b % p, b1 = b / p;
        F.add[a * q + b] = static_cast<std::uint8_t>((a0 + b0) % p + p * ((a1 + b1) % p));
        unsigned t0 = a0 * b0, t1 = a0 * b1 + a1 * b0, t2 = a1 * b1;
        unsigned r0 = (t0 + t2 * c0) % p, r1 = (t1 + t2 * c1) % p;
        F.mul[a * q + b] = static_cast<std::uint8_t>(r0 + p * r1);
      }
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        if (F.add[a * q + b] == 0) F.neg[a] = static_cast<std::uint8_t>(b);
        if (F.mul[a * q + b] == 1) F.inv[a] = static_cast<std::uint8_t>(b);
      }
    return F;
  }
};

inline unsigned rank_of(const SmallField& F, std::vector<std::uint8_t> A, unsigned n) {
  unsigned q = F.q, r = 0;
  for (unsigned c = 0; c < n && r < n; ++c) {
    unsigned s = r;
    while (s < n && A[s * n + c] == 0) ++s;
    if (s == n) continue;
    if (s != r)
      for (unsigned j = 0; j < n; ++j) std::swap(A[s * n + j], A[r * n + j]);
    unsigned iv = F.inv[A[r * n + c]];
    for (unsigned i = r + 1; i < n; ++i) {
      unsigned x = A[i * n + c];
      if (!x) continue;
      unsigned f = F.neg[F.mul[x * q + iv]];
      for (unsigned j = c; j < n; ++j) {
        unsigned y = A[r * n + j];
        if (y) A[i * n + j] = F.add[A[i * n + j] * q + F.mul[f * q + y]];
      }
    }
    ++r;
  }
  return r;
}

inline std::vector<std::uint8_t> product(const SmallField& F, const std::vector<std::uint8_t>& A,
                                         const std::vector<std::uint8_t>& B, unsigned n) {
  unsigned q = F.q;
  std::vector<std::uint8_t> C(n * n, 0);
  for (unsigned i = 0; i < n; ++i)
    for (unsigned k = 0; k < n; ++k) {
      unsigned x = A[i * n + k];
      if (!x) continue;
      const std::uint8_t* row = F.mul.data() + x * q;
      for (unsigned j = 0; j < n; ++j) {
        unsigned y = B[k * n + j];
        if (y) C[i * n + j] = F.add[C[i * n + j] * q + row[y]];
      }
    }
  return C;
}

// rank profile (rank N^s, s = 1..p-1) -> number of flat projective points, for one subgroup
struct Profiles {
  std::map<std::vector<unsigned>, std::size_t> count;
  std::size_t points = 0;
};

// Enumerates every flat point of J_E over F_{p^d} up to scalars, with
// N = sum_g a_g (rho(g) - I). Flat means the linear part sum_g a_g k(g) is nonzero.
inline Profiles exhaustive_profiles(const pib::ModuleRep& M, const pib::Subgroup& E, unsigned d) {
  unsigned p = M.prime();
  SmallField F = SmallField::make(p, d);
  unsigned q = F.q, n = static_cast<unsigned>(M.dim());
  std::size_t nv = E.jbasis.size();
  // additive basis of F over F_p: 1 and x
  std::vector<unsigned> basis{1};
  if (d == 2) basis.push_back(p);
  std::vector<std::vector<std::vector<std::uint8_t>>> step(nv);  // step[k][b] = basis[b] * N_k
  std::vector<std::vector<std::uint8_t>> Nk(nv, std::vector<std::uint8_t>(n * n));
  for (std::size_t k = 0; k < nv; ++k) {
    const auto& R = M.rho(E.jbasis[k]);
    for (unsigned i = 0; i < n; ++i)
      for (unsigned j = 0; j < n; ++j) Nk[k][i * n + j] = static_cast<std::uint8_t>((R.at(i, j) + (i == j ? p - 1 : 0)) % p);
    for (unsigned b : basis) {
      std::vector<std::uint8_t> S(n * n);
      for (unsigned t = 0; t < n * n; ++t) S[t] = F.mul[b * q + Nk[k][t]];
      step[k].push_back(S);
    }
  }
  unsigned r = E.rank;
  Profiles out;
  for (std::size_t lead = 0; lead < nv; ++lead) {
    // a_lead = 1, earlier coordinates 0, later ones run over F additively
    std::vector<unsigned> digit((nv - lead - 1) * basis.size(), 0);
    std::vector<std::uint8_t> a(nv, 0);
    a[lead] = 1;
    std::vector<std::uint8_t> N = Nk[lead];
    while (true) {
      bool flat = false;
      for (unsigned i = 0; i < r && !flat; ++i) {
        unsigned s = 0;
        for (std::size_t k = 0; k < nv; ++k)
          if (a[k] && E.exponents[k][i]) s = F.add[s * q + F.mul[a[k] * q + E.exponents[k][i] % p]];
        flat = s != 0;
      }
      if (flat) {
        std::vector<unsigned> prof;
        std::vector<std::uint8_t> P = N;
        for (unsigned s = 1; s < p; ++s) {
          prof.push_back(rank_of(F, P, n));
          if (s + 1 < p) P = product(F, P, N, n);
        }
        ++out.count[prof];
        ++out.points;
      }
      // odometer: each moved digit adds one basis multiple of N_k
      std::size_t t = 0;
      for (; t < digit.size(); ++t) {
        std::size_t k = lead + 1 + t / basis.size(), b = t % basis.size();
        const auto& S = step[k][b];
        for (unsigned u = 0; u < n * n; ++u)
          if (S[u]) N[u] = F.add[N[u] * q + S[u]];
        a[k] = F.add[a[k] * q + basis[b]];
        if (++digit[t] < p) break;
        digit[t] = 0;
      }
      if (t == digit.size()) break;
    }
  }
  return out;
}

// exhaustive verdict for j: constant iff every flat point of every maximal member has one j-rank
struct JVerdict {
  bool constant = true;
  std::vector<unsigned> ranks_seen;
};

inline std::vector<JVerdict> exhaustive_verdicts(const pib::ModuleRep& M, const pib::ElabLattice& L, unsigned d) {
  unsigned p = L.prime();
  std::vector<JVerdict> out(p - 1);
  for (auto m : L.maximals()) {
    auto prof = exhaustive_profiles(M, L.member(m), d);
    for (auto& [pr, cnt] : prof.count)
      for (unsigned j = 1; j < p; ++j) {
        auto& seen = out[j - 1].ranks_seen;
        bool have = false;
        for (auto x : seen) have = have || x == pr[j - 1];
        if (!have) seen.push_back(pr[j - 1]);
      }
  }
  for (auto& v : out) v.constant = v.ranks_seen.size() <= 1;
  return out;
}

}  // namespace oracle
