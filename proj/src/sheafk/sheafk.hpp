#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ffield/polymatrix.hpp"
#include "grouplat/lattice.hpp"
#include "modrep/module.hpp"

namespace pib {

// Pieces are graded by source degree: Theta^j maps (S_d)^m to (S_{d+j})^m, and
//   Ker_d ⊆ (S_d)^m,  Im_d ⊆ (S_{d+j})^m,  Coker_d = (S_{d+j})^m / Im_d.
// So [ker] + [im] = m[O] and [im] + [coker] = m[O(j)].
enum class PieceKind { Ker, Im, Coker };
const char* kind_name(PieceKind k);

struct GradedPieceTable {
  unsigned n = 0;  // variables of the chart ring
  unsigned p = 0;
  PieceKind kind = PieceKind::Ker;
  unsigned j = 1;  // degree of the chart entries
  std::size_t m = 0;
  std::vector<std::size_t> h;  // d = 0..D
  // rows span the piece in degree d (ker and im only, when kept)
  std::vector<FMatrix> bases;
  // degrees of a minimal generating set (ker and im); empty for coker
  std::vector<int> generator_degrees;

  unsigned bound() const { return static_cast<unsigned>(h.size()) - 1; }
};

struct GradedOptions {
  int degree_bound = -1;      // -1: j*m + n + 4
  unsigned degree_cap = 256;  // auto-extension stops here
  std::size_t size_cap = 40'000'000;  // entries of one degreewise matrix
  bool keep_bases = false;
};

std::size_t monomial_count(unsigned n, unsigned d);

GradedPieceTable graded_pieces(const PolyMatrix& chart, PieceKind kind, const GradedOptions& opt = {});

struct Rational {
  long long num = 0, den = 1;
  Rational() = default;
  Rational(long long n, long long d = 1);
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_integer() const { return den == 1; }
  std::string to_string() const;
};

struct HilbertData {
  unsigned n = 0;  // variables; sheaf lives on P^{n-1}
  std::vector<std::size_t> h;
  unsigned d0 = 0;              // h(d) = HP(d) for d0 <= d <= D
  std::vector<Rational> poly;   // coefficients of d^0 .. d^{n-1}
  long long rank = 0;
  long long degree = 0;

  Rational value(long long d) const;
};

// fits the tail; ResourceLimit if fewer than n+2 trailing values agree
HilbertData hilbert_polynomial(const GradedPieceTable& T);
// graded_pieces + hilbert_polynomial, doubling the degree bound up to the cap
HilbertData hilbert_data(const PolyMatrix& chart, PieceKind kind, const GradedOptions& opt = {},
                         GradedPieceTable* table = nullptr);

// class in K_0(P^dim) on the basis [O(0)], ..., [O(dim)]
struct K0Vector {
  unsigned dim = 0;
  std::vector<long long> c;

  long long rank() const;
  long long degree() const;  // first Chern class
  bool operator==(const K0Vector& o) const { return dim == o.dim && c == o.c; }
  bool operator!=(const K0Vector& o) const { return !(*this == o); }
  K0Vector operator+(const K0Vector& o) const;
  K0Vector operator-(const K0Vector& o) const;
  K0Vector scaled(long long s) const;
  std::string to_string() const;
};

K0Vector k0_class(const HilbertData& H);
K0Vector k0_line(unsigned dim, long long i);  // [O(i)], any integer i
K0Vector k0_twist(const K0Vector& v, long long t);
// [O(i)] -> [O(i)] on P^target, higher twists rewritten by the Koszul relation
K0Vector k0_restrict(const K0Vector& v, unsigned target_dim);

// {a_i} with ker = ⊕ O(a_i), nonincreasing; 2-variable kernel tables only
std::vector<int> splitting_type_p1(const GradedPieceTable& T);

// (sum_i y_i (rho(g_i) - I))^j over y_1..y_r, for an ordered basis g_1..g_r of a subgroup
PolyMatrix se_chart(const ModuleRep& M, const std::vector<Elt>& basis, unsigned j);

struct ChartBundle {
  std::size_t member = 0;
  std::vector<Elt> basis;
  unsigned j = 1;
  std::size_t m = 0;
  GradedPieceTable ker, im, coker;
  HilbertData hker, him, hcoker;
  K0Vector kker, kim, kcoker;
  std::optional<std::vector<int>> splitting;  // two variables only

  // [ker] + [im] = m[O]
  bool euler_source() const;
  // [im] + [coker] = m[O(j)]
  bool euler_target() const;
  // splitting type sums match the Hilbert data of the kernel
  bool splitting_consistent() const;
};

// all three pieces on the s_E chart of a lattice member; basis defaults to the member's
ChartBundle chart_bundle(const ModuleRep& M, const ElabLattice& L, std::size_t member, unsigned j,
                         const std::vector<Elt>* basis = nullptr, const GradedOptions& opt = {});

const K0Vector& piece_class(const ChartBundle& B, PieceKind kind);

struct K0Pair {
  std::size_t a = 0, b = 0;              // lattice indices of two maximals
  std::optional<std::size_t> meet;       // their intersection, if nontrivial
  K0Vector from_a, from_b;               // restrictions to the meet chart
  std::optional<K0Vector> direct;        // class computed on the meet chart itself
  bool compatible = true;
};

struct K0Family {
  PieceKind kind = PieceKind::Ker;
  unsigned j = 1;
  std::vector<ChartBundle> charts;  // one per maximal, lattice order
  std::vector<K0Pair> pairs;
  bool compatible = true;
};

// needs constant j-rank (InvalidInput otherwise); PropertyViolation on an incompatible family
K0Family k0_family(const ElabLattice& L, const ModuleRep& M, unsigned j, PieceKind kind,
                   const GradedOptions& opt = {});

// ker, im and coker families sharing one set of chart computations; `charts` are the
// maximal-chart bundles in lattice order if already known, `checked` skips the constancy
// decision. Incompatibility is reported in the result, not thrown.
std::vector<K0Family> k0_families(const ElabLattice& L, const ModuleRep& M, unsigned j, const GradedOptions& opt = {},
                                  const std::vector<ChartBundle>* charts = nullptr, bool checked = false);

}  // namespace pib
