#pragma once

#include <optional>
#include <vector>

#include "ffield/fmatrix.hpp"
#include "grouplat/lattice.hpp"
#include "jordan/jordan.hpp"
#include "modrep/module.hpp"
#include "theta/theta.hpp"

namespace pib {

// largest k with N^k != 0 (0 for N = 0); throws if N is not nilpotent
unsigned nilpotency_class(const FMatrix& N);

// truncated series; both need class < p
FMatrix exp_nilpotent(const FMatrix& N);
FMatrix log_unipotent(const FMatrix& u);

// logs of a unipotent matrix group, checked against the lattice
struct EllLattice {
  LatticePtr lattice;
  unsigned p = 0, n = 0;
  // log(g) over F_p for the identity and every element of order p
  std::vector<std::optional<FMatrix>> logs;
  // per lattice member: log(g_1), ..., log(g_r) on its basis
  std::vector<std::vector<FMatrix>> subalgebra;

  const FMatrix& log_of(Elt g) const;
};

// InvalidInput for a non-matrix group, p <= n or a non-unipotent p-element;
// PropertyViolation when a lattice check fails
EllLattice ell_lattice(LatticePtr L);

// log(E^x) = x log(E) x^-1, elementwise
bool ell_conjugation_compatible(const EllLattice& EL, std::size_t member, Elt x);

// sum_g a_g log(g) over E.jbasis
FMatrix ell_point(const EllLattice& EL, std::size_t member, const FieldPtr& F, const std::vector<GaloisField::Elem>& a);

struct OneParamPoint {
  std::size_t member = 0;
  FieldPtr field;
  std::vector<GaloisField::Elem> c;  // coordinates on g_1 - e, ..., g_r - e in J/J^2
  std::vector<FMatrix> psi;          // psi_i = sum_j c_j^{p^i} log(g_j), i = 0..r-1
};

OneParamPoint ell_r_point(const EllLattice& EL, std::size_t member, const FieldPtr& F,
                          const std::vector<GaloisField::Elem>& c, unsigned r);

// J_sub/J_sub^2 coordinates pushed into J_sup/J_sup^2 (sub contained in sup)
std::vector<GaloisField::Elem> include_coordinates(const ElabLattice& L, std::size_t sub, std::size_t sup,
                                                   const FieldPtr& F, const std::vector<GaloisField::Elem>& c);

struct RankComparison {
  std::size_t rank_group = 0, rank_lie = 0;
  bool equal = false;
};

// rank of (sum a_g (rho(g) - I))^j against rank of (sum a_g log rho(g))^j at a flat point.
// The module must have constant j-rank on `chart` (a maximal containing the point; default
// the first one); pass `checked` to skip re-deciding that.
RankComparison rank_compare(const ModuleRep& M, const EllLattice& EL, const PiPoint& xi, unsigned j,
                            std::optional<std::size_t> chart = std::nullopt, bool checked = false);

}  // namespace pib
