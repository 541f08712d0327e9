#pragma once

#include <vector>

#include "ffield/fmatrix.hpp"
#include "grouplat/lattice.hpp"
#include "modrep/module.hpp"

namespace pib {

// J_E with basis {g - e : e != g in E}, ordered as E.jbasis
struct RadicalBasis {
  Subgroup E;
  unsigned p = 0;
  FieldPtr F;
  // powers[j-1] spans J_E^j, rows in J_E coordinates, row reduced; j = 1..r(p-1)+1
  std::vector<FMatrix> powers;
  // r x (p^r - 1): row i is the form v -> i-th coordinate of v in J/J^2 w.r.t. g_i - e;
  // these span ann(J_E^2)
  FMatrix ann;

  std::size_t dim() const { return E.jbasis.size(); }
  unsigned top() const { return E.rank * (p - 1) + 1; }
  // J_E^j for any j >= 1 (zero rows past nilpotency)
  FMatrix power(unsigned j) const;
  // coordinates of v in J_E/J_E^2 on the classes of g_1 - e, ..., g_r - e
  std::vector<FMatrix::Elem> quotient_coordinates(const std::vector<FMatrix::Elem>& v) const;
};

RadicalBasis radical_basis(const GroupTable& G, const Subgroup& E, unsigned p);
FMatrix radical_power_basis(const GroupTable& G, const Subgroup& E, unsigned p, unsigned j);

// basis of M of vectors X^beta m_l (X_i = rho(g_i) - I, m_l lifting a basis of M/J_E M),
// chosen in order of increasing |beta|; columns of P, with degree |beta| per column
struct AdaptedBasis {
  FMatrix P;
  std::vector<int> degree;
};
AdaptedBasis adapted_basis(const ModuleRep& M, const Subgroup& E);

// rho(g) - I over F_p for g in E.jbasis order
std::vector<FMatrix> nilpotent_generators(const ModuleRep& M, const Subgroup& E);

// sum_g a_g (rho(g) - I) over the field of the coefficients
FMatrix radical_action(const ModuleRep& M, const Subgroup& E, const FieldPtr& F,
                       const std::vector<FMatrix::Elem>& a);

}  // namespace pib
