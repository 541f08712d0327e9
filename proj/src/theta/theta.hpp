#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ffield/polymatrix.hpp"
#include "grouplat/lattice.hpp"
#include "modrep/module.hpp"

namespace pib {

using LatticePtr = std::shared_ptr<const ElabLattice>;

struct ThetaChart {
  std::size_t member = 0;  // lattice index of the maximal subgroup
  RingPtr ring;            // x_<g>@E<member>, g in jbasis order
  PolyMatrix linear;       // sum_g x_g (rho(g) - I), Frobenius twist applied
  PolyMatrix theta;        // linear^j
};

struct ThetaOperator {
  LatticePtr lattice;
  ModulePtr module;
  unsigned j = 1;
  unsigned twist = 0;  // entries are forms of degree j p^twist
  std::vector<ThetaChart> charts;

  int degree() const;
  const ThetaChart& chart_for(std::size_t maximal) const;
};

std::string theta_var_name(Elt g, std::size_t member);

ThetaOperator theta_family(LatticePtr L, ModulePtr M, unsigned j);

// compatibility of two charts on the intersection of their subgroups
bool charts_compatible(const ThetaOperator& T, std::size_t a, std::size_t b);
bool family_compatible(const ThetaOperator& T);

// pi-point data: subgroup of the lattice and coefficients on its J basis
struct PiPoint {
  std::size_t member = 0;
  FieldPtr field;
  std::vector<GaloisField::Elem> a;
  bool flat = false;
};

PiPoint make_pi_point(const ElabLattice& L, std::size_t member, FieldPtr F, std::vector<GaloisField::Elem> a);

// value of Theta^j at a pi-point; via a chosen containing maximal, or the first one
FMatrix specialize(const ThetaOperator& T, const PiPoint& xi);
FMatrix specialize_via(const ThetaOperator& T, const PiPoint& xi, std::size_t maximal);

// symbolic p-th power of every linear chart vanishes
bool verify_p_nilpotent(const ThetaOperator& T);

// x_{g_i} -> y_i, other variables -> 0, on a chart with the basis of its subgroup
PolyMatrix pullback_sE(const ThetaOperator& T, std::size_t maximal);

ThetaOperator frobenius_twist(const ThetaOperator& T, unsigned e);

// restriction to the subgroup on the sorted element list sigma; result lives on the
// lattice and restricted module of sigma and agrees with theta_family built there
ThetaOperator restrict_family(const ThetaOperator& T, const std::vector<Elt>& sigma);

// relabel x_g -> x_{x g x^-1} and conjugate by rho(x); should give the chart of E^x
bool equivariance_holds(const ThetaOperator& T, std::size_t maximal, Elt x);

// Theta_E on J_E written in the truncated polynomial basis:
// T(c) = sum_alpha c_alpha X^alpha with X_i = rho(g_i) - I
struct MonomialChart {
  std::size_t member = 0;
  RingPtr ring;                             // c_<alpha>@E<member>
  std::vector<std::vector<unsigned>> alphas;  // nonzero alpha in [0,p-1]^r, lexicographic
  PolyMatrix linear;
  FMatrix a_to_c;                           // c = a_to_c * a (a in jbasis order)
  // index of alpha = e_i
  std::vector<std::size_t> unit_index;
};

// with `basis`, the matrices are written in the columns of that basis (P^-1 X P)
MonomialChart monomial_chart(const ElabLattice& L, const ModuleRep& M, std::size_t member,
                             const FMatrix* basis = nullptr);

}  // namespace pib
