#pragma once

#include <cstddef>
#include <vector>

#include "ffield/poly.hpp"

namespace pib {

struct GroebnerLimits {
  unsigned max_degree = 40;
  std::size_t max_pairs = 200000;
};

// reduced, monic, sorted ascending by leading monomial
std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens, const GroebnerLimits& lim = {});
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis);
bool ideal_is_unit(const std::vector<MultiPoly>& gens, const GroebnerLimits& lim = {});
// f in sqrt(gens), by the Rabinowitsch trick
bool radical_membership(const MultiPoly& f, const std::vector<MultiPoly>& gens, const GroebnerLimits& lim = {});

// keeps a linearly independent subset spanning the same F_p-space (row reduction on coefficients)
std::vector<MultiPoly> linear_basis(const std::vector<MultiPoly>& polys);

}  // namespace pib
