#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ffield/fmatrix.hpp"
#include "grouplat/group.hpp"

namespace pib {

class ModuleRep;
using ModulePtr = std::shared_ptr<const ModuleRep>;

// finite dimensional left kG-module over F_p given by generator matrices
class ModuleRep {
 public:
  // one matrix per group generator; validated against the whole table
  static ModulePtr load(GroupPtr G, unsigned p, std::vector<FMatrix> gens, std::string name = "module");

  static ModulePtr trivial(GroupPtr G, unsigned p);
  static ModulePtr regular(GroupPtr G, unsigned p);
  // defining matrices of a matrix group
  static ModulePtr natural(GroupPtr G);
  // m-th symmetric power of the natural module
  static ModulePtr symmetric_power(GroupPtr G, unsigned m);
  static ModulePtr direct_sum(const ModuleRep& A, const ModuleRep& B);
  // invariant subspace spanned by the rows of W, and the quotient by it
  static ModulePtr submodule(const ModuleRep& M, FMatrix W, std::string name = "sub");
  static ModulePtr quotient(const ModuleRep& M, FMatrix W, std::string name = "quot");
  // kG / J^k for the augmentation ideal J of kG
  static ModulePtr radical_quotient(GroupPtr G, unsigned p, unsigned k);
  // kG / sum_x kG(x - e)
  static ModulePtr cyclic_quotient(GroupPtr G, unsigned p, const std::vector<Elt>& xs);
  // restriction along the inclusion of the sorted element list H; S, if given, is
  // the table built by group().subgroup(H)
  static ModulePtr restrict_to(const ModuleRep& M, const std::vector<Elt>& H, GroupPtr S = nullptr);

  const GroupTable& group() const { return *G_; }
  const GroupPtr& group_ptr() const { return G_; }
  unsigned prime() const { return p_; }
  std::size_t dim() const { return m_; }
  const std::string& name() const { return name_; }
  const FieldPtr& field() const { return F_; }
  const std::vector<FMatrix>& generator_matrices() const { return gens_; }

  // matrix of g; memoized, safe to call concurrently
  const FMatrix& rho(Elt g) const;

  ModuleRep(GroupPtr G, unsigned p, std::vector<FMatrix> gens, std::string name);

 private:
  void validate() const;

  GroupPtr G_;
  unsigned p_;
  FieldPtr F_;
  std::size_t m_;
  std::string name_;
  std::vector<FMatrix> gens_;
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<FMatrix>> memo_;
};

// rows spanning J^j (j >= 1) of kG restricted to the listed elements (which must
// form a subgroup), in coordinates indexed by position in `elems`; row reduced
std::vector<FMatrix> augmentation_powers(const GroupTable& G, const std::vector<Elt>& elems, unsigned p,
                                         unsigned jmax);

}  // namespace pib
