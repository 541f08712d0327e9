#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "grouplat/group.hpp"

namespace pib {

struct Subgroup {
  std::vector<Elt> elements;  // sorted, contains 0
  unsigned rank = 0;
  std::vector<Elt> basis;     // g_1..g_r
  // non-identity elements in J_E basis order (lex in exponent vectors)
  std::vector<Elt> jbasis;
  std::vector<std::vector<unsigned>> exponents;  // exponents[k] for jbasis[k]

  bool contains(Elt g) const;
  // position of g in jbasis, or npos
  std::size_t jindex(Elt g) const;
  std::size_t order() const { return elements.size(); }
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// elementary abelian subgroup structure on a sorted element list with a chosen basis
Subgroup make_elementary(const GroupTable& G, unsigned p, std::vector<Elt> elements, std::vector<Elt> basis = {});

struct ConjugationMap {
  std::size_t target;                     // lattice index of x E x^-1
  std::vector<std::pair<Elt, Elt>> map;   // g -> x g x^-1
};

class ElabLattice {
 public:
  ElabLattice(GroupPtr G, unsigned p);

  const GroupTable& group() const { return *G_; }
  const GroupPtr& group_ptr() const { return G_; }
  unsigned prime() const { return p_; }
  std::size_t size() const { return members_.size(); }
  const Subgroup& member(std::size_t i) const { return members_[i]; }
  const std::vector<Subgroup>& members() const { return members_; }
  const std::vector<std::size_t>& maximals() const { return maximals_; }
  // Hasse edges (smaller, larger)
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const { return covers_; }
  bool includes(std::size_t big, std::size_t small) const;
  // intersection of two members; nullopt when trivial
  std::optional<std::size_t> intersection(std::size_t a, std::size_t b) const;
  std::optional<std::size_t> find(const std::vector<Elt>& sorted_elements) const;
  std::size_t conjugate_index(std::size_t member, Elt x) const { return conj_[member][x]; }
  ConjugationMap conjugation_map(std::size_t member, Elt x) const;
  // first maximal member containing member i
  std::size_t containing_maximal(std::size_t i) const;

 private:
  GroupPtr G_;
  unsigned p_;
  std::vector<Subgroup> members_;
  std::vector<std::size_t> maximals_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::map<std::vector<Elt>, std::size_t> index_;
  std::vector<std::vector<std::size_t>> conj_;
};

}  // namespace pib
