#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace pib {

using Elt = std::uint32_t;

struct GroupOptions {
  std::size_t order_cap = 50000;
};

// Finite group with elements 0..n-1, 0 the identity. Every element other than
// the identity is reached as parent(g) * generator(g).
class GroupTable {
 public:
  enum class Kind { Table, Permutation, Matrix, Tuple };

  // closure of generators; `combine` is the product on keys
  static std::shared_ptr<const GroupTable> from_generators(Kind kind, std::vector<std::vector<int>> gens,
                                                           unsigned modulus, unsigned matrix_dim,
                                                           std::string name, const GroupOptions& opt = {});
  static std::shared_ptr<const GroupTable> from_table(const std::vector<std::vector<std::uint32_t>>& table,
                                                      std::vector<Elt> generators, std::string name,
                                                      const GroupOptions& opt = {});

  static std::shared_ptr<const GroupTable> elementary_abelian(unsigned p, unsigned r);
  static std::shared_ptr<const GroupTable> heisenberg(unsigned p);
  static std::shared_ptr<const GroupTable> klein4();
  static std::shared_ptr<const GroupTable> cyclic(unsigned n);
  static std::shared_ptr<const GroupTable> dihedral(unsigned n);
  static std::shared_ptr<const GroupTable> alternating(unsigned n);
  static std::shared_ptr<const GroupTable> symmetric(unsigned n);
  static std::shared_ptr<const GroupTable> permutations(unsigned degree, std::vector<std::vector<int>> gens,
                                                        const GroupOptions& opt = {});
  static std::shared_ptr<const GroupTable> matrices(unsigned n, unsigned p, std::vector<std::vector<int>> gens,
                                                    const GroupOptions& opt = {});

  std::size_t order() const { return n_; }
  const std::string& name() const { return name_; }
  Elt mul(Elt a, Elt b) const;
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt x, Elt g) const { return mul(mul(x, g), inv_[x]); }  // x g x^-1
  unsigned elem_order(Elt a) const { return ord_[a]; }
  bool commute(Elt a, Elt b) const { return mul(a, b) == mul(b, a); }
  const std::vector<Elt>& generators() const { return gens_; }
  Elt parent(Elt g) const { return parent_[g]; }
  // index into generators(); meaningless for the identity
  unsigned parent_gen(Elt g) const { return pgen_[g]; }

  bool has_matrices() const { return kind_ == Kind::Matrix; }
  unsigned matrix_dim() const { return mdim_; }
  unsigned matrix_prime() const { return modulus_; }
  // row-major entries in 0..p-1
  const std::vector<int>& key(Elt g) const { return keys_[g]; }
  Kind kind() const { return kind_; }

  // the subgroup on the given sorted element list, re-indexed in that order
  std::shared_ptr<const GroupTable> subgroup(const std::vector<Elt>& elems) const;

 private:
  GroupTable() = default;
  std::vector<int> combine(const std::vector<int>& a, const std::vector<int>& b) const;
  void finish(const GroupOptions& opt);

  Kind kind_ = Kind::Table;
  std::string name_;
  std::size_t n_ = 0;
  unsigned modulus_ = 0, mdim_ = 0;
  std::vector<std::vector<int>> keys_;
  std::unordered_map<std::string, Elt> lookup_;
  std::vector<Elt> table_;  // n*n when small
  std::vector<Elt> inv_;
  std::vector<unsigned> ord_;
  std::vector<Elt> gens_, parent_;
  std::vector<unsigned> pgen_;
};

using GroupPtr = std::shared_ptr<const GroupTable>;

}  // namespace pib
