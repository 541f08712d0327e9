#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ffield/galois_field.hpp"

namespace pib {

constexpr unsigned kMaxVars = 32;

struct Monomial {
  std::array<std::uint8_t, kMaxVars> e{};
  std::uint16_t deg = 0;

  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }
  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  Monomial operator/(const Monomial& o) const;
  Monomial lcm(const Monomial& o) const;
  bool coprime(const Monomial& o) const;
  static Monomial var(unsigned i, unsigned power = 1);
};

// graded reverse lexicographic: >0 when a > b
int grevlex_cmp(const Monomial& a, const Monomial& b);

class PolyRing {
 public:
  PolyRing(unsigned p, std::vector<std::string> names);
  static std::shared_ptr<const PolyRing> make(unsigned p, std::vector<std::string> names);

  unsigned p() const { return p_; }
  unsigned nvars() const { return static_cast<unsigned>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  unsigned inv(unsigned c) const { return inv_[c]; }
  bool same(const PolyRing& o) const { return p_ == o.p_ && names_ == o.names_; }

 private:
  unsigned p_;
  std::vector<std::string> names_;
  std::vector<unsigned> inv_;
};

using RingPtr = std::shared_ptr<const PolyRing>;

class MultiPoly {
 public:
  using Coeff = std::uint32_t;
  using Term = std::pair<Monomial, Coeff>;

  MultiPoly() = default;
  explicit MultiPoly(RingPtr r) : ring_(std::move(r)) {}
  static MultiPoly constant(RingPtr r, long long c);
  static MultiPoly variable(RingPtr r, unsigned i);
  static MultiPoly term(RingPtr r, const Monomial& m, long long c);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return t_; }
  size_t size() const { return t_.size(); }
  bool is_zero() const { return t_.empty(); }
  bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_[0].first.deg == 0); }
  Coeff constant_term() const;
  int degree() const;  // -1 for zero
  bool is_homogeneous(int d) const;
  const Monomial& lm() const { return t_.front().first; }
  Coeff lc() const { return t_.front().second; }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly scaled(long long c) const;
  MultiPoly mul_term(const Monomial& m, Coeff c) const;
  // this - c*m*g, computed by merging
  MultiPoly sub_mul(const MultiPoly& g, const Monomial& m, Coeff c) const;
  MultiPoly pow(unsigned e) const;
  MultiPoly monic() const;
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  GaloisField::Elem evaluate(const GaloisField& F, const std::vector<GaloisField::Elem>& pt) const;
  // images[i] replaces variable i; all images live in the target ring
  MultiPoly substitute(const std::vector<MultiPoly>& images, const RingPtr& target) const;
  // exponents multiplied by k (x -> x^k for every variable)
  MultiPoly stretch(unsigned k) const;
  // exact quotient; throws if b does not divide
  MultiPoly divide_exact(const MultiPoly& b) const;
  std::string to_string() const;

  // builds from an unsorted term list, combining duplicates
  static MultiPoly from_terms(RingPtr r, std::vector<Term> terms);

 private:
  void check_ring(const MultiPoly& o) const;

  RingPtr ring_;
  std::vector<Term> t_;  // sorted decreasing, nonzero coefficients
};

}  // namespace pib
