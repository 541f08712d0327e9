#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pib {

// F_{p^d}, p <= 31, d <= 8. Elements are encoded as integers: the base-p digits
// are the coefficients of the residue polynomial in X, lowest first.
class GaloisField {
 public:
  using Elem = std::uint64_t;

  static std::shared_ptr<const GaloisField> get(unsigned p, unsigned d = 1);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return d_; }
  Elem order() const { return q_; }
  // monic defining polynomial, coefficients low->high, size d+1
  const std::vector<unsigned>& modulus() const { return modulus_; }

  Elem add(Elem a, Elem b) const;
  Elem sub(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem frobenius(Elem a, unsigned e = 1) const;
  Elem from_int(long long v) const;
  // X, a generator of the multiplicative group
  Elem primitive() const { return d_ == 1 ? prime_root_ : p_; }
  bool in_prime_field(Elem a) const { return a < p_; }
  unsigned digit(Elem a, unsigned i) const;
  Elem from_digits(const std::vector<unsigned>& c) const;
  std::string to_string(Elem a) const;

  // small fields keep full tables; exposed for tight loops
  bool has_tables() const { return !add_tab_.empty(); }
  const std::uint16_t* add_table() const { return add_tab_.data(); }
  const std::uint16_t* mul_table() const { return mul_tab_.data(); }

  GaloisField(unsigned p, unsigned d);

 private:
  Elem poly_mul(Elem a, Elem b) const;

  unsigned p_, d_;
  Elem q_;
  Elem prime_root_ = 1;
  std::vector<unsigned> modulus_;
  std::vector<Elem> pw_;  // p^i
  std::vector<std::uint32_t> log_, exp_;
  std::vector<std::uint16_t> add_tab_, mul_tab_;
};

using FieldPtr = std::shared_ptr<const GaloisField>;

struct FieldElem {
  const GaloisField* f = nullptr;
  GaloisField::Elem v = 0;

  FieldElem operator+(FieldElem o) const { return {f, f->add(v, o.v)}; }
  FieldElem operator-(FieldElem o) const { return {f, f->sub(v, o.v)}; }
  FieldElem operator-() const { return {f, f->neg(v)}; }
  FieldElem operator*(FieldElem o) const { return {f, f->mul(v, o.v)}; }
  FieldElem operator/(FieldElem o) const { return {f, f->div(v, o.v)}; }
  bool operator==(FieldElem o) const { return v == o.v; }
  bool is_zero() const { return v == 0; }
};

bool is_prime(unsigned long long n);
std::vector<unsigned long long> prime_factors(unsigned long long n);

}  // namespace pib
