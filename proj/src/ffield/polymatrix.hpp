#pragma once

#include <optional>
#include <vector>

#include "ffield/fmatrix.hpp"
#include "ffield/poly.hpp"

namespace pib {

class PolyMatrix {
 public:
  PolyMatrix() = default;
  PolyMatrix(RingPtr r, size_t rows, size_t cols);
  // constant matrix from F_p entries
  static PolyMatrix from_constant(RingPtr r, const FMatrix& m);
  static PolyMatrix identity(RingPtr r, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const RingPtr& ring() const { return ring_; }
  MultiPoly& at(size_t i, size_t j) { return e_[i * cols_ + j]; }
  const MultiPoly& at(size_t i, size_t j) const { return e_[i * cols_ + j]; }
  std::optional<int> degree_tag() const { return deg_; }
  void set_degree_tag(std::optional<int> d) { deg_ = d; }
  // verifies the homogeneity tag against the entries
  bool tag_consistent() const;

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix power(unsigned e) const;
  PolyMatrix scaled_by(const MultiPoly& f) const;
  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const;
  bool operator!=(const PolyMatrix& o) const { return !(*this == o); }

  FMatrix evaluate(const FieldPtr& F, const std::vector<GaloisField::Elem>& pt) const;
  PolyMatrix substitute(const std::vector<MultiPoly>& images, const RingPtr& target) const;
  PolyMatrix stretch(unsigned k) const;
  PolyMatrix conjugated(const FMatrix& a, const FMatrix& a_inv) const;
  size_t max_terms() const;

 private:
  RingPtr ring_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<MultiPoly> e_;
  std::optional<int> deg_;
};

// rank over the fraction field, fraction-free elimination
size_t generic_rank(const PolyMatrix& m);

// Pivots on entries that are nonzero constants until none remain. Returns the
// number k of pivots; A becomes the Schur complement, so that
// rank A(pt) = k + rank S(pt) at every point. With col_priority, pivots in
// higher-priority columns go first.
size_t unit_eliminate(PolyMatrix& A, const std::vector<int>* col_priority = nullptr);

// drops rows and columns that are identically zero
PolyMatrix trim_zero(const PolyMatrix& A);

// determinant by fraction-free elimination
MultiPoly determinant(std::vector<std::vector<MultiPoly>> a, const RingPtr& ring);

}  // namespace pib
