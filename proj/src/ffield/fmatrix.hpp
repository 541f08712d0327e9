#pragma once

#include <cstddef>
#include <vector>

#include "ffield/galois_field.hpp"

namespace pib {

// dense matrix over F_{p^d}
class FMatrix {
 public:
  using Elem = GaloisField::Elem;

  FMatrix() = default;
  FMatrix(FieldPtr f, size_t rows, size_t cols);
  static FMatrix identity(FieldPtr f, size_t n);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  const FieldPtr& field() const { return f_; }
  Elem& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
  Elem at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

  FMatrix operator*(const FMatrix& o) const;
  FMatrix operator+(const FMatrix& o) const;
  FMatrix operator-(const FMatrix& o) const;
  FMatrix scaled(Elem c) const;
  FMatrix power(unsigned e) const;
  FMatrix transpose() const;
  // image of every entry under x -> x^{p^e}
  FMatrix frobenius(unsigned e) const;
  // same entries viewed in a larger field (entries must lie in F_p)
  FMatrix lift(FieldPtr g) const;
  bool is_zero() const;
  bool operator==(const FMatrix& o) const;
  bool operator!=(const FMatrix& o) const { return !(*this == o); }

  size_t rank() const;
  // basis of {v : A v = 0}, as columns of the result
  FMatrix nullspace() const;
  FMatrix inverse() const;
  // reduced row echelon form in place, zero rows dropped; returns pivot columns
  std::vector<size_t> row_reduce();
  // rows [begin, end)
  FMatrix row_block(size_t begin, size_t end) const;
  static FMatrix from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows, size_t cols);

 private:
  FieldPtr f_;
  size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

}  // namespace pib
