#include "ffield/fmatrix.hpp"

#include <algorithm>
#include <utility>

#include "ffield/errors.hpp"

namespace pib {

FMatrix::FMatrix(FieldPtr f, size_t rows, size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FMatrix FMatrix::identity(FieldPtr f, size_t n) {
  FMatrix m(std::move(f), n, n);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FMatrix FMatrix::operator*(const FMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidInput("matrix shape mismatch in product");
  FMatrix r(f_, rows_, o.cols_);
  const GaloisField& F = *f_;
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      Elem x = at(i, k);
      if (!x) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        Elem y = o.at(k, j);
        if (y) r.at(i, j) = F.add(r.at(i, j), F.mul(x, y));
      }
    }
  return r;
}

FMatrix FMatrix::operator+(const FMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch in sum");
  FMatrix r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

FMatrix FMatrix::operator-(const FMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("matrix shape mismatch in difference");
  FMatrix r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
  return r;
}

FMatrix FMatrix::scaled(Elem c) const {
  FMatrix r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], c);
  return r;
}

FMatrix FMatrix::power(unsigned e) const {
  FMatrix r = identity(f_, rows_);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

FMatrix FMatrix::transpose() const {
  FMatrix r(f_, cols_, rows_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
  return r;
}

FMatrix FMatrix::frobenius(unsigned e) const {
  FMatrix r(f_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->frobenius(a_[i], e);
  return r;
}

FMatrix FMatrix::lift(FieldPtr g) const {
  FMatrix r(g, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) {
    if (!f_->in_prime_field(a_[i])) throw InvalidInput("lift of a non-prime-field entry");
    r.a_[i] = a_[i];
  }
  return r;
}

bool FMatrix::is_zero() const {
  for (auto x : a_)
    if (x) return false;
  return true;
}

bool FMatrix::operator==(const FMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

namespace {

// row echelon in place; returns pivot columns
std::vector<size_t> echelon(FMatrix& m, bool reduced) {
  const GaloisField& F = *m.field();
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t s = r;
    while (s < m.rows() && m.at(s, c) == 0) ++s;
    if (s == m.rows()) continue;
    if (s != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m.at(s, j), m.at(r, j));
    auto iv = F.inv(m.at(r, c));
    for (size_t j = c; j < m.cols(); ++j) m.at(r, j) = F.mul(m.at(r, j), iv);
    for (size_t i = reduced ? 0 : r + 1; i < m.rows(); ++i) {
      if (i == r) continue;
      auto x = m.at(i, c);
      if (!x) continue;
      auto nx = F.neg(x);
      for (size_t j = c; j < m.cols(); ++j) {
        auto y = m.at(r, j);
        if (y) m.at(i, j) = F.add(m.at(i, j), F.mul(nx, y));
      }
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

size_t FMatrix::rank() const {
  FMatrix m = *this;
  return echelon(m, false).size();
}

FMatrix FMatrix::nullspace() const {
  FMatrix m = *this;
  auto piv = echelon(m, true);
  std::vector<bool> is_piv(cols_, false);
  for (auto c : piv) is_piv[c] = true;
  size_t nfree = cols_ - piv.size();
  FMatrix out(f_, cols_, nfree);
  size_t k = 0;
  for (size_t c = 0; c < cols_; ++c) {
    if (is_piv[c]) continue;
    out.at(c, k) = 1;
    for (size_t i = 0; i < piv.size(); ++i) out.at(piv[i], k) = f_->neg(m.at(i, c));
    ++k;
  }
  return out;
}

std::vector<size_t> FMatrix::row_reduce() {
  auto piv = echelon(*this, true);
  a_.resize(piv.size() * cols_);
  rows_ = piv.size();
  return piv;
}

FMatrix FMatrix::row_block(size_t begin, size_t end) const {
  FMatrix r(f_, end - begin, cols_);
  std::copy(a_.begin() + begin * cols_, a_.begin() + end * cols_, r.a_.begin());
  return r;
}

FMatrix FMatrix::from_rows(FieldPtr f, const std::vector<std::vector<Elem>>& rows, size_t cols) {
  FMatrix m(std::move(f), rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InvalidInput("row has wrong length");
    std::copy(rows[i].begin(), rows[i].end(), m.a_.begin() + i * cols);
  }
  return m;
}

FMatrix FMatrix::inverse() const {
  if (rows_ != cols_) throw InvalidInput("inverse of a non-square matrix");
  FMatrix aug(f_, rows_, 2 * cols_);
  for (size_t i = 0; i < rows_; ++i) {
    for (size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
    aug.at(i, cols_ + i) = 1;
  }
  auto piv = echelon(aug, true);
  if (piv.size() < rows_ || piv.back() >= cols_) throw InvalidInput("singular matrix");
  FMatrix r(f_, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) r.at(i, j) = aug.at(i, cols_ + j);
  return r;
}

}  // namespace pib
