#include "ffield/polymatrix.hpp"

#include <algorithm>
#include <utility>

#include "ffield/errors.hpp"

namespace pib {

PolyMatrix::PolyMatrix(RingPtr r, size_t rows, size_t cols)
    : ring_(std::move(r)), rows_(rows), cols_(cols), e_(rows * cols, MultiPoly(ring_)) {}

PolyMatrix PolyMatrix::from_constant(RingPtr r, const FMatrix& m) {
  PolyMatrix out(r, m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) {
      if (!m.field()->in_prime_field(m.at(i, j))) throw InvalidInput("constant matrix entry outside F_p");
      out.at(i, j) = MultiPoly::constant(r, static_cast<long long>(m.at(i, j)));
    }
  out.deg_ = 0;
  return out;
}

PolyMatrix PolyMatrix::identity(RingPtr r, size_t n) {
  PolyMatrix out(r, n, n);
  for (size_t i = 0; i < n; ++i) out.at(i, i) = MultiPoly::constant(r, 1);
  out.deg_ = 0;
  return out;
}

bool PolyMatrix::tag_consistent() const {
  if (!deg_) return true;
  for (auto& f : e_)
    if (!f.is_homogeneous(*deg_)) return false;
  return true;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
  if (cols_ != o.rows_) throw InvalidInput("polynomial matrix shape mismatch");
  PolyMatrix r(ring_, rows_, o.cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t k = 0; k < cols_; ++k) {
      const MultiPoly& a = at(i, k);
      if (a.is_zero()) continue;
      for (size_t j = 0; j < o.cols_; ++j) {
        const MultiPoly& b = o.at(k, j);
        if (!b.is_zero()) r.at(i, j) = r.at(i, j) + a * b;
      }
    }
  if (deg_ && o.deg_) r.deg_ = *deg_ + *o.deg_;
  return r;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("polynomial matrix shape mismatch");
  PolyMatrix r(ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  if (deg_ == o.deg_) r.deg_ = deg_;
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidInput("polynomial matrix shape mismatch");
  PolyMatrix r(ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] - o.e_[i];
  if (deg_ == o.deg_) r.deg_ = deg_;
  return r;
}

PolyMatrix PolyMatrix::power(unsigned e) const {
  if (rows_ != cols_) throw InvalidInput("power of a non-square matrix");
  if (e == 0) return identity(ring_, rows_);
  PolyMatrix r = *this;
  for (unsigned i = 1; i < e; ++i) r = r * *this;
  return r;
}

PolyMatrix PolyMatrix::scaled_by(const MultiPoly& f) const {
  PolyMatrix r(ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] * f;
  if (deg_ && f.degree() >= 0 && f.is_homogeneous(f.degree())) r.deg_ = *deg_ + f.degree();
  return r;
}

bool PolyMatrix::is_zero() const {
  for (auto& f : e_)
    if (!f.is_zero()) return false;
  return true;
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (size_t i = 0; i < e_.size(); ++i)
    if (e_[i] != o.e_[i]) return false;
  return true;
}

FMatrix PolyMatrix::evaluate(const FieldPtr& F, const std::vector<GaloisField::Elem>& pt) const {
  FMatrix m(F, rows_, cols_);
  for (size_t i = 0; i < rows_; ++i)
    for (size_t j = 0; j < cols_; ++j) m.at(i, j) = at(i, j).evaluate(*F, pt);
  return m;
}

PolyMatrix PolyMatrix::substitute(const std::vector<MultiPoly>& images, const RingPtr& target) const {
  PolyMatrix r(target, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].substitute(images, target);
  return r;
}

PolyMatrix PolyMatrix::stretch(unsigned k) const {
  PolyMatrix r(ring_, rows_, cols_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].stretch(k);
  if (deg_) r.deg_ = *deg_ * static_cast<int>(k);
  return r;
}

PolyMatrix PolyMatrix::conjugated(const FMatrix& a, const FMatrix& a_inv) const {
  return from_constant(ring_, a) * *this * from_constant(ring_, a_inv);
}

size_t PolyMatrix::max_terms() const {
  size_t m = 0;
  for (auto& f : e_) m = std::max(m, f.size());
  return m;
}

size_t generic_rank(const PolyMatrix& in) {
  size_t R = in.rows(), C = in.cols();
  if (!R || !C) return 0;
  std::vector<std::vector<MultiPoly>> a(R, std::vector<MultiPoly>(C));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) a[i][j] = in.at(i, j);
  MultiPoly prev = MultiPoly::constant(in.ring(), 1);
  size_t rank = 0;
  for (size_t c = 0; c < C && rank < R; ++c) {
    // sparsest pivot keeps intermediate minors small
    size_t best = R;
    for (size_t i = rank; i < R; ++i) {
      if (a[i][c].is_zero()) continue;
      if (best == R || a[i][c].size() < a[best][c].size() ||
          (a[i][c].size() == a[best][c].size() && a[i][c].degree() < a[best][c].degree()))
        best = i;
    }
    if (best == R) continue;
    std::swap(a[best], a[rank]);
    const MultiPoly piv = a[rank][c];
    for (size_t i = rank + 1; i < R; ++i) {
      const MultiPoly lead = a[i][c];
      for (size_t j = c + 1; j < C; ++j) {
        MultiPoly v = piv * a[i][j];
        if (!lead.is_zero() && !a[rank][j].is_zero()) v = v - lead * a[rank][j];
        a[i][j] = prev.is_constant() ? v.scaled(in.ring()->inv(prev.constant_term())) : v.divide_exact(prev);
      }
      a[i][c] = MultiPoly(in.ring());
    }
    prev = piv;
    ++rank;
  }
  return rank;
}

size_t unit_eliminate(PolyMatrix& A, const std::vector<int>* col_priority) {
  size_t R = A.rows(), C = A.cols();
  const RingPtr& ring = A.ring();
  std::vector<std::vector<MultiPoly>> a(R, std::vector<MultiPoly>(C));
  for (size_t i = 0; i < R; ++i)
    for (size_t j = 0; j < C; ++j) a[i][j] = A.at(i, j);
  std::vector<bool> row_live(R, true), col_live(C, true);
  size_t k = 0;
  while (true) {
    // Markowitz choice among constant entries
    std::vector<size_t> rnz(R, 0), cnz(C, 0);
    for (size_t i = 0; i < R; ++i)
      if (row_live[i])
        for (size_t j = 0; j < C; ++j)
          if (col_live[j] && !a[i][j].is_zero()) ++rnz[i], ++cnz[j];
    size_t br = R, bc = C, best = 0;
    for (size_t i = 0; i < R; ++i) {
      if (!row_live[i]) continue;
      for (size_t j = 0; j < C; ++j) {
        if (!col_live[j] || a[i][j].is_zero() || !a[i][j].is_constant()) continue;
        size_t cost = (rnz[i] - 1) * (cnz[j] - 1);
        if (br == R) {
          br = i, bc = j, best = cost;
          continue;
        }
        int pj = col_priority ? (*col_priority)[j] : 0, pb = col_priority ? (*col_priority)[bc] : 0;
        if (pj > pb || (pj == pb && cost < best)) br = i, bc = j, best = cost;
      }
    }
    if (br == R) break;
    auto inv = ring->inv(a[br][bc].constant_term());
    for (size_t i = 0; i < R; ++i) {
      if (!row_live[i] || i == br || a[i][bc].is_zero()) continue;
      MultiPoly f = a[i][bc].scaled(inv);
      for (size_t j = 0; j < C; ++j)
        if (col_live[j] && j != bc && !a[br][j].is_zero()) a[i][j] = a[i][j] - f * a[br][j];
    }
    row_live[br] = false;
    col_live[bc] = false;
    ++k;
  }
  std::vector<size_t> rs, cs;
  for (size_t i = 0; i < R; ++i)
    if (row_live[i]) rs.push_back(i);
  for (size_t j = 0; j < C; ++j)
    if (col_live[j]) cs.push_back(j);
  PolyMatrix S(ring, rs.size(), cs.size());
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j) S.at(i, j) = a[rs[i]][cs[j]];
  A = S;
  return k;
}

PolyMatrix trim_zero(const PolyMatrix& A) {
  std::vector<size_t> rs, cs;
  for (size_t i = 0; i < A.rows(); ++i)
    for (size_t j = 0; j < A.cols(); ++j)
      if (!A.at(i, j).is_zero()) {
        rs.push_back(i);
        break;
      }
  for (size_t j = 0; j < A.cols(); ++j)
    for (size_t i = 0; i < A.rows(); ++i)
      if (!A.at(i, j).is_zero()) {
        cs.push_back(j);
        break;
      }
  PolyMatrix S(A.ring(), rs.size(), cs.size());
  for (size_t i = 0; i < rs.size(); ++i)
    for (size_t j = 0; j < cs.size(); ++j) S.at(i, j) = A.at(rs[i], cs[j]);
  return S;
}

MultiPoly determinant(std::vector<std::vector<MultiPoly>> a, const RingPtr& ring) {
  size_t n = a.size();
  if (n == 0) return MultiPoly::constant(ring, 1);
  MultiPoly prev = MultiPoly::constant(ring, 1);
  bool neg = false;
  for (size_t c = 0; c + 1 < n; ++c) {
    size_t best = n;
    for (size_t i = c; i < n; ++i)
      if (!a[i][c].is_zero() && (best == n || a[i][c].size() < a[best][c].size())) best = i;
    if (best == n) return MultiPoly(ring);
    if (best != c) {
      std::swap(a[best], a[c]);
      neg = !neg;
    }
    for (size_t i = c + 1; i < n; ++i) {
      for (size_t j = c + 1; j < n; ++j) {
        MultiPoly v = a[c][c] * a[i][j] - a[i][c] * a[c][j];
        a[i][j] = prev.is_constant() ? v.scaled(ring->inv(prev.constant_term())) : v.divide_exact(prev);
      }
      a[i][c] = MultiPoly(ring);
    }
    prev = a[c][c];
  }
  return neg ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace pib
