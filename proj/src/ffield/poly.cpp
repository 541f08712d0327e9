#include "ffield/poly.hpp"

#include <algorithm>
#include <map>

#include "ffield/errors.hpp"

namespace pib {

bool Monomial::divides(const Monomial& o) const {
  if (deg > o.deg) return false;
  for (unsigned i = 0; i < kMaxVars; ++i)
    if (e[i] > o.e[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  for (unsigned i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(e[i]) + o.e[i];
    if (s > 255) throw ResourceLimit("monomial exponent overflow");
    r.e[i] = static_cast<std::uint8_t>(s);
  }
  r.deg = static_cast<std::uint16_t>(deg + o.deg);
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r;
  for (unsigned i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<std::uint8_t>(e[i] - o.e[i]);
  r.deg = static_cast<std::uint16_t>(deg - o.deg);
  return r;
}

Monomial Monomial::lcm(const Monomial& o) const {
  Monomial r;
  unsigned d = 0;
  for (unsigned i = 0; i < kMaxVars; ++i) {
    r.e[i] = std::max(e[i], o.e[i]);
    d += r.e[i];
  }
  r.deg = static_cast<std::uint16_t>(d);
  return r;
}

bool Monomial::coprime(const Monomial& o) const {
  for (unsigned i = 0; i < kMaxVars; ++i)
    if (e[i] && o.e[i]) return false;
  return true;
}

Monomial Monomial::var(unsigned i, unsigned power) {
  if (i >= kMaxVars) throw ResourceLimit("too many polynomial variables");
  if (power > 255) throw ResourceLimit("monomial exponent overflow");
  Monomial m;
  m.e[i] = static_cast<std::uint8_t>(power);
  m.deg = static_cast<std::uint16_t>(power);
  return m;
}

int grevlex_cmp(const Monomial& a, const Monomial& b) {
  if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
  for (int i = kMaxVars - 1; i >= 0; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

namespace {
struct TermGreater {
  bool operator()(const MultiPoly::Term& x, const MultiPoly::Term& y) const {
    return grevlex_cmp(x.first, y.first) > 0;
  }
};
}  // namespace

PolyRing::PolyRing(unsigned p, std::vector<std::string> names) : p_(p), names_(std::move(names)) {
  if (!is_prime(p) || p > 31) throw InvalidInput("polynomial ring characteristic must be a prime <= 31");
  if (names_.size() > kMaxVars) throw ResourceLimit("too many polynomial variables");
  inv_.assign(p, 0);
  for (unsigned a = 1; a < p; ++a)
    for (unsigned b = 1; b < p; ++b)
      if (a * b % p == 1) inv_[a] = b;
}

std::shared_ptr<const PolyRing> PolyRing::make(unsigned p, std::vector<std::string> names) {
  return std::make_shared<const PolyRing>(p, std::move(names));
}

MultiPoly MultiPoly::constant(RingPtr r, long long c) {
  return term(std::move(r), Monomial{}, c);
}

MultiPoly MultiPoly::variable(RingPtr r, unsigned i) {
  if (i >= r->nvars()) throw InvalidInput("variable index out of range");
  return term(std::move(r), Monomial::var(i), 1);
}

MultiPoly MultiPoly::term(RingPtr r, const Monomial& m, long long c) {
  MultiPoly f(std::move(r));
  long long p = f.ring_->p();
  long long v = ((c % p) + p) % p;
  if (v) f.t_.emplace_back(m, static_cast<Coeff>(v));
  return f;
}

MultiPoly MultiPoly::from_terms(RingPtr r, std::vector<Term> terms) {
  MultiPoly f(std::move(r));
  unsigned p = f.ring_->p();
  std::sort(terms.begin(), terms.end(), TermGreater{});
  for (auto& t : terms) {
    t.second %= p;
    if (!f.t_.empty() && f.t_.back().first == t.first) {
      f.t_.back().second = (f.t_.back().second + t.second) % p;
      if (!f.t_.back().second) f.t_.pop_back();
    } else if (t.second) {
      f.t_.push_back(t);
    }
  }
  return f;
}

void MultiPoly::check_ring(const MultiPoly& o) const {
  if (ring_ == o.ring_) return;
  if (!ring_ || !o.ring_ || !ring_->same(*o.ring_)) throw InvalidInput("polynomials from different rings");
}

MultiPoly::Coeff MultiPoly::constant_term() const {
  if (!t_.empty() && t_.back().first.deg == 0) return t_.back().second;
  return 0;
}

int MultiPoly::degree() const {
  if (t_.empty()) return -1;
  return t_.front().first.deg;  // grevlex is degree-compatible
}

bool MultiPoly::is_homogeneous(int d) const {
  for (auto& t : t_)
    if (t.first.deg != d) return false;
  return true;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return o;
  check_ring(o);
  return sub_mul(o, Monomial{}, ring_->p() - 1);
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (o.t_.empty()) return *this;
  if (t_.empty()) return -o;
  check_ring(o);
  return sub_mul(o, Monomial{}, 1);
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(ring_);
  r.t_ = t_;
  for (auto& t : r.t_) t.second = ring_->p() - t.second;
  return r;
}

MultiPoly MultiPoly::sub_mul(const MultiPoly& g, const Monomial& m, Coeff c) const {
  const RingPtr& R = ring_ ? ring_ : g.ring_;
  MultiPoly r(R);
  unsigned p = R->p();
  c %= p;
  if (c == 0 || g.t_.empty()) {
    r.t_ = t_;
    return r;
  }
  Coeff nc = p - c;
  r.t_.reserve(t_.size() + g.t_.size());
  size_t i = 0, j = 0;
  bool shift = m.deg != 0;
  while (i < t_.size() || j < g.t_.size()) {
    if (j == g.t_.size()) {
      r.t_.push_back(t_[i++]);
      continue;
    }
    Monomial gm = shift ? g.t_[j].first * m : g.t_[j].first;
    if (i == t_.size()) {
      r.t_.emplace_back(gm, g.t_[j].second * nc % p);
      ++j;
      continue;
    }
    int cmp = grevlex_cmp(t_[i].first, gm);
    if (cmp > 0) {
      r.t_.push_back(t_[i++]);
    } else if (cmp < 0) {
      r.t_.emplace_back(gm, g.t_[j].second * nc % p);
      ++j;
    } else {
      Coeff v = (t_[i].second + g.t_[j].second * nc) % p;
      if (v) r.t_.emplace_back(gm, v);
      ++i;
      ++j;
    }
  }
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (t_.empty() || o.t_.empty()) return MultiPoly(ring_ ? ring_ : o.ring_);
  check_ring(o);
  if (t_.size() == 1) return o.mul_term(t_[0].first, t_[0].second);
  if (o.t_.size() == 1) return mul_term(o.t_[0].first, o.t_[0].second);
  std::vector<Term> prod;
  prod.reserve(t_.size() * o.t_.size());
  unsigned p = ring_->p();
  for (auto& a : t_)
    for (auto& b : o.t_) prod.emplace_back(a.first * b.first, a.second * b.second % p);
  return from_terms(ring_, std::move(prod));
}

MultiPoly MultiPoly::scaled(long long c) const {
  unsigned p = ring_->p();
  long long v = ((c % (long long)p) + p) % p;
  MultiPoly r(ring_);
  if (!v) return r;
  r.t_ = t_;
  for (auto& t : r.t_) t.second = static_cast<Coeff>(t.second * v % p);
  return r;
}

MultiPoly MultiPoly::mul_term(const Monomial& m, Coeff c) const {
  unsigned p = ring_->p();
  MultiPoly r(ring_);
  c %= p;
  if (!c) return r;
  r.t_.reserve(t_.size());
  for (auto& t : t_) r.t_.emplace_back(t.first * m, t.second * c % p);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(ring_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

MultiPoly MultiPoly::monic() const {
  if (t_.empty()) return *this;
  return scaled(ring_->inv(lc()));
}

bool MultiPoly::operator==(const MultiPoly& o) const {
  if (t_.empty() && o.t_.empty()) return true;
  if (t_.size() != o.t_.size()) return false;
  check_ring(o);
  for (size_t i = 0; i < t_.size(); ++i)
    if (t_[i].first != o.t_[i].first || t_[i].second != o.t_[i].second) return false;
  return true;
}

GaloisField::Elem MultiPoly::evaluate(const GaloisField& F, const std::vector<GaloisField::Elem>& pt) const {
  if (t_.empty()) return 0;
  unsigned n = ring_->nvars();
  if (pt.size() != n) throw InvalidInput("evaluation point has wrong length");
  GaloisField::Elem acc = 0;
  for (auto& t : t_) {
    GaloisField::Elem v = F.from_int(t.second);
    for (unsigned i = 0; i < n && v; ++i)
      if (t.first.e[i]) v = F.mul(v, F.pow(pt[i], t.first.e[i]));
    acc = F.add(acc, v);
  }
  return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& images, const RingPtr& target) const {
  unsigned n = ring_->nvars();
  if (images.size() != n) throw InvalidInput("substitution has wrong arity");
  MultiPoly acc(target);
  // cache powers per variable
  std::vector<std::vector<MultiPoly>> pw(n);
  for (auto& t : t_) {
    MultiPoly v = constant(target, t.second);
    for (unsigned i = 0; i < n && !v.is_zero(); ++i) {
      unsigned k = t.first.e[i];
      if (!k) continue;
      auto& cache = pw[i];
      if (cache.empty()) cache.push_back(constant(target, 1));
      while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
      v = v * cache[k];
    }
    acc = acc + v;
  }
  return acc;
}

MultiPoly MultiPoly::stretch(unsigned k) const {
  MultiPoly r(ring_);
  r.t_.reserve(t_.size());
  for (auto& t : t_) {
    Monomial m;
    unsigned d = 0;
    for (unsigned i = 0; i < kMaxVars; ++i) {
      unsigned v = t.first.e[i] * k;
      if (v > 255) throw ResourceLimit("monomial exponent overflow");
      m.e[i] = static_cast<std::uint8_t>(v);
      d += v;
    }
    m.deg = static_cast<std::uint16_t>(d);
    r.t_.emplace_back(m, t.second);
  }
  // order is preserved by uniform scaling of exponents
  return r;
}

MultiPoly MultiPoly::divide_exact(const MultiPoly& b) const {
  if (b.is_zero()) throw InvalidInput("division by zero polynomial");
  check_ring(b);
  MultiPoly rem = *this, q(ring_);
  std::vector<Term> qt;
  unsigned p = ring_->p();
  Coeff ib = ring_->inv(b.lc());
  while (!rem.is_zero()) {
    if (!b.lm().divides(rem.lm())) throw Error("inexact polynomial division");
    Monomial m = rem.lm() / b.lm();
    Coeff c = rem.lc() * ib % p;
    qt.emplace_back(m, c);
    rem = rem.sub_mul(b, m, c);
  }
  return from_terms(ring_, std::move(qt));
}

std::string MultiPoly::to_string() const {
  if (t_.empty()) return "0";
  std::string s;
  for (size_t k = 0; k < t_.size(); ++k) {
    auto& t = t_[k];
    if (k) s += " + ";
    bool first = true;
    if (t.second != 1 || t.first.deg == 0) {
      s += std::to_string(t.second);
      first = false;
    }
    for (unsigned i = 0; i < ring_->nvars(); ++i) {
      if (!t.first.e[i]) continue;
      if (!first) s += "*";
      s += ring_->names()[i];
      if (t.first.e[i] > 1) s += "^" + std::to_string(t.first.e[i]);
      first = false;
    }
  }
  return s;
}

}  // namespace pib
