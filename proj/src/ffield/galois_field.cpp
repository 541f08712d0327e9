#include "ffield/galois_field.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "ffield/errors.hpp"

namespace pib {

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

std::vector<unsigned long long> prime_factors(unsigned long long n) {
  std::vector<unsigned long long> out;
  for (unsigned long long k = 2; k * k <= n; ++k) {
    if (n % k) continue;
    out.push_back(k);
    while (n % k == 0) n /= k;
  }
  if (n > 1) out.push_back(n);
  return out;
}

namespace {

using Poly = std::vector<unsigned>;  // low -> high

// a*b mod f over F_p, f monic of degree d; a, b of size d
Poly mulmod(const Poly& a, const Poly& b, const Poly& f, unsigned p) {
  size_t d = f.size() - 1;
  std::vector<unsigned> prod(2 * d, 0);
  for (size_t i = 0; i < d; ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  }
  for (size_t k = 2 * d - 1; k >= d; --k) {
    unsigned c = prod[k];
    if (!c) continue;
    for (size_t i = 0; i <= d; ++i) prod[k - d + i] = (prod[k - d + i] + (p - c) * f[i]) % p;
  }
  prod.resize(d);
  return prod;
}

Poly powmod_x(unsigned long long e, const Poly& f, unsigned p) {
  size_t d = f.size() - 1;
  Poly result(d, 0), base(d, 0);
  result[0] = 1;
  if (d == 1) {
    base[0] = (p - f[0]) % p;
  } else {
    base[1] = 1;
  }
  while (e) {
    if (e & 1) result = mulmod(result, base, f, p);
    base = mulmod(base, base, f, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) {
  if (a[0] != 1) return false;
  for (size_t i = 1; i < a.size(); ++i)
    if (a[i]) return false;
  return true;
}

// first monic primitive polynomial, coefficient vectors enumerated as base-p integers
Poly first_primitive(unsigned p, unsigned d) {
  unsigned long long q = 1;
  for (unsigned i = 0; i < d; ++i) q *= p;
  auto factors = prime_factors(q - 1);
  for (unsigned long long code = 1; code < q; ++code) {
    Poly f(d + 1, 0);
    unsigned long long c = code;
    for (unsigned i = 0; i < d; ++i) {
      f[i] = c % p;
      c /= p;
    }
    f[d] = 1;
    if (f[0] == 0) continue;
    if (!is_one(powmod_x(q - 1, f, p))) continue;
    bool ok = true;
    for (auto l : factors) {
      if (is_one(powmod_x((q - 1) / l, f, p))) {
        ok = false;
        break;
      }
    }
    if (ok) return f;
  }
  throw Error("no primitive polynomial found");
}

}  // namespace

GaloisField::GaloisField(unsigned p, unsigned d) : p_(p), d_(d) {
  if (!is_prime(p) || p > 31) throw InvalidInput("characteristic must be a prime <= 31");
  if (d < 1 || d > 8) throw InvalidInput("extension degree must be in 1..8");
  q_ = 1;
  for (unsigned i = 0; i < d; ++i) {
    pw_.push_back(q_);
    q_ *= p;
  }
  modulus_ = first_primitive(p, d);
  if (d == 1) {
    // X = -f0 is the primitive root
    prime_root_ = (p - modulus_[0]) % p;
  }
  if (q_ <= (1u << 20)) {
    log_.assign(q_, 0);
    exp_.assign(q_, 0);
    Elem x = 1, g = primitive();
    for (Elem k = 0; k + 1 < q_; ++k) {
      exp_[k] = static_cast<std::uint32_t>(x);
      log_[x] = static_cast<std::uint32_t>(k);
      x = poly_mul(x, g);
    }
    exp_[q_ - 1] = 1;
  }
  if (q_ <= 256) {
    add_tab_.resize(q_ * q_);
    mul_tab_.resize(q_ * q_);
    for (Elem a = 0; a < q_; ++a) {
      for (Elem b = 0; b < q_; ++b) {
        Elem s = 0;
        for (unsigned i = 0; i < d_; ++i) s += ((digit(a, i) + digit(b, i)) % p_) * pw_[i];
        add_tab_[a * q_ + b] = static_cast<std::uint16_t>(s);
        mul_tab_[a * q_ + b] = static_cast<std::uint16_t>(poly_mul(a, b));
      }
    }
  }
}

std::shared_ptr<const GaloisField> GaloisField::get(unsigned p, unsigned d) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, unsigned>, std::shared_ptr<const GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, d);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto f = std::make_shared<const GaloisField>(p, d);
  cache.emplace(key, f);
  return f;
}

unsigned GaloisField::digit(Elem a, unsigned i) const {
  return static_cast<unsigned>((a / pw_[i]) % p_);
}

GaloisField::Elem GaloisField::from_digits(const std::vector<unsigned>& c) const {
  Elem s = 0;
  for (unsigned i = 0; i < d_ && i < c.size(); ++i) s += (c[i] % p_) * pw_[i];
  return s;
}

GaloisField::Elem GaloisField::poly_mul(Elem a, Elem b) const {
  if (d_ == 1) return (a * b) % p_;
  Poly pa(d_), pb(d_);
  for (unsigned i = 0; i < d_; ++i) {
    pa[i] = digit(a, i);
    pb[i] = digit(b, i);
  }
  return from_digits(mulmod(pa, pb, modulus_, p_));
}

GaloisField::Elem GaloisField::add(Elem a, Elem b) const {
  if (d_ == 1) return (a + b) % p_;
  if (!add_tab_.empty()) return add_tab_[a * q_ + b];
  Elem s = 0;
  for (unsigned i = 0; i < d_; ++i) {
    unsigned x = static_cast<unsigned>(a % p_), y = static_cast<unsigned>(b % p_);
    s += ((x + y) % p_) * pw_[i];
    a /= p_;
    b /= p_;
  }
  return s;
}

GaloisField::Elem GaloisField::neg(Elem a) const {
  if (d_ == 1) return a ? p_ - a : 0;
  Elem s = 0;
  for (unsigned i = 0; i < d_; ++i) {
    unsigned x = static_cast<unsigned>(a % p_);
    s += ((p_ - x) % p_) * pw_[i];
    a /= p_;
  }
  return s;
}

GaloisField::Elem GaloisField::sub(Elem a, Elem b) const { return add(a, neg(b)); }

GaloisField::Elem GaloisField::mul(Elem a, Elem b) const {
  if (d_ == 1) return (a * b) % p_;
  if (!mul_tab_.empty()) return mul_tab_[a * q_ + b];
  if (a == 0 || b == 0) return 0;
  if (!log_.empty()) {
    Elem k = (static_cast<Elem>(log_[a]) + log_[b]) % (q_ - 1);
    return exp_[k];
  }
  return poly_mul(a, b);
}

GaloisField::Elem GaloisField::pow(Elem a, std::uint64_t e) const {
  Elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

GaloisField::Elem GaloisField::inv(Elem a) const {
  if (a == 0) throw InvalidInput("division by zero in finite field");
  if (!log_.empty()) return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  return pow(a, q_ - 2);
}

GaloisField::Elem GaloisField::frobenius(Elem a, unsigned e) const {
  for (unsigned i = 0; i < e; ++i) a = pow(a, p_);
  return a;
}

GaloisField::Elem GaloisField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

std::string GaloisField::to_string(Elem a) const {
  if (d_ == 1) return std::to_string(a);
  std::string s = "[";
  for (unsigned i = 0; i < d_; ++i) {
    if (i) s += ",";
    s += std::to_string(digit(a, i));
  }
  return s + "]";
}

}  // namespace pib
