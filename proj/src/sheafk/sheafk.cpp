#include "sheafk/sheafk.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "ffield/errors.hpp"
#include "jordan/jordan.hpp"

namespace pib {

namespace {

using Expo = std::vector<unsigned>;

// exponent vectors of total degree d, lexicographically decreasing
std::vector<Expo> monomials(unsigned n, unsigned d) {
  std::vector<Expo> out;
  Expo e(n, 0);
  auto rec = [&](auto&& self, unsigned v, unsigned left) -> void {
    if (v + 1 == n) {
      e[v] = left;
      out.push_back(e);
      return;
    }
    for (unsigned k = left + 1; k-- > 0;) {
      e[v] = k;
      self(self, v + 1, left - k);
    }
  };
  if (n) rec(rec, 0, d);
  return out;
}

struct DegreeBasis {
  std::vector<Expo> mons;
  std::map<Expo, std::size_t> index;
};

class Monomials {
 public:
  explicit Monomials(unsigned n) : n_(n) {}
  const DegreeBasis& at(unsigned d) {
    while (cache_.size() <= d) {
      DegreeBasis b;
      b.mons = monomials(n_, static_cast<unsigned>(cache_.size()));
      for (std::size_t i = 0; i < b.mons.size(); ++i) b.index[b.mons[i]] = i;
      cache_.push_back(std::move(b));
    }
    return cache_[d];
  }

 private:
  unsigned n_;
  std::deque<DegreeBasis> cache_;  // references stay valid as it grows
};

// dense matrix over F_p, p small
struct Dense {
  unsigned p;
  std::size_t rows, cols;
  std::vector<std::uint32_t> a;
  Dense(unsigned p_, std::size_t r, std::size_t c) : p(p_), rows(r), cols(c), a(r * c, 0) {}
  std::uint32_t* row(std::size_t i) { return a.data() + i * cols; }
  const std::uint32_t* row(std::size_t i) const { return a.data() + i * cols; }
};

std::uint32_t inv_mod(std::uint32_t x, unsigned p) {
  std::uint32_t r = 1;
  for (unsigned e = p - 2; e; e >>= 1, x = x * x % p)
    if (e & 1) r = r * x % p;
  return r;
}

// row echelon in place; pivots scaled to 1, reduced above as well when `full`.
// rows [0, rank) end up holding the pivot rows.
std::vector<std::size_t> echelon(Dense& A, bool full) {
  const unsigned p = A.p;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < A.cols && r < A.rows; ++c) {
    std::size_t s = r;
    while (s < A.rows && !A.row(s)[c]) ++s;
    if (s == A.rows) continue;
    if (s != r) std::swap_ranges(A.row(s), A.row(s) + A.cols, A.row(r));
    std::uint32_t* pr = A.row(r);
    std::uint32_t iv = inv_mod(pr[c], p);
    for (std::size_t t = c; t < A.cols; ++t) pr[t] = pr[t] * iv % p;
    for (std::size_t i = full ? 0 : r + 1; i < A.rows; ++i) {
      if (i == r) continue;
      std::uint32_t* q = A.row(i);
      std::uint32_t f = q[c];
      if (!f) continue;
      std::uint32_t g = p - f;
      for (std::size_t t = c; t < A.cols; ++t) q[t] = (q[t] + g * pr[t]) % p;
    }
    piv.push_back(c);
    ++r;
  }
  A.rows = r;
  A.a.resize(r * A.cols);
  return piv;
}

FMatrix to_fmatrix(const Dense& D, const FieldPtr& F) {
  FMatrix out(F, D.rows, D.cols);
  for (std::size_t i = 0; i < D.rows; ++i)
    for (std::size_t c = 0; c < D.cols; ++c) out.at(i, c) = D.row(i)[c];
  return out;
}

int chart_degree(const PolyMatrix& A) {
  if (auto t = A.degree_tag()) return *t;
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t k = 0; k < A.cols(); ++k)
      if (!A.at(i, k).is_zero()) return A.at(i, k).degree();
  throw InvalidInput("zero chart without a degree tag");
}

struct Term {
  Expo e;
  std::uint32_t c;
};

struct ChartData {
  unsigned n, p, j;
  std::size_t m;
  std::vector<std::vector<std::vector<Term>>> entries;  // [row][col]
};

ChartData chart_data(const PolyMatrix& A) {
  if (A.rows() != A.cols()) throw InvalidInput("chart matrix must be square");
  int j = chart_degree(A);
  if (j < 1) throw InvalidInput("chart entries must have positive degree");
  ChartData D{A.ring()->nvars(), A.ring()->p(), static_cast<unsigned>(j), A.rows(), {}};
  if (D.n == 0) throw InvalidInput("chart ring has no variables");
  D.entries.assign(D.m, std::vector<std::vector<Term>>(D.m));
  for (std::size_t i = 0; i < D.m; ++i)
    for (std::size_t k = 0; k < D.m; ++k) {
      const auto& f = A.at(i, k);
      if (!f.is_zero() && !f.is_homogeneous(j)) throw InvalidInput("chart matrix is not homogeneous");
      for (auto& [mon, c] : f.terms()) {
        Expo e(D.n);
        for (unsigned v = 0; v < D.n; ++v) e[v] = mon.e[v];
        D.entries[i][k].push_back({std::move(e), static_cast<std::uint32_t>(c % D.p)});
      }
    }
  return D;
}

// matrix of Theta in degree d: rows = images of the source basis (k, nu), columns = (i, mu) in degree d+j
Dense image_rows(const ChartData& C, Monomials& mons, unsigned d) {
  const auto& src = mons.at(d);
  const auto& dst = mons.at(d + C.j);
  std::size_t ns = src.mons.size(), nt = dst.mons.size();
  Dense out(C.p, C.m * ns, C.m * nt);
  Expo prod(C.n);
  for (std::size_t k = 0; k < C.m; ++k)
    for (std::size_t a = 0; a < ns; ++a) {
      std::uint32_t* r = out.row(k * ns + a);
      for (std::size_t i = 0; i < C.m; ++i)
        for (auto& t : C.entries[i][k]) {
          for (unsigned v = 0; v < C.n; ++v) prod[v] = src.mons[a][v] + t.e[v];
          std::size_t col = i * nt + dst.index.at(prod);
          r[col] = (r[col] + t.c) % C.p;
        }
    }
  return out;
}

// kernel of the map given by image rows: vectors x with x * R = 0
Dense left_kernel(const Dense& R) {
  // transpose, reduce, read off free columns
  Dense T(R.p, R.cols, R.rows);
  for (std::size_t i = 0; i < R.rows; ++i)
    for (std::size_t c = 0; c < R.cols; ++c) T.row(c)[i] = R.row(i)[c];
  auto piv = echelon(T, true);
  std::vector<char> is_piv(R.rows, 0);
  for (auto c : piv) is_piv[c] = 1;
  Dense K(R.p, R.rows - piv.size(), R.rows);
  std::size_t t = 0;
  for (std::size_t f = 0; f < R.rows; ++f) {
    if (is_piv[f]) continue;
    std::uint32_t* v = K.row(t++);
    v[f] = 1;
    for (std::size_t r = 0; r < piv.size(); ++r)
      if (auto x = T.row(r)[f]) v[piv[r]] = (R.p - x) % R.p;
  }
  return K;
}

// rank of S_1 * B where B's rows live in (S_e)^m; result lives in (S_{e+1})^m
std::size_t shifted_rank(const Dense& B, Monomials& mons, unsigned e, unsigned n, std::size_t m) {
  if (!B.rows) return 0;
  const auto& lo = mons.at(e);
  const auto& hi = mons.at(e + 1);
  std::size_t nl = lo.mons.size(), nh = hi.mons.size();
  Dense S(B.p, B.rows * n, m * nh);
  Expo prod(n);
  for (std::size_t r = 0; r < B.rows; ++r)
    for (unsigned v = 0; v < n; ++v) {
      std::uint32_t* out = S.row(r * n + v);
      for (std::size_t c = 0; c < B.cols; ++c) {
        auto x = B.row(r)[c];
        if (!x) continue;
        std::size_t k = c / nl, a = c % nl;
        prod = lo.mons[a];
        ++prod[v];
        out[k * nh + hi.index.at(prod)] = x;
      }
    }
  return echelon(S, false).size();
}

long long binom_ll(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// coefficients (in d) of C(d + s, k) as a polynomial
std::vector<Rational> binom_poly(long long s, unsigned k) {
  std::vector<Rational> out{Rational(1)};
  long long fact = 1;
  for (unsigned t = 0; t < k; ++t) {
    // multiply by (d + s - t)
    std::vector<Rational> next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] = next[i + 1] + out[i];
      next[i] = next[i] + out[i] * Rational(s - static_cast<long long>(t));
    }
    out = std::move(next);
    fact *= t + 1;
  }
  for (auto& x : out) x = x / Rational(fact);
  return out;
}

Rational eval_poly(const std::vector<Rational>& c, long long d) {
  Rational r;
  for (std::size_t i = c.size(); i-- > 0;) r = r * Rational(d) + c[i];
  return r;
}

long long factorial(unsigned k) {
  long long f = 1;
  for (unsigned i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

const char* kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::Ker: return "ker";
    case PieceKind::Im: return "im";
    default: return "coker";
  }
}

std::size_t monomial_count(unsigned n, unsigned d) {
  if (!n) return d == 0;
  return static_cast<std::size_t>(binom_ll(d + n - 1, n - 1));
}

GradedPieceTable graded_pieces(const PolyMatrix& chart, PieceKind kind, const GradedOptions& opt) {
  ChartData C = chart_data(chart);
  long long D = opt.degree_bound >= 0 ? opt.degree_bound : static_cast<long long>(C.j * C.m + C.n + 4);
  if (D > static_cast<long long>(opt.degree_cap))
    throw ResourceLimit("degree bound " + std::to_string(D) + " exceeds the cap " + std::to_string(opt.degree_cap));
  GradedPieceTable T;
  T.n = C.n;
  T.p = C.p;
  T.kind = kind;
  T.j = C.j;
  T.m = C.m;
  auto F = GaloisField::get(C.p, 1);
  Monomials mons(C.n);
  Dense prev(C.p, 0, 0);
  for (unsigned d = 0; d <= D; ++d) {
    std::size_t ns = monomial_count(C.n, d), nt = monomial_count(C.n, d + C.j);
    if (static_cast<double>(C.m * ns) * static_cast<double>(C.m * nt) > static_cast<double>(opt.size_cap))
      throw ResourceLimit("degree " + std::to_string(d) + " piece is too large");
    Dense R = image_rows(C, mons, d);
    if (kind == PieceKind::Coker) {
      T.h.push_back(C.m * nt - echelon(R, false).size());
      continue;
    }
    Dense B(C.p, 0, 0);
    if (kind == PieceKind::Ker) {
      B = left_kernel(R);
    } else {
      echelon(R, true);
      B = std::move(R);
    }
    T.h.push_back(B.rows);
    // new minimal generators: complement of S_1 times the previous degree
    unsigned base = kind == PieceKind::Ker ? d : d + C.j;
    std::size_t spanned = d ? shifted_rank(prev, mons, base - 1, C.n, C.m) : 0;
    for (std::size_t g = spanned; g < B.rows; ++g) T.generator_degrees.push_back(static_cast<int>(d));
    if (opt.keep_bases) T.bases.push_back(to_fmatrix(B, F));
    prev = std::move(B);
  }
  return T;
}

Rational::Rational(long long n, long long d) {
  if (d == 0) throw Error("rational with zero denominator");
  if (d < 0) n = -n, d = -d;
  long long g = std::gcd(n < 0 ? -n : n, d);
  if (g == 0) g = 1;
  num = n / g;
  den = d / g;
}

Rational Rational::operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
Rational Rational::operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
Rational Rational::operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
Rational Rational::operator/(const Rational& o) const {
  if (!o.num) throw Error("division by zero rational");
  return Rational(num * o.den, den * o.num);
}

std::string Rational::to_string() const {
  return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

Rational HilbertData::value(long long d) const { return eval_poly(poly, d); }

HilbertData hilbert_polynomial(const GradedPieceTable& T) {
  HilbertData H;
  H.n = T.n;
  H.h = T.h;
  long long D = static_cast<long long>(T.h.size()) - 1;
  long long n = T.n;
  if (D + 1 < n + 2) throw ResourceLimit("too few degrees to fit a Hilbert polynomial");
  // Newton form through the last n values
  long long b = D - n + 1;
  std::vector<long long> diff(T.h.begin() + b, T.h.end());
  std::vector<Rational> poly(static_cast<std::size_t>(n));
  for (long long k = 0; k < n; ++k) {
    auto term = binom_poly(-b, static_cast<unsigned>(k));  // C(d - b, k)
    for (std::size_t i = 0; i < term.size(); ++i) poly[i] = poly[i] + term[i] * Rational(diff[0]);
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
  }
  H.poly = poly;
  long long d0 = D + 1;
  while (d0 > 0 && eval_poly(poly, d0 - 1) == Rational(static_cast<long long>(T.h[d0 - 1]))) --d0;
  if (D - d0 + 1 < n + 2) throw ResourceLimit("Hilbert function has not stabilized by degree " + std::to_string(D));
  H.d0 = static_cast<unsigned>(d0);
  long long N = n - 1;
  Rational lead = poly[static_cast<std::size_t>(N)] * Rational(factorial(static_cast<unsigned>(N)));
  if (!lead.is_integer()) throw Error("non-integral rank");
  H.rank = lead.num;
  if (N >= 1) {
    auto top = binom_poly(N, static_cast<unsigned>(N));  // C(d + N, N)
    Rational sub = poly[static_cast<std::size_t>(N - 1)] - top[static_cast<std::size_t>(N - 1)] * Rational(H.rank);
    Rational deg = sub * Rational(factorial(static_cast<unsigned>(N - 1)));
    if (!deg.is_integer()) throw Error("non-integral degree");
    H.degree = deg.num;
  }
  return H;
}

HilbertData hilbert_data(const PolyMatrix& chart, PieceKind kind, const GradedOptions& opt, GradedPieceTable* table) {
  GradedOptions o = opt;
  if (o.degree_bound < 0) {
    int j = chart_degree(chart);
    o.degree_bound = static_cast<int>(j * chart.rows() + chart.ring()->nvars() + 4);
  }
  while (true) {
    auto T = graded_pieces(chart, kind, o);
    try {
      auto H = hilbert_polynomial(T);
      if (table) *table = std::move(T);
      return H;
    } catch (const ResourceLimit&) {
      if (static_cast<unsigned>(o.degree_bound) >= o.degree_cap) throw;
      o.degree_bound = static_cast<int>(std::min<unsigned>(2 * o.degree_bound + 1, o.degree_cap));
    }
  }
}

long long K0Vector::rank() const {
  long long r = 0;
  for (auto x : c) r += x;
  return r;
}

long long K0Vector::degree() const {
  long long r = 0;
  for (std::size_t i = 0; i < c.size(); ++i) r += static_cast<long long>(i) * c[i];
  return r;
}

K0Vector K0Vector::operator+(const K0Vector& o) const {
  if (dim != o.dim) throw InvalidInput("K0 vectors on different projective spaces");
  K0Vector r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

K0Vector K0Vector::operator-(const K0Vector& o) const { return *this + o.scaled(-1); }

K0Vector K0Vector::scaled(long long s) const {
  K0Vector r = *this;
  for (auto& x : r.c) x *= s;
  return r;
}

std::string K0Vector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

K0Vector k0_class(const HilbertData& H) {
  long long N = static_cast<long long>(H.n) - 1;
  std::size_t sz = static_cast<std::size_t>(N + 1);
  // sum_i c_i C(d + i + N, N) = HP(d) at d = 0..N
  std::vector<std::vector<Rational>> A(sz, std::vector<Rational>(sz + 1));
  for (std::size_t d = 0; d < sz; ++d) {
    for (std::size_t i = 0; i < sz; ++i) A[d][i] = Rational(binom_ll(static_cast<long long>(d + i) + N, N));
    A[d][sz] = H.value(static_cast<long long>(d));
  }
  for (std::size_t c = 0; c < sz; ++c) {
    std::size_t r = c;
    while (r < sz && A[r][c].num == 0) ++r;
    if (r == sz) throw Error("singular K0 system");
    std::swap(A[r], A[c]);
    for (std::size_t i = 0; i < sz; ++i) {
      if (i == c || A[i][c].num == 0) continue;
      Rational f = A[i][c] / A[c][c];
      for (std::size_t t = c; t <= sz; ++t) A[i][t] = A[i][t] - f * A[c][t];
    }
  }
  K0Vector v;
  v.dim = static_cast<unsigned>(N);
  for (std::size_t i = 0; i < sz; ++i) {
    Rational x = A[i][sz] / A[i][i];
    if (!x.is_integer()) throw InvalidInput("Hilbert polynomial has no integral K0 class");
    v.c.push_back(x.num);
  }
  return v;
}

K0Vector k0_line(unsigned dim, long long i) {
  // sum_k (-1)^k C(dim+1, k) [O(t - k)] = 0 on P^dim, walked outward from [0, dim]
  long long n1 = dim + 1;
  auto unit = [&](long long t) {
    K0Vector v;
    v.dim = dim;
    v.c.assign(dim + 1, 0);
    v.c[static_cast<std::size_t>(t)] = 1;
    return v;
  };
  std::vector<K0Vector> win;  // classes of O(lo), ..., O(lo + dim)
  for (long long t = 0; t <= dim; ++t) win.push_back(unit(t));
  long long lo = 0;
  while (i > lo + dim) {
    K0Vector next = unit(0).scaled(0);
    for (long long k = 1; k <= n1; ++k)
      next = next + win[static_cast<std::size_t>(n1 - k)].scaled((k % 2 ? 1 : -1) * binom_ll(n1, k));
    win.erase(win.begin());
    win.push_back(next);
    ++lo;
  }
  while (i < lo) {
    // (-1)^{n1} [O(lo-1)] = -sum_{k<n1} (-1)^k C(n1,k) [O(lo-1+n1-k)]
    K0Vector prev = unit(0).scaled(0);
    long long sign = n1 % 2 ? 1 : -1;
    for (long long k = 0; k < n1; ++k)
      prev = prev + win[static_cast<std::size_t>(n1 - 1 - k)].scaled(sign * (k % 2 ? -1 : 1) * binom_ll(n1, k));
    win.pop_back();
    win.insert(win.begin(), prev);
    --lo;
  }
  return win[static_cast<std::size_t>(i - lo)];
}

K0Vector k0_twist(const K0Vector& v, long long t) {
  K0Vector r;
  r.dim = v.dim;
  r.c.assign(v.dim + 1, 0);
  for (std::size_t i = 0; i < v.c.size(); ++i)
    if (v.c[i]) r = r + k0_line(v.dim, static_cast<long long>(i) + t).scaled(v.c[i]);
  return r;
}

K0Vector k0_restrict(const K0Vector& v, unsigned target_dim) {
  if (target_dim > v.dim) throw InvalidInput("restriction target is larger than the source");
  K0Vector r;
  r.dim = target_dim;
  r.c.assign(target_dim + 1, 0);
  for (std::size_t i = 0; i < v.c.size(); ++i)
    if (v.c[i]) r = r + k0_line(target_dim, static_cast<long long>(i)).scaled(v.c[i]);
  return r;
}

std::vector<int> splitting_type_p1(const GradedPieceTable& T) {
  if (T.n != 2 || T.kind != PieceKind::Ker) throw InvalidInput("splitting type needs a kernel table in two variables");
  auto H = hilbert_polynomial(T);
  if (static_cast<long long>(T.generator_degrees.size()) != H.rank)
    throw PropertyViolation("kernel generators (" + std::to_string(T.generator_degrees.size()) +
                            ") do not match its rank (" + std::to_string(H.rank) + ")");
  std::vector<int> a;
  for (int b : T.generator_degrees) a.push_back(-b);
  std::sort(a.rbegin(), a.rend());
  return a;
}

PolyMatrix se_chart(const ModuleRep& M, const std::vector<Elt>& basis, unsigned j) {
  if (basis.empty()) throw InvalidInput("empty subgroup basis");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < basis.size(); ++i) names.push_back("y_" + std::to_string(i + 1));
  auto R = PolyRing::make(M.prime(), names);
  std::size_t m = M.dim();
  FMatrix I = FMatrix::identity(M.field(), m);
  PolyMatrix lin(R, m, m);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    FMatrix X = M.rho(basis[k]) - I;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        if (auto x = X.at(r, c))
          lin.at(r, c) = lin.at(r, c) + MultiPoly::term(R, Monomial::var(static_cast<unsigned>(k)), x);
  }
  PolyMatrix out = lin.power(j);
  out.set_degree_tag(static_cast<int>(j));
  return out;
}

bool ChartBundle::euler_source() const {
  return kker + kim == k0_line(kker.dim, 0).scaled(static_cast<long long>(m));
}

bool ChartBundle::euler_target() const {
  return kim + kcoker == k0_line(kim.dim, j).scaled(static_cast<long long>(m));
}

bool ChartBundle::splitting_consistent() const {
  if (!splitting) return true;
  long long deg = 0;
  K0Vector sum = k0_line(kker.dim, 0).scaled(0);
  for (int a : *splitting) {
    deg += a;
    sum = sum + k0_line(kker.dim, a);
  }
  return static_cast<long long>(splitting->size()) == hker.rank && deg == hker.degree && sum == kker;
}

ChartBundle chart_bundle(const ModuleRep& M, const ElabLattice& L, std::size_t member, unsigned j,
                         const std::vector<Elt>* basis, const GradedOptions& opt) {
  if (member >= L.size()) throw InvalidInput("subgroup not in lattice");
  ChartBundle B;
  B.member = member;
  B.basis = basis ? *basis : L.member(member).basis;
  B.j = j;
  B.m = M.dim();
  PolyMatrix chart = se_chart(M, B.basis, j);
  // one elimination per degree gives all three tables
  B.hker = hilbert_data(chart, PieceKind::Ker, opt, &B.ker);
  unsigned n = B.ker.n;
  auto derived = [&](PieceKind kind) {
    GradedPieceTable T;
    T.n = n;
    T.p = B.ker.p;
    T.kind = kind;
    T.j = j;
    T.m = B.m;
    for (unsigned d = 0; d < B.ker.h.size(); ++d) {
      std::size_t im = B.m * monomial_count(n, d) - B.ker.h[d];
      T.h.push_back(kind == PieceKind::Im ? im : B.m * monomial_count(n, d + j) - im);
    }
    return T;
  };
  B.im = derived(PieceKind::Im);
  B.coker = derived(PieceKind::Coker);
  B.him = hilbert_polynomial(B.im);
  B.hcoker = hilbert_polynomial(B.coker);
  B.kker = k0_class(B.hker);
  B.kim = k0_class(B.him);
  B.kcoker = k0_class(B.hcoker);
  if (n == 2) B.splitting = splitting_type_p1(B.ker);
  return B;
}

const K0Vector& piece_class(const ChartBundle& B, PieceKind kind) {
  switch (kind) {
    case PieceKind::Ker: return B.kker;
    case PieceKind::Im: return B.kim;
    default: return B.kcoker;
  }
}

namespace {

K0Family family_from(const ElabLattice& L, const ModuleRep& M, unsigned j, PieceKind kind,
                     const std::vector<ChartBundle>& charts, std::map<std::size_t, ChartBundle>& meets,
                     const GradedOptions& opt) {
  K0Family fam;
  fam.kind = kind;
  fam.j = j;
  fam.charts = charts;
  for (std::size_t a = 0; a < charts.size(); ++a)
    for (std::size_t b = a + 1; b < charts.size(); ++b) {
      K0Pair pr;
      pr.a = charts[a].member;
      pr.b = charts[b].member;
      pr.meet = L.intersection(pr.a, pr.b);
      if (pr.meet) {
        unsigned dim = L.member(*pr.meet).rank - 1;
        pr.from_a = k0_restrict(piece_class(charts[a], kind), dim);
        pr.from_b = k0_restrict(piece_class(charts[b], kind), dim);
        auto it = meets.find(*pr.meet);
        if (it == meets.end()) it = meets.emplace(*pr.meet, chart_bundle(M, L, *pr.meet, j, nullptr, opt)).first;
        pr.direct = piece_class(it->second, kind);
        pr.compatible = pr.from_a == pr.from_b && *pr.direct == pr.from_a;
      }
      fam.compatible = fam.compatible && pr.compatible;
      fam.pairs.push_back(std::move(pr));
    }
  return fam;
}

void require_constant(const ElabLattice& L, const ModuleRep& M, unsigned j) {
  auto v = decide_constant_jrank(M, L, j);
  if (v.status == Status::NonConstant) throw InvalidInput("module is not of constant j-rank; class is not a bundle class");
  if (v.status == Status::Unknown) throw ResourceLimit("constant j-rank undecided: " + v.reason);
}

}  // namespace

K0Family k0_family(const ElabLattice& L, const ModuleRep& M, unsigned j, PieceKind kind, const GradedOptions& opt) {
  require_constant(L, M, j);
  std::vector<ChartBundle> charts;
  for (auto m : L.maximals()) charts.push_back(chart_bundle(M, L, m, j, nullptr, opt));
  std::map<std::size_t, ChartBundle> meets;
  auto fam = family_from(L, M, j, kind, charts, meets, opt);
  if (!fam.compatible) throw PropertyViolation("K0 family is not compatible on intersections");
  return fam;
}

std::vector<K0Family> k0_families(const ElabLattice& L, const ModuleRep& M, unsigned j, const GradedOptions& opt,
                                  const std::vector<ChartBundle>* charts, bool checked) {
  if (!checked) require_constant(L, M, j);
  std::vector<ChartBundle> own;
  if (!charts) {
    for (auto m : L.maximals()) own.push_back(chart_bundle(M, L, m, j, nullptr, opt));
    charts = &own;
  }
  std::map<std::size_t, ChartBundle> meets;
  std::vector<K0Family> out;
  for (auto kind : {PieceKind::Ker, PieceKind::Im, PieceKind::Coker})
    out.push_back(family_from(L, M, j, kind, *charts, meets, opt));
  return out;
}

}  // namespace pib
