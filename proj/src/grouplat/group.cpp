#include "grouplat/group.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ffield/errors.hpp"
#include "ffield/fmatrix.hpp"

namespace pib {

namespace {

std::string key_str(const std::vector<int>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size() * sizeof(int));
}

constexpr std::size_t kTableLimit = 2048;

}  // namespace

std::vector<int> GroupTable::combine(const std::vector<int>& a, const std::vector<int>& b) const {
  switch (kind_) {
    case Kind::Permutation: {
      std::vector<int> r(a.size());
      for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
      return r;
    }
    case Kind::Matrix: {
      unsigned n = mdim_;
      std::vector<int> r(n * n, 0);
      for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
          int x = a[i * n + k];
          if (!x) continue;
          for (unsigned j = 0; j < n; ++j) r[i * n + j] = (r[i * n + j] + x * b[k * n + j]) % int(modulus_);
        }
      return r;
    }
    case Kind::Tuple: {
      std::vector<int> r(a.size());
      for (size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % int(modulus_);
      return r;
    }
    case Kind::Table:
      return {static_cast<int>(table_[static_cast<size_t>(a[0]) * n_ + b[0]])};
  }
  return {};
}

Elt GroupTable::mul(Elt a, Elt b) const {
  if (!table_.empty()) return table_[static_cast<size_t>(a) * n_ + b];
  return lookup_.at(key_str(combine(keys_[a], keys_[b])));
}

GroupPtr GroupTable::from_generators(Kind kind, std::vector<std::vector<int>> gens, unsigned modulus,
                                     unsigned matrix_dim, std::string name, const GroupOptions& opt) {
  std::shared_ptr<GroupTable> G(new GroupTable());
  G->kind_ = kind;
  G->modulus_ = modulus;
  G->mdim_ = matrix_dim;
  G->name_ = std::move(name);
  std::vector<int> id;
  if (kind == Kind::Permutation) {
    size_t deg = gens.empty() ? 0 : gens[0].size();
    id.resize(deg);
    std::iota(id.begin(), id.end(), 0);
  } else if (kind == Kind::Matrix) {
    id.assign(matrix_dim * matrix_dim, 0);
    for (unsigned i = 0; i < matrix_dim; ++i) id[i * matrix_dim + i] = 1;
  } else if (kind == Kind::Tuple) {
    id.assign(gens.empty() ? 0 : gens[0].size(), 0);
  } else {
    throw InvalidInput("table groups are built with from_table");
  }
  for (auto& g : gens)
    if (g.size() != id.size()) throw InvalidInput("generators have inconsistent sizes");
  G->keys_.push_back(id);
  G->lookup_.emplace(key_str(id), 0);
  G->parent_.push_back(0);
  G->pgen_.push_back(0);
  for (size_t idx = 0; idx < G->keys_.size(); ++idx) {
    for (unsigned s = 0; s < gens.size(); ++s) {
      auto k = G->combine(G->keys_[idx], gens[s]);
      auto ks = key_str(k);
      if (G->lookup_.count(ks)) continue;
      if (G->keys_.size() >= opt.order_cap) throw ResourceLimit("group order exceeds the configured cap");
      G->lookup_.emplace(ks, static_cast<Elt>(G->keys_.size()));
      G->keys_.push_back(std::move(k));
      G->parent_.push_back(static_cast<Elt>(idx));
      G->pgen_.push_back(s);
    }
  }
  G->n_ = G->keys_.size();
  for (auto& g : gens) G->gens_.push_back(G->lookup_.at(key_str(g)));
  G->finish(opt);
  return G;
}

void GroupTable::finish(const GroupOptions&) {
  if (table_.empty() && n_ <= kTableLimit) {
    if (kind_ == Kind::Table) throw Error("table group without table");
    table_.resize(n_ * n_);
    for (size_t a = 0; a < n_; ++a)
      for (size_t b = 0; b < n_; ++b) table_[a * n_ + b] = lookup_.at(key_str(combine(keys_[a], keys_[b])));
  }
  inv_.assign(n_, 0);
  ord_.assign(n_, 1);
  for (Elt a = 0; a < n_; ++a) {
    Elt x = a, prev = 0;
    unsigned k = 1;
    while (x != 0) {
      prev = x;
      x = mul(x, a);
      ++k;
      if (k > n_) throw InvalidInput("element of infinite order: not a group");
    }
    ord_[a] = k;
    inv_[a] = a == 0 ? 0 : prev;
  }
}

GroupPtr GroupTable::from_table(const std::vector<std::vector<std::uint32_t>>& table, std::vector<Elt> generators,
                                std::string name, const GroupOptions& opt) {
  size_t n = table.size();
  if (n == 0) throw InvalidInput("empty multiplication table");
  if (n > opt.order_cap) throw ResourceLimit("group order exceeds the configured cap");
  std::shared_ptr<GroupTable> G(new GroupTable());
  G->kind_ = Kind::Table;
  G->name_ = std::move(name);
  G->n_ = n;
  G->table_.resize(n * n);
  for (size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw InvalidInput("multiplication table is not square");
    for (size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw InvalidInput("multiplication table entry out of range");
      G->table_[a * n + b] = table[a][b];
    }
  }
  for (size_t a = 0; a < n; ++a)
    if (G->table_[a] != a || G->table_[a * n] != a) throw InvalidInput("element 0 must be the identity");
  for (size_t a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (size_t b = 0; b < n; ++b) {
      row[G->table_[a * n + b]] = true;
      col[G->table_[b * n + a]] = true;
    }
    if (std::count(row.begin(), row.end(), false) || std::count(col.begin(), col.end(), false))
      throw InvalidInput("multiplication table is not a Latin square");
  }
  for (size_t a = 0; a < n; ++a) G->keys_.push_back({static_cast<int>(a)});
  // generators: given, or greedy by index
  if (generators.empty()) {
    std::vector<bool> in(n, false);
    in[0] = true;
    for (Elt g = 1; g < n; ++g) {
      if (in[g]) continue;
      generators.push_back(g);
      std::vector<Elt> span;
      for (Elt x = 0; x < n; ++x)
        if (in[x]) span.push_back(x);
      // closure under right multiplication by the generators so far
      std::deque<Elt> q(span.begin(), span.end());
      while (!q.empty()) {
        Elt x = q.front();
        q.pop_front();
        for (Elt s : generators) {
          Elt y = G->table_[x * n + s];
          if (!in[y]) {
            in[y] = true;
            q.push_back(y);
          }
        }
      }
    }
  }
  for (Elt s : generators)
    if (s >= n) throw InvalidInput("generator index out of range");
  G->gens_ = generators;
  G->parent_.assign(n, 0);
  G->pgen_.assign(n, 0);
  std::vector<bool> seen(n, false);
  seen[0] = true;
  std::deque<Elt> q{0};
  while (!q.empty()) {
    Elt x = q.front();
    q.pop_front();
    for (unsigned s = 0; s < generators.size(); ++s) {
      Elt y = G->table_[x * n + generators[s]];
      if (seen[y]) continue;
      seen[y] = true;
      G->parent_[y] = x;
      G->pgen_[y] = s;
      q.push_back(y);
    }
  }
  if (std::count(seen.begin(), seen.end(), false)) throw InvalidInput("generators do not generate the table group");
  // associativity against generators implies full associativity
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      for (Elt c : generators) {
        size_t ab = G->table_[a * n + b], bc = G->table_[b * n + c];
        if (G->table_[ab * n + c] != G->table_[a * n + bc])
          throw InvalidInput("multiplication table is not associative at (" + std::to_string(a) + "," +
                             std::to_string(b) + "," + std::to_string(c) + ")");
      }
  G->finish(opt);
  return G;
}

GroupPtr GroupTable::elementary_abelian(unsigned p, unsigned r) {
  if (r == 0) throw InvalidInput("elementary abelian group needs rank >= 1");
  std::vector<std::vector<int>> gens;
  for (unsigned i = 0; i < r; ++i) {
    std::vector<int> g(r, 0);
    g[i] = 1;
    gens.push_back(g);
  }
  return from_generators(Kind::Tuple, gens, p, 0,
                         "elementary_abelian(" + std::to_string(p) + "," + std::to_string(r) + ")");
}

GroupPtr GroupTable::klein4() {
  std::vector<std::vector<int>> gens{{1, 0}, {0, 1}};
  return from_generators(Kind::Tuple, gens, 2, 0, "klein4");
}

GroupPtr GroupTable::cyclic(unsigned n) {
  if (n < 1) throw InvalidInput("cyclic group order must be positive");
  return from_generators(Kind::Tuple, {{1 % int(n)}}, n, 0, "cyclic(" + std::to_string(n) + ")");
}

GroupPtr GroupTable::heisenberg(unsigned p) {
  std::vector<int> x{1, 1, 0, 0, 1, 0, 0, 0, 1}, y{1, 0, 0, 0, 1, 1, 0, 0, 1};
  return from_generators(Kind::Matrix, {x, y}, p, 3, "heisenberg(" + std::to_string(p) + ")");
}

GroupPtr GroupTable::dihedral(unsigned n) {
  if (n < 3) throw InvalidInput("dihedral(n) needs n >= 3");
  std::vector<int> r(n), s(n);
  for (unsigned i = 0; i < n; ++i) {
    r[i] = (i + 1) % n;
    s[i] = (n - i) % n;
  }
  return from_generators(Kind::Permutation, {r, s}, 0, 0, "dihedral(" + std::to_string(n) + ")");
}

GroupPtr GroupTable::alternating(unsigned n) {
  if (n < 3) throw InvalidInput("alternating(n) needs n >= 3");
  std::vector<std::vector<int>> gens;
  for (unsigned k = 2; k < n; ++k) {
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 0);
    c[0] = 1;
    c[1] = static_cast<int>(k);
    c[k] = 0;
    gens.push_back(c);
  }
  return from_generators(Kind::Permutation, gens, 0, 0, "alternating(" + std::to_string(n) + ")");
}

GroupPtr GroupTable::symmetric(unsigned n) {
  if (n < 2) throw InvalidInput("symmetric(n) needs n >= 2");
  std::vector<int> t(n), c(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (unsigned i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return from_generators(Kind::Permutation, {c, t}, 0, 0, "symmetric(" + std::to_string(n) + ")");
}

GroupPtr GroupTable::permutations(unsigned degree, std::vector<std::vector<int>> gens, const GroupOptions& opt) {
  if (gens.empty()) throw InvalidInput("permutation group needs generators");
  for (auto& g : gens) {
    if (g.size() != degree) throw InvalidInput("permutation has wrong degree");
    std::vector<bool> hit(degree, false);
    for (int v : g) {
      if (v < 0 || v >= int(degree) || hit[v]) throw InvalidInput("generator is not a permutation");
      hit[v] = true;
    }
  }
  return from_generators(Kind::Permutation, std::move(gens), 0, 0, "permutations", opt);
}

GroupPtr GroupTable::matrices(unsigned n, unsigned p, std::vector<std::vector<int>> gens, const GroupOptions& opt) {
  if (gens.empty()) throw InvalidInput("matrix group needs generators");
  auto F = GaloisField::get(p, 1);
  for (auto& g : gens) {
    if (g.size() != n * n) throw InvalidInput("matrix generator has wrong size");
    FMatrix m(F, n, n);
    for (unsigned i = 0; i < n * n; ++i) {
      g[i] = ((g[i] % int(p)) + int(p)) % int(p);
      m.at(i / n, i % n) = static_cast<GaloisField::Elem>(g[i]);
    }
    if (m.rank() != n) throw InvalidInput("matrix generator is singular");
  }
  return from_generators(Kind::Matrix, std::move(gens), p, n, "matrices", opt);
}

GroupPtr GroupTable::subgroup(const std::vector<Elt>& elems) const {
  size_t m = elems.size();
  if (m == 0 || elems[0] != 0) throw InvalidInput("subgroup must contain the identity first");
  std::unordered_map<Elt, Elt> pos;
  for (size_t i = 0; i < m; ++i) pos.emplace(elems[i], static_cast<Elt>(i));
  std::vector<std::vector<std::uint32_t>> table(m, std::vector<std::uint32_t>(m));
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) {
      auto it = pos.find(mul(elems[a], elems[b]));
      if (it == pos.end()) throw InvalidInput("element list is not closed under multiplication");
      table[a][b] = it->second;
    }
  auto T = from_table(table, {}, name_ + "|sub");
  auto S = std::const_pointer_cast<GroupTable>(T);
  if (kind_ != Kind::Table) {
    S->kind_ = kind_;
    S->modulus_ = modulus_;
    S->mdim_ = mdim_;
    for (size_t i = 0; i < m; ++i) S->keys_[i] = keys_[elems[i]];
  }
  return T;
}

}  // namespace pib
