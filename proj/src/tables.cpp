#include "semik/tables.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <tuple>

namespace semik {

namespace {

bool shape_ok(const FiniteSemiringTable& t) {
  int n = t.order;
  if (n < 1) return false;
  if (t.zero < 0 || t.zero >= n || t.one < 0 || t.one >= n) return false;
  auto grid_ok = [n](const std::vector<std::vector<int>>& g) {
    if (static_cast<int>(g.size()) != n) return false;
    for (const auto& row : g) {
      if (static_cast<int>(row.size()) != n) return false;
      for (int v : row)
        if (v < 0 || v >= n) return false;
    }
    return true;
  };
  return grid_ok(t.add) && grid_ok(t.mul);
}

}  // namespace

std::optional<TableViolation> validate_table(const FiniteSemiringTable& t) {
  if (!shape_ok(t)) return TableViolation{"shape", {-1, -1, -1}};
  int n = t.order;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.add[t.add[a][b]][c] != t.add[a][t.add[b][c]])
          return TableViolation{"add-associative", {a, b, c}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (t.add[a][b] != t.add[b][a]) return TableViolation{"add-commutative", {a, b, -1}};
  for (int a = 0; a < n; ++a)
    if (t.add[a][t.zero] != a) return TableViolation{"add-identity", {a, -1, -1}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]])
          return TableViolation{"mul-associative", {a, b, c}};
  for (int a = 0; a < n; ++a)
    if (t.mul[a][t.one] != a || t.mul[t.one][a] != a)
      return TableViolation{"mul-identity", {a, -1, -1}};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (t.mul[a][t.add[b][c]] != t.add[t.mul[a][b]][t.mul[a][c]])
          return TableViolation{"left-distributive", {a, b, c}};
        if (t.mul[t.add[a][b]][c] != t.add[t.mul[a][c]][t.mul[b][c]])
          return TableViolation{"right-distributive", {a, b, c}};
      }
  for (int a = 0; a < n; ++a)
    if (t.mul[a][t.zero] != t.zero || t.mul[t.zero][a] != t.zero)
      return TableViolation{"zero-absorbing", {a, -1, -1}};
  return std::nullopt;
}

namespace {

void require_valid(const FiniteSemiringTable& t) {
  if (auto v = validate_table(t))
    fail(Err::InvalidTable, t.name + ": axiom '" + v->axiom + "' fails at (" +
                                std::to_string(v->at[0]) + "," + std::to_string(v->at[1]) + "," +
                                std::to_string(v->at[2]) + ")");
}

void require_order(const FiniteSemiringTable& t, int cap) {
  if (t.order > cap)
    fail(Err::OrderTooLarge,
         t.name + ": order " + std::to_string(t.order) + " exceeds " + std::to_string(cap));
}

}  // namespace

FiniteSemiringTable bool_table() {
  FiniteSemiringTable t;
  t.name = "B";
  t.order = 2;
  t.add = {{0, 1}, {1, 1}};
  t.mul = {{0, 0}, {0, 1}};
  t.zero = 0;
  t.one = 1;
  return t;
}

FiniteSemiringTable zmod_table(int n) {
  if (n < 1) fail(Err::ArgumentTooSmall, "zmod_table needs n >= 1");
  FiniteSemiringTable t;
  t.name = "Z" + std::to_string(n);
  t.order = n;
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.add[a][b] = (a + b) % n;
      t.mul[a][b] = (a * b) % n;
    }
  t.zero = 0;
  t.one = 1 % n;
  return t;
}

namespace {

// minimal coefficient lists of monic irreducible polynomials, low degree first
const std::map<int, std::vector<int>>& irreducibles() {
  static const std::map<int, std::vector<int>> table = {
      {4, {1, 1, 1}},        // x^2+x+1 over GF(2)
      {8, {1, 1, 0, 1}},     // x^3+x+1
      {16, {1, 1, 0, 0, 1}}, // x^4+x+1
      {9, {1, 0, 1}},        // x^2+1 over GF(3)
  };
  return table;
}

std::vector<int> to_digits(int v, int p, int k) {
  std::vector<int> d(k);
  for (int i = 0; i < k; ++i) {
    d[i] = v % p;
    v /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int v = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) v = v * p + d[i];
  return v;
}

}  // namespace

FiniteSemiringTable gf_table(int q) {
  int p = 0;
  for (int d = 2; d * d <= q; ++d)
    if (q % d == 0) { p = d; break; }
  if (p == 0) p = q;  // q itself prime
  int k = 0;
  for (int v = q; v > 1; v /= p, ++k)
    if (v % p != 0) fail(Err::InvalidTable, "gf_table: " + std::to_string(q) + " is not a prime power");
  if (q < 2) fail(Err::ArgumentTooSmall, "gf_table needs q >= 2");
  if (k == 1) {
    FiniteSemiringTable t = zmod_table(p);
    t.name = "GF(" + std::to_string(q) + ")";
    return t;
  }
  auto it = irreducibles().find(q);
  if (it == irreducibles().end())
    fail(Err::InvalidTable, "gf_table: no modulus stored for q=" + std::to_string(q));
  const std::vector<int>& mod = it->second;  // degree k, monic
  FiniteSemiringTable t;
  t.name = "GF(" + std::to_string(q) + ")";
  t.order = q;
  t.add.assign(q, std::vector<int>(q));
  t.mul.assign(q, std::vector<int>(q));
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b) {
      auto da = to_digits(a, p, k);
      auto db = to_digits(b, p, k);
      std::vector<int> sum(k);
      for (int i = 0; i < k; ++i) sum[i] = (da[i] + db[i]) % p;
      t.add[a][b] = from_digits(sum, p);
      std::vector<int> prod(2 * k - 1, 0);
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
      for (int deg = 2 * k - 2; deg >= k; --deg) {
        int c = prod[deg];
        if (c == 0) continue;
        prod[deg] = 0;
        for (int i = 0; i < k; ++i)
          prod[deg - k + i] = ((prod[deg - k + i] - c * mod[i]) % p + p * p) % p;
      }
      prod.resize(k);
      t.mul[a][b] = from_digits(prod, p);
    }
  t.zero = 0;
  t.one = 1;
  return t;
}

FiniteSemiringTable matrix_semiring(const FiniteSemiringTable& base, int n) {
  if (n < 1) fail(Err::ArgumentTooSmall, "matrix_semiring needs n >= 1");
  long long ord = 1;
  for (int i = 0; i < n * n; ++i) {
    ord *= base.order;
    if (ord > kMaxTableOrder)
      fail(Err::OrderTooLarge, "matrix semiring order exceeds " + std::to_string(kMaxTableOrder));
  }
  int q = base.order;
  int m = static_cast<int>(ord);
  auto entries = [&](int v) { return to_digits(v, q, n * n); };  // row-major
  FiniteSemiringTable t;
  t.name = "M" + std::to_string(n) + "(" + base.name + ")";
  t.order = m;
  t.add.assign(m, std::vector<int>(m));
  t.mul.assign(m, std::vector<int>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      auto da = entries(a);
      auto db = entries(b);
      std::vector<int> sum(n * n), prod(n * n);
      for (int i = 0; i < n * n; ++i) sum[i] = base.add[da[i]][db[i]];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int acc = base.zero;
          for (int s = 0; s < n; ++s)
            acc = base.add[acc][base.mul[da[i * n + s]][db[s * n + j]]];
          prod[i * n + j] = acc;
        }
      t.add[a][b] = from_digits(sum, q);
      t.mul[a][b] = from_digits(prod, q);
    }
  std::vector<int> zero(n * n, base.zero), one(n * n, base.zero);
  for (int i = 0; i < n; ++i) one[i * n + i] = base.one;
  t.zero = from_digits(zero, q);
  t.one = from_digits(one, q);
  return t;
}

FiniteSemiringTable product_table(const FiniteSemiringTable& a, const FiniteSemiringTable& b) {
  long long ord = static_cast<long long>(a.order) * b.order;
  if (ord > kMaxTableOrder)
    fail(Err::OrderTooLarge, "product order exceeds " + std::to_string(kMaxTableOrder));
  int m = static_cast<int>(ord);
  FiniteSemiringTable t;
  t.name = "(" + a.name + "x" + b.name + ")";
  t.order = m;
  t.add.assign(m, std::vector<int>(m));
  t.mul.assign(m, std::vector<int>(m));
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      int xi = x / b.order, xj = x % b.order;
      int yi = y / b.order, yj = y % b.order;
      t.add[x][y] = a.add[xi][yi] * b.order + b.add[xj][yj];
      t.mul[x][y] = a.mul[xi][yi] * b.order + b.mul[xj][yj];
    }
  t.zero = a.zero * b.order + b.zero;
  t.one = a.one * b.order + b.one;
  return t;
}

FiniteSemiringTable chain_table(int n) {
  if (n < 1) fail(Err::ArgumentTooSmall, "chain_table needs n >= 1");
  FiniteSemiringTable t;
  t.name = "C" + std::to_string(n);
  t.order = n;
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.add[a][b] = std::max(a, b);
      t.mul[a][b] = std::min(a, b);
    }
  t.zero = 0;
  t.one = n - 1;
  return t;
}

FiniteSemiringTable truncated_nat_table(int cap) {
  if (cap < 1) fail(Err::ArgumentTooSmall, "truncated_nat_table needs cap >= 1");
  int n = cap + 1;
  FiniteSemiringTable t;
  t.name = "N" + std::to_string(cap);
  t.order = n;
  t.add.assign(n, std::vector<int>(n));
  t.mul.assign(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      t.add[a][b] = std::min(a + b, cap);
      t.mul[a][b] = std::min(a * b, cap);
    }
  t.zero = 0;
  t.one = 1;
  return t;
}

FiniteSemiringTable opposite_table(const FiniteSemiringTable& t) {
  FiniteSemiringTable o = t;
  o.name = t.name + "^op";
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b) o.mul[a][b] = t.mul[b][a];
  return o;
}

// ---- table isomorphism -----------------------------------------------------

namespace {

// iterated signature refinement over the disjoint union, so class labels are
// comparable between the two tables
std::pair<std::vector<int>, std::vector<int>> refine_classes(const FiniteSemiringTable& a,
                                                             const FiniteSemiringTable& b) {
  int n = a.order;
  std::vector<int> ca(n), cb(n);
  for (int x = 0; x < n; ++x) {
    ca[x] = (x == a.zero ? 1 : 0) + (x == a.one ? 2 : 0);
    cb[x] = (x == b.zero ? 1 : 0) + (x == b.one ? 2 : 0);
  }
  for (int round = 0; round < n; ++round) {
    using Sig = std::pair<int, std::vector<std::tuple<int, int, int, int>>>;
    auto sig_of = [n](const FiniteSemiringTable& t, const std::vector<int>& c, int x) {
      Sig s;
      s.first = c[x];
      for (int y = 0; y < n; ++y)
        s.second.emplace_back(c[y], c[t.add[x][y]], c[t.mul[x][y]], c[t.mul[y][x]]);
      std::sort(s.second.begin(), s.second.end());
      return s;
    };
    std::map<Sig, int> ids;
    std::vector<Sig> sa(n), sb(n);
    for (int x = 0; x < n; ++x) {
      sa[x] = sig_of(a, ca, x);
      sb[x] = sig_of(b, cb, x);
      ids.emplace(sa[x], 0);
      ids.emplace(sb[x], 0);
    }
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    std::vector<int> na(n), nb(n);
    for (int x = 0; x < n; ++x) {
      na[x] = ids[sa[x]];
      nb[x] = ids[sb[x]];
    }
    if (na == ca && nb == cb) break;
    ca = std::move(na);
    cb = std::move(nb);
  }
  return {ca, cb};
}

bool full_table_check(const FiniteSemiringTable& a, const FiniteSemiringTable& b,
                      const std::vector<int>& phi) {
  if (phi[a.zero] != b.zero || phi[a.one] != b.one) return false;
  for (int x = 0; x < a.order; ++x)
    for (int y = 0; y < a.order; ++y) {
      if (phi[a.add[x][y]] != b.add[phi[x]][phi[y]]) return false;
      if (phi[a.mul[x][y]] != b.mul[phi[x]][phi[y]]) return false;
    }
  return true;
}

}  // namespace

std::optional<std::vector<int>> table_isomorphic(const FiniteSemiringTable& a,
                                                 const FiniteSemiringTable& b) {
  if (a.order != b.order) return std::nullopt;
  int n = a.order;
  auto [ca, cb] = refine_classes(a, b);
  {
    std::map<int, int> ha, hb;
    for (int x = 0; x < n; ++x) {
      ++ha[ca[x]];
      ++hb[cb[x]];
    }
    if (ha != hb) return std::nullopt;
  }
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int x, int y) { return std::tie(ca[x], x) < std::tie(ca[y], y); });
  std::vector<int> phi(n, -1);
  std::vector<bool> used(n, false);
  std::vector<int> mapped;
  std::function<bool(int)> go = [&](int pos) -> bool {
    if (pos == n) return full_table_check(a, b, phi);
    int x = order[pos];
    for (int y = 0; y < n; ++y) {
      if (used[y] || cb[y] != ca[x]) continue;
      bool ok = true;
      for (int u : mapped) {
        int za = a.add[x][u], zb = b.add[y][phi[u]];
        if (phi[za] != -1 && phi[za] != zb) { ok = false; break; }
        za = a.mul[x][u];
        zb = b.mul[y][phi[u]];
        if (phi[za] != -1 && phi[za] != zb) { ok = false; break; }
        za = a.mul[u][x];
        zb = b.mul[phi[u]][y];
        if (phi[za] != -1 && phi[za] != zb) { ok = false; break; }
      }
      if (!ok) continue;
      phi[x] = y;
      used[y] = true;
      mapped.push_back(x);
      if (go(pos + 1)) return true;
      mapped.pop_back();
      used[y] = false;
      phi[x] = -1;
    }
    return false;
  };
  if (go(0)) return phi;
  return std::nullopt;
}

// ---- semimodule carriers and congruences -----------------------------------

Carrier regular_carrier(const TablePtr& ring) {
  Carrier c;
  c.ring = ring;
  c.m = ring->order;
  c.add = ring->add;
  c.act = ring->mul;
  c.zero = ring->zero;
  c.labels.resize(c.m);
  for (int i = 0; i < c.m; ++i) c.labels[i] = i;
  return c;
}

Carrier right_ideal_carrier(const TablePtr& ring, int e) {
  if (e < 0 || e >= ring->order) fail(Err::InvalidTable, "idempotent index out of range");
  std::set<int> elems;
  for (int s = 0; s < ring->order; ++s) elems.insert(ring->mul[e][s]);
  Carrier c;
  c.ring = ring;
  c.labels.assign(elems.begin(), elems.end());
  c.m = static_cast<int>(c.labels.size());
  std::map<int, int> pos;
  for (int i = 0; i < c.m; ++i) pos[c.labels[i]] = i;
  c.add.assign(c.m, std::vector<int>(c.m));
  c.act.assign(c.m, std::vector<int>(ring->order));
  for (int i = 0; i < c.m; ++i) {
    for (int j = 0; j < c.m; ++j) c.add[i][j] = pos.at(ring->add[c.labels[i]][c.labels[j]]);
    for (int s = 0; s < ring->order; ++s) c.act[i][s] = pos.at(ring->mul[c.labels[i]][s]);
  }
  c.zero = pos.at(ring->zero);
  return c;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    return true;
  }
};

Partition canonical_partition(UnionFind& uf, int m) {
  Partition p(m);
  std::map<int, int> ids;
  for (int i = 0; i < m; ++i) {
    int r = uf.find(i);
    auto it = ids.find(r);
    if (it == ids.end()) it = ids.emplace(r, static_cast<int>(ids.size())).first;
    p[i] = it->second;
  }
  return p;
}

// smallest congruence containing the given pairs: close under adding a fixed
// element and under the right action
Partition congruence_closure(const Carrier& c, const std::vector<std::pair<int, int>>& seed) {
  UnionFind uf(c.m);
  std::vector<std::pair<int, int>> work;
  for (auto [x, y] : seed)
    if (uf.unite(x, y)) work.emplace_back(x, y);
  int r = static_cast<int>(c.act.empty() ? 0 : c.act[0].size());
  while (!work.empty()) {
    auto [x, y] = work.back();
    work.pop_back();
    for (int z = 0; z < c.m; ++z) {
      int u = c.add[x][z], v = c.add[y][z];
      if (uf.unite(u, v)) work.emplace_back(u, v);
    }
    for (int s = 0; s < r; ++s) {
      int u = c.act[x][s], v = c.act[y][s];
      if (uf.unite(u, v)) work.emplace_back(u, v);
    }
  }
  return canonical_partition(uf, c.m);
}

std::vector<std::pair<int, int>> partition_pairs(const Partition& p) {
  std::vector<std::pair<int, int>> out;
  std::map<int, int> first;
  for (int i = 0; i < static_cast<int>(p.size()); ++i) {
    auto it = first.find(p[i]);
    if (it == first.end())
      first.emplace(p[i], i);
    else
      out.emplace_back(it->second, i);
  }
  return out;
}

}  // namespace

std::vector<Partition> semimodule_congruences(const Carrier& c, int cap) {
  if (c.m > cap)
    fail(Err::CarrierTooLarge,
         "carrier size " + std::to_string(c.m) + " exceeds " + std::to_string(cap));
  std::set<Partition> found;
  Partition identity(c.m);
  for (int i = 0; i < c.m; ++i) identity[i] = i;
  found.insert(identity);
  std::vector<Partition> fresh;
  for (int x = 0; x < c.m; ++x)
    for (int y = x + 1; y < c.m; ++y) {
      Partition p = congruence_closure(c, {{x, y}});
      if (found.insert(p).second) fresh.push_back(p);
    }
  // close under pairwise join
  while (!fresh.empty()) {
    Partition p = fresh.back();
    fresh.pop_back();
    std::vector<Partition> snapshot(found.begin(), found.end());
    for (const auto& q : snapshot) {
      auto seed = partition_pairs(p);
      auto more = partition_pairs(q);
      seed.insert(seed.end(), more.begin(), more.end());
      Partition j = congruence_closure(c, seed);
      if (found.insert(j).second) fresh.push_back(j);
    }
  }
  return {found.begin(), found.end()};
}

bool is_congruence_simple(const Carrier& c) {
  if (c.m < 2) return false;
  for (int x = 0; x < c.m; ++x)
    for (int y = x + 1; y < c.m; ++y) {
      Partition p = congruence_closure(c, {{x, y}});
      for (int id : p)
        if (id != 0) return false;  // some principal congruence is not universal
    }
  return true;
}

// ---- decompositions --------------------------------------------------------

namespace {

std::vector<int> nonzero_idempotents(const FiniteSemiringTable& t) {
  std::vector<int> out;
  for (int e = 0; e < t.order; ++e)
    if (e != t.zero && t.mul[e][e] == e) out.push_back(e);
  return out;
}

// subsets of {0..pool-1} in (size, lexicographic) order
template <typename F>
void for_each_subset_by_size(int pool, F visit) {
  for (int k = 1; k <= pool; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (visit(idx)) return;
      int i = k - 1;
      while (i >= 0 && idx[i] == pool - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

}  // namespace

std::optional<std::vector<int>> congruence_semisimple_decompose(const FiniteSemiringTable& t,
                                                                int cap) {
  require_valid(t);
  require_order(t, cap);
  TablePtr ring = std::make_shared<FiniteSemiringTable>(t);
  std::vector<int> idem = nonzero_idempotents(t);
  std::optional<std::vector<int>> result;
  for_each_subset_by_size(static_cast<int>(idem.size()), [&](const std::vector<int>& pick) {
    std::vector<int> es;
    for (int i : pick) es.push_back(idem[i]);
    int sum = t.zero;
    for (int e : es) sum = t.add[sum][e];
    if (sum != t.one) return false;
    // the splitting map s -> (e_1 s, ..., e_k s) must be a bijection onto the
    // product of the right ideals
    std::vector<Carrier> ideals;
    long long prod = 1;
    for (int e : es) {
      ideals.push_back(right_ideal_carrier(ring, e));
      prod *= ideals.back().m;
    }
    if (prod != t.order) return false;
    std::set<std::vector<int>> images;
    for (int s = 0; s < t.order; ++s) {
      std::vector<int> img;
      for (int e : es) img.push_back(t.mul[e][s]);
      images.insert(img);
    }
    if (static_cast<int>(images.size()) != t.order) return false;
    for (const auto& ideal : ideals)
      if (!is_congruence_simple(ideal)) return false;
    result = es;
    return true;
  });
  return result;
}

std::optional<std::vector<SemisimpleFactor>> classify_semisimple(const FiniteSemiringTable& t,
                                                                 int cap) {
  require_valid(t);
  require_order(t, cap);
  if (t.order < 2) return std::nullopt;
  struct Atom {
    SemisimpleFactor f;
    FiniteSemiringTable table;
  };
  std::vector<Atom> atoms;
  for (int n = 1;; ++n) {
    long long ord = 1;
    bool fits = true;
    for (int i = 0; i < n * n && fits; ++i) {
      ord *= 2;
      if (ord > t.order) fits = false;
    }
    if (!fits) break;
    atoms.push_back({{true, 0, n}, matrix_semiring(bool_table(), n)});
  }
  auto is_prime_power = [](int q) {
    int p = 0;
    for (int d = 2; d * d <= q; ++d)
      if (q % d == 0) { p = d; break; }
    if (p == 0) return q >= 2;
    while (q % p == 0) q /= p;
    return q == 1;
  };
  for (int q = 2; q <= t.order; ++q) {
    if (!is_prime_power(q)) continue;
    for (int m = 1;; ++m) {
      long long ord = 1;
      bool fits = true;
      for (int i = 0; i < m * m && fits; ++i) {
        ord *= q;
        if (ord > t.order) fits = false;
      }
      if (!fits) break;
      atoms.push_back({{false, q, m}, matrix_semiring(gf_table(q), m)});
    }
  }
  std::vector<int> chosen;
  std::optional<std::vector<SemisimpleFactor>> result;
  std::function<bool(size_t, int)> go = [&](size_t start, int remaining) -> bool {
    if (remaining == 1) {
      if (chosen.empty()) return false;
      FiniteSemiringTable candidate = atoms[chosen[0]].table;
      for (size_t i = 1; i < chosen.size(); ++i)
        candidate = product_table(candidate, atoms[chosen[i]].table);
      if (!table_isomorphic(t, candidate)) return false;
      std::vector<SemisimpleFactor> fs;
      for (int i : chosen) fs.push_back(atoms[i].f);
      result = fs;
      return true;
    }
    for (size_t i = start; i < atoms.size(); ++i) {
      if (remaining % atoms[i].table.order != 0) continue;
      chosen.push_back(static_cast<int>(i));
      if (go(i, remaining / atoms[i].table.order)) return true;
      chosen.pop_back();
    }
    return false;
  };
  go(0, t.order);
  return result;
}

std::optional<std::vector<int>> primitive_orthogonal_units(const FiniteSemiringTable& t, int cap) {
  require_valid(t);
  require_order(t, cap);
  std::vector<int> idem = nonzero_idempotents(t);
  auto primitive = [&](int e) {
    for (int f : idem)
      for (int g : idem) {
        if (f >= g) continue;
        if (t.add[f][g] == e && t.mul[f][g] == t.zero && t.mul[g][f] == t.zero) return false;
      }
    return true;
  };
  std::vector<int> prim;
  for (int e : idem)
    if (primitive(e)) prim.push_back(e);
  std::optional<std::vector<int>> result;
  for_each_subset_by_size(static_cast<int>(prim.size()), [&](const std::vector<int>& pick) {
    std::vector<int> es;
    for (int i : pick) es.push_back(prim[i]);
    int sum = t.zero;
    for (int e : es) sum = t.add[sum][e];
    if (sum != t.one) return false;
    for (size_t i = 0; i < es.size(); ++i)
      for (size_t j = i + 1; j < es.size(); ++j)
        if (t.mul[es[i]][es[j]] != t.zero || t.mul[es[j]][es[i]] != t.zero) return false;
    result = es;
    return true;
  });
  return result;
}

}  // namespace semik
