#include "semik/boolmod.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "semik/errors.hpp"

namespace semik {

namespace {

bool le(const BoolSemimodule& m, int x, int y) { return m.join[x][y] == y; }

std::vector<uint8_t> vec_or(const std::vector<uint8_t>& a, const std::vector<uint8_t>& b) {
  std::vector<uint8_t> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] | b[i];
  return r;
}

}  // namespace

std::optional<ModuleViolation> validate_module(const BoolSemimodule& m) {
  if (m.n < 1 || (int)m.join.size() != m.n) return ModuleViolation{"shape", {-1, -1, -1}};
  for (int x = 0; x < m.n; ++x) {
    if ((int)m.join[x].size() != m.n) return ModuleViolation{"shape", {x, -1, -1}};
    for (int y = 0; y < m.n; ++y)
      if (m.join[x][y] < 0 || m.join[x][y] >= m.n) return ModuleViolation{"shape", {x, y, -1}};
  }
  if (m.bottom < 0 || m.bottom >= m.n) return ModuleViolation{"shape", {m.bottom, -1, -1}};
  for (int x = 0; x < m.n; ++x)
    if (m.join[x][x] != x) return ModuleViolation{"join-idempotent", {x, -1, -1}};
  for (int x = 0; x < m.n; ++x)
    for (int y = x + 1; y < m.n; ++y)
      if (m.join[x][y] != m.join[y][x]) return ModuleViolation{"join-commutative", {x, y, -1}};
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y)
      for (int z = 0; z < m.n; ++z)
        if (m.join[m.join[x][y]][z] != m.join[x][m.join[y][z]])
          return ModuleViolation{"join-associative", {x, y, z}};
  for (int x = 0; x < m.n; ++x)
    if (m.join[m.bottom][x] != x) return ModuleViolation{"bottom-neutral", {x, -1, -1}};
  if (m.coords) {
    const auto& c = *m.coords;
    if ((int)c.size() != m.n) return ModuleViolation{"coords-shape", {-1, -1, -1}};
    size_t w = c.empty() ? 0 : c[0].size();
    for (int x = 0; x < m.n; ++x) {
      if (c[x].size() != w) return ModuleViolation{"coords-shape", {x, -1, -1}};
      for (uint8_t b : c[x])
        if (b > 1) return ModuleViolation{"coords-shape", {x, -1, -1}};
    }
    for (int x = 0; x < m.n; ++x)
      for (int y = x + 1; y < m.n; ++y)
        if (c[x] == c[y]) return ModuleViolation{"coords-distinct", {x, y, -1}};
    for (int x = 0; x < m.n; ++x)
      for (int y = 0; y < m.n; ++y)
        if (c[m.join[x][y]] != vec_or(c[x], c[y])) return ModuleViolation{"coords-join", {x, y, -1}};
  }
  return std::nullopt;
}

BoolSemimodule module_from_coords(std::vector<std::vector<uint8_t>> vectors) {
  std::sort(vectors.begin(), vectors.end());
  vectors.erase(std::unique(vectors.begin(), vectors.end()), vectors.end());
  if (vectors.empty() || (int)vectors.size() > kMaxModuleSize)
    fail(Err::CarrierTooLarge, "coordinate family is empty or exceeds " + std::to_string(kMaxModuleSize) + " elements");

  BoolSemimodule m;
  m.n = (int)vectors.size();
  std::map<std::vector<uint8_t>, int> idx;
  for (int i = 0; i < m.n; ++i) idx[vectors[i]] = i;
  m.join.assign(m.n, std::vector<int>(m.n, 0));
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y) {
      auto it = idx.find(vec_or(vectors[x], vectors[y]));
      if (it == idx.end())
        fail(Err::MalformedFile, "coordinate family is not closed under componentwise join");
      m.join[x][y] = it->second;
    }
  std::vector<uint8_t> zero(vectors[0].size(), 0);
  auto it = idx.find(zero);
  if (it == idx.end()) fail(Err::MalformedFile, "coordinate family lacks the zero vector");
  m.bottom = it->second;
  m.coords = std::move(vectors);
  return m;
}

BoolSemimodule direct_sum(const BoolSemimodule& a, const BoolSemimodule& b) {
  if (a.n * b.n > kMaxModuleSize)
    fail(Err::CarrierTooLarge, "direct sum would have " + std::to_string(a.n * b.n) + " elements");
  BoolSemimodule m;
  m.n = a.n * b.n;
  m.join.assign(m.n, std::vector<int>(m.n, 0));
  for (int x = 0; x < m.n; ++x)
    for (int y = 0; y < m.n; ++y) {
      int xi = x / b.n, xj = x % b.n, yi = y / b.n, yj = y % b.n;
      m.join[x][y] = a.join[xi][yi] * b.n + b.join[xj][yj];
    }
  m.bottom = a.bottom * b.n + b.bottom;
  if (a.coords && b.coords) {
    std::vector<std::vector<uint8_t>> c(m.n);
    for (int x = 0; x < m.n; ++x) {
      c[x] = (*a.coords)[x / b.n];
      const auto& tail = (*b.coords)[x % b.n];
      c[x].insert(c[x].end(), tail.begin(), tail.end());
    }
    m.coords = std::move(c);
  }
  return m;
}

namespace {

std::pair<std::vector<int>, std::vector<int>> height_and_downset(const BoolSemimodule& m) {
  int n = m.n;
  std::vector<int> down(n, 0), height(n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (le(m, y, x)) ++down[x];
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return down[a] < down[b]; });
  for (int x : order)
    for (int y = 0; y < n; ++y)
      if (y != x && le(m, y, x)) height[x] = std::max(height[x], height[y] + 1);
  return {down, height};
}

// order-theoretic signatures refined until stable, then backtracking; both
// modules share one id dictionary so equal classes get equal numbers
std::pair<std::vector<int>, std::vector<int>> joint_module_classes(const BoolSemimodule& a,
                                                                   const BoolSemimodule& b) {
  auto [da, ha] = height_and_downset(a);
  auto [db, hb] = height_and_downset(b);
  std::vector<int> ca(a.n), cb(b.n);
  {
    std::map<std::pair<int, int>, int> ids;
    for (int x = 0; x < a.n; ++x) {
      auto [it, _] = ids.emplace(std::make_pair(da[x], ha[x]), (int)ids.size());
      ca[x] = it->second;
    }
    for (int x = 0; x < b.n; ++x) {
      auto [it, _] = ids.emplace(std::make_pair(db[x], hb[x]), (int)ids.size());
      cb[x] = it->second;
    }
  }
  using Sig = std::pair<int, std::vector<std::pair<int, int>>>;
  auto signature = [](const BoolSemimodule& m, const std::vector<int>& cls, int x) {
    Sig s;
    s.first = cls[x];
    for (int y = 0; y < m.n; ++y) s.second.push_back({cls[y], cls[m.join[x][y]]});
    std::sort(s.second.begin(), s.second.end());
    return s;
  };
  for (int round = 0; round < a.n + b.n; ++round) {
    std::map<Sig, int> ids;
    std::vector<int> na(a.n), nb(b.n);
    for (int x = 0; x < a.n; ++x) {
      auto [it, _] = ids.emplace(signature(a, ca, x), (int)ids.size());
      na[x] = it->second;
    }
    for (int x = 0; x < b.n; ++x) {
      auto [it, _] = ids.emplace(signature(b, cb, x), (int)ids.size());
      nb[x] = it->second;
    }
    if (na == ca && nb == cb) break;
    ca = na;
    cb = nb;
  }
  return {ca, cb};
}

bool extend_module_iso(const BoolSemimodule& a, const BoolSemimodule& b,
                       const std::vector<int>& ca, const std::vector<int>& cb,
                       std::vector<int>& map, std::vector<char>& used, int pos) {
  int n = a.n;
  if (pos == n) {
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (map[a.join[x][y]] != b.join[map[x]][map[y]]) return false;
    return true;
  }
  for (int img = 0; img < n; ++img) {
    if (used[img] || cb[img] != ca[pos]) continue;
    map[pos] = img;
    bool ok = true;
    for (int y = 0; y <= pos && ok; ++y) {
      int j = a.join[pos][y];
      if (j > pos) continue;
      int lhs = (j == pos) ? img : map[j];
      int rhs = b.join[img][y == pos ? img : map[y]];
      if (lhs != rhs) ok = false;
    }
    if (ok) {
      used[img] = 1;
      if (extend_module_iso(a, b, ca, cb, map, used, pos + 1)) return true;
      used[img] = 0;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> are_isomorphic(const BoolSemimodule& a, const BoolSemimodule& b) {
  if (a.n != b.n) return std::nullopt;
  if (a.n > kMaxModuleSize) fail(Err::CarrierTooLarge, "semilattice exceeds the size bound");
  auto [ca, cb] = joint_module_classes(a, b);
  std::map<int, int> ha, hb;
  for (int c : ca) ++ha[c];
  for (int c : cb) ++hb[c];
  if (ha != hb) return std::nullopt;
  std::vector<int> map(a.n, -1);
  std::vector<char> used(a.n, 0);
  if (extend_module_iso(a, b, ca, cb, map, used, 0)) return map;
  return std::nullopt;
}

bool is_projective(const BoolSemimodule& m) {
  int n = m.n;
  // meets exist in any finite join-semilattice with bottom: the join of all
  // common lower bounds is itself a lower bound exactly when the lattice is
  // well behaved, so compute and check
  std::vector<std::vector<int>> meet(n, std::vector<int>(n, m.bottom));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int acc = m.bottom;
      for (int z = 0; z < n; ++z)
        if (le(m, z, x) && le(m, z, y)) acc = m.join[acc][z];
      if (!le(m, acc, x) || !le(m, acc, y)) return false;
      meet[x][y] = acc;
    }
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (meet[x][m.join[y][z]] != m.join[meet[x][y]][meet[x][z]]) return false;
  return true;
}

std::vector<int> atoms_of(const BoolSemimodule& m) {
  std::vector<int> atoms;
  for (int x = 0; x < m.n; ++x) {
    if (x == m.bottom) continue;
    bool atom = true;
    for (int y = 0; y < m.n && atom; ++y)
      if (y != x && y != m.bottom && le(m, y, x)) atom = false;
    if (atom) atoms.push_back(x);
  }
  return atoms;
}

BoolSemimodule powerset_module(int atoms) {
  if (atoms < 0 || atoms > 8) fail(Err::CarrierTooLarge, "powerset rank out of range");
  std::vector<std::vector<uint8_t>> vecs;
  for (int s = 0; s < (1 << atoms); ++s) {
    std::vector<uint8_t> v(atoms, 0);
    for (int i = 0; i < atoms; ++i) v[i] = (s >> i) & 1;
    vecs.push_back(std::move(v));
  }
  if (atoms == 0) vecs.assign(1, std::vector<uint8_t>{});
  return module_from_coords(std::move(vecs));
}

std::optional<int> is_free_bool(const BoolSemimodule& m) {
  auto atoms = atoms_of(m);
  int a = (int)atoms.size();
  if (a > 8) return std::nullopt;
  if (m.n != (1 << a)) return std::nullopt;
  if (are_isomorphic(m, powerset_module(a))) return a;
  return std::nullopt;
}

BoolSemimodule column_span_bool(const SemiMatrix& a) {
  if (a.kernel().tag() != KernelTag::Bool)
    fail(Err::KernelMismatch, "column spans are computed over the two-element kernel");
  std::set<std::vector<uint8_t>> span;
  span.insert(std::vector<uint8_t>(a.rows(), 0));
  std::vector<std::vector<uint8_t>> work;
  for (int j = 0; j < a.cols(); ++j) {
    std::vector<uint8_t> col(a.rows());
    for (int i = 0; i < a.rows(); ++i) col[i] = a.at(i, j).as_bool() ? 1 : 0;
    if (span.insert(col).second) work.push_back(col);
  }
  while (!work.empty()) {
    auto v = work.back();
    work.pop_back();
    std::vector<std::vector<uint8_t>> snapshot(span.begin(), span.end());
    for (const auto& w : snapshot) {
      auto u = vec_or(v, w);
      if ((int)span.size() >= kMaxModuleSize && !span.count(u))
        fail(Err::CarrierTooLarge, "column span exceeds " + std::to_string(kMaxModuleSize) + " elements");
      if (span.insert(u).second) work.push_back(u);
    }
  }
  return module_from_coords({span.begin(), span.end()});
}

BoolSemimodule q_chain(int p) {
  if (p < 2) fail(Err::ArgumentTooSmall, "chains need at least two elements");
  if (p > kMaxModuleSize) fail(Err::CarrierTooLarge, "chain exceeds the size bound");
  std::vector<std::vector<uint8_t>> vecs(p, std::vector<uint8_t>(p - 1, 0));
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < i; ++j) vecs[i][j] = 1;
  return module_from_coords(std::move(vecs));
}

int weak_dimension_bool(const BoolSemimodule& m) {
  int count = 0;
  for (int x = 0; x < m.n; ++x) {
    if (x == m.bottom) continue;
    bool reducible = false;
    for (int a = 0; a < m.n && !reducible; ++a) {
      if (a == x || !le(m, a, x)) continue;
      for (int b = a + 1; b < m.n && !reducible; ++b) {
        if (b == x || !le(m, b, x)) continue;
        if (m.join[a][b] == x) reducible = true;
      }
    }
    if (!reducible) ++count;
  }
  return count;
}

int cardinality_class(const BoolSemimodule& m) { return m.n; }

CardinalityVerdict k0_distinct_by_cardinality(const BoolSemimodule& a, const BoolSemimodule& b) {
  return cardinality_class(a) != cardinality_class(b) ? CardinalityVerdict::Distinct
                                                      : CardinalityVerdict::Inconclusive;
}

}  // namespace semik
