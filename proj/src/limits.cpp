#include "semik/limits.hpp"

#include <algorithm>

#include "semik/errors.hpp"

namespace semik {

IntMatrix::IntMatrix(const std::vector<std::vector<Int>>& m) {
  rows = (int)m.size();
  cols = rows ? (int)m[0].size() : 0;
  a.reserve((size_t)rows * (size_t)cols);
  for (const auto& row : m) {
    if ((int)row.size() != cols) fail(Err::ShapeMismatch, "ragged matrix literal");
    a.insert(a.end(), row.begin(), row.end());
  }
}

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix mat_mul_int(const IntMatrix& f, const IntMatrix& g) {
  if (f.cols != g.rows)
    fail(Err::ShapeMismatch, "cannot compose a map out of dimension " + std::to_string(g.rows) +
                                 " with one into dimension " + std::to_string(f.cols));
  IntMatrix r(f.rows, g.cols);
  for (int i = 0; i < f.rows; ++i)
    for (int k = 0; k < f.cols; ++k) {
      const Int& fik = f.at(i, k);
      if (fik == 0) continue;
      for (int j = 0; j < g.cols; ++j) r.at(i, j) += fik * g.at(k, j);
    }
  return r;
}

std::vector<Int> mat_apply(const IntMatrix& m, const std::vector<Int>& v) {
  if ((int)v.size() != m.cols) fail(Err::ShapeMismatch, "vector length does not match the map");
  std::vector<Int> r((size_t)m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[(size_t)i] += m.at(i, j) * v[(size_t)j];
  return r;
}

bool nonnegative_entries(const IntMatrix& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](const Int& x) { return x >= 0; });
}

bool is_unital(const IntMatrix& m, const std::vector<Int>& u_src, const std::vector<Int>& u_dst) {
  if ((int)u_dst.size() != m.rows)
    fail(Err::ShapeMismatch, "target unit length does not match the map");
  return mat_apply(m, u_src) == u_dst;
}

int rational_rank(IntMatrix m) {
  int rank = 0;
  Int denom = 1;
  for (int col = 0, row = 0; col < m.cols && row < m.rows; ++col) {
    int piv = -1;
    for (int i = row; i < m.rows; ++i)
      if (m.at(i, col) != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != row)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(piv, j), m.at(row, j));
    for (int i = row + 1; i < m.rows; ++i) {
      for (int j = col + 1; j < m.cols; ++j)
        m.at(i, j) = (m.at(row, col) * m.at(i, j) - m.at(i, col) * m.at(row, j)) / denom;
      m.at(i, col) = 0;
    }
    denom = m.at(row, col);
    ++row;
    ++rank;
  }
  return rank;
}

void validate_system(const LimitSystem& sys) {
  if (sys.groups.empty()) fail(Err::ShapeMismatch, "a system needs at least one stage");
  if (sys.maps.size() + 1 != sys.groups.size())
    fail(Err::ShapeMismatch, "expected one connecting map per consecutive stage pair");
  for (size_t k = 0; k < sys.groups.size(); ++k) {
    const auto& g = sys.groups[k];
    if (g.rank < 1 || (int)g.unit.size() != g.rank)
      fail(Err::ShapeMismatch, "stage " + std::to_string(k) + " has a malformed unit");
    for (const Int& u : g.unit)
      if (u < 0) fail(Err::NegativeEntry, "stage " + std::to_string(k) + " unit has a negative entry");
  }
  for (size_t k = 0; k < sys.maps.size(); ++k) {
    const auto& m = sys.maps[k];
    if (m.cols != sys.groups[k].rank || m.rows != sys.groups[k + 1].rank)
      fail(Err::ShapeMismatch, "map " + std::to_string(k) + " does not fit its stages");
    if (!nonnegative_entries(m))
      fail(Err::NegativeEntry, "map " + std::to_string(k) + " has a negative entry");
    if (mat_apply(m, sys.groups[k].unit) != sys.groups[k + 1].unit)
      fail(Err::NotUnital, "map " + std::to_string(k) + " does not carry the unit to the unit");
  }
  if (sys.period) {
    int p = *sys.period;
    int L = (int)sys.maps.size();
    if (p < 1 || p > L) fail(Err::StageOutOfRange, "period must name existing trailing maps");
    if (sys.groups[(size_t)L].rank != sys.maps[(size_t)(L - p)].cols)
      fail(Err::ShapeMismatch, "periodic tail shapes do not chain");
  }
}

bool stage_has_map(const LimitSystem& sys, int k) {
  if (k < 0) return false;
  return k < (int)sys.maps.size() || sys.period.has_value();
}

const IntMatrix& map_at(const LimitSystem& sys, int k) {
  int L = (int)sys.maps.size();
  if (k >= 0 && k < L) return sys.maps[(size_t)k];
  if (k >= L && sys.period) {
    int p = *sys.period;
    return sys.maps[(size_t)(L - p + (k - L) % p)];
  }
  fail(Err::StageOutOfRange, "no connecting map declared at stage " + std::to_string(k));
}

OrderedGroup group_at(const LimitSystem& sys, int k) {
  int L = (int)sys.maps.size();
  if (k >= 0 && k <= L) return sys.groups[(size_t)k];
  if (k > L && sys.period) {
    std::vector<Int> u = sys.groups[(size_t)L].unit;
    for (int s = L; s < k; ++s) u = mat_apply(map_at(sys, s), u);
    return OrderedGroup{(int)u.size(), std::move(u)};
  }
  fail(Err::StageOutOfRange, "no stage " + std::to_string(k) + " in this system");
}

IntMatrix compose_range(const LimitSystem& sys, int from, int to) {
  if (from > to) fail(Err::StageOutOfRange, "composition range is reversed");
  IntMatrix acc = IntMatrix::identity(group_at(sys, from).rank);
  for (int s = from; s < to; ++s) acc = mat_mul_int(map_at(sys, s), acc);
  return acc;
}

namespace {

void check_element(const LimitSystem& sys, const LimitElement& e) {
  OrderedGroup g = group_at(sys, e.stage);  // throws StageOutOfRange when undeclared
  if ((int)e.v.size() != g.rank)
    fail(Err::ShapeMismatch, "element at stage " + std::to_string(e.stage) + " has the wrong length");
}

bool tail_injective(const LimitSystem& sys) {
  if (!sys.period) return false;
  int L = (int)sys.maps.size(), p = *sys.period;
  for (int k = L - p; k < L; ++k) {
    const IntMatrix& m = sys.maps[(size_t)k];
    if (rational_rank(m) != m.cols) return false;
  }
  return true;
}

}  // namespace

EqResult limit_equal(const LimitSystem& sys, const LimitElement& x, const LimitElement& y,
                     int depth) {
  validate_system(sys);
  check_element(sys, x);
  check_element(sys, y);
  if (depth < 0) fail(Err::ArgumentTooSmall, "depth must be nonnegative");

  int k = std::max(x.stage, y.stage);
  std::vector<Int> a = x.v, b = y.v;
  for (int s = x.stage; s < k; ++s) a = mat_apply(map_at(sys, s), a);
  for (int s = y.stage; s < k; ++s) b = mat_apply(map_at(sys, s), b);

  bool inj_tail = tail_injective(sys);
  int tail_start = sys.period ? (int)sys.maps.size() - *sys.period : -1;

  for (int t = 0;; ++t) {
    if (a == b) return {EqVerdict::Equal, k};
    if (inj_tail && k >= tail_start) return {EqVerdict::Distinct, k};
    if (t == depth || !stage_has_map(sys, k)) return {EqVerdict::Unknown, -1};
    a = mat_apply(map_at(sys, k), a);
    b = mat_apply(map_at(sys, k), b);
    ++k;
  }
}

PosResult limit_positive(const LimitSystem& sys, const LimitElement& x, int depth) {
  validate_system(sys);
  check_element(sys, x);
  if (depth < 0) fail(Err::ArgumentTooSmall, "depth must be nonnegative");

  int k = x.stage;
  std::vector<Int> a = x.v;
  for (int t = 0;; ++t) {
    if (std::all_of(a.begin(), a.end(), [](const Int& c) { return c >= 0; }))
      return {PosVerdict::Positive, k};
    if (t == depth) return {PosVerdict::NotWithinDepth, -1};
    if (!stage_has_map(sys, k)) return {PosVerdict::Unknown, -1};
    a = mat_apply(map_at(sys, k), a);
    ++k;
  }
}

}  // namespace semik
