#pragma once

#include <optional>
#include <vector>

#include "semik/scalars.hpp"

namespace semik {

// Simplicial ordered group: free abelian of the given rank, positive cone the
// nonnegative orthant, with a distinguished order unit.
struct OrderedGroup {
  int rank = 0;
  std::vector<Int> unit;
};

struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a((size_t)r * (size_t)c) {}
  explicit IntMatrix(const std::vector<std::vector<Int>>& m);

  Int& at(int i, int j) { return a[(size_t)i * (size_t)cols + (size_t)j]; }
  const Int& at(int i, int j) const { return a[(size_t)i * (size_t)cols + (size_t)j]; }

  static IntMatrix identity(int n);
  friend bool operator==(const IntMatrix& x, const IntMatrix& y) {
    return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
  }
};

IntMatrix mat_mul_int(const IntMatrix& f, const IntMatrix& g);  // f after g
std::vector<Int> mat_apply(const IntMatrix& m, const std::vector<Int>& v);
bool nonnegative_entries(const IntMatrix& m);
bool is_unital(const IntMatrix& m, const std::vector<Int>& u_src, const std::vector<Int>& u_dst);
int rational_rank(IntMatrix m);  // exact, fraction-free elimination

// Inductive sequence of simplicial groups with unital nonnegative connecting
// maps; an optional period p declares that the last p maps repeat forever.
struct LimitSystem {
  std::vector<OrderedGroup> groups;  // stages 0..L
  std::vector<IntMatrix> maps;       // maps[k] : stage k -> stage k+1, L of them
  std::optional<int> period;
};

void validate_system(const LimitSystem& sys);
bool stage_has_map(const LimitSystem& sys, int k);
const IntMatrix& map_at(const LimitSystem& sys, int k);  // StageOutOfRange if undefined
OrderedGroup group_at(const LimitSystem& sys, int k);
IntMatrix compose_range(const LimitSystem& sys, int from, int to);  // stage from -> to

struct LimitElement {
  int stage = 0;
  std::vector<Int> v;
};

enum class EqVerdict { Equal, Distinct, Unknown };
struct EqResult {
  EqVerdict verdict = EqVerdict::Unknown;
  int stage = -1;  // first agreeing stage / first certified-distinct stage
};
EqResult limit_equal(const LimitSystem& sys, const LimitElement& x, const LimitElement& y,
                     int depth = 32);

enum class PosVerdict { Positive, NotWithinDepth, Unknown };
struct PosResult {
  PosVerdict verdict = PosVerdict::Unknown;
  int stage = -1;  // stage where positivity was observed
};
PosResult limit_positive(const LimitSystem& sys, const LimitElement& x, int depth = 32);

}  // namespace semik
