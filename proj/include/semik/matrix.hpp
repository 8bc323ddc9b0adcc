#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "semik/semiring.hpp"

namespace semik {

// Row-major matrix over a single kernel.  Immutable in spirit: operations
// return fresh values.
class SemiMatrix {
public:
  SemiMatrix(Kernel k, int rows, int cols, std::vector<Element> entries);

  static SemiMatrix filled(const Kernel& k, int rows, int cols, const Element& e);
  static SemiMatrix zero(const Kernel& k, int rows, int cols);
  static SemiMatrix identity(const Kernel& k, int n);

  const Kernel& kernel() const { return k_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const Element& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, Element v) { e_[static_cast<size_t>(i) * cols_ + j] = std::move(v); }

  friend bool operator==(const SemiMatrix& a, const SemiMatrix& b);
  friend bool operator!=(const SemiMatrix& a, const SemiMatrix& b) { return !(a == b); }

private:
  Kernel k_;
  int rows_;
  int cols_;
  std::vector<Element> e_;
};

SemiMatrix mat_mul(const SemiMatrix& a, const SemiMatrix& b);
SemiMatrix mat_add(const SemiMatrix& a, const SemiMatrix& b);
bool is_idempotent_matrix(const SemiMatrix& a);

struct ComplementResult {
  std::optional<SemiMatrix> complement;
  // when infeasible: entry that blocks any solution, with a short reason
  std::optional<std::pair<int, int>> blocked_at;
  std::string reason;
};

// Searches for an idempotent F with A + F = I and AF = FA = 0.  A must be a
// square idempotent; the kernel decides the strategy (residuation for the
// additively idempotent kernels, exact subtraction for NAT, bounded
// enumeration for TABLE).
ComplementResult strong_idempotent_complement(const SemiMatrix& a);

}  // namespace semik
