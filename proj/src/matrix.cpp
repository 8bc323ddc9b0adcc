#include "semik/matrix.hpp"

#include <functional>

namespace semik {

SemiMatrix::SemiMatrix(Kernel k, int rows, int cols, std::vector<Element> entries)
    : k_(std::move(k)), rows_(rows), cols_(cols), e_(std::move(entries)) {
  if (rows_ < 1 || cols_ < 1) fail(Err::DimensionMismatch, "matrix dimensions must be positive");
  if (e_.size() != static_cast<size_t>(rows_) * cols_)
    fail(Err::DimensionMismatch, "entry count does not match rows*cols");
  for (const auto& x : e_)
    if (x.tag() != k_.tag()) fail(Err::KernelMismatch, "entry kernel mismatch");
}

SemiMatrix SemiMatrix::filled(const Kernel& k, int rows, int cols, const Element& e) {
  return SemiMatrix(k, rows, cols, std::vector<Element>(static_cast<size_t>(rows) * cols, e));
}

SemiMatrix SemiMatrix::zero(const Kernel& k, int rows, int cols) {
  return filled(k, rows, cols, k.zero());
}

SemiMatrix SemiMatrix::identity(const Kernel& k, int n) {
  SemiMatrix m = zero(k, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, k.one());
  return m;
}

bool operator==(const SemiMatrix& a, const SemiMatrix& b) {
  return a.k_ == b.k_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
}

SemiMatrix mat_mul(const SemiMatrix& a, const SemiMatrix& b) {
  if (a.kernel() != b.kernel()) fail(Err::KernelMismatch, "mat_mul kernels differ");
  if (a.cols() != b.rows()) fail(Err::DimensionMismatch, "mat_mul inner dimensions differ");
  const Kernel& k = a.kernel();
  SemiMatrix out = SemiMatrix::zero(k, a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      Element acc = k.zero();
      for (int t = 0; t < a.cols(); ++t) acc = k.add(acc, k.mul(a.at(i, t), b.at(t, j)));
      out.set(i, j, std::move(acc));
    }
  return out;
}

SemiMatrix mat_add(const SemiMatrix& a, const SemiMatrix& b) {
  if (a.kernel() != b.kernel()) fail(Err::KernelMismatch, "mat_add kernels differ");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(Err::DimensionMismatch, "mat_add shapes differ");
  const Kernel& k = a.kernel();
  SemiMatrix out = SemiMatrix::zero(k, a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.set(i, j, k.add(a.at(i, j), b.at(i, j)));
  return out;
}

bool is_idempotent_matrix(const SemiMatrix& a) {
  if (a.rows() != a.cols()) fail(Err::NotSquare, "idempotency needs a square matrix");
  return mat_mul(a, a) == a;
}

namespace {

bool complement_checks_out(const SemiMatrix& a, const SemiMatrix& f) {
  const Kernel& k = a.kernel();
  int n = a.rows();
  SemiMatrix zero = SemiMatrix::zero(k, n, n);
  return mat_add(a, f) == SemiMatrix::identity(k, n) && mat_mul(a, f) == zero &&
         mat_mul(f, a) == zero && mat_mul(f, f) == f;
}

ComplementResult complement_residuated(const SemiMatrix& a) {
  // A + F = I forces every off-diagonal of A to be the additive zero, since
  // join reaches the bottom only from the bottom.  The diagonal candidate is
  // then unique.
  ComplementResult res;
  const Kernel& k = a.kernel();
  int n = a.rows();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && a.at(i, j) != k.zero()) {
        res.blocked_at = {i, j};
        res.reason = "off-diagonal entry is not the additive zero";
        return res;
      }
  SemiMatrix f = SemiMatrix::zero(k, n, n);
  for (int i = 0; i < n; ++i)
    if (a.at(i, i) == k.zero()) f.set(i, i, k.one());
  if (!complement_checks_out(a, f)) {
    res.reason = "no candidate satisfies the complement identities";
    return res;
  }
  res.complement = std::move(f);
  return res;
}

ComplementResult complement_nat(const SemiMatrix& a) {
  // addition is cancellative, so F = I - A entrywise or nothing
  ComplementResult res;
  const Kernel& k = a.kernel();
  int n = a.rows();
  SemiMatrix f = SemiMatrix::zero(k, n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Int bound = (i == j) ? 1 : 0;
      const Int& v = a.at(i, j).as_nat();
      if (v > bound) {
        res.blocked_at = {i, j};
        res.reason = "entry exceeds the identity entry";
        return res;
      }
      f.set(i, j, Element::nat(bound - v));
    }
  if (!complement_checks_out(a, f)) {
    res.reason = "no candidate satisfies the complement identities";
    return res;
  }
  res.complement = std::move(f);
  return res;
}

ComplementResult complement_table(const SemiMatrix& a) {
  // per-entry feasible sets for A + F = I, then backtracking over their
  // product with the full identity check at the leaves
  ComplementResult res;
  const Kernel& k = a.kernel();
  const auto& t = *k.table_ptr();
  int n = a.rows();
  std::vector<std::vector<int>> feasible(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int target = (i == j) ? t.one : t.zero;
      auto& slot = feasible[static_cast<size_t>(i) * n + j];
      for (int x = 0; x < t.order; ++x)
        if (t.add[a.at(i, j).as_table()][x] == target) slot.push_back(x);
      if (slot.empty()) {
        res.blocked_at = {i, j};
        res.reason = "no table element completes this entry to the identity";
        return res;
      }
    }
  SemiMatrix f = SemiMatrix::zero(k, n, n);
  std::function<bool(size_t)> go = [&](size_t pos) -> bool {
    if (pos == feasible.size()) return complement_checks_out(a, f);
    for (int x : feasible[pos]) {
      f.set(static_cast<int>(pos) / n, static_cast<int>(pos) % n, Element::table(x));
      if (go(pos + 1)) return true;
    }
    return false;
  };
  if (go(0)) {
    res.complement = std::move(f);
    return res;
  }
  res.reason = "exhaustive enumeration found no complement";
  return res;
}

}  // namespace

ComplementResult strong_idempotent_complement(const SemiMatrix& a) {
  if (a.rows() != a.cols()) fail(Err::NotSquare, "complement needs a square matrix");
  if (!is_idempotent_matrix(a)) fail(Err::NotIdempotent, "matrix is not idempotent");
  switch (a.kernel().tag()) {
    case KernelTag::Bool:
    case KernelTag::Trop: return complement_residuated(a);
    case KernelTag::Nat: return complement_nat(a);
    case KernelTag::Table: return complement_table(a);
  }
  fail(Err::KernelMismatch, "bad tag");
}

}  // namespace semik
