#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "semik/scalars.hpp"

namespace semik {

using TropVec = std::vector<Trop>;

// Finitely generated sub-semimodule of the max-plus space of a fixed ambient
// dimension, presented by its generating vectors.
struct TropSpan {
  int ambient = 0;
  std::vector<TropVec> gens;
};

void validate_span(const TropSpan& sp);  // throws on shape defects

// y_i = max_j (coeff_j + gens_j[i])
TropVec trop_combine(const std::vector<TropVec>& gens, const TropVec& coeff, int ambient);

// largest coefficient vector with combine(gens, c) <= x, componentwise
TropVec principal_solution(const TropVec& x, const std::vector<TropVec>& gens, int ambient);

// membership test by residuation: a certificate of coefficients, or nothing
std::optional<TropVec> trop_membership(const TropVec& x, const TropSpan& sp);

// minimal generating family: drops every generator contained in the span of
// the others, keeping the surviving generators in their original order
TropSpan extremal_generators(const TropSpan& sp);

int weak_dimension_trop(const TropSpan& sp);

struct IndependenceResult {
  bool independent = true;
  int dependent_index = -1;   // valid when !independent
  TropVec coeffs;             // expresses gens[dependent_index] over the rest
};
IndependenceResult is_weakly_independent(const std::vector<TropVec>& fam, int ambient);

enum class Freeness { Free, NotFree, Unknown };

struct FreenessResult {
  Freeness verdict = Freeness::Unknown;
  int rank = -1;                                    // valid when Free
  std::optional<std::pair<TropVec, TropVec>> witness;  // two coefficient vectors
                                                       // with equal combinations
  std::vector<TropVec> basis;                       // the extremal family tested
};

// probe_depth controls the finite coefficient grid {0,-1,...,-depth,-inf};
// threads > 1 splits the grid scan, the outcome is identical for any count
FreenessResult is_free_trop(const TropSpan& sp, int probe_depth = 6, int threads = 1);

TropSpan span_direct_sum(const TropSpan& a, const TropSpan& b);

}  // namespace semik
