#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "semik/matrix.hpp"

namespace semik {

inline constexpr int kMaxModuleSize = 256;

// Finite semimodule over the two-element lattice: a finite join-semilattice
// with bottom, optionally carried by explicit 0/1 coordinate vectors.
struct BoolSemimodule {
  int n = 0;
  std::vector<std::vector<int>> join;  // n x n
  int bottom = 0;
  std::optional<std::vector<std::vector<uint8_t>>> coords;
};

struct ModuleViolation {
  std::string rule;
  std::array<int, 3> at;
};

std::optional<ModuleViolation> validate_module(const BoolSemimodule& m);

// builds the semilattice spanned by the given 0/1 vectors; the set must be
// closed under componentwise OR and contain the zero vector
BoolSemimodule module_from_coords(std::vector<std::vector<uint8_t>> vectors);

BoolSemimodule direct_sum(const BoolSemimodule& a, const BoolSemimodule& b);
std::optional<std::vector<int>> are_isomorphic(const BoolSemimodule& a, const BoolSemimodule& b);
bool is_projective(const BoolSemimodule& m);          // distributivity of the induced lattice
std::optional<int> is_free_bool(const BoolSemimodule& m);
BoolSemimodule column_span_bool(const SemiMatrix& a);  // BOOL kernel only
BoolSemimodule q_chain(int p);
BoolSemimodule powerset_module(int atoms);

std::vector<int> atoms_of(const BoolSemimodule& m);
int weak_dimension_bool(const BoolSemimodule& m);  // join-irreducible count

int cardinality_class(const BoolSemimodule& m);
enum class CardinalityVerdict { Distinct, Inconclusive };
CardinalityVerdict k0_distinct_by_cardinality(const BoolSemimodule& a, const BoolSemimodule& b);

}  // namespace semik
