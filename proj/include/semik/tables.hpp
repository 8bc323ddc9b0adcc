#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "semik/errors.hpp"

namespace semik {

inline constexpr int kMaxTableOrder = 64;

// A finite semiring given by explicit Cayley tables over indices 0..order-1.
struct FiniteSemiringTable {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> add;
  std::vector<std::vector<int>> mul;
  int zero = 0;
  int one = 0;
};

using TablePtr = std::shared_ptr<const FiniteSemiringTable>;

struct TableViolation {
  std::string axiom;       // which law failed
  std::array<int, 3> at;   // offending elements (unused slots -1)
};

// nullopt means every semiring axiom holds
std::optional<TableViolation> validate_table(const FiniteSemiringTable& t);

// ---- builders ------------------------------------------------------------

FiniteSemiringTable bool_table();
FiniteSemiringTable zmod_table(int n);
FiniteSemiringTable gf_table(int q);  // q a prime power <= 16
// n x n matrices over a base table; base^(n*n) must stay within the order cap
FiniteSemiringTable matrix_semiring(const FiniteSemiringTable& base, int n);
FiniteSemiringTable product_table(const FiniteSemiringTable& a, const FiniteSemiringTable& b);
FiniteSemiringTable chain_table(int n);           // 0 < ... < n-1, add=max, mul=min
FiniteSemiringTable truncated_nat_table(int cap); // naturals saturating at cap
FiniteSemiringTable opposite_table(const FiniteSemiringTable& t);

// isomorphism as unital semiring tables; mapping a-index -> b-index
std::optional<std::vector<int>> table_isomorphic(const FiniteSemiringTable& a,
                                                 const FiniteSemiringTable& b);

// ---- right semimodules over a finite semiring -----------------------------

// Carrier of a right semimodule: element list with restricted addition and
// the right action of the semiring.
struct Carrier {
  TablePtr ring;
  int m = 0;                          // number of module elements
  std::vector<std::vector<int>> add;  // m x m
  std::vector<std::vector<int>> act;  // m x |ring|
  int zero = 0;
  std::vector<int> labels;            // underlying ring elements, for reporting
};

Carrier regular_carrier(const TablePtr& ring);
Carrier right_ideal_carrier(const TablePtr& ring, int e);

// partition as canonical class-id vector (ids numbered by first occurrence)
using Partition = std::vector<int>;

std::vector<Partition> semimodule_congruences(const Carrier& c, int cap = 8);
bool is_congruence_simple(const Carrier& c);

// set of nonzero idempotents e_i with sum 1 whose right ideals decompose the
// semiring into congruence-simple summands; first hit in canonical subset
// order, nullopt when the search exhausts
std::optional<std::vector<int>> congruence_semisimple_decompose(const FiniteSemiringTable& t,
                                                                int cap = 16);

struct SemisimpleFactor {
  bool boolean = false;  // matrices over the two-element lattice, else a field
  int q = 0;             // field order when !boolean
  int n = 1;             // matrix size
};

// matches the table against products of matrix semirings over the two-element
// lattice and over finite fields; nullopt when no such product fits
std::optional<std::vector<SemisimpleFactor>> classify_semisimple(const FiniteSemiringTable& t,
                                                                 int cap = 16);

std::optional<std::vector<int>> primitive_orthogonal_units(const FiniteSemiringTable& t,
                                                           int cap = 16);

}  // namespace semik
