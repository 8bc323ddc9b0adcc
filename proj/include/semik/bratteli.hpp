#pragma once

#include <optional>
#include <string>
#include <vector>

#include "semik/limits.hpp"

namespace semik {

// Finite product of matrix algebras over a ground semifield, recorded by the
// block sizes; the field tag is metadata and never enters the invariants.
struct MatricialAlgebra {
  std::string field = "BOOL";
  std::vector<Int> sizes;
};

OrderedGroup sk0_matricial(const MatricialAlgebra& alg);

struct BratteliPresentation {
  std::string field = "BOOL";
  std::vector<std::vector<Int>> levels;  // size vectors, one per stage
  std::vector<IntMatrix> steps;          // multiplicity matrices between stages
  std::optional<int> period;             // last `period` steps repeat forever
};

void validate_bratteli(const BratteliPresentation& b);  // UnitalityViolation(k) etc.
LimitSystem sk0_ultramatricial(const BratteliPresentation& b);

// a presentation without a declared period denotes the finite diagram; its
// limit equals the last stage, which an appended identity tail makes explicit
BratteliPresentation normalize_presentation(const BratteliPresentation& b);

struct EmbeddingPlan {
  IntMatrix mult;
  std::vector<std::string> blocks;  // one line per target factor
};
EmbeddingPlan realize_morphism(const std::vector<Int>& src_sizes,
                               const std::vector<Int>& dst_sizes, const IntMatrix& m);

// complete isomorphism invariant for products of simple factors
std::vector<Int> congsemisimple_invariant(std::vector<Int> sizes);

enum class IsoVerdict { Iso, NotIso, Unknown };

// Zigzag intertwining: alphas[k] maps stage s1[k] of the first diagram to
// stage s2[k] of the second, betas[k] comes back to stage s1[k+1], and the
// final state repeats the state at loop_from, so the pattern extends forever.
struct IsoWitness {
  std::vector<int> s1, s2;
  std::vector<IntMatrix> alphas;  // one per visited stage pair
  std::vector<IntMatrix> betas;   // one fewer
  int loop_from = -1;
};

struct IsoCertificate {
  std::string kind;  // stabilized-rank | supernatural | stabilized-unit | tail-finiteness
  std::string lhs, rhs;
};

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::Unknown;
  std::optional<IsoWitness> witness;
  std::optional<IsoCertificate> certificate;
};

struct IsoOptions {
  int depth = 6;              // largest stage index explored
  Int entry_bound = 0;        // 0: (max unit entry within depth)^2
  long long node_budget = 200000;
};

IsoResult iso_ultramatricial(const BratteliPresentation& a, const BratteliPresentation& b,
                             const IsoOptions& opt);
IsoResult iso_ultramatricial(const BratteliPresentation& a, const BratteliPresentation& b,
                             int depth = 6);

// re-checks every witness equation against the normalized presentations
bool validate_iso_witness(const BratteliPresentation& a, const BratteliPresentation& b,
                          const IsoWitness& w);

}  // namespace semik
