#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <optional>
#include <random>
#include <vector>

#include "doctest.h"
#include "semik/errors.hpp"
#include "semik/tropical.hpp"

using namespace semik;

namespace {

Trop tv(const char* s) { return *parse_trop(s); }

TropVec vec(std::initializer_list<const char*> xs) {
  TropVec v;
  for (auto* s : xs) v.push_back(tv(s));
  return v;
}

TropSpan span(int ambient, std::initializer_list<std::initializer_list<const char*>> gens) {
  TropSpan sp;
  sp.ambient = ambient;
  for (auto g : gens) sp.gens.push_back(vec(g));
  return sp;
}

// independent evaluator on optional rationals
using OptQ = std::optional<Rational>;

OptQ oq(const Trop& t) { return t.finite() ? OptQ(t.value()) : std::nullopt; }

TropVec eval_combine(const std::vector<TropVec>& gens, const TropVec& coeff, int ambient) {
  TropVec out(ambient, Trop::neg_inf());
  for (int i = 0; i < ambient; ++i) {
    OptQ best;
    for (size_t j = 0; j < gens.size(); ++j) {
      OptQ c = oq(coeff[j]), g = oq(gens[j][i]);
      if (!c || !g) continue;
      Rational s = *c + *g;
      if (!best || s > *best) best = s;
    }
    if (best) out[i] = Trop(*best);
  }
  return out;
}

TropVec random_vec(int dim, std::mt19937& rng) {
  TropVec v;
  for (int i = 0; i < dim; ++i) {
    if (rng() % 4 == 0) v.push_back(Trop::neg_inf());
    else {
      long num = (long)(rng() % 17) - 8;
      long den = 1 + (long)(rng() % 4);
      v.push_back(Trop(Rational(num, den)));
    }
  }
  return v;
}

TropSpan random_span(std::mt19937& rng, int max_ambient = 4, int max_gens = 4) {
  TropSpan sp;
  sp.ambient = 1 + (int)(rng() % max_ambient);
  int m = 1 + (int)(rng() % max_gens);
  for (int j = 0; j < m; ++j) sp.gens.push_back(random_vec(sp.ambient, rng));
  return sp;
}

}  // namespace

TEST_CASE("membership by residuation") {
  TropSpan sp = span(2, {{"0", "0"}, {"-1", "0"}});

  auto c = trop_membership(sp.gens[0], sp);
  REQUIRE(c.has_value());
  CHECK(eval_combine(sp.gens, *c, 2) == sp.gens[0]);

  // principal solution fails, so nothing does
  TropVec x = vec({"0", "-2"});
  CHECK(!trop_membership(x, sp).has_value());
  TropVec lam = principal_solution(x, sp.gens, 2);
  CHECK(lam == vec({"-2", "-2"}));
  CHECK(eval_combine(sp.gens, lam, 2) == vec({"-2", "-2"}));

  TropSpan single = span(2, {{"0", "0"}});
  auto c2 = trop_membership(vec({"-1", "-1"}), single);
  REQUIRE(c2.has_value());
  CHECK(*c2 == vec({"-1"}));

  CHECK_THROWS_AS(trop_membership(vec({"0"}), sp), Error);
}

TEST_CASE("membership is sound and complete on random spans") {
  std::mt19937 rng(7781);
  int hits = 0, misses = 0;
  for (int iter = 0; iter < 300; ++iter) {
    TropSpan sp = random_span(rng);
    // sound: any certificate re-evaluates to the query point
    TropVec probe = random_vec(sp.ambient, rng);
    if (auto c = trop_membership(probe, sp)) {
      CHECK(eval_combine(sp.gens, *c, sp.ambient) == probe);
      ++hits;
    } else {
      CHECK(eval_combine(sp.gens, principal_solution(probe, sp.gens, sp.ambient), sp.ambient) !=
            probe);
      ++misses;
    }
    // complete: true combinations are always certified
    TropVec coeff = random_vec((int)sp.gens.size(), rng);
    TropVec inside = eval_combine(sp.gens, coeff, sp.ambient);
    auto c3 = trop_membership(inside, sp);
    REQUIRE(c3.has_value());
    CHECK(eval_combine(sp.gens, *c3, sp.ambient) == inside);
  }
  CHECK(hits > 10);
  CHECK(misses > 10);
}

TEST_CASE("extremal generators keep exactly the needed ones") {
  CHECK(extremal_generators(span(2, {{"0", "0"}, {"-1", "-1"}})).gens ==
        span(2, {{"0", "0"}}).gens);
  CHECK(extremal_generators(span(2, {{"0", "0"}, {"-1", "0"}})).gens.size() == 2);

  TropSpan id3 = span(3, {{"0", "-inf", "-inf"}, {"-inf", "0", "-inf"}, {"-inf", "-inf", "0"}});
  CHECK(extremal_generators(id3).gens == id3.gens);

  // the surviving family spans the original set and vice versa
  std::mt19937 rng(99);
  for (int iter = 0; iter < 100; ++iter) {
    TropSpan sp = random_span(rng);
    TropSpan ext = extremal_generators(sp);
    CHECK(ext.gens.size() <= sp.gens.size());
    for (const auto& g : sp.gens) CHECK(trop_membership(g, ext).has_value());
    for (const auto& g : ext.gens) CHECK(trop_membership(g, sp).has_value());
  }
}

TEST_CASE("weak dimension equals the brute-force minimal subfamily") {
  std::mt19937 rng(24601);
  for (int iter = 0; iter < 120; ++iter) {
    TropSpan sp = random_span(rng);
    int m = (int)sp.gens.size();
    int best = m;
    for (int mask = 0; mask < (1 << m); ++mask) {
      TropSpan sub;
      sub.ambient = sp.ambient;
      for (int j = 0; j < m; ++j)
        if (mask & (1 << j)) sub.gens.push_back(sp.gens[j]);
      bool covers = true;
      for (int j = 0; j < m && covers; ++j) {
        if (mask & (1 << j)) continue;
        if (sub.gens.empty()) {
          covers = std::all_of(sp.gens[j].begin(), sp.gens[j].end(),
                               [](const Trop& t) { return !t.finite(); });
        } else {
          covers = trop_membership(sp.gens[j], sub).has_value();
        }
      }
      if (covers) best = std::min(best, (int)sub.gens.size());
    }
    CHECK(weak_dimension_trop(sp) == best);
  }
}

TEST_CASE("weak independence") {
  CHECK(is_weakly_independent({vec({"0", "0"})}, 2).independent);
  CHECK(is_weakly_independent({vec({"0", "-inf"}), vec({"-inf", "0"})}, 2).independent);

  auto dep = is_weakly_independent({vec({"0", "0"}), vec({"-1", "-1"})}, 2);
  REQUIRE(!dep.independent);
  // the reported combination reproduces the dependent generator
  std::vector<TropVec> fam = {vec({"0", "0"}), vec({"-1", "-1"})};
  std::vector<TropVec> rest;
  for (int j = 0; j < 2; ++j)
    if (j != dep.dependent_index) rest.push_back(fam[j]);
  CHECK(eval_combine(rest, dep.coeffs, 2) == fam[dep.dependent_index]);
}

TEST_CASE("freeness of square and thin spans") {
  for (int n : {1, 2, 3}) {
    TropSpan id;
    id.ambient = n;
    for (int j = 0; j < n; ++j) {
      TropVec g(n, Trop::neg_inf());
      g[j] = Trop::one();
      id.gens.push_back(g);
    }
    FreenessResult r = is_free_trop(id);
    CHECK(r.verdict == Freeness::Free);
    CHECK(r.rank == n);
  }

  FreenessResult single = is_free_trop(span(2, {{"0", "-3"}}));
  CHECK(single.verdict == Freeness::Free);
  CHECK(single.rank == 1);

  // two generators in ambient 3, each with a private coordinate
  FreenessResult thin = is_free_trop(span(3, {{"0", "-inf", "0"}, {"-inf", "0", "0"}}));
  CHECK(thin.verdict == Freeness::Free);
  CHECK(thin.rank == 2);

  // the zero span is free on the empty basis
  FreenessResult zero = is_free_trop(span(2, {{"-inf", "-inf"}}));
  CHECK(zero.verdict == Freeness::Free);
  CHECK(zero.rank == 0);
}

TEST_CASE("non-freeness witnesses re-verify") {
  for (const char* s : {"-1", "-2", "-1/2"}) {
    TropSpan sp = span(2, {{"0", "0"}, {s, "0"}});
    FreenessResult r = is_free_trop(sp);
    REQUIRE(r.verdict == Freeness::NotFree);
    REQUIRE(r.witness.has_value());
    auto [lhs, rhs] = *r.witness;
    CHECK(lhs != rhs);
    CHECK(eval_combine(r.basis, lhs, 2) == eval_combine(r.basis, rhs, 2));
  }
}

TEST_CASE("freeness verdicts are thread independent") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 40; ++iter) {
    TropSpan sp = random_span(rng);
    FreenessResult a = is_free_trop(sp, 4, 1);
    FreenessResult b = is_free_trop(sp, 4, 4);
    CHECK(a.verdict == b.verdict);
    CHECK(a.rank == b.rank);
    CHECK(a.witness.has_value() == b.witness.has_value());
    if (a.witness && b.witness) {
      CHECK(a.witness->first == b.witness->first);
      CHECK(a.witness->second == b.witness->second);
    }
    if (a.verdict == Freeness::NotFree) {
      auto [lhs, rhs] = *a.witness;
      CHECK(eval_combine(a.basis, lhs, sp.ambient) == eval_combine(a.basis, rhs, sp.ambient));
    }
  }
}

TEST_CASE("weak dimension is additive over direct sums") {
  std::mt19937 rng(60609);
  for (int iter = 0; iter < 40; ++iter) {
    TropSpan a = random_span(rng);
    TropSpan b = random_span(rng);
    TropSpan sum = span_direct_sum(a, b);
    CHECK(sum.ambient == a.ambient + b.ambient);
    CHECK(weak_dimension_trop(sum) == weak_dimension_trop(a) + weak_dimension_trop(b));
  }
}

TEST_CASE("span validation") {
  TropSpan bad;
  bad.ambient = 2;
  bad.gens.push_back(vec({"0"}));
  CHECK_THROWS_AS(validate_span(bad), Error);
}
