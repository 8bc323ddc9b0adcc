#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "doctest.h"
#include "semik/tables.hpp"

using namespace semik;

namespace {

// re-evaluates the named law at the reported elements, so a violation report
// has to point at a genuine counterexample
bool violation_holds(const FiniteSemiringTable& t, const TableViolation& v) {
  const auto [a, b, c] = v.at;
  const auto& A = t.add;
  const auto& M = t.mul;
  if (v.axiom == "shape") return true;
  if (v.axiom == "add-associative") return A[A[a][b]][c] != A[a][A[b][c]];
  if (v.axiom == "add-commutative") return A[a][b] != A[b][a];
  if (v.axiom == "add-identity") return A[a][t.zero] != a;
  if (v.axiom == "mul-associative") return M[M[a][b]][c] != M[a][M[b][c]];
  if (v.axiom == "mul-identity") return M[a][t.one] != a || M[t.one][a] != a;
  if (v.axiom == "left-distributive") return M[a][A[b][c]] != A[M[a][b]][M[a][c]];
  if (v.axiom == "right-distributive") return M[A[a][b]][c] != A[M[a][c]][M[b][c]];
  if (v.axiom == "zero-absorbing") return M[a][t.zero] != t.zero || M[t.zero][a] != t.zero;
  return false;
}

FiniteSemiringTable relabel(const FiniteSemiringTable& t, const std::vector<int>& sigma) {
  FiniteSemiringTable r = t;
  r.name = t.name + "'";
  for (int a = 0; a < t.order; ++a)
    for (int b = 0; b < t.order; ++b) {
      r.add[sigma[(size_t)a]][sigma[(size_t)b]] = sigma[(size_t)t.add[a][b]];
      r.mul[sigma[(size_t)a]][sigma[(size_t)b]] = sigma[(size_t)t.mul[a][b]];
    }
  r.zero = sigma[(size_t)t.zero];
  r.one = sigma[(size_t)t.one];
  return r;
}

bool map_is_isomorphism(const FiniteSemiringTable& a, const FiniteSemiringTable& b,
                        const std::vector<int>& phi) {
  if ((int)phi.size() != a.order || a.order != b.order) return false;
  std::vector<char> hit((size_t)b.order, 0);
  for (int v : phi) {
    if (v < 0 || v >= b.order || hit[(size_t)v]) return false;
    hit[(size_t)v] = 1;
  }
  if (phi[(size_t)a.zero] != b.zero || phi[(size_t)a.one] != b.one) return false;
  for (int x = 0; x < a.order; ++x)
    for (int y = 0; y < a.order; ++y) {
      if (phi[(size_t)a.add[x][y]] != b.add[phi[(size_t)x]][phi[(size_t)y]]) return false;
      if (phi[(size_t)a.mul[x][y]] != b.mul[phi[(size_t)x]][phi[(size_t)y]]) return false;
    }
  return true;
}

bool compatible_partition(const Carrier& c, const Partition& p) {
  int r = c.act.empty() ? 0 : (int)c.act[0].size();
  for (int x = 0; x < c.m; ++x)
    for (int y = x + 1; y < c.m; ++y) {
      if (p[(size_t)x] != p[(size_t)y]) continue;
      for (int z = 0; z < c.m; ++z)
        if (p[(size_t)c.add[x][z]] != p[(size_t)c.add[y][z]]) return false;
      for (int s = 0; s < r; ++s)
        if (p[(size_t)c.act[x][s]] != p[(size_t)c.act[y][s]]) return false;
    }
  return true;
}

// all partitions of {0..m-1} as restricted growth strings, which is the same
// canonical first-occurrence labeling the library emits
std::vector<Partition> all_partitions(int m) {
  std::vector<Partition> out;
  Partition p((size_t)m, 0);
  auto rec = [&](auto&& self, int i, int maxid) -> void {
    if (i == m) {
      out.push_back(p);
      return;
    }
    for (int id = 0; id <= maxid + 1; ++id) {
      p[(size_t)i] = id;
      self(self, i + 1, std::max(maxid, id));
    }
  };
  rec(rec, 1, 0);
  return out;
}

void check_unit_decomposition(const FiniteSemiringTable& t, const std::vector<int>& es) {
  int sum = t.zero;
  for (int e : es) {
    CHECK(e != t.zero);
    CHECK(t.mul[e][e] == e);
    sum = t.add[sum][e];
  }
  CHECK(sum == t.one);
}

}  // namespace

TEST_CASE("axiom validation") {
  CHECK(!validate_table(bool_table()));
  CHECK(!validate_table(zmod_table(4)));
  CHECK(!validate_table(chain_table(3)));
  CHECK(!validate_table(truncated_nat_table(3)));
  CHECK(!validate_table(gf_table(4)));

  FiniteSemiringTable t = bool_table();
  t.mul[1][1] = 0;
  auto v = validate_table(t);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "mul-identity");
  CHECK(v->at[0] == 1);
  CHECK(violation_holds(t, *v));

  t = bool_table();
  t.add[0][1] = 0;  // add[1][0] stays 1
  v = validate_table(t);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "add-commutative");
  CHECK(violation_holds(t, *v));

  // max-style addition against modular multiplication breaks exactly
  // distributivity: (1+2)*2 = 2*2 = 1 but 1*2 + 2*2 = max(2,1) = 2
  FiniteSemiringTable mix;
  mix.name = "mix";
  mix.order = 3;
  mix.add = {{0, 1, 2}, {1, 1, 2}, {2, 2, 2}};
  mix.mul = {{0, 0, 0}, {0, 1, 2}, {0, 2, 1}};
  mix.zero = 0;
  mix.one = 1;
  v = validate_table(mix);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "right-distributive");
  CHECK(v->at == std::array<int, 3>{1, 2, 2});
  CHECK(violation_holds(mix, *v));

  t = bool_table();
  t.order = 3;  // tables are still 2x2
  v = validate_table(t);
  REQUIRE(v.has_value());
  CHECK(v->axiom == "shape");

  // every corrupted entry must surface as some genuine violation
  std::mt19937 rng(2026);
  for (int it = 0; it < 40; ++it) {
    FiniteSemiringTable r = zmod_table(4);
    bool in_add = rng() % 2 == 0;
    int i = (int)(rng() % 4), j = (int)(rng() % 4);
    auto& grid = in_add ? r.add : r.mul;
    int old = grid[i][j];
    grid[i][j] = (old + 1 + (int)(rng() % 3)) % 4;
    auto w = validate_table(r);
    REQUIRE(w.has_value());
    CHECK(violation_holds(r, *w));
  }
}

TEST_CASE("builders") {
  FiniteSemiringTable b = bool_table();
  CHECK(b.order == 2);
  CHECK(b.add[1][1] == 1);
  CHECK(b.mul[1][1] == 1);

  for (int n = 1; n <= 6; ++n) {
    FiniteSemiringTable z = zmod_table(n);
    CHECK(z.order == n);
    CHECK(!validate_table(z));
  }

  FiniteSemiringTable g4 = gf_table(4);
  CHECK(g4.order == 4);
  for (int a = 0; a < 4; ++a) CHECK(g4.add[a][a] == g4.zero);  // characteristic 2
  for (int a = 0; a < 4; ++a) {
    if (a == g4.zero) continue;
    CHECK(g4.mul[a][g4.mul[a][a]] == g4.one);  // nonzero elements are cubic roots of 1
  }
  FiniteSemiringTable g5 = gf_table(5);
  CHECK(g5.order == 5);
  CHECK(table_isomorphic(g5, zmod_table(5)).has_value());

  FiniteSemiringTable m2 = matrix_semiring(bool_table(), 2);
  CHECK(m2.order == 16);
  CHECK(m2.zero == 0);
  CHECK(m2.one == 9);  // flat entries are base-2 digits, least significant first
  CHECK(!validate_table(m2));
  CHECK(!validate_table(matrix_semiring(gf_table(2), 2)));

  FiniteSemiringTable bb = product_table(bool_table(), bool_table());
  CHECK(bb.order == 4);
  CHECK(bb.one == 3);
  CHECK(!validate_table(bb));

  FiniteSemiringTable c4 = chain_table(4);
  CHECK(c4.one == 3);
  CHECK(c4.add[1][3] == 3);
  CHECK(c4.mul[1][3] == 1);

  FiniteSemiringTable n3 = truncated_nat_table(3);
  CHECK(n3.order == 4);
  CHECK(n3.add[1][1] == 2);
  CHECK(n3.add[2][3] == 3);
  CHECK(n3.mul[2][2] == 3);

  // a commutative table equals its opposite; a matrix table transposes
  FiniteSemiringTable z6 = zmod_table(6);
  FiniteSemiringTable z6op = opposite_table(z6);
  CHECK(z6op.mul == z6.mul);
  FiniteSemiringTable m2op = opposite_table(m2);
  CHECK(!validate_table(m2op));
  for (int a = 0; a < 16; ++a)
    for (int c = 0; c < 16; ++c) CHECK(m2op.mul[a][c] == m2.mul[c][a]);

  CHECK_THROWS_AS(zmod_table(0), Error);
  CHECK_THROWS_AS(chain_table(0), Error);
  CHECK_THROWS_AS(truncated_nat_table(0), Error);
  CHECK_THROWS_AS(gf_table(1), Error);
  CHECK_THROWS_AS(gf_table(6), Error);
  CHECK_THROWS_AS(gf_table(12), Error);
  try {
    matrix_semiring(bool_table(), 3);  // order 512
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::OrderTooLarge);
  }
  CHECK_THROWS_AS(product_table(m2, m2), Error);
}

TEST_CASE("table isomorphism") {
  // the two-element chain is the two-element lattice
  auto phi = table_isomorphic(chain_table(2), bool_table());
  REQUIRE(phi.has_value());
  CHECK(map_is_isomorphism(chain_table(2), bool_table(), *phi));

  std::mt19937 rng(77);
  std::vector<FiniteSemiringTable> pool = {zmod_table(6), gf_table(4), chain_table(3),
                                           product_table(bool_table(), bool_table()),
                                           truncated_nat_table(3)};
  for (const auto& t : pool) {
    for (int it = 0; it < 4; ++it) {
      std::vector<int> sigma((size_t)t.order);
      std::iota(sigma.begin(), sigma.end(), 0);
      std::shuffle(sigma.begin(), sigma.end(), rng);
      FiniteSemiringTable r = relabel(t, sigma);
      auto m = table_isomorphic(t, r);
      REQUIRE(m.has_value());
      CHECK(map_is_isomorphism(t, r, *m));
    }
  }

  // the four order-4 candidates here are pairwise distinct
  FiniteSemiringTable z4 = zmod_table(4);
  FiniteSemiringTable g4 = gf_table(4);
  FiniteSemiringTable bb = product_table(bool_table(), bool_table());
  FiniteSemiringTable zz = product_table(zmod_table(2), zmod_table(2));
  CHECK(!table_isomorphic(z4, g4));
  CHECK(!table_isomorphic(z4, bb));
  CHECK(!table_isomorphic(z4, zz));
  CHECK(!table_isomorphic(g4, bb));
  CHECK(!table_isomorphic(g4, zz));
  CHECK(!table_isomorphic(bb, zz));
  CHECK(!table_isomorphic(bool_table(), zmod_table(2)));
  CHECK(!table_isomorphic(bool_table(), zmod_table(3)));

  // transposition identifies the matrix table with its opposite
  FiniteSemiringTable m2 = matrix_semiring(bool_table(), 2);
  auto tr = table_isomorphic(m2, opposite_table(m2));
  REQUIRE(tr.has_value());
  CHECK(map_is_isomorphism(m2, opposite_table(m2), *tr));
}

TEST_CASE("carriers") {
  TablePtr bp = std::make_shared<FiniteSemiringTable>(bool_table());
  Carrier reg = regular_carrier(bp);
  CHECK(reg.m == 2);
  CHECK(reg.zero == 0);
  CHECK(reg.add == bp->add);
  CHECK(reg.act == bp->mul);

  TablePtr m2 = std::make_shared<FiniteSemiringTable>(matrix_semiring(bool_table(), 2));
  Carrier top = right_ideal_carrier(m2, 1);  // matrices supported on the top row
  CHECK(top.m == 4);
  CHECK(top.labels == std::vector<int>{0, 1, 2, 3});
  CHECK(top.zero == 0);
  // closed under addition and the right action by construction
  for (int i = 0; i < top.m; ++i)
    for (int j = 0; j < top.m; ++j)
      CHECK(top.labels[(size_t)top.add[i][j]] == m2->add[top.labels[(size_t)i]][top.labels[(size_t)j]]);
  for (int i = 0; i < top.m; ++i)
    for (int s = 0; s < m2->order; ++s)
      CHECK(top.labels[(size_t)top.act[i][s]] == m2->mul[top.labels[(size_t)i]][s]);

  CHECK_THROWS_AS(right_ideal_carrier(bp, 7), Error);
}

TEST_CASE("congruence lattices match brute force") {
  auto census = [](const Carrier& c) {
    std::vector<Partition> want;
    for (const auto& p : all_partitions(c.m))
      if (compatible_partition(c, p)) want.push_back(p);
    std::sort(want.begin(), want.end());
    auto got = semimodule_congruences(c);
    std::sort(got.begin(), got.end());
    CHECK(got == want);
    return got.size();
  };

  TablePtr bp = std::make_shared<FiniteSemiringTable>(bool_table());
  CHECK(census(regular_carrier(bp)) == 2);

  TablePtr z4 = std::make_shared<FiniteSemiringTable>(zmod_table(4));
  auto congs = semimodule_congruences(regular_carrier(z4));
  CHECK(census(regular_carrier(z4)) == 3);
  CHECK(std::find(congs.begin(), congs.end(), Partition{0, 1, 0, 1}) != congs.end());

  TablePtr z6 = std::make_shared<FiniteSemiringTable>(zmod_table(6));
  CHECK(census(regular_carrier(z6)) == 4);

  TablePtr g4 = std::make_shared<FiniteSemiringTable>(gf_table(4));
  CHECK(census(regular_carrier(g4)) == 2);

  TablePtr c3 = std::make_shared<FiniteSemiringTable>(chain_table(3));
  census(regular_carrier(c3));

  TablePtr n3 = std::make_shared<FiniteSemiringTable>(truncated_nat_table(3));
  census(regular_carrier(n3));

  TablePtr z1 = std::make_shared<FiniteSemiringTable>(zmod_table(1));
  CHECK(semimodule_congruences(regular_carrier(z1)).size() == 1);

  TablePtr m2 = std::make_shared<FiniteSemiringTable>(matrix_semiring(bool_table(), 2));
  CHECK_THROWS_AS(semimodule_congruences(regular_carrier(m2)), Error);
  try {
    semimodule_congruences(regular_carrier(m2));
  } catch (const Error& e) {
    CHECK(e.code() == Err::CarrierTooLarge);
  }
}

TEST_CASE("congruence simplicity") {
  TablePtr bp = std::make_shared<FiniteSemiringTable>(bool_table());
  CHECK(is_congruence_simple(regular_carrier(bp)));

  TablePtr z2 = std::make_shared<FiniteSemiringTable>(zmod_table(2));
  CHECK(is_congruence_simple(regular_carrier(z2)));

  TablePtr g4 = std::make_shared<FiniteSemiringTable>(gf_table(4));
  CHECK(is_congruence_simple(regular_carrier(g4)));

  TablePtr z4 = std::make_shared<FiniteSemiringTable>(zmod_table(4));
  CHECK(!is_congruence_simple(regular_carrier(z4)));

  TablePtr c3 = std::make_shared<FiniteSemiringTable>(chain_table(3));
  CHECK(!is_congruence_simple(regular_carrier(c3)));

  TablePtr m2 = std::make_shared<FiniteSemiringTable>(matrix_semiring(bool_table(), 2));
  CHECK(is_congruence_simple(right_ideal_carrier(m2, 1)));

  TablePtr z1 = std::make_shared<FiniteSemiringTable>(zmod_table(1));
  CHECK(!is_congruence_simple(regular_carrier(z1)));
}

TEST_CASE("semisimple decomposition") {
  FiniteSemiringTable b = bool_table();
  auto d = congruence_semisimple_decompose(b);
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<int>{1});
  check_unit_decomposition(b, *d);

  FiniteSemiringTable bb = product_table(bool_table(), bool_table());
  d = congruence_semisimple_decompose(bb);
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<int>{1, 2});
  check_unit_decomposition(bb, *d);

  FiniteSemiringTable z6 = zmod_table(6);
  d = congruence_semisimple_decompose(z6);
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<int>{3, 4});
  check_unit_decomposition(z6, *d);

  FiniteSemiringTable m2 = matrix_semiring(bool_table(), 2);
  d = congruence_semisimple_decompose(m2);
  REQUIRE(d.has_value());
  CHECK(*d == std::vector<int>{1, 8});
  check_unit_decomposition(m2, *d);

  CHECK(!congruence_semisimple_decompose(zmod_table(4)));
  CHECK(!congruence_semisimple_decompose(chain_table(3)));
  CHECK(!congruence_semisimple_decompose(truncated_nat_table(3)));
  CHECK(!congruence_semisimple_decompose(zmod_table(8)));

  // the returned idempotents split the semiring into simple right ideals
  TablePtr zp = std::make_shared<FiniteSemiringTable>(z6);
  long long prod = 1;
  std::set<std::vector<int>> images;
  for (int s = 0; s < z6.order; ++s)
    images.insert({z6.mul[3][s], z6.mul[4][s]});
  CHECK((int)images.size() == z6.order);
  for (int e : {3, 4}) {
    Carrier ideal = right_ideal_carrier(zp, e);
    CHECK(is_congruence_simple(ideal));
    prod *= ideal.m;
  }
  CHECK(prod == z6.order);

  CHECK_THROWS_AS(congruence_semisimple_decompose(m2, 8), Error);
}

TEST_CASE("classification over lattice and field blocks") {
  auto fs = classify_semisimple(matrix_semiring(bool_table(), 2));
  REQUIRE(fs.has_value());
  REQUIRE(fs->size() == 1);
  CHECK((*fs)[0].boolean);
  CHECK((*fs)[0].n == 2);

  fs = classify_semisimple(bool_table());
  REQUIRE(fs.has_value());
  REQUIRE(fs->size() == 1);
  CHECK((*fs)[0].boolean);
  CHECK((*fs)[0].n == 1);

  fs = classify_semisimple(product_table(bool_table(), gf_table(2)));
  REQUIRE(fs.has_value());
  REQUIRE(fs->size() == 2);
  CHECK((*fs)[0].boolean);
  CHECK((*fs)[0].n == 1);
  CHECK(!(*fs)[1].boolean);
  CHECK((*fs)[1].q == 2);
  CHECK((*fs)[1].n == 1);

  fs = classify_semisimple(gf_table(4));
  REQUIRE(fs.has_value());
  REQUIRE(fs->size() == 1);
  CHECK(!(*fs)[0].boolean);
  CHECK((*fs)[0].q == 4);
  CHECK((*fs)[0].n == 1);

  fs = classify_semisimple(zmod_table(6));
  REQUIRE(fs.has_value());
  REQUIRE(fs->size() == 2);
  CHECK((*fs)[0].q == 2);
  CHECK((*fs)[1].q == 3);

  CHECK(!classify_semisimple(zmod_table(4)));
  CHECK(!classify_semisimple(chain_table(3)));
  CHECK(!classify_semisimple(truncated_nat_table(3)));
  CHECK(!classify_semisimple(zmod_table(1)));

  try {
    classify_semisimple(matrix_semiring(bool_table(), 2), 8);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Err::OrderTooLarge);
  }
  FiniteSemiringTable broken = bool_table();
  broken.mul[1][1] = 0;
  CHECK_THROWS_AS(classify_semisimple(broken), Error);
}

TEST_CASE("decomposition and classification agree") {
  std::vector<FiniteSemiringTable> corpus = {
      bool_table(),
      zmod_table(2),
      zmod_table(3),
      zmod_table(4),
      zmod_table(5),
      zmod_table(6),
      zmod_table(8),
      zmod_table(12),
      gf_table(4),
      chain_table(2),
      chain_table(3),
      product_table(bool_table(), bool_table()),
      product_table(bool_table(), gf_table(3)),
      truncated_nat_table(3),
      matrix_semiring(bool_table(), 2),
  };
  for (const auto& t : corpus) {
    CAPTURE(t.name);
    bool dec = congruence_semisimple_decompose(t).has_value();
    bool cls = classify_semisimple(t).has_value();
    CHECK(dec == cls);
  }

  // additively idempotent input can only produce lattice blocks
  for (const auto* t : {&corpus[0], &corpus[9], &corpus[11], &corpus[14]}) {
    bool addidem = true;
    for (int a = 0; a < t->order; ++a) addidem = addidem && t->add[a][a] == a;
    REQUIRE(addidem);
    auto fs = classify_semisimple(*t);
    if (!fs) continue;
    for (const auto& f : *fs) CHECK(f.boolean);
  }
}

TEST_CASE("primitive unit decompositions") {
  auto u = primitive_orthogonal_units(bool_table());
  REQUIRE(u.has_value());
  CHECK(*u == std::vector<int>{1});

  FiniteSemiringTable bb = product_table(bool_table(), bool_table());
  u = primitive_orthogonal_units(bb);
  REQUIRE(u.has_value());
  CHECK(*u == std::vector<int>{1, 2});

  FiniteSemiringTable m2 = matrix_semiring(bool_table(), 2);
  u = primitive_orthogonal_units(m2);
  REQUIRE(u.has_value());
  CHECK(*u == std::vector<int>{1, 8});

  FiniteSemiringTable z6 = zmod_table(6);
  u = primitive_orthogonal_units(z6);
  REQUIRE(u.has_value());
  CHECK(*u == std::vector<int>{3, 4});

  for (const auto& t : {bool_table(), bb, m2, z6, zmod_table(4)}) {
    auto es = primitive_orthogonal_units(t);
    REQUIRE(es.has_value());
    check_unit_decomposition(t, *es);
    for (size_t i = 0; i < es->size(); ++i)
      for (size_t j = i + 1; j < es->size(); ++j) {
        CHECK(t.mul[(*es)[i]][(*es)[j]] == t.zero);
        CHECK(t.mul[(*es)[j]][(*es)[i]] == t.zero);
      }
  }
}
