#include "semik/tropical.hpp"

#include <algorithm>
#include <thread>

#include "semik/errors.hpp"

namespace semik {

namespace {

constexpr long long kMaxProbes = 1LL << 22;

void check_vec(const TropVec& v, int ambient, const char* what) {
  if ((int)v.size() != ambient)
    fail(Err::ShapeMismatch, std::string(what) + " has " + std::to_string(v.size()) +
                                 " coordinates, ambient dimension is " + std::to_string(ambient));
}

Trop residual(const Trop& x, const Trop& a) {
  // largest t with t + a <= x, for finite a
  if (!x.finite()) return Trop::neg_inf();
  return Trop(x.value() - a.value());
}

}  // namespace

void validate_span(const TropSpan& sp) {
  if (sp.ambient < 1) fail(Err::ShapeMismatch, "ambient dimension must be positive");
  for (const auto& g : sp.gens) check_vec(g, sp.ambient, "generator");
}

TropVec trop_combine(const std::vector<TropVec>& gens, const TropVec& coeff, int ambient) {
  if (gens.size() != coeff.size())
    fail(Err::ShapeMismatch, "coefficient count does not match the generator count");
  TropVec y(ambient, Trop::neg_inf());
  for (size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < ambient; ++i) y[i] = trop_add(y[i], trop_mul(coeff[j], gens[j][i]));
  return y;
}

TropVec principal_solution(const TropVec& x, const std::vector<TropVec>& gens, int ambient) {
  TropVec lam(gens.size(), Trop::neg_inf());
  for (size_t j = 0; j < gens.size(); ++j) {
    bool first = true;
    Trop acc = Trop::neg_inf();  // a generator with no finite coordinate gets -inf
    for (int i = 0; i < ambient; ++i) {
      if (!gens[j][i].finite()) continue;
      Trop t = residual(x[i], gens[j][i]);
      if (first || t < acc) acc = t;
      first = false;
    }
    if (!first) lam[j] = acc;
  }
  return lam;
}

std::optional<TropVec> trop_membership(const TropVec& x, const TropSpan& sp) {
  validate_span(sp);
  check_vec(x, sp.ambient, "vector");
  TropVec lam = principal_solution(x, sp.gens, sp.ambient);
  if (trop_combine(sp.gens, lam, sp.ambient) == x) return lam;
  return std::nullopt;
}

TropSpan extremal_generators(const TropSpan& sp) {
  validate_span(sp);
  TropSpan out{sp.ambient, sp.gens};
  // drop from the back so the first of two proportional generators survives
  for (size_t k = out.gens.size(); k-- > 0;) {
    std::vector<TropVec> others;
    others.reserve(out.gens.size() - 1);
    for (size_t j = 0; j < out.gens.size(); ++j)
      if (j != k) others.push_back(out.gens[j]);
    TropVec lam = principal_solution(out.gens[k], others, sp.ambient);
    if (trop_combine(others, lam, sp.ambient) == out.gens[k])
      out.gens.erase(out.gens.begin() + k);
  }
  return out;
}

int weak_dimension_trop(const TropSpan& sp) { return (int)extremal_generators(sp).gens.size(); }

IndependenceResult is_weakly_independent(const std::vector<TropVec>& fam, int ambient) {
  if (ambient < 1) fail(Err::ShapeMismatch, "ambient dimension must be positive");
  for (const auto& g : fam) check_vec(g, ambient, "family member");
  for (size_t k = 0; k < fam.size(); ++k) {
    std::vector<TropVec> others;
    for (size_t j = 0; j < fam.size(); ++j)
      if (j != k) others.push_back(fam[j]);
    TropVec lam = principal_solution(fam[k], others, ambient);
    if (trop_combine(others, lam, ambient) == fam[k]) {
      IndependenceResult r;
      r.independent = false;
      r.dependent_index = (int)k;
      r.coeffs = lam;
      return r;
    }
  }
  return {};
}

namespace {

bool every_column_has_private_row(const std::vector<TropVec>& gens, int ambient) {
  for (size_t j = 0; j < gens.size(); ++j) {
    bool found = false;
    for (int i = 0; i < ambient && !found; ++i) {
      if (!gens[j][i].finite()) continue;
      bool alone = true;
      for (size_t j2 = 0; j2 < gens.size() && alone; ++j2)
        if (j2 != j && gens[j2][i].finite()) alone = false;
      found = alone;
    }
    if (!found) return false;
  }
  return true;
}

TropVec decode_probe(long long idx, const std::vector<Trop>& vals, int m) {
  TropVec lam(m, Trop::neg_inf());
  long long base = (long long)vals.size();
  for (int j = m - 1; j >= 0; --j) {
    lam[j] = vals[idx % base];
    idx /= base;
  }
  return lam;
}

// first probe index (in the canonical enumeration) whose principal solution
// disagrees with it, or -1
long long scan_chunk(long long lo, long long hi, const std::vector<Trop>& vals,
                     const std::vector<TropVec>& gens, int ambient) {
  int m = (int)gens.size();
  for (long long idx = lo; idx < hi; ++idx) {
    TropVec lam = decode_probe(idx, vals, m);
    TropVec x = trop_combine(gens, lam, ambient);
    TropVec mu = principal_solution(x, gens, ambient);
    if (mu != lam && trop_combine(gens, mu, ambient) == x) return idx;
  }
  return -1;
}

}  // namespace

FreenessResult is_free_trop(const TropSpan& sp, int probe_depth, int threads) {
  validate_span(sp);
  if (probe_depth < 0) fail(Err::ArgumentTooSmall, "probe depth must be nonnegative");
  FreenessResult res;
  res.basis = extremal_generators(sp).gens;
  int m = (int)res.basis.size();
  if (m == 0) {
    res.verdict = Freeness::Free;
    res.rank = 0;
    return res;
  }
  if (every_column_has_private_row(res.basis, sp.ambient)) {
    res.verdict = Freeness::Free;
    res.rank = m;
    return res;
  }

  std::vector<Trop> vals;
  vals.push_back(Trop::one());
  for (int d = 1; d <= probe_depth; ++d) vals.push_back(Trop(Rational(-d)));
  vals.push_back(Trop::neg_inf());
  long long total = 1;
  for (int j = 0; j < m && total < kMaxProbes; ++j) total *= (long long)vals.size();
  total = std::min(total, kMaxProbes);

  if (threads < 1) threads = 1;
  long long hit = -1;
  if (threads == 1 || total < 1024) {
    hit = scan_chunk(0, total, vals, res.basis, sp.ambient);
  } else {
    std::vector<long long> found((size_t)threads, -1);
    std::vector<std::thread> pool;
    long long chunk = (total + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      long long lo = std::min<long long>((long long)t * chunk, total);
      long long hi = std::min(lo + chunk, total);
      pool.emplace_back([&, t, lo, hi] { found[(size_t)t] = scan_chunk(lo, hi, vals, res.basis, sp.ambient); });
    }
    for (auto& th : pool) th.join();
    for (long long f : found)
      if (f >= 0 && (hit < 0 || f < hit)) hit = f;
  }

  if (hit >= 0) {
    TropVec lam = decode_probe(hit, vals, m);
    TropVec x = trop_combine(res.basis, lam, sp.ambient);
    res.verdict = Freeness::NotFree;
    res.witness = std::make_pair(lam, principal_solution(x, res.basis, sp.ambient));
    return res;
  }
  res.verdict = Freeness::Unknown;
  return res;
}

TropSpan span_direct_sum(const TropSpan& a, const TropSpan& b) {
  validate_span(a);
  validate_span(b);
  TropSpan out;
  out.ambient = a.ambient + b.ambient;
  for (const auto& g : a.gens) {
    TropVec v = g;
    v.resize((size_t)out.ambient, Trop::neg_inf());
    out.gens.push_back(std::move(v));
  }
  for (const auto& g : b.gens) {
    TropVec v((size_t)a.ambient, Trop::neg_inf());
    v.insert(v.end(), g.begin(), g.end());
    out.gens.push_back(std::move(v));
  }
  return out;
}

}  // namespace semik
