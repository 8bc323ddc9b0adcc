#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "semik/boolmod.hpp"
#include "semik/bratteli.hpp"
#include "semik/limits.hpp"
#include "semik/matrix.hpp"
#include "semik/report.hpp"
#include "semik/serialize.hpp"
#include "semik/tables.hpp"
#include "semik/tropical.hpp"

namespace {

using namespace semik;

int env_threads() {
  const char* s = std::getenv("SEMIK_THREADS");
  if (!s) return 1;
  int v = std::atoi(s);
  return v < 1 ? 1 : (v > 64 ? 64 : v);
}

Json file_entry(const std::string& path) {
  return Json{{"path", path}, {"digest", fnv1a_digest(read_file(path))}};
}

Json trop_vec_json(const TropVec& v) {
  Json a = Json::array();
  for (const auto& t : v) a.push_back(format_trop(t));
  return a;
}

Json flags_json(const KernelFlags& f) {
  return Json{{"commutative", f.commutative},
              {"additively_idempotent", f.additively_idempotent},
              {"zerosumfree", f.zerosumfree},
              {"entire", f.entire},
              {"division", f.division}};
}

Json witness_to_json(const IsoWitness& w) {
  Json j;
  j["s1"] = w.s1;
  j["s2"] = w.s2;
  Json as = Json::array(), bs = Json::array();
  for (const auto& m : w.alphas) as.push_back(intmatrix_to_json(m));
  for (const auto& m : w.betas) bs.push_back(intmatrix_to_json(m));
  j["alphas"] = as;
  j["betas"] = bs;
  j["loop_from"] = w.loop_from;
  return j;
}

RunReport run_bmod_analyze(const std::string& path) {
  RunReport r;
  r.subcommand = "bmod analyze";
  r.inputs["file"] = file_entry(path);
  BoolSemimodule m = load_module_file(path);
  r.payload["cardinality"] = m.n;
  r.payload["projective"] = is_projective(m);
  auto rank = is_free_bool(m);
  r.payload["free_rank"] = rank ? Json(*rank) : Json(nullptr);
  r.payload["atoms"] = atoms_of(m);
  r.payload["weak_dimension"] = weak_dimension_bool(m);
  return r;
}

RunReport run_trop_span(const std::string& path, int probe_depth, int threads) {
  RunReport r;
  r.subcommand = "trop span";
  r.inputs["file"] = file_entry(path);
  r.inputs["probe_depth"] = probe_depth;
  r.inputs["threads"] = threads;
  TropSpan sp = load_span_file(path);
  TropSpan ext = extremal_generators(sp);
  r.payload["extremals"] = span_to_json(ext)["generators"];
  r.payload["dim_w"] = weak_dimension_trop(sp);
  FreenessResult fr = is_free_trop(sp, probe_depth, threads);
  switch (fr.verdict) {
    case Freeness::Free:
      r.payload["freeness"] = "FREE";
      r.payload["rank"] = fr.rank;
      break;
    case Freeness::NotFree:
      r.payload["freeness"] = "NOT_FREE";
      break;
    case Freeness::Unknown:
      r.payload["freeness"] = "UNKNOWN";
      break;
  }
  if (fr.witness) {
    r.payload["witness"] =
        Json{{"lhs", trop_vec_json(fr.witness->first)}, {"rhs", trop_vec_json(fr.witness->second)}};
  }
  return r;
}

RunReport run_bratteli_sk0(const std::string& path) {
  RunReport r;
  r.subcommand = "bratteli sk0";
  r.inputs["file"] = file_entry(path);
  BratteliPresentation b = load_bratteli_file(path);
  LimitSystem sys = sk0_ultramatricial(b);
  r.payload["k0"] = system_to_json(sys);
  r.payload["stages"] = static_cast<int>(sys.groups.size());
  return r;
}

RunReport run_bratteli_iso(const std::string& pa, const std::string& pb, int depth,
                           long long entry_bound, long long node_budget) {
  RunReport r;
  r.subcommand = "bratteli iso";
  r.inputs["a"] = file_entry(pa);
  r.inputs["b"] = file_entry(pb);
  r.inputs["depth"] = depth;
  r.inputs["entry_bound"] = entry_bound;
  r.inputs["node_budget"] = node_budget;
  BratteliPresentation a = load_bratteli_file(pa);
  BratteliPresentation b = load_bratteli_file(pb);
  IsoOptions opt;
  opt.depth = depth;
  opt.entry_bound = Int(entry_bound);
  opt.node_budget = node_budget;
  IsoResult res = iso_ultramatricial(a, b, opt);
  switch (res.verdict) {
    case IsoVerdict::Iso: r.payload["verdict"] = "ISO"; break;
    case IsoVerdict::NotIso: r.payload["verdict"] = "NOT_ISO"; break;
    case IsoVerdict::Unknown: r.payload["verdict"] = "UNKNOWN"; break;
  }
  if (res.witness) {
    r.payload["witness"] = witness_to_json(*res.witness);
    r.payload["validated"] = validate_iso_witness(a, b, *res.witness);
  }
  if (res.certificate) {
    r.payload["certificate"] = Json{{"kind", res.certificate->kind},
                                    {"lhs", res.certificate->lhs},
                                    {"rhs", res.certificate->rhs}};
  }
  return r;
}

RunReport run_limit_eq(const std::string& path, const std::string& e1, const std::string& e2,
                       int depth) {
  RunReport r;
  r.subcommand = "limit eq";
  r.inputs["file"] = file_entry(path);
  r.inputs["x"] = e1;
  r.inputs["y"] = e2;
  r.inputs["depth"] = depth;
  LimitSystem sys = load_system_file(path);
  EqResult res = limit_equal(sys, parse_limit_element(e1), parse_limit_element(e2), depth);
  switch (res.verdict) {
    case EqVerdict::Equal: r.payload["verdict"] = "EQUAL"; break;
    case EqVerdict::Distinct: r.payload["verdict"] = "DISTINCT"; break;
    case EqVerdict::Unknown: r.payload["verdict"] = "UNKNOWN"; break;
  }
  if (res.stage >= 0) r.payload["stage"] = res.stage;
  return r;
}

RunReport run_limit_pos(const std::string& path, const std::string& e1, int depth) {
  RunReport r;
  r.subcommand = "limit pos";
  r.inputs["file"] = file_entry(path);
  r.inputs["x"] = e1;
  r.inputs["depth"] = depth;
  LimitSystem sys = load_system_file(path);
  PosResult res = limit_positive(sys, parse_limit_element(e1), depth);
  switch (res.verdict) {
    case PosVerdict::Positive: r.payload["verdict"] = "POSITIVE"; break;
    case PosVerdict::NotWithinDepth: r.payload["verdict"] = "NOT_WITHIN_DEPTH"; break;
    case PosVerdict::Unknown: r.payload["verdict"] = "UNKNOWN"; break;
  }
  if (res.stage >= 0) r.payload["stage"] = res.stage;
  return r;
}

RunReport run_semiring_classify(const std::string& path, int cap) {
  RunReport r;
  r.subcommand = "semiring classify";
  r.inputs["file"] = file_entry(path);
  r.inputs["cap"] = cap;
  TablePtr t = load_table_file(path);
  Kernel k = Kernel::table(t);
  r.payload["order"] = t->order;
  r.payload["flags"] = flags_json(k.flags());
  WeakCancellativity wc = k.weak_cancellativity();
  r.payload["weakly_cancellative"] = wc.holds;
  if (wc.witness) {
    r.payload["cancellativity_witness"] =
        Json::array({format_element(wc.witness->first), format_element(wc.witness->second)});
  }
  auto decomp = congruence_semisimple_decompose(*t, cap);
  r.payload["congruence_semisimple"] = decomp.has_value();
  r.payload["decomposition"] = decomp ? Json(*decomp) : Json(nullptr);
  auto factors = classify_semisimple(*t, cap);
  if (factors) {
    Json fl = Json::array();
    for (const auto& f : *factors) {
      Json e = Json{{"n", f.n}};
      if (f.boolean) {
        e["kind"] = "BOOL";
      } else {
        e["kind"] = "GF";
        e["q"] = f.q;
      }
      fl.push_back(e);
    }
    r.payload["factors"] = fl;
  } else {
    r.payload["factors"] = Json(nullptr);
  }
  return r;
}

RunReport run_matrix_check(const std::string& path) {
  RunReport r;
  r.subcommand = "matrix check";
  r.inputs["file"] = file_entry(path);
  SemiMatrix m = load_matrix_file(path);
  const Kernel& k = m.kernel();
  r.payload["kernel"] = kernel_tag_name(k.tag());
  r.payload["rows"] = m.rows();
  r.payload["cols"] = m.cols();
  r.payload["kernel_flags"] = flags_json(k.flags());
  WeakCancellativity wc = k.weak_cancellativity();
  r.payload["weakly_cancellative"] = wc.holds;
  if (wc.witness) {
    r.payload["cancellativity_witness"] =
        Json::array({format_element(wc.witness->first), format_element(wc.witness->second)});
  }
  bool square = m.rows() == m.cols();
  r.payload["square"] = square;
  if (square) {
    bool idem = is_idempotent_matrix(m);
    r.payload["idempotent"] = idem;
    if (idem) {
      ComplementResult c = strong_idempotent_complement(m);
      if (c.complement) {
        r.payload["complement"] = matrix_to_json(*c.complement);
      } else {
        r.payload["complement"] = Json(nullptr);
        if (c.blocked_at)
          r.payload["blocked_at"] = Json::array({c.blocked_at->first, c.blocked_at->second});
        r.payload["reason"] = c.reason;
      }
    }
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"semik: exact workbench for semiring K-theory computations"};
  app.fallthrough();
  app.require_subcommand(1);

  std::string format = "json";
  app.add_option("--format", format, "report format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();

  std::function<RunReport()> run;

  auto* bmod = app.add_subcommand("bmod", "finite semimodules over the two-element lattice");
  bmod->require_subcommand(1);
  std::string bmod_file;
  auto* bmod_an = bmod->add_subcommand("analyze", "projectivity, freeness, atoms");
  bmod_an->add_option("file", bmod_file, "module JSON file")->required();
  bmod_an->callback([&] { run = [&] { return run_bmod_analyze(bmod_file); }; });

  auto* trop = app.add_subcommand("trop", "finitely generated max-plus spans");
  trop->require_subcommand(1);
  std::string trop_file;
  int probe_depth = 6;
  int threads = env_threads();
  auto* trop_sp = trop->add_subcommand("span", "extremals, weak dimension, freeness");
  trop_sp->add_option("file", trop_file, "span JSON file")->required();
  trop_sp->add_option("--probe-depth", probe_depth, "freeness probe grid depth")
      ->capture_default_str();
  trop_sp->add_option("--threads", threads, "worker threads for the probe scan")
      ->capture_default_str();
  trop_sp->callback([&] { run = [&] { return run_trop_span(trop_file, probe_depth, threads); }; });

  auto* brat = app.add_subcommand("bratteli", "ultramatricial presentations");
  brat->require_subcommand(1);
  std::string brat_file, brat_a, brat_b;
  int iso_depth = 6;
  long long entry_bound = 0, node_budget = 200000;
  auto* brat_sk0 = brat->add_subcommand("sk0", "K-theory presentation of a diagram");
  brat_sk0->add_option("file", brat_file, "diagram JSON file")->required();
  brat_sk0->callback([&] { run = [&] { return run_bratteli_sk0(brat_file); }; });
  auto* brat_iso = brat->add_subcommand("iso", "decide isomorphism of two diagrams");
  brat_iso->add_option("a", brat_a, "first diagram")->required();
  brat_iso->add_option("b", brat_b, "second diagram")->required();
  brat_iso->add_option("--depth", iso_depth, "largest stage explored")->capture_default_str();
  brat_iso->add_option("--entry-bound", entry_bound, "cap on intertwiner entries (0: derived)")
      ->capture_default_str();
  brat_iso->add_option("--node-budget", node_budget, "search node budget")->capture_default_str();
  brat_iso->callback(
      [&] { run = [&] { return run_bratteli_iso(brat_a, brat_b, iso_depth, entry_bound, node_budget); }; });

  auto* limit = app.add_subcommand("limit", "direct limits of simplicial groups");
  limit->require_subcommand(1);
  std::string limit_file, elem_x, elem_y;
  int limit_depth = 32;
  auto* limit_eq = limit->add_subcommand("eq", "equality of two limit elements");
  limit_eq->add_option("file", limit_file, "system JSON file")->required();
  limit_eq->add_option("x", elem_x, "element, k:c1,c2,...")->required();
  limit_eq->add_option("y", elem_y, "element, k:c1,c2,...")->required();
  limit_eq->add_option("--depth", limit_depth, "push depth")->capture_default_str();
  limit_eq->callback(
      [&] { run = [&] { return run_limit_eq(limit_file, elem_x, elem_y, limit_depth); }; });
  auto* limit_pos = limit->add_subcommand("pos", "positivity of a limit element");
  limit_pos->add_option("file", limit_file, "system JSON file")->required();
  limit_pos->add_option("x", elem_x, "element, k:c1,c2,...")->required();
  limit_pos->add_option("--depth", limit_depth, "push depth")->capture_default_str();
  limit_pos->callback([&] { run = [&] { return run_limit_pos(limit_file, elem_x, limit_depth); }; });

  auto* ring = app.add_subcommand("semiring", "finite semirings by Cayley table");
  ring->require_subcommand(1);
  std::string ring_file;
  int ring_cap = 16;
  auto* ring_cl = ring->add_subcommand("classify", "congruence-semisimple structure");
  ring_cl->add_option("file", ring_file, "table JSON file")->required();
  ring_cl->add_option("--cap", ring_cap, "largest table order searched")->capture_default_str();
  ring_cl->callback([&] { run = [&] { return run_semiring_classify(ring_file, ring_cap); }; });

  auto* mat = app.add_subcommand("matrix", "matrices over the ground kernels");
  mat->require_subcommand(1);
  std::string mat_file;
  auto* mat_ck = mat->add_subcommand("check", "idempotency, complement, kernel flags");
  mat_ck->add_option("file", mat_file, "matrix JSON file")->required();
  mat_ck->callback([&] { run = [&] { return run_matrix_check(mat_file); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto t0 = std::chrono::steady_clock::now();
  try {
    RunReport rep = run();
    rep.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << emit_report(rep, format);
  } catch (const Error& e) {
    std::cerr << "error: " << err_name(e.code()) << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}
