#include "semik/serialize.hpp"

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace semik {

const char* err_name(Err code) {
  switch (code) {
    case Err::DimensionMismatch: return "DimensionMismatch";
    case Err::KernelMismatch: return "KernelMismatch";
    case Err::NotSquare: return "NotSquare";
    case Err::NotIdempotent: return "NotIdempotent";
    case Err::InvalidTable: return "InvalidTable";
    case Err::OrderTooLarge: return "OrderTooLarge";
    case Err::CarrierTooLarge: return "CarrierTooLarge";
    case Err::ArgumentTooSmall: return "ArgumentTooSmall";
    case Err::ShapeMismatch: return "ShapeMismatch";
    case Err::StageOutOfRange: return "StageOutOfRange";
    case Err::UnitalityViolation: return "UnitalityViolation";
    case Err::NotUnital: return "NotUnital";
    case Err::NegativeEntry: return "NegativeEntry";
    case Err::MalformedFile: return "MalformedFile";
    case Err::UnknownSubcommand: return "UnknownSubcommand";
  }
  return "Error";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Err::MalformedFile, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Json load_json_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    fail(Err::MalformedFile, path + ": " + e.what());
  }
}

std::string fnv1a_digest(const std::string& bytes) {
  uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char out[17];
  snprintf(out, sizeof out, "%016llx", (unsigned long long)h);
  return out;
}

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key))
    fail(Err::MalformedFile, where + ": missing field '" + key + "'");
  return j.at(key);
}

int small_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer())
    fail(Err::MalformedFile, where + ": expected an integer");
  return (int)j.get<int64_t>();
}

}  // namespace

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Int(j.get<int64_t>());
  if (j.is_string()) {
    if (auto v = parse_int(j.get<std::string>())) return *v;
    fail(Err::MalformedFile, where + ": '" + j.get<std::string>() + "' is not an integer");
  }
  fail(Err::MalformedFile, where + ": expected an integer or integer string");
}

Json int_to_json(const Int& v) {
  static const Int lo = -(Int(1) << 53), hi = Int(1) << 53;
  if (v > lo && v < hi) return Json((int64_t)v.convert_to<long long>());
  return Json(v.str());
}

Trop trop_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    if (auto t = parse_trop(j.get<std::string>())) return *t;
    fail(Err::MalformedFile, where + ": '" + j.get<std::string>() + "' is not a tropical scalar");
  }
  fail(Err::MalformedFile, where + ": tropical entries are strings like \"-1/2\" or \"-inf\"");
}

// ---- tables ----------------------------------------------------------------

FiniteSemiringTable table_from_json(const Json& j) {
  FiniteSemiringTable t;
  t.order = small_int(need(j, "order", "table"), "table.order");
  auto grid = [&](const char* key) {
    const Json& g = need(j, key, "table");
    if (!g.is_array()) fail(Err::MalformedFile, std::string("table.") + key + ": expected rows");
    std::vector<std::vector<int>> rows;
    for (const Json& r : g) {
      if (!r.is_array()) fail(Err::MalformedFile, std::string("table.") + key + ": expected rows");
      std::vector<int> row;
      for (const Json& v : r) row.push_back(small_int(v, std::string("table.") + key));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  t.add = grid("add");
  t.mul = grid("mul");
  t.zero = small_int(need(j, "zero", "table"), "table.zero");
  t.one = small_int(need(j, "one", "table"), "table.one");
  return t;
}

Json table_to_json(const FiniteSemiringTable& t) {
  Json j;
  j["order"] = t.order;
  j["add"] = t.add;
  j["mul"] = t.mul;
  j["zero"] = t.zero;
  j["one"] = t.one;
  return j;
}

TablePtr load_table_file(const std::string& path) {
  FiniteSemiringTable t = table_from_json(load_json_file(path));
  t.name = std::filesystem::path(path).stem().string();
  if (auto v = validate_table(t))
    fail(Err::InvalidTable, path + ": axiom '" + v->axiom + "' fails");
  return std::make_shared<const FiniteSemiringTable>(std::move(t));
}

// ---- matrices ---------------------------------------------------------------

SemiMatrix matrix_from_json(const Json& j, const std::string& base_dir) {
  std::string kname = need(j, "kernel", "matrix").get<std::string>();
  Kernel kernel = Kernel::boolean();
  if (kname == "BOOL") {
    kernel = Kernel::boolean();
  } else if (kname == "TROP") {
    kernel = Kernel::tropical();
  } else if (kname == "NAT") {
    kernel = Kernel::natural();
  } else if (kname.rfind("TABLE:", 0) == 0) {
    std::string ref = kname.substr(6);
    std::filesystem::path p(ref);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    auto table = load_table_file(p.string());
    auto named = std::make_shared<FiniteSemiringTable>(*table);
    named->name = ref;
    kernel = Kernel::table(named);
  } else {
    fail(Err::MalformedFile, "matrix.kernel: unknown kernel '" + kname + "'");
  }

  int rows = small_int(need(j, "rows", "matrix"), "matrix.rows");
  int cols = small_int(need(j, "cols", "matrix"), "matrix.cols");
  const Json& es = need(j, "entries", "matrix");
  if (!es.is_array() || (int)es.size() != rows * cols)
    fail(Err::MalformedFile, "matrix.entries: expected " + std::to_string(rows * cols) + " entries");

  std::vector<Element> entries;
  entries.reserve(es.size());
  for (const Json& e : es) {
    switch (kernel.tag()) {
      case KernelTag::Bool: {
        int b = small_int(e, "matrix.entries");
        if (b != 0 && b != 1) fail(Err::MalformedFile, "matrix.entries: BOOL entries are 0 or 1");
        entries.push_back(Element::boolean(b == 1));
        break;
      }
      case KernelTag::Trop:
        entries.push_back(Element::trop(trop_from_json(e, "matrix.entries")));
        break;
      case KernelTag::Nat: {
        Int v = int_from_json(e, "matrix.entries");
        if (v < 0) fail(Err::MalformedFile, "matrix.entries: NAT entries are nonnegative");
        entries.push_back(Element::nat(std::move(v)));
        break;
      }
      case KernelTag::Table: {
        int idx = small_int(e, "matrix.entries");
        if (idx < 0 || idx >= kernel.table_ptr()->order)
          fail(Err::MalformedFile, "matrix.entries: index out of table range");
        entries.push_back(Element::table(idx));
        break;
      }
    }
  }
  return SemiMatrix(kernel, rows, cols, std::move(entries));
}

Json matrix_to_json(const SemiMatrix& m) {
  Json j;
  switch (m.kernel().tag()) {
    case KernelTag::Bool: j["kernel"] = "BOOL"; break;
    case KernelTag::Trop: j["kernel"] = "TROP"; break;
    case KernelTag::Nat: j["kernel"] = "NAT"; break;
    case KernelTag::Table: j["kernel"] = "TABLE:" + m.kernel().table_ptr()->name; break;
  }
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json es = Json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (int k = 0; k < m.cols(); ++k) {
      const Element& e = m.at(i, k);
      switch (e.tag()) {
        case KernelTag::Bool: es.push_back(e.as_bool() ? 1 : 0); break;
        case KernelTag::Trop: es.push_back(format_trop(e.as_trop())); break;
        case KernelTag::Nat: es.push_back(int_to_json(e.as_nat())); break;
        case KernelTag::Table: es.push_back(e.as_table()); break;
      }
    }
  j["entries"] = std::move(es);
  return j;
}

SemiMatrix load_matrix_file(const std::string& path) {
  return matrix_from_json(load_json_file(path),
                          std::filesystem::path(path).parent_path().string());
}

// ---- semilattices -----------------------------------------------------------

namespace {

// OR-closure with the zero vector, so coords files need not list joins
std::vector<std::vector<uint8_t>> close_under_join(std::vector<std::vector<uint8_t>> vecs) {
  size_t width = vecs.empty() ? 0 : vecs[0].size();
  std::set<std::vector<uint8_t>> seen(vecs.begin(), vecs.end());
  seen.insert(std::vector<uint8_t>(width, 0));
  std::vector<std::vector<uint8_t>> work(seen.begin(), seen.end());
  while (!work.empty()) {
    auto v = work.back();
    work.pop_back();
    std::vector<std::vector<uint8_t>> snapshot(seen.begin(), seen.end());
    for (const auto& w : snapshot) {
      std::vector<uint8_t> u(width);
      for (size_t i = 0; i < width; ++i) u[i] = v[i] | w[i];
      if ((int)seen.size() >= kMaxModuleSize && !seen.count(u))
        fail(Err::CarrierTooLarge, "join closure exceeds the module size bound");
      if (seen.insert(u).second) work.push_back(u);
    }
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

BoolSemimodule module_from_json(const Json& j) {
  if (j.contains("coords")) {
    const Json& cs = j.at("coords");
    if (!cs.is_array() || cs.empty())
      fail(Err::MalformedFile, "module.coords: expected a nonempty list of 0/1 vectors");
    std::vector<std::vector<uint8_t>> vecs;
    size_t width = 0;
    for (const Json& c : cs) {
      if (!c.is_array()) fail(Err::MalformedFile, "module.coords: expected 0/1 vectors");
      std::vector<uint8_t> v;
      for (const Json& b : c) {
        int x = small_int(b, "module.coords");
        if (x != 0 && x != 1) fail(Err::MalformedFile, "module.coords: entries are 0 or 1");
        v.push_back((uint8_t)x);
      }
      if (vecs.empty()) width = v.size();
      if (v.size() != width) fail(Err::MalformedFile, "module.coords: ragged vectors");
      vecs.push_back(std::move(v));
    }
    return module_from_coords(close_under_join(std::move(vecs)));
  }

  BoolSemimodule m;
  m.n = small_int(need(j, "n", "module"), "module.n");
  const Json& g = need(j, "join", "module");
  if (!g.is_array()) fail(Err::MalformedFile, "module.join: expected a table");
  for (const Json& r : g) {
    if (!r.is_array()) fail(Err::MalformedFile, "module.join: expected a table");
    std::vector<int> row;
    for (const Json& v : r) row.push_back(small_int(v, "module.join"));
    m.join.push_back(std::move(row));
  }
  m.bottom = small_int(need(j, "bottom", "module"), "module.bottom");
  if (auto v = validate_module(m))
    fail(Err::MalformedFile, "module: rule '" + v->rule + "' fails");
  return m;
}

Json module_to_json(const BoolSemimodule& m) {
  Json j;
  if (m.coords) {
    Json cs = Json::array();
    for (const auto& v : *m.coords) {
      Json row = Json::array();
      for (uint8_t b : v) row.push_back((int)b);
      cs.push_back(std::move(row));
    }
    j["coords"] = std::move(cs);
    return j;
  }
  j["n"] = m.n;
  j["join"] = m.join;
  j["bottom"] = m.bottom;
  return j;
}

BoolSemimodule load_module_file(const std::string& path) {
  return module_from_json(load_json_file(path));
}

// ---- tropical spans ---------------------------------------------------------

TropSpan span_from_json(const Json& j) {
  TropSpan sp;
  sp.ambient = small_int(need(j, "ambient", "span"), "span.ambient");
  const Json& gs = need(j, "generators", "span");
  if (!gs.is_array()) fail(Err::MalformedFile, "span.generators: expected a list");
  for (const Json& g : gs) {
    if (!g.is_array()) fail(Err::MalformedFile, "span.generators: expected vectors");
    TropVec v;
    for (const Json& e : g) v.push_back(trop_from_json(e, "span.generators"));
    sp.gens.push_back(std::move(v));
  }
  validate_span(sp);
  return sp;
}

Json span_to_json(const TropSpan& s) {
  Json j;
  j["ambient"] = s.ambient;
  Json gs = Json::array();
  for (const auto& g : s.gens) {
    Json row = Json::array();
    for (const Trop& t : g) row.push_back(format_trop(t));
    gs.push_back(std::move(row));
  }
  j["generators"] = std::move(gs);
  return j;
}

TropSpan load_span_file(const std::string& path) { return span_from_json(load_json_file(path)); }

// ---- limit systems ----------------------------------------------------------

IntMatrix intmatrix_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) fail(Err::MalformedFile, where + ": expected matrix rows");
  std::vector<std::vector<Int>> rows;
  for (const Json& r : j) {
    if (!r.is_array()) fail(Err::MalformedFile, where + ": expected matrix rows");
    std::vector<Int> row;
    for (const Json& v : r) row.push_back(int_from_json(v, where));
    rows.push_back(std::move(row));
  }
  return IntMatrix(rows);
}

Json intmatrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.rows; ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols; ++j) row.push_back(int_to_json(m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

LimitSystem system_from_json(const Json& j) {
  LimitSystem sys;
  const Json& us = need(j, "units", "system");
  if (!us.is_array() || us.empty()) fail(Err::MalformedFile, "system.units: expected stage units");
  for (const Json& u : us) {
    if (!u.is_array()) fail(Err::MalformedFile, "system.units: expected vectors");
    OrderedGroup g;
    for (const Json& v : u) g.unit.push_back(int_from_json(v, "system.units"));
    g.rank = (int)g.unit.size();
    sys.groups.push_back(std::move(g));
  }
  const Json& ms = need(j, "maps", "system");
  if (!ms.is_array()) fail(Err::MalformedFile, "system.maps: expected a list of matrices");
  for (const Json& m : ms) sys.maps.push_back(intmatrix_from_json(m, "system.maps"));
  if (j.contains("period") && !j.at("period").is_null())
    sys.period = small_int(j.at("period"), "system.period");
  validate_system(sys);
  return sys;
}

Json system_to_json(const LimitSystem& s) {
  Json j;
  Json us = Json::array();
  for (const auto& g : s.groups) {
    Json u = Json::array();
    for (const Int& v : g.unit) u.push_back(int_to_json(v));
    us.push_back(std::move(u));
  }
  j["units"] = std::move(us);
  Json ms = Json::array();
  for (const auto& m : s.maps) ms.push_back(intmatrix_to_json(m));
  j["maps"] = std::move(ms);
  if (s.period) j["period"] = *s.period;
  return j;
}

LimitSystem load_system_file(const std::string& path) {
  return system_from_json(load_json_file(path));
}

// ---- diagrams ----------------------------------------------------------------

BratteliPresentation bratteli_from_json(const Json& j) {
  BratteliPresentation b;
  if (j.contains("field")) b.field = j.at("field").get<std::string>();
  const Json& ls = need(j, "levels", "diagram");
  if (!ls.is_array() || ls.empty()) fail(Err::MalformedFile, "diagram.levels: expected size vectors");
  for (const Json& l : ls) {
    if (!l.is_array()) fail(Err::MalformedFile, "diagram.levels: expected size vectors");
    std::vector<Int> lv;
    for (const Json& v : l) lv.push_back(int_from_json(v, "diagram.levels"));
    b.levels.push_back(std::move(lv));
  }
  const Json& ss = need(j, "steps", "diagram");
  if (!ss.is_array()) fail(Err::MalformedFile, "diagram.steps: expected a list of matrices");
  for (const Json& s : ss) b.steps.push_back(intmatrix_from_json(s, "diagram.steps"));
  if (j.contains("period") && !j.at("period").is_null())
    b.period = small_int(j.at("period"), "diagram.period");
  validate_bratteli(b);
  return b;
}

Json bratteli_to_json(const BratteliPresentation& b) {
  Json j;
  j["field"] = b.field;
  Json ls = Json::array();
  for (const auto& l : b.levels) {
    Json lv = Json::array();
    for (const Int& v : l) lv.push_back(int_to_json(v));
    ls.push_back(std::move(lv));
  }
  j["levels"] = std::move(ls);
  Json ss = Json::array();
  for (const auto& s : b.steps) ss.push_back(intmatrix_to_json(s));
  j["steps"] = std::move(ss);
  if (b.period) j["period"] = *b.period;
  return j;
}

BratteliPresentation load_bratteli_file(const std::string& path) {
  return bratteli_from_json(load_json_file(path));
}

LimitElement parse_limit_element(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos)
    fail(Err::MalformedFile, "element '" + text + "': expected stage:c1,c2,...");
  LimitElement e;
  auto stage = parse_int(text.substr(0, colon));
  if (!stage || *stage < 0)
    fail(Err::MalformedFile, "element '" + text + "': bad stage");
  e.stage = (int)stage->convert_to<long long>();
  std::string rest = text.substr(colon + 1);
  size_t pos = 0;
  while (true) {
    size_t comma = rest.find(',', pos);
    std::string tok = rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    auto v = parse_int(tok);
    if (!v) fail(Err::MalformedFile, "element '" + text + "': bad coordinate '" + tok + "'");
    e.v.push_back(*v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return e;
}

}  // namespace semik
