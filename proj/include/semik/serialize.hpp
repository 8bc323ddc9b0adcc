#pragma once

#include <string>

#include "json.hpp"
#include "semik/boolmod.hpp"
#include "semik/bratteli.hpp"
#include "semik/limits.hpp"
#include "semik/matrix.hpp"
#include "semik/tables.hpp"
#include "semik/tropical.hpp"

namespace semik {

using Json = nlohmann::json;

std::string read_file(const std::string& path);          // MalformedFile on I/O failure
Json load_json_file(const std::string& path);
std::string fnv1a_digest(const std::string& bytes);

// ---- integers and scalars --------------------------------------------------

Int int_from_json(const Json& j, const std::string& where);
Json int_to_json(const Int& v);  // number when it fits in 53 bits, else string
Trop trop_from_json(const Json& j, const std::string& where);

// ---- cayley tables: {"order", "add", "mul", "zero", "one"} -----------------

FiniteSemiringTable table_from_json(const Json& j);
Json table_to_json(const FiniteSemiringTable& t);
TablePtr load_table_file(const std::string& path);

// ---- matrices: {"kernel", "rows", "cols", "entries"} -----------------------
// kernel "TABLE:<name>" resolves <name> against the directory of the matrix
// file; TROP entries are strings, everything else plain integers

SemiMatrix matrix_from_json(const Json& j, const std::string& base_dir);
Json matrix_to_json(const SemiMatrix& m);
SemiMatrix load_matrix_file(const std::string& path);

// ---- semilattices: {"coords": [[...]]} or {"n", "join", "bottom"} ----------
// a coords file is closed under join on load

BoolSemimodule module_from_json(const Json& j);
Json module_to_json(const BoolSemimodule& m);
BoolSemimodule load_module_file(const std::string& path);

// ---- tropical spans: {"ambient", "generators": [["0","-1/2","-inf"],...]} --

TropSpan span_from_json(const Json& j);
Json span_to_json(const TropSpan& s);
TropSpan load_span_file(const std::string& path);

// ---- limit systems: {"units", "maps", "period"?} ---------------------------

IntMatrix intmatrix_from_json(const Json& j, const std::string& where);
Json intmatrix_to_json(const IntMatrix& m);
LimitSystem system_from_json(const Json& j);
Json system_to_json(const LimitSystem& s);
LimitSystem load_system_file(const std::string& path);

// ---- diagrams: {"field", "levels", "steps", "period"?} ---------------------

BratteliPresentation bratteli_from_json(const Json& j);
Json bratteli_to_json(const BratteliPresentation& b);
BratteliPresentation load_bratteli_file(const std::string& path);

// "k:c1,c2,..." as used by the limit subcommands
LimitElement parse_limit_element(const std::string& text);

}  // namespace semik
