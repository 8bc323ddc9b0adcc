#pragma once

#include <string>

#include "semik/serialize.hpp"

namespace semik {

inline constexpr const char* kSemikVersion = "0.1.0";

// Machine-readable run record.  Serialization is deterministic (sorted keys);
// two runs over identical inputs differ only in the elapsed field.
struct RunReport {
  std::string subcommand;
  Json inputs = Json::object();   // digests and echoed flags
  Json payload = Json::object();  // verdicts and values
  double elapsed_seconds = 0.0;
};

Json report_to_json(const RunReport& r);
std::string emit_report(const RunReport& r, const std::string& format);  // json | table

}  // namespace semik
