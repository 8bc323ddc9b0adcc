#include "semik/report.hpp"

#include <iomanip>
#include <sstream>

namespace semik {

Json report_to_json(const RunReport& r) {
  Json j;
  j["subcommand"] = r.subcommand;
  j["inputs"] = r.inputs;
  j["payload"] = r.payload;
  j["version"] = kSemikVersion;
  j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

namespace {

void flatten(const Json& j, const std::string& prefix,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

}  // namespace

std::string emit_report(const RunReport& r, const std::string& format) {
  Json j = report_to_json(r);
  if (format == "json") return j.dump(2) + "\n";
  if (format != "table") fail(Err::MalformedFile, "unknown format '" + format + "'");

  std::vector<std::pair<std::string, std::string>> rows;
  flatten(j, "", rows);
  size_t width = 0;
  for (const auto& [k, v] : rows) width = std::max(width, k.size());
  std::ostringstream os;
  for (const auto& [k, v] : rows)
    os << std::left << std::setw((int)width + 2) << k << v << "\n";
  return os.str();
}

}  // namespace semik
