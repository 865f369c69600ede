#include "hubbard/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "hubbard/errors.hpp"
#include "json.hpp"

namespace hubbard {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& s) {
  if (s.empty()) throw DomainError("read_csv: empty numeric field");
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) throw DomainError("read_csv: bad number '" + s + "'");
  return x;
}

}  // namespace

int output_precision() {
  const char* env = std::getenv(kPrecisionVariable);
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  char* end = nullptr;
  const long p = std::strtol(env, &end, 10);
  if (*end != '\0' || p < 1 || p > 17) return kDefaultPrecision;
  return static_cast<int>(p);
}

std::string format_number(double x, int precision) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

void write_csv(std::ostream& os, const ScanTable& table, int precision) {
  for (const auto& [key, value] : table.metadata) os << "# " << key << ": " << value << '\n';
  os << kCsvHeader << '\n';
  for (const ScanRecord& r : table.records) {
    os << format_number(r.parameter, precision) << ',' << format_number(r.energy_per_site, precision) << ','
       << format_number(r.w, precision) << ',' << format_number(r.Ev, precision) << ',' << to_string(r.method) << ','
       << r.status << '\n';
  }
}

ScanTable read_csv(std::istream& is) {
  ScanTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (!header_seen) {
      if (line.rfind("# ", 0) == 0) {
        const auto colon = line.find(": ", 2);
        if (colon == std::string::npos) throw DomainError("read_csv: metadata line without ': '");
        table.metadata.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
        continue;
      }
      if (line != kCsvHeader) throw DomainError("read_csv: unexpected header '" + line + "'");
      header_seen = true;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 6) throw DomainError("read_csv: expected 6 fields in '" + line + "'");
    ScanRecord r;
    r.parameter = parse_number(fields[0]);
    r.energy_per_site = parse_number(fields[1]);
    r.w = parse_number(fields[2]);
    r.Ev = parse_number(fields[3]);
    const auto method = parse_method(fields[4]);
    if (!method) throw DomainError("read_csv: unknown method '" + fields[4] + "'");
    r.method = *method;
    r.status = fields[5];
    table.records.push_back(std::move(r));
  }
  if (!header_seen) throw DomainError("read_csv: missing header");
  return table;
}

void write_json(std::ostream& os, const ScanTable& table, int precision) {
  using nlohmann::ordered_json;
  const auto number = [precision](double x) -> ordered_json {
    if (!std::isfinite(x)) return nullptr;
    return std::strtod(format_number(x, precision).c_str(), nullptr);
  };
  ordered_json doc;
  doc["metadata"] = ordered_json::object();
  for (const auto& [key, value] : table.metadata) doc["metadata"][key] = value;
  doc["records"] = ordered_json::array();
  for (const ScanRecord& r : table.records) {
    ordered_json row;
    row["param"] = number(r.parameter);
    row["energy_per_site"] = number(r.energy_per_site);
    row["w"] = number(r.w);
    row["Ev"] = number(r.Ev);
    row["method"] = std::string(to_string(r.method));
    row["status"] = r.status;
    doc["records"].push_back(std::move(row));
  }
  os << doc.dump(2) << '\n';
}

}  // namespace hubbard
