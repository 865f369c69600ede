#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hubbard/scans.hpp"

namespace hubbard {

/// Scan records plus ordered key/value run metadata.
struct ScanTable {
  std::vector<std::pair<std::string, std::string>> metadata;
  std::vector<ScanRecord> records;
};

inline constexpr const char* kCsvHeader = "param,energy_per_site,w,Ev,method,status";
inline constexpr const char* kPrecisionVariable = "HUBBARD_EV_PRECISION";
inline constexpr int kDefaultPrecision = 17;

/// Significant digits for serialized numbers: HUBBARD_EV_PRECISION when set
/// to an integer in [1, 17], otherwise 17.
int output_precision();

/// printf-style %.<precision>g, with "nan", "inf" and "-inf" spelled out.
std::string format_number(double x, int precision = kDefaultPrecision);

/// Metadata as "# key: value" lines, then the header, then one row per record.
void write_csv(std::ostream& os, const ScanTable& table, int precision = kDefaultPrecision);

/// Inverse of write_csv. Throws DomainError on a malformed stream.
ScanTable read_csv(std::istream& is);

/// {"metadata": {...}, "records": [{param, energy_per_site, w, Ev, method, status}, ...]}
/// with numbers rounded to `precision` digits and NaN as null.
void write_json(std::ostream& os, const ScanTable& table, int precision = kDefaultPrecision);

}  // namespace hubbard
