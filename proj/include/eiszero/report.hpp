#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "eiszero/zeros.hpp"

namespace eiszero {

inline constexpr int kSchemaVersion = 1;

nlohmann::json report_to_json(const ZeroCountReport& r);
// Throws std::invalid_argument on a missing field or an unknown schema version.
ZeroCountReport report_from_json(const nlohmann::json& j);

// One JSON object per line.
void write_ndjson(std::ostream& os, std::span<const ZeroCountReport> reports);
std::vector<ZeroCountReport> read_ndjson(std::istream& is);

// Header row, then one row per report; list-valued columns hold JSON text.
void write_csv(std::ostream& os, std::span<const ZeroCountReport> reports);
std::vector<ZeroCountReport> read_csv(std::istream& is);

// Splits one CSV record, honouring double-quoted fields.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_quote(const std::string& field);

struct RangeSummary {
    int pairs = 0;
    int errors = 0;
    int valence_failures = 0;
    int count_mismatches = 0;  // enforced A/B mismatches only
    int order_mismatches = 0;
    int interior_zeros = 0;
    int failed = 0;
};

RangeSummary summarize(std::span<const ZeroCountReport> reports);
nlohmann::json summary_to_json(const RangeSummary& s);

}  // namespace eiszero
