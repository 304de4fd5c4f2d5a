#ifndef FLAGROCK_REPORT_HPP
#define FLAGROCK_REPORT_HPP

// Report assembly: one schema-versioned structure, rendered to JSON or
// text from the same data.  JSON field order is fixed so identical inputs
// produce byte-identical reports.

#include <string>

#include <json.hpp>

#include "flagrock/spectral.hpp"

namespace flagrock {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr int kSchemaVersion = 1;

struct Report {
    Verdict verdict;
    double timing_ms = 0.0;
};

nlohmann::ordered_json report_to_json(const Report& r);
Report report_from_json(const nlohmann::ordered_json& j);
std::string report_to_text(const Report& r);

// Writes via a temporary file and rename, so readers never see a partial
// report.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace flagrock

#endif
