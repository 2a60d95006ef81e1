// Audit report assembly. Reports are serialized as JSON with insertion-
// ordered keys (documented in docs/report_schema.md); they embed a content
// digest of the input files, never timestamps or environment data, so
// re-runs on identical inputs are byte-identical.
#pragma once

#include "pvaudit/pplot.hpp"
#include "pvaudit/searchspace.hpp"
#include "pvaudit/simulate.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace pvaudit {

using ordered_json = nlohmann::ordered_json;

// FNV-1a 64-bit content hash, rendered as "fnv1a64:<16 hex digits>".
std::uint64_t fnv1a64(std::string_view bytes);
std::string digest_label(std::string_view bytes);

// Whole-file helpers; read failures raise DataError naming the path.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

ordered_json classification_json(const PlotClassification& c);

struct OutcomeAudit {
  PValueSeries series;
  PlotClassification classification;
  std::string svg_file;  // file name within the output directory
};

ordered_json plot_report_json(const std::string& inputs_digest,
                              const std::vector<OutcomeAudit>& outcomes,
                              const std::vector<std::string>& notes);

ordered_json count_report_json(const std::string& inputs_digest,
                               const std::vector<SearchSpaceRecord>& records,
                               double alpha);

ordered_json simulate_report_json(const SimulationReport& report,
                                  const ClassifyThresholds& thresholds);

}  // namespace pvaudit
