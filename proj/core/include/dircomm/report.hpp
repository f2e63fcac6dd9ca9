#pragma once

#include <dircomm/extraction.hpp>
#include <dircomm/graph.hpp>

#include <iosfwd>
#include <string>
#include <string_view>

namespace dircomm {

/// Bumped whenever a field is renamed or removed from the JSON report.
inline constexpr int report_schema_version = 1;

/**
 * Serializes an extraction report as pretty-printed JSON:
 *
 *   { "schema_version", "method", "config": {...}, "stopped_reason",
 *     "communities": [ { "rank", "members": [labels], "size", "W", "q_d",
 *                        "O_S", "B_in", "B_out", "empirical_p",
 *                        "null_scores": {"count","min","median","max"} } ],
 *     "rejected_candidate": {...} | null }
 *
 * Output depends only on its inputs, so equal reports give equal bytes.
 */
std::string report_to_json(const ExtractionReport &report, const DirectedGraph &g,
                           const ExtractionConfig &config, std::string_view method);

void write_report_json(std::ostream &out, const ExtractionReport &report, const DirectedGraph &g,
                       const ExtractionConfig &config, std::string_view method);

} // namespace dircomm
