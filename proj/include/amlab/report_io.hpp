#pragma once

/// @file report_io.hpp
/// Deterministic report serialization. CSV numeric cells use scientific
/// notation with 5 significant digits; percentages use 2 fixed decimals.
/// Identical report content always serializes to identical bytes.

#include "amlab/power.hpp"
#include "amlab/sim.hpp"

#include <string>

namespace amlab {

enum class ReportFormat { Structured, Csv };

/// "%.4e" rendering, e.g. 2.4628e-04.
std::string sci5(double value);
/// "%.2f" rendering, e.g. 13.92.
std::string pct2(double value);

/// CSV columns: design,tech,dynamic_power_w,short_circuit_power_w,
/// static_power_w,total_power_w,static_delay_s,dynamic_delay_s,delay_used,
/// edp_js,transistors
std::string analysis_to_csv(const AnalysisReport& report);
std::string analysis_to_json(const AnalysisReport& report);

/// Two-row table mirroring the published comparison layout, columns:
/// technology,design,total_power_w,prop_delay_s,edp_js,transistors
std::string comparison_to_csv(const ComparisonReport& report);
/// Per-metric rows: technology,metric,conventional,proposed,improvement_pct
std::string improvements_to_csv(const ComparisonReport& report);

/// Columns: net_id,name,toggles,activity
std::string activity_to_csv(const Circuit& circuit, const ActivityProfile& profile);

/// Columns: label,power_w,delay_s,edp_listed_js,edp_recomputed_js,
/// rel_error,verdict,nearest_label,nearest_recomputed_js
std::string paper_check_to_csv(const PaperCheckReport& report);
/// Human-readable verdict listing plus recomputed improvements.
std::string paper_check_to_text(const PaperCheckReport& report);

/// @throws IoError on filesystem failure
void write_text_file(const std::string& payload, const std::string& path);

} // namespace amlab
