#pragma once

/// @file power.hpp
/// Power model (dynamic + short-circuit + leakage terms), energy-delay
/// product, transistor-count accounting, design comparison and an auditor
/// that recomputes published table rows.
///
/// Dynamic power: sum over nets of vdd * vswing * C_load * f * activity,
/// with C_load = cload_per_input * fanout. Short-circuit and leakage are
/// per-cell currents times vdd. EDP is power * delay^2 (energy per
/// operation, power * delay, times delay).

#include "amlab/builder.hpp"
#include "amlab/netlist.hpp"
#include "amlab/sim.hpp"
#include "amlab/tech.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace amlab {

/// @throws std::invalid_argument if the profile does not cover the circuit
double dynamic_power(const Circuit& circuit, const ActivityProfile& activity,
                     const TechProfile& tech);

struct PowerBreakdown {
    double dynamic = 0.0;
    double short_circuit = 0.0;
    double leakage = 0.0;
    double total = 0.0;
};

PowerBreakdown total_power(const Circuit& circuit, const ActivityProfile& activity,
                           const TechProfile& tech);

/// power * delay^2 [J*s]
double edp(double power_w, double delay_s);

std::uint64_t transistor_count(const Circuit& circuit, const TechProfile& tech);

struct AnalysisReport {
    std::string design;
    std::string tech;
    double dynamic_power = 0.0;
    double short_circuit_power = 0.0;
    double static_power = 0.0;
    double total_power = 0.0;
    double static_delay = 0.0;
    double dynamic_delay = 0.0; // 0 when not measured
    std::string delay_used;     // "dynamic" | "static": which delay fed the EDP
    double edp = 0.0;
    std::uint64_t transistors = 0;
};

/// Full metric sweep for one circuit: activity from `stimulus`, the three
/// power components, the static longest path, optionally the worst dynamic
/// settle delay, EDP from total power and the measured (else static) delay.
AnalysisReport analyze_circuit(const Circuit& circuit, const TechProfile& tech,
                               const StimulusSource& stimulus,
                               const std::optional<TransitionSource>& transitions,
                               unsigned workers = 1);

/// Exhaustive transitions for width <= 4, else `fallback_samples` seeded ones.
TransitionSource default_transition_source(unsigned width, std::uint64_t seed,
                                           std::uint64_t fallback_samples = 4096);
/// Exhaustive pairs for width <= 8, else a 65536-vector seeded sequence.
StimulusSource default_stimulus_source(unsigned width, std::uint64_t seed);

struct MetricComparison {
    double conventional = 0.0;
    double proposed = 0.0;
    double improvement_pct = 0.0; // (conv - prop) / conv * 100
};

struct ComparisonReport {
    std::string tech;
    MetricComparison power;
    MetricComparison delay;
    MetricComparison edp;
    MetricComparison transistors;
};

/// @throws std::invalid_argument on tech mismatch or a non-positive
///         conventional metric
ComparisonReport compare_designs(const AnalysisReport& conventional,
                                 const AnalysisReport& proposed);

/// One published table row. Labels follow "<table>/<technology>/<design>";
/// rows whose labels differ only in a trailing "conventional"/"proposed"
/// segment are paired for percent-improvement recomputation.
struct PaperTableRow {
    std::string label;
    double power_w = 0.0;
    double delay_s = 0.0;
    double edp_listed_js = 0.0;
};

struct PaperRowCheck {
    PaperTableRow row;
    double edp_recomputed = 0.0;
    double rel_error = 0.0; // |listed - recomputed| / listed
    bool consistent = false;
    std::string nearest_label; // recomputed value closest to the listed one
    double nearest_value = 0.0;
};

struct PaperImprovement {
    std::string pair;   // common label prefix of the paired rows
    std::string metric; // "power" | "delay" | "edp"
    double conventional = 0.0;
    double proposed = 0.0;
    double improvement_pct = 0.0;
};

struct PaperCheckReport {
    double tolerance = 0.0;
    std::vector<PaperRowCheck> rows;
    std::vector<PaperImprovement> improvements;
};

/// Recomputes each row's EDP as power * delay^2 and classifies it CONSISTENT
/// when the relative error against the listed value is within `tolerance`,
/// ANOMALOUS otherwise; anomalous rows also name the nearest recomputed
/// value among all rows (surfacing copy/shift mistakes). Improvements are
/// recomputed from the listed values of every conventional/proposed pair.
/// @throws std::invalid_argument on empty rows or non-positive entries
PaperCheckReport paper_check(const std::vector<PaperTableRow>& rows, double tolerance = 0.005);

/// Parses {"rows":[{label,power_w,delay_s,edp_listed_js,...}]}; extra fields
/// (source citations) are ignored. @throws ImportError
std::vector<PaperTableRow> paper_rows_from_json(std::string_view data);
/// The bundled reference tables (same content as data/paper_tables.json).
const std::vector<PaperTableRow>& default_paper_rows();

struct CostAssignment {
    int and2 = 0;
    int ha = 0;
    int fa = 0;
};

/// Integer search over per-kind transistor costs in [lo, hi] such that the
/// two cell censuses price out to the two published totals exactly.
std::vector<CostAssignment> search_transistor_costs(const CellCounts& conventional,
                                                    const CellCounts& proposed,
                                                    std::uint64_t conventional_total,
                                                    std::uint64_t proposed_total, int lo = 2,
                                                    int hi = 24);

} // namespace amlab
