#include "amlab/power.hpp"

#include "amlab/errors.hpp"
#include "amlab/paper_tables_data.hpp"

#include "json.hpp"

#include <cmath>
#include <stdexcept>

namespace amlab {

double dynamic_power(const Circuit& c, const ActivityProfile& activity, const TechProfile& tech) {
    if (activity.toggles.size() != c.net_count() || activity.circuit_name != c.name())
        throw std::invalid_argument("dynamic_power: activity profile for '" +
                                    activity.circuit_name + "' does not match circuit '" +
                                    c.name() + "'");
    double power = 0.0;
    for (NetId n = 0; n < c.net_count(); ++n) {
        const double cload = tech.cload_per_input * c.fanout(n);
        power += tech.vdd * tech.vswing * cload * tech.freq * activity.activity(n);
    }
    return power;
}

PowerBreakdown total_power(const Circuit& c, const ActivityProfile& activity,
                           const TechProfile& tech) {
    PowerBreakdown p;
    p.dynamic = dynamic_power(c, activity, tech);
    for (const Cell& cell : c.cells()) {
        p.short_circuit += tech.vdd * tech.isc.of(cell.kind);
        p.leakage += tech.vdd * tech.ileak.of(cell.kind);
    }
    p.total = p.dynamic + p.short_circuit + p.leakage;
    return p;
}

double edp(double power_w, double delay_s) {
    if (power_w < 0.0 || delay_s < 0.0)
        throw std::invalid_argument("edp: power and delay must be >= 0");
    return power_w * delay_s * delay_s;
}

std::uint64_t transistor_count(const Circuit& c, const TechProfile& tech) {
    std::uint64_t count = 0;
    for (const Cell& cell : c.cells())
        count += static_cast<std::uint64_t>(tech.transistors.of(cell.kind));
    return count;
}

TransitionSource default_transition_source(unsigned width, std::uint64_t seed,
                                           std::uint64_t fallback_samples) {
    if (width <= 4)
        return ExhaustiveTransitions{};
    return RandomTransitions{seed, fallback_samples};
}

StimulusSource default_stimulus_source(unsigned width, std::uint64_t seed) {
    if (width <= 8)
        return ExhaustivePairs{};
    return RandomSequence{seed, 65536};
}

AnalysisReport analyze_circuit(const Circuit& c, const TechProfile& tech,
                               const StimulusSource& stimulus,
                               const std::optional<TransitionSource>& transitions,
                               unsigned workers) {
    AnalysisReport report;
    report.design = c.name();
    report.tech = tech.name;

    const ActivityProfile activity = activity_profile(c, stimulus, workers);
    const PowerBreakdown power = total_power(c, activity, tech);
    report.dynamic_power = power.dynamic;
    report.short_circuit_power = power.short_circuit;
    report.static_power = power.leakage;
    report.total_power = power.total;

    report.static_delay = static_critical_path(c, tech).delay;
    if (transitions) {
        report.dynamic_delay = worst_dynamic_delay(c, tech, *transitions).delay;
        report.delay_used = "dynamic";
    } else {
        report.delay_used = "static";
    }
    const double delay = report.delay_used == "dynamic" ? report.dynamic_delay
                                                        : report.static_delay;
    report.edp = edp(report.total_power, delay);
    report.transistors = transistor_count(c, tech);
    return report;
}

namespace {

double improvement_pct(double conventional, double proposed, const char* metric) {
    if (!(conventional > 0.0))
        throw std::invalid_argument(std::string("compare: conventional ") + metric +
                                    " must be > 0");
    return (conventional - proposed) / conventional * 100.0;
}

} // namespace

ComparisonReport compare_designs(const AnalysisReport& conventional,
                                 const AnalysisReport& proposed) {
    if (conventional.tech != proposed.tech)
        throw std::invalid_argument("compare: tech mismatch ('" + conventional.tech + "' vs '" +
                                    proposed.tech + "')");
    ComparisonReport r;
    r.tech = conventional.tech;
    auto fill = [&](MetricComparison& m, double conv, double prop, const char* metric) {
        m.conventional = conv;
        m.proposed = prop;
        m.improvement_pct = improvement_pct(conv, prop, metric);
    };
    const double conv_delay = conventional.delay_used == "dynamic" ? conventional.dynamic_delay
                                                                   : conventional.static_delay;
    const double prop_delay = proposed.delay_used == "dynamic" ? proposed.dynamic_delay
                                                               : proposed.static_delay;
    fill(r.power, conventional.total_power, proposed.total_power, "power");
    fill(r.delay, conv_delay, prop_delay, "delay");
    fill(r.edp, conventional.edp, proposed.edp, "edp");
    fill(r.transistors, static_cast<double>(conventional.transistors),
         static_cast<double>(proposed.transistors), "transistors");
    return r;
}

PaperCheckReport paper_check(const std::vector<PaperTableRow>& rows, double tolerance) {
    if (rows.empty())
        throw std::invalid_argument("paper_check: no rows");
    for (const auto& row : rows)
        if (!(row.power_w > 0.0) || !(row.delay_s > 0.0) || !(row.edp_listed_js > 0.0))
            throw std::invalid_argument("paper_check: row '" + row.label +
                                        "' has a non-positive entry");

    PaperCheckReport report;
    report.tolerance = tolerance;
    report.rows.reserve(rows.size());
    for (const auto& row : rows) {
        PaperRowCheck check;
        check.row = row;
        check.edp_recomputed = edp(row.power_w, row.delay_s);
        check.rel_error = std::abs(row.edp_listed_js - check.edp_recomputed) / row.edp_listed_js;
        check.consistent = check.rel_error <= tolerance;
        report.rows.push_back(check);
    }
    // Nearest recomputed value to each listed one, across all rows.
    for (auto& check : report.rows) {
        double best = -1.0;
        for (const auto& other : report.rows) {
            const double dist = std::abs(check.row.edp_listed_js - other.edp_recomputed);
            if (best < 0.0 || dist < best) {
                best = dist;
                check.nearest_label = other.row.label;
                check.nearest_value = other.edp_recomputed;
            }
        }
    }

    // Pair "<prefix>conventional" with "<prefix>proposed" rows.
    const std::string conv_tag = "conventional", prop_tag = "proposed";
    for (const auto& conv : rows) {
        if (conv.label.size() < conv_tag.size() ||
            conv.label.compare(conv.label.size() - conv_tag.size(), conv_tag.size(), conv_tag) != 0)
            continue;
        const std::string prefix = conv.label.substr(0, conv.label.size() - conv_tag.size());
        for (const auto& prop : rows) {
            if (prop.label != prefix + prop_tag)
                continue;
            auto add = [&](const char* metric, double cv, double pv) {
                report.improvements.push_back(
                    {prefix, metric, cv, pv, improvement_pct(cv, pv, metric)});
            };
            add("power", conv.power_w, prop.power_w);
            add("delay", conv.delay_s, prop.delay_s);
            add("edp", conv.edp_listed_js, prop.edp_listed_js);
        }
    }
    return report;
}

std::vector<PaperTableRow> paper_rows_from_json(std::string_view data) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(data);
    } catch (const nlohmann::json::exception& e) {
        throw ImportError(std::string("malformed table file: ") + e.what());
    }
    try {
        std::vector<PaperTableRow> rows;
        for (const auto& entry : doc.at("rows")) {
            PaperTableRow row;
            row.label = entry.at("label").get<std::string>();
            row.power_w = entry.at("power_w").get<double>();
            row.delay_s = entry.at("delay_s").get<double>();
            row.edp_listed_js = entry.at("edp_listed_js").get<double>();
            rows.push_back(std::move(row));
        }
        if (rows.empty())
            throw ImportError("malformed table file: no rows");
        return rows;
    } catch (const ImportError&) {
        throw;
    } catch (const std::exception& e) {
        throw ImportError(std::string("malformed table file: ") + e.what());
    }
}

const std::vector<PaperTableRow>& default_paper_rows() {
    static const std::vector<PaperTableRow> rows = paper_rows_from_json(kDefaultPaperTablesJson);
    return rows;
}

std::vector<CostAssignment> search_transistor_costs(const CellCounts& conventional,
                                                    const CellCounts& proposed,
                                                    std::uint64_t conventional_total,
                                                    std::uint64_t proposed_total, int lo, int hi) {
    std::vector<CostAssignment> feasible;
    for (int and2 = lo; and2 <= hi; ++and2) {
        for (int ha = lo; ha <= hi; ++ha) {
            for (int fa = lo; fa <= hi; ++fa) {
                const auto price = [&](const CellCounts& counts) {
                    return counts.and2 * static_cast<std::uint64_t>(and2) +
                           counts.ha * static_cast<std::uint64_t>(ha) +
                           counts.fa * static_cast<std::uint64_t>(fa);
                };
                if (price(conventional) == conventional_total && price(proposed) == proposed_total)
                    feasible.push_back({and2, ha, fa});
            }
        }
    }
    return feasible;
}

} // namespace amlab
