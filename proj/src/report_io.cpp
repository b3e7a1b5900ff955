#include "amlab/report_io.hpp"

#include "amlab/errors.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace amlab {

std::string sci5(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4e", value);
    return buf;
}

std::string pct2(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.2f", value);
    return buf;
}

std::string analysis_to_csv(const AnalysisReport& r) {
    std::ostringstream out;
    out << "design,tech,dynamic_power_w,short_circuit_power_w,static_power_w,total_power_w,"
           "static_delay_s,dynamic_delay_s,delay_used,edp_js,transistors\n";
    out << r.design << ',' << r.tech << ',' << sci5(r.dynamic_power) << ','
        << sci5(r.short_circuit_power) << ',' << sci5(r.static_power) << ','
        << sci5(r.total_power) << ',' << sci5(r.static_delay) << ',' << sci5(r.dynamic_delay)
        << ',' << r.delay_used << ',' << sci5(r.edp) << ',' << r.transistors << "\n";
    return out.str();
}

std::string analysis_to_json(const AnalysisReport& r) {
    nlohmann::ordered_json doc;
    doc["design"] = r.design;
    doc["tech"] = r.tech;
    doc["dynamic_power_w"] = r.dynamic_power;
    doc["short_circuit_power_w"] = r.short_circuit_power;
    doc["static_power_w"] = r.static_power;
    doc["total_power_w"] = r.total_power;
    doc["static_delay_s"] = r.static_delay;
    doc["dynamic_delay_s"] = r.dynamic_delay;
    doc["delay_used"] = r.delay_used;
    doc["edp_js"] = r.edp;
    doc["transistors"] = r.transistors;
    return doc.dump(2) + "\n";
}

std::string comparison_to_csv(const ComparisonReport& r) {
    std::ostringstream out;
    out << "technology,design,total_power_w,prop_delay_s,edp_js,transistors\n";
    out << r.tech << ",conventional," << sci5(r.power.conventional) << ','
        << sci5(r.delay.conventional) << ',' << sci5(r.edp.conventional) << ','
        << static_cast<std::uint64_t>(r.transistors.conventional) << "\n";
    out << r.tech << ",proposed," << sci5(r.power.proposed) << ',' << sci5(r.delay.proposed)
        << ',' << sci5(r.edp.proposed) << ',' << static_cast<std::uint64_t>(r.transistors.proposed)
        << "\n";
    return out.str();
}

std::string improvements_to_csv(const ComparisonReport& r) {
    std::ostringstream out;
    out << "technology,metric,conventional,proposed,improvement_pct\n";
    auto row = [&](const char* metric, const MetricComparison& m, bool integral) {
        out << r.tech << ',' << metric << ',';
        if (integral)
            out << static_cast<std::uint64_t>(m.conventional) << ','
                << static_cast<std::uint64_t>(m.proposed);
        else
            out << sci5(m.conventional) << ',' << sci5(m.proposed);
        out << ',' << pct2(m.improvement_pct) << "\n";
    };
    row("total_power_w", r.power, false);
    row("prop_delay_s", r.delay, false);
    row("edp_js", r.edp, false);
    row("transistors", r.transistors, true);
    return out.str();
}

std::string activity_to_csv(const Circuit& c, const ActivityProfile& profile) {
    std::ostringstream out;
    out << "net_id,name,toggles,activity\n";
    char buf[40];
    for (NetId n = 0; n < c.net_count(); ++n) {
        std::snprintf(buf, sizeof buf, "%.6f", profile.activity(n));
        out << n << ',' << c.net_name(n) << ',' << profile.toggles[n] << ',' << buf << "\n";
    }
    return out.str();
}

std::string paper_check_to_csv(const PaperCheckReport& r) {
    std::ostringstream out;
    out << "label,power_w,delay_s,edp_listed_js,edp_recomputed_js,rel_error,verdict,"
           "nearest_label,nearest_recomputed_js\n";
    for (const auto& row : r.rows) {
        out << row.row.label << ',' << sci5(row.row.power_w) << ',' << sci5(row.row.delay_s)
            << ',' << sci5(row.row.edp_listed_js) << ',' << sci5(row.edp_recomputed) << ','
            << sci5(row.rel_error) << ',' << (row.consistent ? "CONSISTENT" : "ANOMALOUS") << ','
            << row.nearest_label << ',' << sci5(row.nearest_value) << "\n";
    }
    return out.str();
}

std::string paper_check_to_text(const PaperCheckReport& r) {
    std::ostringstream out;
    out << "EDP audit (tolerance " << pct2(r.tolerance * 100.0) << "% relative):\n";
    for (const auto& row : r.rows) {
        out << "  " << row.row.label << ": listed=" << sci5(row.row.edp_listed_js)
            << " recomputed=" << sci5(row.edp_recomputed) << " rel_error=" << sci5(row.rel_error)
            << (row.consistent ? " CONSISTENT" : " ANOMALOUS");
        if (!row.consistent)
            out << " (nearest recomputed: " << row.nearest_label << " = "
                << sci5(row.nearest_value) << ")";
        out << "\n";
    }
    if (!r.improvements.empty()) {
        out << "Recomputed improvements from listed values:\n";
        for (const auto& imp : r.improvements)
            out << "  " << imp.pair << imp.metric << ": conventional=" << sci5(imp.conventional)
                << " proposed=" << sci5(imp.proposed) << " improvement=" << pct2(imp.improvement_pct)
                << "%\n";
    }
    return out.str();
}

void write_text_file(const std::string& payload, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << payload;
    if (!out.flush())
        throw IoError("write failed for '" + path + "'");
}

} // namespace amlab
