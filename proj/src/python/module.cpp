#include "amlab/builder.hpp"
#include "amlab/errors.hpp"
#include "amlab/netlist.hpp"
#include "amlab/netlist_io.hpp"
#include "amlab/power.hpp"
#include "amlab/report_io.hpp"
#include "amlab/sim.hpp"
#include "amlab/tech.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

namespace py = pybind11;
using namespace amlab;

namespace {

StimulusSource make_stimulus(bool exhaustive, std::uint64_t seed, std::uint64_t length) {
    if (exhaustive)
        return StimulusSource{ExhaustivePairs{}};
    return StimulusSource{RandomSequence{seed, length}};
}

std::vector<NetId> to_vector(std::span<const NetId> nets) {
    return {nets.begin(), nets.end()};
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gate-level construction, simulation and power/area analysis of "
              "carry-save array multipliers";

    py::register_exception<ImportError>(m, "NetlistImportError", PyExc_ValueError);
    py::register_exception<IoError>(m, "NetlistIoError", PyExc_OSError);

    py::enum_<CellKind>(m, "CellKind")
        .value("AND2", CellKind::AND2)
        .value("HA", CellKind::HA)
        .value("FA", CellKind::FA);

    py::enum_<FirstRowStyle>(m, "FirstRowStyle")
        .value("FA_WITH_ZERO_CIN", FirstRowStyle::FaWithZeroCin)
        .value("HALF_ADDERS", FirstRowStyle::HalfAdders);

    py::class_<Cell>(m, "Cell")
        .def_readonly("id", &Cell::id)
        .def_readonly("kind", &Cell::kind)
        .def_readonly("inputs", &Cell::inputs)
        .def_readonly("outputs", &Cell::outputs);

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<std::string, unsigned>(), py::arg("name"), py::arg("width"))
        .def("add_net", &Circuit::add_net, py::arg("name"))
        .def("add_cell", &Circuit::add_cell, py::arg("kind"), py::arg("inputs"), py::arg("outputs"))
        .def("set_const_zero", &Circuit::set_const_zero)
        .def("set_x_inputs", &Circuit::set_x_inputs)
        .def("set_y_inputs", &Circuit::set_y_inputs)
        .def("set_product_outputs", &Circuit::set_product_outputs)
        .def("seal", &Circuit::seal)
        .def_property_readonly("sealed", &Circuit::sealed)
        .def_property_readonly("name", &Circuit::name)
        .def_property_readonly("width", &Circuit::width)
        .def_property_readonly("net_count", &Circuit::net_count)
        .def_property_readonly("cell_count", &Circuit::cell_count)
        .def("net_name", &Circuit::net_name, py::arg("net"))
        .def_property_readonly("cells", [](const Circuit& c) { return c.cells(); })
        .def_property_readonly("const_zero", &Circuit::const_zero)
        .def_property_readonly("x_inputs", [](const Circuit& c) { return to_vector(c.x_inputs()); })
        .def_property_readonly("y_inputs", [](const Circuit& c) { return to_vector(c.y_inputs()); })
        .def_property_readonly(
            "product_outputs", [](const Circuit& c) { return to_vector(c.product_outputs()); })
        .def("fanout", &Circuit::fanout, py::arg("net"))
        .def("__repr__", [](const Circuit& c) {
            return "<Circuit '" + c.name() + "' width=" + std::to_string(c.width()) +
                   " cells=" + std::to_string(c.cell_count()) + ">";
        });

    m.def("validate", [](const Circuit& c) { return validate(c); },
          "Diagnostics list; empty means the circuit is valid");

    py::class_<LevelMap>(m, "LevelMap")
        .def_readonly("level", &LevelMap::level)
        .def_readonly("max_level", &LevelMap::max_level);
    m.def("levelize", &levelize);

    py::class_<CellCounts>(m, "CellCounts")
        .def_readonly("and2", &CellCounts::and2)
        .def_readonly("ha", &CellCounts::ha)
        .def_readonly("fa", &CellCounts::fa)
        .def_property_readonly("adders", &CellCounts::adders)
        .def_property_readonly("total", &CellCounts::total)
        .def("__repr__", [](const CellCounts& s) {
            return "<CellCounts AND2=" + std::to_string(s.and2) + " HA=" + std::to_string(s.ha) +
                   " FA=" + std::to_string(s.fa) + ">";
        });
    m.def("cell_stats", &cell_stats);
    m.def("structurally_equal", &structurally_equal);

    m.def("build_conventional", &build_conventional, py::arg("width"),
          py::arg("first_row_style") = FirstRowStyle::FaWithZeroCin);
    m.def("build_proposed", &build_proposed, py::arg("width"));

    m.def(
        "export_circuit",
        [](const Circuit& c, const std::string& format) {
            return export_circuit(c, format == "text" ? ExportFormat::Text
                                                      : ExportFormat::Structured);
        },
        py::arg("circuit"), py::arg("format") = "structured");
    m.def("import_circuit", [](const std::string& data) { return import_circuit(data); });
    m.def(
        "write_circuit_file",
        [](const Circuit& c, const std::string& path, const std::string& format) {
            write_circuit_file(c, format == "text" ? ExportFormat::Text : ExportFormat::Structured,
                               path);
        },
        py::arg("circuit"), py::arg("path"), py::arg("format") = "structured");
    m.def("read_circuit_file", &read_circuit_file, py::arg("path"));

    py::class_<TechProfile>(m, "TechProfile")
        .def(py::init<>())
        .def_readwrite("name", &TechProfile::name)
        .def_readwrite("vdd", &TechProfile::vdd)
        .def_readwrite("vswing", &TechProfile::vswing)
        .def_readwrite("freq", &TechProfile::freq)
        .def_readwrite("cload_per_input", &TechProfile::cload_per_input)
        .def_property(
            "delays",
            [](const TechProfile& t) {
                return py::dict(py::arg("AND2") = t.delay.and2, py::arg("HA") = t.delay.ha,
                                py::arg("FA") = t.delay.fa);
            },
            [](TechProfile& t, const py::dict& d) {
                t.delay = {d["AND2"].cast<double>(), d["HA"].cast<double>(),
                           d["FA"].cast<double>()};
            })
        .def_property(
            "isc",
            [](const TechProfile& t) {
                return py::dict(py::arg("AND2") = t.isc.and2, py::arg("HA") = t.isc.ha,
                                py::arg("FA") = t.isc.fa);
            },
            [](TechProfile& t, const py::dict& d) {
                t.isc = {d["AND2"].cast<double>(), d["HA"].cast<double>(), d["FA"].cast<double>()};
            })
        .def_property(
            "ileak",
            [](const TechProfile& t) {
                return py::dict(py::arg("AND2") = t.ileak.and2, py::arg("HA") = t.ileak.ha,
                                py::arg("FA") = t.ileak.fa);
            },
            [](TechProfile& t, const py::dict& d) {
                t.ileak = {d["AND2"].cast<double>(), d["HA"].cast<double>(),
                           d["FA"].cast<double>()};
            })
        .def_property(
            "transistors",
            [](const TechProfile& t) {
                return py::dict(py::arg("AND2") = t.transistors.and2,
                                py::arg("HA") = t.transistors.ha,
                                py::arg("FA") = t.transistors.fa);
            },
            [](TechProfile& t, const py::dict& d) {
                t.transistors = {d["AND2"].cast<int>(), d["HA"].cast<int>(), d["FA"].cast<int>()};
            })
        .def("__repr__",
             [](const TechProfile& t) { return "<TechProfile '" + t.name + "'>"; });
    m.def("builtin_tech", [](const std::string& name) -> std::optional<TechProfile> {
        return builtin_tech(name);
    });
    m.def("load_tech", &load_tech, py::arg("name_or_path"));
    m.def("tech_from_json", [](const std::string& s) { return tech_from_json(s); });
    m.def("tech_to_json", &tech_to_json);

    m.def(
        "evaluate",
        [](const Circuit& c, std::uint64_t x, std::uint64_t y) {
            return evaluate(c, SimVector{x, y});
        },
        py::arg("circuit"), py::arg("x"), py::arg("y"));
    m.def(
        "evaluate_nets",
        [](const Circuit& c, std::uint64_t x, std::uint64_t y) {
            const auto values = evaluate_nets(c, SimVector{x, y});
            return std::vector<int>(values.begin(), values.end());
        },
        py::arg("circuit"), py::arg("x"), py::arg("y"),
        "Settled value of every net, indexed by net id");

    py::class_<VerifyResult::Failure>(m, "VerifyFailure")
        .def_readonly("x", &VerifyResult::Failure::x)
        .def_readonly("y", &VerifyResult::Failure::y)
        .def_readonly("got", &VerifyResult::Failure::got)
        .def_readonly("expected", &VerifyResult::Failure::expected);
    py::class_<VerifyResult>(m, "VerifyResult")
        .def_readonly("total", &VerifyResult::total)
        .def_readonly("passed", &VerifyResult::passed)
        .def_readonly("failed", &VerifyResult::failed)
        .def_readonly("failures", &VerifyResult::failures)
        .def_property_readonly("ok", &VerifyResult::ok)
        .def("__repr__", [](const VerifyResult& r) {
            return "<VerifyResult " + std::to_string(r.passed) + "/" + std::to_string(r.total) +
                   " passed>";
        });
    m.def("exhaustive_verify", &exhaustive_verify, py::arg("circuit"),
          py::arg("max_recorded") = 100);

    py::class_<ActivityProfile>(m, "ActivityProfile")
        .def_readonly("circuit_name", &ActivityProfile::circuit_name)
        .def_readonly("vectors_applied", &ActivityProfile::vectors_applied)
        .def_readonly("toggles", &ActivityProfile::toggles)
        .def("activity", &ActivityProfile::activity, py::arg("net"));
    m.def(
        "activity_profile",
        [](const Circuit& c, bool exhaustive, std::uint64_t seed, std::uint64_t length,
           unsigned workers) {
            return activity_profile(c, make_stimulus(exhaustive, seed, length), workers);
        },
        py::arg("circuit"), py::arg("exhaustive") = true, py::arg("seed") = 0,
        py::arg("length") = 4096, py::arg("workers") = 1);
    m.def("activity_to_csv", &activity_to_csv);

    py::class_<TimingResult>(m, "TimingResult")
        .def_readonly("delay", &TimingResult::delay)
        .def_readonly("path", &TimingResult::path)
        .def_readonly("events", &TimingResult::events);
    m.def("static_critical_path", &static_critical_path, py::arg("circuit"), py::arg("tech"));
    m.def(
        "dynamic_settle_delay",
        [](const Circuit& c, const TechProfile& t, std::uint64_t fx, std::uint64_t fy,
           std::uint64_t tx, std::uint64_t ty) {
            return dynamic_settle_delay(c, t, SimVector{fx, fy}, SimVector{tx, ty});
        },
        py::arg("circuit"), py::arg("tech"), py::arg("from_x"), py::arg("from_y"),
        py::arg("to_x"), py::arg("to_y"));
    m.def(
        "worst_dynamic_delay",
        [](const Circuit& c, const TechProfile& t, bool exhaustive, std::uint64_t seed,
           std::uint64_t count) {
            const TransitionSource source = exhaustive
                                                ? TransitionSource{ExhaustiveTransitions{}}
                                                : TransitionSource{RandomTransitions{seed, count}};
            return worst_dynamic_delay(c, t, source);
        },
        py::arg("circuit"), py::arg("tech"), py::arg("exhaustive") = true, py::arg("seed") = 0,
        py::arg("count") = 4096);

    m.def("dynamic_power", &dynamic_power, py::arg("circuit"), py::arg("activity"),
          py::arg("tech"));
    py::class_<PowerBreakdown>(m, "PowerBreakdown")
        .def_readonly("dynamic", &PowerBreakdown::dynamic)
        .def_readonly("short_circuit", &PowerBreakdown::short_circuit)
        .def_readonly("leakage", &PowerBreakdown::leakage)
        .def_readonly("total", &PowerBreakdown::total);
    m.def("total_power", &total_power, py::arg("circuit"), py::arg("activity"), py::arg("tech"));
    m.def("edp", &edp, py::arg("power_w"), py::arg("delay_s"));
    m.def("transistor_count", &transistor_count, py::arg("circuit"), py::arg("tech"));

    py::class_<AnalysisReport>(m, "AnalysisReport")
        .def_readonly("design", &AnalysisReport::design)
        .def_readonly("tech", &AnalysisReport::tech)
        .def_readonly("dynamic_power", &AnalysisReport::dynamic_power)
        .def_readonly("short_circuit_power", &AnalysisReport::short_circuit_power)
        .def_readonly("static_power", &AnalysisReport::static_power)
        .def_readonly("total_power", &AnalysisReport::total_power)
        .def_readonly("static_delay", &AnalysisReport::static_delay)
        .def_readonly("dynamic_delay", &AnalysisReport::dynamic_delay)
        .def_readonly("delay_used", &AnalysisReport::delay_used)
        .def_readonly("edp", &AnalysisReport::edp)
        .def_readonly("transistors", &AnalysisReport::transistors);
    m.def(
        "analyze_circuit",
        [](const Circuit& c, const TechProfile& tech, bool exhaustive, std::uint64_t seed,
           std::uint64_t length, bool dynamic_delay, unsigned workers) {
            std::optional<TransitionSource> transitions;
            if (dynamic_delay)
                transitions = default_transition_source(c.width(), seed);
            return analyze_circuit(c, tech, make_stimulus(exhaustive, seed, length), transitions,
                                   workers);
        },
        py::arg("circuit"), py::arg("tech"), py::arg("exhaustive") = true, py::arg("seed") = 0,
        py::arg("length") = 4096, py::arg("dynamic_delay") = true, py::arg("workers") = 1);

    py::class_<MetricComparison>(m, "MetricComparison")
        .def_readonly("conventional", &MetricComparison::conventional)
        .def_readonly("proposed", &MetricComparison::proposed)
        .def_readonly("improvement_pct", &MetricComparison::improvement_pct);
    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("tech", &ComparisonReport::tech)
        .def_readonly("power", &ComparisonReport::power)
        .def_readonly("delay", &ComparisonReport::delay)
        .def_readonly("edp", &ComparisonReport::edp)
        .def_readonly("transistors", &ComparisonReport::transistors);
    m.def("compare_designs", &compare_designs, py::arg("conventional"), py::arg("proposed"));
    m.def("comparison_to_csv", &comparison_to_csv);
    m.def("improvements_to_csv", &improvements_to_csv);
    m.def("analysis_to_csv", &analysis_to_csv);
    m.def("analysis_to_json", &analysis_to_json);

    py::class_<PaperTableRow>(m, "PaperTableRow")
        .def(py::init([](std::string label, double power_w, double delay_s,
                         double edp_listed_js) {
                 return PaperTableRow{std::move(label), power_w, delay_s, edp_listed_js};
             }),
             py::arg("label"), py::arg("power_w"), py::arg("delay_s"), py::arg("edp_listed_js"))
        .def_readwrite("label", &PaperTableRow::label)
        .def_readwrite("power_w", &PaperTableRow::power_w)
        .def_readwrite("delay_s", &PaperTableRow::delay_s)
        .def_readwrite("edp_listed_js", &PaperTableRow::edp_listed_js);
    py::class_<PaperRowCheck>(m, "PaperRowCheck")
        .def_readonly("row", &PaperRowCheck::row)
        .def_readonly("edp_recomputed", &PaperRowCheck::edp_recomputed)
        .def_readonly("rel_error", &PaperRowCheck::rel_error)
        .def_readonly("consistent", &PaperRowCheck::consistent)
        .def_readonly("nearest_label", &PaperRowCheck::nearest_label)
        .def_readonly("nearest_value", &PaperRowCheck::nearest_value);
    py::class_<PaperImprovement>(m, "PaperImprovement")
        .def_readonly("pair", &PaperImprovement::pair)
        .def_readonly("metric", &PaperImprovement::metric)
        .def_readonly("conventional", &PaperImprovement::conventional)
        .def_readonly("proposed", &PaperImprovement::proposed)
        .def_readonly("improvement_pct", &PaperImprovement::improvement_pct);
    py::class_<PaperCheckReport>(m, "PaperCheckReport")
        .def_readonly("tolerance", &PaperCheckReport::tolerance)
        .def_readonly("rows", &PaperCheckReport::rows)
        .def_readonly("improvements", &PaperCheckReport::improvements);
    m.def("paper_check", &paper_check, py::arg("rows"), py::arg("tolerance") = 0.005);
    m.def("default_paper_rows", [] { return default_paper_rows(); });
    m.def("paper_rows_from_json", [](const std::string& s) { return paper_rows_from_json(s); });
    m.def("paper_check_to_text", &paper_check_to_text);
    m.def("paper_check_to_csv", &paper_check_to_csv);

    py::class_<CostAssignment>(m, "CostAssignment")
        .def_readonly("and2", &CostAssignment::and2)
        .def_readonly("ha", &CostAssignment::ha)
        .def_readonly("fa", &CostAssignment::fa)
        .def("__repr__", [](const CostAssignment& a) {
            return "<CostAssignment AND2=" + std::to_string(a.and2) +
                   " HA=" + std::to_string(a.ha) + " FA=" + std::to_string(a.fa) + ">";
        });
    m.def("search_transistor_costs", &search_transistor_costs, py::arg("conventional"),
          py::arg("proposed"), py::arg("conventional_total"), py::arg("proposed_total"),
          py::arg("lo") = 2, py::arg("hi") = 24);

    m.attr("__version__") = "0.1.0";
}
