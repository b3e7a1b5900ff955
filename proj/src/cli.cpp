#include "amlab/cli.hpp"

#include "amlab/builder.hpp"
#include "amlab/errors.hpp"
#include "amlab/netlist_io.hpp"
#include "amlab/power.hpp"
#include "amlab/report_io.hpp"
#include "amlab/sim.hpp"
#include "amlab/tech.hpp"

#include <optional>

#include "CLI11.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace amlab::cli {

namespace {

const CLI::Validator NonEmptyPath(
    [](std::string& value) -> std::string {
        return value.empty() ? "path must be non-empty" : std::string{};
    },
    "non-empty", "PATH");

unsigned sweep_workers() {
    const char* env = std::getenv("AMLAB_THREADS");
    if (!env || !*env)
        return 1;
    const long parsed = std::strtol(env, nullptr, 10);
    const long hw = std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::clamp(parsed, 1l, std::min(hw, 64l)));
}

Circuit load_source(const NetlistSource& source) {
    if (source.path)
        return read_circuit_file(*source.path);
    if (source.design == "proposed")
        return build_proposed(source.width);
    return build_conventional(source.width);
}

void add_source_options(CLI::App* cmd, NetlistSource& source) {
    auto* netlist =
        cmd->add_option("--netlist", source.path, "netlist file (structured or text)")
            ->check(NonEmptyPath);
    auto* design = cmd->add_option("--design", source.design, "design to build")
                       ->check(CLI::IsMember({"conventional", "proposed"}));
    auto* width = cmd->add_option("--width", source.width, "operand width in bits")
                      ->check(CLI::Range(2u, 10u));
    netlist->excludes(design);
    netlist->excludes(width);
    design->needs(width);
    width->needs(design);
    cmd->callback([netlist, design] {
        if (!netlist->count() && !design->count())
            throw CLI::RequiredError("--netlist or --design/--width");
    });
}

std::string out_sibling(const std::string& path, const std::string& suffix) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of("/\\");
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + suffix;
    return path.substr(0, dot) + suffix + path.substr(dot);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

int run_build(const BuildCmd& cmd, std::ostream& out) {
    const Circuit circuit = cmd.design == "proposed" ? build_proposed(cmd.width)
                                                     : build_conventional(cmd.width);
    const ExportFormat fmt =
        cmd.format == "text" ? ExportFormat::Text : ExportFormat::Structured;
    write_circuit_file(circuit, fmt, cmd.out);
    out << "wrote " << cmd.out << " (" << circuit.name() << ": " << circuit.cell_count()
        << " cells, " << circuit.net_count() << " nets)\n";
    return kExitOk;
}

int run_verify(const VerifyCmd& cmd, std::ostream& out, std::ostream& err) {
    const Circuit circuit = load_source(cmd.source);
    const VerifyResult result = exhaustive_verify(circuit);
    out << "circuit: " << circuit.name() << " (width " << circuit.width() << ")\n";
    out << result.passed << "/" << result.total << " passed\n";
    if (result.ok())
        return kExitOk;
    if (!result.failures.empty()) {
        const auto& f = result.failures.front();
        err << "counterexample: x=" << f.x << " y=" << f.y << " got=" << f.got
            << " expected=" << f.expected << "\n";
    }
    err << result.failed << " mismatches\n";
    return kExitVerifyFailed;
}

int run_analyze(const AnalyzeCmd& cmd, std::ostream& out) {
    const Circuit circuit = load_source(cmd.source);
    const TechProfile tech = load_tech(cmd.tech);
    const StimulusSource stimulus =
        cmd.activity == "random" ? StimulusSource{RandomSequence{cmd.seed, cmd.length}}
                                 : StimulusSource{ExhaustivePairs{}};
    const TransitionSource transitions = default_transition_source(circuit.width(), cmd.seed);
    const AnalysisReport report =
        analyze_circuit(circuit, tech, stimulus, transitions, sweep_workers());
    const std::string payload =
        cmd.format == "csv" ? analysis_to_csv(report) : analysis_to_json(report);
    write_text_file(payload, cmd.out);
    out << "wrote " << cmd.out << " (design=" << report.design << " tech=" << report.tech
        << " seed=" << cmd.seed << ")\n";
    out << "total_power=" << sci5(report.total_power) << " W, delay=" << sci5(report.dynamic_delay)
        << " s (" << report.delay_used << "), edp=" << sci5(report.edp)
        << " Js, transistors=" << report.transistors << "\n";
    return kExitOk;
}

int run_compare(const CompareCmd& cmd, std::ostream& out) {
    const TechProfile tech = load_tech(cmd.tech);
    const StimulusSource stimulus = default_stimulus_source(cmd.width, cmd.seed);
    const TransitionSource transitions = default_transition_source(cmd.width, cmd.seed);
    const unsigned workers = sweep_workers();

    AnalysisReport conv =
        analyze_circuit(build_conventional(cmd.width), tech, stimulus, transitions, workers);
    AnalysisReport prop =
        analyze_circuit(build_proposed(cmd.width), tech, stimulus, transitions, workers);
    conv.design = "conventional";
    prop.design = "proposed";
    const ComparisonReport report = compare_designs(conv, prop);

    write_text_file(comparison_to_csv(report), cmd.out);
    const std::string improvements_path = out_sibling(cmd.out, "_improvements");
    write_text_file(improvements_to_csv(report), improvements_path);

    out << "compare width=" << cmd.width << " tech=" << tech.name << " seed=" << cmd.seed << "\n";
    auto line = [&](const char* metric, const MetricComparison& m) {
        out << "  " << metric << ": conventional=" << sci5(m.conventional)
            << " proposed=" << sci5(m.proposed) << " improvement=" << pct2(m.improvement_pct)
            << "%\n";
    };
    line("power", report.power);
    line("delay", report.delay);
    line("edp", report.edp);
    line("transistors", report.transistors);
    out << "wrote " << cmd.out << " and " << improvements_path << "\n";
    return kExitOk;
}

int run_paper_check(const PaperCheckCmd& cmd, std::ostream& out) {
    const std::vector<PaperTableRow> rows =
        cmd.table ? paper_rows_from_json(slurp(*cmd.table)) : default_paper_rows();
    const PaperCheckReport report = paper_check(rows, cmd.tolerance);
    out << paper_check_to_text(report);
    if (cmd.out) {
        write_text_file(paper_check_to_csv(report), *cmd.out);
        out << "wrote " << *cmd.out << "\n";
    }
    return kExitOk;
}

int run_export(const ExportCmd& cmd, std::ostream& out) {
    const Circuit circuit = load_source(cmd.source);
    const ExportFormat fmt =
        cmd.format == "text" ? ExportFormat::Text : ExportFormat::Structured;
    write_circuit_file(circuit, fmt, cmd.out);
    out << "wrote " << cmd.out << " (" << circuit.name() << ", " << cmd.format << ")\n";
    return kExitOk;
}

} // namespace

ParseResult parse_args(const std::vector<std::string>& argv) {
    CLI::App app{"gate-level construction, simulation and power/area analysis "
                 "of carry-save array multipliers"};
    app.require_subcommand(1);

    BuildCmd build;
    VerifyCmd verify;
    AnalyzeCmd analyze;
    CompareCmd compare;
    PaperCheckCmd paper;
    ExportCmd exp;

    auto* build_cmd = app.add_subcommand("build", "construct a multiplier netlist file");
    build_cmd->add_option("--design", build.design, "conventional | proposed")
        ->required()
        ->check(CLI::IsMember({"conventional", "proposed"}));
    build_cmd->add_option("--width", build.width, "operand width in bits")
        ->required()
        ->check(CLI::Range(2u, 10u));
    build_cmd->add_option("--out", build.out, "output path")->required()->check(NonEmptyPath);
    build_cmd->add_option("--format", build.format, "structured | text")
        ->check(CLI::IsMember({"structured", "text"}));

    auto* verify_cmd =
        app.add_subcommand("verify", "exhaustively check a multiplier against x*y");
    add_source_options(verify_cmd, verify.source);

    auto* analyze_cmd =
        app.add_subcommand("analyze", "power/delay/EDP/transistor report for one design");
    add_source_options(analyze_cmd, analyze.source);
    analyze_cmd->add_option("--tech", analyze.tech, "builtin profile name or profile file")
        ->required()
        ->check(NonEmptyPath);
    analyze_cmd->add_option("--activity", analyze.activity, "exhaustive | random")
        ->check(CLI::IsMember({"exhaustive", "random"}));
    analyze_cmd->add_option("--seed", analyze.seed, "seed for random sweeps");
    analyze_cmd->add_option("--length", analyze.length, "random sequence length")
        ->check(CLI::Range(std::uint64_t{2}, std::uint64_t{100000000}));
    analyze_cmd->add_option("--out", analyze.out, "output path")->required()->check(NonEmptyPath);
    analyze_cmd->add_option("--format", analyze.format, "structured | csv")
        ->check(CLI::IsMember({"structured", "csv"}));

    auto* compare_cmd = app.add_subcommand(
        "compare", "build both designs, run identical sweeps, write comparison CSVs");
    compare_cmd->add_option("--tech", compare.tech, "builtin profile name or profile file")
        ->required()
        ->check(NonEmptyPath);
    compare_cmd->add_option("--width", compare.width, "operand width in bits")
        ->required()
        ->check(CLI::Range(2u, 10u));
    compare_cmd->add_option("--out", compare.out, "comparison CSV path")->required()->check(NonEmptyPath);
    compare_cmd->add_option("--seed", compare.seed, "seed for random sweeps");

    auto* paper_cmd = app.add_subcommand(
        "paper-check", "audit the bundled (or given) published tables for EDP consistency");
    paper_cmd->add_option("--table", paper.table, "table JSON file (default: bundled data)")
        ->check(NonEmptyPath);
    paper_cmd->add_option("--tolerance", paper.tolerance, "relative tolerance")
        ->check(CLI::Range(1e-9, 0.1));
    paper_cmd->add_option("--out", paper.out, "also write the audit as CSV")->check(NonEmptyPath);

    auto* export_cmd = app.add_subcommand("export", "re-serialize a netlist (format conversion)");
    add_source_options(export_cmd, exp.source);
    export_cmd->add_option("--format", exp.format, "structured | text")
        ->check(CLI::IsMember({"structured", "text"}));
    export_cmd->add_option("--out", exp.out, "output path")->required()->check(NonEmptyPath);

    std::vector<const char*> args;
    args.push_back("amlab");
    for (const auto& a : argv)
        args.push_back(a.c_str());

    ParseResult result;
    try {
        app.parse(static_cast<int>(args.size()), args.data());
    } catch (const CLI::CallForHelp&) {
        result.message = app.help();
        result.exit_code = kExitOk;
        return result;
    } catch (const CLI::ParseError& e) {
        result.exit_code = kExitBadInput;
        result.message = std::string(e.what()) + "\nRun with --help for usage.";
        return result;
    }

    if (build_cmd->parsed())
        result.command = build;
    else if (verify_cmd->parsed())
        result.command = verify;
    else if (analyze_cmd->parsed())
        result.command = analyze;
    else if (compare_cmd->parsed())
        result.command = compare;
    else if (paper_cmd->parsed())
        result.command = paper;
    else if (export_cmd->parsed())
        result.command = exp;
    return result;
}

int execute(const Command& command, std::ostream& out, std::ostream& err) {
    try {
        return std::visit(
            [&](const auto& cmd) -> int {
                using T = std::decay_t<decltype(cmd)>;
                if constexpr (std::is_same_v<T, BuildCmd>)
                    return run_build(cmd, out);
                else if constexpr (std::is_same_v<T, VerifyCmd>)
                    return run_verify(cmd, out, err);
                else if constexpr (std::is_same_v<T, AnalyzeCmd>)
                    return run_analyze(cmd, out);
                else if constexpr (std::is_same_v<T, CompareCmd>)
                    return run_compare(cmd, out);
                else if constexpr (std::is_same_v<T, PaperCheckCmd>)
                    return run_paper_check(cmd, out);
                else
                    return run_export(cmd, out);
            },
            command);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    const ParseResult parsed = parse_args(args);
    if (!parsed.command) {
        (parsed.exit_code == kExitOk ? std::cout : std::cerr) << parsed.message << "\n";
        return parsed.exit_code;
    }
    return execute(*parsed.command, std::cout, std::cerr);
}

} // namespace amlab::cli
