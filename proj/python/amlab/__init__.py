"""Gate-level construction, simulation and power/area analysis of
carry-save array multipliers."""

from ._core import (  # noqa: F401
    ActivityProfile,
    AnalysisReport,
    Cell,
    CellCounts,
    CellKind,
    Circuit,
    ComparisonReport,
    CostAssignment,
    FirstRowStyle,
    LevelMap,
    MetricComparison,
    NetlistImportError,
    NetlistIoError,
    PaperCheckReport,
    PaperImprovement,
    PaperRowCheck,
    PaperTableRow,
    PowerBreakdown,
    TechProfile,
    TimingResult,
    VerifyFailure,
    VerifyResult,
    __version__,
    activity_profile,
    activity_to_csv,
    analysis_to_csv,
    analysis_to_json,
    analyze_circuit,
    build_conventional,
    build_proposed,
    builtin_tech,
    cell_stats,
    compare_designs,
    comparison_to_csv,
    default_paper_rows,
    dynamic_power,
    dynamic_settle_delay,
    edp,
    evaluate,
    evaluate_nets,
    exhaustive_verify,
    export_circuit,
    import_circuit,
    improvements_to_csv,
    levelize,
    load_tech,
    paper_check,
    paper_check_to_csv,
    paper_check_to_text,
    paper_rows_from_json,
    read_circuit_file,
    search_transistor_costs,
    static_critical_path,
    structurally_equal,
    tech_from_json,
    tech_to_json,
    total_power,
    transistor_count,
    validate,
    worst_dynamic_delay,
    write_circuit_file,
)
