#pragma once

/// @file tech.hpp
/// Technology parameter sets: electrical constants, per-kind cell delays,
/// short-circuit / leakage currents and transistor costs.

#include "amlab/netlist.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace amlab {

template <typename T> struct PerKind {
    T and2{};
    T ha{};
    T fa{};

    T of(CellKind kind) const {
        switch (kind) {
        case CellKind::AND2: return and2;
        case CellKind::HA: return ha;
        case CellKind::FA: return fa;
        }
        return T{};
    }
    T& of(CellKind kind) {
        switch (kind) {
        case CellKind::AND2: return and2;
        case CellKind::HA: return ha;
        default: return fa;
        }
    }
};

struct TechProfile {
    std::string name;
    double vdd = 0.0;             // supply voltage [V]
    double vswing = 0.0;          // output voltage swing [V], <= vdd
    double freq = 0.0;            // clock frequency [Hz]
    double cload_per_input = 0.0; // unit input load [F]; C_load(net) = this * fanout
    PerKind<double> delay;        // per-kind propagation delay [s]
    PerKind<double> isc;          // per-cell short-circuit current [A]
    PerKind<double> ileak;        // per-cell leakage current [A]
    PerKind<int> transistors{8, 8, 16};
};

/// Empty list iff the profile is usable: physical fields >= 0, transistor
/// costs >= 1, vswing <= vdd.
std::vector<std::string> validate(const TechProfile& tech);

// Shipped profiles. Cell delays for FA come from measured 16-transistor
// full-adder data per node; AND2/HA default to 0.25x / 0.5x the FA delay.
// Loads, frequency and currents are documented placeholders (1 fF, 100 MHz,
// 0 A): absolute watts are not calibrated, only design-to-design ratios.
TechProfile tech_tsmc180();
TechProfile tech_90nm();
TechProfile tech_65nm();
std::optional<TechProfile> builtin_tech(std::string_view name);

/// JSON schema: {name, vdd, vswing, freq, cload_per_input,
///   delays:{AND2,HA,FA}, isc:{AND2,HA,FA}, ileak:{AND2,HA,FA},
///   transistors:{AND2,HA,FA}}.
/// @throws ImportError on malformed data or invariant violations
TechProfile tech_from_json(std::string_view data);
std::string tech_to_json(const TechProfile& tech);

/// Resolves a builtin profile name, else reads a JSON profile file.
/// @throws IoError / ImportError
TechProfile load_tech(const std::string& name_or_path);

} // namespace amlab
