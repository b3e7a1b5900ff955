#pragma once

/// @file netlist_io.hpp
/// Bit-exact netlist serialization. Two formats:
///
/// Structured (JSON), schema_version "1":
///   {schema_version, name, width, const_zero, nets:[{id,name}],
///    cells:[{id,kind,inputs:[ids],outputs:[ids]}],
///    x_inputs:[ids], y_inputs:[ids], product_outputs:[ids]}
///
/// Text: line-oriented, whitespace-separated, net references by name
/// (names must be unique and whitespace-free):
///   circuit <name> width <n>
///   zero <net>
///   x <n nets, LSB first>
///   y <n nets, LSB first>
///   p <2n nets, LSB first>
///   net <name>                      (one per net, in id order)
///   <KIND> <in...> -> <out...>      (one per cell, in id order)
///
/// Round trip through either format reproduces the circuit structurally:
/// same ids, names, kinds and connections.

#include "amlab/netlist.hpp"

#include <string>
#include <string_view>

namespace amlab {

enum class ExportFormat { Structured, Text };

/// @throws std::invalid_argument if the circuit fails validate(), or on a
///         text export with duplicate or whitespace-containing net names
std::string export_circuit(const Circuit& circuit, ExportFormat format);

/// Auto-detects the format (leading '{' means structured).
/// @throws ImportError on malformed data or a schema-version mismatch
Circuit import_circuit(std::string_view data);

/// @throws IoError on filesystem failure
void write_circuit_file(const Circuit& circuit, ExportFormat format, const std::string& path);
Circuit read_circuit_file(const std::string& path);

} // namespace amlab
