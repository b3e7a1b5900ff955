#pragma once

/// @file builder.hpp
/// Generators for carry-save array multipliers of parameterized operand
/// width n (n >= 2, unsigned operands, LSB-first bit order).
///
/// Two topologies are produced:
///
///  - Conventional: n*n AND gates, n-1 carry-save adder rows whose carries
///    are forwarded diagonally to the next row, and a final ripple merge
///    stage (one HA at its least significant position, FAs elsewhere) that
///    resolves the last row's saved carries into the upper product bits.
///
///  - Proposed: the merge stage is eliminated. The last partial-product
///    row's bits (except the first and last column) are absorbed by the
///    spare zero-inputs of the left-edge adders of the earlier rows, which
///    frees one input per final-row adder; the final row then ripples its
///    own carries directly into those freed inputs and the carry out of the
///    most significant column becomes product bit 2n-1. This removes exactly
///    n adder cells relative to the conventional design.

#include "amlab/netlist.hpp"

#include <span>
#include <vector>

namespace amlab {

/// How two-operand columns of the first adder row are realized in the
/// conventional design: full adders with a constant-zero carry-in, or
/// half adders.
enum class FirstRowStyle { FaWithZeroCin, HalfAdders };

/// n x n grid of single-bit partial products; entry (i, j) carries
/// x_i AND y_j with binary weight 2^(i+j).
struct PartialProductMatrix {
    unsigned n = 0;
    std::vector<NetId> entries;  // entry (i, j) at index j*n + i
    std::vector<CellId> cells;   // the n*n AND2 cells, same order

    NetId at(unsigned i, unsigned j) const { return entries[static_cast<std::size_t>(j) * n + i]; }
};

/// Adds n*n AND2 cells computing the partial products of the given operand
/// nets to a circuit under construction.
/// @throws std::invalid_argument if fewer than 2 bits per operand, or if the
///         operand lists differ in length
PartialProductMatrix build_partial_products(Circuit& circuit, std::span<const NetId> x_inputs,
                                            std::span<const NetId> y_inputs);

/// Construction metadata used by structural analyses: row membership and the
/// binary weight of every array net (0 for primary inputs and const-zero).
struct ArrayLayout {
    std::vector<CellId> and_cells;
    std::vector<std::vector<CellId>> adder_rows; // adder_rows[r-1] = row r, column order
    std::vector<CellId> merge_cells;             // conventional only; empty for proposed
    std::vector<int> net_weight;                 // indexed by NetId
};

struct BuiltMultiplier {
    Circuit circuit;
    ArrayLayout layout;
};

BuiltMultiplier build_conventional_with_layout(unsigned n,
                                               FirstRowStyle style = FirstRowStyle::FaWithZeroCin);
BuiltMultiplier build_proposed_with_layout(unsigned n);

/// Sealed, validated circuit computing P = X*Y. @throws std::invalid_argument if n < 2
Circuit build_conventional(unsigned n, FirstRowStyle style = FirstRowStyle::FaWithZeroCin);
Circuit build_proposed(unsigned n);

} // namespace amlab
