#pragma once

/// @file netlist.hpp
/// Gate-level netlist model: nets, cells, circuits, validation, levelization
/// and per-kind cell statistics.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace amlab {

/// Dense index of a net within its owning circuit.
using NetId = std::uint32_t;
/// Dense index of a cell within its owning circuit.
using CellId = std::uint32_t;

/// Primitive cell kinds. For HA and FA the output order is fixed:
/// outputs[0] = sum, outputs[1] = carry.
enum class CellKind : std::uint8_t { AND2, HA, FA };

constexpr unsigned input_arity(CellKind k) { return k == CellKind::FA ? 3u : 2u; }
constexpr unsigned output_arity(CellKind k) { return k == CellKind::AND2 ? 1u : 2u; }

const char* to_string(CellKind kind);
/// Parses "AND2" | "HA" | "FA"; throws std::invalid_argument otherwise.
CellKind cell_kind_from_string(std::string_view text);

/// A primitive gate instance with ordered input and output nets.
struct Cell {
    CellId id = 0;
    CellKind kind = CellKind::AND2;
    std::vector<NetId> inputs;
    std::vector<NetId> outputs;
};

enum class DriverKind : std::uint8_t { None, ConstZero, PrimaryInput, Cell };

/// What drives a net. `cell`/`pin` are meaningful only for DriverKind::Cell.
struct Driver {
    DriverKind kind = DriverKind::None;
    CellId cell = 0;
    std::uint8_t pin = 0;
};

/// A gate-level circuit with declared multiplier-style I/O: n x-inputs,
/// n y-inputs (both LSB first), 2n product outputs and one distinguished
/// constant-zero net.
///
/// Construction follows a builder pattern: add nets, add cells, designate
/// const-zero / inputs / outputs, then seal(). seal() validates every
/// structural invariant and freezes the circuit; mutation afterwards throws.
/// Sealed circuits are immutable and safe to share across threads.
class Circuit {
  public:
    Circuit() = default;
    Circuit(std::string name, unsigned width) : name_(std::move(name)), width_(width) {}

    /// Creates a net and returns its dense id. The net is initially undriven.
    /// @throws std::logic_error if the circuit is sealed
    NetId add_net(std::string name);

    /// Creates a cell driving `outputs` from `inputs`.
    /// @throws std::logic_error if sealed
    /// @throws std::invalid_argument on arity mismatch or double-driven output
    /// @throws std::out_of_range on unknown net ids
    CellId add_cell(CellKind kind, std::vector<NetId> inputs, std::vector<NetId> outputs);

    /// Designates the constant-zero net. Conflicting drivers are reported by
    /// validate(), not here.
    void set_const_zero(NetId net);
    void set_x_inputs(std::vector<NetId> nets);
    void set_y_inputs(std::vector<NetId> nets);
    void set_product_outputs(std::vector<NetId> nets);

    /// Validates all invariants and freezes the circuit.
    /// @throws std::runtime_error listing the diagnostics if validation fails
    void seal();
    bool sealed() const { return sealed_; }

    const std::string& name() const { return name_; }
    unsigned width() const { return width_; }
    std::size_t net_count() const { return net_names_.size(); }
    std::size_t cell_count() const { return cells_.size(); }
    const std::string& net_name(NetId net) const;
    const Cell& cell(CellId id) const;
    const std::vector<Cell>& cells() const { return cells_; }

    bool has_const_zero() const { return const_zero_.has_value(); }
    NetId const_zero() const;
    std::span<const NetId> x_inputs() const { return x_inputs_; }
    std::span<const NetId> y_inputs() const { return y_inputs_; }
    std::span<const NetId> product_outputs() const { return product_outputs_; }

    /// The unique driver of a net as recorded during construction. If several
    /// sources were declared (an invalid circuit), cell drivers win; use
    /// validate() to detect the conflict.
    Driver driver(NetId net) const;

    /// Number of cell input pins reading this net.
    unsigned fanout(NetId net) const;

  private:
    friend std::vector<std::string> validate(const Circuit& circuit);

    void require_unsealed(const char* op) const;
    void require_net(NetId net, const char* what) const;

    std::string name_;
    unsigned width_ = 0;
    std::vector<std::string> net_names_;
    std::vector<Cell> cells_;
    std::vector<std::optional<std::pair<CellId, std::uint8_t>>> cell_driver_;
    std::vector<std::uint32_t> reader_pins_;
    std::vector<bool> primary_mark_;
    std::optional<NetId> const_zero_;
    std::vector<NetId> x_inputs_;
    std::vector<NetId> y_inputs_;
    std::vector<NetId> product_outputs_;
    bool sealed_ = false;
};

/// Checks every circuit invariant by scan: exactly one driver per net,
/// acyclic cell graph, declared I/O complete and in range. Returns an empty
/// list iff the circuit is valid; otherwise one human-readable diagnostic
/// per offence, naming net/cell ids.
std::vector<std::string> validate(const Circuit& circuit);

/// Topological rank per cell: level(cell) > level of every cell driving its
/// inputs; cells fed only by primary inputs or const-zero sit at level 0.
struct LevelMap {
    std::vector<std::uint32_t> level; // indexed by CellId
    std::uint32_t max_level = 0;
};

/// @throws std::runtime_error if the cell graph has a combinational cycle
LevelMap levelize(const Circuit& circuit);

struct CellCounts {
    std::uint64_t and2 = 0;
    std::uint64_t ha = 0;
    std::uint64_t fa = 0;

    std::uint64_t adders() const { return ha + fa; }
    std::uint64_t total() const { return and2 + ha + fa; }
    std::uint64_t of(CellKind kind) const;
};

CellCounts cell_stats(const Circuit& circuit);

/// Field-by-field structural identity: same ids, names, kinds, connections
/// and I/O designations.
bool structurally_equal(const Circuit& a, const Circuit& b);

} // namespace amlab
