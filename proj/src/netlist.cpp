#include "amlab/netlist.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace amlab {

const char* to_string(CellKind kind) {
    switch (kind) {
    case CellKind::AND2: return "AND2";
    case CellKind::HA: return "HA";
    case CellKind::FA: return "FA";
    }
    return "?";
}

CellKind cell_kind_from_string(std::string_view text) {
    if (text == "AND2") return CellKind::AND2;
    if (text == "HA") return CellKind::HA;
    if (text == "FA") return CellKind::FA;
    throw std::invalid_argument("unknown cell kind '" + std::string(text) + "'");
}

std::uint64_t CellCounts::of(CellKind kind) const {
    switch (kind) {
    case CellKind::AND2: return and2;
    case CellKind::HA: return ha;
    case CellKind::FA: return fa;
    }
    return 0;
}

void Circuit::require_unsealed(const char* op) const {
    if (sealed_)
        throw std::logic_error(std::string(op) + ": circuit '" + name_ + "' is sealed");
}

void Circuit::require_net(NetId net, const char* what) const {
    if (net >= net_names_.size())
        throw std::out_of_range(std::string(what) + ": unknown net " + std::to_string(net));
}

NetId Circuit::add_net(std::string name) {
    require_unsealed("add_net");
    const NetId id = static_cast<NetId>(net_names_.size());
    net_names_.push_back(std::move(name));
    cell_driver_.emplace_back();
    reader_pins_.push_back(0);
    primary_mark_.push_back(false);
    return id;
}

CellId Circuit::add_cell(CellKind kind, std::vector<NetId> inputs, std::vector<NetId> outputs) {
    require_unsealed("add_cell");
    if (inputs.size() != input_arity(kind) || outputs.size() != output_arity(kind))
        throw std::invalid_argument(std::string("add_cell: arity mismatch for ") + to_string(kind) +
                                    " (" + std::to_string(inputs.size()) + " inputs, " +
                                    std::to_string(outputs.size()) + " outputs)");
    for (NetId in : inputs)
        require_net(in, "add_cell input");
    for (NetId out : outputs) {
        require_net(out, "add_cell output");
        const bool driven = cell_driver_[out].has_value() || primary_mark_[out] ||
                            (const_zero_ && *const_zero_ == out);
        if (driven)
            throw std::invalid_argument("add_cell: net " + std::to_string(out) + " ('" +
                                        net_names_[out] + "') already driven");
    }
    const CellId id = static_cast<CellId>(cells_.size());
    for (std::size_t pin = 0; pin < outputs.size(); ++pin)
        cell_driver_[outputs[pin]] = {id, static_cast<std::uint8_t>(pin)};
    for (NetId in : inputs)
        ++reader_pins_[in];
    cells_.push_back(Cell{id, kind, std::move(inputs), std::move(outputs)});
    return id;
}

void Circuit::set_const_zero(NetId net) {
    require_unsealed("set_const_zero");
    require_net(net, "set_const_zero");
    const_zero_ = net;
}

void Circuit::set_x_inputs(std::vector<NetId> nets) {
    require_unsealed("set_x_inputs");
    for (NetId n : nets) {
        require_net(n, "set_x_inputs");
        primary_mark_[n] = true;
    }
    x_inputs_ = std::move(nets);
}

void Circuit::set_y_inputs(std::vector<NetId> nets) {
    require_unsealed("set_y_inputs");
    for (NetId n : nets) {
        require_net(n, "set_y_inputs");
        primary_mark_[n] = true;
    }
    y_inputs_ = std::move(nets);
}

void Circuit::set_product_outputs(std::vector<NetId> nets) {
    require_unsealed("set_product_outputs");
    for (NetId n : nets)
        require_net(n, "set_product_outputs");
    product_outputs_ = std::move(nets);
}

void Circuit::seal() {
    if (sealed_)
        return;
    auto diagnostics = validate(*this);
    if (!diagnostics.empty()) {
        std::ostringstream msg;
        msg << "seal: circuit '" << name_ << "' is invalid:";
        for (const auto& d : diagnostics)
            msg << "\n  - " << d;
        throw std::runtime_error(msg.str());
    }
    sealed_ = true;
}

const std::string& Circuit::net_name(NetId net) const {
    require_net(net, "net_name");
    return net_names_[net];
}

const Cell& Circuit::cell(CellId id) const {
    if (id >= cells_.size())
        throw std::out_of_range("cell: unknown cell " + std::to_string(id));
    return cells_[id];
}

NetId Circuit::const_zero() const {
    if (!const_zero_)
        throw std::logic_error("const_zero: not set on circuit '" + name_ + "'");
    return *const_zero_;
}

Driver Circuit::driver(NetId net) const {
    require_net(net, "driver");
    if (cell_driver_[net])
        return Driver{DriverKind::Cell, cell_driver_[net]->first, cell_driver_[net]->second};
    if (const_zero_ && *const_zero_ == net)
        return Driver{DriverKind::ConstZero, 0, 0};
    if (primary_mark_[net])
        return Driver{DriverKind::PrimaryInput, 0, 0};
    return Driver{};
}

unsigned Circuit::fanout(NetId net) const {
    require_net(net, "fanout");
    return reader_pins_[net];
}

namespace {

// Kahn topological pass over the cell graph. Returns levels; cells left
// unplaced (cycle members) are reported through `unplaced`.
std::vector<std::uint32_t> toposort_levels(const Circuit& c, std::vector<CellId>& unplaced) {
    const std::size_t num_cells = c.cell_count();
    std::vector<std::uint32_t> level(num_cells, 0);
    std::vector<std::uint32_t> waiting(num_cells, 0); // unresolved cell-driven input pins

    // net -> producing cell (if any), plus per-net reader pin lists
    std::vector<std::vector<CellId>> readers(c.net_count());
    for (const Cell& cell : c.cells()) {
        for (NetId in : cell.inputs) {
            if (in < c.net_count() && c.driver(in).kind == DriverKind::Cell)
                ++waiting[cell.id];
            if (in < c.net_count())
                readers[in].push_back(cell.id);
        }
    }

    std::vector<CellId> queue;
    queue.reserve(num_cells);
    for (const Cell& cell : c.cells())
        if (waiting[cell.id] == 0)
            queue.push_back(cell.id);

    std::size_t placed = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const CellId id = queue[head];
        ++placed;
        const Cell& cell = c.cells()[id];
        for (NetId out : cell.outputs) {
            if (out >= c.net_count())
                continue;
            for (CellId reader : readers[out]) {
                level[reader] = std::max(level[reader], level[id] + 1);
                if (--waiting[reader] == 0)
                    queue.push_back(reader);
            }
        }
    }

    if (placed < num_cells)
        for (const Cell& cell : c.cells())
            if (waiting[cell.id] != 0)
                unplaced.push_back(cell.id);
    return level;
}

} // namespace

std::vector<std::string> validate(const Circuit& c) {
    std::vector<std::string> diags;
    const std::size_t nets = c.net_count();

    // Driver census per net.
    std::vector<std::uint32_t> driver_count(nets, 0);
    if (c.const_zero_)
        ++driver_count[*c.const_zero_];
    for (std::size_t n = 0; n < nets; ++n)
        if (c.primary_mark_[n])
            ++driver_count[n];
    for (const Cell& cell : c.cells()) {
        if (cell.inputs.size() != input_arity(cell.kind) ||
            cell.outputs.size() != output_arity(cell.kind))
            diags.push_back("cell " + std::to_string(cell.id) + ": arity mismatch for " +
                            to_string(cell.kind));
        for (NetId in : cell.inputs)
            if (in >= nets)
                diags.push_back("cell " + std::to_string(cell.id) + ": unknown input net " +
                                std::to_string(in));
        for (NetId out : cell.outputs) {
            if (out >= nets) {
                diags.push_back("cell " + std::to_string(cell.id) + ": unknown output net " +
                                std::to_string(out));
                continue;
            }
            ++driver_count[out];
        }
        for (NetId in : cell.inputs)
            for (NetId out : cell.outputs)
                if (in == out)
                    diags.push_back("cell " + std::to_string(cell.id) + ": reads net " +
                                    std::to_string(in) + " it also drives (cycle)");
    }

    for (std::size_t n = 0; n < nets; ++n) {
        if (driver_count[n] == 0)
            diags.push_back("undriven net " + std::to_string(n) + " ('" + c.net_names_[n] + "')");
        else if (driver_count[n] > 1)
            diags.push_back("net " + std::to_string(n) + " ('" + c.net_names_[n] +
                            "') has multiple drivers (" + std::to_string(driver_count[n]) + ")");
    }

    if (!c.const_zero_)
        diags.push_back("const_zero net not set");
    else if (*c.const_zero_ >= nets)
        diags.push_back("const_zero refers to unknown net " + std::to_string(*c.const_zero_));

    auto check_ports = [&](const std::vector<NetId>& ports, std::size_t expected,
                           const char* label) {
        if (ports.size() != expected)
            diags.push_back(std::string(label) + ": expected " + std::to_string(expected) +
                            " nets, have " + std::to_string(ports.size()));
        for (NetId n : ports)
            if (n >= nets)
                diags.push_back(std::string(label) + ": unknown net " + std::to_string(n));
    };
    check_ports(c.x_inputs_, c.width_, "x_inputs");
    check_ports(c.y_inputs_, c.width_, "y_inputs");
    check_ports(c.product_outputs_, 2u * c.width_, "product_outputs");

    for (std::size_t bit = 0; bit < c.product_outputs_.size(); ++bit) {
        const NetId n = c.product_outputs_[bit];
        if (n < nets && driver_count[n] == 0)
            diags.push_back("undriven output: product bit " + std::to_string(bit) + " (net " +
                            std::to_string(n) + ")");
    }

    std::vector<CellId> unplaced;
    toposort_levels(c, unplaced);
    if (!unplaced.empty()) {
        std::ostringstream msg;
        msg << "cycle: cells [";
        for (std::size_t i = 0; i < unplaced.size(); ++i)
            msg << (i ? " " : "") << unplaced[i];
        msg << "] form a combinational loop";
        diags.push_back(msg.str());
    }

    return diags;
}

LevelMap levelize(const Circuit& c) {
    std::vector<CellId> unplaced;
    LevelMap map;
    map.level = toposort_levels(c, unplaced);
    if (!unplaced.empty())
        throw std::runtime_error("levelize: circuit '" + c.name() + "' has a combinational cycle (" +
                                 std::to_string(unplaced.size()) + " cells unplaced)");
    for (std::uint32_t lvl : map.level)
        map.max_level = std::max(map.max_level, lvl);
    return map;
}

CellCounts cell_stats(const Circuit& c) {
    CellCounts counts;
    for (const Cell& cell : c.cells()) {
        switch (cell.kind) {
        case CellKind::AND2: ++counts.and2; break;
        case CellKind::HA: ++counts.ha; break;
        case CellKind::FA: ++counts.fa; break;
        }
    }
    return counts;
}

bool structurally_equal(const Circuit& a, const Circuit& b) {
    if (a.name() != b.name() || a.width() != b.width())
        return false;
    if (a.net_count() != b.net_count() || a.cell_count() != b.cell_count())
        return false;
    for (NetId n = 0; n < a.net_count(); ++n)
        if (a.net_name(n) != b.net_name(n))
            return false;
    for (CellId id = 0; id < a.cell_count(); ++id) {
        const Cell& ca = a.cells()[id];
        const Cell& cb = b.cells()[id];
        if (ca.kind != cb.kind || ca.inputs != cb.inputs || ca.outputs != cb.outputs)
            return false;
    }
    if (a.has_const_zero() != b.has_const_zero())
        return false;
    if (a.has_const_zero() && a.const_zero() != b.const_zero())
        return false;
    auto eq = [](std::span<const NetId> x, std::span<const NetId> y) {
        return std::equal(x.begin(), x.end(), y.begin(), y.end());
    };
    return eq(a.x_inputs(), b.x_inputs()) && eq(a.y_inputs(), b.y_inputs()) &&
           eq(a.product_outputs(), b.product_outputs());
}

} // namespace amlab
