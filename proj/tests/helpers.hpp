#pragma once

// Shared test utilities: circuit mutation through the public builder API
// (fault injection) and single-cell fixtures.

#include "amlab/builder.hpp"
#include "amlab/netlist.hpp"

#include <string>
#include <vector>

namespace amlab::test {

/// Rebuilds `c` with input pin `pin` of cell `cell` rewired to `replacement`.
inline Circuit rewire_cell_input(const Circuit& c, CellId cell, unsigned pin, NetId replacement) {
    Circuit out(c.name(), c.width());
    for (NetId n = 0; n < c.net_count(); ++n)
        out.add_net(c.net_name(n));
    for (const Cell& orig : c.cells()) {
        std::vector<NetId> inputs = orig.inputs;
        if (orig.id == cell)
            inputs.at(pin) = replacement;
        out.add_cell(orig.kind, inputs, orig.outputs);
    }
    out.set_const_zero(c.const_zero());
    out.set_x_inputs({c.x_inputs().begin(), c.x_inputs().end()});
    out.set_y_inputs({c.y_inputs().begin(), c.y_inputs().end()});
    out.set_product_outputs({c.product_outputs().begin(), c.product_outputs().end()});
    out.seal();
    return out;
}

/// Width-2 wrapper around a lone FA: x = {a, b}, y = {cin, unused},
/// products = {sum, carry, zero, zero}, so product = a + b + cin.
inline Circuit single_fa_circuit() {
    Circuit c("fa1", 2);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId cin = c.add_net("cin");
    const NetId unused = c.add_net("unused");
    const NetId s = c.add_net("s");
    const NetId co = c.add_net("co");
    c.set_const_zero(zero);
    c.set_x_inputs({a, b});
    c.set_y_inputs({cin, unused});
    c.add_cell(CellKind::FA, {a, b, cin}, {s, co});
    c.set_product_outputs({s, co, zero, zero});
    c.seal();
    return c;
}

/// Width-2 wrapper around a lone HA: product = a + b.
inline Circuit single_ha_circuit() {
    Circuit c("ha1", 2);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId u0 = c.add_net("u0");
    const NetId u1 = c.add_net("u1");
    const NetId s = c.add_net("s");
    const NetId co = c.add_net("co");
    c.set_const_zero(zero);
    c.set_x_inputs({a, b});
    c.set_y_inputs({u0, u1});
    c.add_cell(CellKind::HA, {a, b}, {s, co});
    c.set_product_outputs({s, co, zero, zero});
    c.seal();
    return c;
}

/// Width-1 AND2: product = x * y.
inline Circuit single_and2_circuit() {
    Circuit c("and1", 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId o = c.add_net("o");
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.set_y_inputs({b});
    c.add_cell(CellKind::AND2, {a, b}, {o});
    c.set_product_outputs({o, zero});
    c.seal();
    return c;
}

/// A ripple chain of `k` FAs: FA_i takes (x0, feed_{i-1}, zero); feed_0 = y0.
/// Longest path = k cells.
inline Circuit fa_chain_circuit(unsigned k) {
    Circuit c("chain" + std::to_string(k), 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.set_y_inputs({b});
    NetId feed = b;
    NetId last_sum = b;
    for (unsigned i = 0; i < k; ++i) {
        const NetId s = c.add_net("s" + std::to_string(i));
        const NetId co = c.add_net("co" + std::to_string(i));
        c.add_cell(CellKind::FA, {a, feed, zero}, {s, co});
        feed = co;
        last_sum = s;
    }
    c.set_product_outputs({last_sum, feed});
    c.seal();
    return c;
}

} // namespace amlab::test
