#include "amlab/builder.hpp"

#include <stdexcept>
#include <string>

namespace amlab {

namespace {

std::string bit_name(const char* prefix, unsigned a, unsigned b) {
    return std::string(prefix) + std::to_string(a) + "_" + std::to_string(b);
}

// Shared scaffold: named circuit, const-zero, operand nets, partial products.
struct ArrayUnderConstruction {
    unsigned n;
    Circuit circuit;
    ArrayLayout layout;
    NetId zero;
    std::vector<NetId> x, y;
    PartialProductMatrix pp;
    std::vector<NetId> products;

    ArrayUnderConstruction(const std::string& design, unsigned width) : n(width) {
        if (n < 2)
            throw std::invalid_argument("multiplier width must be >= 2, got " + std::to_string(n));
        circuit = Circuit(design + "_" + std::to_string(n) + "x" + std::to_string(n), n);
        zero = circuit.add_net("zero");
        circuit.set_const_zero(zero);
        for (unsigned i = 0; i < n; ++i)
            x.push_back(circuit.add_net("x" + std::to_string(i)));
        for (unsigned j = 0; j < n; ++j)
            y.push_back(circuit.add_net("y" + std::to_string(j)));
        circuit.set_x_inputs(x);
        circuit.set_y_inputs(y);
        pp = build_partial_products(circuit, x, y);
        layout.and_cells = pp.cells;
        layout.net_weight.assign(circuit.net_count(), 0);
        for (unsigned j = 0; j < n; ++j)
            for (unsigned i = 0; i < n; ++i)
                layout.net_weight[pp.at(i, j)] = static_cast<int>(i + j);
    }

    NetId fresh(const char* prefix, unsigned r, unsigned i, int weight) {
        const NetId net = circuit.add_net(bit_name(prefix, r, i));
        layout.net_weight.resize(circuit.net_count(), 0);
        layout.net_weight[net] = weight;
        return net;
    }

    BuiltMultiplier finish() {
        circuit.set_product_outputs(products);
        circuit.seal();
        return BuiltMultiplier{std::move(circuit), std::move(layout)};
    }
};

} // namespace

PartialProductMatrix build_partial_products(Circuit& circuit, std::span<const NetId> x_inputs,
                                            std::span<const NetId> y_inputs) {
    if (x_inputs.size() != y_inputs.size())
        throw std::invalid_argument("build_partial_products: operand widths differ");
    const unsigned n = static_cast<unsigned>(x_inputs.size());
    if (n < 2)
        throw std::invalid_argument("build_partial_products: width must be >= 2, got " +
                                    std::to_string(n));
    PartialProductMatrix m;
    m.n = n;
    m.entries.resize(static_cast<std::size_t>(n) * n);
    m.cells.resize(static_cast<std::size_t>(n) * n);
    for (unsigned j = 0; j < n; ++j) {
        for (unsigned i = 0; i < n; ++i) {
            const NetId out = circuit.add_net(bit_name("pp_", i, j));
            const CellId cell = circuit.add_cell(CellKind::AND2, {x_inputs[i], y_inputs[j]}, {out});
            m.entries[static_cast<std::size_t>(j) * n + i] = out;
            m.cells[static_cast<std::size_t>(j) * n + i] = cell;
        }
    }
    return m;
}

BuiltMultiplier build_conventional_with_layout(unsigned n, FirstRowStyle style) {
    ArrayUnderConstruction a("conventional", n);
    Circuit& c = a.circuit;

    // Rolling carry-save state; virtual row 0 is the first partial-product row.
    std::vector<NetId> sum(n), carry(n, a.zero);
    for (unsigned i = 0; i < n; ++i)
        sum[i] = a.pp.at(i, 0);
    a.products.push_back(a.pp.at(0, 0)); // p0

    for (unsigned r = 1; r < n; ++r) {
        std::vector<NetId> next_sum(n), next_carry(n);
        std::vector<CellId> row(n);
        for (unsigned i = 0; i < n; ++i) {
            const NetId pp_bit = a.pp.at(i, r);
            const NetId sum_above = (i + 1 < n) ? sum[i + 1] : a.zero;
            const NetId carry_above = carry[i];
            const NetId s = a.fresh("s", r, i, static_cast<int>(r + i));
            const NetId co = a.fresh("c", r, i, static_cast<int>(r + i + 1));
            if (r == 1 && style == FirstRowStyle::HalfAdders)
                row[i] = c.add_cell(CellKind::HA, {pp_bit, sum_above}, {s, co});
            else
                row[i] = c.add_cell(CellKind::FA, {pp_bit, sum_above, carry_above}, {s, co});
            next_sum[i] = s;
            next_carry[i] = co;
        }
        a.layout.adder_rows.push_back(std::move(row));
        a.products.push_back(next_sum[0]); // p_r
        sum = std::move(next_sum);
        carry = std::move(next_carry);
    }

    // Final ripple merge over weights n .. 2n-1: one HA, then FAs.
    {
        const NetId s = a.fresh("ms", n, 0, static_cast<int>(n));
        const NetId co = a.fresh("mc", n, 0, static_cast<int>(n + 1));
        a.layout.merge_cells.push_back(c.add_cell(CellKind::HA, {sum[1], carry[0]}, {s, co}));
        a.products.push_back(s);
        NetId ripple = co;
        for (unsigned k = 1; k < n; ++k) {
            const unsigned w = n + k;
            const NetId ms = a.fresh("ms", w, 0, static_cast<int>(w));
            const NetId mc = a.fresh("mc", w, 0, static_cast<int>(w + 1));
            const CellId cell =
                (k < n - 1) ? c.add_cell(CellKind::FA, {sum[k + 1], carry[k], ripple}, {ms, mc})
                            : c.add_cell(CellKind::FA, {carry[n - 1], ripple, a.zero}, {ms, mc});
            a.layout.merge_cells.push_back(cell);
            a.products.push_back(ms);
            ripple = mc; // the very last carry (weight 2n) stays unconsumed
        }
    }

    return a.finish();
}

BuiltMultiplier build_proposed_with_layout(unsigned n) {
    ArrayUnderConstruction a("proposed", n);
    Circuit& c = a.circuit;

    std::vector<NetId> sum(n), carry(n, a.zero);
    for (unsigned i = 0; i < n; ++i)
        sum[i] = a.pp.at(i, 0);
    a.products.push_back(a.pp.at(0, 0)); // p0

    // Upper carry-save rows. The left-edge adder of row r absorbs the
    // relocated last-row partial product pp(r, n-1), whose weight n-1+r
    // matches the column; that slot is const-zero in the conventional array.
    for (unsigned r = 1; r + 1 < n; ++r) {
        std::vector<NetId> next_sum(n), next_carry(n);
        std::vector<CellId> row(n);
        for (unsigned i = 0; i < n; ++i) {
            const NetId pp_bit = a.pp.at(i, r);
            const NetId second = (i + 1 < n) ? sum[i + 1] : a.pp.at(r, n - 1);
            const NetId s = a.fresh("s", r, i, static_cast<int>(r + i));
            const NetId co = a.fresh("c", r, i, static_cast<int>(r + i + 1));
            row[i] = c.add_cell(CellKind::FA, {pp_bit, second, carry[i]}, {s, co});
            next_sum[i] = s;
            next_carry[i] = co;
        }
        a.layout.adder_rows.push_back(std::move(row));
        a.products.push_back(next_sum[0]);
        sum = std::move(next_sum);
        carry = std::move(next_carry);
    }

    // Merged carry-save/ripple final row: each adder's carry feeds the freed
    // input of the next column; the most significant carry is product 2n-1.
    {
        const unsigned r = n - 1;
        std::vector<CellId> row(n);
        NetId ripple = 0;
        for (unsigned i = 0; i < n; ++i) {
            const NetId s = a.fresh("s", r, i, static_cast<int>(r + i));
            const NetId co = a.fresh("c", r, i, static_cast<int>(r + i + 1));
            if (i == 0)
                row[i] = c.add_cell(CellKind::FA, {a.pp.at(0, n - 1), sum[1], carry[0]}, {s, co});
            else if (i < n - 1)
                row[i] = c.add_cell(CellKind::FA, {ripple, sum[i + 1], carry[i]}, {s, co});
            else
                row[i] = c.add_cell(CellKind::FA, {a.pp.at(n - 1, n - 1), ripple, carry[i]}, {s, co});
            a.products.push_back(s); // p_{n-1+i}
            ripple = co;
            if (i == n - 1)
                a.products.push_back(co); // MSB p_{2n-1}
        }
        a.layout.adder_rows.push_back(std::move(row));
    }

    return a.finish();
}

Circuit build_conventional(unsigned n, FirstRowStyle style) {
    return build_conventional_with_layout(n, style).circuit;
}

Circuit build_proposed(unsigned n) {
    return build_proposed_with_layout(n).circuit;
}

} // namespace amlab
