#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "amlab/builder.hpp"
#include "amlab/errors.hpp"
#include "amlab/netlist.hpp"
#include "amlab/netlist_io.hpp"
#include "amlab/rng.hpp"

#include <algorithm>
#include <string>

using namespace amlab;

namespace {

bool any_contains(const std::vector<std::string>& diags, const std::string& needle) {
    return std::any_of(diags.begin(), diags.end(), [&](const std::string& d) {
        return d.find(needle) != std::string::npos;
    });
}

// A minimal valid 1-bit circuit: p = x*y through one AND2.
Circuit single_and2() {
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

// Random valid DAG circuit: cells only read already-driven nets.
Circuit random_circuit(std::uint64_t seed) {
    SplitMix64 rng(seed);
    const unsigned width = 1 + static_cast<unsigned>(rng.next_below(3));
    Circuit c("rand" + std::to_string(seed), width);
    const NetId zero = c.add_net("zero");
    c.set_const_zero(zero);
    std::vector<NetId> driven{zero};
    std::vector<NetId> xs, ys;
    for (unsigned i = 0; i < width; ++i) {
        xs.push_back(c.add_net("x" + std::to_string(i)));
        ys.push_back(c.add_net("y" + std::to_string(i)));
        driven.push_back(xs.back());
        driven.push_back(ys.back());
    }
    c.set_x_inputs(xs);
    c.set_y_inputs(ys);

    const unsigned cells = 1 + static_cast<unsigned>(rng.next_below(12));
    for (unsigned k = 0; k < cells; ++k) {
        const CellKind kind = static_cast<CellKind>(rng.next_below(3));
        std::vector<NetId> ins, outs;
        for (unsigned i = 0; i < input_arity(kind); ++i)
            ins.push_back(driven[rng.next_below(driven.size())]);
        for (unsigned o = 0; o < output_arity(kind); ++o) {
            outs.push_back(c.add_net("n" + std::to_string(k) + "_" + std::to_string(o)));
            driven.push_back(outs.back());
        }
        c.add_cell(kind, ins, outs);
    }
    std::vector<NetId> products;
    for (unsigned i = 0; i < 2 * width; ++i)
        products.push_back(driven[rng.next_below(driven.size())]);
    c.set_product_outputs(products);
    c.seal();
    return c;
}

} // namespace

TEST_CASE("net ids are dense and allocated in order") {
    Circuit c("t", 1);
    CHECK(c.add_net("n0") == 0);
    CHECK(c.add_net("n1") == 1);
    CHECK(c.net_count() == 2);
}

TEST_CASE("mutation after seal is rejected") {
    Circuit c = single_and2();
    CHECK(c.sealed());
    CHECK_THROWS_WITH_AS(c.add_net("late"), doctest::Contains("sealed"), std::logic_error);
    CHECK_THROWS_AS(c.add_cell(CellKind::AND2, {0, 1}, {2}), std::logic_error);
}

TEST_CASE("add_cell guards arity, unknown nets and double drive") {
    Circuit c("t", 2);
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId cin = c.add_net("cin");
    const NetId s = c.add_net("s");
    const NetId co = c.add_net("co");

    CHECK_THROWS_WITH_AS(c.add_cell(CellKind::FA, {a, b}, {s, co}),
                         doctest::Contains("arity"), std::invalid_argument);
    CHECK_THROWS_AS(c.add_cell(CellKind::AND2, {a, 99}, {s}), std::out_of_range);

    c.add_cell(CellKind::FA, {a, b, cin}, {s, co});
    const NetId o2 = c.add_net("o2");
    CHECK_THROWS_WITH_AS(c.add_cell(CellKind::AND2, {a, b}, {s}),
                         doctest::Contains("already driven"), std::invalid_argument);
    c.add_cell(CellKind::AND2, {a, b}, {o2}); // fresh output is fine
}

TEST_CASE("validate: clean builder output has no diagnostics") {
    CHECK(validate(build_conventional(4)).empty());
    CHECK(validate(build_proposed(4)).empty());
}

TEST_CASE("validate reports a self-loop as a cycle") {
    Circuit c("loop", 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId s = c.add_net("s");
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.set_y_inputs({b});
    c.add_cell(CellKind::AND2, {a, s}, {s}); // reads its own output
    c.set_product_outputs({s, zero});
    CHECK(any_contains(validate(c), "cycle"));
    CHECK_THROWS_AS(levelize(c), std::runtime_error);
}

TEST_CASE("validate reports a two-cell combinational loop") {
    Circuit c("loop2", 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId n1 = c.add_net("n1");
    const NetId n2 = c.add_net("n2");
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.set_y_inputs({b});
    c.add_cell(CellKind::AND2, {n1, a}, {n2});
    c.add_cell(CellKind::AND2, {n2, b}, {n1});
    c.set_product_outputs({n2, zero});
    CHECK(any_contains(validate(c), "cycle"));
}

TEST_CASE("validate reports undriven product outputs") {
    Circuit c("undriven", 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId o = c.add_net("o"); // never driven
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.set_y_inputs({b});
    c.set_product_outputs({o, zero});
    CHECK(any_contains(validate(c), "undriven output"));
    CHECK_THROWS_AS(c.seal(), std::runtime_error);
}

TEST_CASE("validate reports multiple drivers") {
    Circuit c("multi", 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId o = c.add_net("o");
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.add_cell(CellKind::AND2, {a, b}, {o});
    c.set_y_inputs({b, o}); // o already cell-driven -> conflict (and width mismatch)
    c.set_product_outputs({o, zero});
    auto diags = validate(c);
    CHECK(any_contains(diags, "multiple drivers"));
    CHECK(any_contains(diags, "y_inputs"));
}

TEST_CASE("levelize ranks cells topologically") {
    Circuit c("lvl", 1);
    const NetId zero = c.add_net("zero");
    const NetId a = c.add_net("a");
    const NetId b = c.add_net("b");
    const NetId g = c.add_net("g");
    const NetId s = c.add_net("s");
    const NetId co = c.add_net("co");
    c.set_const_zero(zero);
    c.set_x_inputs({a});
    c.set_y_inputs({b});
    const CellId and_cell = c.add_cell(CellKind::AND2, {a, b}, {g});
    const CellId fa_cell = c.add_cell(CellKind::FA, {g, a, zero}, {s, co});
    c.set_product_outputs({s, co});
    c.seal();
    const LevelMap levels = levelize(c);
    CHECK(levels.level[and_cell] == 0);
    CHECK(levels.level[fa_cell] == 1);
    CHECK(levels.max_level == 1);
}

TEST_CASE("levelize of the conventional 4x4 matches a longest-chain oracle") {
    const Circuit c = build_conventional(4);
    const LevelMap levels = levelize(c);

    // Independent oracle: recursive longest path over the cell DAG.
    std::vector<int> memo(c.cell_count(), -1);
    auto depth = [&](auto&& self, CellId id) -> int {
        if (memo[id] >= 0)
            return memo[id];
        int best = 0;
        for (NetId in : c.cell(id).inputs) {
            const Driver d = c.driver(in);
            if (d.kind == DriverKind::Cell)
                best = std::max(best, 1 + self(self, d.cell));
        }
        return memo[id] = best;
    };
    int longest = 0;
    for (CellId id = 0; id < c.cell_count(); ++id)
        longest = std::max(longest, depth(depth, id));

    CHECK(levels.max_level == static_cast<std::uint32_t>(longest));
    CHECK(levels.max_level == 7); // AND -> 3 array rows -> 4-cell merge chain
    for (const Cell& cell : c.cells())
        for (NetId in : cell.inputs) {
            const Driver d = c.driver(in);
            if (d.kind == DriverKind::Cell)
                CHECK(levels.level[cell.id] > levels.level[d.cell]);
        }
}

TEST_CASE("cell_stats counts per kind") {
    Circuit empty("e", 1);
    const NetId zero = empty.add_net("zero");
    const NetId a = empty.add_net("a");
    const NetId b = empty.add_net("b");
    empty.set_const_zero(zero);
    empty.set_x_inputs({a});
    empty.set_y_inputs({b});
    empty.set_product_outputs({a, zero});
    CHECK(cell_stats(empty).total() == 0);

    const CellCounts conv = cell_stats(build_conventional(4));
    CHECK(conv.and2 == 16);
    CHECK(conv.fa == 15);
    CHECK(conv.ha == 1);
    const CellCounts prop = cell_stats(build_proposed(4));
    CHECK(prop.and2 == 16);
    CHECK(prop.fa == 12);
    CHECK(prop.ha == 0);
}

TEST_CASE("export/import round trip, both formats") {
    for (const Circuit& c : {build_conventional(4), build_proposed(4), single_and2()}) {
        for (ExportFormat fmt : {ExportFormat::Structured, ExportFormat::Text}) {
            const std::string payload = export_circuit(c, fmt);
            const Circuit back = import_circuit(payload);
            CHECK(structurally_equal(c, back));
            CHECK(export_circuit(back, fmt) == payload);
        }
    }
}

TEST_CASE("round trip holds for random valid circuits") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const Circuit c = random_circuit(seed);
        CHECK(structurally_equal(c, import_circuit(export_circuit(c, ExportFormat::Structured))));
        CHECK(structurally_equal(c, import_circuit(export_circuit(c, ExportFormat::Text))));
    }
}

TEST_CASE("ids stay dense across random constructions") {
    for (std::uint64_t seed = 100; seed < 120; ++seed) {
        const Circuit c = random_circuit(seed);
        for (CellId id = 0; id < c.cell_count(); ++id)
            CHECK(c.cells()[id].id == id);
        CHECK_THROWS_AS((void)c.net_name(static_cast<NetId>(c.net_count())), std::out_of_range);
    }
}

TEST_CASE("levelize succeeds iff the random wiring is acyclic") {
    // Rebuild a random valid circuit with one rewired input. Rewiring cell
    // `victim` to read an output of a cell that transitively depends on it
    // creates a cycle; rewiring to anything else must keep levelize happy.
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Circuit base = random_circuit(seed);
        if (base.cell_count() < 2)
            continue;
        SplitMix64 rng(seed * 31 + 5);
        const CellId victim = static_cast<CellId>(rng.next_below(base.cell_count()));

        // Transitive dependents of `victim` (cells reading its cone).
        std::vector<bool> dependent(base.cell_count(), false);
        dependent[victim] = true;
        for (bool changed = true; changed;) {
            changed = false;
            for (const Cell& cell : base.cells()) {
                if (dependent[cell.id])
                    continue;
                for (NetId in : cell.inputs) {
                    const Driver d = base.driver(in);
                    if (d.kind == DriverKind::Cell && dependent[d.cell]) {
                        dependent[cell.id] = true;
                        changed = true;
                    }
                }
            }
        }

        auto rebuild_with_input = [&](NetId replacement) {
            Circuit out(base.name(), base.width());
            for (NetId n = 0; n < base.net_count(); ++n)
                out.add_net(base.net_name(n));
            for (const Cell& cell : base.cells()) {
                std::vector<NetId> inputs = cell.inputs;
                if (cell.id == victim)
                    inputs[0] = replacement;
                out.add_cell(cell.kind, inputs, cell.outputs);
            }
            out.set_const_zero(base.const_zero());
            out.set_x_inputs({base.x_inputs().begin(), base.x_inputs().end()});
            out.set_y_inputs({base.y_inputs().begin(), base.y_inputs().end()});
            out.set_product_outputs(
                {base.product_outputs().begin(), base.product_outputs().end()});
            return out;
        };

        std::vector<CellId> dependents;
        for (CellId id = 0; id < base.cell_count(); ++id)
            if (dependent[id])
                dependents.push_back(id);

        const CellId cyclic_src = dependents[rng.next_below(dependents.size())];
        const Circuit cyclic = rebuild_with_input(base.cell(cyclic_src).outputs[0]);
        CHECK_THROWS_AS(levelize(cyclic), std::runtime_error);
        CHECK(any_contains(validate(cyclic), "cycle"));

        const Circuit still_acyclic = rebuild_with_input(base.const_zero());
        CHECK_NOTHROW(levelize(still_acyclic));
        CHECK(!any_contains(validate(still_acyclic), "cycle"));
    }
}

TEST_CASE("text format fixes the cell line token order") {
    const Circuit c = build_proposed(2);
    const std::string text = export_circuit(c, ExportFormat::Text);
    // FA <a> <b> <cin> -> <sum> <carry>
    CHECK(text.find("FA pp_0_1 pp_1_0 zero -> s1_0 c1_0") != std::string::npos);
    CHECK(text.find("circuit proposed_2x2 width 2") == 0);
}

TEST_CASE("import rejects truncated and malformed streams") {
    const std::string good = export_circuit(build_conventional(2), ExportFormat::Structured);
    CHECK_THROWS_AS(import_circuit(good.substr(0, good.size() / 2)), ImportError);
    CHECK_THROWS_AS(import_circuit("not a netlist"), ImportError);
    CHECK_THROWS_AS(import_circuit("   "), ImportError);

    const std::string text = export_circuit(build_conventional(2), ExportFormat::Text);
    const std::string headerless = text.substr(text.find('\n') + 1);
    CHECK_THROWS_WITH_AS(import_circuit(headerless), doctest::Contains("header"), ImportError);
}

TEST_CASE("import rejects a schema version mismatch") {
    std::string payload = export_circuit(build_conventional(2), ExportFormat::Structured);
    const auto pos = payload.find("\"schema_version\": \"1\"");
    REQUIRE(pos != std::string::npos);
    payload.replace(pos, std::string("\"schema_version\": \"1\"").size(),
                    "\"schema_version\": \"9\"");
    CHECK_THROWS_WITH_AS(import_circuit(payload), doctest::Contains("schema-version"),
                         ImportError);
}
