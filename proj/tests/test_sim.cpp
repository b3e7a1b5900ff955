#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

#include "amlab/builder.hpp"
#include "amlab/report_io.hpp"
#include "amlab/rng.hpp"
#include "amlab/sim.hpp"
#include "amlab/tech.hpp"

#include <stdexcept>

using namespace amlab;
using namespace amlab::test;

namespace {

TechProfile uniform_delays(double d) {
    TechProfile t = tech_tsmc180();
    t.name = "uniform";
    t.delay = {d, d, d};
    return t;
}

} // namespace

TEST_CASE("FA truth table: sum = parity, carry = majority") {
    const Circuit fa = single_fa_circuit();
    for (unsigned a = 0; a < 2; ++a)
        for (unsigned b = 0; b < 2; ++b)
            for (unsigned cin = 0; cin < 2; ++cin) {
                const std::uint64_t product = evaluate(fa, {a | (b << 1), cin});
                CHECK(product == a + b + cin); // sum bit0, carry bit1
            }
}

TEST_CASE("HA truth table") {
    const Circuit ha = single_ha_circuit();
    for (unsigned a = 0; a < 2; ++a)
        for (unsigned b = 0; b < 2; ++b)
            CHECK(evaluate(ha, {a | (b << 1), 0}) == a + b);
}

TEST_CASE("evaluate: golden multiply spot checks") {
    const Circuit conv = build_conventional(4);
    const Circuit prop = build_proposed(4);
    CHECK(evaluate(conv, {3, 5}) == 15);
    CHECK(evaluate(prop, {3, 5}) == 15);
    CHECK(evaluate(prop, {15, 15}) == 225);
    for (std::uint64_t y = 0; y < 16; ++y) {
        CHECK(evaluate(conv, {0, y}) == 0);
        CHECK(evaluate(prop, {0, y}) == 0);
    }
}

TEST_CASE("evaluate rejects out-of-range vectors") {
    const Circuit conv = build_conventional(4);
    CHECK_THROWS_AS(evaluate(conv, {16, 0}), std::out_of_range);
    CHECK_THROWS_AS(evaluate(conv, {0, 99}), std::out_of_range);
}

TEST_CASE("exhaustive_verify passes for both 4x4 designs") {
    const VerifyResult conv = exhaustive_verify(build_conventional(4));
    CHECK(conv.total == 256);
    CHECK(conv.passed == 256);
    const VerifyResult prop = exhaustive_verify(build_proposed(4));
    CHECK(prop.passed == 256);
    CHECK(prop.failures.empty());
}

TEST_CASE("exhaustive_verify enforces the width guard") {
    CHECK_THROWS_AS(exhaustive_verify(build_conventional(11)), std::invalid_argument);
}

TEST_CASE("a mis-wired circuit is detected with a counterexample") {
    const Circuit prop = build_proposed(4);
    // Swap one FA input with const-zero.
    CellId victim = 0;
    for (const Cell& cell : prop.cells())
        if (cell.kind == CellKind::FA && cell.inputs[0] != prop.const_zero())
            victim = cell.id;
    const Circuit faulted = rewire_cell_input(prop, victim, 0, prop.const_zero());
    const VerifyResult r = exhaustive_verify(faulted);
    CHECK(r.failed >= 1);
    REQUIRE(!r.failures.empty());
    const auto& f = r.failures.front();
    CHECK(f.got != f.expected);
    CHECK(f.expected == f.x * f.y);
}

TEST_CASE("activity: constant sequence has zero toggles") {
    const Circuit and2 = single_and2_circuit();
    const ActivityProfile p =
        activity_profile(and2, ExplicitSequence{{{1, 1}, {1, 1}, {1, 1}}});
    CHECK(p.vectors_applied == 3);
    for (NetId n = 0; n < and2.net_count(); ++n) {
        CHECK(p.toggles[n] == 0);
        CHECK(p.activity(n) == 0.0);
    }
}

TEST_CASE("activity: single AND2 output toggles once on (0,0)->(1,1)") {
    const Circuit and2 = single_and2_circuit();
    const ActivityProfile p = activity_profile(and2, ExplicitSequence{{{0, 0}, {1, 1}}});
    const NetId out = and2.product_outputs()[0];
    CHECK(p.toggles[out] == 1);
    CHECK(p.activity(out) == 1.0);
}

TEST_CASE("activity: exhaustive pairs on width 1 match hand counts") {
    // Sequence (x,y): (0,0) (0,1) (1,0) (1,1); x toggles once, y three
    // times, and the AND output once.
    const Circuit and2 = single_and2_circuit();
    const ActivityProfile p = activity_profile(and2, ExhaustivePairs{});
    CHECK(p.vectors_applied == 4);
    CHECK(p.toggles[and2.x_inputs()[0]] == 1);
    CHECK(p.toggles[and2.y_inputs()[0]] == 3);
    CHECK(p.toggles[and2.product_outputs()[0]] == 1);
}

TEST_CASE("activity bounds and reproducibility") {
    const Circuit conv = build_conventional(4);
    const ActivityProfile a = activity_profile(conv, ExhaustivePairs{});
    const ActivityProfile b = activity_profile(conv, ExhaustivePairs{});
    CHECK(a.toggles == b.toggles);
    for (NetId n = 0; n < conv.net_count(); ++n) {
        CHECK(a.toggles[n] <= a.vectors_applied - 1);
        CHECK(a.activity(n) >= 0.0);
        CHECK(a.activity(n) <= 1.0);
    }
    CHECK(activity_to_csv(conv, a) == activity_to_csv(conv, b));

    const ActivityProfile r1 = activity_profile(conv, RandomSequence{42, 1000});
    const ActivityProfile r2 = activity_profile(conv, RandomSequence{42, 1000});
    CHECK(r1.toggles == r2.toggles);
    const ActivityProfile r3 = activity_profile(conv, RandomSequence{43, 1000});
    CHECK(r1.toggles != r3.toggles);
}

TEST_CASE("activity is independent of the worker count") {
    const Circuit prop = build_proposed(5);
    const ActivityProfile serial = activity_profile(prop, RandomSequence{9, 4097}, 1);
    for (unsigned workers : {2u, 3u, 4u, 7u}) {
        const ActivityProfile parallel = activity_profile(prop, RandomSequence{9, 4097}, workers);
        CHECK(serial.toggles == parallel.toggles);
    }
}

TEST_CASE("activity guards") {
    const Circuit and2 = single_and2_circuit();
    CHECK_THROWS_AS(activity_profile(and2, RandomSequence{0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(activity_profile(and2, ExplicitSequence{{{0, 0}}}), std::invalid_argument);
}

TEST_CASE("static critical path: single FA equals the FA delay") {
    const TechProfile tech = tech_tsmc180();
    const TimingResult r = static_critical_path(single_fa_circuit(), tech);
    CHECK(r.delay == doctest::Approx(5.08e-10).epsilon(1e-12));
    CHECK(r.path.size() == 1);
}

TEST_CASE("static critical path: k-FA chain is k times the FA delay") {
    const TechProfile tech = tech_tsmc180();
    for (unsigned k : {1u, 3u, 6u}) {
        const TimingResult r = static_critical_path(fa_chain_circuit(k), tech);
        CHECK(r.delay == doctest::Approx(k * 5.08e-10).epsilon(1e-9));
        CHECK(r.path.size() == k);
    }
}

TEST_CASE("static path: proposed is shorter than conventional under uniform delays") {
    const TechProfile tech = uniform_delays(1.0);
    for (unsigned n = 4; n <= 8; ++n) {
        const double conv = static_critical_path(build_conventional(n), tech).delay;
        const double prop = static_critical_path(build_proposed(n), tech).delay;
        CHECK(prop <= conv);
        CHECK(conv == doctest::Approx(2.0 * n)); // AND + (n-1) rows + n merge cells
        CHECK(prop == doctest::Approx(2.0 * n - 1.0));
    }
}

TEST_CASE("static path ordering also holds under the default per-kind delays") {
    for (const TechProfile& tech : {tech_tsmc180(), tech_90nm(), tech_65nm()}) {
        for (unsigned n = 2; n <= 8; ++n) {
            const double conv = static_critical_path(build_conventional(n), tech).delay;
            const double prop = static_critical_path(build_proposed(n), tech).delay;
            CHECK(prop < conv); // merge HA + ripple replaced by one fused row
        }
    }
}

TEST_CASE("static path cells form a connected input-to-output chain") {
    const Circuit conv = build_conventional(4);
    const TimingResult r = static_critical_path(conv, tech_tsmc180());
    REQUIRE(!r.path.empty());
    for (std::size_t i = 1; i < r.path.size(); ++i) {
        const Cell& prev = conv.cell(r.path[i - 1]);
        const Cell& next = conv.cell(r.path[i]);
        bool connected = false;
        for (NetId out : prev.outputs)
            for (NetId in : next.inputs)
                connected |= out == in;
        CHECK(connected);
    }
}

TEST_CASE("dynamic settle: single FA settles at the FA delay") {
    const Circuit fa = single_fa_circuit();
    const TechProfile tech = tech_tsmc180();
    // a: 0 -> 1 with b = cin = 0 flips the sum.
    const TimingResult r = dynamic_settle_delay(fa, tech, {0, 0}, {1, 0});
    CHECK(r.delay == doctest::Approx(5.08e-10).epsilon(1e-12));
    CHECK(r.events >= 1);
}

TEST_CASE("dynamic settle: identical vectors produce no events") {
    const Circuit conv = build_conventional(4);
    const TimingResult r = dynamic_settle_delay(conv, tech_tsmc180(), {7, 9}, {7, 9});
    CHECK(r.delay == 0.0);
    CHECK(r.events == 0);
}

TEST_CASE("dynamic settle requires positive delays") {
    TechProfile zero_delay = tech_tsmc180();
    zero_delay.delay.and2 = 0.0;
    CHECK_THROWS_AS(dynamic_settle_delay(build_conventional(2), zero_delay, {0, 0}, {1, 1}),
                    std::invalid_argument);
}

TEST_CASE("dynamic settle never exceeds the static bound (sampled)") {
    const TechProfile tech = tech_tsmc180();
    for (const Circuit& c : {build_conventional(4), build_proposed(4)}) {
        const double bound = static_critical_path(c, tech).delay;
        const TimingResult worst = worst_dynamic_delay(c, tech, RandomTransitions{11, 500});
        CHECK(worst.delay <= bound + 1e-18);
        CHECK(worst.delay > 0.0);
    }
}

TEST_CASE("worst dynamic delay is deterministic for a fixed seed") {
    const Circuit prop = build_proposed(5);
    const TechProfile tech = tech_tsmc180();
    const TimingResult a = worst_dynamic_delay(prop, tech, RandomTransitions{3, 200});
    const TimingResult b = worst_dynamic_delay(prop, tech, RandomTransitions{3, 200});
    CHECK(a.delay == b.delay);
    CHECK(a.events == b.events);
}

TEST_CASE("exhaustive transitions guard") {
    CHECK_THROWS_AS(worst_dynamic_delay(build_conventional(5), tech_tsmc180(),
                                        ExhaustiveTransitions{}),
                    std::invalid_argument);
}

TEST_CASE("stimulus sources are stable and random-access") {
    const RandomSequence rs{123, 100};
    const StimulusSource src{rs};
    SplitMix64 serial(123);
    for (std::uint64_t k = 0; k < 100; ++k) {
        const SimVector v = stimulus_vector(src, 8, k);
        CHECK(v.x == (serial.next() & 0xff));
        CHECK(v.y == (serial.next() & 0xff));
    }
    CHECK(stimulus_length(src, 8) == 100);
    CHECK(stimulus_length(ExhaustivePairs{}, 4) == 256);
    const SimVector first = stimulus_vector(ExhaustivePairs{}, 4, 0);
    const SimVector second = stimulus_vector(ExhaustivePairs{}, 4, 1);
    CHECK(first == SimVector{0, 0});
    CHECK(second == SimVector{0, 1}); // y is the inner (minor) index
}
