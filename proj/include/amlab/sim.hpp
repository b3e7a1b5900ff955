#pragma once

/// @file sim.hpp
/// Circuit evaluation: levelized zero-delay semantics for functional output
/// and switching-activity profiles, event-driven inertial-delay semantics
/// for settling-time estimates, plus a topological longest-path bound.
///
/// Evaluation rules: AND2 out = a&b; HA sum = a^b, carry = a&b;
/// FA sum = a^b^c, carry = majority(a,b,c).

#include "amlab/netlist.hpp"
#include "amlab/tech.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace amlab {

/// One applied input pair; x, y < 2^width.
struct SimVector {
    std::uint64_t x = 0;
    std::uint64_t y = 0;

    bool operator==(const SimVector&) const = default;
};

/// Single levelized pass; returns the decoded product (LSB-first outputs).
/// @throws std::out_of_range if the vector exceeds the circuit width
std::uint64_t evaluate(const Circuit& circuit, SimVector vector);

/// Same pass, but returns the settled value of every net (indexed by NetId).
std::vector<std::uint8_t> evaluate_nets(const Circuit& circuit, SimVector vector);

struct VerifyResult {
    struct Failure {
        std::uint64_t x, y, got, expected;
    };
    std::uint64_t total = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::vector<Failure> failures; // first `max_recorded` only

    bool ok() const { return failed == 0; }
};

/// Applies all 2^n * 2^n input pairs against the integer product oracle.
/// @throws std::invalid_argument when width > 10 (run-budget guard)
VerifyResult exhaustive_verify(const Circuit& circuit, std::size_t max_recorded = 100);

/// All 4^width pairs in lexicographic order: x outer (major), y inner.
struct ExhaustivePairs {};
/// `length` vectors from the SplitMix64 stream (see rng.hpp): vector k uses
/// draws 2k (x) and 2k+1 (y), each masked to width bits.
struct RandomSequence {
    std::uint64_t seed = 0;
    std::uint64_t length = 0;
};
/// A caller-supplied vector sequence (at least 2 entries).
struct ExplicitSequence {
    std::vector<SimVector> vectors;
};
using StimulusSource = std::variant<ExhaustivePairs, RandomSequence, ExplicitSequence>;

std::uint64_t stimulus_length(const StimulusSource& source, unsigned width);
SimVector stimulus_vector(const StimulusSource& source, unsigned width, std::uint64_t index);

/// Per-net toggle statistics over a vector sequence, counted between
/// consecutive settled states (zero-delay levelized semantics, no glitches).
struct ActivityProfile {
    std::string circuit_name;
    std::uint64_t vectors_applied = 0;
    std::vector<std::uint64_t> toggles; // indexed by NetId

    /// toggles / (vectors_applied - 1). @throws std::logic_error if fewer
    /// than two vectors were applied
    double activity(NetId net) const;
};

/// Deterministic for a given source spec and independent of `workers`:
/// the sequence is partitioned by index range and per-range toggle counts
/// are merged by summation.
/// @throws std::invalid_argument for RandomSequence length < 2 or width > 10
///         with ExhaustivePairs
ActivityProfile activity_profile(const Circuit& circuit, const StimulusSource& source,
                                 unsigned workers = 1);

struct TimingResult {
    double delay = 0.0;
    std::vector<CellId> path; // static mode: the critical input-to-output chain
    std::uint64_t events = 0; // dynamic mode: applied net transitions
};

/// Topological longest path to any product output under per-kind cell
/// delays; an upper bound on any settling time.
TimingResult static_critical_path(const Circuit& circuit, const TechProfile& tech);

/// Event-driven inertial-delay simulation: settles `from`, applies `to` at
/// t = 0, returns the time of the last product-output change (0 if none).
/// @throws std::invalid_argument unless all per-kind delays are > 0
TimingResult dynamic_settle_delay(const Circuit& circuit, const TechProfile& tech, SimVector from,
                                  SimVector to);

/// All (from, to) state pairs; width must be <= 4.
struct ExhaustiveTransitions {};
/// `count` sampled transitions; transition k uses SplitMix64 draws
/// 4k..4k+3: (from.x, from.y, to.x, to.y), each masked to width bits.
struct RandomTransitions {
    std::uint64_t seed = 0;
    std::uint64_t count = 0;
};
using TransitionSource = std::variant<ExhaustiveTransitions, RandomTransitions>;

/// Maximum settle delay over the transition source (ties: first encountered).
TimingResult worst_dynamic_delay(const Circuit& circuit, const TechProfile& tech,
                                 const TransitionSource& source);

} // namespace amlab
