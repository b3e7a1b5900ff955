#include "amlab/sim.hpp"

#include "amlab/rng.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <thread>

namespace amlab {

namespace {

std::uint8_t eval_pin(const Cell& cell, const std::vector<std::uint8_t>& values, unsigned pin) {
    const auto v = [&](std::size_t i) { return values[cell.inputs[i]]; };
    switch (cell.kind) {
    case CellKind::AND2:
        return v(0) & v(1);
    case CellKind::HA:
        return pin == 0 ? (v(0) ^ v(1)) : (v(0) & v(1));
    case CellKind::FA:
        return pin == 0 ? (v(0) ^ v(1) ^ v(2))
                        : ((v(0) & v(1)) | (v(0) & v(2)) | (v(1) & v(2)));
    }
    return 0;
}

// Precomputed evaluation machinery for a sealed circuit.
struct SimIndex {
    std::vector<CellId> topo;                     // cells in level order
    std::vector<std::vector<CellId>> readers;     // per net, deduplicated

    explicit SimIndex(const Circuit& c) {
        const LevelMap levels = levelize(c);
        topo.resize(c.cell_count());
        for (CellId id = 0; id < c.cell_count(); ++id)
            topo[id] = id;
        std::stable_sort(topo.begin(), topo.end(), [&](CellId a, CellId b) {
            return levels.level[a] < levels.level[b];
        });
        readers.resize(c.net_count());
        for (const Cell& cell : c.cells())
            for (NetId in : cell.inputs)
                if (readers[in].empty() || readers[in].back() != cell.id)
                    readers[in].push_back(cell.id);
    }
};

void check_simulable_width(const Circuit& c) {
    if (c.width() >= 32)
        throw std::out_of_range("width " + std::to_string(c.width()) +
                                " exceeds the 64-bit product range");
}

void check_vector(const Circuit& c, SimVector v) {
    check_simulable_width(c);
    const std::uint64_t limit = 1ull << c.width();
    if (v.x >= limit || v.y >= limit)
        throw std::out_of_range("vector out of range: x=" + std::to_string(v.x) +
                                " y=" + std::to_string(v.y) + " for width " +
                                std::to_string(c.width()));
}

void settle(const Circuit& c, const SimIndex& idx, SimVector v,
            std::vector<std::uint8_t>& values) {
    values.assign(c.net_count(), 0);
    for (unsigned i = 0; i < c.width(); ++i) {
        values[c.x_inputs()[i]] = static_cast<std::uint8_t>((v.x >> i) & 1);
        values[c.y_inputs()[i]] = static_cast<std::uint8_t>((v.y >> i) & 1);
    }
    for (CellId id : idx.topo) {
        const Cell& cell = c.cells()[id];
        for (unsigned pin = 0; pin < cell.outputs.size(); ++pin)
            values[cell.outputs[pin]] = eval_pin(cell, values, pin);
    }
}

std::uint64_t decode_product(const Circuit& c, const std::vector<std::uint8_t>& values) {
    std::uint64_t product = 0;
    const auto outputs = c.product_outputs();
    for (std::size_t bit = 0; bit < outputs.size(); ++bit)
        product |= static_cast<std::uint64_t>(values[outputs[bit]]) << bit;
    return product;
}

constexpr unsigned kWidthGuard = 10;

} // namespace

std::uint64_t evaluate(const Circuit& c, SimVector v) {
    check_vector(c, v);
    SimIndex idx(c);
    std::vector<std::uint8_t> values;
    settle(c, idx, v, values);
    return decode_product(c, values);
}

std::vector<std::uint8_t> evaluate_nets(const Circuit& c, SimVector v) {
    check_vector(c, v);
    SimIndex idx(c);
    std::vector<std::uint8_t> values;
    settle(c, idx, v, values);
    return values;
}

VerifyResult exhaustive_verify(const Circuit& c, std::size_t max_recorded) {
    if (c.width() > kWidthGuard)
        throw std::invalid_argument("exhaustive_verify: width " + std::to_string(c.width()) +
                                    " exceeds the exhaustive guard (" +
                                    std::to_string(kWidthGuard) + ")");
    SimIndex idx(c);
    std::vector<std::uint8_t> values;
    VerifyResult result;
    const std::uint64_t limit = 1ull << c.width();
    for (std::uint64_t x = 0; x < limit; ++x) {
        for (std::uint64_t y = 0; y < limit; ++y) {
            settle(c, idx, {x, y}, values);
            const std::uint64_t got = decode_product(c, values);
            const std::uint64_t expected = x * y;
            ++result.total;
            if (got == expected) {
                ++result.passed;
            } else {
                ++result.failed;
                if (result.failures.size() < max_recorded)
                    result.failures.push_back({x, y, got, expected});
            }
        }
    }
    return result;
}

std::uint64_t stimulus_length(const StimulusSource& source, unsigned width) {
    if (std::holds_alternative<ExhaustivePairs>(source))
        return 1ull << (2 * width);
    if (const auto* list = std::get_if<ExplicitSequence>(&source))
        return list->vectors.size();
    return std::get<RandomSequence>(source).length;
}

SimVector stimulus_vector(const StimulusSource& source, unsigned width, std::uint64_t index) {
    const std::uint64_t mask = (1ull << width) - 1;
    if (std::holds_alternative<ExhaustivePairs>(source))
        return {index >> width, index & mask};
    if (const auto* list = std::get_if<ExplicitSequence>(&source))
        return list->vectors.at(index);
    const auto& rs = std::get<RandomSequence>(source);
    return {splitmix64_at(rs.seed, 2 * index) & mask, splitmix64_at(rs.seed, 2 * index + 1) & mask};
}

double ActivityProfile::activity(NetId net) const {
    if (vectors_applied < 2)
        throw std::logic_error("activity undefined: fewer than 2 vectors applied");
    return static_cast<double>(toggles.at(net)) / static_cast<double>(vectors_applied - 1);
}

ActivityProfile activity_profile(const Circuit& c, const StimulusSource& source, unsigned workers) {
    check_simulable_width(c);
    if (stimulus_length(source, c.width()) < 2)
        throw std::invalid_argument("activity_profile: sequence length must be >= 2");
    if (std::holds_alternative<ExhaustivePairs>(source) && c.width() > kWidthGuard)
        throw std::invalid_argument("activity_profile: width " + std::to_string(c.width()) +
                                    " exceeds the exhaustive guard");
    if (const auto* list = std::get_if<ExplicitSequence>(&source))
        for (SimVector v : list->vectors)
            check_vector(c, v);

    const SimIndex idx(c);
    const std::uint64_t length = stimulus_length(source, c.width());
    const std::uint64_t transitions = length - 1;
    const unsigned used = static_cast<unsigned>(
        std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(transitions, 1)));

    ActivityProfile profile;
    profile.circuit_name = c.name();
    profile.vectors_applied = length;
    profile.toggles.assign(c.net_count(), 0);

    // Each worker owns transition indices [lo, hi): toggles between vectors
    // k-1 and k. Partial counts merge by summation, so the result is
    // identical for any worker count.
    auto run_range = [&](std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& out) {
        std::vector<std::uint8_t> prev, cur;
        settle(c, idx, stimulus_vector(source, c.width(), lo - 1), prev);
        for (std::uint64_t k = lo; k < hi; ++k) {
            settle(c, idx, stimulus_vector(source, c.width(), k), cur);
            for (NetId n = 0; n < c.net_count(); ++n)
                out[n] += prev[n] != cur[n];
            std::swap(prev, cur);
        }
    };

    if (used == 1) {
        run_range(1, length, profile.toggles);
        return profile;
    }

    std::vector<std::vector<std::uint64_t>> partial(used,
                                                    std::vector<std::uint64_t>(c.net_count(), 0));
    std::vector<std::thread> threads;
    threads.reserve(used);
    for (unsigned w = 0; w < used; ++w) {
        const std::uint64_t lo = 1 + transitions * w / used;
        const std::uint64_t hi = 1 + transitions * (w + 1) / used;
        threads.emplace_back([&, lo, hi, w] { run_range(lo, hi, partial[w]); });
    }
    for (auto& t : threads)
        t.join();
    for (const auto& part : partial)
        for (NetId n = 0; n < c.net_count(); ++n)
            profile.toggles[n] += part[n];
    return profile;
}

TimingResult static_critical_path(const Circuit& c, const TechProfile& tech) {
    const SimIndex idx(c);
    std::vector<double> arrival(c.net_count(), 0.0);
    std::vector<NetId> argmax_input(c.cell_count(), 0);

    for (CellId id : idx.topo) {
        const Cell& cell = c.cells()[id];
        double worst = 0.0;
        NetId worst_net = cell.inputs.front();
        for (NetId in : cell.inputs) {
            if (arrival[in] > worst) {
                worst = arrival[in];
                worst_net = in;
            }
        }
        argmax_input[id] = worst_net;
        const double out_time = worst + tech.delay.of(cell.kind);
        for (NetId out : cell.outputs)
            arrival[out] = out_time;
    }

    TimingResult result;
    NetId worst_output = c.product_outputs().empty() ? 0 : c.product_outputs()[0];
    for (NetId out : c.product_outputs()) {
        if (arrival[out] > result.delay) {
            result.delay = arrival[out];
            worst_output = out;
        }
    }

    NetId at = worst_output;
    while (true) {
        const Driver d = c.driver(at);
        if (d.kind != DriverKind::Cell)
            break;
        result.path.push_back(d.cell);
        at = argmax_input[d.cell];
    }
    std::reverse(result.path.begin(), result.path.end());
    return result;
}

namespace {

struct Event {
    double time;
    std::uint64_t seq;
    NetId net;
    std::uint8_t value;
    std::uint64_t version;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        return a.time > b.time || (a.time == b.time && a.seq > b.seq);
    }
};

void require_positive_delays(const TechProfile& tech) {
    for (CellKind k : {CellKind::AND2, CellKind::HA, CellKind::FA})
        if (!(tech.delay.of(k) > 0.0))
            throw std::invalid_argument(std::string("dynamic timing requires positive delays (") +
                                        to_string(k) + " is not)");
}

// Inertial-delay event loop from a settled baseline. `values` is mutated.
TimingResult run_events(const Circuit& c, const SimIndex& idx, const TechProfile& tech,
                        std::vector<std::uint8_t>& values, SimVector to) {
    std::vector<bool> is_output(c.net_count(), false);
    for (NetId out : c.product_outputs())
        is_output[out] = true;

    std::priority_queue<Event, std::vector<Event>, EventLater> queue;
    std::vector<std::uint64_t> version(c.net_count(), 0);
    std::uint64_t seq = 0;

    auto schedule = [&](NetId net, std::uint8_t value, double at) {
        ++version[net]; // cancels any pending transition (inertial)
        if (values[net] != value)
            queue.push(Event{at, ++seq, net, value, version[net]});
    };

    auto evaluate_cell = [&](CellId id, double now) {
        const Cell& cell = c.cells()[id];
        const double at = now + tech.delay.of(cell.kind);
        for (unsigned pin = 0; pin < cell.outputs.size(); ++pin)
            schedule(cell.outputs[pin], eval_pin(cell, values, pin), at);
    };

    // Apply the new input state at t = 0.
    std::vector<CellId> roots;
    auto flip_input = [&](NetId net, std::uint8_t bit) {
        if (values[net] == bit)
            return;
        values[net] = bit;
        for (CellId reader : idx.readers[net])
            roots.push_back(reader);
    };
    for (unsigned i = 0; i < c.width(); ++i) {
        flip_input(c.x_inputs()[i], static_cast<std::uint8_t>((to.x >> i) & 1));
        flip_input(c.y_inputs()[i], static_cast<std::uint8_t>((to.y >> i) & 1));
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    for (CellId id : roots)
        evaluate_cell(id, 0.0);

    TimingResult result;
    while (!queue.empty()) {
        const Event ev = queue.top();
        queue.pop();
        if (ev.version != version[ev.net])
            continue; // superseded
        values[ev.net] = ev.value;
        ++version[ev.net];
        ++result.events;
        if (is_output[ev.net])
            result.delay = std::max(result.delay, ev.time);
        for (CellId reader : idx.readers[ev.net])
            evaluate_cell(reader, ev.time);
    }
    return result;
}

} // namespace

TimingResult dynamic_settle_delay(const Circuit& c, const TechProfile& tech, SimVector from,
                                  SimVector to) {
    check_vector(c, from);
    check_vector(c, to);
    require_positive_delays(tech);
    const SimIndex idx(c);
    std::vector<std::uint8_t> values;
    settle(c, idx, from, values);
    return run_events(c, idx, tech, values, to);
}

TimingResult worst_dynamic_delay(const Circuit& c, const TechProfile& tech,
                                 const TransitionSource& source) {
    check_simulable_width(c);
    require_positive_delays(tech);
    const SimIndex idx(c);
    std::vector<std::uint8_t> baseline, values;
    TimingResult worst;

    auto consider = [&](const TimingResult& r) {
        if (r.delay > worst.delay)
            worst = r;
    };

    if (std::holds_alternative<ExhaustiveTransitions>(source)) {
        if (c.width() > 4)
            throw std::invalid_argument(
                "worst_dynamic_delay: exhaustive transitions need width <= 4, got " +
                std::to_string(c.width()));
        const std::uint64_t states = 1ull << (2 * c.width());
        const std::uint64_t mask = (1ull << c.width()) - 1;
        for (std::uint64_t f = 0; f < states; ++f) {
            settle(c, idx, {f >> c.width(), f & mask}, baseline);
            for (std::uint64_t t = 0; t < states; ++t) {
                values = baseline;
                consider(run_events(c, idx, tech, values, {t >> c.width(), t & mask}));
            }
        }
        return worst;
    }

    const auto& rt = std::get<RandomTransitions>(source);
    const std::uint64_t mask = (1ull << c.width()) - 1;
    for (std::uint64_t k = 0; k < rt.count; ++k) {
        const SimVector from{splitmix64_at(rt.seed, 4 * k) & mask,
                             splitmix64_at(rt.seed, 4 * k + 1) & mask};
        const SimVector to{splitmix64_at(rt.seed, 4 * k + 2) & mask,
                           splitmix64_at(rt.seed, 4 * k + 3) & mask};
        settle(c, idx, from, values);
        consider(run_events(c, idx, tech, values, to));
    }
    return worst;
}

} // namespace amlab
