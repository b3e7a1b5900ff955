#include "amlab/tech.hpp"

#include "amlab/errors.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace amlab {

std::vector<std::string> validate(const TechProfile& t) {
    std::vector<std::string> diags;
    auto nonneg = [&](double v, const char* what) {
        if (!(v >= 0.0))
            diags.push_back(std::string(what) + " must be >= 0");
    };
    nonneg(t.vdd, "vdd");
    nonneg(t.vswing, "vswing");
    nonneg(t.freq, "freq");
    nonneg(t.cload_per_input, "cload_per_input");
    for (CellKind k : {CellKind::AND2, CellKind::HA, CellKind::FA}) {
        nonneg(t.delay.of(k), "delay");
        nonneg(t.isc.of(k), "isc");
        nonneg(t.ileak.of(k), "ileak");
        if (t.transistors.of(k) < 1)
            diags.push_back(std::string("transistor cost for ") + to_string(k) + " must be >= 1");
    }
    if (t.vswing > t.vdd)
        diags.push_back("vswing must be <= vdd");
    return diags;
}

namespace {

TechProfile make_profile(std::string name, double vdd, double fa_delay) {
    TechProfile t;
    t.name = std::move(name);
    t.vdd = vdd;
    t.vswing = vdd;
    t.freq = 1.0e8;
    t.cload_per_input = 1.0e-15;
    t.delay = {0.25 * fa_delay, 0.5 * fa_delay, fa_delay};
    t.isc = {0.0, 0.0, 0.0};
    t.ileak = {0.0, 0.0, 0.0};
    t.transistors = {8, 8, 16};
    return t;
}

} // namespace

TechProfile tech_tsmc180() { return make_profile("tsmc180", 2.0, 5.08e-10); }
TechProfile tech_90nm() { return make_profile("90nm", 1.2, 5.07e-10); }
TechProfile tech_65nm() { return make_profile("65nm", 1.1, 5.06e-10); }

std::optional<TechProfile> builtin_tech(std::string_view name) {
    if (name == "tsmc180" || name == "180nm" || name == "0.18um")
        return tech_tsmc180();
    if (name == "90nm")
        return tech_90nm();
    if (name == "65nm")
        return tech_65nm();
    return std::nullopt;
}

TechProfile tech_from_json(std::string_view data) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(data);
    } catch (const nlohmann::json::exception& e) {
        throw ImportError(std::string("malformed tech profile: ") + e.what());
    }
    try {
        TechProfile t;
        t.name = doc.at("name").get<std::string>();
        t.vdd = doc.at("vdd").get<double>();
        t.vswing = doc.value("vswing", t.vdd);
        t.freq = doc.at("freq").get<double>();
        t.cload_per_input = doc.at("cload_per_input").get<double>();
        auto per_kind_d = [&](const char* key) {
            const auto& obj = doc.at(key);
            return PerKind<double>{obj.at("AND2").get<double>(), obj.at("HA").get<double>(),
                                   obj.at("FA").get<double>()};
        };
        t.delay = per_kind_d("delays");
        t.isc = per_kind_d("isc");
        t.ileak = per_kind_d("ileak");
        const auto& tr = doc.at("transistors");
        t.transistors = {tr.at("AND2").get<int>(), tr.at("HA").get<int>(), tr.at("FA").get<int>()};
        auto diags = validate(t);
        if (!diags.empty())
            throw ImportError("invalid tech profile '" + t.name + "': " + diags.front());
        return t;
    } catch (const ImportError&) {
        throw;
    } catch (const std::exception& e) {
        throw ImportError(std::string("malformed tech profile: ") + e.what());
    }
}

std::string tech_to_json(const TechProfile& t) {
    nlohmann::ordered_json doc;
    doc["name"] = t.name;
    doc["vdd"] = t.vdd;
    doc["vswing"] = t.vswing;
    doc["freq"] = t.freq;
    doc["cload_per_input"] = t.cload_per_input;
    auto per_kind = [](const auto& pk) {
        return nlohmann::ordered_json{{"AND2", pk.and2}, {"HA", pk.ha}, {"FA", pk.fa}};
    };
    doc["delays"] = per_kind(t.delay);
    doc["isc"] = per_kind(t.isc);
    doc["ileak"] = per_kind(t.ileak);
    doc["transistors"] = per_kind(t.transistors);
    return doc.dump(2) + "\n";
}

TechProfile load_tech(const std::string& name_or_path) {
    if (auto builtin = builtin_tech(name_or_path))
        return *builtin;
    std::ifstream in(name_or_path, std::ios::binary);
    if (!in)
        throw ImportError("unknown tech profile '" + name_or_path +
                          "' (not a builtin name and not a readable file)");
    std::ostringstream buf;
    buf << in.rdbuf();
    return tech_from_json(buf.str());
}

} // namespace amlab
