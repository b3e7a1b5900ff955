#include "amlab/netlist_io.hpp"

#include "amlab/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace amlab {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kSchemaVersion = "1";

void require_valid_for_export(const Circuit& c) {
    auto diags = validate(c);
    if (!diags.empty())
        throw std::invalid_argument("export_circuit: circuit '" + c.name() +
                                    "' is invalid: " + diags.front());
}

std::string export_structured(const Circuit& c) {
    ordered_json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["name"] = c.name();
    doc["width"] = c.width();
    doc["const_zero"] = c.const_zero();
    ordered_json nets = ordered_json::array();
    for (NetId n = 0; n < c.net_count(); ++n)
        nets.push_back({{"id", n}, {"name", c.net_name(n)}});
    doc["nets"] = std::move(nets);
    ordered_json cells = ordered_json::array();
    for (const Cell& cell : c.cells())
        cells.push_back({{"id", cell.id},
                         {"kind", to_string(cell.kind)},
                         {"inputs", cell.inputs},
                         {"outputs", cell.outputs}});
    doc["cells"] = std::move(cells);
    doc["x_inputs"] = std::vector<NetId>(c.x_inputs().begin(), c.x_inputs().end());
    doc["y_inputs"] = std::vector<NetId>(c.y_inputs().begin(), c.y_inputs().end());
    doc["product_outputs"] =
        std::vector<NetId>(c.product_outputs().begin(), c.product_outputs().end());
    return doc.dump(2) + "\n";
}

std::string export_text(const Circuit& c) {
    std::unordered_set<std::string> seen;
    for (NetId n = 0; n < c.net_count(); ++n) {
        const std::string& name = c.net_name(n);
        if (name.empty() || name.find_first_of(" \t\r\n") != std::string::npos)
            throw std::invalid_argument("text export: net " + std::to_string(n) +
                                        " has an empty or whitespace name");
        if (!seen.insert(name).second)
            throw std::invalid_argument("text export: duplicate net name '" + name + "'");
    }

    std::ostringstream out;
    out << "circuit " << c.name() << " width " << c.width() << "\n";
    out << "zero " << c.net_name(c.const_zero()) << "\n";
    auto emit_list = [&](const char* tag, std::span<const NetId> nets) {
        out << tag;
        for (NetId n : nets)
            out << ' ' << c.net_name(n);
        out << "\n";
    };
    emit_list("x", c.x_inputs());
    emit_list("y", c.y_inputs());
    emit_list("p", c.product_outputs());
    for (NetId n = 0; n < c.net_count(); ++n)
        out << "net " << c.net_name(n) << "\n";
    for (const Cell& cell : c.cells()) {
        out << to_string(cell.kind);
        for (NetId in : cell.inputs)
            out << ' ' << c.net_name(in);
        out << " ->";
        for (NetId o : cell.outputs)
            out << ' ' << c.net_name(o);
        out << "\n";
    }
    return out.str();
}

NetId json_net(const nlohmann::json& value, const char* what, std::size_t net_count) {
    if (!value.is_number_unsigned())
        throw ImportError(std::string("malformed netlist: ") + what + " must be a non-negative id");
    const auto id = value.get<std::uint64_t>();
    if (id >= net_count)
        throw ImportError(std::string("malformed netlist: ") + what + " refers to unknown net " +
                          std::to_string(id));
    return static_cast<NetId>(id);
}

Circuit import_structured(std::string_view data) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(data);
    } catch (const nlohmann::json::exception& e) {
        throw ImportError(std::string("malformed netlist: ") + e.what());
    }

    try {
        if (!doc.contains("schema_version"))
            throw ImportError("malformed netlist: missing schema_version");
        if (doc["schema_version"] != kSchemaVersion)
            throw ImportError("schema-version mismatch: expected \"1\", got " +
                              doc["schema_version"].dump());
        for (const char* key :
             {"name", "width", "const_zero", "nets", "cells", "x_inputs", "y_inputs",
              "product_outputs"})
            if (!doc.contains(key))
                throw ImportError(std::string("malformed netlist: missing field '") + key + "'");

        Circuit c(doc["name"].get<std::string>(), doc["width"].get<unsigned>());
        const auto& nets = doc["nets"];
        for (std::size_t i = 0; i < nets.size(); ++i) {
            const auto& entry = nets[i];
            if (entry["id"].get<std::uint64_t>() != i)
                throw ImportError("malformed netlist: net ids must be dense and ordered");
            c.add_net(entry["name"].get<std::string>());
        }
        const auto& cells = doc["cells"];
        for (std::size_t i = 0; i < cells.size(); ++i) {
            const auto& entry = cells[i];
            if (entry["id"].get<std::uint64_t>() != i)
                throw ImportError("malformed netlist: cell ids must be dense and ordered");
            const CellKind kind = cell_kind_from_string(entry["kind"].get<std::string>());
            std::vector<NetId> ins, outs;
            for (const auto& v : entry["inputs"])
                ins.push_back(json_net(v, "cell input", c.net_count()));
            for (const auto& v : entry["outputs"])
                outs.push_back(json_net(v, "cell output", c.net_count()));
            c.add_cell(kind, std::move(ins), std::move(outs));
        }
        c.set_const_zero(json_net(doc["const_zero"], "const_zero", c.net_count()));
        auto read_list = [&](const char* key) {
            std::vector<NetId> out;
            for (const auto& v : doc[key])
                out.push_back(json_net(v, key, c.net_count()));
            return out;
        };
        c.set_x_inputs(read_list("x_inputs"));
        c.set_y_inputs(read_list("y_inputs"));
        c.set_product_outputs(read_list("product_outputs"));
        c.seal();
        return c;
    } catch (const ImportError&) {
        throw;
    } catch (const std::exception& e) {
        throw ImportError(std::string("malformed netlist: ") + e.what());
    }
}

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream in(line);
    std::string tok;
    while (in >> tok)
        tokens.push_back(tok);
    return tokens;
}

Circuit import_text(std::string_view data) {
    std::istringstream in{std::string(data)};
    std::string line;

    std::string name;
    unsigned width = 0;
    bool have_header = false;
    std::vector<std::string> net_order;
    std::unordered_map<std::string, NetId> net_ids;
    struct CellLine {
        CellKind kind;
        std::vector<std::string> ins, outs;
    };
    std::vector<CellLine> cell_lines;
    std::string zero_name;
    std::vector<std::string> x_names, y_names, p_names;

    while (std::getline(in, line)) {
        auto tokens = split_ws(line);
        if (tokens.empty())
            continue;
        const std::string& head = tokens[0];
        if (head == "circuit") {
            if (tokens.size() != 4 || tokens[2] != "width")
                throw ImportError("malformed netlist: bad header line '" + line + "'");
            name = tokens[1];
            try {
                width = static_cast<unsigned>(std::stoul(tokens[3]));
            } catch (const std::exception&) {
                throw ImportError("malformed netlist: bad width '" + tokens[3] + "'");
            }
            have_header = true;
        } else if (head == "zero") {
            if (tokens.size() != 2)
                throw ImportError("malformed netlist: bad zero line '" + line + "'");
            zero_name = tokens[1];
        } else if (head == "x" || head == "y" || head == "p") {
            auto& dst = head == "x" ? x_names : head == "y" ? y_names : p_names;
            dst.assign(tokens.begin() + 1, tokens.end());
        } else if (head == "net") {
            if (tokens.size() != 2)
                throw ImportError("malformed netlist: bad net line '" + line + "'");
            if (net_ids.count(tokens[1]))
                throw ImportError("malformed netlist: duplicate net '" + tokens[1] + "'");
            net_ids.emplace(tokens[1], static_cast<NetId>(net_order.size()));
            net_order.push_back(tokens[1]);
        } else {
            CellLine cl;
            try {
                cl.kind = cell_kind_from_string(head);
            } catch (const std::invalid_argument&) {
                throw ImportError("malformed netlist: unknown line '" + line + "'");
            }
            auto arrow = std::find(tokens.begin(), tokens.end(), "->");
            if (arrow == tokens.end())
                throw ImportError("malformed netlist: cell line missing '->': '" + line + "'");
            cl.ins.assign(tokens.begin() + 1, arrow);
            cl.outs.assign(arrow + 1, tokens.end());
            cell_lines.push_back(std::move(cl));
        }
    }

    if (!have_header)
        throw ImportError("malformed netlist: missing 'circuit' header");

    auto lookup = [&](const std::string& n) -> NetId {
        auto it = net_ids.find(n);
        if (it == net_ids.end())
            throw ImportError("malformed netlist: reference to undeclared net '" + n + "'");
        return it->second;
    };

    try {
        Circuit c(name, width);
        for (auto& n : net_order)
            c.add_net(n);
        for (auto& cl : cell_lines) {
            std::vector<NetId> ins, outs;
            for (auto& n : cl.ins)
                ins.push_back(lookup(n));
            for (auto& n : cl.outs)
                outs.push_back(lookup(n));
            c.add_cell(cl.kind, std::move(ins), std::move(outs));
        }
        if (zero_name.empty())
            throw ImportError("malformed netlist: missing 'zero' line");
        c.set_const_zero(lookup(zero_name));
        auto to_ids = [&](const std::vector<std::string>& names) {
            std::vector<NetId> out;
            for (auto& n : names)
                out.push_back(lookup(n));
            return out;
        };
        c.set_x_inputs(to_ids(x_names));
        c.set_y_inputs(to_ids(y_names));
        c.set_product_outputs(to_ids(p_names));
        c.seal();
        return c;
    } catch (const ImportError&) {
        throw;
    } catch (const std::exception& e) {
        throw ImportError(std::string("malformed netlist: ") + e.what());
    }
}

} // namespace

std::string export_circuit(const Circuit& c, ExportFormat format) {
    require_valid_for_export(c);
    return format == ExportFormat::Structured ? export_structured(c) : export_text(c);
}

Circuit import_circuit(std::string_view data) {
    const auto first = data.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        throw ImportError("malformed netlist: empty stream");
    return data[first] == '{' ? import_structured(data) : import_text(data);
}

void write_circuit_file(const Circuit& c, ExportFormat format, const std::string& path) {
    const std::string payload = export_circuit(c, format);
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot open '" + path + "' for writing");
    out << payload;
    if (!out.flush())
        throw IoError("write failed for '" + path + "'");
}

Circuit read_circuit_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return import_circuit(buf.str());
}

} // namespace amlab
