#include "subsparse/dictionary_io.hpp"

#include "subsparse/report_io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace subsparse {

namespace {

using nlohmann::json;

IndexSet parse_index_array(const json& j, const char* field) {
    if (!j.is_array()) throw DomainError(std::string("dictionary: field '") + field + "' must be an array");
    IndexSet out;
    for (const auto& e : j) {
        if (!e.is_number_integer())
            throw DomainError(std::string("dictionary: field '") + field + "' must hold integers");
        out.push_back(e.get<int>());
    }
    return out;
}

}  // namespace

Dictionary parse_dictionary(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception& e) {
        throw DomainError(std::string("dictionary: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DomainError("dictionary: top level must be an object");
    if (!j.contains("D") || !j["D"].is_number_integer())
        throw DomainError("dictionary: field 'D' missing or not an integer");
    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
        throw DomainError("dictionary: field 'atoms' missing or empty");

    const int dim = j["D"].get<int>();
    if (dim < 1) throw DomainError("dictionary: field 'D' must be positive");
    const auto& atoms_json = j["atoms"];
    Matrix atoms(dim, static_cast<Eigen::Index>(atoms_json.size()));
    for (size_t a = 0; a < atoms_json.size(); ++a) {
        const auto& entry = atoms_json[a];
        if (!entry.is_array() || static_cast<int>(entry.size()) != dim)
            throw DomainError("dictionary: field 'atoms[" + std::to_string(a) +
                              "]' must be an array of length D");
        for (int i = 0; i < dim; ++i) {
            if (!entry[static_cast<size_t>(i)].is_number())
                throw DomainError("dictionary: field 'atoms[" + std::to_string(a) +
                                  "]' must hold numbers");
            atoms(i, static_cast<Eigen::Index>(a)) = entry[static_cast<size_t>(i)].get<double>();
        }
        const double norm = atoms.col(static_cast<Eigen::Index>(a)).norm();
        if (std::abs(norm - 1.0) > tol::load_norm)
            throw DomainError("dictionary: atom " + std::to_string(a) + " has norm " +
                              format_float(norm) + ", beyond the 1e-6 re-normalization window");
        // atoms that are already unit to working precision keep their exact
        // bits, so save/load round trips are bitwise stable
        if (std::abs(norm - 1.0) > tol::atom_norm)
            atoms.col(static_cast<Eigen::Index>(a)) /= norm;
    }

    std::optional<Partition> partition;
    if (j.contains("partition")) {
        const auto& p = j["partition"];
        if (!p.is_object() || !p.contains("J0") || !p.contains("Jc"))
            throw DomainError("dictionary: field 'partition' must carry 'J0' and 'Jc'");
        partition = Partition{parse_index_array(p["J0"], "partition.J0"),
                              parse_index_array(p["Jc"], "partition.Jc")};
    }

    std::optional<std::vector<IndexSet>> groups;
    if (j.contains("groups")) {
        if (!j["groups"].is_array()) throw DomainError("dictionary: field 'groups' must be an array");
        std::vector<IndexSet> parsed;
        for (size_t g = 0; g < j["groups"].size(); ++g)
            parsed.push_back(parse_index_array(j["groups"][g], "groups"));
        groups = std::move(parsed);
    }

    return Dictionary(std::move(atoms), std::move(partition), std::move(groups));
}

Dictionary load_dictionary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("dictionary: cannot open input file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_dictionary(buffer.str());
}

std::string dictionary_to_json(const Dictionary& dict) {
    JsonWriter w;
    w.begin_object();
    w.field("D", dict.ambient_dim());
    w.key("atoms").begin_array();
    for (int a = 0; a < dict.num_atoms(); ++a) {
        w.begin_array();
        for (int i = 0; i < dict.ambient_dim(); ++i) w.value(dict.atoms()(i, a));
        w.end_array();
    }
    w.end_array();
    if (dict.has_partition()) {
        w.key("partition").begin_object();
        w.key("J0").begin_array();
        for (int j : dict.partition().inliers) w.value(j);
        w.end_array();
        w.key("Jc").begin_array();
        for (int j : dict.partition().outliers) w.value(j);
        w.end_array();
        w.end_object();
    }
    if (dict.has_groups()) {
        w.key("groups").begin_array();
        for (const IndexSet& group : dict.groups()) {
            w.begin_array();
            for (int j : group) w.value(j);
            w.end_array();
        }
        w.end_array();
    }
    w.end_object();
    return w.str();
}

void save_dictionary(const Dictionary& dict, const std::string& path) {
    write_artifact(path, dictionary_to_json(dict));
}

}  // namespace subsparse
