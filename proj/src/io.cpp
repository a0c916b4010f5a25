#include "mpmrf/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "mpmrf/error.hpp"

namespace mpmrf {

using nlohmann::json;

namespace {

int get_int(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw InputError(std::string("field '") + key + "' must be an integer");
    }
    return j.at(key).get<int>();
}

double get_number(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) throw InputError(std::string("field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

Edge parse_edge_key(const std::string& key) {
    const auto dash = key.find('-');
    if (dash == std::string::npos) throw InputError("alpha key '" + key + "' is not of the form u-v");
    int a = 0;
    int b = 0;
    const char* begin = key.data();
    const char* end = key.data() + key.size();
    auto r1 = std::from_chars(begin, begin + dash, a);
    auto r2 = std::from_chars(begin + dash + 1, end, b);
    if (r1.ec != std::errc() || r1.ptr != begin + dash || r2.ec != std::errc() || r2.ptr != end) {
        throw InputError("alpha key '" + key + "' is not of the form u-v");
    }
    return Edge(a, b);
}

}  // namespace

Tree tree_from_json(const json& j) {
    if (!j.is_object()) throw InputError("tree JSON must be an object");
    const int d = get_int(j, "d");
    if (d < 1) throw InputError("d must be at least 1");
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        const json& list = j.at("edges");
        if (!list.is_array()) throw InputError("'edges' must be an array");
        for (const json& e : list) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
                throw InputError("each edge must be a pair of integers");
            }
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    return Tree(d, std::move(edges));
}

json tree_to_json(const Tree& tree) {
    json edges = json::array();
    for (const Edge& e : tree.edges()) edges.push_back({e.first, e.second});
    return json{{"d", tree.size()}, {"edges", edges}};
}

MpmrfModel model_from_json(const json& j) {
    Tree tree = tree_from_json(j);
    const double lambda = get_number(j, "lambda");
    if (!j.contains("alpha")) throw InputError("field 'alpha' is required");
    const json& a = j.at("alpha");
    if (a.is_number()) return MpmrfModel(std::move(tree), lambda, a.get<double>());
    if (!a.is_object()) throw InputError("'alpha' must be a number or an object keyed by edge");
    std::map<Edge, double> alpha;
    for (const auto& [key, value] : a.items()) {
        if (!value.is_number()) throw InputError("alpha for '" + key + "' must be a number");
        const Edge e = parse_edge_key(key);
        if (!tree.has_edge(e.first, e.second)) throw InputError("alpha key '" + key + "' is not an edge");
        if (!alpha.emplace(e, value.get<double>()).second) throw InputError("duplicate alpha for edge '" + key + "'");
    }
    return MpmrfModel(std::move(tree), lambda, std::move(alpha));
}

json model_to_json(const MpmrfModel& model) {
    json j = tree_to_json(model.tree());
    j["lambda"] = model.lambda();
    if (const auto a = model.common_alpha()) {
        j["alpha"] = *a;
    } else {
        json per_edge = json::object();
        for (const auto& [e, value] : model.alphas()) {
            per_edge[std::to_string(e.first) + "-" + std::to_string(e.second)] = value;
        }
        j["alpha"] = per_edge;
    }
    return j;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

json verdict_to_json(const OrderVerdict& verdict) {
    json j;
    j["relation"] = to_string(verdict.relation);
    j["witness_le"] = verdict.witness_le ? json(*verdict.witness_le) : json(nullptr);
    j["witness_ge"] = verdict.witness_ge ? json(*verdict.witness_ge) : json(nullptr);
    return j;
}

json spectrum_to_json(const SpectrumReport& r) {
    return json{{"eigenvalues", r.eigenvalues},
                {"rho", r.rho},
                {"estrada", r.estrada},
                {"algebraic_connectivity", r.algebraic_connectivity},
                {"degrees", r.degrees}};
}

json poset_to_json(const ShapePoset& poset) {
    json shapes = json::array();
    for (const ShapeCode& c : poset.codes) shapes.push_back(c.hex());
    json hasse = json::array();
    for (const auto& [i, j] : poset.hasse) hasse.push_back({i, j});
    json flags = json::array();
    for (const GridFlag& f : poset.flags) {
        json verdicts = json::array();
        for (Relation r : f.verdicts) verdicts.push_back(to_string(r));
        flags.push_back({{"from", f.from},
                         {"to", f.to},
                         {"u", f.move.u},
                         {"v", f.move.v},
                         {"w", f.move.w},
                         {"verdicts", verdicts}});
    }
    json undecided = json::array();
    for (const auto& [i, j] : poset.undecided) undecided.push_back({i, j});
    return json{{"d", poset.d},
                {"lambda", poset.lambda},
                {"alpha_grid", poset.alpha_grid},
                {"shapes", shapes},
                {"hasse", hasse},
                {"flags", flags},
                {"undecided", undecided}};
}

std::string format_double(double x) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, r.ptr);
}

std::string pmf_csv(const DiscreteDist& dist) {
    std::string out = "k,p\n";
    for (int k = 0; k <= dist.support_bound(); ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_double(dist.pmf[k]);
        out += '\n';
    }
    out += "# tail_mass," + format_double(dist.tail_mass) + "\n";
    return out;
}

}  // namespace mpmrf
