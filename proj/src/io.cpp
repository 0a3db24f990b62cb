#include "isc/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace isc::io {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
    std::string text = read_file(path);
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("failed to parse " + path);
    return j;
}

double get_num(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        throw ParseError(std::string("missing or non-numeric field '") + key + "'");
    }
    return j[key].get<double>();
}

int get_int(const json& j, const char* key) { return static_cast<int>(get_num(j, key)); }

std::vector<double> get_array(const json& j, const char* key, size_t expect) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw ParseError(std::string("missing array field '") + key + "'");
    }
    std::vector<double> out;
    out.reserve(j[key].size());
    for (const auto& v : j[key]) {
        if (!v.is_number()) throw ParseError(std::string("non-numeric entry in '") + key + "'");
        out.push_back(v.get<double>());
    }
    if (out.size() != expect) {
        throw ParseError(std::string("field '") + key + "' has length " +
                         std::to_string(out.size()) + ", expected " + std::to_string(expect));
    }
    return out;
}

void append_array(std::string& out, const std::vector<double>& v) {
    out += "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += format_double(v[i]);
    }
    out += "]";
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", v);
    return buf;
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t fnv1a_file(const std::string& path) { return fnv1a(read_file(path)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
    if (!out) throw ParseError("write failed for " + path);
}

void save_model(const TabularModel& m, const std::string& path) {
    std::string s;
    s += "{\n";
    s += "  \"n_states\": " + std::to_string(m.n_states) + ",\n";
    s += "  \"n_controls\": " + std::to_string(m.n_controls) + ",\n";
    s += "  \"n_obs\": " + std::to_string(m.n_obs) + ",\n";
    s += "  \"discount\": " + format_double(m.discount) + ",\n";
    s += "  \"initial_belief\": ";
    append_array(s, m.initial_belief);
    s += ",\n  \"transition\": [\n";
    for (int u = 0; u < m.n_controls; ++u) {
        s += "    [\n";
        for (int x = 0; x < m.n_states; ++x) {
            std::vector<double> row(m.n_states);
            for (int t = 0; t < m.n_states; ++t) row[t] = m.trans(u, x, t);
            s += "      ";
            append_array(s, row);
            s += x + 1 < m.n_states ? ",\n" : "\n";
        }
        s += u + 1 < m.n_controls ? "    ],\n" : "    ]\n";
    }
    s += "  ],\n  \"observation\": [\n";
    for (int u = 0; u < m.n_controls; ++u) {
        s += "    [\n";
        for (int x = 0; x < m.n_states; ++x) {
            std::vector<double> row(m.n_obs);
            for (int y = 0; y < m.n_obs; ++y) row[y] = m.obs(u, x, y);
            s += "      ";
            append_array(s, row);
            s += x + 1 < m.n_states ? ",\n" : "\n";
        }
        s += u + 1 < m.n_controls ? "    ],\n" : "    ]\n";
    }
    s += "  ]\n}\n";
    write_file(path, s);
}

TabularModel load_model(const std::string& path) {
    json j = parse_file(path);
    TabularModel m;
    m.n_states = get_int(j, "n_states");
    m.n_controls = get_int(j, "n_controls");
    m.n_obs = get_int(j, "n_obs");
    m.discount = get_num(j, "discount");
    if (m.n_states < 1 || m.n_controls < 1 || m.n_obs < 1) {
        throw ParseError("model dimensions must be positive in " + path);
    }
    m.resize_tables();
    m.initial_belief = get_array(j, "initial_belief", static_cast<size_t>(m.n_states));
    const auto& tr = j["transition"];
    const auto& ob = j["observation"];
    if (!tr.is_array() || static_cast<int>(tr.size()) != m.n_controls || !ob.is_array() ||
        static_cast<int>(ob.size()) != m.n_controls) {
        throw ParseError("transition/observation tables malformed in " + path);
    }
    for (int u = 0; u < m.n_controls; ++u) {
        if (!tr[u].is_array() || static_cast<int>(tr[u].size()) != m.n_states ||
            !ob[u].is_array() || static_cast<int>(ob[u].size()) != m.n_states) {
            throw ParseError("transition/observation tables malformed in " + path);
        }
        for (int x = 0; x < m.n_states; ++x) {
            const auto& trow = tr[u][x];
            const auto& orow = ob[u][x];
            if (!trow.is_array() || static_cast<int>(trow.size()) != m.n_states ||
                !orow.is_array() || static_cast<int>(orow.size()) != m.n_obs) {
                throw ParseError("transition/observation tables malformed in " + path);
            }
            for (int t = 0; t < m.n_states; ++t) {
                if (!trow[t].is_number()) {
                    throw ParseError("non-numeric transition entry in " + path);
                }
                m.trans(u, x, t) = trow[t].get<double>();
            }
            for (int y = 0; y < m.n_obs; ++y) {
                if (!orow[y].is_number()) {
                    throw ParseError("non-numeric observation entry in " + path);
                }
                m.obs(u, x, y) = orow[y].get<double>();
            }
        }
    }
    return m;
}

void save_state_cost(const StateControlCost& k, const std::string& path) {
    std::string s;
    s += "{\n  \"kind\": \"state_control\",\n";
    s += "  \"n_states\": " + std::to_string(k.n_states) + ",\n";
    s += "  \"n_controls\": " + std::to_string(k.n_controls) + ",\n";
    s += "  \"table\": [\n";
    for (int x = 0; x < k.n_states; ++x) {
        std::vector<double> row(k.n_controls);
        for (int u = 0; u < k.n_controls; ++u) row[u] = k.at(x, u);
        s += "    ";
        append_array(s, row);
        s += x + 1 < k.n_states ? ",\n" : "\n";
    }
    s += "  ]\n}\n";
    write_file(path, s);
}

StateControlCost load_state_cost(const std::string& path) {
    json j = parse_file(path);
    if (!j.contains("kind") || j["kind"] != "state_control") {
        throw ParseError(path + " is not a state-control cost file");
    }
    StateControlCost k;
    k.resize(get_int(j, "n_states"), get_int(j, "n_controls"));
    const auto& table = j["table"];
    if (!table.is_array() || static_cast<int>(table.size()) != k.n_states) {
        throw ParseError("cost table malformed in " + path);
    }
    for (int x = 0; x < k.n_states; ++x) {
        if (!table[x].is_array() || static_cast<int>(table[x].size()) != k.n_controls) {
            throw ParseError("cost table malformed in " + path);
        }
        for (int u = 0; u < k.n_controls; ++u) {
            if (!table[x][u].is_number()) throw ParseError("cost table malformed in " + path);
            k.at(x, u) = table[x][u].get<double>();
        }
    }
    return k;
}

void save_initial_cost(const InitialStateCost& c, const std::string& path) {
    std::string s;
    s += "{\n  \"kind\": \"initial_state\",\n";
    s += "  \"n_states\": " + std::to_string(c.n_states) + ",\n";
    s += "  \"n_controls\": " + std::to_string(c.n_controls) + ",\n";
    s += "  \"table\": [\n";
    for (int x0 = 0; x0 < c.n_states; ++x0) {
        s += "    [\n";
        for (int x = 0; x < c.n_states; ++x) {
            std::vector<double> row(c.n_controls);
            for (int u = 0; u < c.n_controls; ++u) row[u] = c.at(x0, x, u);
            s += "      ";
            append_array(s, row);
            s += x + 1 < c.n_states ? ",\n" : "\n";
        }
        s += x0 + 1 < c.n_states ? "    ],\n" : "    ]\n";
    }
    s += "  ]\n}\n";
    write_file(path, s);
}

InitialStateCost load_initial_cost(const std::string& path) {
    json j = parse_file(path);
    if (!j.contains("kind") || j["kind"] != "initial_state") {
        throw ParseError(path + " is not an initial-state cost file");
    }
    InitialStateCost c;
    c.resize(get_int(j, "n_states"), get_int(j, "n_controls"));
    const auto& table = j["table"];
    if (!table.is_array() || static_cast<int>(table.size()) != c.n_states) {
        throw ParseError("cost table malformed in " + path);
    }
    for (int x0 = 0; x0 < c.n_states; ++x0) {
        if (!table[x0].is_array() || static_cast<int>(table[x0].size()) != c.n_states) {
            throw ParseError("cost table malformed in " + path);
        }
        for (int x = 0; x < c.n_states; ++x) {
            if (!table[x0][x].is_array() ||
                static_cast<int>(table[x0][x].size()) != c.n_controls) {
                throw ParseError("cost table malformed in " + path);
            }
            for (int u = 0; u < c.n_controls; ++u) {
                if (!table[x0][x][u].is_number()) {
                    throw ParseError("cost table malformed in " + path);
                }
                c.at(x0, x, u) = table[x0][x][u].get<double>();
            }
        }
    }
    return c;
}

void save_policy(const AlphaPolicy& p, const SolveParams& params, const std::string& path) {
    std::string s;
    s += "{\n";
    s += "  \"n_states\": " + std::to_string(p.n_states) + ",\n";
    s += "  \"n_controls\": " + std::to_string(p.n_controls) + ",\n";
    s += "  \"discount\": " + format_double(p.discount) + ",\n";
    s += "  \"time_budget\": " + format_double(params.time_budget) + ",\n";
    s += "  \"max_belief_points\": " + std::to_string(params.max_belief_points) + ",\n";
    s += "  \"epsilon\": " + format_double(params.epsilon) + ",\n";
    s += "  \"rng_seed\": " + std::to_string(params.rng_seed) + ",\n";
    s += "  \"horizon_bound\": " + std::to_string(params.horizon_bound) + ",\n";
    s += "  \"alphas\": [\n";
    for (size_t i = 0; i < p.alphas.size(); ++i) {
        s += "    {\"action\": " + std::to_string(p.alphas[i].action) + ", \"values\": ";
        append_array(s, p.alphas[i].values);
        s += i + 1 < p.alphas.size() ? "},\n" : "}\n";
    }
    s += "  ]\n}\n";
    write_file(path, s);
}

LoadedPolicy load_policy(const std::string& path) {
    json j = parse_file(path);
    LoadedPolicy out;
    out.policy.n_states = get_int(j, "n_states");
    out.policy.n_controls = get_int(j, "n_controls");
    out.policy.discount = get_num(j, "discount");
    out.params.time_budget = get_num(j, "time_budget");
    out.params.max_belief_points = get_int(j, "max_belief_points");
    out.params.epsilon = get_num(j, "epsilon");
    if (!j.contains("rng_seed") || !j["rng_seed"].is_number()) {
        throw ParseError("missing or non-numeric field 'rng_seed'");
    }
    out.params.rng_seed = j["rng_seed"].get<std::uint64_t>();
    out.params.horizon_bound = get_int(j, "horizon_bound");
    if (!j.contains("alphas") || !j["alphas"].is_array() || j["alphas"].empty()) {
        throw ParseError("policy in " + path + " has no alpha vectors");
    }
    for (const auto& a : j["alphas"]) {
        if (!a.is_object() || !a.contains("action") || !a["action"].is_number() ||
            !a.contains("values") || !a["values"].is_array()) {
            throw ParseError("policy in " + path + " has a malformed alpha record");
        }
        AlphaVector v;
        v.action = static_cast<int>(a["action"].get<double>());
        if (v.action < 0 || v.action >= out.policy.n_controls) {
            throw ParseError("policy in " + path + " has an out-of-range action");
        }
        for (const auto& x : a["values"]) {
            if (!x.is_number()) {
                throw ParseError("policy in " + path + " has a non-numeric alpha entry");
            }
            v.values.push_back(x.get<double>());
        }
        if (static_cast<int>(v.values.size()) != out.policy.n_states) {
            throw ParseError("policy in " + path + " has a wrong-length alpha vector");
        }
        out.policy.alphas.push_back(std::move(v));
    }
    return out;
}

GridSpec load_grid_spec(const std::string& path) {
    json j = parse_file(path);
    GridSpec spec;
    spec.rows = get_int(j, "rows");
    spec.cols = get_int(j, "cols");
    spec.slip_prob = get_num(j, "slip_prob");
    spec.detect_given_wall = get_num(j, "detect_given_wall");
    spec.detect_given_no_wall = get_num(j, "detect_given_no_wall");
    if (j.contains("layout")) {
        if (!j["layout"].is_string()) throw ParseError("layout must be a string in " + path);
        spec.layout_name = j["layout"].get<std::string>();
    }
    if (j.contains("walls")) {
        if (!j["walls"].is_array()) throw ParseError("walls must be an array in " + path);
        for (const auto& w : j["walls"]) {
            if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_string()) {
                throw ParseError("wall segments must be [cell, \"N|E|S|W\"] pairs in " + path);
            }
            spec.walls.insert({w[0].get<int>(), dir_from_string(w[1].get<std::string>())});
        }
    }
    return spec;
}

void save_grid_spec(const GridSpec& spec, const std::string& path) {
    std::string s;
    s += "{\n";
    s += "  \"layout\": \"" + spec.layout_name + "\",\n";
    s += "  \"rows\": " + std::to_string(spec.rows) + ",\n";
    s += "  \"cols\": " + std::to_string(spec.cols) + ",\n";
    s += "  \"slip_prob\": " + format_double(spec.slip_prob) + ",\n";
    s += "  \"detect_given_wall\": " + format_double(spec.detect_given_wall) + ",\n";
    s += "  \"detect_given_no_wall\": " + format_double(spec.detect_given_no_wall) + ",\n";
    s += "  \"walls\": [";
    bool first = true;
    for (const auto& [c, d] : spec.walls) {
        if (!first) s += ", ";
        first = false;
        s += "[" + std::to_string(c) + ", \"" + dir_to_string(d) + "\"]";
    }
    s += "]\n}\n";
    write_file(path, s);
}

}  // namespace isc::io
