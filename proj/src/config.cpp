#include "goigrid/config.hpp"

#include "goigrid/error.hpp"
#include "goigrid/format.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace goigrid {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput("config: '" + key + "' expects a number, got '" + text + "'");
}

int to_int(const std::string& key, const std::string& text) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidInput("config: '" + key + "' expects an integer, got '" + text + "'");
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw InvalidInput("config: '" + key + "' expects true or false, got '" + text + "'");
}

} // namespace

KeyValues read_key_values(std::istream& in) {
    KeyValues kv;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string body = trim(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("config line " + std::to_string(number) + ": expected key=value");
        std::string key = trim(body.substr(0, eq));
        std::replace(key.begin(), key.end(), '-', '_');
        if (key.empty()) throw InvalidInput("config line " + std::to_string(number) + ": empty key");
        if (!kv.emplace(key, trim(body.substr(eq + 1))).second)
            throw InvalidInput("config line " + std::to_string(number) + ": repeated key '" + key + "'");
    }
    return kv;
}

KeyValues read_key_values_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open config file '" + path + "'");
    return read_key_values(in);
}

void write_key_values(std::ostream& out, const KeyValues& kv) {
    for (const auto& [key, value] : kv) out << key << '=' << value << '\n';
}

void PipelineConfig::validate() const {
    stay.validate();
    merge.validate();
    if (!(cell_size > 0.0)) throw InvalidInput("cell_size must be positive");
}

KeyValues PipelineConfig::to_key_values() const {
    return {
        {"t_min", format_number(stay.t_min)},
        {"d_max", format_number(stay.d_max)},
        {"diam_max", format_number(stay.diam_max)},
        {"buffer", format_number(stay.buffer_width)},
        {"j_min", format_number(merge.j_min)},
        {"f_min", std::to_string(merge.f_min)},
        {"eps", format_number(merge.eps)},
        {"min_pts", std::to_string(merge.min_pts)},
        {"diameter_min", format_number(merge.diameter_min)},
        {"cell_size", format_number(cell_size)},
        {"metric", std::string(to_string(metric))},
        {"stay_method", std::string(to_string(stay_method))},
        {"destination_method", std::string(to_string(destination_method))},
        {"strategy", std::string(to_string(strategy))},
        {"collapse", collapse ? "true" : "false"},
    };
}

PipelineConfig apply_config(PipelineConfig c, const KeyValues& kv) {
    for (const auto& [key, value] : kv) {
        if (key == "t_min") c.stay.t_min = to_double(key, value);
        else if (key == "d_max") c.stay.d_max = to_double(key, value);
        else if (key == "diam_max") c.stay.diam_max = to_double(key, value);
        else if (key == "buffer") c.stay.buffer_width = to_double(key, value);
        else if (key == "j_min") c.merge.j_min = to_double(key, value);
        else if (key == "f_min") c.merge.f_min = to_int(key, value);
        else if (key == "eps") c.merge.eps = to_double(key, value);
        else if (key == "min_pts") c.merge.min_pts = to_int(key, value);
        else if (key == "diameter_min") c.merge.diameter_min = to_double(key, value);
        else if (key == "cell_size") c.cell_size = to_double(key, value);
        else if (key == "metric") c.metric = parse_metric(value);
        else if (key == "stay_method") c.stay_method = parse_stay_method(value);
        else if (key == "destination_method") c.destination_method = parse_destination_method(value);
        else if (key == "strategy") c.strategy = parse_label_strategy(value);
        else if (key == "collapse") c.collapse = to_bool(key, value);
        else throw InvalidInput("config: unknown key '" + key + "'");
    }
    c.validate();
    return c;
}

} // namespace goigrid
