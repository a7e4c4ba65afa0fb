#include "cavgate/config.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "cavgate/csv.hpp"

namespace cavgate {

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s = {
        {"cavity", {"a_eff", "alpha_loss", "alpha_prime", "beta", "t_ex", "l_cav"}},
        {"pulse", {"w_t", "tau_ref", "grid_n", "grid_dt", "grid_t0"}},
        {"amplitudes",
         {"a0_re", "a0_im", "a1_re", "a1_im", "ah_re", "ah_im", "av_re", "av_im"}},
        {"response", {"delta_min", "delta_max", "count", "overlay"}},
        {"design", {"curve_l_min", "curve_l_max", "curve_count"}},
        {"fidelity", {"oracle_tol", "dump_prefix"}},
        {"sweep",
         {"axis1", "axis1_min", "axis1_max", "axis1_count", "axis1_scale", "axis2",
          "axis2_min", "axis2_max", "axis2_count", "axis2_scale", "quantities", "threads"}},
    };
    return s;
}

std::string trim(const std::string& s) {
    auto b = s.begin(), e = s.end();
    while (b != e && std::isspace(static_cast<unsigned char>(*b))) ++b;
    while (e != b && std::isspace(static_cast<unsigned char>(*(e - 1)))) --e;
    return {b, e};
}

} // namespace

Config Config::parse(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("line " + std::to_string(lineno) + ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!schema().count(section))
                throw ConfigError("line " + std::to_string(lineno) + ": unknown section [" +
                                  section + "]");
            cfg.sections_[section];
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        if (section.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": entry before any [section]");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!schema().at(section).count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key +
                              "' in section [" + section + "]");
        if (value.empty())
            throw ConfigError("line " + std::to_string(lineno) + ": empty value for '" + key + "'");
        if (cfg.sections_[section].count(key))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
        cfg.sections_[section][key] = value;
    }
    return cfg;
}

Config Config::load(const std::string& path) {
    try {
        return parse(read_text(path));
    } catch (const IoError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

bool Config::has(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    return it != sections_.end() && it->second.count(key) > 0;
}

const std::string& Config::raw(const std::string& section, const std::string& key) const {
    const auto it = sections_.find(section);
    if (it == sections_.end())
        throw ConfigError("missing section [" + section + "]");
    const auto kit = it->second.find(key);
    if (kit == it->second.end())
        throw ConfigError("missing key '" + key + "' in section [" + section + "]");
    return kit->second;
}

double Config::get_double(const std::string& section, const std::string& key) const {
    const std::string& v = raw(section, key);
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "' in [" + section + "]: not a number: '" + v + "'");
    }
}

double Config::get_double_or(const std::string& section, const std::string& key,
                             double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

int Config::get_int(const std::string& section, const std::string& key) const {
    const double d = get_double(section, key);
    const int i = static_cast<int>(d);
    if (static_cast<double>(i) != d)
        throw ConfigError("key '" + key + "' in [" + section + "]: expected an integer");
    return i;
}

int Config::get_int_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? get_int(section, key) : fallback;
}

bool Config::get_bool_or(const std::string& section, const std::string& key,
                         bool fallback) const {
    if (!has(section, key)) return fallback;
    const std::string& v = raw(section, key);
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "' in [" + section + "]: expected true/false");
}

std::string Config::get_string(const std::string& section, const std::string& key) const {
    return raw(section, key);
}

std::optional<std::string> Config::get_optional(const std::string& section,
                                                const std::string& key) const {
    if (!has(section, key)) return std::nullopt;
    return raw(section, key);
}

} // namespace cavgate
