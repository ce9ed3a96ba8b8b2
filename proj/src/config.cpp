#include "rns/config.hpp"

#include <cstdlib>
#include <fstream>

#include "rns/errors.hpp"

namespace rns {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::pair<std::string, std::string> split_assignment(const std::string& text,
                                                     const std::string& where) {
    const auto eq = text.find('=');
    if (eq == std::string::npos)
        throw ConfigError(where + ": expected key=value, got '" + text + "'");
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": empty key in '" + text + "'");
    return {key, value};
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    KeyValueConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto [key, value] = split_assignment(t, path + ":" + std::to_string(lineno));
        cfg.kv_[key] = value;
    }
    return cfg;
}

void KeyValueConfig::apply_override(const std::string& assignment) {
    const auto [key, value] = split_assignment(trim(assignment), "--set");
    kv_[key] = value;
}

bool KeyValueConfig::present(const std::string& key) const { return kv_.count(key) != 0; }

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    consumed_.insert(key);
    const char* text = it->second.c_str();
    char* end = nullptr;
    const double x = std::strtod(text, &end);
    if (end == text || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse '" + it->second + "' as a number");
    return x;
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    consumed_.insert(key);
    const char* text = it->second.c_str();
    char* end = nullptr;
    const long x = std::strtol(text, &end, 10);
    if (end == text || *end != '\0')
        throw ConfigError("key '" + key + "': cannot parse '" + it->second + "' as an integer");
    return static_cast<int>(x);
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    consumed_.insert(key);
    return it->second;
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key,
                                                    const std::vector<double>& fallback) const {
    const auto it = kv_.find(key);
    if (it == kv_.end()) return fallback;
    consumed_.insert(key);
    std::vector<double> out;
    std::string rest = it->second;
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string item = trim(comma == std::string::npos ? rest : rest.substr(0, comma));
        rest = comma == std::string::npos ? "" : rest.substr(comma + 1);
        if (item.empty())
            throw ConfigError("key '" + key + "': empty entry in list '" + it->second + "'");
        const char* text = item.c_str();
        char* end = nullptr;
        const double x = std::strtod(text, &end);
        if (end == text || *end != '\0')
            throw ConfigError("key '" + key + "': cannot parse '" + item + "' as a number");
        out.push_back(x);
    }
    if (out.empty()) throw ConfigError("key '" + key + "': empty list");
    return out;
}

std::vector<std::string> KeyValueConfig::unconsumed() const {
    std::vector<std::string> out;
    for (const auto& [key, value] : kv_) {
        if (consumed_.count(key) == 0) out.push_back(key);
    }
    return out;
}

std::string KeyValueConfig::echo() const {
    std::string out;
    for (const auto& [key, value] : kv_) {
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

}  // namespace rns
