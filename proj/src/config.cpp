#include "resdyn/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace resdyn {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_string(ss.str(), path);
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text, const std::string& origin) {
    KeyValueConfig cfg;
    cfg.origin_ = origin;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected `key = value`, got `" + line + "`");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        }
        cfg.entries_[key] = value;
        cfg.lines_[key] = lineno;
    }
    return cfg;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    entries_[key] = value;
    lines_[key] = -1;  // override, no file line
}

bool KeyValueConfig::has(const std::string& key) const { return entries_.count(key) > 0; }

std::optional<std::string> KeyValueConfig::lookup(const std::string& key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void KeyValueConfig::fail(const std::string& key, const std::string& why) const {
    const auto it = lines_.find(key);
    std::string where = origin_;
    if (it != lines_.end() && it->second > 0) where += ":" + std::to_string(it->second);
    throw ConfigError(where + ": key `" + key + "` " + why);
}

std::string KeyValueConfig::get_string(const std::string& key) const {
    const auto v = lookup(key);
    if (!v) throw ConfigError(origin_ + ": missing required key `" + key + "`");
    return *v;
}

std::string KeyValueConfig::get_string(const std::string& key, const std::string& fallback) const {
    const auto v = lookup(key);
    return v ? *v : fallback;
}

double KeyValueConfig::get_double(const std::string& key) const {
    const auto v = lookup(key);
    if (!v) throw ConfigError(origin_ + ": missing required key `" + key + "`");
    char* end = nullptr;
    const double x = std::strtod(v->c_str(), &end);
    if (end == v->c_str() || *end != '\0') fail(key, "is not a number: `" + *v + "`");
    return x;
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    return has(key) ? get_double(key) : fallback;
}

long KeyValueConfig::get_int(const std::string& key) const {
    const auto v = lookup(key);
    if (!v) throw ConfigError(origin_ + ": missing required key `" + key + "`");
    char* end = nullptr;
    const long x = std::strtol(v->c_str(), &end, 10);
    if (end == v->c_str() || *end != '\0') fail(key, "is not an integer: `" + *v + "`");
    return x;
}

long KeyValueConfig::get_int(const std::string& key, long fallback) const {
    return has(key) ? get_int(key) : fallback;
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    fail(key, "is not a boolean: `" + v + "`");
}

std::vector<double> KeyValueConfig::get_doubles(const std::string& key,
                                                const std::vector<double>& fallback) const {
    if (!has(key)) return fallback;
    const std::string v = get_string(key);
    std::vector<double> out;
    std::istringstream ss(v);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        char* end = nullptr;
        const double x = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str()) fail(key, "has a non-numeric element: `" + tok + "`");
        out.push_back(x);
    }
    if (out.empty()) fail(key, "is an empty list");
    return out;
}

}  // namespace resdyn
