#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace resdyn {

// Error carrying the config file line that caused it.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Flat `key = value` config with `#` comments. Keys are dotted
// (e.g. plant.mass). CLI flags override file entries via set().
class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text, const std::string& origin = "<string>");

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;

    std::string get_string(const std::string& key) const;
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_int(const std::string& key) const;
    long get_int(const std::string& key, long fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list of doubles.
    std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;

    const std::map<std::string, std::string>& entries() const { return entries_; }

private:
    std::optional<std::string> lookup(const std::string& key) const;
    [[noreturn]] void fail(const std::string& key, const std::string& why) const;

    std::map<std::string, std::string> entries_;
    std::map<std::string, int> lines_;  // key -> line number for diagnostics
    std::string origin_ = "<empty>";
};

}  // namespace resdyn
