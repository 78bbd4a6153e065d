// config.hpp — flat key/value configuration files ("key = value", '#' comments)

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mpcav {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class KeyValueConfig {
public:
    KeyValueConfig() = default;

    static KeyValueConfig from_file(const std::string& path);
    static KeyValueConfig from_string(const std::string& text);

    bool has(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    // Comma-separated list of doubles / ints.
    std::vector<double> get_double_list(const std::string& key) const;
    std::vector<int> get_int_list(const std::string& key) const;

    // Canonical "key = value" rendering in sorted key order; used for the
    // config hash so identical resolved configs hash identically.
    std::string canonical_text() const;
    std::uint64_t hash() const; // FNV-1a over canonical_text()

    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

std::uint64_t fnv1a_hash(const std::string& text);

} // namespace mpcav
