// config.cpp — flat key/value configuration parsing

#include "mpcav/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace mpcav {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

} // namespace

KeyValueConfig KeyValueConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return from_string(buffer.str());
}

KeyValueConfig KeyValueConfig::from_string(const std::string& text) {
    KeyValueConfig config;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            std::ostringstream msg;
            msg << "config line " << line_no << " is not of the form key = value: '"
                << stripped << "'";
            throw ConfigError(msg.str());
        }
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key in config");
        config.values_[key] = value;
    }
    return config;
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

std::optional<std::string> KeyValueConfig::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string KeyValueConfig::get_or(const std::string& key,
                                   const std::string& fallback) const {
    return get(key).value_or(fallback);
}

double KeyValueConfig::get_double(const std::string& key, double fallback) const {
    const auto value = get(key);
    if (!value) return fallback;
    try {
        std::size_t pos = 0;
        const double parsed = std::stod(*value, &pos);
        if (pos != value->size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not a number: '" + *value + "'");
    }
}

int KeyValueConfig::get_int(const std::string& key, int fallback) const {
    const auto value = get(key);
    if (!value) return fallback;
    try {
        std::size_t pos = 0;
        const int parsed = std::stoi(*value, &pos);
        if (pos != value->size()) throw std::invalid_argument("trailing characters");
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "' is not an integer: '" + *value + "'");
    }
}

bool KeyValueConfig::get_bool(const std::string& key, bool fallback) const {
    const auto value = get(key);
    if (!value) return fallback;
    std::string lowered = *value;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lowered == "true" || lowered == "1" || lowered == "yes" || lowered == "on")
        return true;
    if (lowered == "false" || lowered == "0" || lowered == "no" || lowered == "off")
        return false;
    throw ConfigError("config key '" + key + "' is not a boolean: '" + *value + "'");
}

std::vector<double> KeyValueConfig::get_double_list(const std::string& key) const {
    std::vector<double> out;
    const auto value = get(key);
    if (!value) return out;
    for (const auto& item : split_list(*value)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "' has a non-numeric item: '" +
                              item + "'");
        }
    }
    return out;
}

std::vector<int> KeyValueConfig::get_int_list(const std::string& key) const {
    std::vector<int> out;
    const auto value = get(key);
    if (!value) return out;
    for (const auto& item : split_list(*value)) {
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw ConfigError("config key '" + key + "' has a non-integer item: '" +
                              item + "'");
        }
    }
    return out;
}

std::string KeyValueConfig::canonical_text() const {
    std::string out;
    for (const auto& [key, value] : values_) { // std::map: sorted keys
        out += key;
        out += " = ";
        out += value;
        out += '\n';
    }
    return out;
}

std::uint64_t KeyValueConfig::hash() const { return fnv1a_hash(canonical_text()); }

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (const unsigned char c : text) {
        hash ^= c;
        hash *= 0x100000001b3ull;
    }
    return hash;
}

} // namespace mpcav
