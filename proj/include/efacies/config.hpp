#pragma once

#include <cstddef>
#include <cstdint>
#include <cctype>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "efacies/csv.hpp"
#include "efacies/error.hpp"

namespace efacies {

/// INI-style `key = value` file with `[section]` headers; keys are addressed
/// as `section.key`. `#` and `;` start comments. Every key must be read
/// before `check_all_used`, which catches misspelt settings.
class KeyValueConfig {
  public:
    KeyValueConfig() = default;

    static KeyValueConfig parse(std::istream& in) {
        KeyValueConfig cfg;
        std::string raw, section;
        std::size_t line_no = 0;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string line = trim(raw);
            if (line.empty() || line.front() == '#' || line.front() == ';') continue;
            // Inline comments need whitespace before the '#'.
            for (std::size_t i = 1; i < line.size(); ++i) {
                if (line[i] == '#' && std::isspace(static_cast<unsigned char>(line[i - 1]))) {
                    line = trim(line.substr(0, i));
                    break;
                }
            }
            if (line.front() == '[') {
                if (line.back() != ']') throw ConfigError("config line " + std::to_string(line_no) + ": bad section");
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
            }
            const std::string key = trim(line.substr(0, eq));
            if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
            const std::string full = section.empty() ? key : section + "." + key;
            if (cfg.values_.count(full)) {
                throw ConfigError("config line " + std::to_string(line_no) + ": duplicate key " + full);
            }
            cfg.values_[full] = trim(line.substr(eq + 1));
        }
        return cfg;
    }

    static KeyValueConfig parse(const std::string& text) {
        std::istringstream in(text);
        return parse(in);
    }

    static KeyValueConfig load(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config file " + path);
        return parse(in);
    }

    bool has(const std::string& key) const { return values_.count(key) != 0; }

    std::optional<std::string> get(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        used_.insert(key);
        return it->second;
    }

    std::string get_or(const std::string& key, const std::string& fallback) const {
        return get(key).value_or(fallback);
    }

    std::optional<double> get_double(const std::string& key) const {
        auto v = get(key);
        if (!v) return std::nullopt;
        double d;
        if (!parse_double(*v, d)) throw ConfigError("config key " + key + ": '" + *v + "' is not a number");
        return d;
    }

    double get_double_or(const std::string& key, double fallback) const { return get_double(key).value_or(fallback); }

    std::optional<std::uint64_t> get_uint(const std::string& key) const {
        auto v = get(key);
        if (!v) return std::nullopt;
        std::uint64_t u;
        auto res = std::from_chars(v->data(), v->data() + v->size(), u);
        if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
            throw ConfigError("config key " + key + ": '" + *v + "' is not a non-negative integer");
        }
        return u;
    }

    std::uint64_t get_uint_or(const std::string& key, std::uint64_t fallback) const {
        return get_uint(key).value_or(fallback);
    }

    std::optional<bool> get_bool(const std::string& key) const {
        auto v = get(key);
        if (!v) return std::nullopt;
        if (*v == "true" || *v == "yes" || *v == "1") return true;
        if (*v == "false" || *v == "no" || *v == "0") return false;
        throw ConfigError("config key " + key + ": '" + *v + "' is not a boolean");
    }

    std::vector<std::string> get_list(const std::string& key, char sep = ',') const {
        std::vector<std::string> out;
        auto v = get(key);
        if (!v) return out;
        for (auto& item : split(*v, sep)) {
            auto t = trim(item);
            if (!t.empty()) out.push_back(t);
        }
        return out;
    }

    /// Sorted section names beginning with `prefix`.
    std::vector<std::string> sections_with_prefix(const std::string& prefix) const {
        std::set<std::string> out;
        for (const auto& [k, v] : values_) {
            auto dot = k.rfind('.');
            if (dot == std::string::npos) continue;
            auto sec = k.substr(0, dot);
            if (sec.rfind(prefix, 0) == 0) out.insert(sec);
        }
        return {out.begin(), out.end()};
    }

    void check_all_used() const {
        for (const auto& [k, v] : values_) {
            if (!used_.count(k)) throw ConfigError("unknown config key " + k);
        }
    }

  private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return {};
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::map<std::string, std::string> values_;
    mutable std::set<std::string> used_;
};

}  // namespace efacies
