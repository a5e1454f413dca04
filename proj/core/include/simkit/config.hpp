#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "simkit/error.hpp"

namespace simkit {

/// Ordered key=value configuration. Keys are dotted lowercase ASCII
/// ([a-z0-9._:-]); values are arbitrary UTF-8 text. parse(print())
/// reproduces the set including entry order.
class ConfigurationSet {
public:
    struct Entry {
        std::string key;
        std::string value;

        friend bool operator==(const Entry&, const Entry&) = default;
    };

    ConfigurationSet() = default;

    /// Parses `key=value` lines. Blank lines and lines whose first
    /// non-space character is '#' are ignored. Duplicate keys and
    /// malformed lines raise ConfigError with the line number.
    static ConfigurationSet parse(std::string_view text);

    static ConfigurationSet load(const std::filesystem::path& file);

    /// One `key=value` line per entry, in insertion order.
    std::string print() const;

    /// Replaces the value if `key` exists, appends otherwise.
    void set(const std::string& key, const std::string& value);

    bool contains(const std::string& key) const;
    std::optional<std::string> find(const std::string& key) const;

    std::string getString(const std::string& key) const;
    std::int64_t getInt(const std::string& key) const;
    double getDouble(const std::string& key) const;
    bool getBool(const std::string& key) const;

    std::string getString(const std::string& key, const std::string& fallback) const;
    std::int64_t getInt(const std::string& key, std::int64_t fallback) const;
    double getDouble(const std::string& key, double fallback) const;
    bool getBool(const std::string& key, bool fallback) const;

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    friend bool operator==(const ConfigurationSet&, const ConfigurationSet&) = default;

    static bool isValidKey(std::string_view key);

private:
    std::vector<Entry> entries_;
};

} // namespace simkit
