#include "simkit/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace simkit {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                          s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                          s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void parseFail(std::size_t line, const std::string& what) {
    throw ConfigError("line " + std::to_string(line) + ": " + what);
}

} // namespace

bool ConfigurationSet::isValidKey(std::string_view key) {
    if (key.empty()) return false;
    for (char c : key) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
                  c == '.' || c == '_' || c == ':' || c == '-';
        if (!ok) return false;
    }
    return true;
}

ConfigurationSet ConfigurationSet::parse(std::string_view text) {
    ConfigurationSet set;
    std::size_t lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        std::string_view line = (end == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, end - pos);
        pos = (end == std::string_view::npos) ? text.size() + 1 : end + 1;
        ++lineNo;

        std::string_view stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;

        std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos) {
            parseFail(lineNo, "expected key=value");
        }
        std::string key(trim(stripped.substr(0, eq)));
        std::string value(trim(stripped.substr(eq + 1)));
        if (!isValidKey(key)) {
            parseFail(lineNo, "invalid key '" + key + "'");
        }
        if (set.contains(key)) {
            parseFail(lineNo, "duplicate key '" + key + "'");
        }
        set.entries_.push_back(Entry{std::move(key), std::move(value)});
    }
    return set;
}

ConfigurationSet ConfigurationSet::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open configuration file " + file.string());
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse(buffer.str());
    } catch (const ConfigError& e) {
        throw ConfigError(file.string() + ": " + e.what());
    }
}

std::string ConfigurationSet::print() const {
    std::string out;
    for (const auto& e : entries_) {
        out += e.key;
        out += '=';
        out += e.value;
        out += '\n';
    }
    return out;
}

void ConfigurationSet::set(const std::string& key, const std::string& value) {
    if (!isValidKey(key)) {
        throw ConfigError("invalid key '" + key + "'");
    }
    for (auto& e : entries_) {
        if (e.key == key) {
            e.value = value;
            return;
        }
    }
    entries_.push_back(Entry{key, value});
}

bool ConfigurationSet::contains(const std::string& key) const {
    return find(key).has_value();
}

std::optional<std::string> ConfigurationSet::find(const std::string& key) const {
    for (const auto& e : entries_) {
        if (e.key == key) return e.value;
    }
    return std::nullopt;
}

std::string ConfigurationSet::getString(const std::string& key) const {
    auto v = find(key);
    if (!v) throw ConfigError("missing configuration key '" + key + "'");
    return *v;
}

std::int64_t ConfigurationSet::getInt(const std::string& key) const {
    std::string v = getString(key);
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || ptr != v.data() + v.size()) {
        throw ConfigError("key '" + key + "': '" + v + "' is not an integer");
    }
    return out;
}

double ConfigurationSet::getDouble(const std::string& key) const {
    std::string v = getString(key);
    if (v.empty()) {
        throw ConfigError("key '" + key + "': empty value is not a number");
    }
    char* endp = nullptr;
    double out = std::strtod(v.c_str(), &endp);
    if (endp != v.c_str() + v.size()) {
        throw ConfigError("key '" + key + "': '" + v + "' is not a number");
    }
    return out;
}

bool ConfigurationSet::getBool(const std::string& key) const {
    std::string v = getString(key);
    if (v == "1" || v == "true") return true;
    if (v == "0" || v == "false") return false;
    throw ConfigError("key '" + key + "': '" + v + "' is not a boolean");
}

std::string ConfigurationSet::getString(const std::string& key,
                                        const std::string& fallback) const {
    auto v = find(key);
    return v ? *v : fallback;
}

std::int64_t ConfigurationSet::getInt(const std::string& key,
                                      std::int64_t fallback) const {
    return contains(key) ? getInt(key) : fallback;
}

double ConfigurationSet::getDouble(const std::string& key,
                                   double fallback) const {
    return contains(key) ? getDouble(key) : fallback;
}

bool ConfigurationSet::getBool(const std::string& key, bool fallback) const {
    return contains(key) ? getBool(key) : fallback;
}

} // namespace simkit
