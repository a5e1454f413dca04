#pragma once

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "simkit/scenario.hpp"

namespace tool {

/// Reads a whole file; throws simkit::Error with the path on failure.
inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw simkit::Error("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline void printParseErrors(const std::string& path,
                             const std::vector<simkit::scn::ParseError>& errors) {
    for (const auto& e : errors) {
        std::cerr << path << ":" << e.line << ":" << e.column << ": " << e.message
                  << "\n";
    }
}

/// Parses a scenario file, printing diagnostics; nullopt on failure.
inline std::optional<simkit::scn::ScenarioModel> loadScenario(const std::string& path) {
    auto parse = simkit::scn::parseScenario(slurp(path));
    if (!parse.model) {
        printParseErrors(path, parse.errors);
        return std::nullopt;
    }
    return std::move(parse.model);
}

inline std::optional<simkit::scn::SituationModel> loadSituation(const std::string& path) {
    auto parse = simkit::scn::parseSituation(slurp(path));
    if (!parse.model) {
        printParseErrors(path, parse.errors);
        return std::nullopt;
    }
    return std::move(parse.model);
}

} // namespace tool
