// Lints scenario (.scn) and situation (.sit) files: parse against the
// grammar, then run the semantic rules. Exit 0 only when both stages
// are clean; 1 on findings, 2 on usage or I/O problems.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "simkit/error.hpp"
#include "tool_io.hpp"

namespace {

bool hasSuffix(const std::string& text, const std::string& suffix) {
    return text.size() >= suffix.size() &&
           text.compare(text.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void printFindings(const std::string& path,
                   const std::vector<simkit::scn::SemanticError>& findings) {
    for (const auto& f : findings) {
        std::cout << path << ": " << f.rule << " " << f.subject << ": " << f.detail
                  << "\n";
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scenario and situation linter"};
    std::string filePath;
    std::string scenarioPath;
    app.add_option("file", filePath, "file to lint (.scn or .sit)")->required();
    app.add_option("scenario", scenarioPath,
                   "scenario to cross-check a .sit file against");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (hasSuffix(filePath, ".scn")) {
            auto scenario = tool::loadScenario(filePath);
            if (!scenario) return 1;
            auto findings = simkit::scn::validate(*scenario);
            printFindings(filePath, findings);
            return findings.empty() ? 0 : 1;
        }
        if (hasSuffix(filePath, ".sit")) {
            auto situation = tool::loadSituation(filePath);
            if (!situation) return 1;
            std::vector<simkit::scn::SemanticError> findings;
            if (scenarioPath.empty()) {
                findings = simkit::scn::validate(*situation);
            } else {
                auto scenario = tool::loadScenario(scenarioPath);
                if (!scenario) return 1;
                findings = simkit::scn::validate(*situation, *scenario);
            }
            printFindings(filePath, findings);
            return findings.empty() ? 0 : 1;
        }
        std::cerr << "scnlint: " << filePath << ": expected a .scn or .sit file\n";
        return 2;
    } catch (const simkit::Error& e) {
        std::cerr << "scnlint: " << e.what() << "\n";
        return 2;
    }
}
