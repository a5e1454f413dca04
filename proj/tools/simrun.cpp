// Runs one simulated test drive and reports pass/fail through the exit
// code: 0 all validators passed, 1 a validator failed, 2 the run could
// not be set up or aborted.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "simkit/config.hpp"
#include "simkit/error.hpp"
#include "simkit/sim/assembly.hpp"
#include "tool_io.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitVerdictFailure = 1;
constexpr int kExitSetupFailure = 2;

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"simulated test drive runner"};
    std::string scenarioPath;
    std::string situationPath;
    std::string configPath;
    std::string suitePath;
    std::string outDir;
    std::uint64_t seedArg = 0;
    bool dumpTrace = false;

    app.add_option("--scenario", scenarioPath, "scenario (.scn) file")->required();
    app.add_option("--situation", situationPath, "situation (.sit) file")->required();
    app.add_option("--config", configPath, "run configuration file")->required();
    app.add_option("--suite", suitePath, "validator suite configuration file")->required();
    app.add_option("--out", outDir, "output directory for report and recording")
        ->required();
    auto* seedOpt =
        app.add_option("--seed", seedArg, "random seed (overrides global.sim.seed)");
    app.add_flag("--dump-trace", dumpTrace, "write per-slice vehicle poses as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitSetupFailure;
    }

    try {
        auto scenario = tool::loadScenario(scenarioPath);
        auto situation = tool::loadSituation(situationPath);
        if (!scenario || !situation) {
            return kExitSetupFailure;
        }

        simkit::ConfigurationSet master = simkit::ConfigurationSet::load(configPath);
        simkit::ConfigurationSet suite = simkit::ConfigurationSet::load(suitePath);

        simkit::sim::MissionRunOptions options;
        if (seedOpt->count() > 0) {
            options.seed = seedArg;
        } else if (master.contains("global.sim.seed")) {
            options.seed = static_cast<std::uint64_t>(master.getInt("global.sim.seed"));
        } else {
            std::cerr << "a seed is required: pass --seed or set global.sim.seed\n";
            return kExitSetupFailure;
        }

        std::filesystem::create_directories(outDir);
        std::filesystem::path out(outDir);
        options.recordingPath = out / "recording.rec";
        if (dumpTrace) {
            options.tracePath = out / "trace.csv";
        }

        auto run = simkit::sim::buildMissionRun(*scenario, *situation, master, suite,
                                                options);
        simkit::sim::RunReport report = run.runner->run(run.durationUs);

        std::string text = report.toText();
        std::ofstream reportFile(out / "report.txt");
        reportFile << text;
        reportFile.close();
        std::cout << text;

        if (report.abort) {
            return kExitSetupFailure;
        }
        return report.passed ? kExitPass : kExitVerdictFailure;
    } catch (const simkit::Error& e) {
        std::cerr << "simrun: " << e.what() << "\n";
        return kExitSetupFailure;
    } catch (const std::exception& e) {
        std::cerr << "simrun: " << e.what() << "\n";
        return kExitSetupFailure;
    }
}
