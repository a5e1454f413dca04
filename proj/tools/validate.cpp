// Replays a recording through the validator suite offline, printing the
// same VALIDATOR lines a live run produces. Exit 0 all passed, 1 a
// validator failed, 2 the inputs could not be loaded.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "simkit/config.hpp"
#include "simkit/error.hpp"
#include "simkit/routing.hpp"
#include "simkit/sim/assembly.hpp"
#include "simkit/sim/report.hpp"
#include "tool_io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"offline validator evaluation over a recording"};
    std::string recordingPath;
    std::string scenarioPath;
    std::string configPath;

    app.add_option("recording", recordingPath, "recording file")->required();
    app.add_option("scenario", scenarioPath, "scenario (.scn) file")->required();
    app.add_option("suite-config", configPath,
                   "configuration with sut.mission.*, sut.vehicle and validator.* keys")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        auto scenario = tool::loadScenario(scenarioPath);
        if (!scenario) return 2;
        auto graph = simkit::scn::RouteGraph::fromScenario(*scenario);

        simkit::ConfigurationSet config = simkit::ConfigurationSet::load(configPath);
        if (!config.contains("sut.vehicle")) {
            std::cerr << "validate: sut.vehicle must name the vehicle to evaluate\n";
            return 2;
        }
        auto vehicleId = static_cast<std::int32_t>(config.getInt("sut.vehicle"));

        auto validators = simkit::sim::buildValidators(graph, config, vehicleId);
        auto evaluation = simkit::sim::evaluateRecording(recordingPath, validators);

        for (const auto& verdict : evaluation.verdicts) {
            std::cout << simkit::sim::toLine({verdict.validatorName, verdict.vehicleId,
                                              verdict.passed, verdict.detail})
                      << "\n";
        }
        return evaluation.passed ? 0 : 1;
    } catch (const simkit::Error& e) {
        std::cerr << "validate: " << e.what() << "\n";
        return 2;
    }
}
