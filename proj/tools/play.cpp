// Replays a recording onto a live conference, re-sending the original
// frame bytes verbatim. Inter-entry gaps are scaled by 1/timescale;
// timescale 0 replays as fast as possible.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "simkit/error.hpp"
#include "simkit/recording.hpp"
#include "simkit/udp_conference.hpp"

int main(int argc, char** argv) {
    CLI::App app{"recording replay"};
    std::string inPath;
    int conferenceNumber = 0;
    double timescale = 1.0;

    app.add_option("--in", inPath, "recording file to replay")->required();
    app.add_option("--conference", conferenceNumber, "conference id (1-254)")
        ->required()
        ->check(CLI::Range(1, 254));
    app.add_option("--timescale", timescale,
                   "replay speed factor; 0 means as fast as possible")
        ->check(CLI::NonNegativeNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        simkit::ConferenceId id(conferenceNumber);
        simkit::UdpConference conference(id);
        simkit::RecordingReader reader(inPath);

        bool first = true;
        std::int64_t lastStampUs = 0;
        while (auto entry = reader.next()) {
            if (!first && timescale > 0.0) {
                auto gapUs = static_cast<std::int64_t>(
                    static_cast<double>(entry->captureTimestampUs - lastStampUs) /
                    timescale);
                if (gapUs > 0) {
                    std::this_thread::sleep_for(std::chrono::microseconds(gapUs));
                }
            }
            conference.sendFrame(entry->frame);
            lastStampUs = entry->captureTimestampUs;
            first = false;
        }
        return 0;
    } catch (const simkit::Error& e) {
        std::cerr << "play: " << e.what() << "\n";
        return 1;
    }
}
