// Records all traffic on a live conference into a recording file,
// joining as a pure observer. Runs until the optional --duration
// elapses or SIGINT arrives.

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "simkit/bus.hpp"
#include "simkit/datastore.hpp"
#include "simkit/error.hpp"
#include "simkit/recording.hpp"
#include "simkit/udp_conference.hpp"

namespace {

std::atomic<bool> gStop{false};

void onSignal(int) { gStop.store(true); }

std::int64_t wallClockUs() {
    return std::chrono::duration_cast<std::chrono::microseconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conference traffic recorder"};
    int conferenceNumber = 0;
    std::string outPath;
    double durationSeconds = 0.0;

    app.add_option("--conference", conferenceNumber, "conference id (1-254)")
        ->required()
        ->check(CLI::Range(1, 254));
    app.add_option("--out", outPath, "recording file to write")->required();
    auto* durationOpt = app.add_option("--duration", durationSeconds,
                                       "stop after this many seconds (default: run "
                                       "until SIGINT)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    std::signal(SIGINT, onSignal);
    std::signal(SIGTERM, onSignal);

    try {
        simkit::ConferenceId id(conferenceNumber);
        simkit::UdpConference conference(id);
        auto store = std::make_shared<simkit::DataStore>(simkit::StoreKind::Fifo);
        conference.addListener(store);

        simkit::RecordingWriter writer(outPath);

        std::int64_t deadlineUs = durationOpt->count() > 0
                                      ? wallClockUs() +
                                            static_cast<std::int64_t>(durationSeconds * 1e6)
                                      : 0;
        std::int64_t lastStampUs = 0;
        while (!gStop.load()) {
            if (deadlineUs != 0 && wallClockUs() >= deadlineUs) break;
            auto container = store->takeFor(std::chrono::milliseconds(50));
            if (!container) continue;
            // Capture stamp is the local delivery time; clamp so a clock
            // step backwards cannot corrupt the file.
            std::int64_t stampUs = std::max(wallClockUs(), lastStampUs);
            lastStampUs = stampUs;
            writer.append(stampUs, *container);
        }
        writer.flush();
        return 0;
    } catch (const simkit::Error& e) {
        std::cerr << "record: " << e.what() << "\n";
        return 1;
    }
}
