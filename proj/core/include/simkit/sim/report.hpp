#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace simkit::sim {

struct VerdictLine {
    std::string validator;
    std::int32_t vehicleId = 0;
    bool passed = false;
    std::string detail;  // single line, no newlines
};

/// "VALIDATOR <name> vehicle=<id> PASSED|FAILED <detail>", shared by the
/// live report and the offline evaluation so the two are comparable
/// line for line.
std::string toLine(const VerdictLine& verdict);

struct RunReport {
    bool passed = false;  // every verdict passed and the run completed
    std::uint64_t slices = 0;
    std::int64_t simtimeUs = 0;
    std::vector<VerdictLine> verdicts;
    std::optional<std::string> abort;  // "<part>:<slice>" when a callback threw

    /// Report file content: one line per verdict
    ///   VALIDATOR <name> vehicle=<id> PASSED|FAILED <detail>
    /// then the summary line
    ///   RUN PASSED|FAILED slices=<n> simtime=<us>
    /// with " abort=<part>:<slice>" appended when the run aborted.
    std::string toText() const;
};

} // namespace simkit::sim
