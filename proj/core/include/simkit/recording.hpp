#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>

#include "simkit/container.hpp"

namespace simkit {

/// Appends recording entries: capture timestamp (signed 64-bit
/// little-endian microseconds) followed by one container frame.
/// Timestamps must not decrease; an empty file is a valid recording.
class RecordingWriter {
public:
    explicit RecordingWriter(const std::filesystem::path& file);

    void append(std::int64_t captureTimestampUs, const Container& container);
    void appendFrame(std::int64_t captureTimestampUs, ByteView frame);

    void flush();
    std::uint64_t entriesWritten() const { return entries_; }

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::uint64_t entries_ = 0;
    std::int64_t lastTimestampUs_ = 0;
};

struct RecordingEntry {
    std::int64_t captureTimestampUs = 0;
    Container container;
    Bytes frame;  // raw frame bytes, for verbatim replay
};

/// Streams a recording without an index. next() returns entries in
/// file order and nullopt at a clean end; malformed entries raise
/// FrameError carrying the absolute file offset.
class RecordingReader {
public:
    explicit RecordingReader(const std::filesystem::path& file);

    std::optional<RecordingEntry> next();

private:
    std::ifstream in_;
    std::filesystem::path path_;
    std::size_t offset_ = 0;
    std::int64_t lastTimestampUs_ = 0;
    bool first_ = true;
};

} // namespace simkit
