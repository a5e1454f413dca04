#include "simkit/recording.hpp"

#include "simkit/bytes.hpp"
#include "simkit/error.hpp"

namespace simkit {

RecordingWriter::RecordingWriter(const std::filesystem::path& file)
    : out_(file, std::ios::binary | std::ios::trunc), path_(file) {
    if (!out_) {
        throw Error("cannot open recording file " + file.string() + " for writing");
    }
}

void RecordingWriter::append(std::int64_t captureTimestampUs, const Container& container) {
    appendFrame(captureTimestampUs, encodeFrame(container));
}

void RecordingWriter::appendFrame(std::int64_t captureTimestampUs, ByteView frame) {
    if (entries_ > 0 && captureTimestampUs < lastTimestampUs_) {
        throw Error("recording timestamps must not decrease (" +
                    std::to_string(captureTimestampUs) + " after " +
                    std::to_string(lastTimestampUs_) + ")");
    }
    Bytes stamp;
    putI64(stamp, captureTimestampUs);
    out_.write(reinterpret_cast<const char*>(stamp.data()),
               static_cast<std::streamsize>(stamp.size()));
    out_.write(reinterpret_cast<const char*>(frame.data()),
               static_cast<std::streamsize>(frame.size()));
    if (!out_) {
        throw Error("write failure on recording file " + path_.string());
    }
    lastTimestampUs_ = captureTimestampUs;
    ++entries_;
}

void RecordingWriter::flush() {
    out_.flush();
    if (!out_) {
        throw Error("write failure on recording file " + path_.string());
    }
}

RecordingReader::RecordingReader(const std::filesystem::path& file)
    : in_(file, std::ios::binary), path_(file) {
    if (!in_) {
        throw Error("cannot open recording file " + file.string());
    }
}

std::optional<RecordingEntry> RecordingReader::next() {
    Bytes stamp(8);
    in_.read(reinterpret_cast<char*>(stamp.data()), 8);
    if (in_.gcount() == 0 && in_.eof()) {
        return std::nullopt;  // clean end
    }
    if (in_.gcount() != 8) {
        throw FrameError("truncated recording entry timestamp", offset_);
    }

    RecordingEntry entry;
    entry.captureTimestampUs = getI64(stamp, 0);
    if (!first_ && entry.captureTimestampUs < lastTimestampUs_) {
        throw FrameError("recording timestamps decrease", offset_);
    }

    std::size_t frameStart = offset_ + 8;
    Bytes header(kFrameHeaderSize);
    in_.read(reinterpret_cast<char*>(header.data()), kFrameHeaderSize);
    if (static_cast<std::size_t>(in_.gcount()) != kFrameHeaderSize) {
        throw FrameError("truncated frame header in recording", frameStart);
    }
    std::uint32_t payloadLength = getU32(header, 16);

    entry.frame = std::move(header);
    entry.frame.resize(kFrameHeaderSize + payloadLength);
    if (payloadLength > 0) {
        in_.read(reinterpret_cast<char*>(entry.frame.data() + kFrameHeaderSize),
                 payloadLength);
        if (static_cast<std::size_t>(in_.gcount()) != payloadLength) {
            throw FrameError("truncated frame payload in recording", frameStart);
        }
    }

    try {
        entry.container = decodeFrame(entry.frame);
    } catch (const FrameError& e) {
        // Re-anchor the in-frame offset to the file.
        throw FrameError(std::string("bad frame in recording: ") + e.what(),
                         frameStart + e.offset());
    }

    offset_ += 8 + entry.frame.size();
    lastTimestampUs_ = entry.captureTimestampUs;
    first_ = false;
    return entry;
}

} // namespace simkit
