#pragma once

#include <cstdint>
#include <string_view>

#include "simkit/bytes.hpp"
#include "simkit/schema.hpp"
#include "simkit/value.hpp"

namespace simkit {

/// First four bytes of every container frame.
inline constexpr std::uint32_t kFrameMagic = 0x48455350u;

/// magic + dataTypeId + sentTimestamp + payloadLength.
inline constexpr std::size_t kFrameHeaderSize = 20;

/// Largest frame the live transport will put in one datagram.
inline constexpr std::size_t kMaxDatagramSize = 65507;

/// dataTypeIds 1..99 are reserved for framework messages; user message
/// kinds start at 100. See messages.hpp for the registry.
inline constexpr std::uint32_t kFirstUserDataType = 100;

/// One field of a container payload: name-derived key plus the raw value
/// encoding. `frameOffset` is where the value bytes sat in the source
/// frame (0 for hand-built containers); it only serves error reporting.
struct SerializedField {
    FieldKey key = 0;
    Bytes value;
    std::size_t frameOffset = 0;

    bool operator==(const SerializedField& other) const {
        return key == other.key && value == other.value;
    }
};

/// The universal typed message envelope: every conference datagram and
/// every recording entry is exactly one of these.
struct Container {
    std::uint32_t dataTypeId = 0;
    std::int64_t sentTimestampUs = 0;
    std::vector<SerializedField> payload;

    bool operator==(const Container& other) const {
        return dataTypeId == other.dataTypeId && sentTimestampUs == other.sentTimestampUs &&
               payload == other.payload;
    }
};

/// Frame layout: magic | dataTypeId | sentTimestamp | payloadLength |
/// payload, all integers little-endian; payload is the concatenation of
/// key | length | bytes per field. Encoded size is exactly
/// 20 + sum(8 + length_i).
Bytes encodeFrame(const Container& container);

/// Inverse of encodeFrame. Throws FrameError (with byte offset) on bad
/// magic, truncation, a field overrunning the payload, or duplicate keys.
Container decodeFrame(ByteView frame);

/// Serializes `record` into a payload under `schema`. The record must
/// carry exactly the schema's fields with matching types; violations
/// throw EncodeError naming the field.
std::vector<SerializedField> encodeRecord(const RecordSchema& schema, const Record& record);

/// Reads each schema field from the payload by key. Unknown keys are
/// skipped; fields absent from the payload get the schema's default, so
/// decoding never depends on payload field order.
Record decodeRecord(const RecordSchema& schema, const Container& container);

/// One-shot helpers over the above.
Bytes encode(const RecordSchema& schema, const Record& record, std::uint32_t dataTypeId,
             std::int64_t sentTimestampUs);
Record decode(ByteView frame, const RecordSchema& schema);

/// Strict UTF-8 validity check (rejects overlongs, surrogates, > U+10FFFF).
bool isValidUtf8(std::string_view s);

} // namespace simkit
