#pragma once

#include <bit>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace simkit {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// All wire integers are little-endian, fixed width.

inline void putU8(Bytes& out, std::uint8_t v) { out.push_back(v); }

inline void putU32(Bytes& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 24));
}

inline void putU64(Bytes& out, std::uint64_t v) {
    putU32(out, static_cast<std::uint32_t>(v));
    putU32(out, static_cast<std::uint32_t>(v >> 32));
}

inline void putI32(Bytes& out, std::int32_t v) { putU32(out, static_cast<std::uint32_t>(v)); }
inline void putI64(Bytes& out, std::int64_t v) { putU64(out, static_cast<std::uint64_t>(v)); }
inline void putF64(Bytes& out, double v) { putU64(out, std::bit_cast<std::uint64_t>(v)); }

// Readers assume the caller has already bounds-checked `offset`.

inline std::uint32_t getU32(ByteView in, std::size_t offset) {
    return static_cast<std::uint32_t>(in[offset]) |
           static_cast<std::uint32_t>(in[offset + 1]) << 8 |
           static_cast<std::uint32_t>(in[offset + 2]) << 16 |
           static_cast<std::uint32_t>(in[offset + 3]) << 24;
}

inline std::uint64_t getU64(ByteView in, std::size_t offset) {
    return static_cast<std::uint64_t>(getU32(in, offset)) |
           static_cast<std::uint64_t>(getU32(in, offset + 4)) << 32;
}

inline std::int32_t getI32(ByteView in, std::size_t offset) {
    return static_cast<std::int32_t>(getU32(in, offset));
}

inline std::int64_t getI64(ByteView in, std::size_t offset) {
    return static_cast<std::int64_t>(getU64(in, offset));
}

inline double getF64(ByteView in, std::size_t offset) {
    return std::bit_cast<double>(getU64(in, offset));
}

} // namespace simkit
