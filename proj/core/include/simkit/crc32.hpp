#pragma once

#include <array>
#include <cstdint>
#include <string_view>

#include "simkit/error.hpp"

namespace simkit {

/// Key under which a named field travels inside a container payload.
/// Derived from the field name, so readers can locate fields without
/// relying on their order in the payload.
using FieldKey = std::uint32_t;

namespace detail {

// Reflected table for polynomial 0x04C11DB7 (reversed form 0xEDB88320).
constexpr std::array<std::uint32_t, 256> makeCrc32Table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int bit = 0; bit < 8; ++bit) {
            c = (c & 1u) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
        }
        table[i] = c;
    }
    return table;
}

inline constexpr std::array<std::uint32_t, 256> kCrc32Table = makeCrc32Table();

} // namespace detail

/// CRC-32 (polynomial 0x04C11DB7, reflected, init/final-xor 0xFFFFFFFF)
/// over arbitrary bytes. crc32("") == 0.
constexpr std::uint32_t crc32(std::string_view bytes) {
    std::uint32_t c = 0xFFFFFFFFu;
    for (char ch : bytes) {
        c = detail::kCrc32Table[(c ^ static_cast<std::uint8_t>(ch)) & 0xFFu] ^ (c >> 8);
    }
    return c ^ 0xFFFFFFFFu;
}

/// Field-name hash used throughout the wire format. Total over any
/// byte string (fieldKey("") == 0); schema definition enforces that
/// declared names are non-empty ASCII.
constexpr FieldKey fieldKey(std::string_view name) {
    return crc32(name);
}

} // namespace simkit
