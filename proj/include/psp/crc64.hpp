#pragma once

#include <array>
#include <cstddef>
#include <cstdint>

namespace psp {

// CRC-64/XZ (reflected polynomial 0xC96C5795D7870F42, init and final xor all
// ones). crc64("123456789") == 0x995DC9BBDF1939FA.
namespace detail {

constexpr std::array<std::uint64_t, 256> make_crc64_table() {
    std::array<std::uint64_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint64_t crc = i;
        for (int bit = 0; bit < 8; ++bit) {
            crc = (crc >> 1) ^ ((crc & 1) ? 0xC96C5795D7870F42ull : 0);
        }
        table[i] = crc;
    }
    return table;
}

inline constexpr std::array<std::uint64_t, 256> kCrc64Table = make_crc64_table();

}  // namespace detail

inline std::uint64_t crc64_update(std::uint64_t crc, const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        crc = detail::kCrc64Table[(crc ^ bytes[i]) & 0xff] ^ (crc >> 8);
    }
    return crc;
}

inline std::uint64_t crc64(const void* data, std::size_t size) {
    return crc64_update(0xFFFFFFFFFFFFFFFFull, data, size) ^ 0xFFFFFFFFFFFFFFFFull;
}

}  // namespace psp
