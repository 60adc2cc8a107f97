#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace riscov {

/// FNV-1a 64-bit hash; stable across platforms, used for scenario and
/// config digests.
inline std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= static_cast<std::uint64_t>(c);
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view data);

} // namespace riscov
