#include "riscov/digest.hpp"

#include <cstdio>

namespace riscov {

std::string fnv1a64_hex(std::string_view data) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
    return std::string(buf);
}

} // namespace riscov
