#include "evotune/digest.hpp"

#include <cstdio>

namespace evotune {

std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return std::string(buf, 16);
}

}  // namespace evotune
