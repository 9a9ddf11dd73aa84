#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace evotune {

// FNV-1a, 64-bit: cheap content fingerprints for manifests and
// deterministic per-position noise seeding.
constexpr std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (char c : data) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value);

}  // namespace evotune
