#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "evotune/evalfn.hpp"

namespace evotune {

// 5 material fields of 10 bits plus 30 positional fields of 6 bits.
constexpr int kChromosomeBits = 230;

// The genotype: a flat bit string. bits[i] holds 0 or 1; index 0 is the
// leftmost character of the serialized form and the most significant bit of
// the first field.
struct Chromosome {
    std::array<std::uint8_t, kChromosomeBits> bits{};

    bool operator==(const Chromosome&) const = default;
};

struct GenomeField {
    const char* name;
    int offset;
    int width;
};

// Field descriptors in parameter order; offsets are contiguous and cover
// all 230 bits.
const std::array<GenomeField, kParamCount>& genome_layout();

// Reads each field as an unsigned big-endian integer. Total: every bit
// string decodes to in-range parameters.
EvalParams decode(const Chromosome& c);

// Inverse of decode; throws std::out_of_range naming the field when a value
// does not fit its width.
Chromosome encode(const EvalParams& params);

Chromosome random_chromosome(std::mt19937_64& rng);

// 230-character "0"/"1" line.
std::string to_string(const Chromosome& c);
Chromosome chromosome_from_string(std::string_view text);  // ParseError on bad input

}  // namespace evotune
