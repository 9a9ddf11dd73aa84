#include "evotune/genome.hpp"

#include <stdexcept>

namespace evotune {

const std::array<GenomeField, kParamCount>& genome_layout() {
    static const auto layout = [] {
        std::array<GenomeField, kParamCount> fields;
        int offset = 0;
        for (int i = 0; i < kParamCount; ++i) {
            int width = i < kMaterialParams ? 10 : 6;
            fields[i] = {param_name(i), offset, width};
            offset += width;
        }
        return fields;
    }();
    return layout;
}

EvalParams decode(const Chromosome& c) {
    EvalParams params;
    for (const GenomeField& field : genome_layout()) {
        int value = 0;
        for (int j = 0; j < field.width; ++j)
            value = value << 1 | c.bits[field.offset + j];
        params[param_index(field.name)] = value;
    }
    return params;
}

Chromosome encode(const EvalParams& params) {
    Chromosome c;
    for (const GenomeField& field : genome_layout()) {
        int value = params[param_index(field.name)];
        if (value < 0 || value >= 1 << field.width)
            throw std::out_of_range("genome: " + std::string(field.name) + "=" +
                                    std::to_string(value) + " does not fit " +
                                    std::to_string(field.width) + " bits");
        for (int j = 0; j < field.width; ++j)
            c.bits[field.offset + j] =
                static_cast<std::uint8_t>(value >> (field.width - 1 - j) & 1);
    }
    return c;
}

Chromosome random_chromosome(std::mt19937_64& rng) {
    Chromosome c;
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& b : c.bits) b = static_cast<std::uint8_t>(bit(rng));
    return c;
}

std::string to_string(const Chromosome& c) {
    std::string text(kChromosomeBits, '0');
    for (int i = 0; i < kChromosomeBits; ++i)
        if (c.bits[i]) text[i] = '1';
    return text;
}

Chromosome chromosome_from_string(std::string_view text) {
    if (text.size() != kChromosomeBits)
        throw chess::ParseError("chromosome: expected " + std::to_string(kChromosomeBits) +
                                " characters, got " + std::to_string(text.size()));
    Chromosome c;
    for (int i = 0; i < kChromosomeBits; ++i) {
        if (text[i] != '0' && text[i] != '1')
            throw chess::ParseError(std::string("chromosome: bad character '") + text[i] +
                                    "' at index " + std::to_string(i));
        c.bits[i] = text[i] == '1';
    }
    return c;
}

}  // namespace evotune
