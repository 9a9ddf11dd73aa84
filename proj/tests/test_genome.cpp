#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "evotune/genome.hpp"
#include "reference_params.hpp"

using namespace evotune;

namespace {

EvalParams random_params(std::mt19937_64& rng) {
    EvalParams p;
    for (int i = 0; i < kParamCount; ++i)
        p[i] = static_cast<int>(rng() % (param_max(i) + 1));
    return p;
}

}  // namespace

TEST_CASE("layout covers all 230 bits contiguously") {
    const auto& layout = genome_layout();
    int offset = 0;
    for (int i = 0; i < kParamCount; ++i) {
        CHECK(layout[i].offset == offset);
        CHECK(layout[i].width == (i < kMaterialParams ? 10 : 6));
        CHECK(layout[i].name == std::string(param_name(i)));
        offset += layout[i].width;
    }
    CHECK(offset == kChromosomeBits);
}

TEST_CASE("all-zero and all-one chromosomes decode to the range ends") {
    Chromosome zero;
    EvalParams p = decode(zero);
    for (int i = 0; i < kParamCount; ++i) CHECK(p[i] == 0);

    Chromosome ones;
    ones.bits.fill(1);
    p = decode(ones);
    for (int i = 0; i < kParamCount; ++i) CHECK(p[i] == param_max(i));
}

TEST_CASE("big-endian field packing") {
    // PAWN_VALUE=83 -> 0001010011 in the first ten characters.
    EvalParams p;
    p[PAWN_VALUE] = 83;
    std::string text = to_string(encode(p));
    CHECK(text.substr(0, 10) == "0001010011");
    CHECK(text.substr(10) == std::string(220, '0'));

    // Last positional field occupies the final six characters.
    EvalParams q;
    q[KING_PRESSURE_MULT] = 0b100101;
    CHECK(to_string(encode(q)).substr(224) == "100101");
}

TEST_CASE("encode/decode round trips") {
    CHECK(decode(encode(reference_params())) == reference_params());

    std::mt19937_64 rng(31337);
    for (int i = 0; i < 2000; ++i) {
        EvalParams p = random_params(rng);
        CHECK(decode(encode(p)) == p);
    }
    for (int i = 0; i < 2000; ++i) {
        Chromosome c = random_chromosome(rng);
        CHECK(encode(decode(c)) == c);
    }
}

TEST_CASE("encode rejects out-of-range fields") {
    EvalParams p;
    p[QUEEN_VALUE] = 1024;
    CHECK_THROWS_WITH_AS(encode(p), doctest::Contains("QUEEN_VALUE"), std::out_of_range);
    p = EvalParams{};
    p[BISHOP_MOBILITY] = 64;
    CHECK_THROWS_WITH_AS(encode(p), doctest::Contains("BISHOP_MOBILITY"), std::out_of_range);
    p = EvalParams{};
    p[PAWN_VALUE] = -1;
    CHECK_THROWS_AS(encode(p), std::out_of_range);
}

TEST_CASE("one flipped bit moves one parameter by a power of two") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        Chromosome c = random_chromosome(rng);
        int bit = static_cast<int>(rng() % kChromosomeBits);
        Chromosome d = c;
        d.bits[bit] ^= 1;
        EvalParams a = decode(c), b = decode(d);
        int changed = 0;
        for (int i = 0; i < kParamCount; ++i) {
            if (a[i] == b[i]) continue;
            ++changed;
            int diff = a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
            CHECK((diff & (diff - 1)) == 0);  // power of two
        }
        CHECK(changed == 1);
    }
}

TEST_CASE("random chromosomes are deterministic per seed and unbiased") {
    std::mt19937_64 a(5), b(5), c(6);
    Chromosome ca = random_chromosome(a);
    CHECK(ca == random_chromosome(b));
    CHECK(ca != random_chromosome(c));

    // Bit means over many draws stay near one half.
    std::mt19937_64 rng(2024);
    std::array<int, kChromosomeBits> ones{};
    const int draws = 10000;
    for (int i = 0; i < draws; ++i) {
        Chromosome ch = random_chromosome(rng);
        for (int j = 0; j < kChromosomeBits; ++j) ones[j] += ch.bits[j];
    }
    for (int j = 0; j < kChromosomeBits; ++j) {
        double mean = static_cast<double>(ones[j]) / draws;
        CHECK(mean > 0.45);
        CHECK(mean < 0.55);
    }
}

TEST_CASE("text serialization round trips and validates") {
    std::mt19937_64 rng(8);
    Chromosome c = random_chromosome(rng);
    std::string text = to_string(c);
    CHECK(text.size() == 230);
    CHECK(chromosome_from_string(text) == c);

    CHECK_THROWS_WITH_AS(chromosome_from_string("0101"), doctest::Contains("expected 230"),
                         chess::ParseError);
    text[17] = '2';
    CHECK_THROWS_WITH_AS(chromosome_from_string(text), doctest::Contains("index 17"),
                         chess::ParseError);
}
