#pragma once

#include <istream>
#include <map>
#include <string>
#include <vector>

#include "evotune/chess/position.hpp"

namespace chess {

// One game from a PGN file: tag pairs, the mainline, and the result token
// ("1-0", "0-1", "1/2-1/2" or "*"). Variations, comments and NAGs are
// accepted on input but discarded.
struct PgnGame {
    std::map<std::string, std::string> headers;
    std::vector<Move> moves;
    std::string result = "*";

    std::string header(const std::string& key, const std::string& fallback = "") const {
        auto it = headers.find(key);
        return it == headers.end() ? fallback : it->second;
    }
};

// Reads every game in the stream. All games start from the standard initial
// position; a SetUp/FEN header is rejected. Throws ParseError with the game
// number and ply on malformed input.
std::vector<PgnGame> parse_pgn(std::istream& in);
std::vector<PgnGame> parse_pgn_file(const std::string& path);

// Renders one game: ordered headers, then movetext wrapped near 80 columns,
// terminated by the result token.
std::string format_pgn(const PgnGame& game);

}  // namespace chess
