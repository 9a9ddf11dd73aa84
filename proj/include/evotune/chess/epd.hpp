#pragma once

#include <map>
#include <string>
#include <vector>

#include "evotune/chess/position.hpp"

namespace chess {

// One EPD line: a position plus its opcode operands. "bm" operands are
// resolved to legal moves; everything else is kept verbatim.
struct EpdRecord {
    Position pos;
    std::vector<Move> best_moves;                 // from the "bm" opcode, may be empty
    std::map<std::string, std::string> ops;       // raw operand text, quotes stripped
    std::string id;                               // from the "id" opcode, may be empty
};

// Parses one EPD line: four FEN fields, then ';'-terminated opcode sections.
// Throws ParseError naming the offending opcode.
EpdRecord parse_epd(const std::string& line);

// Reads a whole file, skipping blank lines and '#' comments. Errors are
// prefixed with the 1-based line number.
std::vector<EpdRecord> parse_epd_file(const std::string& path);

}  // namespace chess
