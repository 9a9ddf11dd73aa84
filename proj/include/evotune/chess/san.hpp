#pragma once

#include <string>
#include <string_view>

#include "evotune/chess/movegen.hpp"
#include "evotune/chess/position.hpp"

namespace chess {

// Standard algebraic notation with minimal disambiguation and +/# suffix.
std::string to_san(const Position& p, const Move& m);

// Resolves a SAN token against the legal moves of p. Check/annotation
// suffixes and "e.p." are ignored. Throws ParseError when the token matches
// no legal move or more than one (ambiguous).
Move parse_san(const Position& p, std::string_view token);

}  // namespace chess
