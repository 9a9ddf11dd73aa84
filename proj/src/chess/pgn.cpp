#include "evotune/chess/pgn.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "evotune/chess/san.hpp"

namespace chess {

namespace {

bool is_result_token(const std::string& t) {
    return t == "1-0" || t == "0-1" || t == "1/2-1/2" || t == "*";
}

// Pulls raw movetext tokens: SAN words, results, NAGs and move numbers.
// Comments ({...} and ; to end of line) and nested (variations) are dropped.
struct Tokenizer {
    std::istream& in;

    // Returns false at end of input or when the next character starts a
    // header section ('[' at token start).
    bool next(std::string& out) {
        int depth = 0;
        for (;;) {
            int c = in.get();
            if (c == EOF) return false;
            if (std::isspace(c)) continue;
            if (c == '{') {
                while ((c = in.get()) != EOF && c != '}') {}
                continue;
            }
            if (c == ';') {
                while ((c = in.get()) != EOF && c != '\n') {}
                continue;
            }
            if (c == '(') {
                depth = 1;
                while (depth > 0 && (c = in.get()) != EOF) {
                    if (c == '(') ++depth;
                    else if (c == ')') --depth;
                    else if (c == '{')
                        while ((c = in.get()) != EOF && c != '}') {}
                }
                continue;
            }
            if (c == '[') {
                in.unget();
                return false;
            }
            out.clear();
            out += static_cast<char>(c);
            while ((c = in.get()) != EOF && !std::isspace(c) && c != '{' && c != '(' &&
                   c != ')' && c != ';') {
                out += static_cast<char>(c);
            }
            if (c != EOF) in.unget();
            return true;
        }
    }
};

// Parses one '[Tag "Value"]' line; the '[' has already been consumed.
void parse_header(std::istream& in, PgnGame& game, int game_no) {
    auto fail = [&](const std::string& why) {
        throw ParseError("pgn: game " + std::to_string(game_no) + ": " + why);
    };
    std::string tag;
    int c;
    while ((c = in.get()) != EOF && !std::isspace(c) && c != '"') tag += static_cast<char>(c);
    while (c != EOF && c != '"') c = in.get();
    if (c == EOF) fail("unterminated header tag '" + tag + "'");
    std::string value;
    while ((c = in.get()) != EOF && c != '"') {
        if (c == '\\') {
            c = in.get();
            if (c == EOF) break;
        }
        value += static_cast<char>(c);
    }
    if (c == EOF) fail("unterminated header value for '" + tag + "'");
    while ((c = in.get()) != EOF && c != ']') {}
    game.headers[tag] = value;
}

// Strips a leading move number ("12." / "12..." / attached "1.e4" form).
std::string strip_move_number(std::string token) {
    std::size_t i = 0;
    while (i < token.size() && std::isdigit(static_cast<unsigned char>(token[i]))) ++i;
    if (i == 0) return token;
    std::size_t dots = i;
    while (dots < token.size() && token[dots] == '.') ++dots;
    if (dots == i) return token;  // "12" without dots: not a move number
    return token.substr(dots);
}

}  // namespace

std::vector<PgnGame> parse_pgn(std::istream& in) {
    std::vector<PgnGame> games;
    Tokenizer tok{in};
    for (;;) {
        // Skip whitespace between games and detect end of input.
        int c;
        while ((c = in.get()) != EOF && std::isspace(c)) {}
        if (c == EOF) break;
        in.unget();

        PgnGame game;
        int game_no = static_cast<int>(games.size()) + 1;
        while ((c = in.get()) != EOF) {
            if (std::isspace(c)) continue;
            if (c != '[') {
                in.unget();
                break;
            }
            parse_header(in, game, game_no);
        }
        if (game.headers.count("FEN") || game.headers.count("SetUp"))
            throw ParseError("pgn: game " + std::to_string(game_no) +
                             ": FEN setup headers are not supported");

        Position pos = start_position();
        bool done = false;
        std::string token;
        while (!done && tok.next(token)) {
            token = strip_move_number(token);
            if (token.empty() || token == "e.p.") continue;
            if (token[0] == '$') continue;  // NAG
            if (is_result_token(token)) {
                game.result = token;
                done = true;
                continue;
            }
            try {
                Move m = parse_san(pos, token);
                pos = apply_move(pos, m);
                game.moves.push_back(m);
            } catch (const ParseError& e) {
                throw ParseError("pgn: game " + std::to_string(game_no) + ", ply " +
                                 std::to_string(game.moves.size() + 1) + ": " + e.what());
            }
        }
        games.push_back(std::move(game));
    }
    return games;
}

std::vector<PgnGame> parse_pgn_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("pgn: cannot open '" + path + "'");
    return parse_pgn(in);
}

std::string format_pgn(const PgnGame& game) {
    std::ostringstream out;
    // The seven standard tags first, in order, then any extras alphabetically.
    static const char* kRoster[] = {"Event", "Site",  "Date",  "Round",
                                    "White", "Black", "Result"};
    for (const char* tag : kRoster) {
        auto it = game.headers.find(tag);
        std::string value = it != game.headers.end() ? it->second
                            : std::string(tag) == "Result" ? game.result
                            : std::string(tag) == "Date"   ? "????.??.??"
                                                           : "?";
        out << '[' << tag << " \"" << value << "\"]\n";
    }
    for (const auto& [tag, value] : game.headers) {
        bool standard = false;
        for (const char* t : kRoster) standard |= tag == t;
        if (!standard) out << '[' << tag << " \"" << value << "\"]\n";
    }
    out << '\n';

    std::string line;
    auto emit = [&](const std::string& word) {
        if (line.empty()) {
            line = word;
        } else if (line.size() + 1 + word.size() > 79) {
            out << line << '\n';
            line = word;
        } else {
            line += ' ';
            line += word;
        }
    };
    Position pos = start_position();
    int ply = 0;
    for (const Move& m : game.moves) {
        std::string word;
        if (ply % 2 == 0) word = std::to_string(ply / 2 + 1) + ". ";
        word += to_san(pos, m);
        emit(word);
        pos = apply_move(pos, m);
        ++ply;
    }
    emit(game.result);
    if (!line.empty()) out << line << '\n';
    return out.str();
}

}  // namespace chess
