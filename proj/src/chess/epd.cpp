#include "evotune/chess/epd.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "evotune/chess/san.hpp"

namespace chess {

namespace {

std::vector<std::string> split_ws(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> out;
    for (std::string word; in >> word;) out.push_back(word);
    return out;
}

}  // namespace

EpdRecord parse_epd(const std::string& line) {
    auto words = split_ws(line);
    if (words.size() < 4) throw ParseError("epd: expected four FEN fields");

    EpdRecord rec;
    rec.pos = parse_fen(words[0] + ' ' + words[1] + ' ' + words[2] + ' ' + words[3]);

    // Re-join the remainder and walk ';'-terminated opcode sections.
    std::string rest;
    for (std::size_t i = 4; i < words.size(); ++i) {
        if (!rest.empty()) rest += ' ';
        rest += words[i];
    }

    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < rest.size() && std::isspace(static_cast<unsigned char>(rest[i]))) ++i;
    };
    skip_ws();
    while (i < rest.size()) {
        std::string opcode;
        while (i < rest.size() && !std::isspace(static_cast<unsigned char>(rest[i])) &&
               rest[i] != ';')
            opcode += rest[i++];
        if (opcode.empty()) throw ParseError("epd: empty opcode");

        std::string operand;
        skip_ws();
        while (i < rest.size() && rest[i] != ';') {
            if (rest[i] == '"') {
                ++i;
                while (i < rest.size() && rest[i] != '"') operand += rest[i++];
                if (i >= rest.size())
                    throw ParseError("epd: opcode '" + opcode + "': unterminated string");
                ++i;
            } else {
                operand += rest[i++];
            }
        }
        if (i >= rest.size())
            throw ParseError("epd: opcode '" + opcode + "': missing ';'");
        ++i;  // consume ';'
        skip_ws();

        while (!operand.empty() && operand.back() == ' ') operand.pop_back();
        rec.ops[opcode] = operand;

        if (opcode == "bm") {
            for (const std::string& san : split_ws(operand)) {
                try {
                    rec.best_moves.push_back(parse_san(rec.pos, san));
                } catch (const ParseError& e) {
                    throw ParseError("epd: opcode 'bm': " + std::string(e.what()));
                }
            }
            if (rec.best_moves.empty())
                throw ParseError("epd: opcode 'bm': no moves given");
        } else if (opcode == "id") {
            rec.id = operand;
        }
    }
    return rec;
}

std::vector<EpdRecord> parse_epd_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("epd: cannot open '" + path + "'");
    std::vector<EpdRecord> records;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        try {
            records.push_back(parse_epd(line));
        } catch (const ParseError& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

}  // namespace chess
