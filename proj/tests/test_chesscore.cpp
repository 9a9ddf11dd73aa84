#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "evotune/chess/epd.hpp"
#include "evotune/chess/movegen.hpp"
#include "evotune/chess/pgn.hpp"
#include "evotune/chess/position.hpp"
#include "evotune/chess/san.hpp"
#include "oracle.hpp"
#include "random_positions.hpp"

using namespace chess;

namespace {
const char* kKiwipete =
    "r3k2r/p1ppqpb1/bn2pnp1/3PN3/1p2P3/2N2Q1p/PPPBBPPP/R3K2R w KQkq - 0 1";
}

TEST_CASE("squares and pieces") {
    CHECK(make_square(0, 0) == 0);
    CHECK(make_square(7, 7) == 63);
    CHECK(square_name(make_square(4, 3)) == "e4");
    CHECK(parse_square("h8") == 63);
    CHECK_THROWS_AS(parse_square("i9"), ParseError);
    CHECK(relative_rank(make_square(0, 1), Color::White) == 2);
    CHECK(relative_rank(make_square(0, 1), Color::Black) == 7);
    CHECK(chebyshev_distance(parse_square("a1"), parse_square("h8")) == 7);

    Piece wq(Color::White, PieceKind::Queen);
    CHECK(wq.to_char() == 'Q');
    CHECK(Piece::from_char('n') == Piece(Color::Black, PieceKind::Knight));
    CHECK_THROWS_AS(Piece::from_char('x'), ParseError);
}

TEST_CASE("fen round trip") {
    const char* cases[] = {
        "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1",
        kKiwipete,
        "8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1",
        "rnbqkbnr/ppp1pppp/8/3p4/4P3/8/PPPP1PPP/RNBQKBNR w KQkq d6 0 2",
        "4k3/8/8/8/8/8/4P3/4K3 w - - 12 34",
    };
    for (const char* fen : cases) {
        Position p = parse_fen(fen);
        CHECK(format_fen(p) == fen);
        CHECK(parse_fen(format_fen(p)) == p);
    }
    CHECK(start_position() == parse_fen(cases[0]));
    // Four-field form gets default clocks.
    Position p = parse_fen("4k3/8/8/8/8/8/8/4K3 w - -");
    CHECK(p.halfmove_clock == 0);
    CHECK(p.fullmove_number == 1);
}

TEST_CASE("fen rejects malformed input") {
    CHECK_THROWS_WITH_AS(parse_fen("only"), doctest::Contains("field"), ParseError);
    // Bad board: rank with nine squares.
    CHECK_THROWS_AS(parse_fen("9/8/8/8/8/8/8/8 w - - 0 1"), ParseError);
    // Two white kings.
    CHECK_THROWS_AS(parse_fen("4k3/8/8/8/8/8/8/3KK3 w - - 0 1"), ParseError);
    // No black king.
    CHECK_THROWS_AS(parse_fen("8/8/8/8/8/8/8/4K3 w - - 0 1"), ParseError);
    // Pawn on back rank.
    CHECK_THROWS_AS(parse_fen("P3k3/8/8/8/8/8/8/4K3 w - - 0 1"), ParseError);
    // Castling right without the rook at home.
    CHECK_THROWS_AS(parse_fen("4k3/8/8/8/8/8/8/4K3 w K - 0 1"), ParseError);
    // En passant square on the wrong rank for the mover.
    CHECK_THROWS_AS(
        parse_fen("rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq e3 0 1"),
        ParseError);
    // Bad side to move.
    CHECK_THROWS_AS(parse_fen("4k3/8/8/8/8/8/8/4K3 x - - 0 1"), ParseError);
}

TEST_CASE("apply_move specials") {
    // En passant capture removes the bypassed pawn.
    Position p = parse_fen("4k3/8/8/3pP3/8/8/8/4K3 w - d6 0 3");
    Move ep = parse_uci_move(p, "e5d6");
    CHECK(ep.kind == MoveKind::EnPassant);
    Position after = apply_move(p, ep);
    CHECK(after.at(parse_square("d5")).empty());
    CHECK(after.at(parse_square("d6")).is(Color::White, PieceKind::Pawn));
    CHECK(after.halfmove_clock == 0);

    // Castling moves the rook too and clears the rights.
    p = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 4 10");
    after = apply_move(p, parse_uci_move(p, "e1g1"));
    CHECK(after.at(parse_square("g1")).is(Color::White, PieceKind::King));
    CHECK(after.at(parse_square("f1")).is(Color::White, PieceKind::Rook));
    CHECK(after.at(parse_square("h1")).empty());
    CHECK((after.castling & (WhiteKingside | WhiteQueenside)) == 0);
    CHECK((after.castling & BlackKingside) != 0);

    // Capturing a rook on its home square clears that side's right.
    p = parse_fen("r3k2r/8/8/8/8/6n1/8/R3K2R b KQkq - 0 1");
    after = apply_move(p, parse_uci_move(p, "g3h1"));
    CHECK((after.castling & WhiteKingside) == 0);

    // Promotion with capture.
    p = parse_fen("3rk3/2P5/8/8/8/8/8/4K3 w - - 0 1");
    after = apply_move(p, parse_uci_move(p, "c7d8q"));
    CHECK(after.at(parse_square("d8")).is(Color::White, PieceKind::Queen));

    // Double push sets the en passant square; a quiet move clears it.
    p = start_position();
    after = apply_move(p, parse_uci_move(p, "e2e4"));
    CHECK(after.en_passant == parse_square("e3"));
    after = apply_move(after, parse_uci_move(after, "g8f6"));
    CHECK(after.en_passant == -1);
    CHECK(after.fullmove_number == 2);
}

TEST_CASE("perft reference counts") {
    struct Ref {
        const char* fen;
        std::vector<std::uint64_t> nodes;
    };
    const Ref refs[] = {
        {"rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq - 0 1",
         {20, 400, 8902, 197281}},
        {kKiwipete, {48, 2039, 97862}},
        {"8/2p5/3p4/KP5r/1R3p1k/8/4P1P1/8 w - - 0 1", {14, 191, 2812, 43238}},
        {"r3k2r/Pppp1ppp/1b3nbN/nP6/BBP1P3/q4N2/Pp1P2PP/R2Q1RK1 w kq - 0 1",
         {6, 264, 9467}},
        {"r4rk1/1pp1qppp/p1np1n2/2b1p1B1/2B1P1b1/P1NP1N2/1PP1QPPP/R4RK1 w - - 0 10",
         {46, 2079, 89890}},
    };
    for (const Ref& ref : refs) {
        Position p = parse_fen(ref.fen);
        for (std::size_t d = 0; d < ref.nodes.size(); ++d) {
            CAPTURE(ref.fen);
            CHECK(perft(p, static_cast<int>(d) + 1) == ref.nodes[d]);
        }
    }
}

TEST_CASE("movegen matches the brute-force oracle") {
    // Tricky hand-picked positions: pinned ep pawn, castling through attack,
    // promotions while in check.
    const char* tricky[] = {
        "8/8/3p4/KPp4r/5R1k/8/4P1P1/8 w - c6 0 2",   // ep would expose the king
        "r3k2r/8/8/8/8/5q2/8/R3K2R w KQkq - 0 1",    // f3 queen covers castle path
        "4k3/1P6/8/8/8/8/8/4Kr2 w - - 0 1",          // promote while attacked
        "8/8/8/8/k2Pp2Q/8/8/3K4 b - d3 0 1",         // ep pinned along the rank
        kKiwipete,
    };
    for (const char* fen : tricky) {
        Position p = parse_fen(fen);
        CAPTURE(fen);
        CHECK(generate_moves(p) == oracle::legal_moves(p));
    }

    for (const Position& p : random_playout_positions(7261, 300)) {
        CAPTURE(format_fen(p));
        CHECK(generate_moves(p) == oracle::legal_moves(p));
    }
}

TEST_CASE("mirror flips the board vertically and swaps colours") {
    for (const Position& p : random_playout_positions(99, 50)) {
        Position m = mirror(p);
        CHECK(m.side_to_move == opposite(p.side_to_move));
        CHECK(mirror(m) == p);
        // Move counts agree between a position and its mirror.
        CHECK(generate_moves(p).size() == generate_moves(m).size());
    }
}

TEST_CASE("san formatting") {
    Position p = start_position();
    CHECK(to_san(p, parse_uci_move(p, "e2e4")) == "e4");
    CHECK(to_san(p, parse_uci_move(p, "g1f3")) == "Nf3");

    // Knights on b1 and f3 both reach d2: file disambiguation.
    p = parse_fen("rnbqkb1r/pppp1ppp/5n2/4p3/3PP3/5N2/PPP2PPP/RNBQKB1R w KQkq - 0 3");
    CHECK(to_san(p, parse_uci_move(p, "b1d2")) == "Nbd2");
    CHECK(to_san(p, parse_uci_move(p, "f3d2")) == "Nfd2");

    // Rooks on a1 and a5: rank disambiguation.
    p = parse_fen("4k3/8/8/R7/8/8/8/R3K3 w - - 0 1");
    CHECK(to_san(p, parse_uci_move(p, "a1a3")) == "R1a3");

    // Queens on e4, h4 and h1: both coordinates needed.
    p = parse_fen("1k6/8/8/8/4Q2Q/8/8/K6Q w - - 0 1");
    CHECK(to_san(p, parse_uci_move(p, "h4e1")) == "Qh4e1");

    // Captures, promotions, castling, check and mate suffixes.
    p = parse_fen("4k3/8/8/3p4/4P3/8/8/4K3 w - - 0 1");
    CHECK(to_san(p, parse_uci_move(p, "e4d5")) == "exd5");
    p = parse_fen("4k3/1P6/8/8/8/8/8/4K3 w - - 0 1");
    CHECK(to_san(p, parse_uci_move(p, "b7b8q")) == "b8=Q+");
    p = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R w KQkq - 0 1");
    CHECK(to_san(p, parse_uci_move(p, "e1g1")) == "O-O");
    CHECK(to_san(p, parse_uci_move(p, "e1c1")) == "O-O-O");
    p = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1");
    CHECK(to_san(p, parse_uci_move(p, "a1a8")) == "Ra8#");
}

TEST_CASE("san parsing") {
    Position p = start_position();
    CHECK(parse_san(p, "e4") == parse_uci_move(p, "e2e4"));
    CHECK(parse_san(p, "Nf3!?") == parse_uci_move(p, "g1f3"));

    p = parse_fen("4k3/1P6/8/8/8/8/8/4K3 w - - 0 1");
    CHECK(parse_san(p, "b8=Q+") == parse_uci_move(p, "b7b8q"));
    CHECK(parse_san(p, "b8N") == parse_uci_move(p, "b7b8n"));

    p = parse_fen("r3k2r/8/8/8/8/8/8/R3K2R b KQkq - 0 1");
    CHECK(parse_san(p, "O-O-O") == parse_uci_move(p, "e8c8"));
    CHECK(parse_san(p, "0-0") == parse_uci_move(p, "e8g8"));

    // Ambiguity and no-match are distinct errors.
    p = parse_fen("rnbqkb1r/pppp1ppp/5n2/4p3/3PP3/5N2/PPP2PPP/RNBQKB1R w KQkq - 0 3");
    CHECK_THROWS_WITH_AS(parse_san(p, "Nd2"), doctest::Contains("ambiguous"), ParseError);
    CHECK_THROWS_WITH_AS(parse_san(p, "Qh5"), doctest::Contains("no matching"), ParseError);
    CHECK_THROWS_AS(parse_san(p, ""), ParseError);
}

TEST_CASE("san round trip on random play") {
    std::mt19937_64 rng(4242);
    for (int game = 0; game < 20; ++game) {
        Position p = start_position();
        for (int ply = 0; ply < 80; ++ply) {
            auto moves = generate_moves(p);
            if (moves.empty()) break;
            std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
            Move m = moves[pick(rng)];
            CAPTURE(format_fen(p));
            CHECK(parse_san(p, to_san(p, m)) == m);
            p = apply_move(p, m);
        }
    }
}

TEST_CASE("pgn parsing handles headers, comments and variations") {
    std::istringstream in(R"([Event "Test"]
[White "A"]
[Black "B"]
[Result "1-0"]

1. e4 {king pawn} e5 2. Nf3 $1 (2. f4 exf4 {the gambit}) 2... Nc6
3. Bb5 ; spanish
3... a6 1-0

[Event "Second"]
[Result "*"]

1.d4 d5 *
)");
    auto games = parse_pgn(in);
    REQUIRE(games.size() == 2);
    CHECK(games[0].header("Event") == "Test");
    CHECK(games[0].result == "1-0");
    REQUIRE(games[0].moves.size() == 6);
    CHECK(move_to_uci(games[0].moves[4]) == "f1b5");
    CHECK(games[1].moves.size() == 2);
    CHECK(games[1].result == "*");
}

TEST_CASE("pgn errors carry game and ply") {
    std::istringstream in("[Result \"*\"]\n\n1. e4 e5 2. Ke2 Ke7 3. Qh5 *\n");
    CHECK_THROWS_WITH_AS(parse_pgn(in), doctest::Contains("game 1, ply 5"), ParseError);
}

TEST_CASE("pgn round trip") {
    PgnGame game;
    game.headers["Event"] = "rt";
    game.headers["White"] = "white";
    game.headers["Black"] = "black";
    game.result = "1/2-1/2";
    Position p = start_position();
    std::mt19937_64 rng(11);
    for (int ply = 0; ply < 60; ++ply) {
        auto moves = generate_moves(p);
        if (moves.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, moves.size() - 1);
        Move m = moves[pick(rng)];
        game.moves.push_back(m);
        p = apply_move(p, m);
    }
    std::string text = format_pgn(game);
    std::istringstream in(text);
    auto parsed = parse_pgn(in);
    REQUIRE(parsed.size() == 1);
    CHECK(parsed[0].moves == game.moves);
    CHECK(parsed[0].result == game.result);
    CHECK(parsed[0].header("Date") == "????.??.??");
    // Lines stay within classic PGN width.
    std::istringstream lines(text);
    for (std::string line; std::getline(lines, line);) CHECK(line.size() <= 80);
}

TEST_CASE("epd parsing") {
    EpdRecord rec = parse_epd(
        R"(1k1r4/pp1b1R2/3q2pp/4p3/2B5/4Q3/PPP2B2/2K5 b - - bm Qd1+; id "BK.01";)");
    CHECK(rec.id == "BK.01");
    REQUIRE(rec.best_moves.size() == 1);
    CHECK(move_to_uci(rec.best_moves[0]) == "d6d1");
    CHECK(rec.ops.at("bm") == "Qd1+");

    // Multiple best moves.
    rec = parse_epd("4k3/8/8/8/8/8/1P6/4K3 w - - bm b3 b4; id \"two\";");
    CHECK(rec.best_moves.size() == 2);

    CHECK_THROWS_WITH_AS(parse_epd("4k3/8/8/8/8/8/1P6/4K3 w - - bm Qa1;"),
                         doctest::Contains("bm"), ParseError);
    CHECK_THROWS_WITH_AS(parse_epd("4k3/8/8/8/8/8/1P6/4K3 w - - bm b3"),
                         doctest::Contains("missing ';'"), ParseError);
    CHECK_THROWS_AS(parse_epd("not a position"), ParseError);
}

TEST_CASE("epd file reader skips comments and numbers error lines") {
    // Written through a temp file in the build tree.
    const char* path = "epd_reader_test.tmp";
    {
        std::ofstream out(path);
        out << "# comment line\n\n";
        out << "4k3/8/8/8/8/8/1P6/4K3 w - - bm b4; id \"ok\";\n";
        out << "bad line here\n";
    }
    CHECK_THROWS_WITH_AS(parse_epd_file(path), doctest::Contains(":4:"), ParseError);
    {
        std::ofstream out(path);
        out << "4k3/8/8/8/8/8/1P6/4K3 w - - bm b4; id \"ok\";\n";
    }
    auto records = parse_epd_file(path);
    REQUIRE(records.size() == 1);
    CHECK(records[0].id == "ok");
    std::remove(path);
}

TEST_CASE("stalemate and checkmate are distinguishable") {
    Position mate = parse_fen("6k1/5ppp/8/8/8/8/8/R5K1 w - - 0 1");
    mate = apply_move(mate, parse_uci_move(mate, "a1a8"));
    CHECK(generate_moves(mate).empty());
    CHECK(in_check(mate, Color::Black));

    Position stale = parse_fen("7k/5Q2/6K1/8/8/8/8/8 b - - 0 1");
    CHECK(generate_moves(stale).empty());
    CHECK(!in_check(stale, Color::Black));
}
