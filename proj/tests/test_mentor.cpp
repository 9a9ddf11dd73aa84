#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <set>
#include <string>
#include <vector>

#include "evotune/chess/position.hpp"
#include "evotune/evalfn.hpp"
#include "evotune/mentor.hpp"
#include "evotune/search.hpp"
#include "random_positions.hpp"
#include "reference_params.hpp"

using namespace evotune;
using chess::Position;

namespace {

std::string fake_engine(const std::string& mode) {
    return std::string(FAKE_UCI_PATH) + " " + mode;
}

MentorConfig synthetic_cfg(int depth, int noise = 0, std::uint64_t seed = 0) {
    MentorConfig cfg;
    cfg.backend = MentorBackend::Synthetic;
    cfg.search_depth = depth;
    cfg.hidden_params = reference_params();
    cfg.noise_cp = noise;
    cfg.noise_seed = seed;
    return cfg;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        std::filesystem::remove(path);
    }
    ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("position key drops the move clocks") {
    Position p = chess::start_position();
    CHECK(position_key(p) == "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPPP/RNBQKBNR w KQkq -");
    Position a = chess::parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 13 44");
    Position b = chess::parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 0 1");
    CHECK(position_key(a) == position_key(b));
}

TEST_CASE("synthetic mentor equals the hidden evaluation at shallow depth") {
    auto cfg = synthetic_cfg(1);
    auto positions = random_playout_positions(901, 40);
    for (const auto& p : positions) {
        long long want = evaluate(p, *cfg.hidden_params);
        if (want > kScoreClamp) want = kScoreClamp;
        if (want < -kScoreClamp) want = -kScoreClamp;
        CHECK(synthetic_score(p, cfg) == want);
    }
    cfg.search_depth = 0;
    CHECK(synthetic_score(positions[0], cfg) == synthetic_score(positions[0], synthetic_cfg(1)));
}

TEST_CASE("synthetic mentor runs the hidden search at depth two") {
    auto cfg = synthetic_cfg(2);
    auto positions = random_playout_positions(902, 10);
    for (const auto& p : positions) {
        long long want = search_score_white(p, *cfg.hidden_params, 2);
        if (want > kScoreClamp) want = kScoreClamp;
        if (want < -kScoreClamp) want = -kScoreClamp;
        CHECK(synthetic_score(p, cfg) == want);
    }
}

TEST_CASE("synthetic mentor is anti-symmetric under board mirroring") {
    auto cfg = synthetic_cfg(1);
    for (const auto& p : random_playout_positions(903, 60)) {
        if (std::abs(synthetic_score(p, cfg)) == kScoreClamp) continue;  // clamp breaks negation
        CHECK(synthetic_score(chess::mirror(p), cfg) == -synthetic_score(p, cfg));
    }
    auto deep = synthetic_cfg(2);
    for (const auto& p : random_playout_positions(904, 8)) {
        if (std::abs(synthetic_score(p, deep)) == kScoreClamp) continue;
        CHECK(synthetic_score(chess::mirror(p), deep) == -synthetic_score(p, deep));
    }
}

TEST_CASE("synthetic noise is bounded, deterministic, and seed-sensitive") {
    auto exact = synthetic_cfg(1);
    auto noisy = synthetic_cfg(1, 50, 7);
    auto positions = random_playout_positions(905, 50);
    int moved = 0, seed_diff = 0;
    for (const auto& p : positions) {
        int a = synthetic_score(p, noisy);
        CHECK(a == synthetic_score(p, noisy));  // same config, same answer
        int base = synthetic_score(p, exact);
        if (std::abs(base) < kScoreClamp - 60) CHECK(std::abs(a - base) <= 50);
        if (a != base) ++moved;
        if (a != synthetic_score(p, synthetic_cfg(1, 50, 8))) ++seed_diff;
    }
    CHECK(moved > 10);      // noise actually perturbs most positions
    CHECK(seed_diff > 10);  // and depends on the seed
}

TEST_CASE("noise keys off the position, not the move clocks") {
    auto noisy = synthetic_cfg(1, 80, 21);
    Position a = chess::parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 0 1");
    Position b = chess::parse_fen("4k3/8/8/8/8/8/4P3/4K3 w - - 30 77");
    CHECK(synthetic_score(a, noisy) == synthetic_score(b, noisy));
}

TEST_CASE("synthetic mentor without hidden parameters is an error") {
    MentorConfig cfg;
    cfg.backend = MentorBackend::Synthetic;
    CHECK_THROWS_AS(synthetic_score(chess::start_position(), cfg), MentorError);
}

TEST_CASE("uci engine scores are normalized to White's perspective") {
    UciEngine engine(fake_engine("const:123"));
    engine.handshake();
    Position white_stm = chess::start_position();
    Position black_stm = chess::parse_fen(
        "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq - 0 1");
    CHECK(engine.score_white(white_stm, 3) == 123);
    CHECK(engine.score_white(black_stm, 3) == -123);
}

TEST_CASE("uci engine material mode confirms the sign convention") {
    UciEngine engine(fake_engine("material"));
    engine.handshake();
    CHECK(engine.score_white(chess::start_position(), 1) == 0);
    // White is a pawn down; the side-to-move-relative report flips back.
    Position p = chess::parse_fen(
        "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPP1/RNBQKBNR b KQkq - 0 1");
    CHECK(engine.score_white(p, 1) == -100);
    Position q = chess::parse_fen(
        "rnbqkbnr/pppppppp/8/8/8/8/PPPPPPP1/RNBQKBNR w KQkq - 0 1");
    CHECK(engine.score_white(q, 1) == -100);
}

TEST_CASE("mate announcements clamp to the score bound") {
    {
        UciEngine engine(fake_engine("mate:3"));
        engine.handshake();
        CHECK(engine.score_white(chess::start_position(), 5) == kScoreClamp);
        Position black = chess::parse_fen(
            "rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq - 0 1");
        CHECK(engine.score_white(black, 5) == -kScoreClamp);
    }
    {
        UciEngine engine(fake_engine("mate:-2"));
        engine.handshake();
        CHECK(engine.score_white(chess::start_position(), 5) == -kScoreClamp);
    }
}

TEST_CASE("the last score before bestmove wins") {
    UciEngine engine(fake_engine("multi"));
    engine.handshake();
    CHECK(engine.score_white(chess::start_position(), 3) == 77);
}

TEST_CASE("bestmove without a score is a protocol error") {
    UciEngine engine(fake_engine("noscore"));
    engine.handshake();
    try {
        engine.score_white(chess::start_position(), 3);
        FAIL("expected MentorError");
    } catch (const MentorError& e) {
        CHECK(std::string(e.what()).find("without any score") != std::string::npos);
        CHECK(std::string(e.what()).find("bestmove e2e4") != std::string::npos);  // transcript
    }
}

TEST_CASE("a silent engine times out") {
    UciEngine engine(fake_engine("silent"), 200);
    engine.handshake();
    try {
        engine.score_white(chess::start_position(), 3);
        FAIL("expected MentorError");
    } catch (const MentorError& e) {
        CHECK(std::string(e.what()).find("timed out") != std::string::npos);
    }
}

TEST_CASE("an engine that dies mid-search is reported") {
    UciEngine engine(fake_engine("die"));
    engine.handshake();
    CHECK_THROWS_AS(engine.score_white(chess::start_position(), 3), MentorError);
}

TEST_CASE("handshake failures carry context") {
    {
        UciEngine engine("sleep 30", 150);
        try {
            engine.handshake();
            FAIL("expected MentorError");
        } catch (const MentorError& e) {
            CHECK(std::string(e.what()).find("uciok") != std::string::npos);
        }
    }
    {
        UciEngine engine("echo hello");
        CHECK_THROWS_AS(engine.handshake(), MentorError);
    }
}

TEST_CASE("score_positions preserves order and ids") {
    auto positions = random_playout_positions(906, 25);
    auto scores = score_positions(positions, synthetic_cfg(1));
    REQUIRE(scores.size() == positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i) {
        CHECK(scores[i].position_id == position_key(positions[i]));
        CHECK(scores[i].score_cp == synthetic_score(positions[i], synthetic_cfg(1)));
    }
}

TEST_CASE("a cache is transparent and persists across runs") {
    TempFile tmp("evotune_test_cache.tsv");
    auto positions = random_playout_positions(907, 20);
    auto cfg = synthetic_cfg(1);

    auto bare = score_positions(positions, cfg);
    std::vector<MentorScore> first, second;
    {
        ScoreCache cache(tmp.path);
        CHECK(cache.size() == 0);
        first = score_positions(positions, cfg, &cache);
    }
    {
        ScoreCache cache(tmp.path);  // reloaded from disk
        std::set<std::string> keys;
        for (const auto& p : positions) keys.insert(position_key(p));
        CHECK(cache.size() == keys.size());
        for (const auto& p : positions)
            CHECK(cache.lookup(position_key(p), 1).has_value());
        // A poisoned cache entry proves lookups short-circuit scoring.
        cache.store(position_key(positions[0]), 1, 1234);
        second = score_positions(positions, cfg, &cache);
        CHECK(second[0].score_cp == 1234);
    }
    for (std::size_t i = 0; i < positions.size(); ++i) {
        CHECK(first[i].score_cp == bare[i].score_cp);
        if (i > 0 && positions[i].board != positions[0].board)
            CHECK(second[i].score_cp == bare[i].score_cp);
    }
}

TEST_CASE("cache rejects malformed files") {
    TempFile tmp("evotune_bad_cache.tsv");
    {
        std::ofstream out(tmp.path);
        out << "only one field\n";
    }
    CHECK_THROWS_AS(ScoreCache{tmp.path}, MentorError);
    {
        std::ofstream out(tmp.path, std::ios::trunc);
        out << "8/8/8/8/8/8/8/8 w - -\tx\t5\n";
    }
    try {
        ScoreCache cache(tmp.path);
        FAIL("expected MentorError");
    } catch (const MentorError& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
}

TEST_CASE("cache keeps the most recent score for a key") {
    TempFile tmp("evotune_dup_cache.tsv");
    {
        ScoreCache cache(tmp.path);
        cache.store("8/8/8/8/8/8/8/8 w - -", 2, 10);
        cache.store("8/8/8/8/8/8/8/8 w - -", 2, 20);
        cache.store("8/8/8/8/8/8/8/8 w - -", 3, 30);  // other depth is distinct
    }
    ScoreCache cache(tmp.path);
    CHECK(cache.size() == 2);
    CHECK(cache.lookup("8/8/8/8/8/8/8/8 w - -", 2) == 20);
    CHECK(cache.lookup("8/8/8/8/8/8/8/8 w - -", 3) == 30);
    CHECK(!cache.lookup("8/8/8/8/8/8/8/8 w - -", 4).has_value());
}

TEST_CASE("external backend scores through the engine") {
    MentorConfig cfg;
    cfg.backend = MentorBackend::ExternalEngine;
    cfg.engine_command = fake_engine("const:55");
    cfg.search_depth = 2;
    std::vector<Position> positions = {
        chess::start_position(),
        chess::parse_fen("rnbqkbnr/pppppppp/8/8/4P3/8/PPPP1PPP/RNBQKBNR b KQkq - 0 1"),
    };
    auto scores = score_positions(positions, cfg);
    CHECK(scores[0].score_cp == 55);
    CHECK(scores[1].score_cp == -55);

    cfg.engine_command.clear();
    CHECK_THROWS_AS(score_positions(positions, cfg), MentorError);
}

TEST_CASE("an engine pool matches a single engine") {
    auto positions = random_playout_positions(908, 12);
    MentorConfig cfg;
    cfg.backend = MentorBackend::ExternalEngine;
    cfg.engine_command = fake_engine("material");
    cfg.search_depth = 1;
    auto one = score_positions(positions, cfg);
    cfg.processes = 3;
    auto pooled = score_positions(positions, cfg);
    REQUIRE(one.size() == pooled.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].position_id == pooled[i].position_id);
        CHECK(one[i].score_cp == pooled[i].score_cp);
    }

    cfg.engine_command = fake_engine("die");
    CHECK_THROWS_AS(score_positions(positions, cfg), MentorError);
}
