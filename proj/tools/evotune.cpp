// Command-line front end: dataset ingestion, training runs, matches, EPD
// suites, single-position evaluation, and byte-exact manifest replay.
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "evotune/arena.hpp"
#include "evotune/chess/epd.hpp"
#include "evotune/chess/pgn.hpp"
#include "evotune/digest.hpp"
#include "evotune/mentor.hpp"
#include "evotune/search.hpp"
#include "evotune/training.hpp"
#include "evotune/version.hpp"

using nlohmann::json;
using namespace evotune;

namespace {

// Configuration mistakes discovered after flag parsing; exit code 1 like
// any other usage error.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

std::string file_digest(const std::string& path) { return hex64(fnv1a64(read_file(path))); }

std::string out_path(const std::string& dir, const std::string& name) {
    return (std::filesystem::path(dir) / name).string();
}

// The manifest captures everything that determines the outputs: resolved
// options plus digests of every input file. The output directory itself
// is deliberately absent so a replay into a fresh directory stays
// byte-identical, manifest included.
json make_manifest(const std::string& command, const json& options,
                   const std::vector<std::string>& inputs) {
    json digests = json::object();
    for (const auto& path : inputs) digests[path] = file_digest(path);
    return json{{"tool", "evotune"},
                {"version", kToolVersion},
                {"command", command},
                {"options", options},
                {"inputs", digests}};
}

void write_manifest(const std::string& dir, const json& manifest) {
    write_file(out_path(dir, "manifest.json"), manifest.dump(2) + "\n");
}

void ensure_out_dir(const std::string& dir) {
    if (dir.empty()) throw UsageError("--out is required");
    std::filesystem::create_directories(dir);
}

// ---------------- ingest ----------------

struct IngestOptions {
    std::vector<std::string> pgn;
    int count = 0;
    std::string mentor = "synthetic";
    std::string mentor_params;
    std::string engine_cmd;
    int depth = 1;
    int noise = 0;
    std::uint64_t seed = 0;
    int threads = 1;
    std::string cache;
};

void to_json(json& j, const IngestOptions& o) {
    j = json{{"pgn", o.pgn},       {"count", o.count},   {"mentor", o.mentor},
             {"mentor_params", o.mentor_params}, {"engine_cmd", o.engine_cmd},
             {"depth", o.depth},   {"noise", o.noise},   {"seed", o.seed},
             {"threads", o.threads}, {"cache", o.cache}};
}

void from_json(const json& j, IngestOptions& o) {
    j.at("pgn").get_to(o.pgn);
    j.at("count").get_to(o.count);
    j.at("mentor").get_to(o.mentor);
    j.at("mentor_params").get_to(o.mentor_params);
    j.at("engine_cmd").get_to(o.engine_cmd);
    j.at("depth").get_to(o.depth);
    j.at("noise").get_to(o.noise);
    j.at("seed").get_to(o.seed);
    j.at("threads").get_to(o.threads);
    j.at("cache").get_to(o.cache);
}

std::vector<std::string> ingest_inputs(const IngestOptions& o) {
    auto inputs = o.pgn;
    if (!o.mentor_params.empty()) inputs.push_back(o.mentor_params);
    return inputs;
}

void run_ingest(const IngestOptions& o, const std::string& out_dir) {
    if (o.pgn.empty()) throw UsageError("ingest: at least one --pgn file is required");
    if (o.count <= 0) throw UsageError("ingest: positive --count (or a --profile) is required");

    std::vector<chess::PgnGame> games;
    for (const auto& path : o.pgn) {
        auto some = chess::parse_pgn_file(path);
        games.insert(games.end(), some.begin(), some.end());
    }

    std::mt19937_64 rng(o.seed);
    auto positions = sample_positions(games, o.count, rng);

    MentorConfig mc;
    mc.search_depth = o.depth;
    mc.noise_cp = o.noise;
    mc.noise_seed = o.seed;
    mc.processes = o.threads;
    if (o.mentor == "synthetic") {
        if (o.mentor_params.empty())
            throw UsageError("ingest: synthetic mentor needs --mentor-params");
        mc.backend = MentorBackend::Synthetic;
        mc.hidden_params = load_params_file(o.mentor_params);
    } else if (o.mentor == "uci") {
        if (o.engine_cmd.empty()) throw UsageError("ingest: uci mentor needs --engine-cmd");
        mc.backend = MentorBackend::ExternalEngine;
        mc.engine_command = o.engine_cmd;
    } else {
        throw UsageError("ingest: --mentor must be 'synthetic' or 'uci'");
    }

    std::vector<MentorScore> scores;
    if (o.cache.empty()) {
        scores = score_positions(positions, mc);
    } else {
        ScoreCache cache(o.cache);
        scores = score_positions(positions, mc, &cache);
    }

    std::vector<ScoredPosition> records(positions.size());
    for (std::size_t i = 0; i < positions.size(); ++i)
        records[i] = {positions[i], scores[i].score_cp};
    auto d = split_dataset(records);
    save_dataset(out_path(out_dir, "train.tsv"), d.train);
    save_dataset(out_path(out_dir, "test.tsv"), d.test);
    std::cout << "ingest: " << records.size() << " positions -> " << d.train.size()
              << " train, " << d.test.size() << " test\n";
}

// ---------------- train ----------------

struct TrainOptions {
    std::string train;
    std::string test;
    int population = 1000;
    int generations = 300;
    int sample = 1000;
    double crossover = 0.75;
    double mutation = 0.002;
    std::uint64_t seed = 0;
    int threads = 1;
    bool resample = true;
    int organism_depth = 0;
};

void to_json(json& j, const TrainOptions& o) {
    j = json{{"train", o.train},           {"test", o.test},
             {"population", o.population}, {"generations", o.generations},
             {"sample", o.sample},         {"crossover", o.crossover},
             {"mutation", o.mutation},     {"seed", o.seed},
             {"threads", o.threads},       {"resample", o.resample},
             {"organism_depth", o.organism_depth}};
}

void from_json(const json& j, TrainOptions& o) {
    j.at("train").get_to(o.train);
    j.at("test").get_to(o.test);
    j.at("population").get_to(o.population);
    j.at("generations").get_to(o.generations);
    j.at("sample").get_to(o.sample);
    j.at("crossover").get_to(o.crossover);
    j.at("mutation").get_to(o.mutation);
    j.at("seed").get_to(o.seed);
    j.at("threads").get_to(o.threads);
    j.at("resample").get_to(o.resample);
    j.at("organism_depth").get_to(o.organism_depth);
}

void run_train(const TrainOptions& o, const std::string& out_dir) {
    Dataset data;
    data.train = load_dataset(o.train);
    data.test = load_dataset(o.test);

    RunConfig cfg;
    cfg.ga.population_size = o.population;
    cfg.ga.generations = o.generations;
    cfg.ga.sample_size = o.sample;
    cfg.ga.crossover_rate = o.crossover;
    cfg.ga.mutation_rate = o.mutation;
    cfg.ga.seed = o.seed;
    cfg.threads = o.threads;
    cfg.resample = o.resample;
    cfg.organism_search_depth = o.organism_depth;

    auto result = run_evolution(data, cfg);
    write_file(out_path(out_dir, "generations.csv"), report_csv(result.reports));
    write_file(out_path(out_dir, "snapshots.tsv"), snapshot_lines(result.reports));
    write_file(out_path(out_dir, "best_chromosome.txt"), to_string(result.best) + "\n");
    save_params_file(result.best_params, out_path(out_dir, "best_params.txt"));
    std::cout << "train: " << o.generations << " generations, best error "
              << result.train_error_cp << " cp (train), " << result.test_error_cp
              << " cp (test)\n";
}

// ---------------- match ----------------

struct MatchOptions {
    std::string a;
    std::string b;
    std::string openings;
    int games = 100;
    int depth = 3;
    int threads = 1;
};

void to_json(json& j, const MatchOptions& o) {
    j = json{{"a", o.a},         {"b", o.b},         {"openings", o.openings},
             {"games", o.games}, {"depth", o.depth}, {"threads", o.threads}};
}

void from_json(const json& j, MatchOptions& o) {
    j.at("a").get_to(o.a);
    j.at("b").get_to(o.b);
    j.at("openings").get_to(o.openings);
    j.at("games").get_to(o.games);
    j.at("depth").get_to(o.depth);
    j.at("threads").get_to(o.threads);
}

void run_match(const MatchOptions& o, const std::string& out_dir) {
    auto a = load_params_file(o.a);
    auto b = load_params_file(o.b);
    auto openings = load_openings(o.openings);
    auto result = play_match(a, b, o.games, o.depth, openings, o.threads);
    auto name = [](const std::string& path) {
        auto stem = std::filesystem::path(path).stem().string();
        return stem.empty() ? std::string("params") : stem;
    };
    write_file(out_path(out_dir, "match.csv"), match_csv(result));
    write_file(out_path(out_dir, "games.pgn"), match_pgn(result, name(o.a), name(o.b)));
    std::cout << "match: " << name(o.a) << " scored " << result.score_a << "/" << o.games
              << " (" << result.win_pct << "%)\n";
}

// ---------------- suite ----------------

struct SuiteOptions {
    std::string epd;
    std::string params;
    int depth = 4;
};

void to_json(json& j, const SuiteOptions& o) {
    j = json{{"epd", o.epd}, {"params", o.params}, {"depth", o.depth}};
}

void from_json(const json& j, SuiteOptions& o) {
    j.at("epd").get_to(o.epd);
    j.at("params").get_to(o.params);
    j.at("depth").get_to(o.depth);
}

void run_suite(const SuiteOptions& o, const std::string& out_dir) {
    auto records = chess::parse_epd_file(o.epd);
    auto params = load_params_file(o.params);
    auto result = run_epd_suite(records, params, o.depth);
    write_file(out_path(out_dir, "suite.csv"), suite_csv(result));
    std::cout << "suite: solved " << result.solved << "/" << records.size() << "\n";
}

// ---------------- eval ----------------

struct EvalOptions {
    std::string fen;
    std::string params;
    int depth = 0;
};

void to_json(json& j, const EvalOptions& o) {
    j = json{{"fen", o.fen}, {"params", o.params}, {"depth", o.depth}};
}

void from_json(const json& j, EvalOptions& o) {
    j.at("fen").get_to(o.fen);
    j.at("params").get_to(o.params);
    j.at("depth").get_to(o.depth);
}

void run_eval(const EvalOptions& o) {
    auto p = chess::parse_fen(o.fen);
    auto params = load_params_file(o.params);
    int score = o.depth <= 0 ? evaluate(p, params) : search_score_white(p, params, o.depth);
    std::cout << score << "\n";
}

// ---------------- replay ----------------

void verify_inputs(const json& manifest) {
    for (const auto& [path, digest] : manifest.at("inputs").items()) {
        std::string now = file_digest(path);
        if (now != digest.get<std::string>())
            throw std::runtime_error("replay: input " + path + " changed (digest " + now +
                                     ", manifest says " + digest.get<std::string>() + ")");
    }
}

void run_replay(const std::string& manifest_path, const std::string& out_dir) {
    auto text = read_file(manifest_path);
    json manifest = json::parse(text);
    verify_inputs(manifest);
    ensure_out_dir(out_dir);
    std::string command = manifest.at("command").get<std::string>();
    const json& options = manifest.at("options");
    if (command == "ingest")
        run_ingest(options.get<IngestOptions>(), out_dir);
    else if (command == "train")
        run_train(options.get<TrainOptions>(), out_dir);
    else if (command == "match")
        run_match(options.get<MatchOptions>(), out_dir);
    else if (command == "suite")
        run_suite(options.get<SuiteOptions>(), out_dir);
    else if (command == "eval")
        run_eval(options.get<EvalOptions>());
    else
        throw std::runtime_error("replay: unknown command '" + command + "' in manifest");
    // The manifest is itself an output: byte-identical by construction.
    if (command != "eval") write_file(out_path(out_dir, "manifest.json"), text);
}

void add_env(CLI::Option* opt, const std::string& name) {
    std::string env = "EVOTUNE_" + name;
    for (auto& c : env) c = c == '-' ? '_' : static_cast<char>(std::toupper(c));
    opt->envname(env);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"genetic tuning of a compact chess evaluation function"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolVersion));

    std::string out_dir;
    std::string profile;

    IngestOptions ing;
    auto* ingest = app.add_subcommand("ingest", "sample PGN games and mentor-score them");
    ingest->add_option("--pgn", ing.pgn, "PGN input file(s)")->required();
    add_env(ingest->add_option("--count", ing.count, "positions to sample"), "count");
    add_env(ingest->add_option("--mentor", ing.mentor, "synthetic or uci"), "mentor");
    add_env(ingest->add_option("--mentor-params", ing.mentor_params,
                               "hidden parameter file for the synthetic mentor"),
            "mentor-params");
    add_env(ingest->add_option("--engine-cmd", ing.engine_cmd, "UCI engine command"),
            "engine-cmd");
    add_env(ingest->add_option("--depth", ing.depth, "mentor search depth"), "depth");
    add_env(ingest->add_option("--noise", ing.noise, "synthetic noise amplitude in cp"),
            "noise");
    add_env(ingest->add_option("--seed", ing.seed, "sampling/noise seed"), "seed");
    add_env(ingest->add_option("--threads", ing.threads, "engine process pool size"),
            "threads");
    add_env(ingest->add_option("--cache", ing.cache, "mentor score cache file"), "cache");

    TrainOptions tr;
    auto* train = app.add_subcommand("train", "evolve parameters against a dataset");
    train->add_option("--train", tr.train, "training dataset file")->required();
    train->add_option("--test", tr.test, "test dataset file")->required();
    auto* opt_pop = train->add_option("--pop", tr.population, "population size");
    auto* opt_gens = train->add_option("--gens", tr.generations, "generation count");
    auto* opt_sample = train->add_option("--sample", tr.sample, "positions per generation");
    add_env(opt_pop, "pop");
    add_env(opt_gens, "gens");
    add_env(opt_sample, "sample");
    add_env(train->add_option("--crossover", tr.crossover, "crossover rate"), "crossover");
    add_env(train->add_option("--mutation", tr.mutation, "per-bit mutation rate"),
            "mutation");
    add_env(train->add_option("--seed", tr.seed, "run seed"), "seed");
    add_env(train->add_option("--threads", tr.threads, "evaluation threads"), "threads");
    train->add_flag("!--no-resample", tr.resample, "reuse one batch for the whole run");
    add_env(train->add_option("--organism-depth", tr.organism_depth,
                              "organisms search this deep instead of bare evaluation"),
            "organism-depth");

    MatchOptions ma;
    auto* match = app.add_subcommand("match", "fixed-depth match between two parameter files");
    match->add_option("--a", ma.a, "first parameter file")->required();
    match->add_option("--b", ma.b, "second parameter file")->required();
    match->add_option("--openings", ma.openings, "opening book file")->required();
    add_env(match->add_option("--games", ma.games, "game count (even)"), "games");
    add_env(match->add_option("--depth", ma.depth, "search depth"), "depth");
    add_env(match->add_option("--threads", ma.threads, "parallel games"), "threads");

    SuiteOptions su;
    auto* suite = app.add_subcommand("suite", "score an EPD best-move suite");
    suite->add_option("--epd", su.epd, "EPD suite file")->required();
    suite->add_option("--params", su.params, "parameter file")->required();
    add_env(suite->add_option("--depth", su.depth, "search depth"), "depth");

    EvalOptions ev;
    auto* eval = app.add_subcommand("eval", "evaluate a single FEN");
    eval->add_option("--fen", ev.fen, "position in FEN")->required();
    eval->add_option("--params", ev.params, "parameter file")->required();
    add_env(eval->add_option("--depth", ev.depth, "0 = static evaluation"), "depth");

    std::string replay_manifest;
    auto* replay = app.add_subcommand("replay", "re-run a recorded manifest");
    replay->add_option("manifest", replay_manifest, "manifest.json from a previous run")
        ->required();

    for (auto* cmd : {ingest, train, match, suite, eval, replay})
        add_env(cmd->add_option("--out", out_dir, "output directory"), "out");
    for (auto* cmd : {ingest, train})
        add_env(cmd->add_option("--profile", profile, "desk or paper scale preset"),
                "profile");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (!profile.empty()) {
            if (profile != "desk" && profile != "paper")
                throw UsageError("--profile must be 'desk' or 'paper'");
            Profile p = profile == "desk" ? desk_profile() : paper_profile();
            if (ingest->parsed() && ing.count == 0) ing.count = p.dataset_positions;
            if (train->parsed()) {
                if (opt_pop->count() == 0) tr.population = p.population;
                if (opt_gens->count() == 0) tr.generations = p.generations;
                if (opt_sample->count() == 0) tr.sample = p.sample_per_gen;
            }
        }

        if (ingest->parsed()) {
            ensure_out_dir(out_dir);
            run_ingest(ing, out_dir);
            write_manifest(out_dir, make_manifest("ingest", ing, ingest_inputs(ing)));
        } else if (train->parsed()) {
            ensure_out_dir(out_dir);
            run_train(tr, out_dir);
            write_manifest(out_dir, make_manifest("train", tr, {tr.train, tr.test}));
        } else if (match->parsed()) {
            ensure_out_dir(out_dir);
            run_match(ma, out_dir);
            write_manifest(out_dir, make_manifest("match", ma, {ma.a, ma.b, ma.openings}));
        } else if (suite->parsed()) {
            ensure_out_dir(out_dir);
            run_suite(su, out_dir);
            write_manifest(out_dir, make_manifest("suite", su, {su.epd, su.params}));
        } else if (eval->parsed()) {
            run_eval(ev);
            if (!out_dir.empty()) {
                ensure_out_dir(out_dir);
                write_manifest(out_dir, make_manifest("eval", ev, {ev.params}));
            }
        } else if (replay->parsed()) {
            run_replay(replay_manifest, out_dir);
        }
    } catch (const UsageError& e) {
        std::cerr << "evotune: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "evotune: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
