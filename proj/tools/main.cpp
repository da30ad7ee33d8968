#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fairorder/experiment.hpp"

namespace {

std::string default_out_dir() {
    if (const char* env = std::getenv("FAIRORDER_OUT")) return env;
    return "out";
}

std::vector<fairorder::BatchScheme> parse_schemes(const std::string& csv) {
    std::vector<fairorder::BatchScheme> schemes;
    std::size_t begin = 0;
    while (begin <= csv.size()) {
        std::size_t end = csv.find(',', begin);
        if (end == std::string::npos) end = csv.size();
        std::string name = csv.substr(begin, end - begin);
        if (!name.empty()) schemes.push_back(fairorder::BatchScheme::parse(name));
        begin = end + 1;
    }
    if (schemes.empty()) throw std::invalid_argument("no schemes given");
    return schemes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Batch-order-fairness attack and mitigation simulator"};
    app.require_subcommand(1);

    // --- preset: run one of the canned experiment sweeps -------------------
    auto* preset = app.add_subcommand("preset", "Run an experiment preset");
    std::string preset_name;
    fairorder::PresetOptions options;
    options.out_dir = default_out_dir();
    preset->add_option("name", preset_name, "Preset name")
        ->required()
        ->check(CLI::IsMember(fairorder::preset_names()));
    preset->add_option("--seed", options.seed, "Master seed");
    preset->add_option("--out", options.out_dir, "Output directory");
    preset->add_option("--trials", options.trials, "Trials per grid point");
    preset->add_option("--points-per-decade", options.points_per_decade,
                       "Grid density of logarithmic sweeps (default 20)");
    preset->add_option("--linear-points", options.linear_points,
                       "Grid size of linear sweeps (default 11)");
    preset->add_option("--n", options.n_values, "Committee sizes to sweep");
    preset->add_option("--threads", options.threads, "Worker threads");
    preset->add_flag("--no-svg{false}", options.svg, "Skip SVG charts");

    // --- run: one simulation with full artifact dump -----------------------
    auto* single = app.add_subcommand("run", "Run a single simulation");
    std::string config_path, attack_kind = "none", schemes_csv = "ranked-pairs";
    std::string out_dir = default_out_dir();
    fairorder::SimConfig config;
    config.honest_count = 20;
    double tau = 10.0;
    int clones = 1;
    single->add_option("--config", config_path, "Config file (key = value sections)");
    single->add_option("--n", config.n, "Committee size");
    single->add_option("--r", config.r, "External network ratio");
    single->add_option("--r-internal", config.r_internal, "Internal network ratio");
    single->add_option("--honest", config.honest_count, "Honest transaction count");
    single->add_option("--p", config.reorder_p, "Burst swap probability");
    single->add_option("--seed", config.seed, "Seed");
    single->add_option("--attack", attack_kind, "Attack plan: two_tx, four_tx or none");
    single->add_option("--tau", tau, "Attack pause time");
    single->add_option("--clones", clones, "Clones per attack transaction");
    single->add_option("--gap", config.gap, "Intra-burst transmission gap");
    single->add_option("--attack-start", config.attack_start, "Attack start offset");
    single->add_flag("--broadcast", config.broadcast, "Gossip mitigation");
    single->add_option("--scheme,--schemes", schemes_csv,
                       "Comma-separated batch schemes");
    single->add_option("--out", out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (preset->parsed()) {
            fairorder::run_preset(preset_name, options);
            return 0;
        }
        if (config_path.empty()) {
            if (attack_kind == "two_tx")
                config.attack = fairorder::clone_plan(
                    fairorder::two_tx_plan(config.n, tau), clones);
            else if (attack_kind == "four_tx")
                config.attack = fairorder::clone_plan(
                    fairorder::four_tx_plan(config.n, tau), clones);
            else if (attack_kind != "none")
                throw std::invalid_argument("unknown attack kind: " + attack_kind);
        } else {
            // Command-line flags override file values.
            fairorder::SimConfig merged = fairorder::load_config_file(config_path);
            if (single->count("--n")) merged.n = config.n;
            if (single->count("--r")) merged.r = config.r;
            if (single->count("--r-internal")) merged.r_internal = config.r_internal;
            if (single->count("--honest")) merged.honest_count = config.honest_count;
            if (single->count("--p")) merged.reorder_p = config.reorder_p;
            if (single->count("--seed")) merged.seed = config.seed;
            if (single->count("--gap")) merged.gap = config.gap;
            if (single->count("--attack-start")) merged.attack_start = config.attack_start;
            if (single->count("--broadcast")) merged.broadcast = config.broadcast;
            if (single->count("--attack") || single->count("--tau") ||
                single->count("--clones")) {
                // Rebuild the plan from the merged view so that, say, --tau
                // alone re-times the file's attack instead of dropping it.
                std::string kind = single->count("--attack") ? attack_kind
                                   : merged.attack           ? merged.attack->kind
                                                             : "none";
                double pause = single->count("--tau") ? tau
                               : merged.attack        ? merged.attack->pause
                                                      : tau;
                int k = single->count("--clones") ? clones
                        : merged.attack           ? merged.attack->clones
                                                  : clones;
                if (kind == "none")
                    merged.attack.reset();
                else if (kind == "two_tx")
                    merged.attack = fairorder::clone_plan(
                        fairorder::two_tx_plan(merged.n, pause), k);
                else if (kind == "four_tx")
                    merged.attack = fairorder::clone_plan(
                        fairorder::four_tx_plan(merged.n, pause), k);
                else
                    throw std::invalid_argument("unknown attack kind: " + kind);
            }
            config = merged;
        }
        fairorder::SingleRunOptions run_options;
        run_options.out_dir = out_dir;
        run_options.schemes = parse_schemes(schemes_csv);
        fairorder::run_single(config, run_options);
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
