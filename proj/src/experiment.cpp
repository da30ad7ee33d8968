#include "fairorder/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

#include "fairorder/rng.hpp"
#include "fairorder/svgplot.hpp"

namespace fairorder {

namespace {

namespace fs = std::filesystem;

std::vector<double> logspace(int lo_exp, int hi_exp, int per_decade) {
    std::vector<double> out;
    const int count = (hi_exp - lo_exp) * per_decade;
    out.reserve(count + 1);
    for (int i = 0; i <= count; ++i)
        out.push_back(std::pow(10.0, lo_exp + static_cast<double>(i) / per_decade));
    return out;
}

std::vector<double> linspace(double lo, double hi, int count) {
    std::vector<double> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * static_cast<double>(i) / (count - 1));
    return out;
}

double mean_of(const std::vector<double>& values) {
    if (values.empty()) return 0.0;
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double stddev_of(const std::vector<double>& values) {
    if (values.size() < 2) return 0.0;
    double m = mean_of(values);
    double sum = 0.0;
    for (double v : values) sum += (v - m) * (v - m);
    return std::sqrt(sum / static_cast<double>(values.size()));
}

/// Runs trial bodies, possibly across threads; results land in trial order,
/// so scheduling cannot change any output.
std::vector<TrialMetrics> run_point(
    int trials, int threads, const std::function<std::vector<TrialMetrics>(int)>& body) {
    std::vector<std::vector<TrialMetrics>> slots(trials);
    if (threads <= 1) {
        for (int t = 0; t < trials; ++t) slots[t] = body(t);
    } else {
        std::atomic<int> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        auto worker = [&] {
            try {
                for (int t; (t = next.fetch_add(1)) < trials;) slots[t] = body(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        };
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& thread : pool) thread.join();
        if (failure) std::rethrow_exception(failure);
    }
    std::vector<TrialMetrics> rows;
    for (auto& slot : slots) rows.insert(rows.end(), slot.begin(), slot.end());
    return rows;
}

struct SummaryRow {
    std::string file;
    std::string axis;
    double value = 0.0;
    int n = 0;
    std::string instance;
    std::string scheme;
    int trials = 0;
    double cycle_prob = 0.0;
    double mean_cycles = 0.0;
    double mean_txs_in_cycles = 0.0;
    double mean_trapped = 0.0;
    double std_trapped = 0.0;
    double success_any_rate = 0.0;
    double success_all_rate = 0.0;
    std::optional<double> mean_accuracy;
    std::optional<double> std_accuracy;
};

std::string summary_header() {
    return "file,axis,value,n,instance,scheme,trials,cycle_prob,mean_cycles,"
           "mean_txs_in_cycles,mean_trapped,std_trapped,success_any_rate,"
           "success_all_rate,mean_accuracy,std_accuracy";
}

std::string to_csv_row(const SummaryRow& s) {
    std::string row = s.file + "," + s.axis + "," + format_double(s.value) + "," +
                      std::to_string(s.n) + "," + s.instance + "," + s.scheme + "," +
                      std::to_string(s.trials) + "," + format_double(s.cycle_prob) +
                      "," + format_double(s.mean_cycles) + "," +
                      format_double(s.mean_txs_in_cycles) + "," +
                      format_double(s.mean_trapped) + "," + format_double(s.std_trapped) +
                      "," + format_double(s.success_any_rate) + "," +
                      format_double(s.success_all_rate) + ",";
    if (s.mean_accuracy) row += format_double(*s.mean_accuracy);
    row += ",";
    if (s.std_accuracy) row += format_double(*s.std_accuracy);
    return row;
}

SummaryRow summarize(const std::string& file, const std::string& axis, double value,
                     int n, const std::string& instance, const std::string& scheme,
                     const std::vector<TrialMetrics>& rows) {
    SummaryRow s;
    s.file = file;
    s.axis = axis;
    s.value = value;
    s.n = n;
    s.instance = instance;
    s.scheme = scheme;
    s.trials = static_cast<int>(rows.size());
    std::vector<double> trapped, accuracy;
    int with_cycle = 0, any = 0, all = 0;
    double cycles = 0.0, txs = 0.0;
    for (const TrialMetrics& row : rows) {
        if (row.cycles > 0) ++with_cycle;
        cycles += row.cycles;
        txs += row.txs_in_cycles;
        trapped.push_back(row.trapped);
        if (row.success_any) ++any;
        if (row.success_all) ++all;
        if (row.has_accuracy) accuracy.push_back(row.accuracy);
    }
    if (!rows.empty()) {
        s.cycle_prob = static_cast<double>(with_cycle) / rows.size();
        s.mean_cycles = cycles / rows.size();
        s.mean_txs_in_cycles = txs / rows.size();
        s.mean_trapped = mean_of(trapped);
        s.std_trapped = stddev_of(trapped);
        s.success_any_rate = static_cast<double>(any) / rows.size();
        s.success_all_rate = static_cast<double>(all) / rows.size();
    }
    if (!accuracy.empty()) {
        s.mean_accuracy = mean_of(accuracy);
        s.std_accuracy = stddev_of(accuracy);
    }
    return s;
}

/// Collects every artifact in memory; one writer flushes at the end.
class Emitter {
public:
    explicit Emitter(fs::path dir) : dir_(std::move(dir)) {}

    void add_trials(const std::string& stem, std::vector<TrialMetrics> rows) {
        auto& table = tables_[stem];
        table.insert(table.end(), rows.begin(), rows.end());
        order_.insert(stem);
    }
    void add_summary(SummaryRow row) { summary_.push_back(std::move(row)); }
    void add_text(const std::string& filename, std::string content) {
        texts_.emplace_back(filename, std::move(content));
    }

    const std::vector<SummaryRow>& summary() const { return summary_; }

    void flush(const std::string& summary_name) {
        fs::create_directories(dir_);
        for (const auto& stem : order_) {
            std::string csv = trial_metrics_header() + "\n";
            for (const TrialMetrics& row : tables_[stem]) csv += to_csv_row(row) + "\n";
            write(stem + ".csv", csv);
        }
        std::string csv = summary_header() + "\n";
        for (const SummaryRow& row : summary_) csv += to_csv_row(row) + "\n";
        write(summary_name, csv);
        for (const auto& [name, content] : texts_) write(name, content);
    }

private:
    void write(const std::string& name, const std::string& content) {
        fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << content;
        if (!out) throw std::runtime_error("short write to " + path.string());
    }

    fs::path dir_;
    std::map<std::string, std::vector<TrialMetrics>> tables_;
    std::set<std::string> order_;
    std::vector<SummaryRow> summary_;
    std::vector<std::pair<std::string, std::string>> texts_;
};

struct Resolved {
    std::uint64_t seed;
    std::string out_dir;
    int trials;
    int per_decade;
    int linear_points;
    std::vector<int> n_values;
    bool svg;
    int threads;
};

Resolved resolve(const PresetOptions& options, int default_trials,
                 std::vector<int> default_ns) {
    Resolved r;
    r.seed = options.seed;
    r.out_dir = options.out_dir;
    r.trials = options.trials > 0 ? options.trials : default_trials;
    r.per_decade = options.points_per_decade > 0 ? options.points_per_decade : 20;
    r.linear_points = options.linear_points > 1 ? options.linear_points : 11;
    r.n_values = options.n_values.empty() ? std::move(default_ns) : options.n_values;
    r.svg = options.svg;
    r.threads = std::max(1, options.threads);
    return r;
}

const std::vector<BatchScheme>& all_schemes() {
    static const std::vector<BatchScheme> schemes = {
        BatchScheme::alphabetical(),
        BatchScheme::hamiltonian(BreakPolicy::Arbitrary),
        BatchScheme::hamiltonian(BreakPolicy::WeakestLink),
        BatchScheme::ranked_pairs(),
    };
    return schemes;
}

struct AttackOutcome {
    CycleStats stats;
    std::vector<TxId> trapped;
    bool any = false;
    bool all = false;
};

AttackOutcome evaluate_attack(const SimResult& result, const WeightedTournament& t) {
    AttackOutcome outcome;
    outcome.stats = cycle_stats(t);

    std::vector<LocalOrdering> projected;
    for (const LocalOrdering& ordering : result.graph_orderings()) {
        LocalOrdering p{ordering.node, {}};
        for (const TxId& id : ordering.sequence)
            if (result.registry.at(id).origin == Origin::Honest)
                p.sequence.push_back(id);
        projected.push_back(std::move(p));
    }
    auto projection = build_tournament(projected);
    auto honest = result.registry.honest_ids();
    outcome.trapped = trapped_honest_ids(t, projection, honest);

    std::set<TxId> trapped_set(outcome.trapped.begin(), outcome.trapped.end());
    outcome.any = !outcome.trapped.empty();
    outcome.all = true;
    for (const TxId& id : result.honest_in_pause())
        if (!trapped_set.count(id)) outcome.all = false;
    return outcome;
}

PlotSeries series_from_summary(const std::vector<SummaryRow>& summary,
                               const std::string& file, const std::string& scheme,
                               const std::string& instance, const std::string& label,
                               double (*pick)(const SummaryRow&)) {
    PlotSeries series{label, {}};
    for (const SummaryRow& row : summary)
        if (row.file == file && row.scheme == scheme && row.instance == instance)
            series.points.emplace_back(row.value, pick(row));
    return series;
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

void preset_honest_env(const PresetOptions& options, Emitter& em) {
    Resolved o = resolve(options, 100, {21, 101});
    auto axis = logspace(-2, 3, o.per_decade);
    for (int n : o.n_values) {
        const std::string stem = "honest_env_n" + std::to_string(n);
        for (std::size_t point = 0; point < axis.size(); ++point) {
            const double r = axis[point];
            auto rows = run_point(o.trials, o.threads, [&](int trial) {
                SimConfig cfg;
                cfg.n = n;
                cfg.r = r;
                cfg.r_internal = 0.0;
                cfg.honest_count = 100;
                cfg.seed = trial_seed(o.seed, stem, static_cast<int>(point), trial);
                auto result = run(cfg);
                auto t = build_tournament(result.graph_orderings());
                auto stats = cycle_stats(t);
                std::vector<TrialMetrics> out;
                for (const BatchScheme& scheme : all_schemes()) {
                    auto final = final_ordering(t, scheme, &result.registry);
                    TrialMetrics m;
                    m.trial = trial;
                    m.seed = cfg.seed;
                    m.n = n;
                    m.r = r;
                    m.scheme = scheme.name();
                    m.cycles = stats.count;
                    m.txs_in_cycles = stats.txs_in_cycles;
                    m.has_accuracy = true;
                    m.accuracy = pair_accuracy(final, result.ground_truth);
                    out.push_back(std::move(m));
                }
                return out;
            });
            for (const BatchScheme& scheme : all_schemes()) {
                std::vector<TrialMetrics> subset;
                for (const TrialMetrics& row : rows)
                    if (row.scheme == scheme.name()) subset.push_back(row);
                em.add_summary(summarize(stem, "r", r, n, "", scheme.name(), subset));
            }
            em.add_trials(stem, std::move(rows));
        }
    }
    if (!o.svg) return;
    auto pick_prob = [](const SummaryRow& s) { return s.cycle_prob; };
    auto pick_txs = [](const SummaryRow& s) { return s.mean_txs_in_cycles; };
    auto pick_acc = [](const SummaryRow& s) { return s.mean_accuracy.value_or(0.0); };
    std::vector<PlotSeries> prob, txs;
    for (int n : o.n_values) {
        const std::string stem = "honest_env_n" + std::to_string(n);
        prob.push_back(series_from_summary(em.summary(), stem, "ranked-pairs", "",
                                           "n = " + std::to_string(n), pick_prob));
        txs.push_back(series_from_summary(em.summary(), stem, "ranked-pairs", "",
                                          "n = " + std::to_string(n), pick_txs));
        std::vector<PlotSeries> acc;
        for (const BatchScheme& scheme : all_schemes())
            acc.push_back(series_from_summary(em.summary(), stem, scheme.name(), "",
                                              scheme.name(), pick_acc));
        em.add_text("honest_env_accuracy_n" + std::to_string(n) + ".svg",
                    line_chart_svg("Correctly ordered pairs (n = " + std::to_string(n) + ")",
                                   "external network ratio r", "fraction correct", true, acc));
    }
    em.add_text("honest_env_cycle_prob.svg",
                line_chart_svg("Chance of a cycle", "external network ratio r",
                               "fraction of runs", true, prob));
    em.add_text("honest_env_txs_in_cycles.svg",
                line_chart_svg("Transactions in cycles", "external network ratio r",
                               "mean transactions", true, txs));
}

void preset_attack_trap(const PresetOptions& options, Emitter& em) {
    Resolved o = resolve(options, 100, {21, 101});
    auto axis = logspace(-2, 0, o.per_decade);
    for (int n : o.n_values) {
        for (double tau : {10.0, 50.0}) {
            const std::string stem = "attack_trap_tau" +
                                     std::to_string(static_cast<int>(tau)) + "_n" +
                                     std::to_string(n);
            for (std::size_t point = 0; point < axis.size(); ++point) {
                const double r = axis[point];
                auto rows = run_point(o.trials, o.threads, [&](int trial) {
                    SimConfig cfg;
                    cfg.n = n;
                    cfg.r = r;
                    cfg.r_internal = 0.0;
                    // An ongoing client process: on average tau honest
                    // transactions land inside the pause.
                    cfg.honest_count = 100;
                    cfg.attack = two_tx_plan(n, tau);
                    cfg.seed = trial_seed(o.seed, stem, static_cast<int>(point), trial);
                    auto result = run(cfg);
                    auto t = build_tournament(result.graph_orderings());
                    auto outcome = evaluate_attack(result, t);
                    TrialMetrics m;
                    m.trial = trial;
                    m.seed = cfg.seed;
                    m.n = n;
                    m.r = r;
                    m.tau = tau;
                    m.cycles = outcome.stats.count;
                    m.txs_in_cycles = outcome.stats.txs_in_cycles;
                    m.trapped = static_cast<int>(outcome.trapped.size());
                    m.success_any = outcome.any;
                    m.success_all = outcome.all;
                    return std::vector<TrialMetrics>{std::move(m)};
                });
                em.add_summary(summarize(stem, "r", r, n,
                                         "tau=" + std::to_string(static_cast<int>(tau)),
                                         "none", rows));
                em.add_trials(stem, std::move(rows));
            }
        }
    }
    if (!o.svg) return;
    auto pick_trapped = [](const SummaryRow& s) { return s.mean_trapped; };
    for (int n : o.n_values) {
        std::vector<PlotSeries> series;
        for (int tau : {10, 50}) {
            const std::string stem = "attack_trap_tau" + std::to_string(tau) + "_n" +
                                     std::to_string(n);
            series.push_back(series_from_summary(em.summary(), stem, "none",
                                                 "tau=" + std::to_string(tau),
                                                 "tau = " + std::to_string(tau),
                                                 pick_trapped));
        }
        em.add_text("attack_trap_trapped_n" + std::to_string(n) + ".svg",
                    line_chart_svg("Honest transactions trapped (n = " + std::to_string(n) + ")",
                                   "external network ratio r", "mean trapped", true, series));
    }
}

void preset_reorder(const PresetOptions& options, Emitter& em) {
    Resolved o = resolve(options, 1000, {21, 101});
    auto axis = linspace(0.0, 0.5, o.linear_points);
    // Pause well beyond the honest burst: success then measures reordering
    // sensitivity rather than races at the pause boundary.
    const double tau = 20.0;
    struct Instance {
        const char* kind;
        int clones;
    };
    const Instance instances[] = {{"two_tx", 1}, {"two_tx", 2}, {"four_tx", 1}, {"four_tx", 2}};
    for (int n : o.n_values) {
        for (const Instance& instance : instances) {
            const std::string tag = std::string(instance.kind) + "_k" +
                                    std::to_string(instance.clones);
            const std::string stem = "reorder_" + tag + "_n" + std::to_string(n);
            AttackPlan base = std::string(instance.kind) == "two_tx" ? two_tx_plan(n, tau)
                                                                     : four_tx_plan(n, tau);
            AttackPlan plan = clone_plan(base, instance.clones);
            for (std::size_t point = 0; point < axis.size(); ++point) {
                const double p = axis[point];
                auto rows = run_point(o.trials, o.threads, [&](int trial) {
                    SimConfig cfg;
                    cfg.n = n;
                    cfg.r = 0.1;
                    cfg.r_internal = 0.0;
                    cfg.honest_count = 10;
                    cfg.reorder_p = p;
                    cfg.attack = plan;
                    cfg.seed = trial_seed(o.seed, stem, static_cast<int>(point), trial);
                    auto result = run(cfg);
                    auto t = build_tournament(result.graph_orderings());
                    auto outcome = evaluate_attack(result, t);
                    TrialMetrics m;
                    m.trial = trial;
                    m.seed = cfg.seed;
                    m.n = n;
                    m.r = cfg.r;
                    m.p = p;
                    m.tau = tau;
                    m.cycles = outcome.stats.count;
                    m.txs_in_cycles = outcome.stats.txs_in_cycles;
                    m.trapped = static_cast<int>(outcome.trapped.size());
                    m.success_any = outcome.any;
                    m.success_all = outcome.all;
                    return std::vector<TrialMetrics>{std::move(m)};
                });
                em.add_summary(summarize(stem, "p", p, n, tag, "none", rows));
                em.add_trials(stem, std::move(rows));
            }
        }
    }
    if (!o.svg) return;
    auto pick_all = [](const SummaryRow& s) { return s.success_all_rate; };
    for (int n : o.n_values) {
        std::vector<PlotSeries> series;
        for (const Instance& instance : instances) {
            const std::string tag = std::string(instance.kind) + "_k" +
                                    std::to_string(instance.clones);
            series.push_back(series_from_summary(
                em.summary(), "reorder_" + tag + "_n" + std::to_string(n), "none", tag,
                tag, pick_all));
        }
        em.add_text("reorder_success_n" + std::to_string(n) + ".svg",
                    line_chart_svg("Attack success under reordering (n = " +
                                       std::to_string(n) + ")",
                                   "swap probability p", "success rate", false, series));
    }
}

void preset_non_injective(const PresetOptions& options, Emitter& em) {
    Resolved o = resolve(options, 100, {21, 101});
    auto axis = logspace(-2, 2, o.per_decade);
    for (int n : o.n_values) {
        const int reversal_nodes = n / 4 - 1;
        std::set<NodeId> adversarial;
        for (int i = 0; i < reversal_nodes; ++i) adversarial.insert(i);
        const std::string reversed_stem = "non_injective_reversed_n" + std::to_string(n);
        const std::string truthful_stem = "non_injective_truthful_n" + std::to_string(n);
        for (std::size_t point = 0; point < axis.size(); ++point) {
            const double r = axis[point];
            auto rows = run_point(o.trials, o.threads, [&](int trial) {
                SimConfig cfg;
                cfg.n = n;
                cfg.r = r;
                cfg.r_internal = 0.0;
                cfg.honest_count = 100;
                cfg.seed = trial_seed(o.seed, "non_injective_n" + std::to_string(n),
                                      static_cast<int>(point), trial);
                auto result = run(cfg);
                auto truthful = cycle_stats(build_tournament(result.orderings));
                auto reversed = cycle_stats(build_tournament(
                    reverse_orderings(result.orderings, adversarial)));
                TrialMetrics rev;
                rev.trial = trial;
                rev.seed = cfg.seed;
                rev.n = n;
                rev.r = r;
                rev.scheme = "reversed";
                rev.cycles = reversed.count;
                rev.txs_in_cycles = reversed.txs_in_cycles;
                TrialMetrics tru = rev;
                tru.scheme = "truthful";
                tru.cycles = truthful.count;
                tru.txs_in_cycles = truthful.txs_in_cycles;
                return std::vector<TrialMetrics>{std::move(rev), std::move(tru)};
            });
            std::vector<TrialMetrics> reversed_rows, truthful_rows;
            for (TrialMetrics& row : rows)
                (row.scheme == "reversed" ? reversed_rows : truthful_rows)
                    .push_back(std::move(row));
            em.add_summary(summarize(reversed_stem, "r", r, n, "reversed", "none",
                                     reversed_rows));
            em.add_summary(summarize(truthful_stem, "r", r, n, "truthful", "none",
                                     truthful_rows));
            for (TrialMetrics& row : reversed_rows) row.scheme = "none";
            for (TrialMetrics& row : truthful_rows) row.scheme = "none";
            em.add_trials(reversed_stem, std::move(reversed_rows));
            em.add_trials(truthful_stem, std::move(truthful_rows));
        }
    }
    if (!o.svg) return;
    auto pick_txs = [](const SummaryRow& s) { return s.mean_txs_in_cycles; };
    for (int n : o.n_values) {
        std::vector<PlotSeries> series = {
            series_from_summary(em.summary(), "non_injective_reversed_n" + std::to_string(n),
                                "none", "reversed", "reversing adversary", pick_txs),
            series_from_summary(em.summary(), "non_injective_truthful_n" + std::to_string(n),
                                "none", "truthful", "truthful reports", pick_txs)};
        em.add_text("non_injective_txs_in_cycles_n" + std::to_string(n) + ".svg",
                    line_chart_svg("Non-injective attack (n = " + std::to_string(n) + ")",
                                   "external network ratio r",
                                   "mean transactions in cycles", true, series));
    }
}

void preset_mitigate_ranked(const PresetOptions& options, Emitter& em) {
    Resolved o = resolve(options, 100, {21, 101});
    auto axis = logspace(-3, 0, o.per_decade);
    const double tau = 10.0;
    for (int n : o.n_values) {
        const std::string stem = "mitigate_ranked_n" + std::to_string(n);
        const std::string overall_stem = "mitigate_ranked_overall_n" + std::to_string(n);
        for (std::size_t point = 0; point < axis.size(); ++point) {
            const double r = axis[point];
            auto rows = run_point(o.trials, o.threads, [&](int trial) {
                SimConfig cfg;
                cfg.n = n;
                cfg.r = r;
                cfg.r_internal = 0.0;
                cfg.honest_count = 20;
                cfg.attack = two_tx_plan(n, tau);
                cfg.seed = trial_seed(o.seed, stem, static_cast<int>(point), trial);
                auto result = run(cfg);
                auto t = build_tournament(result.graph_orderings());
                auto outcome = evaluate_attack(result, t);

                // Scheme error is judged on the honest transactions that
                // ended up inside a cycle: outside them every scheme outputs
                // the condensation order.
                std::set<TxId> in_cycle;
                for (const auto& cycle : condorcet_cycles(t))
                    in_cycle.insert(cycle.begin(), cycle.end());
                std::vector<TxId> cycle_honest;
                for (const TxId& id : result.registry.honest_ids())
                    if (in_cycle.count(id)) cycle_honest.push_back(id);
                auto cycle_truth = ground_truth_order(result.registry, cycle_honest);

                std::vector<TrialMetrics> out;
                for (const BatchScheme& scheme : all_schemes()) {
                    auto final = final_ordering(t, scheme, &result.registry);
                    TrialMetrics m;
                    m.trial = trial;
                    m.seed = cfg.seed;
                    m.n = n;
                    m.r = r;
                    m.tau = tau;
                    m.scheme = scheme.name();
                    m.cycles = outcome.stats.count;
                    m.txs_in_cycles = outcome.stats.txs_in_cycles;
                    m.trapped = static_cast<int>(outcome.trapped.size());
                    m.success_any = outcome.any;
                    m.success_all = outcome.all;
                    m.has_accuracy = true;
                    m.accuracy = pair_accuracy(final, cycle_truth);
                    TrialMetrics overall = m;
                    overall.accuracy = pair_accuracy(final, result.ground_truth);
                    overall.scheme = scheme.name();
                    out.push_back(std::move(m));
                    out.push_back(std::move(overall));
                }
                return out;
            });
            std::vector<TrialMetrics> cycle_rows, overall_rows;
            for (std::size_t i = 0; i < rows.size(); ++i)
                (i % 2 == 0 ? cycle_rows : overall_rows).push_back(std::move(rows[i]));
            for (const BatchScheme& scheme : all_schemes()) {
                std::vector<TrialMetrics> subset;
                for (const TrialMetrics& row : cycle_rows)
                    if (row.scheme == scheme.name()) subset.push_back(row);
                em.add_summary(summarize(stem, "r", r, n, "cycle", scheme.name(), subset));
                subset.clear();
                for (const TrialMetrics& row : overall_rows)
                    if (row.scheme == scheme.name()) subset.push_back(row);
                em.add_summary(
                    summarize(overall_stem, "r", r, n, "overall", scheme.name(), subset));
            }
            em.add_trials(stem, std::move(cycle_rows));
            em.add_trials(overall_stem, std::move(overall_rows));
        }
    }
    if (!o.svg) return;
    auto pick_error = [](const SummaryRow& s) { return 1.0 - s.mean_accuracy.value_or(1.0); };
    for (int n : o.n_values) {
        std::vector<PlotSeries> series;
        for (const BatchScheme& scheme : all_schemes())
            series.push_back(series_from_summary(em.summary(),
                                                 "mitigate_ranked_n" + std::to_string(n),
                                                 scheme.name(), "cycle", scheme.name(),
                                                 pick_error));
        em.add_text("mitigate_ranked_error_n" + std::to_string(n) + ".svg",
                    line_chart_svg("Batch-ordering error (n = " + std::to_string(n) + ")",
                                   "external network ratio r",
                                   "pair error among trapped", true, series));
    }
}

void preset_mitigate_broadcast(const PresetOptions& options, Emitter& em) {
    Resolved o = resolve(options, 100, {21, 101});
    auto axis = logspace(-2, 3, o.per_decade);
    const double tau = 10.0;
    for (int n : o.n_values) {
        const std::string tag = "mitigate_broadcast_n" + std::to_string(n);
        for (std::size_t point = 0; point < axis.size(); ++point) {
            const double r_internal = axis[point];
            struct Setting {
                const char* name;
                bool attack;
                bool broadcast;
            };
            const Setting settings[] = {{"honest", false, false},
                                        {"attack", true, false},
                                        {"guarded", true, true}};
            for (const Setting& setting : settings) {
                const std::string stem = std::string("mitigate_broadcast_") +
                                         setting.name + "_n" + std::to_string(n);
                auto rows = run_point(o.trials, o.threads, [&](int trial) {
                    SimConfig cfg;
                    cfg.n = n;
                    cfg.r = 0.1;
                    cfg.r_internal = setting.broadcast ? r_internal : 0.0;
                    cfg.honest_count = 20;
                    cfg.broadcast = setting.broadcast;
                    if (setting.attack) cfg.attack = two_tx_plan(n, tau);
                    // One seed per (point, trial) shared by all settings.
                    cfg.seed = trial_seed(o.seed, tag, static_cast<int>(point), trial);
                    auto result = run(cfg);
                    auto t = build_tournament(result.graph_orderings());
                    TrialMetrics m;
                    m.trial = trial;
                    m.seed = cfg.seed;
                    m.n = n;
                    m.r = cfg.r;
                    m.r_internal = r_internal;
                    m.tau = setting.attack ? tau : 0.0;
                    auto stats = cycle_stats(t);
                    m.cycles = stats.count;
                    m.txs_in_cycles = stats.txs_in_cycles;
                    if (setting.attack) {
                        auto outcome = evaluate_attack(result, t);
                        m.trapped = static_cast<int>(outcome.trapped.size());
                        m.success_any = outcome.any;
                        m.success_all = outcome.all;
                    }
                    return std::vector<TrialMetrics>{std::move(m)};
                });
                em.add_summary(
                    summarize(stem, "r_internal", r_internal, n, setting.name, "none", rows));
                em.add_trials(stem, std::move(rows));
            }
        }
    }
    if (!o.svg) return;
    auto pick_trapped = [](const SummaryRow& s) { return s.mean_trapped; };
    auto pick_txs = [](const SummaryRow& s) { return s.mean_txs_in_cycles; };
    for (int n : o.n_values) {
        const std::string suffix = "_n" + std::to_string(n);
        std::vector<PlotSeries> series = {
            series_from_summary(em.summary(), "mitigate_broadcast_attack" + suffix, "none",
                                "attack", "attack, no broadcast", pick_trapped),
            series_from_summary(em.summary(), "mitigate_broadcast_guarded" + suffix, "none",
                                "guarded", "attack, broadcast", pick_trapped),
            series_from_summary(em.summary(), "mitigate_broadcast_honest" + suffix, "none",
                                "honest", "honest baseline (txs in cycles)", pick_txs)};
        em.add_text("mitigate_broadcast_trapped" + suffix + ".svg",
                    line_chart_svg("Broadcast mitigation (n = " + std::to_string(n) + ")",
                                   "internal network ratio r'", "mean trapped", true,
                                   series));
    }
}

using PresetFn = void (*)(const PresetOptions&, Emitter&);

const std::map<std::string, PresetFn>& preset_table() {
    static const std::map<std::string, PresetFn> table = {
        {"honest-env", preset_honest_env},
        {"attack-trap", preset_attack_trap},
        {"reorder", preset_reorder},
        {"non-injective", preset_non_injective},
        {"mitigate-ranked", preset_mitigate_ranked},
        {"mitigate-broadcast", preset_mitigate_broadcast},
    };
    return table;
}

}  // namespace

std::uint64_t trial_seed(std::uint64_t master, const std::string& tag, int point,
                         int trial) {
    return derive(derive(derive(master, tag), static_cast<std::uint64_t>(point)),
                  static_cast<std::uint64_t>(trial));
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : preset_table()) out.push_back(name);
        return out;
    }();
    return names;
}

void run_preset(const std::string& name, const PresetOptions& options) {
    auto it = preset_table().find(name);
    if (it == preset_table().end())
        throw std::invalid_argument("unknown preset: " + name);
    Emitter emitter{fs::path(options.out_dir)};
    it->second(options, emitter);
    std::string summary_name = name + "_summary.csv";
    std::replace(summary_name.begin(), summary_name.end(), '-', '_');
    emitter.flush(summary_name);
}

void run_single(const SimConfig& config, const SingleRunOptions& options) {
    auto result = run(config);
    auto t = build_tournament(result.graph_orderings());

    fs::path dir(options.out_dir);
    fs::create_directories(dir);
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(dir / name, std::ios::binary);
        if (!out) throw std::runtime_error("cannot write " + (dir / name).string());
        out << content;
    };

    std::string txs = "id,origin,submit_time,keys,clone_group\n";
    for (const auto& [id, tx] : result.registry) txs += to_record(tx) + "\n";
    write("transactions.csv", txs);

    std::string orderings = "node,position,tx\n";
    for (const LocalOrdering& ordering : result.orderings)
        for (std::size_t i = 0; i < ordering.sequence.size(); ++i)
            orderings += std::to_string(ordering.node) + "," + std::to_string(i) + "," +
                         ordering.sequence[i] + "\n";
    write("orderings.csv", orderings);

    std::string log = "node,tx,time,via\n";
    for (const DeliveryRecord& record : result.delivery_log)
        log += std::to_string(record.node) + "," + record.tx + "," +
               format_double(record.time) + "," + to_string(record.via) + "\n";
    write("delivery_log.csv", log);

    write("tournament.dot", to_dot(t, &result.registry));
    write("config.ini", to_config_text(config));

    std::string truth;
    for (const TxId& id : result.ground_truth) truth += id + "\n";
    write("ground_truth.txt", truth);

    std::string metrics_csv = trial_metrics_header() + "\n";
    auto stats = cycle_stats(t);
    for (const BatchScheme& scheme : options.schemes) {
        auto final = final_ordering(t, scheme, &result.registry);
        std::string final_text;
        for (const TxId& id : final) final_text += id + "\n";
        std::string scheme_file = scheme.name();
        std::replace(scheme_file.begin(), scheme_file.end(), ':', '_');
        write("final_" + scheme_file + ".txt", final_text);

        TrialMetrics m;
        m.trial = 0;
        m.seed = config.seed;
        m.n = config.n;
        m.r = config.r;
        m.r_internal = config.broadcast ? config.r_internal : 0.0;
        m.p = config.reorder_p;
        m.tau = config.attack ? config.attack->pause : 0.0;
        m.scheme = scheme.name();
        m.cycles = stats.count;
        m.txs_in_cycles = stats.txs_in_cycles;
        if (config.attack) {
            auto outcome = evaluate_attack(result, t);
            m.trapped = static_cast<int>(outcome.trapped.size());
            m.success_any = outcome.any;
            m.success_all = outcome.all;
        }
        m.has_accuracy = true;
        m.accuracy = pair_accuracy(final, result.ground_truth);
        metrics_csv += to_csv_row(m) + "\n";
    }
    write("metrics.csv", metrics_csv);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t begin = s.find_first_not_of(" \t\r");
    std::size_t end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    return s.substr(begin, end - begin + 1);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": " + value);
    }
}

bool parse_flag(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("bad boolean value for " + key + ": " + value);
}

}  // namespace

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);

    SimConfig config;
    std::string attack_kind;
    double pause = 10.0;
    int clones = 1;

    std::string line, section = "sim";
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        if (text.front() == '[' && text.back() == ']') {
            section = trim(text.substr(1, text.size() - 2));
            if (section != "sim" && section != "attack")
                throw std::invalid_argument("unknown config section [" + section + "]");
            continue;
        }
        std::size_t eq = text.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(line_number) +
                                        " is not key = value");
        std::string key = trim(text.substr(0, eq));
        std::string value = trim(text.substr(eq + 1));
        if (section == "sim") {
            if (key == "n")
                config.n = static_cast<int>(parse_number(key, value));
            else if (key == "r")
                config.r = parse_number(key, value);
            else if (key == "r_internal")
                config.r_internal = parse_number(key, value);
            else if (key == "honest_count")
                config.honest_count = static_cast<int>(parse_number(key, value));
            else if (key == "p")
                config.reorder_p = parse_number(key, value);
            else if (key == "broadcast")
                config.broadcast = parse_flag(key, value);
            else if (key == "seed")
                config.seed = static_cast<std::uint64_t>(std::stoull(value));
            else if (key == "orderings_used")
                config.orderings_used = static_cast<int>(parse_number(key, value));
            else
                throw std::invalid_argument("unknown [sim] key: " + key);
        } else {
            if (key == "kind")
                attack_kind = value;
            else if (key == "pause")
                pause = parse_number(key, value);
            else if (key == "clones")
                clones = static_cast<int>(parse_number(key, value));
            else if (key == "gap")
                config.gap = parse_number(key, value);
            else if (key == "start")
                config.attack_start = parse_number(key, value);
            else
                throw std::invalid_argument("unknown [attack] key: " + key);
        }
    }
    if (!attack_kind.empty()) {
        AttackPlan plan;
        if (attack_kind == "two_tx")
            plan = two_tx_plan(config.n, pause);
        else if (attack_kind == "four_tx")
            plan = four_tx_plan(config.n, pause);
        else
            throw std::invalid_argument("unknown attack kind: " + attack_kind);
        config.attack = clone_plan(plan, clones);
    }
    config.validate();
    return config;
}

std::string to_config_text(const SimConfig& config) {
    std::string text = "[sim]\n";
    text += "n = " + std::to_string(config.n) + "\n";
    text += "r = " + format_double(config.r) + "\n";
    text += "r_internal = " + format_double(config.r_internal) + "\n";
    text += "honest_count = " + std::to_string(config.honest_count) + "\n";
    text += "p = " + format_double(config.reorder_p) + "\n";
    text += std::string("broadcast = ") + (config.broadcast ? "true" : "false") + "\n";
    text += "seed = " + std::to_string(config.seed) + "\n";
    text += "orderings_used = " + std::to_string(config.orderings_used) + "\n";
    if (config.attack) {
        text += "\n[attack]\n";
        text += "kind = " + config.attack->kind + "\n";
        text += "pause = " + format_double(config.attack->pause) + "\n";
        text += "clones = " + std::to_string(config.attack->clones) + "\n";
        text += "gap = " + format_double(config.gap) + "\n";
        text += "start = " + format_double(config.attack_start) + "\n";
    }
    return text;
}

}  // namespace fairorder
