#include "fairorder/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <stdexcept>

namespace fairorder {

double pair_accuracy(std::span<const TxId> final_order, std::span<const TxId> truth) {
    if (truth.size() < 2) return 1.0;
    std::map<TxId, int> position;
    for (std::size_t i = 0; i < final_order.size(); ++i)
        position.emplace(final_order[i], static_cast<int>(i));
    std::vector<int> final_positions;
    final_positions.reserve(truth.size());
    for (const TxId& id : truth) {
        auto it = position.find(id);
        if (it == position.end())
            throw std::invalid_argument("id " + id + " missing from final ordering");
        final_positions.push_back(it->second);
    }
    const std::size_t m = truth.size();
    std::size_t correct = 0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (final_positions[i] < final_positions[j]) ++correct;
    return static_cast<double>(correct) / (static_cast<double>(m) * (m - 1) / 2.0);
}

std::vector<TxId> trapped_honest_ids(const WeightedTournament& with_attack,
                                     const WeightedTournament& projection,
                                     std::span<const TxId> honest_ids) {
    std::set<TxId> in_attack_cycle;
    for (const auto& cycle : condorcet_cycles(with_attack))
        in_attack_cycle.insert(cycle.begin(), cycle.end());
    std::set<TxId> in_projection_cycle;
    for (const auto& cycle : condorcet_cycles(projection))
        in_projection_cycle.insert(cycle.begin(), cycle.end());

    std::vector<TxId> trapped;
    for (const TxId& id : honest_ids)
        if (in_attack_cycle.count(id) && !in_projection_cycle.count(id))
            trapped.push_back(id);
    return trapped;
}

std::vector<TxId> trapped_honest_ids(const SimResult& result) {
    if (!result.config.attack)
        throw std::invalid_argument("trapped_honest requires an attack run");
    auto orderings = result.graph_orderings();
    auto with_attack = build_tournament(orderings);

    std::vector<LocalOrdering> projected;
    projected.reserve(orderings.size());
    for (const LocalOrdering& ordering : orderings) {
        LocalOrdering p{ordering.node, {}};
        for (const TxId& id : ordering.sequence)
            if (result.registry.at(id).origin == Origin::Honest)
                p.sequence.push_back(id);
        projected.push_back(std::move(p));
    }
    auto projection = build_tournament(projected);
    auto honest = result.registry.honest_ids();
    return trapped_honest_ids(with_attack, projection, honest);
}

int trapped_honest(const SimResult& result) {
    return static_cast<int>(trapped_honest_ids(result).size());
}

std::pair<bool, bool> success(const SimResult& result) {
    auto trapped = trapped_honest_ids(result);
    std::set<TxId> trapped_set(trapped.begin(), trapped.end());
    bool all = true;
    for (const TxId& id : result.honest_in_pause())
        if (!trapped_set.count(id)) all = false;
    return {!trapped.empty(), all};
}

CycleStats cycle_stats(const WeightedTournament& t) {
    CycleStats stats;
    for (const auto& cycle : condorcet_cycles(t)) {
        ++stats.count;
        stats.sizes.push_back(static_cast<int>(cycle.size()));
        stats.txs_in_cycles += static_cast<int>(cycle.size());
    }
    return stats;
}

std::string format_double(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string trial_metrics_header() {
    return "trial,seed,n,r,r_internal,p,tau,scheme,cycles,txs_in_cycles,trapped,"
           "success_any,success_all,accuracy";
}

std::string to_csv_row(const TrialMetrics& m) {
    std::string row;
    row += std::to_string(m.trial);
    row += ',';
    row += std::to_string(m.seed);
    row += ',';
    row += std::to_string(m.n);
    row += ',';
    row += format_double(m.r);
    row += ',';
    row += format_double(m.r_internal);
    row += ',';
    row += format_double(m.p);
    row += ',';
    row += format_double(m.tau);
    row += ',';
    row += m.scheme;
    row += ',';
    row += std::to_string(m.cycles);
    row += ',';
    row += std::to_string(m.txs_in_cycles);
    row += ',';
    row += std::to_string(m.trapped);
    row += ',';
    row += m.success_any ? '1' : '0';
    row += ',';
    row += m.success_all ? '1' : '0';
    row += ',';
    if (m.has_accuracy) row += format_double(m.accuracy);
    return row;
}

}  // namespace fairorder
