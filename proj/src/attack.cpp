#include "fairorder/attack.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairorder {

std::vector<TxId> AttackPlan::tx_ids() const {
    std::set<TxId> ids;
    for (const auto& sequence : init) ids.insert(sequence.begin(), sequence.end());
    for (const auto& sequence : finalize) ids.insert(sequence.begin(), sequence.end());
    return {ids.begin(), ids.end()};
}

void AttackPlan::validate(int n) const {
    partition.validate(n);
    if (init.size() != partition.parts.size() ||
        finalize.size() != partition.parts.size())
        throw std::invalid_argument("plan sequences do not match partition parts");
    if (!(pause > 0.0)) throw std::invalid_argument("pause must be positive");
    if (clones < 1) throw std::invalid_argument("clones must be >= 1");
    for (std::size_t i = 0; i < init.size(); ++i) {
        std::set<TxId> seen(init[i].begin(), init[i].end());
        if (seen.size() != init[i].size())
            throw std::invalid_argument("duplicate transaction in init sequence");
        for (const TxId& id : finalize[i])
            if (!seen.insert(id).second)
                throw std::invalid_argument("transaction " + id +
                                            " repeated for one part");
    }
}

AttackPlan two_tx_plan(int n, double pause) {
    if (n < 3) throw std::invalid_argument("two_tx plan needs at least 3 nodes");
    AttackPlan plan;
    plan.kind = "two_tx";
    plan.partition = near_equal_partition(n, 3);
    plan.init = {{"A", "B"}, {"B"}, {}};
    plan.finalize = {{}, {"A"}, {"A", "B"}};
    plan.pause = pause;
    plan.clone_group = {{"A", "A"}, {"B", "B"}};
    plan.validate(n);
    return plan;
}

AttackPlan four_tx_plan(int n, double pause) {
    if (n < 4) throw std::invalid_argument("four_tx plan needs at least 4 nodes");
    AttackPlan plan;
    plan.kind = "four_tx";
    plan.partition = near_equal_partition(n, 4);
    plan.init = {{"A", "B"}, {"B", "C"}, {"C", "D"}, {"D", "A"}};
    plan.finalize = {{"C", "D"}, {"D", "A"}, {"A", "B"}, {"B", "C"}};
    plan.pause = pause;
    plan.clone_group = {{"A", "A"}, {"B", "B"}, {"C", "C"}, {"D", "D"}};
    plan.validate(n);
    return plan;
}

AttackPlan clone_plan(const AttackPlan& plan, int k) {
    if (k < 1) throw std::invalid_argument("clone count must be >= 1");
    if (k == 1) return plan;
    AttackPlan cloned = plan;
    cloned.clones = plan.clones * k;
    cloned.clone_group.clear();
    auto expand = [&](const std::vector<TxId>& sequence) {
        std::vector<TxId> out;
        out.reserve(sequence.size() * k);
        for (const TxId& id : sequence) {
            const TxId base = plan.clone_group.count(id) ? plan.clone_group.at(id) : id;
            for (int c = 1; c <= k; ++c) {
                TxId clone = id + std::to_string(c);
                out.push_back(clone);
                cloned.clone_group.emplace(std::move(clone), base);
            }
        }
        return out;
    };
    for (auto& sequence : cloned.init) sequence = expand(sequence);
    for (auto& sequence : cloned.finalize) sequence = expand(sequence);
    cloned.validate(plan.partition.node_count());
    return cloned;
}

std::vector<Transmission> schedule(const AttackPlan& plan, double start_time,
                                   double gap) {
    if (!(gap > 0.0)) throw std::invalid_argument("gap must be positive");
    std::vector<Transmission> out;
    for (std::size_t part = 0; part < plan.partition.parts.size(); ++part) {
        for (std::size_t slot = 0; slot < plan.init[part].size(); ++slot)
            out.push_back({start_time + gap * static_cast<double>(slot),
                           static_cast<int>(part), plan.init[part][slot], 1,
                           static_cast<int>(slot)});
        for (std::size_t slot = 0; slot < plan.finalize[part].size(); ++slot)
            out.push_back({start_time + plan.pause + gap * static_cast<double>(slot),
                           static_cast<int>(part), plan.finalize[part][slot], 3,
                           static_cast<int>(slot)});
    }
    std::sort(out.begin(), out.end(), [](const Transmission& a, const Transmission& b) {
        if (a.time != b.time) return a.time < b.time;
        if (a.part != b.part) return a.part < b.part;
        return a.slot < b.slot;
    });
    return out;
}

std::vector<LocalOrdering> reverse_orderings(std::vector<LocalOrdering> orderings,
                                             const std::set<NodeId>& adversarial) {
    for (LocalOrdering& ordering : orderings)
        if (adversarial.count(ordering.node))
            std::reverse(ordering.sequence.begin(), ordering.sequence.end());
    return orderings;
}

}  // namespace fairorder
