#include "fairorder/netsim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "fairorder/rng.hpp"

namespace fairorder {

void SimConfig::validate() const {
    if (n < 3) throw std::invalid_argument("n must be >= 3");
    if (!(r > 0.0)) throw std::invalid_argument("external network ratio must be > 0");
    if (honest_count < 0) throw std::invalid_argument("honest_count must be >= 0");
    if (!(reorder_p >= 0.0 && reorder_p <= 0.5))
        throw std::invalid_argument("reorder probability must be in [0, 0.5]");
    if (broadcast && !(r_internal > 0.0))
        throw std::invalid_argument("internal network ratio must be > 0 with broadcast");
    if (orderings_used < 0 || orderings_used > n)
        throw std::invalid_argument("orderings_used must be in [0, n]");
    if (attack) {
        attack->validate(n);
        if (!(gap > 0.0)) throw std::invalid_argument("burst gap must be > 0");
        if (!std::isfinite(attack_start))
            throw std::invalid_argument("attack start must be finite");
    }
}

std::string to_string(Via via) { return via == Via::Direct ? "direct" : "gossip"; }

std::vector<LocalOrdering> SimResult::honest_projection() const {
    std::vector<LocalOrdering> projected;
    projected.reserve(orderings.size());
    for (const LocalOrdering& ordering : orderings) {
        LocalOrdering p{ordering.node, {}};
        for (const TxId& id : ordering.sequence)
            if (registry.at(id).origin == Origin::Honest) p.sequence.push_back(id);
        projected.push_back(std::move(p));
    }
    return projected;
}

std::vector<TxId> SimResult::honest_in_pause() const {
    std::vector<TxId> out;
    if (!pause_window) return out;
    for (const auto& [id, tx] : registry)
        if (tx.origin == Origin::Honest && tx.submit_time > pause_window->begin &&
            tx.submit_time < pause_window->end)
            out.push_back(id);
    return out;
}

std::vector<LocalOrdering> SimResult::graph_orderings() const {
    int used = config.orderings_used == 0 ? config.n : config.orderings_used;
    return {orderings.begin(), orderings.begin() + used};
}

namespace {

struct Event {
    double time;
    std::uint64_t sequence;  // push order; breaks exact time ties deterministically
    int node;
    int tx;
    Via via;
};

struct EventLater {
    bool operator()(const Event& a, const Event& b) const {
        if (a.time != b.time) return a.time > b.time;
        return a.sequence > b.sequence;
    }
};

std::string padded_id(int value, int width) {
    std::string digits = std::to_string(value);
    return "t" + std::string(width - static_cast<int>(digits.size()), '0') + digits;
}

}  // namespace

SimResult run(const SimConfig& config) {
    config.validate();

    RngStream gen(config.seed, "generation");
    RngStream id_shuffle(config.seed, "ids");
    RngStream ext_honest(config.seed, "ext-honest");
    RngStream ext_attack(config.seed, "ext-attack");
    RngStream swaps(config.seed, "swap");
    RngStream gossip(config.seed, "gossip");

    // Honest submission instants: t0 = 0, then Exp(1) gaps.
    std::vector<double> honest_times(config.honest_count, 0.0);
    for (int i = 1; i < config.honest_count; ++i)
        honest_times[i] = honest_times[i - 1] + gen.next_exp(kGenerationMean);

    std::vector<Transmission> transmissions;
    if (config.attack)
        transmissions = schedule(*config.attack, config.attack_start, config.gap);

    // Submission times must be non-negative; when the attack starts before
    // the first honest transaction, shift the whole timeline right.
    double shift = 0.0;
    for (const Transmission& tr : transmissions) shift = std::max(shift, -tr.time);
    for (double& t : honest_times) t += shift;
    for (Transmission& tr : transmissions) tr.time += shift;

    // Wire ids: one shuffled pool for honest and adversarial transactions
    // alike, so ids carry no information about submission time or origin.
    std::vector<TxId> plan_ids = config.attack ? config.attack->tx_ids()
                                               : std::vector<TxId>{};
    const int total = config.honest_count + static_cast<int>(plan_ids.size());
    const int width = std::max<int>(3, std::to_string(std::max(total - 1, 0)).size());
    std::vector<int> pool(total);
    for (int i = 0; i < total; ++i) pool[i] = i;
    for (int i = total - 1; i > 0; --i)
        std::swap(pool[i], pool[id_shuffle.next_below(i + 1)]);
    std::vector<TxId> wire(total);
    for (int i = 0; i < total; ++i) wire[i] = padded_id(pool[i], width);

    TxRegistry registry;
    for (int i = 0; i < config.honest_count; ++i)
        registry.add({wire[i], Origin::Honest, honest_times[i], {wire[i]}, {}});
    for (std::size_t j = 0; j < plan_ids.size(); ++j) {
        double submit = std::numeric_limits<double>::infinity();
        for (const Transmission& tr : transmissions)
            if (tr.tx == plan_ids[j]) submit = std::min(submit, tr.time);
        const TxId base = config.attack->clone_group.count(plan_ids[j])
                              ? config.attack->clone_group.at(plan_ids[j])
                              : plan_ids[j];
        registry.add({wire[config.honest_count + j], Origin::Adversarial, submit,
                      {"conflict:" + base}, base});
    }
    auto wire_of_plan = [&](const TxId& plan_id) -> int {
        auto it = std::find(plan_ids.begin(), plan_ids.end(), plan_id);
        return config.honest_count + static_cast<int>(it - plan_ids.begin());
    };

    std::priority_queue<Event, std::vector<Event>, EventLater> events;
    std::uint64_t sequence = 0;
    auto push = [&](double time, int node, int tx, Via via) {
        events.push({time, sequence++, node, tx, via});
    };

    // Honest transmissions fan out to every node with independent Exp(r)
    // delays; each is its own singleton burst, so no reordering applies.
    for (int i = 0; i < config.honest_count; ++i)
        for (int node = 0; node < config.n; ++node)
            push(honest_times[i] + ext_honest.next_exp(config.r), node, i, Via::Direct);

    // Adversarial bursts: FIFO per (part, phase, node) — a later transaction
    // of a burst never overtakes an earlier one — except for explicit swaps
    // of consecutive pairs, each with probability reorder_p.
    if (config.attack) {
        const AttackPlan& plan = *config.attack;
        for (std::size_t part = 0; part < plan.partition.parts.size(); ++part) {
            for (int phase : {1, 3}) {
                std::vector<const Transmission*> burst;
                for (const Transmission& tr : transmissions)
                    if (tr.part == static_cast<int>(part) && tr.phase == phase)
                        burst.push_back(&tr);
                std::sort(burst.begin(), burst.end(),
                          [](const Transmission* a, const Transmission* b) {
                              return a->slot < b->slot;
                          });
                if (burst.empty()) continue;
                const int len = static_cast<int>(burst.size());
                std::vector<double> slot_time(len);
                std::vector<int> slot_tx(len);
                for (NodeId node : plan.partition.parts[part]) {
                    for (int j = 0; j < len; ++j) {
                        double arrival = burst[j]->time + ext_attack.next_exp(config.r);
                        // Strictly increasing slot times keep the queue order
                        // unambiguous under the (time, id) tie-break.
                        slot_time[j] = j == 0 ? arrival
                                              : std::max(std::nextafter(
                                                             slot_time[j - 1],
                                                             std::numeric_limits<double>::infinity()),
                                                         arrival);
                        slot_tx[j] = wire_of_plan(burst[j]->tx);
                    }
                    for (int j = 0; j + 1 < len; ++j)
                        if (swaps.next_unit() < config.reorder_p)
                            std::swap(slot_tx[j], slot_tx[j + 1]);
                    for (int j = 0; j < len; ++j)
                        push(slot_time[j], node, slot_tx[j], Via::Direct);
                }
            }
        }
    }

    constexpr double kUnseen = std::numeric_limits<double>::infinity();
    std::vector<double> first_time(static_cast<std::size_t>(config.n) * total, kUnseen);
    std::vector<Via> first_via(static_cast<std::size_t>(config.n) * total, Via::Direct);
    auto slot = [&](int node, int tx) { return static_cast<std::size_t>(node) * total + tx; };

    while (!events.empty()) {
        Event event = events.top();
        events.pop();
        if (first_time[slot(event.node, event.tx)] == kUnseen) {
            first_time[slot(event.node, event.tx)] = event.time;
            first_via[slot(event.node, event.tx)] = event.via;
        }
        // Gossip mitigation: every external receipt fans out once to all
        // peers; gossip copies are not re-forwarded.
        if (event.via == Via::Direct && config.broadcast)
            for (int peer = 0; peer < config.n; ++peer)
                if (peer != event.node)
                    push(event.time + gossip.next_exp(config.r_internal), peer,
                         event.tx, Via::Gossip);
    }

    SimResult result;
    result.config = config;
    result.registry = std::move(registry);

    struct Receipt {
        double time;
        int tx;
    };
    result.orderings.reserve(config.n);
    for (int node = 0; node < config.n; ++node) {
        std::vector<Receipt> receipts;
        receipts.reserve(total);
        for (int tx = 0; tx < total; ++tx) {
            if (first_time[slot(node, tx)] == kUnseen)
                throw std::runtime_error("node " + std::to_string(node) +
                                         " never received " + wire[tx]);
            receipts.push_back({first_time[slot(node, tx)], tx});
        }
        std::sort(receipts.begin(), receipts.end(), [&](const Receipt& a, const Receipt& b) {
            if (a.time != b.time) return a.time < b.time;
            return wire[a.tx] < wire[b.tx];
        });
        LocalOrdering ordering{node, {}};
        ordering.sequence.reserve(total);
        for (const Receipt& receipt : receipts) ordering.sequence.push_back(wire[receipt.tx]);
        result.orderings.push_back(std::move(ordering));

        for (const Receipt& receipt : receipts)
            result.delivery_log.push_back(
                {node, wire[receipt.tx], receipt.time, first_via[slot(node, receipt.tx)]});
    }

    std::vector<TxId> honest_ids = result.registry.honest_ids();
    result.ground_truth = ground_truth_order(result.registry, honest_ids);

    if (config.attack) {
        // The pause opens once every initialization copy has been delivered:
        // transactions submitted after that instant are behind the whole
        // init phase at every node. It closes at the first finalization
        // transmission.
        PauseWindow window{shift + config.attack_start,
                           shift + config.attack_start + config.attack->pause};
        const auto& parts = config.attack->partition.parts;
        for (const Transmission& tr : transmissions) {
            if (tr.phase == 1) {
                int tx = wire_of_plan(tr.tx);
                for (NodeId node : parts[tr.part])
                    window.begin = std::max(window.begin, first_time[slot(node, tx)]);
            }
            if (tr.phase == 3) window.end = std::min(window.end, tr.time);
        }
        result.pause_window = window;
    }
    return result;
}

std::pair<SimResult, std::vector<LocalOrdering>> attack_run_pair(const SimConfig& config) {
    if (!config.attack)
        throw std::invalid_argument("attack_run_pair requires an attack plan");
    SimResult result = run(config);
    auto projection = result.honest_projection();
    return {std::move(result), std::move(projection)};
}

}  // namespace fairorder
