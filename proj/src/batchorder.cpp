#include "fairorder/batchorder.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace fairorder {

BatchScheme BatchScheme::post_decryption(const BatchScheme& inner) {
    if (inner.kind == Kind::PostDecryption)
        throw std::invalid_argument("post-decryption cannot nest post-decryption");
    return {Kind::PostDecryption, {}, inner.kind, inner.policy};
}

BatchScheme BatchScheme::parse(std::string_view name) {
    if (name == "alphabetical") return alphabetical();
    if (name == "hamiltonian-arbitrary") return hamiltonian(BreakPolicy::Arbitrary);
    if (name == "hamiltonian-weakest") return hamiltonian(BreakPolicy::WeakestLink);
    if (name == "ranked-pairs") return ranked_pairs();
    constexpr std::string_view prefix = "post-decryption:";
    if (name.substr(0, prefix.size()) == prefix) {
        std::string_view rest = name.substr(prefix.size());
        if (rest.substr(0, prefix.size()) == prefix)
            throw std::invalid_argument("post-decryption cannot nest post-decryption");
        return post_decryption(parse(rest));
    }
    throw std::invalid_argument("unknown batch scheme: " + std::string(name));
}

std::string BatchScheme::name() const {
    switch (kind) {
        case Kind::Alphabetical:
            return "alphabetical";
        case Kind::Hamiltonian:
            return policy == BreakPolicy::Arbitrary ? "hamiltonian-arbitrary"
                                                    : "hamiltonian-weakest";
        case Kind::RankedPairs:
            return "ranked-pairs";
        case Kind::PostDecryption:
            return "post-decryption:" + inner().name();
    }
    return "unknown";
}

std::vector<TxId> order_alphabetical(std::span<const TxId> component) {
    std::vector<TxId> out(component.begin(), component.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TxId> hamiltonian_path(const WeightedTournament& t) {
    const int m = t.size();
    std::vector<int> path;
    path.reserve(m);
    for (int v = 0; v < m; ++v) {
        // Insert v right after the last path vertex that beats it (in front
        // when none does). That position always preserves the path property:
        // everything later in the path loses to v by choice of the slot.
        int k = static_cast<int>(path.size());
        int pos = 0;
        for (int i = k; i >= 1; --i) {
            if (t.has_edge(path[i - 1], v)) {
                pos = i;
                break;
            }
        }
        path.insert(path.begin() + pos, v);
    }
    std::vector<TxId> out;
    out.reserve(m);
    for (int v : path) out.push_back(t.vertices()[v]);
    return out;
}

namespace {

bool is_strongly_connected(const WeightedTournament& t) {
    return scc_decompose(t).components.size() <= 1;
}

// Hamiltonian cycle of a strongly connected tournament with >= 3 vertices:
// seed with a 3-cycle through the smallest vertex, then insert outside
// vertices one at a time; when no single vertex fits between consecutive
// cycle vertices, the outsiders split into a set dominated by the cycle and
// a set dominating it, and any edge from the former to the latter inserts a
// pair.
std::vector<int> hamiltonian_cycle(const WeightedTournament& t) {
    const int m = t.size();
    std::vector<int> cycle;

    {
        const int v = 0;
        for (int a = 0; a < m && cycle.empty(); ++a) {
            if (a == v || !t.has_edge(v, a)) continue;
            for (int b = 0; b < m; ++b) {
                if (b == v || b == a || !t.has_edge(b, v)) continue;
                if (t.has_edge(a, b)) {
                    cycle = {v, a, b};
                    break;
                }
            }
        }
        if (cycle.empty())
            throw std::logic_error("no 3-cycle in strongly connected tournament");
    }

    std::vector<bool> in_cycle(m, false);
    for (int v : cycle) in_cycle[v] = true;

    while (static_cast<int>(cycle.size()) < m) {
        bool inserted = false;
        for (int u = 0; u < m && !inserted; ++u) {
            if (in_cycle[u]) continue;
            const int k = static_cast<int>(cycle.size());
            for (int i = 0; i < k; ++i) {
                if (t.has_edge(cycle[i], u) && t.has_edge(u, cycle[(i + 1) % k])) {
                    cycle.insert(cycle.begin() + i + 1, u);
                    in_cycle[u] = true;
                    inserted = true;
                    break;
                }
            }
        }
        if (inserted) continue;

        // Every remaining vertex either dominates the whole cycle or is
        // dominated by it; strong connectivity forces an edge from the
        // dominated side to the dominating side.
        bool paired = false;
        for (int w = 0; w < m && !paired; ++w) {
            if (in_cycle[w] || !t.has_edge(cycle[0], w)) continue;  // w dominated
            for (int z = 0; z < m; ++z) {
                if (in_cycle[z] || z == w || !t.has_edge(z, cycle[0])) continue;
                if (t.has_edge(w, z)) {
                    cycle.insert(cycle.begin() + 1, z);
                    cycle.insert(cycle.begin() + 1, w);
                    in_cycle[w] = in_cycle[z] = true;
                    paired = true;
                    break;
                }
            }
        }
        if (!paired)
            throw std::logic_error("hamiltonian cycle extension failed");
    }
    return cycle;
}

std::vector<TxId> rotate_to_path(const WeightedTournament& t,
                                 const std::vector<int>& cycle, int broken) {
    // Breaking edge (cycle[broken], cycle[broken+1]) makes the successor the
    // head of the path.
    const int k = static_cast<int>(cycle.size());
    std::vector<TxId> out;
    out.reserve(k);
    for (int i = 1; i <= k; ++i) out.push_back(t.vertices()[cycle[(broken + i) % k]]);
    return out;
}

}  // namespace

std::vector<TxId> order_hamiltonian(const WeightedTournament& component,
                                    BreakPolicy policy) {
    const int m = component.size();
    if (m == 0) return {};
    if (m == 1) return {component.vertices()[0]};
    if (m == 2) {
        if (component.has_edge(0, 1))
            return {component.vertices()[0], component.vertices()[1]};
        return {component.vertices()[1], component.vertices()[0]};
    }
    if (!is_strongly_connected(component))
        throw std::invalid_argument(
            "component is not strongly connected; no Hamiltonian cycle is guaranteed");

    std::vector<int> cycle = hamiltonian_cycle(component);
    const int k = static_cast<int>(cycle.size());

    int broken = -1;
    if (policy == BreakPolicy::Arbitrary) {
        // Break the edge entering the lexicographically smallest vertex, so
        // the path starts there. Vertex index 0 is the smallest id.
        for (int i = 0; i < k; ++i)
            if (cycle[(i + 1) % k] == 0) broken = i;
    } else {
        int best_weight = 0;
        for (int i = 0; i < k; ++i) {
            int u = cycle[i], v = cycle[(i + 1) % k];
            int w = component.weight(u, v);
            if (broken == -1 || w < best_weight) {
                broken = i;
                best_weight = w;
            } else if (w == best_weight) {
                int bu = cycle[broken], bv = cycle[(broken + 1) % k];
                if (u < bu || (u == bu && v < bv)) broken = i;
            }
        }
    }
    return rotate_to_path(component, cycle, broken);
}

std::vector<TxId> order_ranked_pairs(const WeightedTournament& component) {
    const int m = component.size();
    if (m <= 1) return component.vertices();

    struct Edge {
        int weight, src, dst;
    };
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m) * (m - 1) / 2);
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) {
            if (component.has_edge(u, v))
                edges.push_back({component.weight(u, v), u, v});
            else
                edges.push_back({component.weight(v, u), v, u});
        }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        if (a.src != b.src) return a.src < b.src;
        return a.dst < b.dst;
    });

    // Locked precedence kept as a transitive closure over bitset rows; an
    // edge is skipped exactly when its reverse is already implied.
    const int words = (m + 63) / 64;
    std::vector<std::uint64_t> reach(static_cast<std::size_t>(m) * words, 0);
    auto test = [&](int a, int b) {
        return (reach[a * words + b / 64] >> (b % 64)) & 1u;
    };
    std::vector<std::uint64_t> successors(words);
    for (const Edge& edge : edges) {
        if (test(edge.dst, edge.src)) continue;  // would close a cycle
        for (int w = 0; w < words; ++w) successors[w] = reach[edge.dst * words + w];
        successors[edge.dst / 64] |= std::uint64_t{1} << (edge.dst % 64);
        for (int a = 0; a < m; ++a) {
            if (a != edge.src && !test(a, edge.src)) continue;
            for (int w = 0; w < words; ++w) reach[a * words + w] |= successors[w];
        }
    }

    // Processing every pair leaves a strict total order; sort by descending
    // number of successors.
    std::vector<int> degree(m, 0);
    for (int a = 0; a < m; ++a)
        for (int w = 0; w < words; ++w)
            degree[a] += std::popcount(reach[a * words + w]);
    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (degree[a] != degree[b]) return degree[a] > degree[b];
        return a < b;
    });
    std::vector<TxId> out;
    out.reserve(m);
    for (int v : order) out.push_back(component.vertices()[v]);
    return out;
}

std::vector<std::vector<TxId>> dependency_groups(std::span<const TxId> component,
                                                 const TxRegistry& registry) {
    std::vector<TxId> ids(component.begin(), component.end());
    std::sort(ids.begin(), ids.end());
    const int m = static_cast<int>(ids.size());

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };

    std::map<std::string, int> key_owner;
    for (int i = 0; i < m; ++i) {
        for (const std::string& key : registry.at(ids[i]).keys) {
            auto [it, fresh] = key_owner.emplace(key, i);
            if (!fresh) unite(i, it->second);
        }
    }

    std::map<int, std::vector<TxId>> by_root;
    for (int i = 0; i < m; ++i) by_root[find(i)].push_back(ids[i]);
    std::vector<std::vector<TxId>> groups;
    groups.reserve(by_root.size());
    for (auto& [root, members] : by_root) groups.push_back(std::move(members));
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return groups;
}

namespace {

// Order an arbitrary vertex subset: condense the induced sub-tournament and
// apply the scheme per SCC. Groups inside a cycle need not induce strongly
// connected sub-tournaments, so the Hamiltonian schemes cannot be applied to
// them directly.
std::vector<TxId> order_via_condensation(const WeightedTournament& sub,
                                         const BatchScheme& scheme,
                                         const TxRegistry* registry) {
    std::vector<TxId> out;
    out.reserve(sub.vertices().size());
    for (const auto& component : scc_decompose(sub).components) {
        auto ordered = order_component(sub, component, scheme, registry);
        out.insert(out.end(), ordered.begin(), ordered.end());
    }
    return out;
}

}  // namespace

std::vector<TxId> order_post_decryption(const WeightedTournament& component,
                                        const TxRegistry& registry,
                                        const BatchScheme& inner) {
    if (inner.kind == BatchScheme::Kind::PostDecryption)
        throw std::invalid_argument("post-decryption cannot nest post-decryption");
    auto groups = dependency_groups(component.vertices(), registry);

    std::vector<std::vector<TxId>> ordered_groups;
    ordered_groups.reserve(groups.size());
    for (const auto& group : groups) {
        auto sub = component.restricted_to(group);
        ordered_groups.push_back(order_via_condensation(sub, inner, &registry));
    }

    // Group-level tournament: summed pairwise weights, groups named by their
    // least member id (ties in has_edge then favor the smaller least id).
    const int k = static_cast<int>(groups.size());
    std::vector<TxId> names(k);
    for (int i = 0; i < k; ++i) names[i] = groups[i].front();
    std::vector<std::vector<int>> sums(k, std::vector<int>(k, 0));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;
            int total = 0;
            for (const TxId& u : groups[i])
                for (const TxId& v : groups[j]) total += component.weight(u, v);
            sums[i][j] = total;
        }
    auto group_order =
        order_ranked_pairs(WeightedTournament::from_weights(names, std::move(sums),
                                                            component.orderings_used()));

    std::vector<TxId> out;
    out.reserve(component.vertices().size());
    for (const TxId& name : group_order) {
        auto it = std::find(names.begin(), names.end(), name);
        out.insert(out.end(), ordered_groups[it - names.begin()].begin(),
                   ordered_groups[it - names.begin()].end());
    }
    return out;
}

std::vector<TxId> order_component(const WeightedTournament& t,
                                  std::span<const TxId> component,
                                  const BatchScheme& scheme,
                                  const TxRegistry* registry) {
    if (scheme.kind == BatchScheme::Kind::Alphabetical)
        return order_alphabetical(component);

    const bool whole = static_cast<int>(component.size()) == t.size();
    const WeightedTournament sub = whole ? t : t.restricted_to(component);
    switch (scheme.kind) {
        case BatchScheme::Kind::Hamiltonian:
            return order_hamiltonian(sub, scheme.policy);
        case BatchScheme::Kind::RankedPairs:
            return order_ranked_pairs(sub);
        case BatchScheme::Kind::PostDecryption:
            if (!registry)
                throw std::invalid_argument(
                    "post-decryption ordering requires a transaction registry");
            return order_post_decryption(sub, *registry, scheme.inner());
        case BatchScheme::Kind::Alphabetical:
            break;
    }
    return order_alphabetical(component);
}

std::vector<TxId> final_ordering(const WeightedTournament& t,
                                 const BatchScheme& scheme,
                                 const TxRegistry* registry) {
    std::vector<TxId> out;
    out.reserve(t.vertices().size());
    for (const auto& component : scc_decompose(t).components) {
        auto ordered = order_component(t, component, scheme, registry);
        out.insert(out.end(), ordered.begin(), ordered.end());
    }
    return out;
}

std::vector<TxId> final_ordering(std::span<const LocalOrdering> orderings,
                                 const BatchScheme& scheme,
                                 const TxRegistry* registry) {
    return final_ordering(build_tournament(orderings), scheme, registry);
}

}  // namespace fairorder
