#include "fairorder/depgraph.hpp"

#include <algorithm>
#include <stdexcept>

namespace fairorder {

WeightedTournament WeightedTournament::from_weights(std::vector<TxId> vertices,
                                                    std::vector<std::vector<int>> weights,
                                                    int orderings_used) {
    if (!std::is_sorted(vertices.begin(), vertices.end()))
        throw std::invalid_argument("vertices must be sorted");
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("duplicate vertex id");
    const int m = static_cast<int>(vertices.size());
    if (static_cast<int>(weights.size()) != m)
        throw std::invalid_argument("weight matrix shape mismatch");
    WeightedTournament t;
    t.vertices_ = std::move(vertices);
    t.orderings_used_ = orderings_used;
    t.weights_.assign(static_cast<std::size_t>(m) * m, 0);
    for (int u = 0; u < m; ++u) {
        if (static_cast<int>(weights[u].size()) != m)
            throw std::invalid_argument("weight matrix shape mismatch");
        for (int v = 0; v < m; ++v) {
            if (weights[u][v] < 0) throw std::invalid_argument("negative weight");
            t.weights_[u * m + v] = weights[u][v];
        }
    }
    return t;
}

int WeightedTournament::index_of(const TxId& id) const {
    auto it = std::lower_bound(vertices_.begin(), vertices_.end(), id);
    if (it == vertices_.end() || *it != id) return -1;
    return static_cast<int>(it - vertices_.begin());
}

int WeightedTournament::weight(const TxId& u, const TxId& v) const {
    int ui = index_of(u), vi = index_of(v);
    if (ui < 0 || vi < 0) throw std::invalid_argument("unknown vertex id");
    return weight(ui, vi);
}

bool WeightedTournament::has_edge(const TxId& u, const TxId& v) const {
    int ui = index_of(u), vi = index_of(v);
    if (ui < 0 || vi < 0) throw std::invalid_argument("unknown vertex id");
    return has_edge(ui, vi);
}

WeightedTournament WeightedTournament::restricted_to(std::span<const TxId> subset) const {
    std::vector<int> indices;
    indices.reserve(subset.size());
    for (const TxId& id : subset) {
        int i = index_of(id);
        if (i < 0) throw std::invalid_argument("restriction id " + id + " not a vertex");
        indices.push_back(i);
    }
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw std::invalid_argument("duplicate id in restriction");
    WeightedTournament sub;
    const int k = static_cast<int>(indices.size());
    sub.vertices_.reserve(k);
    for (int i : indices) sub.vertices_.push_back(vertices_[i]);
    sub.orderings_used_ = orderings_used_;
    sub.weights_.assign(static_cast<std::size_t>(k) * k, 0);
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            sub.weights_[a * k + b] = weight(indices[a], indices[b]);
    return sub;
}

WeightedTournament build_tournament(std::span<const LocalOrdering> orderings) {
    if (orderings.empty()) throw std::invalid_argument("no orderings");

    std::vector<TxId> vertices = orderings.front().sequence;
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
        throw std::invalid_argument("duplicate id in ordering");
    const int m = static_cast<int>(vertices.size());

    auto index_of = [&](const TxId& id) -> int {
        auto it = std::lower_bound(vertices.begin(), vertices.end(), id);
        if (it == vertices.end() || *it != id) return -1;
        return static_cast<int>(it - vertices.begin());
    };

    std::vector<std::vector<int>> weights(m, std::vector<int>(m, 0));
    std::vector<int> position(m);
    for (const LocalOrdering& ordering : orderings) {
        if (static_cast<int>(ordering.sequence.size()) != m)
            throw std::invalid_argument("orderings disagree on transaction set");
        std::fill(position.begin(), position.end(), -1);
        for (int pos = 0; pos < m; ++pos) {
            int v = index_of(ordering.sequence[pos]);
            if (v < 0 || position[v] != -1)
                throw std::invalid_argument("orderings disagree on transaction set");
            position[v] = pos;
        }
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v) {
                if (position[u] < position[v])
                    ++weights[u][v];
                else
                    ++weights[v][u];
            }
    }
    return WeightedTournament::from_weights(std::move(vertices), std::move(weights),
                                            static_cast<int>(orderings.size()));
}

namespace {

// Iterative Tarjan; recursion depth is unbounded on large tournaments.
std::vector<std::vector<int>> tarjan_sccs(const WeightedTournament& t) {
    const int m = t.size();
    std::vector<int> index(m, -1), lowlink(m, 0);
    std::vector<bool> on_stack(m, false);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int next_index = 0;

    struct Frame {
        int v;
        int neighbor;  // next candidate neighbor to inspect
    };
    std::vector<Frame> frames;

    for (int root = 0; root < m; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, 0});
        while (!frames.empty()) {
            Frame& frame = frames.back();
            int v = frame.v;
            if (frame.neighbor == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (frame.neighbor < m) {
                int w = frame.neighbor++;
                if (w == v || !t.has_edge(v, w)) continue;
                if (index[w] == -1) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::vector<int> scc;
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    scc.push_back(w);
                } while (w != v);
                sccs.push_back(std::move(scc));
            }
            frames.pop_back();
            if (!frames.empty()) {
                Frame& parent = frames.back();
                lowlink[parent.v] = std::min(lowlink[parent.v], lowlink[v]);
            }
        }
    }
    return sccs;
}

}  // namespace

Condensation scc_decompose(const WeightedTournament& t) {
    auto sccs = tarjan_sccs(t);
    // Between two SCCs of a tournament every edge points the same way and the
    // contracted graph is a transitive tournament, so sorting by any cross
    // edge yields the unique topological order.
    std::sort(sccs.begin(), sccs.end(),
              [&](const std::vector<int>& a, const std::vector<int>& b) {
                  return t.has_edge(a.front(), b.front());
              });

    Condensation cond;
    cond.components.reserve(sccs.size());
    for (auto& scc : sccs) {
        std::sort(scc.begin(), scc.end());  // index order == lexicographic order
        std::vector<TxId> ids;
        ids.reserve(scc.size());
        for (int v : scc) ids.push_back(t.vertices()[v]);
        cond.components.push_back(std::move(ids));
    }
    const int k = static_cast<int>(cond.components.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) cond.dag.emplace_back(i, j);
    return cond;
}

std::vector<std::vector<TxId>> condorcet_cycles(const WeightedTournament& t) {
    std::vector<std::vector<TxId>> cycles;
    for (auto& component : scc_decompose(t).components)
        if (component.size() >= 2) cycles.push_back(std::move(component));
    return cycles;
}

std::string to_dot(const WeightedTournament& t, const TxRegistry* registry) {
    std::string dot = "digraph dependency {\n  rankdir=LR;\n";
    for (const TxId& id : t.vertices()) {
        bool adversarial = registry && registry->contains(id) &&
                           registry->at(id).origin == Origin::Adversarial;
        dot += "  \"" + id + "\"";
        if (adversarial) {
            std::string label = id;
            if (const auto& group = registry->at(id).clone_group; group && *group != id)
                label += "\\n(" + *group + ")";
            dot += " [label=\"" + label +
                   "\", style=filled, fillcolor=\"#f6c9c9\", color=\"#b22222\"]";
        } else {
            dot += " [style=filled, fillcolor=\"#cfe2f3\", color=\"#1f4e79\"]";
        }
        dot += ";\n";
    }
    for (int u = 0; u < t.size(); ++u)
        for (int v = 0; v < t.size(); ++v) {
            if (u == v || !t.has_edge(u, v)) continue;
            dot += "  \"" + t.vertices()[u] + "\" -> \"" + t.vertices()[v] +
                   "\" [label=\"" + std::to_string(t.weight(u, v)) + "\"];\n";
        }
    dot += "}\n";
    return dot;
}

}  // namespace fairorder
