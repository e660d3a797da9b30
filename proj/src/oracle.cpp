#include "revpeb/oracle.hpp"

#include <algorithm>
#include <bit>

namespace revpeb {

namespace {

constexpr int kRevCap = 20;
constexpr int kStepsCap = 16;
constexpr int kDtCap = 12;

std::vector<std::uint32_t> in_masks(const Dag& g) {
    std::vector<std::uint32_t> m(g.size(), 0);
    for (int v = 0; v < g.size(); ++v)
        for (int u : g.in_neighbors(v)) m[v] |= 1u << u;
    return m;
}

// Breadth-first search over pebbling configurations with at most `budget`
// pebbles. States carry a "root was pebbled" flag in bit n for the visiting
// variant. Returns the move list to the target, or nullopt.
std::optional<std::vector<Move>> bfs_configs(const Dag& g, int budget, Variant variant) {
    const int n = g.size();
    const auto inm = in_masks(g);
    const bool visiting = variant == Variant::Visiting;
    const std::uint32_t flag = 1u << n;
    const std::uint32_t target =
        visiting ? flag : (1u << g.root());
    const size_t states = size_t(1) << (n + (visiting ? 1 : 0));

    std::vector<std::int32_t> pred(states, -1);
    std::vector<std::int8_t> pred_node(states, -1);
    std::vector<std::uint32_t> queue;
    queue.push_back(0);
    pred[0] = 0;

    for (size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t state = queue[head];
        if (state == target && head != 0) break;
        const std::uint32_t mask = state & (flag - 1);
        const int pebbles = std::popcount(mask);
        for (int v = 0; v < n; ++v) {
            if ((mask & inm[v]) != inm[v]) continue;
            const std::uint32_t bit = 1u << v;
            std::uint32_t next;
            if (mask & bit) {
                next = state & ~bit;
            } else {
                if (pebbles + 1 > budget) continue;
                next = state | bit;
                if (visiting && v == g.root()) next |= flag;
            }
            if (pred[next] >= 0) continue;
            pred[next] = static_cast<std::int32_t>(state);
            pred_node[next] = static_cast<std::int8_t>(v);
            queue.push_back(next);
        }
    }

    if (pred[target] < 0) return std::nullopt;

    std::vector<Move> moves;
    std::uint32_t cur = target;
    while (cur != 0) {
        const std::uint32_t prev = static_cast<std::uint32_t>(pred[cur]);
        const int v = pred_node[cur];
        moves.push_back({(cur >> v) & 1 ? MoveKind::Place : MoveKind::Remove, v});
        cur = prev;
    }
    std::reverse(moves.begin(), moves.end());
    return moves;
}

OracleResult search_min_pebbles(const Dag& g, Variant variant) {
    if (g.size() > kRevCap)
        throw SizeCapError("pebbling oracle is capped at " + std::to_string(kRevCap) +
                           " nodes");
    for (int k = 1; k <= g.size(); ++k) {
        auto moves = bfs_configs(g, k, variant);
        if (moves) {
            OracleResult r;
            r.value = k;
            r.witness = PebbleSequence{std::move(*moves)};
            return r;
        }
    }
    throw std::logic_error("pebbling oracle: no pebbling found with n pebbles");
}

}  // namespace

OracleResult rev_oracle(const Dag& g) { return search_min_pebbles(g, Variant::Persistent); }

OracleResult vrev_oracle(const Dag& g) { return search_min_pebbles(g, Variant::Visiting); }

OracleResult min_steps_oracle(const Dag& g, int budget, Variant variant) {
    if (g.size() > kStepsCap)
        throw SizeCapError("min-steps oracle is capped at " + std::to_string(kStepsCap) +
                           " nodes");
    if (budget < 1) throw ValidationError("space budget must be positive");
    auto moves = bfs_configs(g, budget, variant);
    if (!moves)
        throw ValidationError("goal unreachable within a space budget of " +
                              std::to_string(budget));
    OracleResult r;
    r.value = static_cast<int>(moves->size()) + 1;  // time counts configurations
    r.witness = PebbleSequence{std::move(*moves)};
    return r;
}

std::vector<int> effective_predecessors(const Dag& g, const PebbleConfig& c,
                                        int challenged) {
    if (challenged < 0 || challenged >= g.size())
        throw ValidationError("unknown challenged node");
    std::vector<char> seen(g.size(), 0);
    std::vector<int> stack{challenged}, result;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.in_neighbors(v))
            if (!seen[u] && !c.has(u)) {
                seen[u] = 1;
                result.push_back(u);
                stack.push_back(u);
            }
    }
    std::sort(result.begin(), result.end());
    return result;
}

DymondTompaEngine::DymondTompaEngine(const Dag& g, bool prune)
    : g_(g), prune_(prune), in_mask_(in_masks(g)) {
    if (g.size() > kDtCap)
        throw SizeCapError("Dymond-Tompa oracle is capped at " + std::to_string(kDtCap) +
                           " nodes");
    memo_.assign((size_t(1) << g.size()) * g.size(), -1);
}

bool DymondTompaEngine::won(std::uint32_t mask, int challenged) const {
    return (mask & in_mask_[challenged]) == in_mask_[challenged];
}

int DymondTompaEngine::value_at(std::uint32_t mask, int challenged) {
    if (won(mask, challenged)) return std::popcount(mask);
    auto& slot = memo_[size_t(mask) * g_.size() + challenged];
    if (slot >= 0) return slot;

    std::uint32_t candidates;
    if (prune_) {
        candidates = 0;
        std::vector<int> stack{challenged};
        std::uint32_t seen = 0;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g_.in_neighbors(v)) {
                const std::uint32_t bit = 1u << u;
                if ((seen & bit) || (mask & bit)) continue;
                seen |= bit;
                candidates |= bit;
                stack.push_back(u);
            }
        }
    } else {
        candidates = ~mask & ((1u << g_.size()) - 1);
    }

    int best = g_.size() + 1;
    while (candidates) {
        const int v = std::countr_zero(candidates);
        candidates &= candidates - 1;
        const std::uint32_t next = mask | (1u << v);
        const int challenged_new = value_at(next, v);
        const int rechallenged = value_at(next, challenged);
        best = std::min(best, std::max(challenged_new, rechallenged));
    }
    slot = static_cast<std::int8_t>(best);
    return best;
}

int DymondTompaEngine::best_move(std::uint32_t mask, int challenged) {
    int best_v = -1, best = g_.size() + 1;
    for (int v = 0; v < g_.size(); ++v) {
        const std::uint32_t bit = 1u << v;
        if (mask & bit) continue;
        const std::uint32_t next = mask | bit;
        const int cost = std::max(value_at(next, v), value_at(next, challenged));
        if (cost < best) {
            best = cost;
            best_v = v;
        }
    }
    return best_v;
}

int DymondTompaEngine::value() { return value_at(1u << g_.root(), g_.root()); }

int dt_oracle(const Dag& g, bool prune) {
    DymondTompaEngine engine(g, prune);
    return engine.value();
}

}  // namespace revpeb
