#pragma once

#include <optional>
#include <vector>

#include "revpeb/pebbling.hpp"
#include "revpeb/tree.hpp"

namespace revpeb {

struct OracleResult {
    int value = 0;
    std::optional<PebbleSequence> witness;
};

// Exact persistent pebbling number by exhaustive search over configurations:
// smallest k such that {root} is reachable from the empty configuration
// through configurations of at most k pebbles. Capped at 20 nodes.
OracleResult rev_oracle(const Dag& g);

// Exact visiting pebbling number: reach the empty configuration again after
// pebbling the root at some step. Capped at 20 nodes.
OracleResult vrev_oracle(const Dag& g);

// Fewest configurations (time m = moves + 1) achieving the variant's goal
// within a space budget. Capped at 16 nodes; throws ValidationError when the
// goal is unreachable within the budget.
OracleResult min_steps_oracle(const Dag& g, int budget, Variant variant);

// All nodes v with a directed pebble-free path to `challenged` (v and every
// intermediate node unpebbled; a pebble on the challenged node itself is
// allowed). Returns sorted indices.
std::vector<int> effective_predecessors(const Dag& g, const PebbleConfig& c,
                                        int challenged);

// Minimax engine for the pebbler/challenger game: the pebbler first pebbles
// the root, which the challenger challenges; thereafter the pebbler pebbles
// any unpebbled node and the challenger challenges it or re-challenges. The
// pebbler wins when every in-neighbor of the challenged node is pebbled;
// pebbles are never removed.
class DymondTompaEngine {
public:
    // prune restricts pebbler moves to effective predecessors of the
    // challenged node, which does not change the game value.
    explicit DymondTompaEngine(const Dag& g, bool prune = true);

    int value();  // pebbles needed against optimal challenger play
    bool won(std::uint32_t mask, int challenged) const;
    // Optimal pebbler move from a position; ties take the smallest index.
    int best_move(std::uint32_t mask, int challenged);
    int value_at(std::uint32_t mask, int challenged);

private:
    const Dag& g_;
    bool prune_;
    std::vector<std::uint32_t> in_mask_;
    std::vector<std::int8_t> memo_;
};

// Dymond-Tompa pebble number. Capped at 12 nodes.
int dt_oracle(const Dag& g, bool prune = true);

}  // namespace revpeb
