#pragma once

#include <map>
#include <optional>
#include <string>

#include "revpeb/pebbling.hpp"
#include "revpeb/tree.hpp"

namespace revpeb {

// Result of running a strategy generator. Every generated sequence is replayed
// through a validating sink while it streams, so the reported space/time are
// the validator's numbers. The sequence itself is only materialized on
// request; long runs should pass keep_sequence = false (and may tee the
// stream elsewhere).
struct GenReport {
    std::map<std::string, long long> params;
    PebbleStats stats;
    std::optional<PebbleSequence> sequence;

    int space() const { return stats.space; }
    long long time() const { return stats.time; }
};

// Persistent pebbling of the chain on n nodes by recursive halving: pebble
// the midpoint, recurse above it using the held pebble, then unpebble the
// midpoint by reversal. Space <= ceil(log2 n) + 1.
GenReport chain_pebbling(int n, bool keep_sequence = true, MoveSink* tee = nullptr);

// Space-optimal pebbling of the complete binary tree of height h: pebble the
// left children along the rightmost spine recursively, pebble the remaining
// chain-plus-tree piece with a compiled optimal strategy, then reverse the
// spine phase.
GenReport bt_optimal_pebbling(int h, bool keep_sequence = true, MoveSink* tee = nullptr);

// Near-optimal pebbling of the complete binary tree of height h with
// polynomial step count, parameterized by k: pebble k left spine subtrees
// plus the spine tail, climb the spine with k extra pebbles in 2k-1 steps,
// then reverse. Space <= ((k+1)/k) h + (k+1).
GenReport bt_epsilon_pebbling(int h, int k, bool keep_sequence = true,
                              MoveSink* tee = nullptr);

// Time-space trade-off for bounded-degree trees: k = 1 pebbles bottom-up
// (space n, < 2n moves); k >= 2 partitions the tree into connected pieces of
// about n^((k-1)/k) nodes, pebbles them lowermost-first at level k-1 while
// holding their root pebbles, and unwinds everything after the root is
// pebbled. Space O(n^(1/k)), moves O(n).
GenReport separator_pebbling(const RootedTree& t, int k, int degree_cap = 4,
                             bool keep_sequence = true, MoveSink* tee = nullptr);

// Pebbles every node leaves-first, then removes all but the root pebble in
// reverse order: exactly 2n - 1 moves, space n.
GenReport bottom_up_pebbling(const RootedTree& t, bool keep_sequence = true,
                             MoveSink* tee = nullptr);

}  // namespace revpeb
