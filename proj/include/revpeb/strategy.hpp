#pragma once

#include <string>
#include <vector>

#include "revpeb/pebbling.hpp"
#include "revpeb/ranking.hpp"
#include "revpeb/tree.hpp"

namespace revpeb {

// Succinct certificate of a pebbling: a leaf names one tree node, an internal
// node names an edge (u,v) whose left subtree is a strategy for T_u and whose
// right subtree is a strategy for T \ T_u. Node references are indices of the
// tree the strategy belongs to.
class StrategyTree {
public:
    struct Node {
        int leaf = -1;                       // tree node for leaves, -1 otherwise
        int edge_child = -1, edge_parent = -1;  // edge label (u,v) for internals
        int left = -1, right = -1;           // arena slots
    };

    static StrategyTree make_leaf(int tree_node);
    static StrategyTree make_internal(int edge_child, int edge_parent, StrategyTree left,
                                      StrategyTree right);

    int root() const { return root_; }
    const Node& node(int i) const { return arena_[i]; }
    bool is_leaf(int i) const { return arena_[i].leaf >= 0; }
    int size() const { return static_cast<int>(arena_.size()); }

    // Nodes on the longest root-to-leaf path; a bare leaf has depth 1.
    int depth() const;

private:
    std::vector<Node> arena_;
    int root_ = -1;
};

struct SolveResult {
    int rev = 0;
    StrategyTree strategy;
    PebbleSequence sequence;
    EdgeColoring coloring;
};

// Checks the recursive split structure of S against T and returns its depth.
int validate_strategy(const RootedTree& t, const StrategyTree& s);

// Matchings from strategy levels: leaves are level 0, an internal node is one
// above its highest child, and step i collects the edges of level-i nodes.
// The result has length depth(S) - 1 and refers to underlying(t)'s edge ids.
MatchingSequence strategy_to_matchings(const RootedTree& t, const StrategyTree& s);

// Strategy from a valid matching sequence: the last matching is a single
// edge; it labels the root and the construction recurses on the two sides.
// The result has depth at most length(seq) + 1.
StrategyTree matchings_to_strategy(const RootedTree& t, const MatchingSequence& seq);

// Executable pebbling of a strategy: a leaf places its node; an internal
// node emits A B reverse(A) with A compiling the left subtree and B the
// right. Validates persistently with space <= depth(S).
void compile(const RootedTree& t, const StrategyTree& s, MoveSink& sink);
PebbleSequence compile(const RootedTree& t, const StrategyTree& s);

// Optimal pebbling number with certificates, via the coloring equivalence:
// rev(T) = erank(underlying(T)) + 1.
SolveResult solve(const RootedTree& t);

// ---- text format ----
// Leaves are bare node ids; internal nodes are "(u>v LEFT RIGHT)".
StrategyTree parse_strategy(const RootedTree& t, std::string_view text);
std::string serialize_strategy(const RootedTree& t, const StrategyTree& s);

}  // namespace revpeb
