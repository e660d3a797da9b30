#pragma once

#include <string>
#include <vector>

#include "revpeb/tree.hpp"

namespace revpeb {

// Edge colors indexed by UndirectedTree edge id. Colors are positive;
// validators accept gaps, the solver emits consecutive colors 1..rank.
struct EdgeColoring {
    std::vector<int> color;
    int rank() const;
};

// Contraction schedule: each step lists original-tree edge ids forming a
// matching of the current quotient tree.
struct MatchingSequence {
    std::vector<std::vector<int>> steps;
};

// Partition of the original vertices under contraction. An original edge is
// live iff its endpoints lie in different classes.
class ContractionState {
public:
    explicit ContractionState(const UndirectedTree& u);
    int find(int v) const;
    int classes() const { return classes_; }
    void unite(int a, int b);

private:
    mutable std::vector<int> parent_;
    int classes_;
};

// Checks the rank property: any two equal-colored edges are separated by a
// higher color on the path between them. Returns the maximum color used.
// Throws ValidationError naming a violating pair and the path between them.
int validate_coloring(const UndirectedTree& u, const EdgeColoring& c);

// An optimal edge rank coloring, exact. Among optimal colorings, returns the
// one with the lexicographically smallest color vector over edges in edge-id
// order (which is serialized-name order).
EdgeColoring erank_opt(const UndirectedTree& u);

// True iff a valid coloring with colors <= k exists. Exhaustive backtracking,
// independent of erank_opt; capped at 14 edges.
bool erank_bruteforce(const UndirectedTree& u, int k);

// Contracts the matching M (edge ids) in one step. Every edge must be live
// and no two edges may share an endpoint class.
ContractionState contract(const ContractionState& state, const UndirectedTree& u,
                          const std::vector<int>& matching);

// Replays a matching sequence; succeeds iff each step is a matching of the
// current quotient and the final quotient is a single class. Returns the
// number of steps.
int validate_matchings(const UndirectedTree& u, const MatchingSequence& seq);

// Step i contracts all edges colored i. Valid colorings give valid sequences
// of length rank(c).
MatchingSequence coloring_to_matchings(const UndirectedTree& u, const EdgeColoring& c);

// An edge contracted in step i gets color i. Valid sequences give valid
// colorings of rank = number of steps.
EdgeColoring matchings_to_coloring(const UndirectedTree& u, const MatchingSequence& seq);

// ---- text formats ----

// One line per edge: "u v c".
EdgeColoring parse_coloring(const UndirectedTree& u, std::string_view text);
std::string serialize_coloring(const UndirectedTree& u, const EdgeColoring& c);

// One line per step; edges as "u-v" tokens separated by spaces. An empty
// line is an empty step.
MatchingSequence parse_matchings(const UndirectedTree& u, std::string_view text);
std::string serialize_matchings(const UndirectedTree& u, const MatchingSequence& seq);

}  // namespace revpeb
