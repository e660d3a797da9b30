#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "revpeb/errors.hpp"

namespace revpeb {

// Node ids are arbitrary nonempty tokens of printable non-whitespace bytes.
using NodeId = std::string;

// A rooted DAG: acyclic, unique sink (the root), every node has a directed
// path to the root. Edge (u,v) means u -> v, child to parent.
//
// Node indices are assigned by sorting ids lexicographically, so index order
// and id order agree everywhere: serialization, tie-breaking, and the bitmask
// encodings used by the exhaustive oracles.
class Dag {
public:
    // Builds and validates. Throws ParseError on duplicate edges, cycles,
    // multiple sinks or a disconnected graph.
    explicit Dag(const std::vector<std::pair<NodeId, NodeId>>& edge_list,
                 const std::vector<NodeId>& isolated_nodes = {});

    int size() const { return static_cast<int>(names_.size()); }
    int root() const { return root_; }
    const NodeId& name(int v) const { return names_[v]; }
    const std::vector<NodeId>& names() const { return names_; }

    // Index of an id, -1 when unknown.
    int find(std::string_view id) const;
    // Index of an id; throws ValidationError when unknown.
    int at(std::string_view id) const;

    // In-neighbors of v (its children), sorted by index.
    const std::vector<int>& in_neighbors(int v) const { return in_[v]; }
    // Out-neighbors of v (its parents), sorted by index.
    const std::vector<int>& out_neighbors(int v) const { return out_[v]; }

    bool has_edge(int u, int v) const;
    // All directed edges (child, parent), sorted by child then parent.
    std::vector<std::pair<int, int>> edges() const;
    int edge_count() const;

    // True when every non-root node has out-degree exactly 1.
    bool tree_shaped() const;

    // One edge per line "u v", LF endings, sorted lexicographically by child
    // token then parent token. A single isolated node serializes as its id.
    std::string serialize() const;

protected:
    Dag() = default;

    std::vector<NodeId> names_;
    std::vector<std::vector<int>> in_;
    std::vector<std::vector<int>> out_;
    int root_ = -1;
};

// A rooted directed tree: a Dag where the root is reachable from every node
// along unique paths (every non-root node has exactly one parent... exactly
// one out-edge).
class RootedTree : public Dag {
public:
    explicit RootedTree(const std::vector<std::pair<NodeId, NodeId>>& edge_list,
                        const std::vector<NodeId>& isolated_nodes = {});
    // Reclassifies a general Dag; throws ParseError when not tree shaped.
    explicit RootedTree(Dag dag);

    // Parent index, -1 for the root.
    int parent(int v) const { return out_[v].empty() ? -1 : out_[v][0]; }
    const std::vector<int>& children(int v) const { return in_[v]; }
    bool is_leaf(int v) const { return in_[v].empty(); }
};

// An unrooted tree. Edge indices are assigned by sorting the unordered pairs
// (smaller endpoint first) lexicographically, matching serialized edge names.
class UndirectedTree {
public:
    explicit UndirectedTree(const std::vector<std::pair<NodeId, NodeId>>& edge_list,
                            const std::vector<NodeId>& isolated_nodes = {});

    int size() const { return static_cast<int>(names_.size()); }
    const NodeId& name(int v) const { return names_[v]; }
    const std::vector<NodeId>& names() const { return names_; }
    int find(std::string_view id) const;
    int at(std::string_view id) const;

    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    int max_degree() const;

    int edge_count() const { return static_cast<int>(edges_.size()); }
    // Endpoints of edge e, smaller index first.
    std::pair<int, int> edge(int e) const { return edges_[e]; }
    // Edge index for an endpoint pair, -1 when absent.
    int edge_index(int a, int b) const;
    // "u v" with the lexicographically smaller id first.
    std::string edge_name(int e) const;

private:
    std::vector<NodeId> names_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

// ---- parsing ----

// A parsed graph is a RootedTree whenever every non-root out-degree is 1,
// otherwise a general Dag.
using ParsedGraph = std::variant<RootedTree, Dag>;

// Text format: one edge "u v" per line (child parent); a line with a single
// token declares an isolated node; blank lines and lines starting with '#'
// are ignored. The root is inferred as the unique node with out-degree 0.
ParsedGraph parse_graph(std::string_view text);

const Dag& graph_of(const ParsedGraph& g);
// Throws ValidationError when the parsed graph is not a rooted tree.
const RootedTree& require_tree(const ParsedGraph& g);

// ---- structural operations ----

// Forgets edge directions.
UndirectedTree underlying(const RootedTree& t);

// The subtree rooted at u: u plus all nodes whose path to the root passes
// through u.
RootedTree subtree(const RootedTree& t, int u);

// Splits T at edge (u,v) into (T_u, T \ T_u). The second component keeps
// T's root; the node sets partition T's nodes.
std::pair<RootedTree, RootedTree> split(const RootedTree& t, int u, int v);

// Maximum number of nodes on any root-to-leaf path (a single node has
// height 1).
int height(const RootedTree& t);

// Reorients every edge toward v. v must be a leaf (in-degree 0).
RootedTree reroot_at_leaf(const RootedTree& t, int v);

// ---- families ----

// Complete binary tree of height h: 2^h - 1 nodes named level-order
// "1".."2^h-1", root "1", children of k named 2k and 2k+1.
RootedTree complete_binary_tree(int h);

// Directed path on n nodes with a leaf as the root: "1" (root) <- "2" <- ...
RootedTree chain(int n);

// A chain of i nodes "c1" (root) <- ... <- "ci" fed by the root of a
// complete binary tree of height h. i = 0 gives just the binary tree.
RootedTree chain_plus_bt(int i, int h);

// ---- separator ----

// A connected subtree of T' whose size s satisfies
// floor(n^((k0-1)/k0) / 2) <= s <= ceil(n^((k0-1)/k0)), found by repeatedly
// splitting at the most balanced edge and descending into the larger side.
// Requires |T'| > n^((k0-1)/k0). Returns sorted node indices.
std::vector<int> separator_subtree(const UndirectedTree& t, long long n, int k0);

namespace detail {
// Separator descent on an induced connected subtree (sorted node indices).
std::vector<int> balanced_subtree(const UndirectedTree& u, std::vector<int> nodes,
                                  long double target);
}  // namespace detail

}  // namespace revpeb
