#include "revpeb/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace revpeb {

namespace {

int lookup(const std::vector<NodeId>& names, std::string_view id) {
    auto it = std::lower_bound(names.begin(), names.end(), id);
    if (it == names.end() || *it != id) return -1;
    return static_cast<int>(it - names.begin());
}

std::vector<NodeId> collect_names(const std::vector<std::pair<NodeId, NodeId>>& edges,
                                  const std::vector<NodeId>& isolated) {
    std::vector<NodeId> names;
    names.reserve(edges.size() * 2 + isolated.size());
    for (const auto& [u, v] : edges) {
        names.push_back(u);
        names.push_back(v);
    }
    for (const auto& v : isolated) names.push_back(v);
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    if (names.empty()) throw ParseError("empty graph");
    return names;
}

}  // namespace

Dag::Dag(const std::vector<std::pair<NodeId, NodeId>>& edge_list,
         const std::vector<NodeId>& isolated_nodes) {
    names_ = collect_names(edge_list, isolated_nodes);
    const int n = size();
    in_.assign(n, {});
    out_.assign(n, {});

    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_list.size());
    for (const auto& [us, vs] : edge_list) {
        int u = lookup(names_, us);
        int v = lookup(names_, vs);
        if (u == v) throw ParseError("cycle detected: self-loop at '" + us + "'");
        edges.emplace_back(u, v);
    }
    std::sort(edges.begin(), edges.end());
    for (size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            throw ParseError("duplicate edge '" + names_[edges[i].first] + " " +
                             names_[edges[i].second] + "'");
    for (auto [u, v] : edges) {
        out_[u].push_back(v);
        in_[v].push_back(u);
    }

    std::vector<int> sinks;
    for (int v = 0; v < n; ++v)
        if (out_[v].empty()) sinks.push_back(v);
    if (sinks.empty()) throw ParseError("cycle detected: no sink node");
    if (sinks.size() > 1) {
        std::string msg = "multiple sinks:";
        for (int s : sinks) msg += " '" + names_[s] + "'";
        throw ParseError(msg);
    }
    root_ = sinks[0];

    // Kahn peeling from the sink side; anything left over lies on a cycle.
    std::vector<int> outcnt(n);
    for (int v = 0; v < n; ++v) outcnt[v] = static_cast<int>(out_[v].size());
    std::vector<int> queue{root_};
    size_t head = 0;
    while (head < queue.size()) {
        int v = queue[head++];
        for (int u : in_[v])
            if (--outcnt[u] == 0) queue.push_back(u);
    }
    if (queue.size() != static_cast<size_t>(n)) throw ParseError("cycle detected");

    // With a unique sink and no cycles this cannot fire, but keep the listed
    // error reachable for any future construction path.
    std::vector<char> seen(n, 0);
    std::vector<int> bfs{root_};
    seen[root_] = 1;
    head = 0;
    while (head < bfs.size()) {
        int v = bfs[head++];
        for (int u : in_[v])
            if (!seen[u]) {
                seen[u] = 1;
                bfs.push_back(u);
            }
    }
    for (int v = 0; v < n; ++v)
        if (!seen[v])
            throw ParseError("disconnected: node '" + names_[v] +
                             "' has no path to the root");
}

int Dag::find(std::string_view id) const { return lookup(names_, id); }

int Dag::at(std::string_view id) const {
    int v = find(id);
    if (v < 0) throw ValidationError("unknown node '" + std::string(id) + "'");
    return v;
}

bool Dag::has_edge(int u, int v) const {
    const auto& o = out_[u];
    return std::binary_search(o.begin(), o.end(), v);
}

std::vector<std::pair<int, int>> Dag::edges() const {
    std::vector<std::pair<int, int>> result;
    for (int u = 0; u < size(); ++u)
        for (int v : out_[u]) result.emplace_back(u, v);
    return result;
}

int Dag::edge_count() const {
    int m = 0;
    for (const auto& o : out_) m += static_cast<int>(o.size());
    return m;
}

bool Dag::tree_shaped() const {
    for (int v = 0; v < size(); ++v)
        if (v != root_ && out_[v].size() != 1) return false;
    return true;
}

std::string Dag::serialize() const {
    if (size() == 1) return names_[0] + "\n";
    std::string out;
    for (int u = 0; u < size(); ++u)
        for (int v : out_[u]) {
            out += names_[u];
            out += ' ';
            out += names_[v];
            out += '\n';
        }
    return out;
}

RootedTree::RootedTree(const std::vector<std::pair<NodeId, NodeId>>& edge_list,
                       const std::vector<NodeId>& isolated_nodes)
    : Dag(edge_list, isolated_nodes) {
    if (!tree_shaped()) throw ParseError("graph is not a rooted tree");
}

RootedTree::RootedTree(Dag dag) : Dag(std::move(dag)) {
    if (!tree_shaped()) throw ParseError("graph is not a rooted tree");
}

UndirectedTree::UndirectedTree(const std::vector<std::pair<NodeId, NodeId>>& edge_list,
                               const std::vector<NodeId>& isolated_nodes) {
    names_ = collect_names(edge_list, isolated_nodes);
    const int n = size();
    adj_.assign(n, {});
    edges_.reserve(edge_list.size());
    for (const auto& [us, vs] : edge_list) {
        int a = lookup(names_, us);
        int b = lookup(names_, vs);
        if (a == b) throw ParseError("self-loop at '" + us + "'");
        if (a > b) std::swap(a, b);
        edges_.emplace_back(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
    for (size_t i = 1; i < edges_.size(); ++i)
        if (edges_[i] == edges_[i - 1])
            throw ParseError("duplicate edge '" + edge_name(static_cast<int>(i)) + "'");
    for (int e = 0; e < edge_count(); ++e) {
        auto [a, b] = edges_[e];
        adj_[a].push_back(b);
        adj_[b].push_back(a);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());

    if (edge_count() != n - 1) throw ParseError("not a tree: |E| != |V| - 1");
    std::vector<char> seen(n, 0);
    std::vector<int> bfs{0};
    seen[0] = 1;
    size_t head = 0;
    while (head < bfs.size()) {
        int v = bfs[head++];
        for (int u : adj_[v])
            if (!seen[u]) {
                seen[u] = 1;
                bfs.push_back(u);
            }
    }
    if (bfs.size() != static_cast<size_t>(n)) throw ParseError("not a tree: disconnected");
}

int UndirectedTree::find(std::string_view id) const { return lookup(names_, id); }

int UndirectedTree::at(std::string_view id) const {
    int v = find(id);
    if (v < 0) throw ValidationError("unknown node '" + std::string(id) + "'");
    return v;
}

int UndirectedTree::max_degree() const {
    int d = 0;
    for (const auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
    return d;
}

int UndirectedTree::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(a, b));
    if (it == edges_.end() || *it != std::make_pair(a, b)) return -1;
    return static_cast<int>(it - edges_.begin());
}

std::string UndirectedTree::edge_name(int e) const {
    auto [a, b] = edges_[e];
    return names_[a] + " " + names_[b];
}

ParsedGraph parse_graph(std::string_view text) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<NodeId> isolated;

    size_t pos = 0;
    int lineno = 0;
    while (pos <= text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        std::vector<std::string> tokens;
        size_t i = 0;
        while (i < line.size()) {
            while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
            size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
            if (j > i) tokens.emplace_back(line.substr(i, j - i));
            i = j;
        }
        if (tokens.empty()) continue;
        if (tokens[0][0] == '#') continue;
        if (tokens.size() == 1)
            isolated.push_back(tokens[0]);
        else if (tokens.size() == 2)
            edges.emplace_back(tokens[0], tokens[1]);
        else
            throw ParseError("line " + std::to_string(lineno) +
                             ": expected 'u v' or a single node id");
        if (pos > text.size()) break;
    }

    Dag d(edges, isolated);
    if (d.tree_shaped()) return RootedTree(std::move(d));
    return d;
}

const Dag& graph_of(const ParsedGraph& g) {
    if (std::holds_alternative<RootedTree>(g)) return std::get<RootedTree>(g);
    return std::get<Dag>(g);
}

const RootedTree& require_tree(const ParsedGraph& g) {
    if (!std::holds_alternative<RootedTree>(g))
        throw ValidationError("input graph is a DAG, not a rooted tree");
    return std::get<RootedTree>(g);
}

UndirectedTree underlying(const RootedTree& t) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(t.size() - 1);
    for (int v = 0; v < t.size(); ++v)
        if (v != t.root()) edges.emplace_back(t.name(v), t.name(t.parent(v)));
    if (edges.empty()) return UndirectedTree({}, {t.name(t.root())});
    return UndirectedTree(edges);
}

namespace {

// Nodes of the subtree rooted at u, as a 0/1 mask over t's indices.
std::vector<char> descendants_mask(const RootedTree& t, int u) {
    std::vector<char> mask(t.size(), 0);
    std::vector<int> stack{u};
    mask[u] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : t.children(v))
            if (!mask[c]) {
                mask[c] = 1;
                stack.push_back(c);
            }
    }
    return mask;
}

RootedTree tree_from_mask(const RootedTree& t, const std::vector<char>& mask, int root) {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int v = 0; v < t.size(); ++v) {
        if (!mask[v] || v == root) continue;
        int p = t.parent(v);
        if (p < 0 || !mask[p])
            throw std::logic_error("tree_from_mask: node set is not parent-closed");
        edges.emplace_back(t.name(v), t.name(p));
    }
    if (edges.empty()) return RootedTree({}, {t.name(root)});
    return RootedTree(edges);
}

}  // namespace

RootedTree subtree(const RootedTree& t, int u) {
    if (u < 0 || u >= t.size()) throw ValidationError("unknown node");
    return tree_from_mask(t, descendants_mask(t, u), u);
}

std::pair<RootedTree, RootedTree> split(const RootedTree& t, int u, int v) {
    if (u < 0 || u >= t.size() || v < 0 || v >= t.size() || t.parent(u) != v)
        throw ValidationError("unknown edge");
    auto mask = descendants_mask(t, u);
    RootedTree lower = tree_from_mask(t, mask, u);
    for (auto& m : mask) m = !m;
    RootedTree rest = tree_from_mask(t, mask, t.root());
    return {std::move(lower), std::move(rest)};
}

int height(const RootedTree& t) {
    std::vector<int> depth(t.size(), 0);
    // Index order is not topological, so walk from the root.
    std::vector<int> stack{t.root()};
    depth[t.root()] = 1;
    int best = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        best = std::max(best, depth[v]);
        for (int c : t.children(v)) {
            depth[c] = depth[v] + 1;
            stack.push_back(c);
        }
    }
    return best;
}

RootedTree reroot_at_leaf(const RootedTree& t, int v) {
    if (v < 0 || v >= t.size() || !t.is_leaf(v))
        throw ValidationError("node '" + (v >= 0 && v < t.size() ? t.name(v) : "?") +
                              "' is not a leaf");
    if (t.size() == 1) return t;

    std::vector<std::vector<int>> adj(t.size());
    for (int x = 0; x < t.size(); ++x)
        if (x != t.root()) {
            adj[x].push_back(t.parent(x));
            adj[t.parent(x)].push_back(x);
        }

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::vector<int> toward(t.size(), -1);
    std::vector<int> bfs{v};
    toward[v] = v;
    size_t head = 0;
    while (head < bfs.size()) {
        int x = bfs[head++];
        for (int y : adj[x])
            if (toward[y] < 0) {
                toward[y] = x;
                edges.emplace_back(t.name(y), t.name(x));
                bfs.push_back(y);
            }
    }
    return RootedTree(edges);
}

RootedTree complete_binary_tree(int h) {
    if (h < 1) throw ValidationError("height must be positive");
    if (h == 1) return RootedTree({}, {"1"});
    std::vector<std::pair<NodeId, NodeId>> edges;
    long long nodes = (1LL << h) - 1;
    for (long long c = 2; c <= nodes; ++c)
        edges.emplace_back(std::to_string(c), std::to_string(c / 2));
    return RootedTree(edges);
}

RootedTree chain(int n) {
    if (n < 1) throw ValidationError("chain length must be positive");
    if (n == 1) return RootedTree({}, {"1"});
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int c = 2; c <= n; ++c)
        edges.emplace_back(std::to_string(c), std::to_string(c - 1));
    return RootedTree(edges);
}

RootedTree chain_plus_bt(int i, int h) {
    if (i < 0) throw ValidationError("chain length must be nonnegative");
    if (h < 1) throw ValidationError("height must be positive");
    if (i == 0) return complete_binary_tree(h);
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int c = 2; c <= i; ++c)
        edges.emplace_back("c" + std::to_string(c), "c" + std::to_string(c - 1));
    edges.emplace_back("1", "c" + std::to_string(i));
    long long nodes = (1LL << h) - 1;
    for (long long c = 2; c <= nodes; ++c)
        edges.emplace_back(std::to_string(c), std::to_string(c / 2));
    return RootedTree(edges);
}

namespace detail {

std::vector<int> balanced_subtree(const UndirectedTree& u, std::vector<int> nodes,
                                  long double target) {
    const long long hi = static_cast<long long>(std::ceil(target - 1e-6L));
    std::vector<char> mask(u.size(), 0);
    std::vector<int> sz(u.size(), 0), par(u.size(), -1), order;

    while (static_cast<long long>(nodes.size()) > hi) {
        for (int v : nodes) mask[v] = 1;
        // Subtree sizes of the induced tree, rooted at the first node.
        order.clear();
        order.push_back(nodes[0]);
        par[nodes[0]] = -1;
        for (size_t i = 0; i < order.size(); ++i) {
            int v = order[i];
            for (int w : u.neighbors(v))
                if (mask[w] && w != par[v]) {
                    par[w] = v;
                    order.push_back(w);
                }
        }
        for (int v : order) sz[v] = 1;
        for (size_t i = order.size(); i-- > 1;) sz[par[order[i]]] += sz[order[i]];

        const int s = static_cast<int>(nodes.size());
        int best_larger = s + 1, best_child = -1;
        for (size_t i = 1; i < order.size(); ++i) {
            int c = order[i];
            int larger = std::max(sz[c], s - sz[c]);
            if (larger < best_larger || (larger == best_larger && c < best_child)) {
                best_larger = larger;
                best_child = c;
            }
        }

        // Keep the larger side of the best split (ties keep the child side).
        bool child_side = sz[best_child] >= s - sz[best_child];
        std::vector<int> next;
        next.reserve(best_larger);
        if (child_side) {
            std::vector<int> stack{best_child};
            next.push_back(best_child);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : u.neighbors(v))
                    if (mask[w] && par[w] == v) {
                        next.push_back(w);
                        stack.push_back(w);
                    }
            }
        } else {
            std::vector<char> sub(u.size(), 0);
            std::vector<int> stack{best_child};
            sub[best_child] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : u.neighbors(v))
                    if (mask[w] && par[w] == v && !sub[w]) {
                        sub[w] = 1;
                        stack.push_back(w);
                    }
            }
            for (int v : nodes)
                if (!sub[v]) next.push_back(v);
        }
        for (int v : nodes) mask[v] = 0;
        std::sort(next.begin(), next.end());
        nodes = std::move(next);
    }
    return nodes;
}

}  // namespace detail

std::vector<int> separator_subtree(const UndirectedTree& t, long long n, int k0) {
    if (k0 < 1) throw ValidationError("k0 must be positive");
    if (n < 1) throw ValidationError("n must be positive");
    const long double target =
        std::pow(static_cast<long double>(n),
                 static_cast<long double>(k0 - 1) / static_cast<long double>(k0));
    if (static_cast<long double>(t.size()) <= target + 1e-6L)
        throw ValidationError("tree too small: need |T'| > n^((k0-1)/k0)");

    std::vector<int> all(t.size());
    for (int v = 0; v < t.size(); ++v) all[v] = v;
    auto result = detail::balanced_subtree(t, std::move(all), target);

    const long long lo = static_cast<long long>(std::floor(target / 2 + 1e-6L));
    const long long hi = static_cast<long long>(std::ceil(target - 1e-6L));
    const long long s = static_cast<long long>(result.size());
    if (s < lo || s > hi)
        throw std::logic_error("separator_subtree: size " + std::to_string(s) +
                               " outside [" + std::to_string(lo) + "," +
                               std::to_string(hi) + "]");
    return result;
}

}  // namespace revpeb
