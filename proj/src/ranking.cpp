#include "revpeb/ranking.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

namespace revpeb {

int EdgeColoring::rank() const {
    int r = 0;
    for (int c : color) r = std::max(r, c);
    return r;
}

namespace {

// Rooted orientation of an undirected tree: BFS from vertex 0.
struct Rooting {
    std::vector<int> parent, parent_edge, order;  // order is BFS (root first)
    std::vector<std::vector<int>> kids;

    explicit Rooting(const UndirectedTree& u)
        : parent(u.size(), -1), parent_edge(u.size(), -1), kids(u.size()) {
        order.reserve(u.size());
        order.push_back(0);
        for (size_t i = 0; i < order.size(); ++i) {
            int v = order[i];
            for (int w : u.neighbors(v))
                if (w != parent[v]) {
                    parent[w] = v;
                    parent_edge[w] = u.edge_index(v, w);
                    kids[v].push_back(w);
                    order.push_back(w);
                }
        }
    }
};

// Edges strictly between two edges, via parent walks from the closer
// endpoints. Only used to build diagnostics.
std::vector<int> edges_between(const UndirectedTree& u, const Rooting& r, int e1, int e2) {
    std::vector<int> depth(u.size(), 0);
    for (size_t i = 1; i < r.order.size(); ++i)
        depth[r.order[i]] = depth[r.parent[r.order[i]]] + 1;

    auto path_edges = [&](int x, int y) {
        std::vector<int> out;
        while (x != y) {
            if (depth[x] < depth[y]) std::swap(x, y);
            out.push_back(r.parent_edge[x]);
            x = r.parent[x];
        }
        return out;
    };

    auto [a1, b1] = u.edge(e1);
    auto [a2, b2] = u.edge(e2);
    std::vector<int> best;
    bool have = false;
    for (int x : {a1, b1})
        for (int y : {a2, b2}) {
            auto p = path_edges(x, y);
            if (!have || p.size() < best.size()) {
                best = std::move(p);
                have = true;
            }
        }
    return best;
}

[[noreturn]] void coloring_conflict(const UndirectedTree& u, const Rooting& r, int col,
                                    int e1, int e2) {
    std::string msg = "edges '" + u.edge_name(e1) + "' and '" + u.edge_name(e2) +
                      "' share color " + std::to_string(col) +
                      " with no higher color between them";
    auto path = edges_between(u, r, e1, e2);
    if (!path.empty()) {
        msg += "; path:";
        for (int g : path) msg += " '" + u.edge_name(g) + "'";
    }
    throw ValidationError(msg);
}

}  // namespace

int validate_coloring(const UndirectedTree& u, const EdgeColoring& c) {
    const int m = u.edge_count();
    if (static_cast<int>(c.color.size()) != m)
        throw ValidationError("coloring does not cover every edge");
    for (int e = 0; e < m; ++e)
        if (c.color[e] < 1)
            throw ValidationError("edge '" + u.edge_name(e) + "' has no positive color");
    if (m == 0) return 0;

    Rooting r(u);
    // Per vertex: colors visible from below (no higher color between their
    // edge and this vertex), with a representative edge per color.
    std::vector<std::vector<std::pair<int, int>>> vis(u.size());
    for (size_t i = r.order.size(); i-- > 0;) {
        int v = r.order[i];
        std::map<int, int> merged;
        for (int w : r.kids[v]) {
            int e = r.parent_edge[w];
            int col = c.color[e];
            const auto& below = vis[w];
            auto it = std::lower_bound(below.begin(), below.end(),
                                       std::make_pair(col, -1));
            if (it != below.end() && it->first == col)
                coloring_conflict(u, r, col, e, it->second);
            auto insert = [&](int color, int edge) {
                auto [pos, fresh] = merged.emplace(color, edge);
                if (!fresh) coloring_conflict(u, r, color, pos->second, edge);
            };
            insert(col, e);
            for (; it != below.end(); ++it) insert(it->first, it->second);
        }
        vis[v].assign(merged.begin(), merged.end());
    }

    return c.rank();
}

// ---- exact solver ----

namespace {

// A DP state is the set of colors visible from a subtree at its top vertex.
// Bit c-1 stands for color c; ranks are capped at 62 colors.
using ColorSet = std::uint64_t;

constexpr size_t kFamilyCap = 200000;

// Keeps out an antichain under set inclusion: a state is useful only if no
// kept subset of it is achievable.
void add_minimal(std::vector<ColorSet>& out, ColorSet s) {
    for (ColorSet t : out)
        if ((t & s) == t) return;
    out.erase(std::remove_if(out.begin(), out.end(),
                             [s](ColorSet t) { return (t & s) == s; }),
              out.end());
    out.push_back(s);
}

struct RankSearch {
    const UndirectedTree& u;
    const int K;
    Rooting r;
    std::vector<int> forced;            // per edge id, 0 = free
    std::vector<int> edge_child;        // per edge id: lower endpoint in the rooting
    std::vector<std::vector<ColorSet>> fam;

    RankSearch(const UndirectedTree& tree, int k)
        : u(tree), K(k), r(tree), forced(tree.edge_count(), 0),
          edge_child(tree.edge_count(), -1), fam(tree.size()) {
        for (int v = 0; v < u.size(); ++v)
            if (r.parent_edge[v] >= 0) edge_child[r.parent_edge[v]] = v;
    }

    // Recomputes the family of v from its children. Returns whether it changed.
    bool compute_vertex(int v) {
        std::vector<ColorSet> cur{0};
        std::vector<ColorSet> branch, next;
        for (int w : r.kids[v]) {
            branch.clear();
            const int e = r.parent_edge[w];
            const int lo = forced[e] ? forced[e] : 1;
            const int hi = forced[e] ? forced[e] : K;
            for (ColorSet s : fam[w])
                for (int col = lo; col <= hi; ++col) {
                    const ColorSet bit = ColorSet(1) << (col - 1);
                    if (s & bit) continue;
                    add_minimal(branch, bit | (s & ~((bit << 1) - 1)));
                }
            if (branch.empty()) {
                cur.clear();
                break;
            }
            next.clear();
            for (ColorSet a : cur)
                for (ColorSet b : branch)
                    if ((a & b) == 0) add_minimal(next, a | b);
            if (next.size() > kFamilyCap)
                throw SizeCapError("edge ranking search exceeded its state cap "
                                   "(very high degree input)");
            cur = next;
            if (cur.empty()) break;
        }
        std::sort(cur.begin(), cur.end());
        if (cur == fam[v]) return false;
        fam[v] = std::move(cur);
        return true;
    }

    void run_full() {
        for (size_t i = r.order.size(); i-- > 0;) compute_vertex(r.order[i]);
    }

    // After changing the constraint of the edge above `child`, refresh the
    // chain of ancestors; stop as soon as a family is unaffected.
    void update_from(int child) {
        for (int v = r.parent[child]; v >= 0; v = r.parent[v])
            if (!compute_vertex(v)) break;
    }

    bool feasible() const { return !fam[0].empty(); }
};

}  // namespace

EdgeColoring erank_opt(const UndirectedTree& u) {
    const int m = u.edge_count();
    if (m == 0) return {};

    for (int k = std::max(1, u.max_degree());; ++k) {
        if (k > 62) throw SizeCapError("edge rank exceeds the solver limit of 62");
        RankSearch rs(u, k);
        rs.run_full();
        if (!rs.feasible()) continue;

        // Fix colors one edge at a time, in edge-id order, always taking the
        // smallest color that keeps a completion within k colors possible.
        for (int e = 0; e < m; ++e) {
            bool ok = false;
            for (int c = 1; c <= k; ++c) {
                rs.forced[e] = c;
                rs.update_from(rs.edge_child[e]);
                if (rs.feasible()) {
                    ok = true;
                    break;
                }
            }
            if (!ok) throw std::logic_error("erank_opt: reconstruction lost feasibility");
        }
        EdgeColoring out{rs.forced};
        if (out.rank() != k)
            throw std::logic_error("erank_opt: reconstruction changed the rank");
        return out;
    }
}

bool erank_bruteforce(const UndirectedTree& u, int k) {
    const int m = u.edge_count();
    if (m > 14) throw SizeCapError("erank_bruteforce is capped at 14 edges");
    if (m == 0) return true;
    if (k < 1) return false;

    // BFS edge order from vertex 0: every prefix spans a connected subtree,
    // so each new edge can be fully checked against the prefix.
    Rooting r(u);
    std::vector<int> order;
    order.reserve(m);
    for (size_t i = 1; i < r.order.size(); ++i) order.push_back(r.parent_edge[r.order[i]]);

    // between[e][f]: bitmask of edges strictly between e and f.
    std::vector<std::vector<std::uint32_t>> between(m, std::vector<std::uint32_t>(m, 0));
    for (int e = 0; e < m; ++e)
        for (int f = e + 1; f < m; ++f) {
            std::uint32_t mask = 0;
            for (int g : edges_between(u, r, e, f)) mask |= 1u << g;
            between[e][f] = between[f][e] = mask;
        }

    const int kmax = std::min(k, m);
    std::vector<int> color(m, 0);
    std::vector<std::vector<int>> with_color(kmax + 1);

    auto dfs = [&](auto&& self, int i) -> bool {
        if (i == m) return true;
        const int e = order[i];
        for (int c = 1; c <= kmax; ++c) {
            bool ok = true;
            for (int f : with_color[c]) {
                std::uint32_t mask = between[e][f];
                bool separated = false;
                while (mask) {
                    int g = std::countr_zero(mask);
                    mask &= mask - 1;
                    if (color[g] > c) {
                        separated = true;
                        break;
                    }
                }
                if (!separated) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            color[e] = c;
            with_color[c].push_back(e);
            if (self(self, i + 1)) return true;
            with_color[c].pop_back();
            color[e] = 0;
        }
        return false;
    };
    return dfs(dfs, 0);
}

// ---- matching game ----

ContractionState::ContractionState(const UndirectedTree& u)
    : parent_(u.size()), classes_(u.size()) {
    std::iota(parent_.begin(), parent_.end(), 0);
}

int ContractionState::find(int v) const {
    while (parent_[v] != v) {
        parent_[v] = parent_[parent_[v]];
        v = parent_[v];
    }
    return v;
}

void ContractionState::unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);  // smaller index represents the class
    parent_[b] = a;
    --classes_;
}

ContractionState contract(const ContractionState& state, const UndirectedTree& u,
                          const std::vector<int>& matching) {
    ContractionState out = state;
    std::vector<std::pair<int, int>> touched;  // (class, edge)
    for (int e : matching) {
        if (e < 0 || e >= u.edge_count()) throw ValidationError("unknown edge in matching");
        auto [a, b] = u.edge(e);
        int ra = out.find(a), rb = out.find(b);
        if (ra == rb)
            throw ValidationError("edge '" + u.edge_name(e) + "' is no longer live");
        touched.emplace_back(ra, e);
        touched.emplace_back(rb, e);
    }
    std::sort(touched.begin(), touched.end());
    for (size_t i = 1; i < touched.size(); ++i)
        if (touched[i].first == touched[i - 1].first)
            throw ValidationError("edges '" + u.edge_name(touched[i - 1].second) +
                                  "' and '" + u.edge_name(touched[i].second) +
                                  "' share the contracted node containing '" +
                                  u.name(touched[i].first) + "'");
    for (int e : matching) {
        auto [a, b] = u.edge(e);
        out.unite(a, b);
    }
    return out;
}

int validate_matchings(const UndirectedTree& u, const MatchingSequence& seq) {
    ContractionState state(u);
    for (size_t i = 0; i < seq.steps.size(); ++i) {
        try {
            state = contract(state, u, seq.steps[i]);
        } catch (const ValidationError& e) {
            throw ValidationError("step " + std::to_string(i) + ": " + e.what(),
                                  static_cast<long long>(i));
        }
    }
    if (state.classes() != 1)
        throw ValidationError("did not reach a single node: " +
                              std::to_string(state.classes()) + " classes remain");
    return static_cast<int>(seq.steps.size());
}

MatchingSequence coloring_to_matchings(const UndirectedTree& u, const EdgeColoring& c) {
    const int rank = validate_coloring(u, c);
    MatchingSequence seq;
    seq.steps.assign(rank, {});
    for (int e = 0; e < u.edge_count(); ++e) seq.steps[c.color[e] - 1].push_back(e);
    return seq;
}

EdgeColoring matchings_to_coloring(const UndirectedTree& u, const MatchingSequence& seq) {
    validate_matchings(u, seq);
    EdgeColoring c;
    c.color.assign(u.edge_count(), 0);
    for (size_t i = 0; i < seq.steps.size(); ++i)
        for (int e : seq.steps[i]) c.color[e] = static_cast<int>(i) + 1;
    return c;
}

// ---- text formats ----

namespace {

std::vector<std::string> split_ws(std::string_view line) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
        if (j > i) tokens.emplace_back(line.substr(i, j - i));
        i = j;
    }
    return tokens;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = eol + 1;
    }
    return lines;
}

}  // namespace

EdgeColoring parse_coloring(const UndirectedTree& u, std::string_view text) {
    EdgeColoring c;
    c.color.assign(u.edge_count(), 0);
    int lineno = 0;
    for (auto line : split_lines(text)) {
        ++lineno;
        auto tokens = split_ws(line);
        if (tokens.empty() || tokens[0][0] == '#') continue;
        if (tokens.size() != 3)
            throw ParseError("line " + std::to_string(lineno) + ": expected 'u v color'");
        int e = u.edge_index(u.at(tokens[0]), u.at(tokens[1]));
        if (e < 0)
            throw ParseError("line " + std::to_string(lineno) + ": unknown edge '" +
                             tokens[0] + " " + tokens[1] + "'");
        long long col;
        try {
            size_t used = 0;
            col = std::stoll(tokens[2], &used);
            if (used != tokens[2].size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(lineno) + ": bad color '" +
                             tokens[2] + "'");
        }
        if (col < 1 || col > 1000000000)
            throw ParseError("line " + std::to_string(lineno) + ": color out of range");
        if (c.color[e] != 0)
            throw ParseError("line " + std::to_string(lineno) + ": edge colored twice");
        c.color[e] = static_cast<int>(col);
    }
    return c;
}

std::string serialize_coloring(const UndirectedTree& u, const EdgeColoring& c) {
    std::string out;
    for (int e = 0; e < u.edge_count(); ++e) {
        out += u.edge_name(e);
        out += ' ';
        out += std::to_string(e < static_cast<int>(c.color.size()) ? c.color[e] : 0);
        out += '\n';
    }
    return out;
}

namespace {

int parse_edge_token(const UndirectedTree& u, const std::string& token) {
    int found = -1;
    for (size_t i = 1; i + 1 <= token.size(); ++i) {
        if (token[i] != '-') continue;
        int a = u.find(token.substr(0, i));
        int b = u.find(token.substr(i + 1));
        if (a < 0 || b < 0) continue;
        int e = u.edge_index(a, b);
        if (e < 0) continue;
        if (found >= 0 && found != e)
            throw ParseError("ambiguous edge token '" + token + "'");
        found = e;
    }
    if (found < 0) throw ParseError("unknown edge token '" + token + "'");
    return found;
}

}  // namespace

MatchingSequence parse_matchings(const UndirectedTree& u, std::string_view text) {
    MatchingSequence seq;
    for (auto line : split_lines(text)) {
        std::vector<int> step;
        for (const auto& token : split_ws(line)) step.push_back(parse_edge_token(u, token));
        std::sort(step.begin(), step.end());
        seq.steps.push_back(std::move(step));
    }
    return seq;
}

std::string serialize_matchings(const UndirectedTree& u, const MatchingSequence& seq) {
    std::string out;
    for (const auto& step : seq.steps) {
        auto sorted = step;
        std::sort(sorted.begin(), sorted.end());
        for (size_t i = 0; i < sorted.size(); ++i) {
            if (i) out += ' ';
            auto [a, b] = u.edge(sorted[i]);
            out += u.name(a);
            out += '-';
            out += u.name(b);
        }
        out += '\n';
    }
    return out;
}

}  // namespace revpeb
