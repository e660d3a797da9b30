#include "revpeb/strategy.hpp"

#include <algorithm>

namespace revpeb {

StrategyTree StrategyTree::make_leaf(int tree_node) {
    StrategyTree s;
    s.arena_.push_back(Node{tree_node, -1, -1, -1, -1});
    s.root_ = 0;
    return s;
}

StrategyTree StrategyTree::make_internal(int edge_child, int edge_parent,
                                         StrategyTree left, StrategyTree right) {
    StrategyTree s = std::move(left);
    const int offset = s.size();
    for (const Node& n : right.arena_) {
        Node shifted = n;
        if (shifted.left >= 0) shifted.left += offset;
        if (shifted.right >= 0) shifted.right += offset;
        s.arena_.push_back(shifted);
    }
    const int right_root = right.root_ + offset;
    const int left_root = s.root_;
    s.arena_.push_back(Node{-1, edge_child, edge_parent, left_root, right_root});
    s.root_ = s.size() - 1;
    return s;
}

int StrategyTree::depth() const {
    std::vector<int> d(arena_.size(), 0);
    // Children always precede their parent in the arena.
    for (size_t i = 0; i < arena_.size(); ++i) {
        const Node& n = arena_[i];
        d[i] = n.leaf >= 0 ? 1 : 1 + std::max(d[n.left], d[n.right]);
    }
    return d[root_];
}

namespace {

// Nodes of the subtree of `top` inside the piece given by `mask`.
std::vector<char> piece_descendants(const RootedTree& t, const std::vector<char>& mask,
                                    int top) {
    std::vector<char> out(t.size(), 0);
    std::vector<int> stack{top};
    out[top] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int c : t.children(v))
            if (mask[c] && !out[c]) {
                out[c] = 1;
                stack.push_back(c);
            }
    }
    return out;
}

int count_mask(const std::vector<char>& mask) {
    int n = 0;
    for (char b : mask) n += b != 0;
    return n;
}

int validate_piece(const RootedTree& t, const StrategyTree& s, int si,
                   const std::vector<char>& mask, int piece_root, int piece_size) {
    const auto& node = s.node(si);
    if (node.leaf >= 0) {
        if (piece_size != 1 || !mask[node.leaf] || node.leaf != piece_root)
            throw ValidationError(
                "strategy leaf '" + t.name(node.leaf) +
                "' does not match the remaining single-node piece");
        return 1;
    }
    const int u = node.edge_child, v = node.edge_parent;
    if (u < 0 || u >= t.size() || v < 0 || v >= t.size() || !mask[u] || !mask[v] ||
        t.parent(u) != v)
        throw ValidationError("strategy label is not an edge of the current piece");

    auto lower = piece_descendants(t, mask, u);
    const int lower_size = count_mask(lower);
    std::vector<char> rest(t.size(), 0);
    for (int x = 0; x < t.size(); ++x) rest[x] = mask[x] && !lower[x];

    int dl = validate_piece(t, s, node.left, lower, u, lower_size);
    int dr = validate_piece(t, s, node.right, rest, piece_root, piece_size - lower_size);
    return 1 + std::max(dl, dr);
}

}  // namespace

int validate_strategy(const RootedTree& t, const StrategyTree& s) {
    std::vector<char> all(t.size(), 1);
    return validate_piece(t, s, s.root(), all, t.root(), t.size());
}

MatchingSequence strategy_to_matchings(const RootedTree& t, const StrategyTree& s) {
    validate_strategy(t, s);
    UndirectedTree u = underlying(t);  // same node indices as t

    std::vector<int> level(s.size(), 0);
    int max_level = 0;
    for (int i = 0; i < s.size(); ++i) {
        const auto& n = s.node(i);
        if (n.leaf >= 0) continue;
        level[i] = 1 + std::max(level[n.left], level[n.right]);
        max_level = std::max(max_level, level[i]);
    }

    MatchingSequence seq;
    seq.steps.assign(max_level, {});
    for (int i = 0; i < s.size(); ++i) {
        const auto& n = s.node(i);
        if (n.leaf >= 0) continue;
        seq.steps[level[i] - 1].push_back(u.edge_index(n.edge_child, n.edge_parent));
    }
    for (auto& step : seq.steps) std::sort(step.begin(), step.end());
    return seq;
}

namespace {

StrategyTree strategy_from_steps(const RootedTree& t,
                                 std::vector<std::vector<std::pair<int, int>>> steps,
                                 const std::vector<char>& mask, int piece_root) {
    while (!steps.empty() && steps.back().empty()) steps.pop_back();
    if (steps.empty()) {
        if (count_mask(mask) != 1)
            throw std::logic_error(
                "matchings_to_strategy: piece not fully contracted by its steps");
        return StrategyTree::make_leaf(piece_root);
    }
    if (steps.back().size() != 1)
        throw std::logic_error("matchings_to_strategy: final matching is not a single edge");
    auto [eu, ev] = steps.back()[0];
    steps.pop_back();

    auto lower = piece_descendants(t, mask, eu);
    std::vector<char> rest(t.size(), 0);
    for (int x = 0; x < t.size(); ++x) rest[x] = mask[x] && !lower[x];

    std::vector<std::vector<std::pair<int, int>>> left_steps(steps.size()),
        right_steps(steps.size());
    for (size_t i = 0; i < steps.size(); ++i)
        for (auto [a, b] : steps[i]) {
            if (lower[a] && lower[b])
                left_steps[i].emplace_back(a, b);
            else if (rest[a] && rest[b])
                right_steps[i].emplace_back(a, b);
            else
                throw std::logic_error("matchings_to_strategy: edge straddles the split");
        }

    StrategyTree left = strategy_from_steps(t, std::move(left_steps), lower, eu);
    StrategyTree right = strategy_from_steps(t, std::move(right_steps), rest, piece_root);
    return StrategyTree::make_internal(eu, ev, std::move(left), std::move(right));
}

}  // namespace

StrategyTree matchings_to_strategy(const RootedTree& t, const MatchingSequence& seq) {
    UndirectedTree u = underlying(t);
    const int len = validate_matchings(u, seq);

    // Orient every matched edge child->parent as in t.
    std::vector<std::vector<std::pair<int, int>>> steps(seq.steps.size());
    for (size_t i = 0; i < seq.steps.size(); ++i)
        for (int e : seq.steps[i]) {
            auto [a, b] = u.edge(e);
            if (t.parent(a) == b)
                steps[i].emplace_back(a, b);
            else
                steps[i].emplace_back(b, a);
        }

    std::vector<char> all(t.size(), 1);
    StrategyTree s = strategy_from_steps(t, std::move(steps), all, t.root());
    if (s.depth() > len + 1)
        throw std::logic_error("matchings_to_strategy: depth exceeds length + 1");
    return s;
}

namespace {

// Emits compile(S) forward, or its reversal when rev is set, returning the
// move count. reverse(A B rev(A)) = A rev(B) rev(A), so both modes share the
// same recursion shape.
long long emit_strategy(const StrategyTree& s, int si, bool rev, MoveSink& sink) {
    const auto& n = s.node(si);
    if (n.leaf >= 0) {
        sink.move(rev ? MoveKind::Remove : MoveKind::Place, n.leaf);
        return 1;
    }
    long long a = emit_strategy(s, n.left, false, sink);
    long long b = emit_strategy(s, n.right, rev, sink);
    long long a2 = emit_strategy(s, n.left, true, sink);
    if (a2 != a) throw std::logic_error("compile: asymmetric reversal");
    return 2 * a + b;
}

}  // namespace

void compile(const RootedTree& t, const StrategyTree& s, MoveSink& sink) {
    validate_strategy(t, s);
    emit_strategy(s, s.root(), false, sink);
}

PebbleSequence compile(const RootedTree& t, const StrategyTree& s) {
    validate_strategy(t, s);
    VectorSink out;
    long long count = emit_strategy(s, s.root(), false, out);
    if (count != static_cast<long long>(out.seq.moves.size()))
        throw std::logic_error("compile: move count mismatch");
    return std::move(out.seq);
}

SolveResult solve(const RootedTree& t) {
    UndirectedTree u = underlying(t);
    EdgeColoring coloring = erank_opt(u);
    const int rank = coloring.rank();

    MatchingSequence matchings = coloring_to_matchings(u, coloring);
    StrategyTree strategy = matchings_to_strategy(t, matchings);
    const int depth = validate_strategy(t, strategy);
    if (depth != rank + 1)
        throw std::logic_error("solve: strategy depth disagrees with erank + 1");

    SolveResult result;
    result.rev = rank + 1;
    result.sequence = compile(t, strategy);
    result.strategy = std::move(strategy);
    result.coloring = std::move(coloring);
    return result;
}

// ---- text format ----

namespace {

std::vector<std::string> strategy_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < text.size()) {
        char ch = text[i];
        if (ch == '(' || ch == ')') {
            tokens.emplace_back(1, ch);
            ++i;
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            ++i;
        } else {
            size_t j = i;
            while (j < text.size() && text[j] != '(' && text[j] != ')' &&
                   text[j] != ' ' && text[j] != '\t' && text[j] != '\n' &&
                   text[j] != '\r')
                ++j;
            tokens.emplace_back(text.substr(i, j - i));
            i = j;
        }
    }
    return tokens;
}

std::pair<int, int> parse_edge_label(const RootedTree& t, const std::string& token) {
    int fu = -1, fv = -1;
    bool found = false;
    for (size_t i = 1; i + 1 <= token.size(); ++i) {
        if (token[i] != '>') continue;
        int u = t.find(token.substr(0, i));
        int v = t.find(token.substr(i + 1));
        if (u < 0 || v < 0 || t.parent(u) != v) continue;
        if (found && (u != fu || v != fv))
            throw ParseError("ambiguous edge label '" + token + "'");
        fu = u;
        fv = v;
        found = true;
    }
    if (!found) throw ParseError("unknown edge label '" + token + "'");
    return {fu, fv};
}

StrategyTree parse_strategy_at(const RootedTree& t, const std::vector<std::string>& tokens,
                               size_t& pos) {
    if (pos >= tokens.size()) throw ParseError("unexpected end of strategy text");
    const std::string& tok = tokens[pos];
    if (tok == ")") throw ParseError("unexpected ')'");
    if (tok != "(") {
        ++pos;
        return StrategyTree::make_leaf(t.at(tok));
    }
    ++pos;  // '('
    if (pos >= tokens.size()) throw ParseError("unexpected end of strategy text");
    auto [u, v] = parse_edge_label(t, tokens[pos++]);
    StrategyTree left = parse_strategy_at(t, tokens, pos);
    StrategyTree right = parse_strategy_at(t, tokens, pos);
    if (pos >= tokens.size() || tokens[pos] != ")")
        throw ParseError("expected ')' in strategy text");
    ++pos;
    return StrategyTree::make_internal(u, v, std::move(left), std::move(right));
}

void serialize_strategy_at(const RootedTree& t, const StrategyTree& s, int si,
                           std::string& out) {
    const auto& n = s.node(si);
    if (n.leaf >= 0) {
        out += t.name(n.leaf);
        return;
    }
    out += '(';
    out += t.name(n.edge_child);
    out += '>';
    out += t.name(n.edge_parent);
    out += ' ';
    serialize_strategy_at(t, s, n.left, out);
    out += ' ';
    serialize_strategy_at(t, s, n.right, out);
    out += ')';
}

}  // namespace

StrategyTree parse_strategy(const RootedTree& t, std::string_view text) {
    auto tokens = strategy_tokens(text);
    size_t pos = 0;
    StrategyTree s = parse_strategy_at(t, tokens, pos);
    if (pos != tokens.size()) throw ParseError("trailing tokens after strategy");
    return s;
}

std::string serialize_strategy(const RootedTree& t, const StrategyTree& s) {
    std::string out;
    serialize_strategy_at(t, s, s.root(), out);
    out += '\n';
    return out;
}

}  // namespace revpeb
