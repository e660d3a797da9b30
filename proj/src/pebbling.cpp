#include "revpeb/pebbling.hpp"

#include <algorithm>

namespace revpeb {

PebbleConfig PebbleConfig::of_nodes(const Dag& g, const std::vector<NodeId>& ids) {
    PebbleConfig c(g);
    for (const auto& id : ids) c.add(g.at(id));
    return c;
}

void PebbleConfig::add(int v) {
    if (!bits_[v]) {
        bits_[v] = 1;
        ++count_;
    }
}

void PebbleConfig::erase(int v) {
    if (bits_[v]) {
        bits_[v] = 0;
        --count_;
    }
}

std::vector<int> PebbleConfig::nodes() const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(bits_.size()); ++v)
        if (bits_[v]) out.push_back(v);
    return out;
}

ValidatingSink::ValidatingSink(const Dag& g) : g_(g), on_(g.size(), 0) {
    in_offset_.assign(g.size() + 1, 0);
    for (int v = 0; v < g.size(); ++v)
        in_offset_[v + 1] = in_offset_[v] + static_cast<int>(g.in_neighbors(v).size());
    in_flat_.reserve(in_offset_.back());
    for (int v = 0; v < g.size(); ++v)
        for (int u : g.in_neighbors(v)) in_flat_.push_back(u);
}

void ValidatingSink::move(MoveKind kind, int node) {
    if (node < 0 || node >= g_.size())
        throw ValidationError("move " + std::to_string(nmoves_) + ": node out of range",
                              nmoves_);
    const bool placing = kind == MoveKind::Place;
    if (placing && on_[node])
        throw ValidationError("move " + std::to_string(nmoves_) + ": node '" +
                                  g_.name(node) + "' is already pebbled",
                              nmoves_);
    if (!placing && !on_[node])
        throw ValidationError("move " + std::to_string(nmoves_) + ": node '" +
                                  g_.name(node) + "' carries no pebble",
                              nmoves_);
    for (int i = in_offset_[node]; i < in_offset_[node + 1]; ++i)
        if (!on_[in_flat_[i]])
            throw ValidationError("move " + std::to_string(nmoves_) + ": in-neighbor '" +
                                      g_.name(in_flat_[i]) + "' of '" + g_.name(node) +
                                      "' is unpebbled",
                                  nmoves_);
    on_[node] = placing ? 1 : 0;
    count_ += placing ? 1 : -1;
    if (count_ > space_) space_ = count_;
    if (placing && node == g_.root()) root_seen_ = true;
    ++nmoves_;
}

void ValidatingSink::finish_persistent() const {
    if (count_ != 1 || !on_[g_.root()])
        throw ValidationError("final configuration is not {" + g_.name(g_.root()) + "}");
}

void ValidatingSink::finish_visiting() const {
    if (count_ != 0) throw ValidationError("final configuration is not empty");
    if (!root_seen_) throw ValidationError("root never visited");
}

PebbleConfig apply_move(const Dag& g, const PebbleConfig& c, Move mv) {
    const int v = mv.node;
    if (v < 0 || v >= g.size()) throw ValidationError("node out of range");
    const bool placing = mv.kind == MoveKind::Place;
    if (placing && c.has(v))
        throw ValidationError("node '" + g.name(v) + "' is already pebbled");
    if (!placing && !c.has(v))
        throw ValidationError("node '" + g.name(v) + "' carries no pebble");
    for (int u : g.in_neighbors(v))
        if (!c.has(u))
            throw ValidationError("in-neighbor '" + g.name(u) + "' of '" + g.name(v) +
                                  "' is unpebbled");
    PebbleConfig out = c;
    if (placing)
        out.add(v);
    else
        out.erase(v);
    return out;
}

PebbleStats validate_persistent(const Dag& g, const PebbleSequence& s) {
    ValidatingSink sink(g);
    for (const Move& m : s.moves) sink.move(m.kind, m.node);
    sink.finish_persistent();
    return sink.stats();
}

PebbleStats validate_visiting(const Dag& g, const PebbleSequence& s) {
    ValidatingSink sink(g);
    for (const Move& m : s.moves) sink.move(m.kind, m.node);
    sink.finish_visiting();
    return sink.stats();
}

PebbleSequence reverse(const PebbleSequence& s) {
    PebbleSequence out;
    out.moves.reserve(s.moves.size());
    for (auto it = s.moves.rbegin(); it != s.moves.rend(); ++it)
        out.moves.push_back(
            {it->kind == MoveKind::Place ? MoveKind::Remove : MoveKind::Place, it->node});
    return out;
}

PebbleSequence parse_moves(const Dag& g, std::string_view text) {
    PebbleSequence s;
    size_t pos = 0;
    int lineno = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        if (line[0] != '+' && line[0] != '-')
            throw ParseError("line " + std::to_string(lineno) +
                             ": moves start with '+' or '-'");
        std::string_view id = line.substr(1);
        if (id.empty())
            throw ParseError("line " + std::to_string(lineno) + ": missing node id");
        s.moves.push_back(
            {line[0] == '+' ? MoveKind::Place : MoveKind::Remove, g.at(id)});
    }
    return s;
}

std::string serialize_moves(const Dag& g, const PebbleSequence& s) {
    std::string out;
    for (const Move& m : s.moves) {
        out += m.kind == MoveKind::Place ? '+' : '-';
        out += g.name(m.node);
        out += '\n';
    }
    return out;
}

VisitingInstance to_visiting_instance(const RootedTree& t) {
    if (t.size() < 2)
        throw ValidationError("single-node tree has no visiting-game reduction");
    int leaf = -1;
    for (int v = 0; v < t.size(); ++v)
        if (t.is_leaf(v)) {
            leaf = v;  // indices follow id order, so the first leaf is smallest
            break;
        }
    RootedTree rerooted = reroot_at_leaf(t, leaf);
    int leaf_there = rerooted.at(t.name(leaf));
    int child = rerooted.children(leaf_there)[0];
    return {subtree(rerooted, child), -1};
}

RootedTree to_persistent_instance(const RootedTree& t) {
    NodeId fresh = t.name(t.root()) + "'";
    while (t.find(fresh) >= 0) fresh += "'";
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (int v = 0; v < t.size(); ++v)
        if (v != t.root()) edges.emplace_back(t.name(v), t.name(t.parent(v)));
    edges.emplace_back(t.name(t.root()), fresh);
    return RootedTree(edges);
}

}  // namespace revpeb
