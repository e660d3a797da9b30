#include "revpeb/generators.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "revpeb/strategy.hpp"

namespace revpeb {

namespace {

int ceil_log2(long long x) { return x <= 1 ? 0 : std::bit_width(static_cast<std::uint64_t>(x - 1)); }

// Validate while streaming; optionally collect and/or forward the moves.
class CombinedSink final : public MoveSink {
public:
    CombinedSink(const Dag& g, bool keep, MoveSink* tee)
        : validator_(g), tee_(tee) {
        if (keep) collected_.emplace();
    }

    void move(MoveKind kind, int node) override {
        validator_.move(kind, node);
        if (collected_) collected_->moves.push_back({kind, node});
        if (tee_) tee_->move(kind, node);
    }

    GenReport finish_persistent(std::map<std::string, long long> params) {
        validator_.finish_persistent();
        GenReport r;
        r.params = std::move(params);
        r.stats = validator_.stats();
        if (collected_) r.sequence = std::move(collected_);
        return r;
    }

private:
    ValidatingSink validator_;
    std::optional<PebbleSequence> collected_;
    MoveSink* tee_;
};

}  // namespace

// ---- chain ----

namespace {

struct ChainEmitter {
    MoveSink& sink;
    const std::vector<int>& pos_idx;  // 1-based position from the source leaf

    // Net effect: a pebble appears on (disappears from, when rev) position t,
    // given a held pebble on position s (s = 0 means no support needed).
    void seg(int s, int t, bool rev) {
        if (t == s + 1) {
            sink.move(rev ? MoveKind::Remove : MoveKind::Place, pos_idx[t]);
            return;
        }
        const int mid = s + (t - s + 1) / 2;
        seg(s, mid, false);
        seg(mid, t, rev);
        seg(s, mid, true);
    }
};

}  // namespace

GenReport chain_pebbling(int n, bool keep_sequence, MoveSink* tee) {
    if (n < 1) throw ValidationError("chain length must be >= 1");
    RootedTree t = chain(n);
    std::vector<int> pos_idx(n + 1, -1);
    for (int j = 1; j <= n; ++j) pos_idx[j] = t.at(std::to_string(n + 1 - j));

    CombinedSink sink(t, keep_sequence, tee);
    ChainEmitter{sink, pos_idx}.seg(0, n, false);
    return sink.finish_persistent({{"n", n}});
}

// ---- complete binary trees ----

namespace {

// Shared bookkeeping for the two complete-binary-tree generators. Nodes are
// addressed by their level-order number (root 1, children 2k and 2k+1).
struct BtContext {
    const RootedTree& tree;
    std::vector<int> idx_of_num;

    explicit BtContext(const RootedTree& t, int h) : tree(t) {
        idx_of_num.assign((size_t(1) << h), -1);
        for (int v = 0; v < t.size(); ++v)
            idx_of_num[std::stoll(t.name(v))] = v;
    }

    static long long right_of(long long num, int steps) {
        while (steps-- > 0) num = 2 * num + 1;
        return num;
    }

    // Descend from `base` following the path encoded by t's binary digits
    // below its leading 1 (t is a level-order number relative to base).
    static long long relative(long long base, long long t) {
        for (int bit = std::bit_width(static_cast<std::uint64_t>(t)) - 2; bit >= 0; --bit)
            base = 2 * base + ((t >> bit) & 1);
        return base;
    }
};

int spine_length(int h) {
    return std::clamp(h - ceil_log2(h), 1, h - 1);  // callers guarantee h >= 2
}

struct TemplateMove {
    MoveKind kind;
    bool spine;      // spine position j, otherwise level-order number in the
    long long val;   // chain-fed subtree
};

struct BtOptimalEmitter {
    BtContext& ctx;
    MoveSink& sink;
    std::map<int, std::vector<TemplateMove>> piece_cache;

    // Optimal persistent pebbling of the chain-plus-tree piece left of the
    // spine, compiled once per height on a template and replayed by
    // renumbering.
    const std::vector<TemplateMove>& piece_template(int h) {
        auto it = piece_cache.find(h);
        if (it != piece_cache.end()) return it->second;

        const int m = spine_length(h);
        const int hb = h - m;
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (int j = 1; j < m; ++j)
            edges.emplace_back("s" + std::to_string(j), "s" + std::to_string(j - 1));
        edges.emplace_back("b1", "s" + std::to_string(m - 1));
        for (long long c = 2; c < (1LL << hb); ++c)
            edges.emplace_back("b" + std::to_string(c), "b" + std::to_string(c / 2));
        RootedTree piece(edges);

        std::vector<TemplateMove> moves;
        for (const Move& mv : solve(piece).sequence.moves) {
            const NodeId& id = piece.name(mv.node);
            moves.push_back({mv.kind, id[0] == 's', std::stoll(id.substr(1))});
        }
        return piece_cache.emplace(h, std::move(moves)).first->second;
    }

    void play_piece(long long root_num, int h, bool rev) {
        const auto& tpl = piece_template(h);
        const int m = spine_length(h);
        const long long bt_root = BtContext::right_of(root_num, m);
        auto play = [&](const TemplateMove& tm, bool flip) {
            const long long num = tm.spine
                                      ? BtContext::right_of(root_num, static_cast<int>(tm.val))
                                      : BtContext::relative(bt_root, tm.val);
            MoveKind kind = tm.kind;
            if (flip)
                kind = kind == MoveKind::Place ? MoveKind::Remove : MoveKind::Place;
            sink.move(kind, ctx.idx_of_num[num]);
        };
        if (!rev)
            for (const auto& tm : tpl) play(tm, false);
        else
            for (auto it = tpl.rbegin(); it != tpl.rend(); ++it) play(*it, true);
    }

    // Persistent pebbling of the height-h complete subtree rooted at num
    // (its reversal when rev): pebble the left children l_0..l_{m-1} down the
    // right spine, pebble the remaining piece, then undo the spine phase.
    void emit(long long num, int h, bool rev) {
        if (h == 1) {
            sink.move(rev ? MoveKind::Remove : MoveKind::Place, ctx.idx_of_num[num]);
            return;
        }
        const int m = spine_length(h);
        for (int i = 0; i < m; ++i)
            emit(2 * BtContext::right_of(num, i), h - 1 - i, false);
        play_piece(num, h, rev);
        for (int i = m - 1; i >= 0; --i)
            emit(2 * BtContext::right_of(num, i), h - 1 - i, true);
    }
};

}  // namespace

GenReport bt_optimal_pebbling(int h, bool keep_sequence, MoveSink* tee) {
    if (h < 1) throw ValidationError("height must be >= 1");
    RootedTree t = complete_binary_tree(h);
    BtContext ctx(t, h);
    CombinedSink sink(t, keep_sequence, tee);
    BtOptimalEmitter{ctx, sink, {}}.emit(1, h, false);
    return sink.finish_persistent({{"h", h}});
}

namespace {

struct BtEpsilonEmitter {
    BtContext& ctx;
    MoveSink& sink;
    const int k;

    void emit(long long num, int h, bool rev) {
        if (h == 1) {
            sink.move(rev ? MoveKind::Remove : MoveKind::Place, ctx.idx_of_num[num]);
            return;
        }
        const int ke = std::min(k, h - 1);
        std::vector<long long> spine(ke + 1);
        spine[0] = num;
        for (int j = 1; j <= ke; ++j) spine[j] = 2 * spine[j - 1] + 1;

        for (int i = 0; i < ke; ++i) emit(2 * spine[i], h - 1 - i, false);
        emit(spine[ke], h - ke, false);

        // Climb the spine on the k+1 held pebbles, then drop the interior.
        if (!rev) {
            for (int j = ke - 1; j >= 0; --j) sink.place(ctx.idx_of_num[spine[j]]);
            for (int j = 1; j < ke; ++j) sink.remove(ctx.idx_of_num[spine[j]]);
        } else {
            for (int j = ke - 1; j >= 1; --j) sink.place(ctx.idx_of_num[spine[j]]);
            for (int j = 0; j < ke; ++j) sink.remove(ctx.idx_of_num[spine[j]]);
        }

        emit(spine[ke], h - ke, true);
        for (int i = ke - 1; i >= 0; --i) emit(2 * spine[i], h - 1 - i, true);
    }
};

}  // namespace

GenReport bt_epsilon_pebbling(int h, int k, bool keep_sequence, MoveSink* tee) {
    if (h < 1) throw ValidationError("height must be >= 1");
    if (k < 1) throw ValidationError("k must be >= 1");
    RootedTree t = complete_binary_tree(h);
    BtContext ctx(t, h);
    CombinedSink sink(t, keep_sequence, tee);
    BtEpsilonEmitter{ctx, sink, k}.emit(1, h, false);
    return sink.finish_persistent({{"h", h}, {"k", k}});
}

// ---- separator trade-off ----

namespace {

std::vector<int> postorder(const RootedTree& t) {
    std::vector<int> post;
    post.reserve(t.size());
    std::vector<std::pair<int, int>> stack{{t.root(), 0}};
    while (!stack.empty()) {
        auto& [v, ci] = stack.back();
        if (ci < static_cast<int>(t.children(v).size())) {
            int c = t.children(v)[ci++];
            stack.emplace_back(c, 0);
        } else {
            post.push_back(v);
            stack.pop_back();
        }
    }
    return post;
}

struct Piece {
    RootedTree tree;
    std::vector<int> to_parent;  // piece index -> enclosing-tree index
};

// Connected pieces of about n^((k-1)/k) nodes, ordered so that every piece
// hanging below piece i is some earlier piece; the last piece contains the
// root.
std::vector<Piece> partition_tree(const RootedTree& t, int k) {
    const long long n = t.size();
    const long double target =
        std::pow(static_cast<long double>(n),
                 static_cast<long double>(k - 1) / static_cast<long double>(k));
    const long long hi = static_cast<long long>(std::ceil(target - 1e-6L));
    UndirectedTree u = underlying(t);  // same node indices as t

    std::vector<std::vector<int>> work, sets;
    {
        std::vector<int> all(t.size());
        for (int v = 0; v < t.size(); ++v) all[v] = v;
        work.push_back(std::move(all));
    }
    std::vector<char> in_comp(t.size(), 0), in_sub(t.size(), 0), seen(t.size(), 0);
    for (size_t wi = 0; wi < work.size(); ++wi) {
        std::vector<int> comp = std::move(work[wi]);
        if (static_cast<long long>(comp.size()) <= hi) {
            sets.push_back(std::move(comp));
            continue;
        }
        std::vector<int> sub = detail::balanced_subtree(u, comp, target);
        for (int v : comp) in_comp[v] = 1;
        for (int v : sub) in_sub[v] = 1;
        for (int v : comp)
            if (!in_sub[v] && !seen[v]) {
                std::vector<int> piece{v};
                seen[v] = 1;
                for (size_t i = 0; i < piece.size(); ++i)
                    for (int w : u.neighbors(piece[i]))
                        if (in_comp[w] && !seen[w] && !in_sub[w]) {
                            seen[w] = 1;
                            piece.push_back(w);
                        }
                std::sort(piece.begin(), piece.end());
                work.push_back(std::move(piece));
            }
        for (int v : comp) {
            in_comp[v] = 0;
            in_sub[v] = 0;
            seen[v] = 0;
        }
        sets.push_back(std::move(sub));
    }

    // Dependency order: a piece is ready once every piece whose root hangs
    // from it has been emitted; ties take the smallest root id.
    const int p = static_cast<int>(sets.size());
    std::vector<int> piece_of(t.size(), -1), root_of(p, -1), above(p, -1),
        pending(p, 0);
    for (int i = 0; i < p; ++i)
        for (int v : sets[i]) piece_of[v] = i;
    for (int i = 0; i < p; ++i)
        for (int v : sets[i])
            if (t.parent(v) < 0 || piece_of[t.parent(v)] != i) {
                root_of[i] = v;
                break;
            }
    for (int i = 0; i < p; ++i)
        if (t.parent(root_of[i]) >= 0) {
            above[i] = piece_of[t.parent(root_of[i])];
            ++pending[above[i]];
        }

    std::set<std::pair<int, int>> ready;  // (root index, piece)
    for (int i = 0; i < p; ++i)
        if (pending[i] == 0) ready.emplace(root_of[i], i);
    std::vector<int> order;
    while (!ready.empty()) {
        auto [rv, i] = *ready.begin();
        ready.erase(ready.begin());
        order.push_back(i);
        if (above[i] >= 0 && --pending[above[i]] == 0)
            ready.emplace(root_of[above[i]], above[i]);
    }
    if (static_cast<int>(order.size()) != p)
        throw std::logic_error("partition_tree: piece order is not a tree");

    std::vector<Piece> pieces;
    pieces.reserve(p);
    for (int i : order) {
        std::vector<std::pair<NodeId, NodeId>> edges;
        for (int v : sets[i])
            if (v != root_of[i] && piece_of[t.parent(v)] == i)
                edges.emplace_back(t.name(v), t.name(t.parent(v)));
        RootedTree piece_tree =
            edges.empty() ? RootedTree({}, {t.name(root_of[i])}) : RootedTree(edges);
        std::vector<int> to_parent(piece_tree.size());
        for (int v : sets[i]) to_parent[piece_tree.at(t.name(v))] = v;
        pieces.push_back({std::move(piece_tree), std::move(to_parent)});
    }
    return pieces;
}

struct SepEmitter {
    MoveSink& sink;

    // First half of the persistent pebbling of t: everything before the root
    // placement (its reversal when second is set).
    void half(const RootedTree& t, const std::vector<int>& to_global, int k,
              bool second) {
        if (k <= 1 || t.size() == 1) {
            auto post = postorder(t);  // root last
            if (!second) {
                for (size_t i = 0; i + 1 < post.size(); ++i)
                    sink.place(to_global[post[i]]);
            } else {
                for (size_t i = post.size() - 1; i-- > 0;)
                    sink.remove(to_global[post[i]]);
            }
            return;
        }
        auto pieces = partition_tree(t, k);
        const int p = static_cast<int>(pieces.size());
        std::vector<std::vector<int>> maps(p);
        for (int i = 0; i < p; ++i) {
            maps[i].resize(pieces[i].tree.size());
            for (int v = 0; v < pieces[i].tree.size(); ++v)
                maps[i][v] = to_global[pieces[i].to_parent[v]];
        }
        if (!second) {
            for (int i = 0; i + 1 < p; ++i) persist(pieces[i].tree, maps[i], k - 1, false);
            half(pieces[p - 1].tree, maps[p - 1], k - 1, false);
        } else {
            half(pieces[p - 1].tree, maps[p - 1], k - 1, true);
            for (int i = p - 2; i >= 0; --i) persist(pieces[i].tree, maps[i], k - 1, true);
        }
    }

    void persist(const RootedTree& t, const std::vector<int>& to_global, int k, bool rev) {
        half(t, to_global, k, false);
        sink.move(rev ? MoveKind::Remove : MoveKind::Place, to_global[t.root()]);
        half(t, to_global, k, true);
    }
};

std::vector<int> identity_map(const RootedTree& t) {
    std::vector<int> m(t.size());
    for (int v = 0; v < t.size(); ++v) m[v] = v;
    return m;
}

}  // namespace

GenReport separator_pebbling(const RootedTree& t, int k, int degree_cap,
                             bool keep_sequence, MoveSink* tee) {
    if (k < 1) throw ValidationError("k must be >= 1");
    if (degree_cap >= 0) {
        const int delta = underlying(t).max_degree();
        if (delta > degree_cap)
            throw ValidationError("maximum degree " + std::to_string(delta) +
                                  " exceeds the cap of " + std::to_string(degree_cap));
    }
    CombinedSink sink(t, keep_sequence, tee);
    SepEmitter{sink}.persist(t, identity_map(t), k, false);
    return sink.finish_persistent({{"n", t.size()}, {"k", k}});
}

GenReport bottom_up_pebbling(const RootedTree& t, bool keep_sequence, MoveSink* tee) {
    CombinedSink sink(t, keep_sequence, tee);
    SepEmitter{sink}.persist(t, identity_map(t), 1, false);
    return sink.finish_persistent({{"n", t.size()}});
}

}  // namespace revpeb
