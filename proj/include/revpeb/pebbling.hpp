#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "revpeb/tree.hpp"

namespace revpeb {

// Both rules of the game need every in-neighbor pebbled: to place a pebble
// on v and to remove one from v.
enum class MoveKind : std::uint8_t { Place, Remove };

struct Move {
    MoveKind kind;
    int node;
    bool operator==(const Move&) const = default;
};

struct PebbleSequence {
    std::vector<Move> moves;
    bool operator==(const PebbleSequence&) const = default;
};

// space: peak number of pebbles on the graph at any time.
// time:  number of configurations, |moves| + 1.
struct PebbleStats {
    int space = 0;
    long long time = 1;
};

enum class Variant { Persistent, Visiting };

// A set of pebbled nodes of one specific graph.
class PebbleConfig {
public:
    explicit PebbleConfig(const Dag& g) : bits_(g.size(), 0) {}
    static PebbleConfig of_nodes(const Dag& g, const std::vector<NodeId>& ids);

    bool has(int v) const { return bits_[v] != 0; }
    int count() const { return count_; }
    void add(int v);
    void erase(int v);
    std::vector<int> nodes() const;

private:
    std::vector<std::uint8_t> bits_;
    int count_ = 0;
};

// Consumer of a stream of moves. Generators emit through sinks so that long
// sequences never have to be materialized.
class MoveSink {
public:
    virtual ~MoveSink() = default;
    virtual void move(MoveKind kind, int node) = 0;
    void place(int v) { move(MoveKind::Place, v); }
    void remove(int v) { move(MoveKind::Remove, v); }
};

class VectorSink final : public MoveSink {
public:
    void move(MoveKind kind, int node) override { seq.moves.push_back({kind, node}); }
    PebbleSequence seq;
};

// Replays moves against a graph and enforces the game rules as they stream
// through. Throws ValidationError with the 0-based move index on the first
// illegal move.
class ValidatingSink final : public MoveSink {
public:
    explicit ValidatingSink(const Dag& g);

    void move(MoveKind kind, int node) override;

    PebbleStats stats() const { return {space_, nmoves_ + 1}; }
    int pebbles() const { return count_; }
    bool root_seen() const { return root_seen_; }

    // Final-configuration checks for the two game variants.
    void finish_persistent() const;
    void finish_visiting() const;

private:
    const Dag& g_;
    std::vector<std::int32_t> in_offset_;
    std::vector<std::int32_t> in_flat_;
    std::vector<std::uint8_t> on_;
    int count_ = 0;
    int space_ = 0;
    long long nmoves_ = 0;
    bool root_seen_ = false;
};

// ---- operations ----

// Applies one move to a configuration, enforcing the game rules.
PebbleConfig apply_move(const Dag& g, const PebbleConfig& c, Move mv);

// Replays s from the empty configuration; succeeds iff every move is legal
// and the final configuration is exactly {root}.
PebbleStats validate_persistent(const Dag& g, const PebbleSequence& s);

// Replays s; succeeds iff every move is legal, the final configuration is
// empty and the root was pebbled at some step.
PebbleStats validate_visiting(const Dag& g, const PebbleSequence& s);

// Moves reversed in order, each Place flipped to Remove and vice versa.
// Replaying reverse(s) from s's final configuration ends at s's initial one.
PebbleSequence reverse(const PebbleSequence& s);

// Move-log text format: one move per line, "+id" places, "-id" removes.
PebbleSequence parse_moves(const Dag& g, std::string_view text);
std::string serialize_moves(const Dag& g, const PebbleSequence& s);

// Visiting-game instance equivalent to the persistent game on T:
// rev(T) = vrev(tree) + budget_shift... budget_shift is always -1, i.e.
// rev(T) <= k iff vrev(tree) <= k - 1. T is rerooted at its
// lexicographically smallest leaf v; tree is the subtree at v's child.
struct VisitingInstance {
    RootedTree tree;
    int budget_shift;
};
VisitingInstance to_visiting_instance(const RootedTree& t);

// Persistent-game instance equivalent to the visiting game on T: a fresh
// root r' above T's root, so vrev(T) = rev(result) - 1.
RootedTree to_persistent_instance(const RootedTree& t);

}  // namespace revpeb
