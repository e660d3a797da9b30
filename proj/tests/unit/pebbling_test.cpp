#include <doctest.h>

#include <random>

#include "revpeb/oracle.hpp"
#include "revpeb/pebbling.hpp"
#include "../support/treegen.hpp"

using namespace revpeb;

namespace {

PebbleSequence moves_of(const Dag& g, const std::string& text) {
    return parse_moves(g, text);
}

}  // namespace

TEST_CASE("apply_move rules") {
    RootedTree bt3 = testsupport::make_bt3();
    PebbleConfig empty(bt3);

    PebbleConfig one = apply_move(bt3, empty, {MoveKind::Place, bt3.at("4")});
    CHECK(one.count() == 1);
    CHECK(one.has(bt3.at("4")));

    PebbleConfig c45 = PebbleConfig::of_nodes(bt3, {"4", "5"});
    PebbleConfig c245 = apply_move(bt3, c45, {MoveKind::Place, bt3.at("2")});
    CHECK(c245.count() == 3);
    CHECK(c245.has(bt3.at("2")));

    PebbleConfig c4 = PebbleConfig::of_nodes(bt3, {"4"});
    CHECK_THROWS_AS(apply_move(bt3, c4, {MoveKind::Place, bt3.at("2")}), ValidationError);
    CHECK_THROWS_AS(apply_move(bt3, c4, {MoveKind::Place, bt3.at("4")}), ValidationError);
    CHECK_THROWS_AS(apply_move(bt3, c4, {MoveKind::Remove, bt3.at("5")}), ValidationError);
    // removing also needs the in-neighbors pebbled
    PebbleConfig c2 = PebbleConfig::of_nodes(bt3, {"2", "4", "5"});
    PebbleConfig c24 = apply_move(bt3, apply_move(bt3, c2, {MoveKind::Remove, bt3.at("5")}),
                                  {MoveKind::Place, bt3.at("5")});
    CHECK(c24.count() == 3);
    PebbleConfig only2 = PebbleConfig::of_nodes(bt3, {"2"});
    CHECK_THROWS_AS(apply_move(bt3, only2, {MoveKind::Remove, bt3.at("2")}),
                    ValidationError);
}

TEST_CASE("validate_persistent") {
    RootedTree one({}, {"r"});
    auto st = validate_persistent(one, moves_of(one, "+r\n"));
    CHECK(st.space == 1);
    CHECK(st.time == 2);

    RootedTree two = chain(2);  // "2" -> "1"
    auto st2 = validate_persistent(two, moves_of(two, "+2\n+1\n-2\n"));
    CHECK(st2.space == 2);
    CHECK(st2.time == 4);

    CHECK_THROWS_WITH_AS(validate_persistent(two, {}), doctest::Contains("final"),
                         ValidationError);
    try {
        validate_persistent(two, moves_of(two, "+2\n+1\n-2\n+2\n+2\n"));
        CHECK(false);
    } catch (const ValidationError& e) {
        REQUIRE(e.index().has_value());
        CHECK(*e.index() == 4);
    }
}

TEST_CASE("validate_visiting") {
    RootedTree one({}, {"r"});
    auto st = validate_visiting(one, moves_of(one, "+r\n-r\n"));
    CHECK(st.space == 1);
    CHECK(st.time == 3);

    RootedTree two = chain(2);
    auto st2 = validate_visiting(two, moves_of(two, "+2\n+1\n-1\n-2\n"));
    CHECK(st2.space == 2);
    CHECK(st2.time == 5);

    CHECK_THROWS_WITH_AS(validate_visiting(two, moves_of(two, "+2\n-2\n")),
                         doctest::Contains("root never visited"), ValidationError);
}

TEST_CASE("reverse is a mechanical flip") {
    RootedTree two = chain(2);
    CHECK(reverse(PebbleSequence{}).moves.empty());
    auto fwd = moves_of(two, "+2\n+1\n-2\n");
    auto rev = reverse(fwd);
    CHECK(serialize_moves(two, rev) == "+2\n-1\n-2\n");
}

TEST_CASE("reversal of any legal segment is legal from its end") {
    std::mt19937_64 rng(31);
    for (int iter = 0; iter < 200; ++iter) {
        RootedTree t = testsupport::random_tree(rng, 2 + static_cast<int>(rng() % 7), 3);
        // random legal walk from the empty configuration
        PebbleConfig c(t);
        PebbleSequence seq;
        for (int step = 0; step < 30; ++step) {
            std::vector<Move> legal;
            for (int v = 0; v < t.size(); ++v) {
                bool ok = true;
                for (int u : t.in_neighbors(v))
                    if (!c.has(u)) ok = false;
                if (!ok) continue;
                legal.push_back({c.has(v) ? MoveKind::Remove : MoveKind::Place, v});
            }
            if (legal.empty()) break;
            Move m = legal[rng() % legal.size()];
            c = apply_move(t, c, m);
            seq.moves.push_back(m);
        }
        // replay the reversal from the end configuration
        PebbleConfig back = c;
        for (const Move& m : reverse(seq).moves) back = apply_move(t, back, m);
        CHECK(back.count() == 0);
    }
}

TEST_CASE("stats are exact") {
    RootedTree bt3 = testsupport::make_bt3();
    auto seq = moves_of(bt3,
                        "+4\n+5\n+2\n-4\n-5\n+6\n+7\n+3\n-6\n-7\n+1\n"
                        "+4\n+5\n-2\n-5\n-4\n+6\n+7\n-3\n-7\n-6\n");
    auto st = validate_persistent(bt3, seq);
    CHECK(st.space == 5);
    CHECK(st.time == static_cast<long long>(seq.moves.size()) + 1);
}

TEST_CASE("to_visiting_instance") {
    RootedTree two = chain(2);
    auto inst = to_visiting_instance(two);
    CHECK(inst.budget_shift == -1);
    CHECK(inst.tree.size() == 1);

    RootedTree bt3 = testsupport::make_bt3();
    auto inst3 = to_visiting_instance(bt3);
    CHECK(inst3.tree.size() == 6);
    CHECK(vrev_oracle(inst3.tree).value == 4);  // rev(Bt_3) - 1

    RootedTree ch4 = chain(4);
    auto inst4 = to_visiting_instance(ch4);
    CHECK(inst4.tree.size() == 3);
    CHECK(inst4.tree.tree_shaped());

    CHECK_THROWS_AS(to_visiting_instance(RootedTree({}, {"r"})), ValidationError);
}

TEST_CASE("to_persistent_instance") {
    RootedTree one({}, {"r"});
    RootedTree ext = to_persistent_instance(one);
    CHECK(ext.size() == 2);
    CHECK(ext.name(ext.root()) == "r'");

    RootedTree ch3 = chain(3);
    CHECK(to_persistent_instance(ch3).size() == 4);

    RootedTree bt3 = testsupport::make_bt3();
    RootedTree ext3 = to_persistent_instance(bt3);
    CHECK(ext3.size() == 8);
    CHECK(rev_oracle(ext3).value == vrev_oracle(bt3).value + 1);

    // fresh id collision handling
    RootedTree clash(std::vector<std::pair<NodeId, NodeId>>{{"1'", "1"}});
    RootedTree ext_clash = to_persistent_instance(clash);
    CHECK(ext_clash.size() == 3);
    CHECK(ext_clash.name(ext_clash.root()) == "1''");
}

TEST_CASE("sandwich and reduction shifts on small trees") {
    for (int n = 1; n <= 6; ++n)
        for (const auto& t : testsupport::all_rooted_trees(n)) {
            int rev = rev_oracle(t).value;
            int vrev = vrev_oracle(t).value;
            CHECK(vrev <= rev);
            CHECK(rev <= vrev + 1);
            if (n >= 2) CHECK(rev == vrev_oracle(to_visiting_instance(t).tree).value + 1);
            CHECK(vrev == rev_oracle(to_persistent_instance(t)).value - 1);
        }
}

TEST_CASE("move log parsing errors") {
    RootedTree two = chain(2);
    CHECK_THROWS_AS(parse_moves(two, "+9\n"), ValidationError);
    CHECK_THROWS_AS(parse_moves(two, "2\n"), ParseError);
    CHECK_THROWS_AS(parse_moves(two, "+\n"), ParseError);
}
