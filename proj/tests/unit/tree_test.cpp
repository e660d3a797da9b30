#include <doctest.h>

#include <cmath>
#include <random>

#include "revpeb/tree.hpp"
#include "../support/treegen.hpp"

using namespace revpeb;

TEST_CASE("parse smallest branching tree") {
    auto g = parse_graph("2 1\n3 1\n");
    const RootedTree& t = require_tree(g);
    CHECK(t.size() == 3);
    CHECK(t.name(t.root()) == "1");
    CHECK(t.is_leaf(t.at("2")));
    CHECK(t.is_leaf(t.at("3")));
}

TEST_CASE("parse the bt3 edge list") {
    auto g = parse_graph("# complete binary tree of height 3\n2 1\n3 1\n4 2\n5 2\n6 3\n7 3\n");
    const RootedTree& t = require_tree(g);
    CHECK(t.size() == 7);
    CHECK(t.serialize() == complete_binary_tree(3).serialize());
}

TEST_CASE("parse errors") {
    CHECK_THROWS_WITH_AS(parse_graph("1 2\n2 1\n"), doctest::Contains("cycle"), ParseError);
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n4 3\n"), doctest::Contains("multiple sinks"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_graph("2 1\n2 1\n"), doctest::Contains("duplicate edge"),
                         ParseError);
    CHECK_THROWS_AS(parse_graph("1 1\n"), ParseError);
    CHECK_THROWS_AS(parse_graph("a b c\n"), ParseError);
    CHECK_THROWS_AS(parse_graph(""), ParseError);
}

TEST_CASE("parse classifies dags") {
    auto g = parse_graph("2 1\n2 3\n3 1\n");
    CHECK(!std::holds_alternative<RootedTree>(g));
    CHECK(graph_of(g).name(graph_of(g).root()) == "1");
    CHECK_THROWS_AS(require_tree(g), ValidationError);
}

TEST_CASE("isolated node lines") {
    auto g = parse_graph("v\n");
    CHECK(graph_of(g).size() == 1);
    CHECK(graph_of(g).serialize() == "v\n");
}

TEST_CASE("underlying keeps the node set") {
    CHECK(underlying(RootedTree({}, {"x"})).size() == 1);
    auto u = underlying(complete_binary_tree(3));
    CHECK(u.size() == 7);
    CHECK(u.edge_count() == 6);
    auto path = underlying(chain(3));
    CHECK(path.edge_count() == 2);
    CHECK(path.max_degree() == 2);
}

TEST_CASE("subtree") {
    RootedTree bt3 = complete_binary_tree(3);
    CHECK(subtree(bt3, bt3.root()).serialize() == bt3.serialize());
    RootedTree sub = subtree(bt3, bt3.at("2"));
    CHECK(sub.size() == 3);
    CHECK(sub.name(sub.root()) == "2");
    CHECK(sub.find("4") >= 0);
    CHECK(sub.find("5") >= 0);
    RootedTree ch5 = chain(5);
    CHECK(subtree(ch5, ch5.at("5")).size() == 1);
    CHECK_THROWS_AS(subtree(bt3, 99), ValidationError);
}

TEST_CASE("split partitions the nodes") {
    RootedTree two = chain(2);
    auto [lo, hi] = split(two, two.at("2"), two.at("1"));
    CHECK(lo.size() == 1);
    CHECK(hi.size() == 1);

    RootedTree bt3 = complete_binary_tree(3);
    auto [tu, rest] = split(bt3, bt3.at("2"), bt3.at("1"));
    CHECK(tu.size() == 3);
    CHECK(rest.size() == 4);
    CHECK(rest.name(rest.root()) == "1");
    CHECK(rest.find("3") >= 0);
    CHECK(rest.find("6") >= 0);
    CHECK(rest.find("7") >= 0);

    auto [leaf4, rest6] = split(bt3, bt3.at("4"), bt3.at("2"));
    CHECK(leaf4.size() == 1);
    CHECK(rest6.size() == 6);

    CHECK_THROWS_AS(split(bt3, bt3.at("4"), bt3.at("1")), ValidationError);
}

TEST_CASE("split partition property on every small tree") {
    for (int n = 2; n <= 7; ++n)
        for (const auto& t : testsupport::all_rooted_trees(n))
            for (int u = 0; u < t.size(); ++u) {
                if (u == t.root()) continue;
                auto [lo, hi] = split(t, u, t.parent(u));
                CHECK(lo.size() + hi.size() == t.size());
                for (int v = 0; v < t.size(); ++v) {
                    bool in_lo = lo.find(t.name(v)) >= 0;
                    bool in_hi = hi.find(t.name(v)) >= 0;
                    CHECK(in_lo != in_hi);
                }
            }
}

TEST_CASE("families") {
    CHECK(chain(1).serialize() == complete_binary_tree(1).serialize());
    RootedTree bt3 = complete_binary_tree(3);
    CHECK(bt3.size() == 7);
    int leaves = 0;
    for (int v = 0; v < bt3.size(); ++v) leaves += bt3.is_leaf(v);
    CHECK(leaves == 4);
    RootedTree mix = chain_plus_bt(2, 2);
    CHECK(mix.size() == 5);
    CHECK(height(mix) == 4);
    CHECK(chain_plus_bt(0, 3).serialize() == bt3.serialize());
    CHECK_THROWS_AS(chain(0), ValidationError);
    CHECK_THROWS_AS(complete_binary_tree(0), ValidationError);
    CHECK_THROWS_AS(chain_plus_bt(-1, 2), ValidationError);
}

TEST_CASE("height and reroot") {
    CHECK(height(complete_binary_tree(3)) == 3);
    CHECK(height(chain(4)) == 4);
    CHECK(height(RootedTree({}, {"z"})) == 1);

    RootedTree two = chain(2);
    RootedTree flipped = reroot_at_leaf(two, two.at("2"));
    CHECK(flipped.name(flipped.root()) == "2");

    RootedTree bt3 = complete_binary_tree(3);
    RootedTree at4 = reroot_at_leaf(bt3, bt3.at("4"));
    CHECK(at4.name(at4.root()) == "4");
    CHECK(height(at4) == 5);  // 4-2-1-3-6

    CHECK_THROWS_AS(reroot_at_leaf(bt3, bt3.at("2")), ValidationError);
}

TEST_CASE("reroot preserves the underlying tree") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 50; ++iter) {
        RootedTree t = testsupport::random_tree(rng, 2 + static_cast<int>(rng() % 30), 4);
        int leaf = -1;
        for (int v = 0; v < t.size(); ++v)
            if (t.is_leaf(v)) {
                leaf = v;
                break;
            }
        RootedTree r = reroot_at_leaf(t, leaf);
        // same unordered edge set
        auto canon = [](const RootedTree& x) {
            std::vector<std::pair<std::string, std::string>> e;
            for (int v = 0; v < x.size(); ++v)
                if (v != x.root()) {
                    auto a = x.name(v), b = x.name(x.parent(v));
                    if (b < a) std::swap(a, b);
                    e.emplace_back(a, b);
                }
            std::sort(e.begin(), e.end());
            return e;
        };
        CHECK(canon(t) == canon(r));
    }
}

TEST_CASE("serialize round-trips") {
    std::mt19937_64 rng(11);
    for (int iter = 0; iter < 50; ++iter) {
        RootedTree t = testsupport::random_tree(rng, 1 + static_cast<int>(rng() % 40), 5);
        auto back = parse_graph(t.serialize());
        CHECK(require_tree(back).serialize() == t.serialize());
    }
    for (int iter = 0; iter < 50; ++iter) {
        Dag d = testsupport::random_dag(rng, 2 + static_cast<int>(rng() % 6));
        auto back = parse_graph(d.serialize());
        CHECK(graph_of(back).serialize() == d.serialize());
    }
}

TEST_CASE("separator subtree on the 100-node path") {
    auto u = underlying(chain(100));
    auto sub = separator_subtree(u, 100, 2);
    CHECK(sub.size() >= 5);
    CHECK(sub.size() <= 10);
}

TEST_CASE("separator subtree precondition") {
    auto u = underlying(chain(10));
    CHECK_THROWS_AS(separator_subtree(u, 100, 2), ValidationError);
}

TEST_CASE("separator subtree bounds on random bounded-degree trees") {
    std::mt19937_64 rng(2026);
    for (int iter = 0; iter < 1000; ++iter) {
        int n = 20 + static_cast<int>(rng() % 200);
        int k0 = 2 + static_cast<int>(rng() % 2);
        RootedTree t = testsupport::random_tree(rng, n, 4);
        auto u = underlying(t);
        long double target = std::pow(static_cast<long double>(n),
                                      static_cast<long double>(k0 - 1) / k0);
        if (static_cast<long double>(n) <= target + 1e-6L) continue;
        auto sub = separator_subtree(u, n, k0);
        auto lo = static_cast<long long>(std::floor(target / 2 + 1e-6L));
        auto hi = static_cast<long long>(std::ceil(target - 1e-6L));
        CHECK(static_cast<long long>(sub.size()) >= lo);
        CHECK(static_cast<long long>(sub.size()) <= hi);
        // connectedness: BFS inside the subset covers it
        std::vector<char> in(u.size(), 0), seen(u.size(), 0);
        for (int v : sub) in[v] = 1;
        std::vector<int> bfs{sub[0]};
        seen[sub[0]] = 1;
        size_t covered = 1;
        for (size_t i = 0; i < bfs.size(); ++i)
            for (int w : u.neighbors(bfs[i]))
                if (in[w] && !seen[w]) {
                    seen[w] = 1;
                    ++covered;
                    bfs.push_back(w);
                }
        CHECK(covered == sub.size());
    }
}

TEST_CASE("enumeration counts match the tree census") {
    const int rooted[] = {0, 1, 1, 2, 4, 9, 20, 48, 115, 286};
    for (int n = 1; n <= 9; ++n)
        CHECK(static_cast<int>(testsupport::all_rooted_trees(n).size()) == rooted[n]);
    const int free_trees[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301};
    for (int n = 1; n <= 13; ++n)
        CHECK(static_cast<int>(testsupport::all_free_trees(n).size()) == free_trees[n]);
}
