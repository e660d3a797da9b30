#include <doctest.h>

#include <bit>
#include <random>

#include "revpeb/ranking.hpp"
#include "../support/treegen.hpp"

using namespace revpeb;

namespace {

UndirectedTree path_tree(int n) { return underlying(chain(n)); }

EdgeColoring coloring_of(const UndirectedTree& u, std::vector<int> colors_by_edge_id) {
    EdgeColoring c;
    c.color = std::move(colors_by_edge_id);
    REQUIRE(static_cast<int>(c.color.size()) == u.edge_count());
    return c;
}

// Full-assignment validity by the pairwise definition; independent of the
// library's visible-set validator.
bool naive_valid(const UndirectedTree& u, const std::vector<int>& color) {
    const int n = u.size();
    // parents for path walks
    std::vector<int> parent(n, -1), depth(n, 0), bfs{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (size_t i = 0; i < bfs.size(); ++i)
        for (int w : u.neighbors(bfs[i]))
            if (!seen[w]) {
                seen[w] = 1;
                parent[w] = bfs[i];
                depth[w] = depth[bfs[i]] + 1;
                bfs.push_back(w);
            }
    auto path_has_higher = [&](int e1, int e2, int c) {
        auto walk = [&](int x, int y) {
            std::vector<int> edges;
            while (x != y) {
                if (depth[x] < depth[y]) std::swap(x, y);
                edges.push_back(u.edge_index(x, parent[x]));
                x = parent[x];
            }
            return edges;
        };
        auto [a1, b1] = u.edge(e1);
        auto [a2, b2] = u.edge(e2);
        std::vector<int> best;
        bool have = false;
        for (int x : {a1, b1})
            for (int y : {a2, b2}) {
                auto p = walk(x, y);
                if (!have || p.size() < best.size()) {
                    best = p;
                    have = true;
                }
            }
        for (int g : best)
            if (color[g] > c) return true;
        return false;
    };
    for (int e = 0; e < u.edge_count(); ++e)
        for (int f = e + 1; f < u.edge_count(); ++f)
            if (color[e] == color[f] && !path_has_higher(e, f, color[e])) return false;
    return true;
}

// First valid coloring in lexicographic order over edge ids with colors <= k,
// or empty when none exists.
std::vector<int> lex_min_coloring(const UndirectedTree& u, int k) {
    const int m = u.edge_count();
    std::vector<int> color(m, 1);
    while (true) {
        if (naive_valid(u, color)) return color;
        int i = m - 1;
        while (i >= 0 && color[i] == k) color[i--] = 1;
        if (i < 0) return {};
        ++color[i];
    }
}

MatchingSequence random_matchings(std::mt19937_64& rng, const UndirectedTree& u) {
    MatchingSequence seq;
    ContractionState state(u);
    while (state.classes() > 1) {
        std::vector<int> live;
        for (int e = 0; e < u.edge_count(); ++e) {
            auto [a, b] = u.edge(e);
            if (state.find(a) != state.find(b)) live.push_back(e);
        }
        std::shuffle(live.begin(), live.end(), rng);
        std::vector<int> step;
        std::vector<int> used;
        for (int e : live) {
            auto [a, b] = u.edge(e);
            int ra = state.find(a), rb = state.find(b);
            bool clash = false;
            for (int r : used)
                if (r == ra || r == rb) clash = true;
            if (clash) continue;
            used.push_back(ra);
            used.push_back(rb);
            step.push_back(e);
            if (rng() % 3 == 0) break;  // sometimes stop early, sequences need not be optimal
        }
        state = contract(state, u, step);
        seq.steps.push_back(std::move(step));
    }
    return seq;
}

}  // namespace

TEST_CASE("validate_coloring basics") {
    auto p3 = path_tree(3);
    CHECK(validate_coloring(p3, coloring_of(p3, {1, 2})) == 2);
    CHECK_THROWS_WITH_AS(validate_coloring(p3, coloring_of(p3, {1, 1})),
                         doctest::Contains("share color 1"), ValidationError);
    CHECK_THROWS_AS(validate_coloring(p3, EdgeColoring{{1}}), ValidationError);
    CHECK_THROWS_AS(validate_coloring(p3, coloring_of(p3, {1, 0})), ValidationError);

    auto u = underlying(testsupport::make_bt3());
    CHECK(validate_coloring(u, testsupport::fig_coloring_bt3(u)) == 4);

    // gaps are accepted by validators
    auto p2 = path_tree(2);
    CHECK(validate_coloring(p2, coloring_of(p2, {5})) == 5);
}

TEST_CASE("validate_coloring single node") {
    UndirectedTree one({}, {"x"});
    CHECK(validate_coloring(one, {}) == 0);
}

TEST_CASE("erank_opt on the figure tree") {
    auto u = underlying(testsupport::make_bt3());
    EdgeColoring c = erank_opt(u);
    CHECK(validate_coloring(u, c) == 4);
}

TEST_CASE("erank_opt on paths matches ceil(log2 n)") {
    for (int n = 2; n <= 10; ++n) {
        auto u = path_tree(n);
        int rank = erank_opt(u).rank();
        CHECK(rank == std::bit_width(static_cast<unsigned>(n - 1)));
        CHECK(erank_bruteforce(u, rank));
        CHECK(!erank_bruteforce(u, rank - 1));
    }
}

TEST_CASE("erank_opt single node") {
    UndirectedTree one({}, {"x"});
    CHECK(erank_opt(one).color.empty());
    CHECK(erank_opt(one).rank() == 0);
}

TEST_CASE("erank_opt is the lexicographically smallest optimal coloring") {
    std::mt19937_64 rng(404);
    int checked = 0;
    for (int n = 2; n <= 7; ++n)
        for (const auto& u : testsupport::all_free_trees(n)) {
            EdgeColoring c = erank_opt(u);
            CHECK(naive_valid(u, c.color));
            auto expect = lex_min_coloring(u, c.rank());
            REQUIRE(!expect.empty());
            CHECK(c.color == expect);
            ++checked;
        }
    CHECK(checked > 20);
}

TEST_CASE("erank_opt is deterministic") {
    auto u = underlying(testsupport::make_bt3());
    CHECK(serialize_coloring(u, erank_opt(u)) == serialize_coloring(u, erank_opt(u)));
}

TEST_CASE("erank_bruteforce basics") {
    CHECK(erank_bruteforce(path_tree(2), 1));
    auto u = underlying(testsupport::make_bt3());
    CHECK(!erank_bruteforce(u, 3));
    CHECK(erank_bruteforce(u, 4));
    UndirectedTree star3(std::vector<std::pair<NodeId, NodeId>>{{"a", "c"}, {"b", "c"}, {"d", "c"}});
    CHECK(!erank_bruteforce(star3, 2));
    CHECK(erank_bruteforce(star3, 3));
    CHECK_THROWS_AS(erank_bruteforce(underlying(chain(16)), 4), SizeCapError);
}

TEST_CASE("erank_opt agrees with the brute force on small trees") {
    for (int n = 2; n <= 8; ++n)
        for (const auto& u : testsupport::all_free_trees(n)) {
            int rank = erank_opt(u).rank();
            CHECK(erank_bruteforce(u, rank));
            CHECK(!erank_bruteforce(u, rank - 1));
        }
}

TEST_CASE("contract") {
    auto two = path_tree(2);
    ContractionState s0(two);
    CHECK(contract(s0, two, {0}).classes() == 1);
    CHECK_THROWS_WITH_AS(contract(contract(s0, two, {0}), two, {0}),
                         doctest::Contains("no longer live"), ValidationError);

    auto u = underlying(testsupport::make_bt3());
    auto e = [&](const char* a, const char* b) { return u.edge_index(u.at(a), u.at(b)); };
    ContractionState s(u);
    ContractionState s1 = contract(s, u, {e("5", "2"), e("6", "3")});
    CHECK(s1.classes() == 5);
    CHECK_THROWS_WITH_AS(contract(s, u, {e("4", "2"), e("5", "2")}),
                         doctest::Contains("share the contracted node"), ValidationError);
}

TEST_CASE("validate_matchings") {
    auto two = path_tree(2);
    CHECK(validate_matchings(two, MatchingSequence{{{0}}}) == 1);

    auto u = underlying(testsupport::make_bt3());
    CHECK(validate_matchings(u, testsupport::fig_matchings_bt3(u)) == 4);

    // three matchings cannot finish bt3 (contr = 4)
    auto e = [&](const char* a, const char* b) { return u.edge_index(u.at(a), u.at(b)); };
    MatchingSequence three;
    three.steps = {{e("5", "2"), e("6", "3")}, {e("4", "2"), e("7", "3")}, {e("2", "1")}};
    CHECK_THROWS_WITH_AS(validate_matchings(u, three),
                         doctest::Contains("did not reach a single node"), ValidationError);
}

TEST_CASE("coloring_to_matchings") {
    auto p3 = path_tree(3);
    auto seq = coloring_to_matchings(p3, coloring_of(p3, {1, 2}));
    REQUIRE(seq.steps.size() == 2);
    CHECK(seq.steps[0] == std::vector<int>{0});
    CHECK(seq.steps[1] == std::vector<int>{1});

    auto u = underlying(testsupport::make_bt3());
    auto fig = coloring_to_matchings(u, testsupport::fig_coloring_bt3(u));
    auto expect = testsupport::fig_matchings_bt3(u);
    REQUIRE(fig.steps.size() == expect.steps.size());
    for (size_t i = 0; i < fig.steps.size(); ++i) {
        auto a = fig.steps[i], b = expect.steps[i];
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
    }

    CHECK_THROWS_AS(coloring_to_matchings(p3, coloring_of(p3, {1, 1})), ValidationError);

    // gap colorings give empty steps but keep length = rank
    auto p2 = path_tree(2);
    auto gap = coloring_to_matchings(p2, coloring_of(p2, {3}));
    CHECK(gap.steps.size() == 3);
    CHECK(validate_matchings(p2, gap) == 3);
}

TEST_CASE("matchings_to_coloring") {
    auto two = path_tree(2);
    auto c = matchings_to_coloring(two, MatchingSequence{{{0}}});
    CHECK(c.color == std::vector<int>{1});

    auto u = underlying(testsupport::make_bt3());
    auto c3 = matchings_to_coloring(u, testsupport::fig_matchings_bt3(u));
    CHECK(validate_coloring(u, c3) == 4);
}

TEST_CASE("conversion round trips on random trees") {
    std::mt19937_64 rng(77);
    for (int iter = 0; iter < 120; ++iter) {
        RootedTree t = testsupport::random_tree(rng, 2 + static_cast<int>(rng() % 12), 5);
        UndirectedTree u = underlying(t);
        MatchingSequence seq = random_matchings(rng, u);
        int len = validate_matchings(u, seq);

        EdgeColoring c = matchings_to_coloring(u, seq);
        CHECK(validate_coloring(u, c) <= len);

        MatchingSequence back = coloring_to_matchings(u, c);
        CHECK(validate_matchings(u, back) == validate_coloring(u, c));

        EdgeColoring opt = erank_opt(u);
        MatchingSequence opt_seq = coloring_to_matchings(u, opt);
        CHECK(validate_matchings(u, opt_seq) == opt.rank());
    }
}

TEST_CASE("coloring and matching text formats") {
    auto u = underlying(testsupport::make_bt3());
    EdgeColoring c = testsupport::fig_coloring_bt3(u);
    EdgeColoring back = parse_coloring(u, serialize_coloring(u, c));
    CHECK(back.color == c.color);
    CHECK_THROWS_AS(parse_coloring(u, "1 2 0\n"), ParseError);
    CHECK_THROWS_AS(parse_coloring(u, "1 9 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_coloring(u, "1 2 1\n2 1 2\n"), ParseError);

    MatchingSequence seq = testsupport::fig_matchings_bt3(u);
    std::string text = serialize_matchings(u, seq);
    CHECK(text == "2-5 3-6\n2-4 3-7\n1-2\n1-3\n");
    auto back_seq = parse_matchings(u, text);
    REQUIRE(back_seq.steps.size() == 4);
    CHECK(back_seq.steps[0] == seq.steps[0]);
    CHECK_THROWS_AS(parse_matchings(u, "1-9\n"), ParseError);

    // hyphenated ids resolve by matching both endpoints
    UndirectedTree dashed(std::vector<std::pair<NodeId, NodeId>>{{"a-b", "c"}});
    auto ds = parse_matchings(dashed, "a-b-c\n");
    CHECK(ds.steps[0] == std::vector<int>{0});
}
