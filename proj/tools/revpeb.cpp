// Command line driver: solve, erank, validate, convert, generate, oracle, dt.
//
// Exit codes: 0 success, 1 parse/validation failure, 2 size cap exceeded.
// Stats go to stdout as single-line JSON records; human diagnostics go to
// stderr. Outputs are byte-identical across runs for identical inputs.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "revpeb/generators.hpp"
#include "revpeb/oracle.hpp"
#include "revpeb/strategy.hpp"

using json = nlohmann::json;
using namespace revpeb;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError("cannot open '" + path + "' for writing");
    out << content;
}

// Streams moves straight to a file.
class FileSink final : public MoveSink {
public:
    FileSink(const Dag& g, const std::string& path) : g_(g), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw ParseError("cannot open '" + path + "' for writing");
    }
    void move(MoveKind kind, int node) override {
        out_ << (kind == MoveKind::Place ? '+' : '-') << g_.name(node) << '\n';
    }

private:
    const Dag& g_;
    std::ofstream out_;
};

json params_json(const std::map<std::string, long long>& params) {
    json j = json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

int cmd_solve(const std::string& graph_path, const std::string& coloring_path,
              const std::string& strategy_path, const std::string& moves_path) {
    auto parsed = parse_graph(read_input(graph_path));
    const RootedTree& t = require_tree(parsed);
    SolveResult r = solve(t);

    if (!coloring_path.empty()) {
        write_output(coloring_path, serialize_coloring(underlying(t), r.coloring));
        std::cerr << "coloring: " << coloring_path << "\n";
    }
    if (!strategy_path.empty()) {
        write_output(strategy_path, serialize_strategy(t, r.strategy));
        std::cerr << "strategy: " << strategy_path << "\n";
    }
    if (!moves_path.empty()) {
        write_output(moves_path, serialize_moves(t, r.sequence));
        std::cerr << "moves: " << moves_path << "\n";
    }
    std::cout << "rev = " << r.rev << "\n";
    return 0;
}

int cmd_erank(const std::string& graph_path, const std::string& coloring_path) {
    auto parsed = parse_graph(read_input(graph_path));
    const RootedTree& t = require_tree(parsed);
    UndirectedTree u = underlying(t);
    EdgeColoring c = erank_opt(u);
    std::cout << "erank = " << c.rank() << "\n";
    if (coloring_path.empty())
        std::cout << serialize_coloring(u, c);
    else
        write_output(coloring_path, serialize_coloring(u, c));
    return 0;
}

int cmd_validate(const std::string& variant, const std::string& graph_path,
                 const std::string& moves_path) {
    auto parsed = parse_graph(read_input(graph_path));
    const Dag& g = graph_of(parsed);
    PebbleSequence s = parse_moves(g, read_input(moves_path));
    PebbleStats stats = variant == "visiting" ? validate_visiting(g, s)
                                              : validate_persistent(g, s);
    json j{{"variant", variant}, {"space", stats.space}, {"time", stats.time}};
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_convert(const std::string& graph_path, const std::string& input_path,
                const std::string& from, const std::string& to,
                const std::string& out_path) {
    auto parsed = parse_graph(read_input(graph_path));
    const RootedTree& t = require_tree(parsed);
    UndirectedTree u = underlying(t);
    const std::string text = read_input(input_path);

    // Everything routes through a matching sequence.
    MatchingSequence seq;
    if (from == "coloring")
        seq = coloring_to_matchings(u, parse_coloring(u, text));
    else if (from == "matchings") {
        seq = parse_matchings(u, text);
        validate_matchings(u, seq);
    } else if (from == "strategy")
        seq = strategy_to_matchings(t, parse_strategy(t, text));
    else
        throw ParseError("unknown --from format '" + from + "'");

    std::string out;
    if (to == "coloring")
        out = serialize_coloring(u, matchings_to_coloring(u, seq));
    else if (to == "matchings")
        out = serialize_matchings(u, seq);
    else if (to == "strategy")
        out = serialize_strategy(t, matchings_to_strategy(t, seq));
    else
        throw ParseError("unknown --to format '" + to + "'");
    write_output(out_path, out);
    return 0;
}

int cmd_generate(const std::string& family, int n, int h, int k,
                 const std::string& tree_path, const std::string& moves_path,
                 const std::string& write_tree_path, int degree_cap) {
    std::optional<RootedTree> tree;
    if (family == "chain") {
        if (n < 1) throw ParseError("--n is required for chain");
        tree = chain(n);
    } else if (family == "bt" || family == "bt-eps") {
        if (h < 1) throw ParseError("--height is required for " + family);
        tree = complete_binary_tree(h);
    } else if (family == "separator" || family == "bottom-up") {
        if (tree_path.empty()) throw ParseError("--tree is required for " + family);
        tree = require_tree(parse_graph(read_input(tree_path)));
    } else {
        throw ParseError("unknown family '" + family + "'");
    }

    std::optional<FileSink> file_sink;
    MoveSink* tee = nullptr;
    if (!moves_path.empty()) {
        file_sink.emplace(*tree, moves_path);
        tee = &*file_sink;
    }

    GenReport report;
    if (family == "chain")
        report = chain_pebbling(n, false, tee);
    else if (family == "bt")
        report = bt_optimal_pebbling(h, false, tee);
    else if (family == "bt-eps") {
        if (k < 1) throw ParseError("--k is required for bt-eps");
        report = bt_epsilon_pebbling(h, k, false, tee);
    } else if (family == "separator") {
        if (k < 1) throw ParseError("--k is required for separator");
        report = separator_pebbling(*tree, k, degree_cap, false, tee);
    } else {
        report = bottom_up_pebbling(*tree, false, tee);
    }

    if (!write_tree_path.empty()) write_output(write_tree_path, tree->serialize());

    json j{{"family", family},
           {"params", params_json(report.params)},
           {"space", report.space()},
           {"time", report.time()}};
    std::cout << j.dump() << "\n";
    return 0;
}

int cmd_oracle(const std::string& which, const std::string& graph_path, int budget,
               const std::string& variant, const std::string& witness_path,
               bool no_prune) {
    auto parsed = parse_graph(read_input(graph_path));
    const Dag& g = graph_of(parsed);

    OracleResult result;
    if (which == "rev")
        result = rev_oracle(g);
    else if (which == "vrev")
        result = vrev_oracle(g);
    else if (which == "steps") {
        if (budget < 1) throw ParseError("--budget is required for steps");
        result = min_steps_oracle(
            g, budget, variant == "visiting" ? Variant::Visiting : Variant::Persistent);
    } else if (which == "dt") {
        result.value = dt_oracle(g, !no_prune);
    } else {
        throw ParseError("unknown oracle '" + which + "'");
    }

    if (!witness_path.empty()) {
        if (!result.witness) throw ParseError("oracle '" + which + "' has no witness");
        write_output(witness_path, serialize_moves(g, *result.witness));
    }
    std::cout << result.value << "\n";
    return 0;
}

// Interactive pebbler-challenger match: the engine pebbles, the user
// challenges by typing node ids on stdin.
int cmd_dt(const std::string& graph_path, bool interactive, bool no_prune) {
    auto parsed = parse_graph(read_input(graph_path));
    const Dag& g = graph_of(parsed);
    if (!interactive) {
        std::cout << dt_oracle(g, !no_prune) << "\n";
        return 0;
    }

    DymondTompaEngine engine(g, !no_prune);
    std::uint32_t mask = 1u << g.root();
    int challenged = g.root();
    std::cerr << "pebbler pebbles '" << g.name(g.root()) << "'; challenger challenges '"
              << g.name(g.root()) << "'\n";
    while (!engine.won(mask, challenged)) {
        int v = engine.best_move(mask, challenged);
        mask |= 1u << v;
        std::cerr << "pebbler pebbles '" << g.name(v) << "'\n";
        std::cerr << "challenge '" << g.name(v) << "' or re-challenge '"
                  << g.name(challenged) << "': " << std::flush;
        std::string token;
        if (!(std::cin >> token)) throw ParseError("challenger input ended");
        if (token == g.name(v))
            challenged = v;
        else if (token == g.name(challenged))
            ;  // re-challenge
        else
            throw ParseError("challenger must name '" + g.name(v) + "' or '" +
                             g.name(challenged) + "'");
        std::cerr << "challenger challenges '" << g.name(challenged) << "'\n";
    }
    std::cerr << "pebbler wins: every in-neighbor of '" << g.name(challenged)
              << "' is pebbled\n";
    std::cout << std::popcount(mask) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reversible pebbling numbers and strategies for rooted trees"};
    app.require_subcommand(1);

    // solve
    std::string solve_graph, solve_coloring, solve_strategy, solve_moves;
    auto* solve_cmd = app.add_subcommand(
        "solve", "optimal pebbling number with coloring/strategy/move certificates");
    solve_cmd->add_option("graph", solve_graph, "tree edge list file, - for stdin")
        ->required();
    solve_cmd->add_option("--coloring", solve_coloring, "write the edge rank coloring");
    solve_cmd->add_option("--strategy", solve_strategy, "write the strategy tree");
    solve_cmd->add_option("--moves", solve_moves, "write the compiled move log");

    // erank
    std::string erank_graph, erank_coloring;
    auto* erank_cmd =
        app.add_subcommand("erank", "optimal edge rank coloring of the underlying tree");
    erank_cmd->add_option("graph", erank_graph, "tree edge list file, - for stdin")
        ->required();
    erank_cmd->add_option("--coloring", erank_coloring,
                          "write the coloring here instead of stdout");

    // validate
    std::string val_variant = "persistent", val_graph, val_moves;
    auto* val_cmd = app.add_subcommand("validate", "replay and check a move log");
    val_cmd->add_option("--variant", val_variant, "persistent or visiting")
        ->check(CLI::IsMember({"persistent", "visiting"}));
    val_cmd->add_option("graph", val_graph, "graph edge list file")->required();
    val_cmd->add_option("moves", val_moves, "move log file")->required();

    // convert
    std::string conv_graph, conv_in, conv_from, conv_to, conv_out = "-";
    auto* conv_cmd = app.add_subcommand(
        "convert", "convert between coloring, matchings and strategy formats");
    conv_cmd->add_option("--graph", conv_graph, "tree edge list file")->required();
    conv_cmd->add_option("--from", conv_from, "coloring, matchings or strategy")
        ->required()
        ->check(CLI::IsMember({"coloring", "matchings", "strategy"}));
    conv_cmd->add_option("--to", conv_to, "coloring, matchings or strategy")
        ->required()
        ->check(CLI::IsMember({"coloring", "matchings", "strategy"}));
    conv_cmd->add_option("input", conv_in, "input file, - for stdin")->required();
    conv_cmd->add_option("--out", conv_out, "output file, - for stdout");

    // generate
    std::string gen_family, gen_tree, gen_moves, gen_write_tree;
    int gen_n = 0, gen_h = 0, gen_k = 0, gen_cap = 4;
    auto* gen_cmd = app.add_subcommand("generate", "run a strategy generator");
    gen_cmd->add_option("--family", gen_family,
                        "chain, bt, bt-eps, separator or bottom-up")
        ->required()
        ->check(CLI::IsMember({"chain", "bt", "bt-eps", "separator", "bottom-up"}));
    gen_cmd->add_option("-n,--n", gen_n, "chain length");
    gen_cmd->add_option("-H,--height", gen_h, "complete binary tree height");
    gen_cmd->add_option("-k,--k", gen_k, "strategy parameter k");
    gen_cmd->add_option("--tree", gen_tree, "input tree for separator/bottom-up");
    gen_cmd->add_option("--moves", gen_moves, "stream the move log to this file");
    gen_cmd->add_option("--write-tree", gen_write_tree,
                        "write the generated tree's edge list");
    gen_cmd->add_option("--degree-cap", gen_cap, "max degree for separator (default 4)");

    // oracle
    std::string ora_which, ora_graph, ora_variant = "persistent", ora_witness;
    int ora_budget = 0;
    bool ora_noprune = false;
    auto* ora_cmd =
        app.add_subcommand("oracle", "exhaustive ground truth on small instances");
    ora_cmd->add_option("--which", ora_which, "rev, vrev, steps or dt")
        ->required()
        ->check(CLI::IsMember({"rev", "vrev", "steps", "dt"}));
    ora_cmd->add_option("graph", ora_graph, "graph edge list file")->required();
    ora_cmd->add_option("--budget", ora_budget, "space budget for steps");
    ora_cmd->add_option("--variant", ora_variant, "persistent or visiting (steps)")
        ->check(CLI::IsMember({"persistent", "visiting"}));
    ora_cmd->add_option("--witness", ora_witness, "write a witness move log");
    ora_cmd->add_flag("--no-prune", ora_noprune,
                      "disable the effective-predecessor pruning in dt");

    // dt
    std::string dt_graph;
    bool dt_interactive = false, dt_noprune = false;
    auto* dt_cmd =
        app.add_subcommand("dt", "Dymond-Tompa pebble game (optionally interactive)");
    dt_cmd->add_option("graph", dt_graph, "graph edge list file")->required();
    dt_cmd->add_flag("--interactive", dt_interactive,
                     "play as the challenger against the engine");
    dt_cmd->add_flag("--no-prune", dt_noprune, "disable effective-predecessor pruning");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve_cmd->parsed())
            return cmd_solve(solve_graph, solve_coloring, solve_strategy, solve_moves);
        if (erank_cmd->parsed()) return cmd_erank(erank_graph, erank_coloring);
        if (val_cmd->parsed()) return cmd_validate(val_variant, val_graph, val_moves);
        if (conv_cmd->parsed())
            return cmd_convert(conv_graph, conv_in, conv_from, conv_to, conv_out);
        if (gen_cmd->parsed())
            return cmd_generate(gen_family, gen_n, gen_h, gen_k, gen_tree, gen_moves,
                                gen_write_tree, gen_cap);
        if (ora_cmd->parsed())
            return cmd_oracle(ora_which, ora_graph, ora_budget, ora_variant, ora_witness,
                              ora_noprune);
        if (dt_cmd->parsed()) return cmd_dt(dt_graph, dt_interactive, dt_noprune);
    } catch (const SizeCapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
