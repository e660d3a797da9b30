// Python bindings. The API is string-oriented: graphs, colorings, matchings,
// strategies and move logs travel in the same text formats the CLI uses, so
// the formats themselves stay the contract.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "revpeb/generators.hpp"
#include "revpeb/oracle.hpp"
#include "revpeb/strategy.hpp"

namespace py = pybind11;
using namespace revpeb;

namespace {

RootedTree tree_from(const std::string& text) {
    return require_tree(parse_graph(text));
}

py::dict report_dict(const GenReport& r, const Dag& g, bool with_moves) {
    py::dict params;
    for (const auto& [k, v] : r.params) params[py::str(k)] = v;
    py::dict out;
    out["params"] = params;
    out["space"] = r.space();
    out["time"] = r.time();
    if (with_moves && r.sequence) out["moves"] = serialize_moves(g, *r.sequence);
    return out;
}

py::dict stats_dict(const PebbleStats& s) {
    py::dict out;
    out["space"] = s.space;
    out["time"] = s.time;
    return out;
}

}  // namespace

PYBIND11_MODULE(_revpeb, m) {
    m.doc() = "Reversible pebbling numbers and strategies for rooted trees";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "InvalidInputError", PyExc_ValueError);
    py::register_exception<SizeCapError>(m, "SizeCapError", PyExc_RuntimeError);

    // graphs
    m.def("parse_info", [](const std::string& text) {
        auto g = parse_graph(text);
        const Dag& d = graph_of(g);
        py::dict out;
        out["kind"] = std::holds_alternative<RootedTree>(g) ? "tree" : "dag";
        out["nodes"] = d.size();
        out["root"] = d.name(d.root());
        out["canonical"] = d.serialize();
        return out;
    }, py::arg("text"), "Parse a graph and report its kind, size, root and canonical form");

    m.def("complete_binary_tree",
          [](int h) { return complete_binary_tree(h).serialize(); }, py::arg("h"));
    m.def("chain", [](int n) { return chain(n).serialize(); }, py::arg("n"));
    m.def("chain_plus_bt",
          [](int i, int h) { return chain_plus_bt(i, h).serialize(); }, py::arg("i"),
          py::arg("h"));
    m.def("tree_height", [](const std::string& text) { return height(tree_from(text)); },
          py::arg("tree"));
    m.def("reroot_at_leaf",
          [](const std::string& text, const std::string& leaf) {
              RootedTree t = tree_from(text);
              return reroot_at_leaf(t, t.at(leaf)).serialize();
          },
          py::arg("tree"), py::arg("leaf"));
    m.def("subtree",
          [](const std::string& text, const std::string& node) {
              RootedTree t = tree_from(text);
              return subtree(t, t.at(node)).serialize();
          },
          py::arg("tree"), py::arg("node"));
    m.def("split_tree",
          [](const std::string& text, const std::string& u, const std::string& v) {
              RootedTree t = tree_from(text);
              auto [lower, rest] = split(t, t.at(u), t.at(v));
              return py::make_tuple(lower.serialize(), rest.serialize());
          },
          py::arg("tree"), py::arg("u"), py::arg("v"));
    m.def("separator_subtree",
          [](const std::string& text, long long n, int k0) {
              RootedTree t = tree_from(text);
              UndirectedTree u = underlying(t);
              std::vector<std::string> out;
              for (int v : separator_subtree(u, n, k0)) out.push_back(u.name(v));
              return out;
          },
          py::arg("tree"), py::arg("n"), py::arg("k0"));

    // solver and conversions
    m.def("solve", [](const std::string& text) {
        RootedTree t = tree_from(text);
        SolveResult r = solve(t);
        py::dict out;
        out["rev"] = r.rev;
        out["coloring"] = serialize_coloring(underlying(t), r.coloring);
        out["strategy"] = serialize_strategy(t, r.strategy);
        out["moves"] = serialize_moves(t, r.sequence);
        return out;
    }, py::arg("tree"), "Optimal pebbling number with certificates");

    m.def("erank", [](const std::string& text) {
        RootedTree t = tree_from(text);
        UndirectedTree u = underlying(t);
        EdgeColoring c = erank_opt(u);
        return py::make_tuple(c.rank(), serialize_coloring(u, c));
    }, py::arg("tree"), "Optimal edge rank coloring of the underlying tree");

    m.def("erank_bruteforce",
          [](const std::string& text, int k) {
              return erank_bruteforce(underlying(tree_from(text)), k);
          },
          py::arg("tree"), py::arg("k"));

    m.def("validate_coloring",
          [](const std::string& text, const std::string& coloring) {
              UndirectedTree u = underlying(tree_from(text));
              return validate_coloring(u, parse_coloring(u, coloring));
          },
          py::arg("tree"), py::arg("coloring"));

    m.def("validate_matchings",
          [](const std::string& text, const std::string& matchings) {
              UndirectedTree u = underlying(tree_from(text));
              return validate_matchings(u, parse_matchings(u, matchings));
          },
          py::arg("tree"), py::arg("matchings"));

    m.def("validate_strategy",
          [](const std::string& text, const std::string& strategy) {
              RootedTree t = tree_from(text);
              return validate_strategy(t, parse_strategy(t, strategy));
          },
          py::arg("tree"), py::arg("strategy"));

    m.def("coloring_to_matchings",
          [](const std::string& text, const std::string& coloring) {
              UndirectedTree u = underlying(tree_from(text));
              return serialize_matchings(u,
                                         coloring_to_matchings(u, parse_coloring(u, coloring)));
          },
          py::arg("tree"), py::arg("coloring"));

    m.def("matchings_to_coloring",
          [](const std::string& text, const std::string& matchings) {
              UndirectedTree u = underlying(tree_from(text));
              return serialize_coloring(u,
                                        matchings_to_coloring(u, parse_matchings(u, matchings)));
          },
          py::arg("tree"), py::arg("matchings"));

    m.def("matchings_to_strategy",
          [](const std::string& text, const std::string& matchings) {
              RootedTree t = tree_from(text);
              UndirectedTree u = underlying(t);
              return serialize_strategy(t,
                                        matchings_to_strategy(t, parse_matchings(u, matchings)));
          },
          py::arg("tree"), py::arg("matchings"));

    m.def("strategy_to_matchings",
          [](const std::string& text, const std::string& strategy) {
              RootedTree t = tree_from(text);
              return serialize_matchings(underlying(t),
                                         strategy_to_matchings(t, parse_strategy(t, strategy)));
          },
          py::arg("tree"), py::arg("strategy"));

    m.def("compile_strategy",
          [](const std::string& text, const std::string& strategy) {
              RootedTree t = tree_from(text);
              return serialize_moves(t, compile(t, parse_strategy(t, strategy)));
          },
          py::arg("tree"), py::arg("strategy"));

    // pebbling semantics
    m.def("validate_persistent",
          [](const std::string& text, const std::string& moves) {
              auto parsed = parse_graph(text);
              const Dag& g = graph_of(parsed);
              return stats_dict(validate_persistent(g, parse_moves(g, moves)));
          },
          py::arg("graph"), py::arg("moves"));
    m.def("validate_visiting",
          [](const std::string& text, const std::string& moves) {
              auto parsed = parse_graph(text);
              const Dag& g = graph_of(parsed);
              return stats_dict(validate_visiting(g, parse_moves(g, moves)));
          },
          py::arg("graph"), py::arg("moves"));
    m.def("reverse_moves",
          [](const std::string& text, const std::string& moves) {
              auto parsed = parse_graph(text);
              const Dag& g = graph_of(parsed);
              return serialize_moves(g, reverse(parse_moves(g, moves)));
          },
          py::arg("graph"), py::arg("moves"));
    m.def("to_visiting_instance", [](const std::string& text) {
        auto inst = to_visiting_instance(tree_from(text));
        return py::make_tuple(inst.tree.serialize(), inst.budget_shift);
    }, py::arg("tree"));
    m.def("to_persistent_instance", [](const std::string& text) {
        return to_persistent_instance(tree_from(text)).serialize();
    }, py::arg("tree"));

    // oracles
    m.def("rev_number", [](const std::string& text) {
        auto parsed = parse_graph(text);
        return rev_oracle(graph_of(parsed)).value;
    }, py::arg("graph"));
    m.def("vrev_number", [](const std::string& text) {
        auto parsed = parse_graph(text);
        return vrev_oracle(graph_of(parsed)).value;
    }, py::arg("graph"));
    m.def("rev_witness", [](const std::string& text) {
        auto parsed = parse_graph(text);
        const Dag& g = graph_of(parsed);
        auto r = rev_oracle(g);
        return py::make_tuple(r.value, serialize_moves(g, *r.witness));
    }, py::arg("graph"));
    m.def("min_steps",
          [](const std::string& text, int budget, const std::string& variant) {
              auto parsed = parse_graph(text);
              const Dag& g = graph_of(parsed);
              return min_steps_oracle(g, budget,
                                      variant == "visiting" ? Variant::Visiting
                                                            : Variant::Persistent)
                  .value;
          },
          py::arg("graph"), py::arg("budget"), py::arg("variant") = "persistent");
    m.def("dt_number",
          [](const std::string& text, bool prune) {
              auto parsed = parse_graph(text);
              return dt_oracle(graph_of(parsed), prune);
          },
          py::arg("graph"), py::arg("prune") = true);
    m.def("effective_predecessors",
          [](const std::string& text, const std::vector<std::string>& pebbled,
             const std::string& challenged) {
              auto parsed = parse_graph(text);
              const Dag& g = graph_of(parsed);
              PebbleConfig c = PebbleConfig::of_nodes(g, pebbled);
              std::vector<std::string> out;
              for (int v : effective_predecessors(g, c, g.at(challenged)))
                  out.push_back(g.name(v));
              return out;
          },
          py::arg("graph"), py::arg("pebbled"), py::arg("challenged"));

    // generators
    m.def("generate",
          [](const std::string& family, int n, int h, int k, const std::string& tree,
             bool with_moves, int degree_cap) {
              std::optional<RootedTree> t;
              GenReport r;
              if (family == "chain") {
                  t = chain(n);
                  r = chain_pebbling(n, with_moves);
              } else if (family == "bt") {
                  t = complete_binary_tree(h);
                  r = bt_optimal_pebbling(h, with_moves);
              } else if (family == "bt-eps") {
                  t = complete_binary_tree(h);
                  r = bt_epsilon_pebbling(h, k, with_moves);
              } else if (family == "separator") {
                  t = tree_from(tree);
                  r = separator_pebbling(*t, k, degree_cap, with_moves);
              } else if (family == "bottom-up") {
                  t = tree_from(tree);
                  r = bottom_up_pebbling(*t, with_moves);
              } else {
                  throw ParseError("unknown family '" + family + "'");
              }
              return report_dict(r, *t, with_moves);
          },
          py::arg("family"), py::arg("n") = 0, py::arg("h") = 0, py::arg("k") = 0,
          py::arg("tree") = "", py::arg("with_moves") = false, py::arg("degree_cap") = 4);
}
