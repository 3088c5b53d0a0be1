#include "doctest.h"

#include <random>

#include "groupgraph/formula.hpp"
#include "groupgraph/transpile.hpp"

using namespace gg;

namespace {

// Independent truth-table style evaluator used as an oracle: expands each
// quantifier into an explicit loop over materialised assignment rows rather
// than recursing with an environment.
bool naive_eval(const Graph& g, const GraphFormulaPtr& f,
                std::vector<std::pair<std::string, std::size_t>> row) {
  auto find = [&](const std::string& t) -> std::size_t {
    for (auto it = row.rbegin(); it != row.rend(); ++it)
      if (it->first == t) return it->second;
    throw PreconditionError("naive_eval: unbound " + t);
  };
  switch (f->kind) {
    case GfKind::Rel: return g.adjacent(find(f->term1), find(f->term2));
    case GfKind::Eq: return find(f->term1) == find(f->term2);
    case GfKind::Not: return !naive_eval(g, f->child1, row);
    case GfKind::And: return naive_eval(g, f->child1, row) && naive_eval(g, f->child2, row);
    case GfKind::Or: return naive_eval(g, f->child1, row) || naive_eval(g, f->child2, row);
    case GfKind::Implies:
      return !naive_eval(g, f->child1, row) || naive_eval(g, f->child2, row);
    case GfKind::Exists:
    case GfKind::Forall: {
      bool acc = f->kind == GfKind::Forall;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        auto extended = row;
        extended.emplace_back(f->var, v);
        const bool sub = naive_eval(g, f->child1, extended);
        acc = f->kind == GfKind::Exists ? (acc || sub) : (acc && sub);
      }
      return acc;
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<Graph> small_graphs() {
  Graph one_edge = Graph::edgeless(3);
  one_edge.add_edge("a0", "a1");
  return {Graph::edgeless(1), Graph::edgeless(2), Graph::complete(2),
          Graph::edgeless(3), one_edge, Graph::path(3), Graph::complete(3)};
}

}  // namespace

TEST_CASE("parse and print round-trip") {
  for (const char* text : {
           "(exists x (R x x))",
           "(forall x (exists y (R x y)))",
           "(and (R x y) (not (= x y)))",
           "(implies (R a b) (or (= a b) (R b a)))",
           "(exists x (and (R x @c1) (= x @c2)))",
       }) {
    auto f = parse_graph_formula(text);
    CHECK(print_graph_formula(f) == text);
    CHECK(print_graph_formula(parse_graph_formula(print_graph_formula(f))) == text);
  }
  CHECK_THROWS_AS(parse_graph_formula("(R x"), InputError);
  CHECK_THROWS_AS(parse_graph_formula("(frob x y)"), InputError);
  CHECK_THROWS_AS(parse_graph_formula("(exists @c (R @c @c))"), InputError);
  // open formulas are accepted
  auto open = parse_graph_formula("(and (R x y) (not (= x y)))");
  CHECK(free_variables(open) == std::set<std::string>{"x", "y"});
}

TEST_CASE("desugaring") {
  auto f = parse_graph_formula("(forall x (exists y (R x y)))");
  CHECK(print_graph_formula(desugar(f)) ==
        "(not (exists x (not (exists y (R x y)))))");
  auto g = parse_graph_formula("(or (R x y) (R y x))");
  CHECK(print_graph_formula(desugar(g)) ==
        "(not (and (not (R x y)) (not (R y x))))");
}

TEST_CASE("graph evaluation") {
  auto k2 = Graph::complete(2);
  auto e2 = Graph::edgeless(2);
  auto some_edge = parse_graph_formula("(exists x (exists y (R x y)))");
  CHECK(eval_graph(k2, some_edge));
  CHECK_FALSE(eval_graph(e2, some_edge));
  CHECK(eval_graph(e2, parse_graph_formula("(not (exists x (exists y (R x y))))")));

  // path a-b-c has two adjacent vertices with a common non-neighbour
  auto path_sentence = parse_graph_formula(
      "(exists x (exists y (exists z (and (and (R x y) (R y z)) (not (R x z))))))");
  CHECK(eval_graph(Graph::path(3), path_sentence));
  CHECK_FALSE(eval_graph(Graph::complete(3), path_sentence));

  CHECK_THROWS_AS(eval_graph(k2, parse_graph_formula("(R x y)")), PreconditionError);
}

TEST_CASE("eval_graph agrees with the naive evaluator on a seeded corpus") {
  std::mt19937_64 rng(20250810);
  auto graphs = small_graphs();
  for (int i = 0; i < 200; ++i) {
    auto f = random_graph_sentence(rng, 2);
    for (const auto& g : graphs)
      CHECK(eval_graph(g, f) == naive_eval(g, f, {}));
  }
}

TEST_CASE("eliminate_parameters") {
  SUBCASE("constant-free formulas are unchanged") {
    auto f = parse_graph_formula("(exists x (R x x))");
    CHECK(print_graph_formula(eliminate_parameters(f)) == print_graph_formula(f));
  }
  SUBCASE("constants become universally closed fresh variables") {
    auto f = parse_graph_formula("(R @c1 @c2)");
    CHECK(print_graph_formula(eliminate_parameters(f)) ==
          "(forall x1 (forall x2 (R x1 x2)))");
  }
  SUBCASE("fresh names avoid collisions with bound variables") {
    auto f = parse_graph_formula("(exists x1 (R x1 @c))");
    auto closed = eliminate_parameters(f);
    CHECK(print_graph_formula(closed) == "(forall x2 (exists x1 (R x1 x2)))");
  }
  SUBCASE("closure law: N satisfies the closure iff every constant expansion satisfies phi") {
    std::mt19937_64 rng(777);
    auto graphs = small_graphs();
    int checked = 0;
    for (int i = 0; checked < 20 && i < 200; ++i) {
      auto f = random_sentence_with_constants(rng, 1, {"@c1", "@c2"});
      const auto consts = constants_of(f);
      if (consts.empty()) continue;
      ++checked;
      const Graph& g = graphs[rng() % graphs.size()];
      bool closure = eval_graph(g, eliminate_parameters(f));
      bool all_expansions = true;
      std::vector<std::string> cs(consts.begin(), consts.end());
      std::vector<std::size_t> assign(cs.size(), 0);
      std::uint64_t total = 1;
      for (std::size_t j = 0; j < cs.size(); ++j) total *= g.vertex_count();
      for (std::uint64_t code = 0; code < total && all_expansions; ++code) {
        std::map<std::string, std::size_t> env;
        std::uint64_t c = code;
        for (std::size_t j = 0; j < cs.size(); ++j) {
          env[cs[j]] = c % g.vertex_count();
          c /= g.vertex_count();
        }
        all_expansions = eval_graph(g, f, env);
      }
      CHECK(closure == all_expansions);
    }
    CHECK(checked == 20);
  }
}

TEST_CASE("translation rules") {
  auto p = choose_parameters(2);
  SUBCASE("the displayed shape for exists-exists-R") {
    auto f = desugar(parse_graph_formula("(exists x (exists y (R x y)))"));
    auto t = translate(f, *p);
    CHECK(print_ring_formula(t) ==
          "(exists-tuple x (and (alpha 21 D x) (exists-tuple y (and (alpha 21 D y) "
          "(rho pac D W x y)))))");
  }
  SUBCASE("negation and conjunction commute with translation syntactically") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) {
      auto f = desugar(random_graph_sentence(rng, 2));
      auto not_f = GraphFormula::negate(f);
      CHECK(print_ring_formula(translate(not_f, *p)) ==
            "(not " + print_ring_formula(translate(f, *p)) + ")");
      auto f2 = desugar(random_graph_sentence(rng, 1));
      CHECK(print_ring_formula(translate(GraphFormula::conj(f, f2), *p)) ==
            "(and " + print_ring_formula(translate(f, *p)) + " " +
                print_ring_formula(translate(f2, *p)) + ")");
    }
  }
  SUBCASE("bound variables become tuples of exactly |D| = 21 ring variables") {
    auto f = desugar(parse_graph_formula("(exists x (= x x))"));
    auto t = translate(f, *p);
    CHECK(t->kind == RtKind::ExistsTuple);
    CHECK(t->tuple_len == 21);
  }
  SUBCASE("PRC flavor tags the Rho atom") {
    auto f = desugar(parse_graph_formula("(exists x (exists y (R x y)))"));
    auto t = translate(f, *p, Flavor::PRC);
    CHECK(print_ring_formula(t).find("(rho prc D W x y)") != std::string::npos);
  }
  SUBCASE("size of the translation is linear in the size of the input") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
      auto f = desugar(random_graph_sentence(rng, 2));
      // each node expands to at most 3 template nodes (quantifier guarding)
      CHECK(ring_formula_size(translate(f, *p)) <= 3 * formula_size(f));
    }
  }
}

TEST_CASE("group-level evaluation on the decoded parameter groups") {
  auto p = choose_parameters(2);
  auto some_edge = desugar(parse_graph_formula("(exists x (exists y (R x y)))"));
  CHECK(eval_group(p->W, translate(some_edge, *p), p));
  CHECK_FALSE(eval_group(p->DD, translate(some_edge, *p), p));
  auto nonempty = desugar(parse_graph_formula("(exists x (= x x))"));
  CHECK(eval_group(p->D, translate(nonempty, *p), p));
}

TEST_CASE("check_interpretation on the worked examples") {
  auto p = choose_parameters(2);
  auto some_edge = parse_graph_formula("(exists x (exists y (R x y)))");
  CHECK(check_interpretation(Graph::complete(2), some_edge, p));
  CHECK(check_interpretation(Graph::edgeless(2), some_edge, p));
  CHECK(check_interpretation(Graph::complete(2), parse_graph_formula("(exists x (R x x))"), p));
}

TEST_CASE("check_reduction with explicit surjections") {
  auto p = choose_parameters(2);
  SUBCASE("identity-style kernel map on K2 passes a small corpus") {
    auto enc = encode_graph(Graph::complete(2), p);
    Interpretation interp{"alpha_{21,D}", Flavor::PAC, {0, 1}};
    std::mt19937_64 rng(99);
    for (int i = 0; i < 10; ++i) {
      auto f = random_graph_sentence(rng, 2);
      CHECK(check_reduction(enc.group, Graph::complete(2), interp, f, p));
    }
  }
  SUBCASE("swapping the two kernels of an edgeless pair is harmless by symmetry") {
    auto enc = encode_graph(Graph::edgeless(2), p);
    Interpretation swapped{"alpha_{21,D}", Flavor::PAC, {1, 0}};
    std::mt19937_64 rng(123);
    for (int i = 0; i < 10; ++i) {
      auto f = random_graph_sentence(rng, 2);
      CHECK(check_reduction(enc.group, Graph::edgeless(2), swapped, f, p));
    }
  }
  SUBCASE("corrupting f on an asymmetric path breaks a distinguishing formula") {
    auto enc = encode_graph(Graph::path(3), p);
    const auto& model = decode_model(enc.group, p);
    REQUIRE(model.graph.vertex_count() == 3);
    // in the path a0-a1-a2 the middle vertex a1 (index 1) has degree 2;
    // locate the degree-2 vertex of the decoded graph and map mid to mid
    std::size_t mid_a = 0;
    std::vector<std::size_t> ends_a;
    for (std::size_t v = 0; v < 3; ++v) {
      std::size_t deg = 0;
      for (std::size_t w = 0; w < 3; ++w) deg += model.graph.adjacent(v, w) ? 1 : 0;
      if (deg == 2) mid_a = v;
    }
    for (std::size_t v = 0; v < 3; ++v)
      if (v != mid_a) ends_a.push_back(v);
    std::vector<std::size_t> good(3);
    good[mid_a] = 1;
    good[ends_a[0]] = 0;
    good[ends_a[1]] = 2;
    auto bad = good;  // corrupt: middle kernel now names an end vertex
    std::swap(bad[mid_a], bad[ends_a[0]]);
    auto distinguishing = parse_graph_formula("(R x y)");
    Interpretation good_i{"alpha_{21,D}", Flavor::PAC, good};
    Interpretation bad_i{"alpha_{21,D}", Flavor::PAC, bad};
    CHECK(check_reduction(enc.group, Graph::path(3), good_i, distinguishing, p));
    CHECK_FALSE(check_reduction(enc.group, Graph::path(3), bad_i, distinguishing, p));
  }
  SUBCASE("non-surjective f is rejected") {
    auto enc = encode_graph(Graph::edgeless(2), p);
    Interpretation interp{"alpha_{21,D}", Flavor::PAC, {0, 0}};
    CHECK_THROWS_AS(
        check_reduction(enc.group, Graph::edgeless(2), interp, parse_graph_formula("(exists x (= x x))"), p),
        PreconditionError);
  }
}
