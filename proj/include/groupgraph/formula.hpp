#pragma once

// First-order graph formulas: s-expression parser and canonical printer,
// desugaring to the not/and/exists core, standard finite-model evaluation,
// and the constant-elimination transform (universal closure over fresh
// variables). Terms starting with '@' are constants; everything else is a
// variable.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "groupgraph/budget.hpp"
#include "groupgraph/graph.hpp"

namespace gg {

enum class GfKind { Rel, Eq, Not, And, Or, Implies, Exists, Forall };

struct GraphFormula;
using GraphFormulaPtr = std::shared_ptr<const GraphFormula>;

struct GraphFormula {
  GfKind kind;
  std::string term1, term2;       // Rel / Eq
  GraphFormulaPtr child1, child2; // unary: child1 only
  std::string var;                // Exists / Forall

  static GraphFormulaPtr rel(std::string a, std::string b);
  static GraphFormulaPtr eq(std::string a, std::string b);
  static GraphFormulaPtr negate(GraphFormulaPtr f);
  static GraphFormulaPtr conj(GraphFormulaPtr a, GraphFormulaPtr b);
  static GraphFormulaPtr disj(GraphFormulaPtr a, GraphFormulaPtr b);
  static GraphFormulaPtr implies(GraphFormulaPtr a, GraphFormulaPtr b);
  static GraphFormulaPtr exists(std::string v, GraphFormulaPtr f);
  static GraphFormulaPtr forall(std::string v, GraphFormulaPtr f);
};

/// Grammar: (R x y) | (= x y) | (not F) | (and F G) | (or F G)
/// | (implies F G) | (exists x F) | (forall x F). Errors carry the position.
GraphFormulaPtr parse_graph_formula(const std::string& text);

/// Fully parenthesised canonical form, single spaces. parse . print = id.
std::string print_graph_formula(const GraphFormulaPtr& f);

/// Eliminate or / implies / forall; the result uses only Rel, Eq, Not, And,
/// Exists.
GraphFormulaPtr desugar(const GraphFormulaPtr& f);

std::set<std::string> free_variables(const GraphFormulaPtr& f);
std::set<std::string> constants_of(const GraphFormulaPtr& f);  // '@' terms
std::size_t formula_size(const GraphFormulaPtr& f);

/// Standard satisfaction over the vertex domain with R = (symmetric) edge
/// relation. The assignment must cover every free variable and constant.
bool eval_graph(const Graph& g, const GraphFormulaPtr& f,
                const std::map<std::string, std::size_t>& assignment = {});

/// Replace the constants c1..ck by fresh variables and return the universal
/// closure over them. Fresh names never collide with existing variables.
GraphFormulaPtr eliminate_parameters(const GraphFormulaPtr& f);

/// Seeded random sentence over {R, =} with the given quantifier depth;
/// used by the interpretation test corpora.
GraphFormulaPtr random_graph_sentence(std::mt19937_64& rng, std::size_t depth);

/// Seeded random formula with constants drawn from the given pool (may be
/// open in the constants only).
GraphFormulaPtr random_sentence_with_constants(std::mt19937_64& rng, std::size_t depth,
                                               const std::vector<std::string>& constant_pool);

}  // namespace gg
