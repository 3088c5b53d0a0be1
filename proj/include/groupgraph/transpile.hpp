#pragma once

// The recursive graph-to-ring translation: graph formulas become template
// formulas whose atoms stand for the (enormous) ring-language assertions
// "Gal(K_x/K) iso H" (Alpha) and "x, y span a joint W-extension" (Rho).
// Templates stay symbolic; their semantics are supplied at group level, where
// a finite group G plays the field through its decoded graph.

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "groupgraph/codec.hpp"
#include "groupgraph/formula.hpp"

namespace gg {

enum class Flavor { PAC, PRC };
const char* flavor_name(Flavor f);

enum class RtKind { Alpha, Rho, Contain, SameField, Not, And, ExistsTuple };

struct RingTemplateFormula;
using RingFormulaPtr = std::shared_ptr<const RingTemplateFormula>;

/// Template formula over tuple variables. Each tuple has length `tuple_len`
/// (= |D|); quantified tuples are guarded by their Alpha atom by construction.
struct RingTemplateFormula {
  RtKind kind;
  Flavor flavor = Flavor::PAC;
  std::uint64_t tuple_len = 0;
  std::string group_tag;   // Alpha: H-tag; Rho: H-tag
  std::string group_tag2;  // Rho: E-tag
  std::string tuple1, tuple2;
  RingFormulaPtr child1, child2;
  std::string var;  // ExistsTuple
};

std::string print_ring_formula(const RingFormulaPtr& f);
std::size_t ring_formula_size(const RingFormulaPtr& f);

/// The four translation rules (R, not, and, exists) plus the equality rule
/// (vertex equality -> same splitting field). Input must be desugared.
RingFormulaPtr translate(const GraphFormulaPtr& phi, const GraphParams& params,
                         Flavor flavor = Flavor::PAC);

/// The decoded first-order structure of a group: its graph together with the
/// vertex kernels (needed to evaluate Contain / SameField).
struct GroupGraphModel {
  Graph graph;                    // vertices k0, k1, ... in canonical order
  std::vector<Subgroup> kernels;  // parallel to graph.vertices()
};
/// Decoded models are memoised per (group representation, parameter set);
/// the reference stays valid for the lifetime of the process.
const GroupGraphModel& decode_model(const FiniteGroup& g, ParamsPtr params,
                                    Budget* budget = nullptr);

/// Template semantics over the decoded model: guarded tuples range over the
/// vertex kernels, Rho is the edge relation, SameField is kernel equality,
/// Contain is reverse kernel inclusion.
bool eval_group(const FiniteGroup& g, const RingFormulaPtr& psi, ParamsPtr params,
                Budget* budget = nullptr);
bool eval_group_model(const GroupGraphModel& model, const RingFormulaPtr& psi);

/// Condition (dagger) for a sentence: Gamma satisfies phi iff the encoded
/// group satisfies translate(phi).
bool check_interpretation(const Graph& gamma, const GraphFormulaPtr& phi, ParamsPtr params,
                          Flavor flavor = Flavor::PAC, Budget* budget = nullptr);

/// Interpretation data: the domain-formula descriptor, the translation flavor
/// and an explicit surjection f from the group-side vertex kernels onto the
/// graph-side vertices.
struct Interpretation {
  std::string delta_descriptor;
  Flavor flavor = Flavor::PAC;
  std::vector<std::size_t> f;  // kernel index -> vertex index of B
};

/// Full first-order induction over the given surjection: for every subformula
/// of `phi` and every assignment of its free variables to group-side vertices,
/// B satisfies it under f iff the group-side model satisfies its translation.
/// Rejects a non-surjective f.
bool check_reduction(const FiniteGroup& a, const Graph& b, const Interpretation& interp,
                     const GraphFormulaPtr& phi, ParamsPtr params, Budget* budget = nullptr);

}  // namespace gg
