#include "groupgraph/transpile.hpp"

#include <algorithm>
#include <sstream>

namespace gg {

const char* flavor_name(Flavor f) { return f == Flavor::PAC ? "pac" : "prc"; }

namespace {

RingFormulaPtr make_node(RingTemplateFormula node) {
  return std::make_shared<RingTemplateFormula>(std::move(node));
}

}  // namespace

std::string print_ring_formula(const RingFormulaPtr& f) {
  std::ostringstream os;
  switch (f->kind) {
    case RtKind::Alpha:
      os << "(alpha " << f->tuple_len << " " << f->group_tag << " " << f->tuple1 << ")";
      break;
    case RtKind::Rho:
      os << "(rho " << flavor_name(f->flavor) << " " << f->group_tag << " " << f->group_tag2
         << " " << f->tuple1 << " " << f->tuple2 << ")";
      break;
    case RtKind::Contain:
      os << "(contains " << f->tuple1 << " " << f->tuple2 << ")";
      break;
    case RtKind::SameField:
      os << "(same-field " << f->tuple1 << " " << f->tuple2 << ")";
      break;
    case RtKind::Not: os << "(not " << print_ring_formula(f->child1) << ")"; break;
    case RtKind::And:
      os << "(and " << print_ring_formula(f->child1) << " " << print_ring_formula(f->child2)
         << ")";
      break;
    case RtKind::ExistsTuple:
      os << "(exists-tuple " << f->var << " " << print_ring_formula(f->child1) << ")";
      break;
  }
  return os.str();
}

std::size_t ring_formula_size(const RingFormulaPtr& f) {
  switch (f->kind) {
    case RtKind::Alpha:
    case RtKind::Rho:
    case RtKind::Contain:
    case RtKind::SameField: return 1;
    case RtKind::Not:
    case RtKind::ExistsTuple: return 1 + ring_formula_size(f->child1);
    case RtKind::And: return 1 + ring_formula_size(f->child1) + ring_formula_size(f->child2);
  }
  return 0;
}

RingFormulaPtr translate(const GraphFormulaPtr& phi, const GraphParams& params, Flavor flavor) {
  const std::uint64_t l = params.D.order();
  switch (phi->kind) {
    case GfKind::Rel: {
      RingTemplateFormula node{RtKind::Rho};
      node.flavor = flavor;
      node.tuple_len = l;
      node.group_tag = "D";
      node.group_tag2 = "W";
      node.tuple1 = phi->term1;
      node.tuple2 = phi->term2;
      return make_node(std::move(node));
    }
    case GfKind::Eq: {
      RingTemplateFormula node{RtKind::SameField};
      node.flavor = flavor;
      node.tuple_len = l;
      node.tuple1 = phi->term1;
      node.tuple2 = phi->term2;
      return make_node(std::move(node));
    }
    case GfKind::Not: {
      RingTemplateFormula node{RtKind::Not};
      node.flavor = flavor;
      node.child1 = translate(phi->child1, params, flavor);
      return make_node(std::move(node));
    }
    case GfKind::And: {
      RingTemplateFormula node{RtKind::And};
      node.flavor = flavor;
      node.child1 = translate(phi->child1, params, flavor);
      node.child2 = translate(phi->child2, params, flavor);
      return make_node(std::move(node));
    }
    case GfKind::Exists: {
      RingTemplateFormula guard{RtKind::Alpha};
      guard.flavor = flavor;
      guard.tuple_len = l;
      guard.group_tag = "D";
      guard.tuple1 = phi->var;
      RingTemplateFormula body{RtKind::And};
      body.flavor = flavor;
      body.child1 = make_node(std::move(guard));
      body.child2 = translate(phi->child1, params, flavor);
      RingTemplateFormula node{RtKind::ExistsTuple};
      node.flavor = flavor;
      node.tuple_len = l;
      node.var = phi->var;
      node.child1 = make_node(std::move(body));
      return make_node(std::move(node));
    }
    default:
      throw PreconditionError("translate: formula must be desugared (only R, =, not, and, exists)");
  }
}

// --- group-level semantics --------------------------------------------------------

const GroupGraphModel& decode_model(const FiniteGroup& g, ParamsPtr params, Budget* budget) {
  // decoding is expensive; memoise per (group representation, parameter set).
  // The group handle is kept alive inside the key's shared_ptr.
  static std::map<std::pair<std::shared_ptr<const GroupRep>, const GraphParams*>, GroupGraphModel>
      cache;
  const auto key = std::make_pair(g.rep_ptr(), params.get());
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  DecodedGraph dec = decode_graph_with_kernels(g, params, budget);
  return cache.emplace(key, GroupGraphModel{std::move(dec.graph), std::move(dec.kernels)})
      .first->second;
}

namespace {

bool eval_ring(const GroupGraphModel& model, const RingFormulaPtr& f,
               std::map<std::string, std::size_t>& env) {
  auto lookup = [&](const std::string& t) {
    auto it = env.find(t);
    if (it == env.end())
      throw PreconditionError("eval_group: unassigned tuple variable '" + t + "'");
    return it->second;
  };
  switch (f->kind) {
    case RtKind::Alpha:
      // the guard holds of every assigned vertex kernel
      return lookup(f->tuple1) < model.graph.vertex_count();
    case RtKind::Rho: return model.graph.adjacent(lookup(f->tuple1), lookup(f->tuple2));
    case RtKind::SameField: return lookup(f->tuple1) == lookup(f->tuple2);
    case RtKind::Contain: {
      // "K_x subset K_y" corresponds to reverse inclusion of the kernels
      const auto& kx = model.kernels[lookup(f->tuple1)];
      const auto& ky = model.kernels[lookup(f->tuple2)];
      return kx.contains_subgroup(ky);
    }
    case RtKind::Not: return !eval_ring(model, f->child1, env);
    case RtKind::And: return eval_ring(model, f->child1, env) && eval_ring(model, f->child2, env);
    case RtKind::ExistsTuple: {
      auto it = env.find(f->var);
      std::optional<std::size_t> saved =
          it != env.end() ? std::optional(it->second) : std::nullopt;
      bool found = false;
      for (std::size_t v = 0; v < model.graph.vertex_count() && !found; ++v) {
        env[f->var] = v;
        found = eval_ring(model, f->child1, env);
      }
      if (saved) env[f->var] = *saved;
      else env.erase(f->var);
      return found;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool eval_group_model(const GroupGraphModel& model, const RingFormulaPtr& psi) {
  std::map<std::string, std::size_t> env;
  return eval_ring(model, psi, env);
}

bool eval_group(const FiniteGroup& g, const RingFormulaPtr& psi, ParamsPtr params,
                Budget* budget) {
  return eval_group_model(decode_model(g, std::move(params), budget), psi);
}

bool check_interpretation(const Graph& gamma, const GraphFormulaPtr& phi, ParamsPtr params,
                          Flavor flavor, Budget* budget) {
  if (!free_variables(phi).empty() || !constants_of(phi).empty())
    throw PreconditionError("check_interpretation: phi must be a sentence");
  const GraphFormulaPtr core = desugar(phi);
  const bool graph_side = eval_graph(gamma, core);
  EncodedGroup enc = encode_graph(gamma, params);
  const bool group_side =
      eval_group(enc.group, translate(core, *params, flavor), params, budget);
  return graph_side == group_side;
}

// --- the (dagger) induction over an explicit surjection ---------------------------

namespace {

// Every subformula paired with its free variables, in postorder.
void collect_subformulas(const GraphFormulaPtr& f,
                         std::vector<GraphFormulaPtr>& out) {
  switch (f->kind) {
    case GfKind::Rel:
    case GfKind::Eq: break;
    case GfKind::Not:
    case GfKind::Exists:
    case GfKind::Forall: collect_subformulas(f->child1, out); break;
    default:
      collect_subformulas(f->child1, out);
      collect_subformulas(f->child2, out);
      break;
  }
  out.push_back(f);
}

}  // namespace

bool check_reduction(const FiniteGroup& a, const Graph& b, const Interpretation& interp,
                     const GraphFormulaPtr& phi, ParamsPtr params, Budget* budget) {
  const GroupGraphModel& model = decode_model(a, params, budget);
  const std::size_t domain = model.graph.vertex_count();
  if (interp.f.size() != domain)
    throw PreconditionError("check_reduction: f must be defined on every domain element");
  std::vector<bool> hit(b.vertex_count(), false);
  for (std::size_t img : interp.f) {
    if (img >= b.vertex_count())
      throw PreconditionError("check_reduction: f maps outside the target structure");
    hit[img] = true;
  }
  if (!std::all_of(hit.begin(), hit.end(), [](bool x) { return x; }))
    throw PreconditionError("check_reduction: f is not surjective");

  const GraphFormulaPtr core = desugar(phi);
  std::vector<GraphFormulaPtr> subs;
  collect_subformulas(core, subs);

  for (const auto& sub : subs) {
    const std::set<std::string> free_set = free_variables(sub);
    std::vector<std::string> frees(free_set.begin(), free_set.end());
    if (!constants_of(sub).empty())
      throw PreconditionError("check_reduction: constants are not part of the interpretation");
    const RingFormulaPtr sub_t = translate(sub, *params, interp.flavor);
    // all assignments of the free variables to domain elements
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < frees.size(); ++i) total *= domain;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::map<std::string, std::size_t> env_a, env_b;
      std::uint64_t c = code;
      for (std::size_t i = 0; i < frees.size(); ++i) {
        const std::size_t v = static_cast<std::size_t>(c % domain);
        c /= domain;
        env_a[frees[i]] = v;
        env_b[frees[i]] = interp.f[v];
      }
      if (budget) budget->charge();
      if (eval_graph(b, sub, env_b) != eval_ring(model, sub_t, env_a)) return false;
    }
  }
  return true;
}

}  // namespace gg
