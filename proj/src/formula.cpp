#include "groupgraph/formula.hpp"

#include <algorithm>
#include <sstream>

namespace gg {

GraphFormulaPtr GraphFormula::rel(std::string a, std::string b) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Rel, std::move(a), std::move(b),
                                                     nullptr, nullptr, {}});
}
GraphFormulaPtr GraphFormula::eq(std::string a, std::string b) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Eq, std::move(a), std::move(b),
                                                     nullptr, nullptr, {}});
}
GraphFormulaPtr GraphFormula::negate(GraphFormulaPtr f) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Not, {}, {}, std::move(f), nullptr, {}});
}
GraphFormulaPtr GraphFormula::conj(GraphFormulaPtr a, GraphFormulaPtr b) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::And, {}, {}, std::move(a),
                                                     std::move(b), {}});
}
GraphFormulaPtr GraphFormula::disj(GraphFormulaPtr a, GraphFormulaPtr b) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Or, {}, {}, std::move(a),
                                                     std::move(b), {}});
}
GraphFormulaPtr GraphFormula::implies(GraphFormulaPtr a, GraphFormulaPtr b) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Implies, {}, {}, std::move(a),
                                                     std::move(b), {}});
}
GraphFormulaPtr GraphFormula::exists(std::string v, GraphFormulaPtr f) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Exists, {}, {}, std::move(f), nullptr,
                                                     std::move(v)});
}
GraphFormulaPtr GraphFormula::forall(std::string v, GraphFormulaPtr f) {
  return std::make_shared<GraphFormula>(GraphFormula{GfKind::Forall, {}, {}, std::move(f), nullptr,
                                                     std::move(v)});
}

// --- parser ---------------------------------------------------------------------

namespace {

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("formula parse error at offset " + std::to_string(pos) + ": " + msg);
  }
  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    return text[pos];
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) fail("expected a token");
    return text.substr(start, pos - start);
  }

  GraphFormulaPtr formula() {
    expect('(');
    const std::string head = token();
    GraphFormulaPtr out;
    if (head == "R") {
      std::string a = token(), b = token();
      out = GraphFormula::rel(std::move(a), std::move(b));
    } else if (head == "=") {
      std::string a = token(), b = token();
      out = GraphFormula::eq(std::move(a), std::move(b));
    } else if (head == "not") {
      out = GraphFormula::negate(formula());
    } else if (head == "and" || head == "or" || head == "implies") {
      auto a = formula();
      auto b = formula();
      out = head == "and"  ? GraphFormula::conj(std::move(a), std::move(b))
            : head == "or" ? GraphFormula::disj(std::move(a), std::move(b))
                           : GraphFormula::implies(std::move(a), std::move(b));
    } else if (head == "exists" || head == "forall") {
      std::string v = token();
      if (v.starts_with('@')) fail("quantified variable may not be a constant");
      auto body = formula();
      out = head == "exists" ? GraphFormula::exists(std::move(v), std::move(body))
                             : GraphFormula::forall(std::move(v), std::move(body));
    } else {
      fail("unknown head '" + head + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace

GraphFormulaPtr parse_graph_formula(const std::string& text) {
  Parser p{text};
  auto f = p.formula();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return f;
}

std::string print_graph_formula(const GraphFormulaPtr& f) {
  std::ostringstream os;
  switch (f->kind) {
    case GfKind::Rel: os << "(R " << f->term1 << " " << f->term2 << ")"; break;
    case GfKind::Eq: os << "(= " << f->term1 << " " << f->term2 << ")"; break;
    case GfKind::Not: os << "(not " << print_graph_formula(f->child1) << ")"; break;
    case GfKind::And:
      os << "(and " << print_graph_formula(f->child1) << " " << print_graph_formula(f->child2)
         << ")";
      break;
    case GfKind::Or:
      os << "(or " << print_graph_formula(f->child1) << " " << print_graph_formula(f->child2)
         << ")";
      break;
    case GfKind::Implies:
      os << "(implies " << print_graph_formula(f->child1) << " "
         << print_graph_formula(f->child2) << ")";
      break;
    case GfKind::Exists:
      os << "(exists " << f->var << " " << print_graph_formula(f->child1) << ")";
      break;
    case GfKind::Forall:
      os << "(forall " << f->var << " " << print_graph_formula(f->child1) << ")";
      break;
  }
  return os.str();
}

GraphFormulaPtr desugar(const GraphFormulaPtr& f) {
  switch (f->kind) {
    case GfKind::Rel:
    case GfKind::Eq: return f;
    case GfKind::Not: return GraphFormula::negate(desugar(f->child1));
    case GfKind::And: return GraphFormula::conj(desugar(f->child1), desugar(f->child2));
    case GfKind::Or:  // a or b  =  not (not a and not b)
      return GraphFormula::negate(GraphFormula::conj(GraphFormula::negate(desugar(f->child1)),
                                                     GraphFormula::negate(desugar(f->child2))));
    case GfKind::Implies:  // a -> b  =  not (a and not b)
      return GraphFormula::negate(
          GraphFormula::conj(desugar(f->child1), GraphFormula::negate(desugar(f->child2))));
    case GfKind::Exists: return GraphFormula::exists(f->var, desugar(f->child1));
    case GfKind::Forall:  // forall x F  =  not exists x not F
      return GraphFormula::negate(
          GraphFormula::exists(f->var, GraphFormula::negate(desugar(f->child1))));
  }
  throw std::logic_error("unreachable");
}

namespace {

void walk_free(const GraphFormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out,
               bool constants) {
  switch (f->kind) {
    case GfKind::Rel:
    case GfKind::Eq:
      for (const std::string* t : {&f->term1, &f->term2}) {
        const bool is_const = t->starts_with('@');
        if (constants ? is_const : (!is_const && !bound.count(*t))) out.insert(*t);
      }
      return;
    case GfKind::Not: walk_free(f->child1, bound, out, constants); return;
    case GfKind::And:
    case GfKind::Or:
    case GfKind::Implies:
      walk_free(f->child1, bound, out, constants);
      walk_free(f->child2, bound, out, constants);
      return;
    case GfKind::Exists:
    case GfKind::Forall: {
      const bool fresh = bound.insert(f->var).second;
      walk_free(f->child1, bound, out, constants);
      if (fresh) bound.erase(f->var);
      return;
    }
  }
}

}  // namespace

std::set<std::string> free_variables(const GraphFormulaPtr& f) {
  std::set<std::string> bound, out;
  walk_free(f, bound, out, false);
  return out;
}

std::set<std::string> constants_of(const GraphFormulaPtr& f) {
  std::set<std::string> bound, out;
  walk_free(f, bound, out, true);
  return out;
}

std::size_t formula_size(const GraphFormulaPtr& f) {
  switch (f->kind) {
    case GfKind::Rel:
    case GfKind::Eq: return 1;
    case GfKind::Not:
    case GfKind::Exists:
    case GfKind::Forall: return 1 + formula_size(f->child1);
    default: return 1 + formula_size(f->child1) + formula_size(f->child2);
  }
}

namespace {

bool eval_rec(const Graph& g, const GraphFormulaPtr& f, std::map<std::string, std::size_t>& env) {
  auto lookup = [&](const std::string& t) {
    auto it = env.find(t);
    if (it == env.end()) throw PreconditionError("eval_graph: unassigned free term '" + t + "'");
    return it->second;
  };
  switch (f->kind) {
    case GfKind::Rel: return g.adjacent(lookup(f->term1), lookup(f->term2));
    case GfKind::Eq: return lookup(f->term1) == lookup(f->term2);
    case GfKind::Not: return !eval_rec(g, f->child1, env);
    case GfKind::And: return eval_rec(g, f->child1, env) && eval_rec(g, f->child2, env);
    case GfKind::Or: return eval_rec(g, f->child1, env) || eval_rec(g, f->child2, env);
    case GfKind::Implies: return !eval_rec(g, f->child1, env) || eval_rec(g, f->child2, env);
    case GfKind::Exists:
    case GfKind::Forall: {
      auto it = env.find(f->var);
      std::optional<std::size_t> saved =
          it != env.end() ? std::optional(it->second) : std::nullopt;
      bool result = f->kind == GfKind::Forall;
      for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        env[f->var] = v;
        const bool sub = eval_rec(g, f->child1, env);
        if (f->kind == GfKind::Exists && sub) { result = true; break; }
        if (f->kind == GfKind::Forall && !sub) { result = false; break; }
      }
      if (saved) env[f->var] = *saved;
      else env.erase(f->var);
      return result;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool eval_graph(const Graph& g, const GraphFormulaPtr& f,
                const std::map<std::string, std::size_t>& assignment) {
  std::map<std::string, std::size_t> env = assignment;
  return eval_rec(g, f, env);
}

namespace {

GraphFormulaPtr substitute(const GraphFormulaPtr& f,
                           const std::map<std::string, std::string>& subst) {
  auto term = [&](const std::string& t) {
    auto it = subst.find(t);
    return it == subst.end() ? t : it->second;
  };
  switch (f->kind) {
    case GfKind::Rel: return GraphFormula::rel(term(f->term1), term(f->term2));
    case GfKind::Eq: return GraphFormula::eq(term(f->term1), term(f->term2));
    case GfKind::Not: return GraphFormula::negate(substitute(f->child1, subst));
    case GfKind::And:
      return GraphFormula::conj(substitute(f->child1, subst), substitute(f->child2, subst));
    case GfKind::Or:
      return GraphFormula::disj(substitute(f->child1, subst), substitute(f->child2, subst));
    case GfKind::Implies:
      return GraphFormula::implies(substitute(f->child1, subst), substitute(f->child2, subst));
    case GfKind::Exists: return GraphFormula::exists(f->var, substitute(f->child1, subst));
    case GfKind::Forall: return GraphFormula::forall(f->var, substitute(f->child1, subst));
  }
  throw std::logic_error("unreachable");
}

void collect_all_vars(const GraphFormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind) {
    case GfKind::Rel:
    case GfKind::Eq:
      out.insert(f->term1);
      out.insert(f->term2);
      return;
    case GfKind::Not: collect_all_vars(f->child1, out); return;
    case GfKind::Exists:
    case GfKind::Forall:
      out.insert(f->var);
      collect_all_vars(f->child1, out);
      return;
    default:
      collect_all_vars(f->child1, out);
      collect_all_vars(f->child2, out);
      return;
  }
}

}  // namespace

GraphFormulaPtr eliminate_parameters(const GraphFormulaPtr& f) {
  const std::set<std::string> consts = constants_of(f);
  if (consts.empty()) return f;
  std::set<std::string> used;
  collect_all_vars(f, used);
  std::map<std::string, std::string> subst;
  std::vector<std::string> fresh_order;
  std::size_t counter = 1;
  for (const std::string& c : consts) {
    std::string fresh;
    do {
      fresh = "x" + std::to_string(counter++);
    } while (used.count(fresh));
    used.insert(fresh);
    subst[c] = fresh;
    fresh_order.push_back(fresh);
  }
  GraphFormulaPtr body = substitute(f, subst);
  for (auto it = fresh_order.rbegin(); it != fresh_order.rend(); ++it)
    body = GraphFormula::forall(*it, body);
  return body;
}

// --- seeded corpora -------------------------------------------------------------

namespace {

GraphFormulaPtr random_formula(std::mt19937_64& rng, std::size_t depth,
                               std::vector<std::string> scope,
                               const std::vector<std::string>& constant_pool,
                               std::size_t* next_var) {
  auto pick_term = [&]() -> std::string {
    std::vector<std::string> pool = scope;
    pool.insert(pool.end(), constant_pool.begin(), constant_pool.end());
    return pool[rng() % pool.size()];
  };
  const bool have_terms = !scope.empty() || !constant_pool.empty();
  const bool can_quantify = depth > 0;
  if (!have_terms && !can_quantify)
    throw std::logic_error("cannot build a formula with no terms and no quantifier budget");
  std::uint64_t die = rng() % 6;
  if (!have_terms) die = 4 + rng() % 2;              // must open with a quantifier
  if (!can_quantify && die >= 4) die = rng() % 4;    // no quantifier budget left
  switch (die) {
    case 0: return GraphFormula::rel(pick_term(), pick_term());
    case 1: return GraphFormula::eq(pick_term(), pick_term());
    case 2: return GraphFormula::negate(random_formula(rng, depth, scope, constant_pool, next_var));
    case 3: {
      auto a = random_formula(rng, depth, scope, constant_pool, next_var);
      auto b = random_formula(rng, depth, scope, constant_pool, next_var);
      switch (rng() % 3) {
        case 0: return GraphFormula::conj(a, b);
        case 1: return GraphFormula::disj(a, b);
        default: return GraphFormula::implies(a, b);
      }
    }
    default: {
      std::string v = "q" + std::to_string((*next_var)++);
      auto inner_scope = scope;
      inner_scope.push_back(v);
      auto body = random_formula(rng, depth - 1, std::move(inner_scope), constant_pool, next_var);
      return die == 4 ? GraphFormula::exists(v, body) : GraphFormula::forall(v, body);
    }
  }
}

}  // namespace

GraphFormulaPtr random_graph_sentence(std::mt19937_64& rng, std::size_t depth) {
  // the branching process has a heavy tail; resample oversized formulas
  for (;;) {
    std::size_t next_var = 0;
    auto f = random_formula(rng, depth, {}, {}, &next_var);
    if (formula_size(f) <= 48) return f;
  }
}

GraphFormulaPtr random_sentence_with_constants(std::mt19937_64& rng, std::size_t depth,
                                               const std::vector<std::string>& constant_pool) {
  for (;;) {
    std::size_t next_var = 0;
    auto f = random_formula(rng, depth, {}, constant_pool, &next_var);
    if (formula_size(f) <= 48) return f;
  }
}

}  // namespace gg
