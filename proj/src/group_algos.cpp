#include "groupgraph/group_algos.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <unordered_map>

namespace gg {

namespace {

constexpr std::uint64_t kEpiDirectLimit = 20000;       // source order for direct DFS
constexpr std::uint64_t kNormalLatticeLimit = 24000;   // full normal-lattice enumeration

std::uint64_t fnv_hash(const std::vector<Elem>& v) {
  std::uint64_t h = 1469598103934665603ull;
  for (Elem e : v) {
    h ^= e + 0x9e3779b97f4a7c15ull;
    h *= 1099511628211ull;
  }
  return h ^ v.size();
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<Elem> closure_elements(const FiniteGroup& g, std::span<const Elem> gens,
                                   Budget* budget) {
  const std::uint64_t n = g.order();
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<Elem> elements;
  elements.reserve(64);
  visited[g.identity()] = 1;
  elements.push_back(g.identity());
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const Elem x = elements[i];
    for (Elem s : gens) {
      const Elem y = g.op(x, s);
      if (budget) budget->charge();
      if (!visited[y]) {
        visited[y] = 1;
        elements.push_back(y);
      }
    }
  }
  std::sort(elements.begin(), elements.end());
  return elements;
}

HomClosure hom_closure(const FiniteGroup& g, const FiniteGroup& h, std::span<const Elem> gens,
                       std::span<const Elem> images, Budget* budget) {
  assert(gens.size() == images.size());
  const std::uint64_t n = g.order();
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::uint32_t> img(n, 0);
  HomClosure out;
  out.elements.reserve(64);
  visited[g.identity()] = 1;
  img[g.identity()] = static_cast<std::uint32_t>(h.identity());
  out.elements.push_back(g.identity());
  for (std::size_t i = 0; i < out.elements.size(); ++i) {
    const Elem x = out.elements[i];
    const Elem fx = img[x];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const Elem y = g.op(x, gens[k]);
      const Elem fy = h.op(fx, images[k]);
      if (budget) budget->charge();
      if (!visited[y]) {
        visited[y] = 1;
        img[y] = static_cast<std::uint32_t>(fy);
        out.elements.push_back(y);
      } else if (img[y] != fy) {
        out.consistent = false;
        out.elements.clear();
        return out;
      }
    }
  }
  out.images.resize(out.elements.size());
  for (std::size_t i = 0; i < out.elements.size(); ++i) out.images[i] = img[out.elements[i]];
  return out;
}

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> seed, Budget* budget) {
  return Subgroup::generated(g, seed, budget);
}

Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> seed, Budget* budget) {
  std::vector<Elem> gens;
  for (Elem s : seed)
    if (s != g.identity()) gens.push_back(s);
  if (gens.empty()) return Subgroup::trivial(g);
  const auto& ggens = g.generators();
  std::vector<Elem> members;
  for (;;) {
    members = closure_elements(g, gens, budget);
    bool grew = false;
    const std::size_t cur = gens.size();
    for (std::size_t i = 0; i < cur; ++i) {
      for (Elem w : ggens) {
        const Elem c = g.conjugate(w, gens[i]);
        if (budget) budget->charge();
        if (!std::binary_search(members.begin(), members.end(), c)) {
          gens.push_back(c);
          grew = true;
        }
      }
    }
    if (!grew) break;
  }
  return Subgroup(g, std::move(members), Subgroup::Unchecked{});
}

bool is_normal(const FiniteGroup& g, const Subgroup& h) {
  for (Elem w : g.generators())
    for (Elem x : h.members())
      if (!h.contains(g.conjugate(w, x))) return false;
  return true;
}

QuotientResult quotient(const FiniteGroup& g, const Subgroup& n, Budget* budget) {
  if (!n.parent().same_group(g))
    throw PreconditionError("quotient: subgroup belongs to a different group");
  if (!is_normal(g, n)) throw PreconditionError("quotient: subgroup is not normal");
  const std::uint64_t order = g.order();
  auto coset_of = std::make_shared<std::vector<std::uint32_t>>(order, 0xFFFFFFFFu);
  std::vector<Elem> reps;
  for (Elem m : n.members()) (*coset_of)[m] = 0;
  reps.push_back(g.identity());
  for (std::size_t i = 0; i < reps.size(); ++i) {
    const Elem x = reps[i];
    for (Elem s : g.generators()) {
      const Elem y = g.op(x, s);
      if (budget) budget->charge();
      if ((*coset_of)[y] == 0xFFFFFFFFu) {
        const auto c = static_cast<std::uint32_t>(reps.size());
        for (Elem m : n.members()) {
          (*coset_of)[g.op(y, m)] = c;
          if (budget) budget->charge();
        }
        reps.push_back(y);
      }
    }
  }
  FiniteGroup q(std::make_shared<QuotientRep>(g, std::move(reps), coset_of));
  Homomorphism proj(g, q, [coset_of](Elem x) { return static_cast<Elem>((*coset_of)[x]); });
  return QuotientResult{std::move(q), std::move(proj)};
}

Subgroup center(const FiniteGroup& g) {
  std::vector<Elem> members;
  const auto& gens = g.generators();
  for (Elem z = 0; z < g.order(); ++z) {
    bool central = true;
    for (Elem s : gens)
      if (g.op(z, s) != g.op(s, z)) { central = false; break; }
    if (central) members.push_back(z);
  }
  return Subgroup(g, std::move(members), Subgroup::Unchecked{});
}

Subgroup derived_subgroup(const FiniteGroup& g, Budget* budget) {
  const auto& gens = g.generators();
  std::vector<Elem> comms;
  for (Elem a : gens)
    for (Elem b : gens) comms.push_back(g.commutator(a, b));
  return normal_closure(g, comms, budget);
}

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g, Budget* budget) {
  const std::uint64_t n = g.order();
  std::vector<std::uint8_t> visited(n, 0);
  std::vector<std::vector<Elem>> classes;
  const auto& gens = g.generators();
  for (Elem x = 0; x < n; ++x) {
    if (visited[x]) continue;
    std::vector<Elem> orbit{x};
    visited[x] = 1;
    for (std::size_t i = 0; i < orbit.size(); ++i)
      for (Elem w : gens) {
        const Elem c = g.conjugate(w, orbit[i]);
        if (budget) budget->charge();
        if (!visited[c]) {
          visited[c] = 1;
          orbit.push_back(c);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  return classes;
}

namespace {

struct SubgroupPool {
  // dedupe by member-vector hash
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
  std::vector<std::vector<Elem>> members;
  std::vector<std::vector<Elem>> gens;

  bool insert(std::vector<Elem> m, std::vector<Elem> gen_hint) {
    const std::uint64_t h = fnv_hash(m);
    auto& bucket = by_hash[h];
    for (std::size_t idx : bucket)
      if (members[idx] == m) return false;
    bucket.push_back(members.size());
    members.push_back(std::move(m));
    gens.push_back(std::move(gen_hint));
    return true;
  }
};

}  // namespace

std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& g, Budget* budget) {
  if (g.order() > kNormalLatticeLimit)
    throw BudgetExceeded("normal-subgroup lattice: group order " + std::to_string(g.order()) +
                             " exceeds the exhaustive-enumeration limit",
                         0);
  SubgroupPool pool;
  pool.insert({g.identity()}, {});
  // atoms: normal closures of single conjugacy-class representatives; the
  // generator hint must generate the whole closure so that later joins of two
  // normal subgroups are again generated (hence normal)
  for (const auto& cls : conjugacy_classes(g, budget)) {
    const Elem rep = cls.front();
    if (rep == g.identity() && cls.size() == 1) continue;
    Subgroup n = normal_closure(g, std::span<const Elem>(&rep, 1), budget);
    std::vector<Elem> hint = n.generating_set();
    std::vector<Elem> members = n.members();
    pool.insert(std::move(members), std::move(hint));
  }
  // close under joins
  for (std::size_t i = 0; i < pool.members.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      std::vector<Elem> joint = pool.gens[i];
      joint.insert(joint.end(), pool.gens[j].begin(), pool.gens[j].end());
      if (joint.empty()) continue;
      std::vector<Elem> m = closure_elements(g, joint, budget);
      pool.insert(std::move(m), std::move(joint));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(pool.members.size());
  for (auto& m : pool.members) out.emplace_back(g, std::move(m), Subgroup::Unchecked{});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

std::vector<Subgroup> enumerate_normal_subgroups(const FiniteGroup& g, std::uint64_t max_index,
                                                 Budget* budget) {
  if (max_index == 0) throw PreconditionError("enumerate_normal_subgroups: max_index must be >= 1");
  std::vector<Subgroup> out;
  for (auto& n : all_normal_subgroups(g, budget))
    if (n.index() <= max_index) out.push_back(std::move(n));
  return out;
}

std::vector<Subgroup> all_subgroups(const FiniteGroup& g, Budget* budget,
                                    std::uint64_t order_limit) {
  if (g.order() > order_limit)
    throw BudgetExceeded("subgroup lattice: group order " + std::to_string(g.order()) +
                             " exceeds limit " + std::to_string(order_limit),
                         0);
  SubgroupPool pool;
  pool.insert({g.identity()}, {});
  for (Elem x = 0; x < g.order(); ++x) {
    std::vector<Elem> gens{x};
    std::vector<Elem> members = closure_elements(g, gens, budget);
    pool.insert(std::move(members), std::move(gens));
  }
  for (std::size_t i = 0; i < pool.members.size(); ++i) {
    if (pool.members[i].size() == g.order()) continue;
    for (Elem x = 0; x < g.order(); ++x) {
      if (std::binary_search(pool.members[i].begin(), pool.members[i].end(), x)) continue;
      std::vector<Elem> gens = pool.gens[i];
      gens.push_back(x);
      std::vector<Elem> members = closure_elements(g, gens, budget);
      pool.insert(std::move(members), std::move(gens));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(pool.members.size());
  for (auto& m : pool.members) out.emplace_back(g, std::move(m), Subgroup::Unchecked{});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

// --- generator-image DFS ------------------------------------------------------

namespace {

struct HomDFS {
  const FiniteGroup& src;
  const FiniteGroup& dst;
  Budget* budget;
  bool iso_mode = false;  // stop at first bijective hit

  std::vector<Elem> gens;
  std::vector<std::vector<Elem>> cands;
  std::vector<Elem> images;

  std::vector<std::vector<Elem>> kernels;              // deduped sorted member lists
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> kernel_hash;
  std::optional<std::vector<Elem>> witness_table;      // iso mode

  HomDFS(const FiniteGroup& g, const FiniteGroup& h, Budget* b) : src(g), dst(h), budget(b) {}

  void prepare(bool exact_order_match) {
    gens = src.generators();
    std::vector<std::uint64_t> dst_orders(dst.order());
    for (Elem x = 0; x < dst.order(); ++x) dst_orders[x] = dst.element_order(x);
    cands.resize(gens.size());
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::uint64_t go = src.element_order(gens[i]);
      for (Elem x = 0; x < dst.order(); ++x) {
        const bool ok = exact_order_match ? dst_orders[x] == go : go % dst_orders[x] == 0;
        if (ok) cands[i].push_back(x);
      }
    }
    // most-constrained generators first
    std::vector<std::size_t> idx(gens.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return cands[a].size() < cands[b].size(); });
    std::vector<Elem> g2(gens.size());
    std::vector<std::vector<Elem>> c2(gens.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
      g2[i] = gens[idx[i]];
      c2[i] = std::move(cands[idx[i]]);
    }
    gens = std::move(g2);
    cands = std::move(c2);
  }

  // candidates reduced to orbit representatives under conjugation by the
  // subgroup generated by `centralizer` (elements commuting with all images
  // chosen so far); conjugating a homomorphism does not change its kernel.
  std::vector<Elem> orbit_reps(const std::vector<Elem>& candidates,
                               const std::vector<Elem>& centralizer) const {
    if (centralizer.size() <= 1 || candidates.size() <= 1) return candidates;
    std::vector<Elem> cgens;
    {
      std::vector<Elem> reached{dst.identity()};
      for (Elem c : centralizer) {
        if (!std::binary_search(reached.begin(), reached.end(), c)) {
          cgens.push_back(c);
          reached = closure_elements(dst, cgens, budget);
        }
      }
    }
    if (cgens.empty()) return candidates;
    std::vector<std::uint8_t> seen(dst.order(), 0);
    std::vector<Elem> reps;
    for (Elem c0 : candidates) {
      if (seen[c0]) continue;
      reps.push_back(c0);
      std::vector<Elem> orbit{c0};
      seen[c0] = 1;
      for (std::size_t i = 0; i < orbit.size(); ++i)
        for (Elem w : cgens) {
          const Elem y = dst.conjugate(w, orbit[i]);
          if (budget) budget->charge();
          if (!seen[y]) {
            seen[y] = 1;
            orbit.push_back(y);
          }
        }
    }
    return reps;
  }

  bool leaf() {
    if (budget) budget->charge();
    // surjectivity first, it is the cheaper test
    if (closure_elements(dst, images, budget).size() != dst.order()) return false;
    HomClosure full = hom_closure(src, dst, gens, images, budget);
    if (!full.consistent) return false;
    if (full.elements.size() != src.order())
      throw std::logic_error("generator set failed to generate the source");
    if (iso_mode) {
      // surjective + equal orders => bijective
      std::vector<Elem> table(src.order());
      for (std::size_t i = 0; i < full.elements.size(); ++i)
        table[full.elements[i]] = full.images[i];
      witness_table = std::move(table);
      return true;
    }
    std::vector<Elem> ker;
    for (std::size_t i = 0; i < full.elements.size(); ++i)
      if (full.images[i] == dst.identity()) ker.push_back(full.elements[i]);
    std::sort(ker.begin(), ker.end());
    const std::uint64_t h = fnv_hash(ker);
    auto& bucket = kernel_hash[h];
    for (std::size_t idx : bucket)
      if (kernels[idx] == ker) return false;
    bucket.push_back(kernels.size());
    kernels.push_back(std::move(ker));
    return false;
  }

  bool dfs(std::size_t level, const std::vector<Elem>& centralizer) {
    if (level == gens.size()) return leaf();
    for (Elem x : orbit_reps(cands[level], centralizer)) {
      if (budget) budget->charge();
      images.push_back(x);
      const std::span<const Elem> gpre(gens.data(), level + 1);
      const std::span<const Elem> ipre(images.data(), level + 1);
      if (hom_closure(src, dst, gpre, ipre, budget).consistent) {
        std::vector<Elem> next_cent;
        next_cent.reserve(centralizer.size());
        for (Elem c : centralizer)
          if (dst.op(c, x) == dst.op(x, c)) next_cent.push_back(c);
        if (dfs(level + 1, next_cent)) {
          images.pop_back();
          return true;
        }
      }
      images.pop_back();
    }
    return false;
  }

  void run(bool exact_order_match) {
    prepare(exact_order_match);
    std::vector<Elem> full_centralizer(dst.order());
    std::iota(full_centralizer.begin(), full_centralizer.end(), 0);
    dfs(0, full_centralizer);
  }
};

}  // namespace

std::vector<Subgroup> kernels_of_epimorphisms(const FiniteGroup& g, const FiniteGroup& h,
                                              Budget* budget) {
  std::vector<Subgroup> out;
  if (h.order() == 1) {
    out.push_back(Subgroup::whole(g));
    return out;
  }
  if (g.order() % h.order() != 0) return out;  // Lagrange rules out epimorphisms

  if (g.order() > kEpiDirectLimit) {
    auto collapse = coprime_collapse(g, h.order(), budget);
    if (!collapse || collapse->quot.group.order() > kEpiDirectLimit)
      throw BudgetExceeded("epimorphism search: source order " + std::to_string(g.order()) +
                               " exceeds the direct-search limit and no coprime reduction applies",
                           0);
    // every hom G -> H kills the collapsed subgroup, so kernels correspond
    auto inner = kernels_of_epimorphisms(collapse->quot.group, h, budget);
    for (const auto& k : inner) out.push_back(preimage_subgroup(collapse->quot, k));
    return out;
  }

  HomDFS search(g, h, budget);
  search.iso_mode = false;
  search.run(/*exact_order_match=*/false);
  out.reserve(search.kernels.size());
  for (auto& k : search.kernels) out.emplace_back(g, std::move(k), Subgroup::Unchecked{});
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

std::optional<Homomorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                             Budget* budget) {
  if (g.order() != h.order()) return std::nullopt;
  if (g.same_group(h)) {
    std::vector<Elem> id(g.order());
    std::iota(id.begin(), id.end(), 0);
    return Homomorphism(g, h, std::move(id));
  }
  if (g.is_abelian() != h.is_abelian()) return std::nullopt;
  if (g.order() <= kEpiDirectLimit) {
    if (center(g).order() != center(h).order()) return std::nullopt;
    if (derived_subgroup(g, budget).order() != derived_subgroup(h, budget).order())
      return std::nullopt;
    std::map<std::uint64_t, std::uint64_t> prof_g, prof_h;
    for (Elem x = 0; x < g.order(); ++x) ++prof_g[g.element_order(x)];
    for (Elem x = 0; x < h.order(); ++x) ++prof_h[h.element_order(x)];
    if (prof_g != prof_h) return std::nullopt;
  } else {
    throw BudgetExceeded("isomorphism search: order too large for the direct search", 0);
  }
  HomDFS search(g, h, budget);
  search.iso_mode = true;
  search.run(/*exact_order_match=*/true);
  if (!search.witness_table) return std::nullopt;
  return Homomorphism(g, h, std::move(*search.witness_table));
}

bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h, Budget* budget) {
  return find_isomorphism(g, h, budget).has_value();
}

std::vector<FactorDescriptor> composition_factors(const FiniteGroup& g,
                                                  std::uint64_t tie_break_seed, Budget* budget) {
  std::vector<FactorDescriptor> out;
  if (g.order() == 1) return out;
  // candidate minimal normal subgroups: minimal-order single-class closures
  std::vector<Subgroup> minimal;
  std::uint64_t best = g.order() + 1;
  for (const auto& cls : conjugacy_classes(g, budget)) {
    const Elem rep = cls.front();
    if (rep == g.identity()) continue;
    Subgroup n = normal_closure(g, std::span<const Elem>(&rep, 1), budget);
    if (n.order() == g.order()) continue;  // not proper
    if (n.order() < best) {
      best = n.order();
      minimal.clear();
    }
    if (n.order() == best &&
        std::find(minimal.begin(), minimal.end(), n) == minimal.end())
      minimal.push_back(std::move(n));
  }
  if (minimal.empty()) {
    out.push_back(FactorDescriptor{g.order(), g.is_abelian()});
    return out;
  }
  const Subgroup& n = minimal[tie_break_seed % minimal.size()];
  auto left = composition_factors(n.as_group(), tie_break_seed * 2654435761ull + 1, budget);
  auto right =
      composition_factors(quotient(g, n, budget).group, tie_break_seed * 6364136223846793005ull + 3,
                          budget);
  out.insert(out.end(), left.begin(), left.end());
  out.insert(out.end(), right.begin(), right.end());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

Subgroup frattini(const FiniteGroup& g, Budget* budget, std::uint64_t order_limit) {
  std::vector<Subgroup> subs;
  try {
    subs = all_subgroups(g, budget, order_limit);
  } catch (const BudgetExceeded& e) {
    throw BudgetExceeded(std::string(e.what()) +
                             "; for larger groups use frattini_trivial_certificate",
                         e.nodes_used);
  }
  std::vector<const Subgroup*> maximal;
  for (const auto& a : subs) {
    if (a.is_whole()) continue;
    bool is_max = true;
    for (const auto& b : subs) {
      if (b.is_whole() || &a == &b) continue;
      if (b.order() > a.order() && b.contains_subgroup(a)) {
        is_max = false;
        break;
      }
    }
    if (is_max) maximal.push_back(&a);
  }
  if (maximal.empty()) return Subgroup::whole(g);  // trivial group: empty intersection
  std::vector<Elem> inter = maximal.front()->members();
  for (const Subgroup* m : maximal) {
    std::vector<Elem> next;
    std::set_intersection(inter.begin(), inter.end(), m->members().begin(), m->members().end(),
                          std::back_inserter(next));
    inter = std::move(next);
  }
  return Subgroup(g, std::move(inter), Subgroup::Unchecked{});
}

CertificateResult frattini_trivial_certificate(const FiniteGroup& g,
                                               const std::vector<Subgroup>& witnesses,
                                               Budget* budget) {
  if (witnesses.empty()) return {false, "no witnesses supplied"};
  for (const auto& m : witnesses) {
    if (!m.parent().same_group(g)) throw PreconditionError("certificate: wrong parent group");
    if (m.is_whole()) return {false, "witness is not a proper subgroup"};
    // maximality; prime index is maximal outright by Lagrange
    if (!is_prime_u64(m.index())) {
      std::vector<Elem> mgens = m.generating_set();
      for (Elem x = 0; x < g.order(); ++x) {
        if (m.contains(x)) continue;
        std::vector<Elem> gens = mgens;
        gens.push_back(x);
        if (closure_elements(g, gens, budget).size() != g.order())
          return {false, "witness of order " + std::to_string(m.order()) +
                             " is not maximal; <M, g> proper for g = " + g.element_name(x)};
      }
    }
  }
  std::vector<Elem> inter = witnesses.front().members();
  for (const auto& m : witnesses) {
    std::vector<Elem> next;
    std::set_intersection(inter.begin(), inter.end(), m.members().begin(), m.members().end(),
                          std::back_inserter(next));
    inter = std::move(next);
  }
  if (inter.size() != 1)
    return {false, "witness intersection has order " + std::to_string(inter.size())};
  return {true, "all witnesses maximal, intersection trivial"};
}

std::vector<Subgroup> strict_basis(const FiniteGroup& g, const Subgroup& delta, const Subgroup& n,
                                   Budget* budget) {
  if (!is_normal(g, n)) throw PreconditionError("strict_basis: N must be normal");
  auto product_set = [&](const Subgroup& a) {
    std::vector<Elem> prod;
    prod.reserve(a.order() * n.order());
    for (Elem x : a.members())
      for (Elem m : n.members()) {
        prod.push_back(g.op(x, m));
        if (budget) budget->charge();
      }
    std::sort(prod.begin(), prod.end());
    prod.erase(std::unique(prod.begin(), prod.end()), prod.end());
    return prod;
  };
  const std::vector<Elem> target = product_set(delta);
  std::vector<Subgroup> out;
  for (auto& h : all_subgroups(g, budget)) {
    if (product_set(h) == target) out.push_back(std::move(h));
  }
  return out;
}

std::optional<CoprimeCollapse> coprime_collapse(const FiniteGroup& g, std::uint64_t target_order,
                                                Budget* budget) {
  std::vector<Elem> forced;
  for (Elem s : g.generators())
    if (s != g.identity() && std::gcd(g.element_order(s), target_order) == 1) forced.push_back(s);
  if (forced.empty()) return std::nullopt;
  Subgroup n = normal_closure(g, forced, budget);
  QuotientResult q = quotient(g, n, budget);
  return CoprimeCollapse{std::move(n), std::move(q)};
}

Subgroup preimage_subgroup(const QuotientResult& q, const Subgroup& in_quotient) {
  const auto* rep = dynamic_cast<const QuotientRep*>(&q.group.rep());
  if (!rep) throw PreconditionError("preimage_subgroup: not a quotient group");
  const FiniteGroup& parent = rep->parent();
  std::vector<std::uint8_t> keep(q.group.order(), 0);
  for (Elem c : in_quotient.members()) keep[c] = 1;
  std::vector<Elem> members;
  members.reserve(in_quotient.order() * (parent.order() / q.group.order()));
  for (Elem x = 0; x < parent.order(); ++x)
    if (keep[rep->coset_of(x)]) members.push_back(x);
  return Subgroup(parent, std::move(members), Subgroup::Unchecked{});
}

}  // namespace gg
