#pragma once

// Subgroup/quotient/homomorphism algorithms over explicit finite groups:
// closures, normal-subgroup enumeration, epimorphism kernel searches,
// isomorphism testing, Frattini subgroups, composition factors.
//
// Every potentially exponential search takes an optional Budget and fails
// loudly (BudgetExceeded) instead of truncating silently.

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupgraph/budget.hpp"
#include "groupgraph/group.hpp"

namespace gg {

/// Elements of the subgroup generated by `gens`, sorted ascending.
std::vector<Elem> closure_elements(const FiniteGroup& g, std::span<const Elem> gens,
                                   Budget* budget = nullptr);

/// Partial-map closure used by all homomorphism searches: extends
/// gens[i] -> images[i] multiplicatively over <gens>. `consistent` is false
/// iff some element of <gens> would receive two different images.
struct HomClosure {
  bool consistent = true;
  std::vector<Elem> elements;  // of <gens> in discovery order (iff consistent)
  std::vector<Elem> images;    // parallel to elements
};
HomClosure hom_closure(const FiniteGroup& g, const FiniteGroup& h, std::span<const Elem> gens,
                       std::span<const Elem> images, Budget* budget = nullptr);

Subgroup subgroup_generated(const FiniteGroup& g, std::span<const Elem> seed,
                            Budget* budget = nullptr);

/// Smallest normal subgroup containing `seed`.
Subgroup normal_closure(const FiniteGroup& g, std::span<const Elem> seed,
                        Budget* budget = nullptr);

bool is_normal(const FiniteGroup& g, const Subgroup& h);

/// G/N with its projection; rejects non-normal N.
QuotientResult quotient(const FiniteGroup& g, const Subgroup& n, Budget* budget = nullptr);

Subgroup center(const FiniteGroup& g);

/// Derived subgroup [G, G].
Subgroup derived_subgroup(const FiniteGroup& g, Budget* budget = nullptr);

std::vector<std::vector<Elem>> conjugacy_classes(const FiniteGroup& g, Budget* budget = nullptr);

/// Every normal subgroup of G (the full normal lattice, built from
/// single-element normal closures and joins). Sorted by (order, members).
std::vector<Subgroup> all_normal_subgroups(const FiniteGroup& g, Budget* budget = nullptr);

/// All normal N with [G : N] <= max_index, each exactly once.
std::vector<Subgroup> enumerate_normal_subgroups(const FiniteGroup& g, std::uint64_t max_index,
                                                 Budget* budget = nullptr);

/// The full subgroup lattice; practical only for small orders.
std::vector<Subgroup> all_subgroups(const FiniteGroup& g, Budget* budget = nullptr,
                                    std::uint64_t order_limit = 500);

/// {ker f : f surjective G -> H} = {N normal : G/N iso H}, found by a
/// depth-first generator-image search with order-divisibility filtering,
/// conjugation symmetry reduction and partial-closure pruning. Sources too
/// large for the direct search are first reduced modulo the normal closure of
/// generators whose order is coprime to |H| (such generators map to 1 under
/// any homomorphism to H).
std::vector<Subgroup> kernels_of_epimorphisms(const FiniteGroup& g, const FiniteGroup& h,
                                              Budget* budget = nullptr);

std::optional<Homomorphism> find_isomorphism(const FiniteGroup& g, const FiniteGroup& h,
                                             Budget* budget = nullptr);
bool is_isomorphic(const FiniteGroup& g, const FiniteGroup& h, Budget* budget = nullptr);

struct FactorDescriptor {
  std::uint64_t order = 0;
  bool abelian = true;
  auto operator<=>(const FactorDescriptor&) const = default;
};

/// Jordan-Hoelder factor multiset, sorted descending by order. Solvable
/// factors appear as primes (order p, abelian); nonabelian simple factors are
/// reported by order. `tie_break_seed` shuffles the choice among minimal
/// normal subgroups; the result must not depend on it.
std::vector<FactorDescriptor> composition_factors(const FiniteGroup& g,
                                                  std::uint64_t tie_break_seed = 0,
                                                  Budget* budget = nullptr);

/// Exact Frattini subgroup via the full subgroup lattice (small orders only;
/// use frattini_trivial_certificate beyond the lattice budget).
Subgroup frattini(const FiniteGroup& g, Budget* budget = nullptr,
                  std::uint64_t order_limit = 500);

struct CertificateResult {
  bool ok = false;
  std::string detail;
};

/// Sound one-sided certificate for Phi(G) = 1: verifies every witness is a
/// proper maximal subgroup (for each outside g, <M, g> = G; subgroups of prime
/// index are accepted by Lagrange) and that the witnesses intersect trivially.
CertificateResult frattini_trivial_certificate(const FiniteGroup& g,
                                               const std::vector<Subgroup>& witnesses,
                                               Budget* budget = nullptr);

/// Strict-topology basis set v(Delta, N) = {H : HN = Delta N}, N normal.
std::vector<Subgroup> strict_basis(const FiniteGroup& g, const Subgroup& delta, const Subgroup& n,
                                   Budget* budget = nullptr);

/// Reduction of epimorphism searches out of a large group: the quotient by
/// the normal closure of all generators whose order is coprime to the target
/// order (they are forced into every kernel).
struct CoprimeCollapse {
  Subgroup collapsed;    // the forced normal subgroup
  QuotientResult quot;   // G / collapsed with projection
};
std::optional<CoprimeCollapse> coprime_collapse(const FiniteGroup& g, std::uint64_t target_order,
                                                Budget* budget = nullptr);

/// Preimage of a subgroup of a QuotientRep-backed quotient group.
Subgroup preimage_subgroup(const QuotientResult& q, const Subgroup& in_quotient);

}  // namespace gg
