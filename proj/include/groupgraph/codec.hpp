#pragma once

// Parameter-group synthesis (the primes s, r, t over a base prime p-hat, the
// groups D = C_r x| C_s, U = C_t, W = U x| (D x D) with their split exact
// sequence), the four graph conditions, and the graph <-> group codec: a
// finite graph embeds as the constrained subgroup
//   G_Gamma = {(d-bar, w-bar) in D^A x W^R : lambda(w_r) = (d_a, d_b)}
// and is recovered from quotient data (kernels of epimorphisms onto D and W).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "groupgraph/budget.hpp"
#include "groupgraph/graph.hpp"
#include "groupgraph/group.hpp"
#include "groupgraph/group_algos.hpp"

namespace gg {

struct GraphParams {
  std::uint64_t p_hat = 0;  // base prime
  std::uint64_t s = 0, r = 0, t = 0;
  std::uint64_t p_r = 0;     // smallest primitive root mod r
  std::uint64_t k = 0;       // (r - 1) / s
  std::uint64_t q_t = 0;     // smallest primitive root mod t
  std::uint64_t m_t = 0;     // q_t^((t-1)/s) mod t, the order-s twist on U
  std::uint64_t sigma = 0;   // p_r^k mod r, the order-s twist on C_r

  FiniteGroup D;   // C_r x| C_s
  FiniteGroup U;   // C_t (standalone)
  FiniteGroup DD;  // D x D
  FiniteGroup W;   // U x| (D x D)

  Homomorphism theta;   // section D x D -> W
  Homomorphism lambda;  // projection W -> D x D
  Subgroup U_in_W;      // ker lambda

  Elem beta = 0, gamma = 0;  // generators of the C_s / C_r parts of D
  Elem u_gen = 0;            // generator of U inside W

  GraphParams(FiniteGroup d, FiniteGroup u, FiniteGroup dd, FiniteGroup w, Homomorphism th,
              Homomorphism la, Subgroup u_in_w)
      : D(std::move(d)), U(std::move(u)), DD(std::move(dd)), W(std::move(w)),
        theta(std::move(th)), lambda(std::move(la)), U_in_W(std::move(u_in_w)) {}
};

using ParamsPtr = std::shared_ptr<const GraphParams>;

/// Smallest primes t > r > s > p_hat with r = 1 (mod s) and t = 1 (mod s),
/// plus the groups built on them. Results are memoised per p_hat.
ParamsPtr choose_parameters(std::uint64_t p_hat);

/// beta^a gamma^b = gamma^(b * p_r^(a k)) beta^a for all 0 <= a < s, 0 <= b < r,
/// computed by the group operation and compared with the modular prediction.
bool relation_identity_check(const GraphParams& params);

/// sum_{i=1..s} p_r^(i k) = 0 (mod r), and independently ord(beta gamma) = s.
bool geometric_sum_check(const GraphParams& params);

enum class Verdict { Pass, Fail, Inconclusive, Skipped };
const char* verdict_name(Verdict v);

struct ConditionReport {
  Verdict g1 = Verdict::Inconclusive;
  Verdict g2 = Verdict::Inconclusive;
  Verdict g3 = Verdict::Inconclusive;
  Verdict g4 = Verdict::Inconclusive;
  std::string g1_detail, g2_detail, g3_detail, g4_detail;
  std::uint64_t g2_bound = 0;
  bool all_pass() const {
    return g1 == Verdict::Pass && g2 == Verdict::Pass && g3 == Verdict::Pass &&
           g4 == Verdict::Pass;
  }
};

/// The four graph conditions on (D, U, W):
///   (G1) no common composition factor of D and U;
///   (G2) every epimorphism D^I ->> D, |I| <= g2_index_bound, has a coordinate
///        kernel;
///   (G3) Phi(D) = Phi(W) = 1, by maximal-witness certificate or exact lattice;
///   (G4) no semidirect complement of U in W lets either D-factor centralise a
///        nontrivial normal subgroup of U. Complements are enumerated as
///        W-conjugates of theta(D x D) (Schur-Zassenhaus).
/// Budget overruns mark the affected condition INCONCLUSIVE, never PASS.
ConditionReport verify_graph_conditions(const GraphParams& params, std::uint64_t g2_index_bound,
                                        Budget* budget = nullptr);

/// (G1) for arbitrary candidate groups: no common composition factor.
bool g1_no_common_factors(const FiniteGroup& d, const FiniteGroup& u,
                          std::string* detail = nullptr, Budget* budget = nullptr);
/// (G2) for an arbitrary candidate group at one specific exponent |I|.
bool g2_coordinate_kernels(const FiniteGroup& d, std::uint64_t power, Budget* budget = nullptr);

/// The constrained subgroup of D^A x W^R encoding a graph. Elements are ranked
/// through the section bijection D^A x U^R -> G_Gamma, so the group never
/// flattens; the operation works coordinatewise.
class GammaRep final : public GroupRep {
 public:
  GammaRep(ParamsPtr params, Graph graph);

  std::uint64_t order() const override { return order_; }
  Elem identity() const override { return 0; }
  Elem op(Elem a, Elem b) const override;
  Elem inverse(Elem a) const override;
  const char* kind() const override { return "constrained-subgroup-of-product"; }
  std::string element_name(Elem a) const override;
  std::vector<Elem> natural_generators() const override;

  std::size_t vertex_count() const { return nv_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges() const { return edges_; }
  const GraphParams& params() const { return *params_; }

  void unpack(Elem rank, std::vector<Elem>& d_parts, std::vector<Elem>& u_parts) const;
  Elem pack(const std::vector<Elem>& d_parts, const std::vector<Elem>& u_parts) const;
  /// W-coordinate of an edge for a given element.
  Elem w_coordinate(Elem rank, std::size_t edge) const;
  Elem d_coordinate(Elem rank, std::size_t vertex) const;
  /// Membership test on an explicit tuple of D^A x W^R coordinates.
  bool tuple_in_group(const std::vector<Elem>& d_parts, const std::vector<Elem>& w_parts) const;

 private:
  ParamsPtr params_;
  Graph graph_;
  std::size_t nv_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges_;  // canonical orientation a < b
  std::uint64_t order_ = 1;
};

struct EncodedGroup {
  ParamsPtr params;
  Graph graph;
  FiniteGroup group;    // backed by GammaRep
  FiniteGroup d_power;  // D^A (nested direct product)

  const GammaRep& gamma_rep() const;
  Homomorphism pi_A() const;                 // group -> D^A
  Homomorphism pi_a(std::size_t vertex) const;  // group -> D
  Homomorphism pi_r(std::size_t edge) const;    // group -> W
  /// The section D^A -> group, d-bar |-> (d-bar, theta(d_a, d_b)_r).
  Elem section(Elem d_power_rank) const;
};

/// Encode a nonempty graph; undirected edges take the canonical orientation
/// (lexicographically smaller vertex first).
EncodedGroup encode_graph(const Graph& graph, ParamsPtr params);

/// Recover a graph from quotient data of G: vertices are kernels of
/// epimorphisms onto D (named k0, k1, ... in canonical order), and (N1, N2) is
/// an edge iff N1 N2 = G and some normal M <= N1 cap N2 has G/M iso W.
Graph decode_graph(const FiniteGroup& g, ParamsPtr params, Budget* budget = nullptr);

/// decode_graph together with the vertex kernels (parallel to the vertices).
struct DecodedGraph {
  Graph graph;
  std::vector<Subgroup> kernels;
};
DecodedGraph decode_graph_with_kernels(const FiniteGroup& g, ParamsPtr params,
                                       Budget* budget = nullptr);

/// Verify 1 -> U^R -> G_Gamma -> D^A -> 1 is split exact: the kernel of pi_A
/// is exactly the embedded U^R, pi_A is onto, and the section is a verified
/// homomorphism. Intended for |A| <= 2.
bool split_check(const EncodedGroup& enc, Budget* budget = nullptr);

/// Every homomorphism from H (a group whose order only involves primes
/// <= p_hat) to D and to W is trivial. Exhaustive generator-image search.
bool p_obstruction_check(const FiniteGroup& h, const GraphParams& params, Budget* budget = nullptr);

// --- shared small number theory ---------------------------------------------
bool is_prime(std::uint64_t n);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t smallest_primitive_root(std::uint64_t prime);

}  // namespace gg
