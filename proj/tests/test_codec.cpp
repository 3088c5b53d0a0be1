#include "doctest.h"

#include <algorithm>
#include <numeric>

#include "groupgraph/codec.hpp"

using namespace gg;

namespace {

// Independent sieve oracle for the parameter primes: linear scan with trial
// division, plus a direct primitive-root search by order computation.
struct SieveOracle {
  std::uint64_t s, r, t, p_r;
};

SieveOracle sieve_oracle(std::uint64_t p_hat) {
  auto prime = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d < n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  SieveOracle o{};
  for (o.s = p_hat + 1; !prime(o.s); ++o.s) {}
  for (o.r = o.s + 1; !(prime(o.r) && o.r % o.s == 1); ++o.r) {}
  for (o.t = o.r + 1; !(prime(o.t) && o.t % o.s == 1); ++o.t) {}
  for (o.p_r = 1;; ++o.p_r) {
    // multiplicative order of p_r mod r must be r-1
    std::uint64_t acc = o.p_r % o.r, ord = 1;
    while (acc != 1) {
      acc = acc * o.p_r % o.r;
      ++ord;
    }
    if (ord == o.r - 1) break;
  }
  return o;
}

}  // namespace

TEST_CASE("parameter synthesis for p-hat = 2 and 3") {
  auto o2 = sieve_oracle(2);
  CHECK(o2.s == 3);
  CHECK(o2.r == 7);
  CHECK(o2.t == 13);
  CHECK(o2.p_r == 3);

  auto p2 = choose_parameters(2);
  CHECK(p2->s == o2.s);
  CHECK(p2->r == o2.r);
  CHECK(p2->t == o2.t);
  CHECK(p2->p_r == o2.p_r);
  CHECK(p2->k == 2);
  CHECK(p2->D.order() == 21);
  CHECK(p2->U.order() == 13);
  CHECK(p2->W.order() == 5733);

  auto o3 = sieve_oracle(3);
  auto p3 = choose_parameters(3);
  CHECK(p3->s == 5);
  CHECK(p3->r == 11);
  CHECK(p3->t == 31);
  CHECK(p3->s == o3.s);
  CHECK(p3->r == o3.r);
  CHECK(p3->t == o3.t);
  CHECK(p3->p_r == o3.p_r);

  CHECK_THROWS_AS(choose_parameters(4), InputError);

  // lambda . theta = id, forced by the split construction
  for (Elem d2 = 0; d2 < p2->DD.order(); ++d2) CHECK(p2->lambda(p2->theta(d2)) == d2);
}

TEST_CASE("construction identities") {
  for (std::uint64_t p_hat : {2ull, 3ull}) {
    auto p = choose_parameters(p_hat);
    CAPTURE(p_hat);
    CHECK(relation_identity_check(*p));
    CHECK(geometric_sum_check(*p));
  }
  auto p2 = choose_parameters(2);
  // beta gamma = gamma^2 beta since 3^2 = 2 (mod 7)
  CHECK(p2->D.op(p2->beta, p2->gamma) == p2->D.op(p2->D.power(p2->gamma, 2), p2->beta));
  // 3^2 + 3^4 + 3^6 = 819 = 117 * 7
  CHECK((powmod(3, 2, 1000000) + powmod(3, 4, 1000000) + powmod(3, 6, 1000000)) == 819);
}

TEST_CASE("D facts from the parameter groups") {
  auto p = choose_parameters(2);
  const auto& D = p->D;
  CHECK(D.element_order(p->gamma) == 7);
  CHECK(D.element_order(p->beta) == 3);
  CHECK(D.element_order(D.op(p->beta, p->gamma)) == 3);
  CHECK(Subgroup::generated(D, std::vector<Elem>{p->beta}).order() == 3);
  CHECK(Subgroup::generated(D, std::vector<Elem>{D.op(p->beta, p->gamma)}).order() == 3);
  CHECK(Subgroup::generated(D, std::vector<Elem>{p->beta, p->gamma}).order() == 21);
  CHECK(center(D).is_trivial());
  CHECK_FALSE(is_normal(D, Subgroup::generated(D, std::vector<Elem>{p->beta})));
  auto gamma_closure = normal_closure(D, std::vector<Elem>{p->gamma});
  CHECK(gamma_closure.order() == 7);
  CHECK(normal_closure(D, std::vector<Elem>{p->beta}).order() == 21);
  CHECK(composition_factors(D) == std::vector<FactorDescriptor>{{7, true}, {3, true}});
  // normal subgroups of D: 1, <gamma>, D
  CHECK(enumerate_normal_subgroups(D, 21).size() == 3);
  // in W: the U generator has order t
  CHECK(p->W.element_order(p->u_gen) == 13);
  CHECK(is_normal(p->W, p->U_in_W));
  CHECK(is_isomorphic(quotient(p->W, p->U_in_W).group, p->DD));
  CHECK(center(p->W).is_trivial());
  CHECK(composition_factors(p->W) ==
        std::vector<FactorDescriptor>{{13, true}, {7, true}, {7, true}, {3, true}, {3, true}});
}

TEST_CASE("kernels of epimorphisms DxD ->> D are the coordinate kernels") {
  auto p = choose_parameters(2);
  auto kers = kernels_of_epimorphisms(p->DD, p->D);
  REQUIRE(kers.size() == 2);
  const std::uint64_t dsz = p->D.order();
  std::vector<Elem> ker_pi1, ker_pi2;  // kill first / second coordinate
  for (Elem y = 0; y < dsz; ++y) ker_pi1.push_back(p->D.identity() * dsz + y);
  for (Elem x = 0; x < dsz; ++x) ker_pi2.push_back(x * dsz + p->D.identity());
  std::sort(ker_pi1.begin(), ker_pi1.end());
  std::sort(ker_pi2.begin(), ker_pi2.end());
  CHECK(((kers[0].members() == ker_pi1 && kers[1].members() == ker_pi2) ||
         (kers[0].members() == ker_pi2 && kers[1].members() == ker_pi1)));
}

TEST_CASE("graph conditions") {
  auto p = choose_parameters(2);
  SUBCASE("all four hold for the synthesized parameters") {
    auto rep = verify_graph_conditions(*p, 2);
    CHECK(rep.g1 == Verdict::Pass);
    CHECK(rep.g2 == Verdict::Pass);
    CHECK(rep.g3 == Verdict::Pass);
    CHECK(rep.g4 == Verdict::Pass);
    CHECK(rep.all_pass());
  }
  SUBCASE("G1 fails on a shared composition factor") {
    std::string detail;
    CHECK_FALSE(g1_no_common_factors(FiniteGroup::cyclic(7), FiniteGroup::cyclic(7), &detail));
    CHECK(detail.find("shared factor 7") != std::string::npos);
  }
  SUBCASE("G2 fails for an abelian candidate at |I| = 2") {
    CHECK(g2_coordinate_kernels(FiniteGroup::cyclic(6), 1));
    CHECK_FALSE(g2_coordinate_kernels(FiniteGroup::cyclic(6), 2));
  }
  SUBCASE("G2 bound 0 is reported SKIPPED") {
    auto rep = verify_graph_conditions(*p, 0);
    CHECK(rep.g2 == Verdict::Skipped);
    CHECK_FALSE(rep.all_pass());
  }
}

TEST_CASE("exhaustive maximality agrees with the prime-index shortcut on D") {
  // <beta> has prime index r = 7 in D; verify maximality the long way too
  auto p = choose_parameters(2);
  auto sub = Subgroup::generated(p->D, std::vector<Elem>{p->beta});
  for (Elem g = 0; g < p->D.order(); ++g) {
    if (sub.contains(g)) continue;
    std::vector<Elem> gens{p->beta, g};
    CHECK(closure_elements(p->D, gens).size() == p->D.order());
  }
}

TEST_CASE("encoding graphs") {
  auto p = choose_parameters(2);
  SUBCASE("single vertex encodes to D") {
    auto enc = encode_graph(Graph::edgeless(1), p);
    CHECK(enc.group.order() == 21);
    CHECK(is_isomorphic(enc.group, p->D));
  }
  SUBCASE("K2 encodes to a group of order 5733 isomorphic to W") {
    auto enc = encode_graph(Graph::complete(2), p);
    CHECK(enc.group.order() == 5733);
    CHECK(is_isomorphic(enc.group, p->W));
  }
  SUBCASE("two isolated vertices encode to D x D") {
    auto enc = encode_graph(Graph::edgeless(2), p);
    CHECK(enc.group.order() == 441);
    CHECK(is_isomorphic(enc.group, p->DD));
  }
  SUBCASE("empty graph rejected") {
    CHECK_THROWS_AS(encode_graph(Graph{}, p), PreconditionError);
  }
  SUBCASE("order law: formula versus generated closure") {
    for (const Graph& g : {Graph::edgeless(1), Graph::edgeless(2), Graph::complete(2)}) {
      auto enc = encode_graph(g, p);
      CHECK(closure_elements(enc.group, enc.group.generators()).size() == enc.group.order());
    }
  }
}

TEST_CASE("split exact sequence checks") {
  auto p = choose_parameters(2);
  CHECK(split_check(encode_graph(Graph::edgeless(1), p)));
  CHECK(split_check(encode_graph(Graph::edgeless(2), p)));
  CHECK(split_check(encode_graph(Graph::complete(2), p)));
}

TEST_CASE("decode oracles on the parameter groups") {
  auto p = choose_parameters(2);
  SUBCASE("decode(D) is a single vertex") {
    Graph g = decode_graph(p->D, p);
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("decode(DxD) is two isolated vertices") {
    Graph g = decode_graph(p->DD, p);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 0);
  }
  SUBCASE("decode(W) is K2") {
    Graph g = decode_graph(p->W, p);
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
  }
}

TEST_CASE("round-trip on graphs with at most two vertices") {
  auto p = choose_parameters(2);
  for (const Graph& g : {Graph::edgeless(1), Graph::edgeless(2), Graph::complete(2)}) {
    auto enc = encode_graph(g, p);
    Graph back = decode_graph(enc.group, p);
    CHECK(graphs_isomorphic(g, back));
  }
}

TEST_CASE("p-obstruction: 2-groups admit only trivial maps into D and W") {
  auto p = choose_parameters(2);
  CHECK(p_obstruction_check(FiniteGroup::cyclic(1), *p));
  CHECK(p_obstruction_check(FiniteGroup::cyclic(2), *p));
  CHECK(p_obstruction_check(
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)), *p));
  CHECK_THROWS_AS(p_obstruction_check(FiniteGroup::cyclic(3), *p), PreconditionError);
}
