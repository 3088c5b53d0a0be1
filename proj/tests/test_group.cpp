#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "groupgraph/group.hpp"
#include "groupgraph/group_algos.hpp"

using namespace gg;

namespace {

// Independent brute-force oracle: order of an element by repeated products.
std::uint64_t brute_order(const FiniteGroup& g, Elem x) {
  Elem acc = x;
  std::uint64_t n = 1;
  while (acc != g.identity()) {
    acc = g.op(acc, x);
    ++n;
  }
  return n;
}

// 21-element table built directly from the modular-arithmetic formula
// (c1, d1)(c2, d2) = (c1 + 2^d1 c2 mod 7, d1 + d2 mod 3), independent of the
// semidirect-product machinery.
FiniteGroup f21_reference_table() {
  const std::uint64_t r = 7, s = 3;
  auto rank = [&](std::uint64_t c, std::uint64_t d) { return c * s + d; };
  std::vector<std::uint32_t> table(21 * 21);
  auto sigma_pow = [&](std::uint64_t d) {
    std::uint64_t v = 1;
    for (std::uint64_t i = 0; i < d; ++i) v = v * 2 % r;
    return v;
  };
  for (std::uint64_t c1 = 0; c1 < r; ++c1)
    for (std::uint64_t d1 = 0; d1 < s; ++d1)
      for (std::uint64_t c2 = 0; c2 < r; ++c2)
        for (std::uint64_t d2 = 0; d2 < s; ++d2)
          table[rank(c1, d1) * 21 + rank(c2, d2)] =
              static_cast<std::uint32_t>(rank((c1 + sigma_pow(d1) * c2) % r, (d1 + d2) % s));
  return FiniteGroup::dense_table(21, std::move(table));
}

std::vector<std::vector<std::uint32_t>> inversion_action(std::uint64_t n) {
  // C_2 acting on C_n by x -> -x
  std::vector<std::vector<std::uint32_t>> act(2, std::vector<std::uint32_t>(n));
  for (std::uint64_t x = 0; x < n; ++x) {
    act[0][x] = static_cast<std::uint32_t>(x);
    act[1][x] = static_cast<std::uint32_t>((n - x) % n);
  }
  return act;
}

}  // namespace

TEST_CASE("cyclic groups") {
  CHECK_THROWS_AS(FiniteGroup::cyclic(0), PreconditionError);
  auto c1 = FiniteGroup::cyclic(1);
  CHECK(c1.order() == 1);

  auto c13 = FiniteGroup::cyclic(13);
  CHECK(c13.order() == 13);
  for (Elem x = 1; x < 13; ++x) CHECK(brute_order(c13, x) == 13);

  auto c6 = FiniteGroup::cyclic(6);
  CHECK(brute_order(c6, 2) == 3);
  CHECK(brute_order(c6, 3) == 2);
  for (Elem x = 0; x < 6; ++x) CHECK(c6.element_order(x) == brute_order(c6, x));
}

TEST_CASE("direct products") {
  auto c2 = FiniteGroup::cyclic(2);
  auto c3 = FiniteGroup::cyclic(3);
  auto c6 = FiniteGroup::cyclic(6);
  auto p = FiniteGroup::direct_product(c2, c3);
  CHECK(p.order() == 6);
  CHECK(is_isomorphic(p, c6));

  auto g = FiniteGroup::direct_product(FiniteGroup::cyclic(1), c6);
  CHECK(is_isomorphic(g, c6));
}

TEST_CASE("semidirect products") {
  auto c3 = FiniteGroup::cyclic(3);
  auto c2 = FiniteGroup::cyclic(2);

  SUBCASE("trivial action gives the direct product") {
    std::vector<std::vector<std::uint32_t>> trivial(2, {0, 1, 2});
    auto sd = FiniteGroup::semidirect_product(c3, c2, trivial);
    CHECK(is_isomorphic(sd, FiniteGroup::direct_product(c3, c2)));
  }

  SUBCASE("C3 x| C2 with inversion is S3") {
    auto s3 = FiniteGroup::semidirect_product(c3, c2, inversion_action(3));
    CHECK(s3.order() == 6);
    CHECK_FALSE(s3.is_abelian());
    CHECK_FALSE(is_isomorphic(s3, FiniteGroup::cyclic(6)));
    // S3 via an independent route: the dicyclic construction does not apply,
    // so check the order profile: 1, three involutions, two 3-cycles.
    std::map<std::uint64_t, int> profile;
    for (Elem x = 0; x < 6; ++x) ++profile[s3.element_order(x)];
    CHECK(profile[1] == 1);
    CHECK(profile[2] == 3);
    CHECK(profile[3] == 2);
  }

  SUBCASE("C7 x| C3 via x -> x^2 has order 21 and is nonabelian") {
    auto c7 = FiniteGroup::cyclic(7);
    std::vector<std::vector<std::uint32_t>> act(3, std::vector<std::uint32_t>(7));
    for (std::uint64_t x = 0; x < 7; ++x) {
      act[0][x] = static_cast<std::uint32_t>(x);
      act[1][x] = static_cast<std::uint32_t>(2 * x % 7);
      act[2][x] = static_cast<std::uint32_t>(4 * x % 7);
    }
    auto d = FiniteGroup::semidirect_product(c7, c3, act);
    CHECK(d.order() == 21);
    CHECK_FALSE(d.is_abelian());
    CHECK(is_isomorphic(d, f21_reference_table()));
  }

  SUBCASE("non-homomorphic action rejected with witness") {
    // x -> x+1 is a bijection of C3 but not an automorphism
    std::vector<std::vector<std::uint32_t>> bad(2, {0, 1, 2});
    bad[1] = {1, 2, 0};
    CHECK_THROWS_WITH_AS(FiniteGroup::semidirect_product(c3, c2, bad),
                         doctest::Contains("witness"), PreconditionError);
  }
}

TEST_CASE("structured representations agree with flattened dense tables") {
  auto c4 = FiniteGroup::cyclic(4);
  auto c5 = FiniteGroup::cyclic(5);
  auto p = FiniteGroup::direct_product(c4, c5);
  auto s3 = FiniteGroup::semidirect_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2),
                                            inversion_action(3));
  for (const auto& g : {p, s3, FiniteGroup::direct_product(s3, c5)}) {
    auto dense = g.dense_copy();
    REQUIRE(dense.order() == g.order());
    for (Elem a = 0; a < g.order(); ++a)
      for (Elem b = 0; b < g.order(); ++b)
        CHECK(dense.op(a, b) == g.op(a, b));
  }
}

TEST_CASE("subgroup generation and closure checks") {
  auto c6 = FiniteGroup::cyclic(6);
  auto whole = Subgroup::generated(c6, std::vector<Elem>{1});
  CHECK(whole.order() == 6);
  std::vector<Elem> empty;
  CHECK(Subgroup::generated(c6, empty).order() == 1);

  auto sub = Subgroup::generated(c6, std::vector<Elem>{2});
  CHECK(sub.members() == std::vector<Elem>{0, 2, 4});
  CHECK(sub.index() == 2);

  CHECK_THROWS_AS(Subgroup(c6, std::vector<Elem>{0, 2, 3}), PreconditionError);
  CHECK_NOTHROW(Subgroup(c6, std::vector<Elem>{0, 2, 4}));

  // Lagrange across an assortment of generated subgroups
  auto s3 = FiniteGroup::semidirect_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2),
                                            inversion_action(3));
  for (Elem a = 0; a < s3.order(); ++a)
    for (Elem b = 0; b < s3.order(); ++b) {
      auto h = Subgroup::generated(s3, std::vector<Elem>{a, b});
      CHECK(s3.order() % h.order() == 0);
    }
}

TEST_CASE("normality, normal closure, quotients") {
  auto s3 = FiniteGroup::semidirect_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2),
                                            inversion_action(3));
  // the rotation subgroup is normal, a reflection subgroup is not
  Elem rot = 0, refl = 0;
  for (Elem x = 0; x < 6; ++x) {
    if (s3.element_order(x) == 3) rot = x;
    if (s3.element_order(x) == 2) refl = x;
  }
  auto rot_sub = Subgroup::generated(s3, std::vector<Elem>{rot});
  auto refl_sub = Subgroup::generated(s3, std::vector<Elem>{refl});
  CHECK(is_normal(s3, rot_sub));
  CHECK_FALSE(is_normal(s3, refl_sub));

  CHECK(normal_closure(s3, std::vector<Elem>{refl}).order() == 6);
  CHECK(normal_closure(s3, std::vector<Elem>{rot}).order() == 3);
  CHECK(normal_closure(s3, std::vector<Elem>{s3.identity()}).is_trivial());

  auto q = quotient(s3, rot_sub);
  CHECK(q.group.order() == 2);
  CHECK(q.projection.verify_homomorphism());
  CHECK(q.projection.kernel() == rot_sub);
  CHECK_THROWS_AS(quotient(s3, refl_sub), PreconditionError);

  // quotient(G, G) is trivial
  CHECK(quotient(s3, Subgroup::whole(s3)).group.order() == 1);

  // quotient(C6, <2>) iso C2
  auto c6 = FiniteGroup::cyclic(6);
  auto q2 = quotient(c6, Subgroup::generated(c6, std::vector<Elem>{2}));
  CHECK(is_isomorphic(q2.group, FiniteGroup::cyclic(2)));
}

TEST_CASE("first isomorphism theorem on constructed homomorphisms") {
  auto c12 = FiniteGroup::cyclic(12);
  auto c4 = FiniteGroup::cyclic(4);
  std::vector<Elem> gens{1}, images{1};
  auto h = Homomorphism::from_generator_images(c12, c4, gens, images);
  CHECK(h.verify_homomorphism());
  auto q = quotient(c12, h.kernel());
  CHECK(is_isomorphic(q.group, h.image().as_group()));
}

TEST_CASE("enumerate_normal_subgroups") {
  auto c2c2 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(enumerate_normal_subgroups(c2c2, 1).size() == 1);
  CHECK(enumerate_normal_subgroups(c2c2, 2).size() == 4);  // whole + three index-2
  CHECK(enumerate_normal_subgroups(c2c2, 4).size() == 5);

  auto s3 = FiniteGroup::semidirect_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2),
                                            inversion_action(3));
  auto normals = all_normal_subgroups(s3);
  CHECK(normals.size() == 3);  // 1, A3, S3

  // coherence: index bound respected and normality holds
  for (const auto& n : enumerate_normal_subgroups(s3, 6)) {
    CHECK(n.index() <= 6);
    CHECK(is_normal(s3, n));
  }
}

TEST_CASE("kernels_of_epimorphisms basics") {
  auto c4 = FiniteGroup::cyclic(4);
  auto c2 = FiniteGroup::cyclic(2);
  auto kers = kernels_of_epimorphisms(c4, c2);
  REQUIRE(kers.size() == 1);
  CHECK(kers[0].members() == std::vector<Elem>{0, 2});

  CHECK(kernels_of_epimorphisms(c4, FiniteGroup::cyclic(1)).size() == 1);
  CHECK(kernels_of_epimorphisms(c4, FiniteGroup::cyclic(3)).empty());

  // cross-oracle equivalence against the normal-subgroup lattice
  auto s3 = FiniteGroup::semidirect_product(FiniteGroup::cyclic(3), FiniteGroup::cyclic(2),
                                            inversion_action(3));
  std::vector<FiniteGroup> sources{c4, s3, FiniteGroup::direct_product(c2, c2),
                                   FiniteGroup::cyclic(12), FiniteGroup::direct_product(s3, c2)};
  std::vector<FiniteGroup> targets{c2, FiniteGroup::cyclic(3), s3, FiniteGroup::cyclic(4)};
  for (const auto& g : sources)
    for (const auto& h : targets) {
      auto via_search = kernels_of_epimorphisms(g, h);
      std::vector<Subgroup> via_lattice;
      if (g.order() % h.order() == 0)
        for (const auto& n : enumerate_normal_subgroups(g, g.order()))
          if (n.order() == g.order() / h.order() && is_isomorphic(quotient(g, n).group, h))
            via_lattice.push_back(n);
      REQUIRE(via_search.size() == via_lattice.size());
      for (std::size_t i = 0; i < via_search.size(); ++i)
        CHECK(via_search[i] == via_lattice[i]);
    }
}

TEST_CASE("isomorphism testing") {
  auto c6 = FiniteGroup::cyclic(6);
  CHECK(is_isomorphic(c6, FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3))));
  CHECK_FALSE(is_isomorphic(FiniteGroup::cyclic(21), f21_reference_table()));
  auto w = find_isomorphism(c6, c6);
  REQUIRE(w.has_value());
  CHECK(w->verify_homomorphism());
}

TEST_CASE("center") {
  auto c6 = FiniteGroup::cyclic(6);
  CHECK(center(c6).order() == 6);
  CHECK(center(f21_reference_table()).is_trivial());
}

TEST_CASE("composition factors") {
  CHECK(composition_factors(FiniteGroup::cyclic(13)) ==
        std::vector<FactorDescriptor>{{13, true}});
  auto d21 = f21_reference_table();
  CHECK(composition_factors(d21) == std::vector<FactorDescriptor>{{7, true}, {3, true}});
  // invariance under randomized tie-breaking
  auto c2c2c3 = FiniteGroup::direct_product(
      FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2)),
      FiniteGroup::cyclic(3));
  auto expected = composition_factors(c2c2c3, 0);
  for (std::uint64_t seed : {1u, 2u, 3u, 17u, 99u})
    CHECK(composition_factors(c2c2c3, seed) == expected);
}

TEST_CASE("frattini subgroup and certificate") {
  auto c4 = FiniteGroup::cyclic(4);
  CHECK(frattini(c4).members() == std::vector<Elem>{0, 2});
  CHECK(frattini(FiniteGroup::cyclic(7)).is_trivial());
  auto c2c2 = FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
  CHECK(frattini(c2c2).is_trivial());

  SUBCASE("certificate accepts the three order-2 subgroups of C2xC2") {
    std::vector<Subgroup> w;
    for (Elem x = 1; x < 4; ++x) w.push_back(Subgroup::generated(c2c2, std::vector<Elem>{x}));
    CHECK(frattini_trivial_certificate(c2c2, w).ok);
  }
  SUBCASE("certificate rejects a nontrivial intersection") {
    std::vector<Subgroup> w{Subgroup::generated(c4, std::vector<Elem>{2})};
    auto res = frattini_trivial_certificate(c4, w);
    CHECK_FALSE(res.ok);
    CHECK(res.detail.find("intersection") != std::string::npos);
  }
  SUBCASE("certificate rejects a non-maximal witness") {
    auto c8 = FiniteGroup::cyclic(8);
    std::vector<Subgroup> w{Subgroup::generated(c8, std::vector<Elem>{4})};  // order 2, not maximal
    auto res = frattini_trivial_certificate(c8, w);
    CHECK_FALSE(res.ok);
    CHECK(res.detail.find("not maximal") != std::string::npos);
  }
}

TEST_CASE("strict basis sets") {
  auto c4 = FiniteGroup::cyclic(4);
  auto delta = Subgroup::generated(c4, std::vector<Elem>{2});
  SUBCASE("N = G gives all subgroups") {
    CHECK(strict_basis(c4, delta, Subgroup::whole(c4)).size() == all_subgroups(c4).size());
  }
  SUBCASE("N = 1 pins H = Delta") {
    auto v = strict_basis(c4, delta, Subgroup::trivial(c4));
    REQUIRE(v.size() == 1);
    CHECK(v[0] == delta);
  }
  SUBCASE("N = Delta = {0,2}") {
    auto v = strict_basis(c4, delta, delta);
    REQUIRE(v.size() == 2);  // {0} and {0,2}
    CHECK(v[0].order() == 1);
    CHECK(v[1].order() == 2);
  }
}

TEST_CASE("dicyclic construction: Q8") {
  auto q8 = FiniteGroup::dicyclic(2);
  CHECK(q8.order() == 8);
  CHECK_FALSE(q8.is_abelian());
  std::map<std::uint64_t, int> profile;
  for (Elem x = 0; x < 8; ++x) ++profile[q8.element_order(x)];
  CHECK(profile[1] == 1);
  CHECK(profile[2] == 1);  // unique involution
  CHECK(profile[4] == 6);
}

TEST_CASE("coprime collapse reduces epimorphism searches") {
  auto g = FiniteGroup::direct_product(FiniteGroup::cyclic(13), FiniteGroup::cyclic(2));
  auto collapse = coprime_collapse(g, 2);
  REQUIRE(collapse.has_value());
  CHECK(collapse->collapsed.order() == 13);
  CHECK(collapse->quot.group.order() == 2);
  auto lifted = preimage_subgroup(collapse->quot, Subgroup::trivial(collapse->quot.group));
  CHECK(lifted.order() == 13);
}
