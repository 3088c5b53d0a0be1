#pragma once

// Explicit finite groups: a value-semantics handle over an immutable
// representation. Small groups carry a dense multiplication table; products,
// semidirect products, quotients and constrained subgroups of products stay
// structured and compute the operation componentwise, so groups of ~2*10^7
// elements remain usable without ever materialising a table.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "groupgraph/budget.hpp"

namespace gg {

/// Element of a group, encoded as its rank in [0, order).
using Elem = std::uint64_t;

/// Order above which operation tables are no longer materialised.
inline constexpr std::uint64_t kDenseTableLimit = 1024;

class GroupRep {
 public:
  virtual ~GroupRep() = default;
  virtual std::uint64_t order() const = 0;
  virtual Elem identity() const = 0;
  virtual Elem op(Elem a, Elem b) const = 0;
  virtual Elem inverse(Elem a) const = 0;
  virtual const char* kind() const = 0;
  virtual std::string element_name(Elem a) const;
  /// Generators supplied by the construction itself, if any.
  virtual std::vector<Elem> natural_generators() const { return {}; }
};

class FiniteGroup {
 public:
  explicit FiniteGroup(std::shared_ptr<const GroupRep> rep);

  std::uint64_t order() const { return order_; }
  Elem identity() const { return identity_; }

  Elem op(Elem a, Elem b) const {
    const auto* t = cache_->dense_table.get();
    return t ? (*t)[a * order_ + b] : rep_->op(a, b);
  }
  Elem inverse(Elem a) const;
  Elem conjugate(Elem g, Elem x) const;  // g x g^-1
  Elem commutator(Elem a, Elem b) const; // a b a^-1 b^-1
  Elem power(Elem a, std::uint64_t e) const;

  /// Least n >= 1 with a^n = 1. Asserts the Lagrange divisibility n | order.
  std::uint64_t element_order(Elem a) const;

  std::string element_name(Elem a) const { return rep_->element_name(a); }
  const char* kind() const { return rep_->kind(); }
  const GroupRep& rep() const { return *rep_; }
  std::shared_ptr<const GroupRep> rep_ptr() const { return rep_; }

  /// Two handles referring to the same underlying representation object.
  bool same_group(const FiniteGroup& other) const { return rep_ == other.rep_; }

  /// Generating set: taken from the representation when it supplies one,
  /// otherwise found greedily (repeatedly adding the element that extends the
  /// generated subgroup the most). Cached. Guaranteed to generate.
  const std::vector<Elem>& generators() const;

  /// True iff the generators pairwise commute (hence the group is abelian).
  bool is_abelian() const;

  /// Flatten to a dense-table group. Permitted only up to `limit` elements.
  FiniteGroup dense_copy(std::uint64_t limit = kDenseTableLimit) const;

  // --- constructors -------------------------------------------------------

  static FiniteGroup cyclic(std::uint64_t n);
  static FiniteGroup dense_table(std::uint64_t n, std::vector<std::uint32_t> table);
  static FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h);
  /// N  x|  H with the given action table: action[h] is the permutation of N
  /// induced by h. Verified to be a homomorphism H -> Aut(N); rejected with a
  /// witness pair otherwise.
  static FiniteGroup semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                                        const std::vector<std::vector<std::uint32_t>>& action);
  /// Dicyclic group of order 4n: <a, b | a^{2n} = 1, b^2 = a^n, b a b^-1 = a^-1>.
  static FiniteGroup dicyclic(std::uint64_t n);

 private:
  struct Cache {
    std::unique_ptr<std::vector<std::uint32_t>> dense_table;
    std::vector<std::uint32_t> inverse_table;
    std::vector<Elem> generators;
    std::optional<bool> abelian;
    std::once_flag gens_once, inv_once;
  };

  std::shared_ptr<const GroupRep> rep_;
  std::shared_ptr<Cache> cache_;
  std::uint64_t order_ = 0;
  Elem identity_ = 0;
};

/// Subgroup of a fixed parent group, stored as a sorted member list.
/// Construction via `generated` guarantees closure; the checked constructor
/// verifies closure under product and inverse.
class Subgroup {
 public:
  Subgroup(FiniteGroup parent, std::vector<Elem> sorted_members);

  static Subgroup generated(const FiniteGroup& g, std::span<const Elem> gens,
                            Budget* budget = nullptr);
  static Subgroup trivial(const FiniteGroup& g);
  static Subgroup whole(const FiniteGroup& g);

  const FiniteGroup& parent() const { return parent_; }
  const std::vector<Elem>& members() const { return members_; }
  std::uint64_t order() const { return members_.size(); }
  std::uint64_t index() const;
  bool contains(Elem x) const;
  bool contains_subgroup(const Subgroup& other) const;
  bool is_whole() const { return members_.size() == parent_.order(); }
  bool is_trivial() const { return members_.size() == 1; }

  /// Small generating set of this subgroup, found by closure.
  std::vector<Elem> generating_set() const;

  /// This subgroup as a group in its own right (elements re-ranked 0..k-1).
  FiniteGroup as_group() const;

  bool operator==(const Subgroup& other) const;

  struct Unchecked {};
  Subgroup(FiniteGroup parent, std::vector<Elem> sorted_members, Unchecked)
      : parent_(std::move(parent)), members_(std::move(sorted_members)) {}

 private:
  FiniteGroup parent_;
  std::vector<Elem> members_;  // sorted
};

/// Group homomorphism, total on the source. Backed either by a full table or
/// by a callable (used for projections out of large structured groups).
class Homomorphism {
 public:
  Homomorphism(FiniteGroup src, FiniteGroup dst, std::vector<Elem> table);
  Homomorphism(FiniteGroup src, FiniteGroup dst, std::function<Elem(Elem)> fn);

  Elem operator()(Elem x) const { return table_.empty() ? fn_(x) : table_[x]; }
  const FiniteGroup& source() const { return src_; }
  const FiniteGroup& target() const { return dst_; }

  /// Extend generator images to a total homomorphism by closure; throws
  /// PreconditionError if the images are inconsistent.
  static Homomorphism from_generator_images(const FiniteGroup& src, const FiniteGroup& dst,
                                            std::span<const Elem> gens,
                                            std::span<const Elem> images,
                                            Budget* budget = nullptr);

  /// Exhaustive check of h(xy) = h(x)h(y); source order capped by `limit`.
  bool verify_homomorphism(std::uint64_t limit = 1u << 14) const;

  Subgroup kernel() const;
  Subgroup image() const;
  bool is_surjective() const;

 private:
  FiniteGroup src_, dst_;
  std::vector<Elem> table_;
  std::function<Elem(Elem)> fn_;
};

// --- structured representations needed across modules -----------------------

/// Quotient G/N. Elements are cosets, ranked in BFS-discovery order starting
/// from N itself; `coset_of` maps every parent element to its coset rank.
class QuotientRep final : public GroupRep {
 public:
  QuotientRep(FiniteGroup parent, std::vector<Elem> coset_reps,
              std::shared_ptr<const std::vector<std::uint32_t>> coset_of);

  std::uint64_t order() const override { return reps_.size(); }
  Elem identity() const override { return 0; }
  Elem op(Elem a, Elem b) const override {
    return (*coset_of_)[parent_.op(reps_[a], reps_[b])];
  }
  Elem inverse(Elem a) const override { return (*coset_of_)[parent_.inverse(reps_[a])]; }
  const char* kind() const override { return "quotient"; }
  std::string element_name(Elem a) const override;
  std::vector<Elem> natural_generators() const override;

  const FiniteGroup& parent() const { return parent_; }
  Elem coset_rep(Elem a) const { return reps_[a]; }
  Elem coset_of(Elem parent_elem) const { return (*coset_of_)[parent_elem]; }
  std::shared_ptr<const std::vector<std::uint32_t>> coset_table() const { return coset_of_; }

 private:
  FiniteGroup parent_;
  std::vector<Elem> reps_;
  std::shared_ptr<const std::vector<std::uint32_t>> coset_of_;
};

/// A subgroup re-ranked as a standalone group.
class SubgroupRep final : public GroupRep {
 public:
  SubgroupRep(FiniteGroup parent, std::vector<Elem> members,
              std::vector<Elem> generators_in_parent = {});

  std::uint64_t order() const override { return members_.size(); }
  Elem identity() const override { return identity_; }
  Elem op(Elem a, Elem b) const override { return rank_of(parent_.op(members_[a], members_[b])); }
  Elem inverse(Elem a) const override { return rank_of(parent_.inverse(members_[a])); }
  const char* kind() const override { return "subgroup"; }
  std::string element_name(Elem a) const override { return parent_.element_name(members_[a]); }
  std::vector<Elem> natural_generators() const override;

  Elem parent_elem(Elem a) const { return members_[a]; }
  Elem rank_of(Elem parent_elem) const;
  const FiniteGroup& parent() const { return parent_; }

 private:
  FiniteGroup parent_;
  std::vector<Elem> members_;  // sorted
  std::vector<Elem> gens_;     // parent ranks; may be empty
  Elem identity_ = 0;
};

/// Quotient G/N together with its projection. The projection is table-free:
/// it maps parent elements through the shared coset table.
struct QuotientResult {
  FiniteGroup group;
  Homomorphism projection;
};

}  // namespace gg
