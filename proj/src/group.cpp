#include "groupgraph/group.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "groupgraph/group_algos.hpp"

namespace gg {

std::string GroupRep::element_name(Elem a) const { return std::to_string(a); }

namespace {

class CyclicRep final : public GroupRep {
 public:
  explicit CyclicRep(std::uint64_t n) : n_(n) {}
  std::uint64_t order() const override { return n_; }
  Elem identity() const override { return 0; }
  Elem op(Elem a, Elem b) const override { return (a + b) % n_; }
  Elem inverse(Elem a) const override { return a == 0 ? 0 : n_ - a; }
  const char* kind() const override { return "cyclic"; }
  std::vector<Elem> natural_generators() const override {
    return n_ > 1 ? std::vector<Elem>{1} : std::vector<Elem>{};
  }

 private:
  std::uint64_t n_;
};

class DenseTableRep final : public GroupRep {
 public:
  DenseTableRep(std::uint64_t n, std::vector<std::uint32_t> table)
      : n_(n), table_(std::move(table)) {
    if (n_ == 0 || table_.size() != n_ * n_)
      throw InputError("dense table: size must be order^2 and order >= 1");
    for (std::uint32_t v : table_)
      if (v >= n_) throw InputError("dense table: entry out of range");
    // identity: two-sided
    bool found = false;
    for (Elem e = 0; e < n_ && !found; ++e) {
      bool ok = true;
      for (Elem x = 0; x < n_ && ok; ++x)
        ok = at(e, x) == x && at(x, e) == x;
      if (ok) { identity_ = e; found = true; }
    }
    if (!found) throw InputError("dense table: no identity element");
    // rows and columns are permutations (unique solvability => unique inverses)
    std::vector<bool> seen(n_);
    for (Elem a = 0; a < n_; ++a) {
      std::fill(seen.begin(), seen.end(), false);
      for (Elem b = 0; b < n_; ++b) {
        if (seen[at(a, b)]) throw InputError("dense table: row is not a permutation");
        seen[at(a, b)] = true;
      }
      std::fill(seen.begin(), seen.end(), false);
      for (Elem b = 0; b < n_; ++b) {
        if (seen[at(b, a)]) throw InputError("dense table: column is not a permutation");
        seen[at(b, a)] = true;
      }
    }
    verify_associativity();
    inverse_.resize(n_);
    for (Elem a = 0; a < n_; ++a)
      for (Elem b = 0; b < n_; ++b)
        if (at(a, b) == identity_) { inverse_[a] = static_cast<std::uint32_t>(b); break; }
  }

  std::uint64_t order() const override { return n_; }
  Elem identity() const override { return identity_; }
  Elem op(Elem a, Elem b) const override { return at(a, b); }
  Elem inverse(Elem a) const override { return inverse_[a]; }
  const char* kind() const override { return "dense-table"; }

 private:
  Elem at(Elem a, Elem b) const { return table_[a * n_ + b]; }

  void verify_associativity() const {
    if (n_ <= 256) {
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
          for (Elem c = 0; c < n_; ++c)
            if (at(at(a, b), c) != at(a, at(b, c)))
              throw InputError("dense table: operation is not associative");
      return;
    }
    // Light's associativity test against a generating set of the closure.
    std::vector<Elem> gens;
    std::vector<bool> reached(n_, false);
    reached[identity_] = true;
    std::uint64_t count = 1;
    for (Elem x = 0; x < n_ && count < n_; ++x) {
      if (reached[x]) continue;
      gens.push_back(x);
      std::vector<Elem> frontier;
      for (Elem y = 0; y < n_; ++y)
        if (reached[y]) frontier.push_back(y);
      while (!frontier.empty()) {
        Elem y = frontier.back();
        frontier.pop_back();
        for (Elem g : gens) {
          for (Elem z : {at(y, g), at(g, y)})
            if (!reached[z]) { reached[z] = true; ++count; frontier.push_back(z); }
        }
      }
    }
    for (Elem g : gens)
      for (Elem a = 0; a < n_; ++a)
        for (Elem b = 0; b < n_; ++b)
          if (at(at(a, g), b) != at(a, at(g, b)))
            throw InputError("dense table: operation is not associative");
  }

  std::uint64_t n_;
  std::vector<std::uint32_t> table_;
  std::vector<std::uint32_t> inverse_;
  Elem identity_ = 0;
};

class DirectProductRep final : public GroupRep {
 public:
  DirectProductRep(FiniteGroup g, FiniteGroup h) : g_(std::move(g)), h_(std::move(h)) {
    order_ = g_.order() * h_.order();
  }
  std::uint64_t order() const override { return order_; }
  Elem identity() const override { return g_.identity() * h_.order() + h_.identity(); }
  Elem op(Elem a, Elem b) const override {
    const std::uint64_t m = h_.order();
    return g_.op(a / m, b / m) * m + h_.op(a % m, b % m);
  }
  Elem inverse(Elem a) const override {
    const std::uint64_t m = h_.order();
    return g_.inverse(a / m) * m + h_.inverse(a % m);
  }
  const char* kind() const override { return "direct-product"; }
  std::string element_name(Elem a) const override {
    const std::uint64_t m = h_.order();
    return "(" + g_.element_name(a / m) + "," + h_.element_name(a % m) + ")";
  }
  std::vector<Elem> natural_generators() const override {
    const std::uint64_t m = h_.order();
    std::vector<Elem> out;
    for (Elem x : g_.generators()) out.push_back(x * m + h_.identity());
    for (Elem y : h_.generators()) out.push_back(g_.identity() * m + y);
    return out;
  }
  const FiniteGroup& left() const { return g_; }
  const FiniteGroup& right() const { return h_; }

 private:
  FiniteGroup g_, h_;
  std::uint64_t order_;
};

class SemidirectRep final : public GroupRep {
 public:
  SemidirectRep(FiniteGroup n, FiniteGroup h, std::vector<std::vector<std::uint32_t>> action)
      : n_(std::move(n)), h_(std::move(h)), action_(std::move(action)) {
    order_ = n_.order() * h_.order();
    verify_action();
  }
  std::uint64_t order() const override { return order_; }
  Elem identity() const override { return n_.identity() * h_.order() + h_.identity(); }
  Elem op(Elem a, Elem b) const override {
    const std::uint64_t m = h_.order();
    const Elem n1 = a / m, h1 = a % m, n2 = b / m, h2 = b % m;
    return n_.op(n1, action_[h1][n2]) * m + h_.op(h1, h2);
  }
  Elem inverse(Elem a) const override {
    const std::uint64_t m = h_.order();
    const Elem n1 = a / m, h1 = a % m;
    const Elem hi = h_.inverse(h1);
    return static_cast<Elem>(action_[hi][n_.inverse(n1)]) * m + hi;
  }
  const char* kind() const override { return "semidirect-product"; }
  std::string element_name(Elem a) const override {
    const std::uint64_t m = h_.order();
    return "(" + n_.element_name(a / m) + ";" + h_.element_name(a % m) + ")";
  }
  std::vector<Elem> natural_generators() const override {
    const std::uint64_t m = h_.order();
    std::vector<Elem> out;
    for (Elem x : n_.generators()) out.push_back(x * m + h_.identity());
    for (Elem y : h_.generators()) out.push_back(n_.identity() * m + y);
    return out;
  }
  const FiniteGroup& normal_part() const { return n_; }
  const FiniteGroup& acting_part() const { return h_; }
  const std::vector<std::vector<std::uint32_t>>& action() const { return action_; }

 private:
  void verify_action() const {
    const std::uint64_t nn = n_.order(), nh = h_.order();
    if (action_.size() != nh)
      throw PreconditionError("semidirect: action table must have one row per acting element");
    std::vector<bool> seen(nn);
    for (Elem h = 0; h < nh; ++h) {
      if (action_[h].size() != nn)
        throw PreconditionError("semidirect: action row has wrong length");
      std::fill(seen.begin(), seen.end(), false);
      for (std::uint32_t v : action_[h]) {
        if (v >= nn || seen[v])
          throw PreconditionError("semidirect: action of h=" + std::to_string(h) +
                                  " is not a permutation of N");
        seen[v] = true;
      }
      // each action_[h] must respect the product of N
      for (Elem x = 0; x < nn; ++x)
        for (Elem y = 0; y < nn; ++y)
          if (action_[h][n_.op(x, y)] != n_.op(action_[h][x], action_[h][y]))
            throw PreconditionError(
                "semidirect: action of h=" + std::to_string(h) +
                " is not an automorphism; witness pair (" + std::to_string(x) + "," +
                std::to_string(y) + ")");
    }
    for (Elem x = 0; x < nn; ++x)
      if (action_[h_.identity()][x] != x)
        throw PreconditionError("semidirect: identity must act trivially");
    // Action is a homomorphism H -> Aut(N). Consistency on (generator, h)
    // pairs extends to all products, so generators of H suffice on the left.
    for (Elem g : h_.generators())
      for (Elem h2 = 0; h2 < nh; ++h2) {
        const auto& a1 = action_[g];
        const auto& a2 = action_[h2];
        const auto& a12 = action_[h_.op(g, h2)];
        for (Elem x = 0; x < nn; ++x)
          if (a12[x] != a1[a2[x]])
            throw PreconditionError("semidirect: action is not a homomorphism; witness pair (" +
                                    std::to_string(g) + "," + std::to_string(h2) + ")");
      }
  }

  FiniteGroup n_, h_;
  std::vector<std::vector<std::uint32_t>> action_;
  std::uint64_t order_;
};

}  // namespace

FiniteGroup::FiniteGroup(std::shared_ptr<const GroupRep> rep)
    : rep_(std::move(rep)), cache_(std::make_shared<Cache>()) {
  order_ = rep_->order();
  identity_ = rep_->identity();
  if (order_ <= kDenseTableLimit && std::string(rep_->kind()) != "dense-table") {
    auto table = std::make_unique<std::vector<std::uint32_t>>(order_ * order_);
    for (Elem a = 0; a < order_; ++a)
      for (Elem b = 0; b < order_; ++b)
        (*table)[a * order_ + b] = static_cast<std::uint32_t>(rep_->op(a, b));
    cache_->dense_table = std::move(table);
  }
  if (order_ <= kDenseTableLimit) {
    cache_->inverse_table.resize(order_);
    for (Elem a = 0; a < order_; ++a)
      cache_->inverse_table[a] = static_cast<std::uint32_t>(rep_->inverse(a));
  }
}

Elem FiniteGroup::inverse(Elem a) const {
  if (!cache_->inverse_table.empty()) return cache_->inverse_table[a];
  return rep_->inverse(a);
}

Elem FiniteGroup::conjugate(Elem g, Elem x) const { return op(op(g, x), inverse(g)); }

Elem FiniteGroup::commutator(Elem a, Elem b) const {
  return op(op(a, b), op(inverse(a), inverse(b)));
}

Elem FiniteGroup::power(Elem a, std::uint64_t e) const {
  Elem acc = identity_, base = a;
  while (e) {
    if (e & 1) acc = op(acc, base);
    base = op(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint64_t FiniteGroup::element_order(Elem a) const {
  std::uint64_t n = 1;
  Elem x = a;
  while (x != identity_) {
    x = op(x, a);
    ++n;
    if (n > order_) throw std::logic_error("element order exceeds group order");
  }
  if (order_ % n != 0) throw std::logic_error("element order violates Lagrange");
  return n;
}

const std::vector<Elem>& FiniteGroup::generators() const {
  std::call_once(cache_->gens_once, [this] {
    std::vector<Elem> gens = rep_->natural_generators();
    if (!gens.empty()) {
      if (closure_elements(*this, gens).size() != order_)
        throw std::logic_error("natural generators do not generate");
      cache_->generators = std::move(gens);
      return;
    }
    // Greedy: extend by the element whose addition grows the closure the most.
    std::vector<Elem> current;
    std::uint64_t reached = 1;
    while (reached < order_) {
      Elem best = 0;
      std::uint64_t best_size = 0;
      for (Elem x = 0; x < order_; ++x) {
        std::vector<Elem> trial = current;
        trial.push_back(x);
        const std::uint64_t sz = closure_elements(*this, trial).size();
        if (sz > best_size) { best_size = sz; best = x; }
        if (sz == order_) break;
      }
      current.push_back(best);
      reached = best_size;
    }
    if (current.empty()) current.push_back(identity_);
    cache_->generators = std::move(current);
  });
  return cache_->generators;
}

bool FiniteGroup::is_abelian() const {
  if (!cache_->abelian.has_value()) {
    bool ab = true;
    const auto& gens = generators();
    for (std::size_t i = 0; i < gens.size() && ab; ++i)
      for (std::size_t j = i + 1; j < gens.size() && ab; ++j)
        ab = op(gens[i], gens[j]) == op(gens[j], gens[i]);
    cache_->abelian = ab;
  }
  return *cache_->abelian;
}

FiniteGroup FiniteGroup::dense_copy(std::uint64_t limit) const {
  if (order_ > limit)
    throw PreconditionError("dense_copy: group order exceeds flattening limit");
  std::vector<std::uint32_t> table(order_ * order_);
  for (Elem a = 0; a < order_; ++a)
    for (Elem b = 0; b < order_; ++b)
      table[a * order_ + b] = static_cast<std::uint32_t>(op(a, b));
  return dense_table(order_, std::move(table));
}

FiniteGroup FiniteGroup::cyclic(std::uint64_t n) {
  if (n == 0) throw PreconditionError("cyclic: order must be positive");
  return FiniteGroup(std::make_shared<CyclicRep>(n));
}

FiniteGroup FiniteGroup::dense_table(std::uint64_t n, std::vector<std::uint32_t> table) {
  return FiniteGroup(std::make_shared<DenseTableRep>(n, std::move(table)));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  return FiniteGroup(std::make_shared<DirectProductRep>(g, h));
}

FiniteGroup FiniteGroup::semidirect_product(const FiniteGroup& n, const FiniteGroup& h,
                                            const std::vector<std::vector<std::uint32_t>>& action) {
  return FiniteGroup(std::make_shared<SemidirectRep>(n, h, action));
}

FiniteGroup FiniteGroup::dicyclic(std::uint64_t n) {
  if (n < 1) throw PreconditionError("dicyclic: parameter must be >= 1");
  const std::uint64_t m = 2 * n, sz = 4 * n;
  // element a^i b^j  <->  rank i + m*j
  auto mul = [&](std::uint64_t x, std::uint64_t y) {
    const std::uint64_t i1 = x % m, j1 = x / m, i2 = y % m, j2 = y / m;
    std::uint64_t i = j1 ? (i1 + m - i2) % m : (i1 + i2) % m;
    std::uint64_t j = j1 + j2;
    if (j == 2) { i = (i + n) % m; j = 0; }
    return i + m * j;
  };
  std::vector<std::uint32_t> table(sz * sz);
  for (std::uint64_t a = 0; a < sz; ++a)
    for (std::uint64_t b = 0; b < sz; ++b)
      table[a * sz + b] = static_cast<std::uint32_t>(mul(a, b));
  return dense_table(sz, std::move(table));
}

// --- Subgroup ---------------------------------------------------------------

Subgroup::Subgroup(FiniteGroup parent, std::vector<Elem> sorted_members)
    : parent_(std::move(parent)), members_(std::move(sorted_members)) {
  if (members_.empty()) throw PreconditionError("subgroup: member list is empty");
  if (!std::is_sorted(members_.begin(), members_.end()) ||
      std::adjacent_find(members_.begin(), members_.end()) != members_.end())
    throw PreconditionError("subgroup: member list must be sorted and duplicate-free");
  if (!contains(parent_.identity()))
    throw PreconditionError("subgroup: member list lacks the identity");
  // Closure check: grow a generated subgroup inside the member list until it
  // covers the whole list; any escape means the list is not closed.
  std::vector<Elem> gens;
  std::vector<Elem> reached{parent_.identity()};
  while (reached.size() < members_.size()) {
    Elem fresh = parent_.identity();
    bool found = false;
    for (Elem m : members_) {
      if (!std::binary_search(reached.begin(), reached.end(), m)) { fresh = m; found = true; break; }
    }
    if (!found) break;
    gens.push_back(fresh);
    reached = closure_elements(parent_, gens);
    for (Elem r : reached)
      if (!contains(r))
        throw PreconditionError("subgroup: member list is not closed under the operation");
  }
  if (reached.size() != members_.size())
    throw PreconditionError("subgroup: member list is not closed");
}

Subgroup Subgroup::generated(const FiniteGroup& g, std::span<const Elem> gens, Budget* budget) {
  return Subgroup(g, closure_elements(g, gens, budget), Unchecked{});
}

Subgroup Subgroup::trivial(const FiniteGroup& g) {
  return Subgroup(g, {g.identity()}, Unchecked{});
}

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  for (std::uint64_t i = 0; i < g.order(); ++i) all[i] = i;
  return Subgroup(g, std::move(all), Unchecked{});
}

std::uint64_t Subgroup::index() const {
  if (parent_.order() % order() != 0)
    throw std::logic_error("Lagrange violation: subgroup order does not divide group order");
  return parent_.order() / order();
}

bool Subgroup::contains(Elem x) const {
  return std::binary_search(members_.begin(), members_.end(), x);
}

bool Subgroup::contains_subgroup(const Subgroup& other) const {
  for (Elem x : other.members_)
    if (!contains(x)) return false;
  return true;
}

std::vector<Elem> Subgroup::generating_set() const {
  std::vector<Elem> gens;
  std::vector<Elem> reached{parent_.identity()};
  while (reached.size() < members_.size()) {
    Elem fresh = 0;
    bool found = false;
    for (Elem m : members_)
      if (!std::binary_search(reached.begin(), reached.end(), m)) { fresh = m; found = true; break; }
    if (!found) break;
    gens.push_back(fresh);
    reached = closure_elements(parent_, gens);
  }
  if (gens.empty()) gens.push_back(parent_.identity());
  return gens;
}

FiniteGroup Subgroup::as_group() const {
  return FiniteGroup(std::make_shared<SubgroupRep>(parent_, members_, generating_set()));
}

bool Subgroup::operator==(const Subgroup& other) const {
  return parent_.same_group(other.parent_) && members_ == other.members_;
}

// --- Homomorphism -------------------------------------------------------------

Homomorphism::Homomorphism(FiniteGroup src, FiniteGroup dst, std::vector<Elem> table)
    : src_(std::move(src)), dst_(std::move(dst)), table_(std::move(table)) {
  if (table_.size() != src_.order())
    throw PreconditionError("homomorphism: table must cover the whole source");
}

Homomorphism::Homomorphism(FiniteGroup src, FiniteGroup dst, std::function<Elem(Elem)> fn)
    : src_(std::move(src)), dst_(std::move(dst)), fn_(std::move(fn)) {}

Homomorphism Homomorphism::from_generator_images(const FiniteGroup& src, const FiniteGroup& dst,
                                                 std::span<const Elem> gens,
                                                 std::span<const Elem> images, Budget* budget) {
  if (gens.size() != images.size())
    throw PreconditionError("from_generator_images: generator/image count mismatch");
  if (src.order() > (1u << 22))
    throw PreconditionError("from_generator_images: source too large for a full table");
  auto res = hom_closure(src, dst, gens, images, budget);
  if (!res.consistent)
    throw PreconditionError("from_generator_images: images do not extend to a homomorphism");
  if (res.elements.size() != src.order())
    throw PreconditionError("from_generator_images: generators do not generate the source");
  std::vector<Elem> table(src.order());
  for (std::size_t i = 0; i < res.elements.size(); ++i) table[res.elements[i]] = res.images[i];
  return Homomorphism(src, dst, std::move(table));
}

bool Homomorphism::verify_homomorphism(std::uint64_t limit) const {
  if (src_.order() > limit)
    throw PreconditionError("verify_homomorphism: source too large for the exhaustive sweep");
  for (Elem x = 0; x < src_.order(); ++x)
    for (Elem y = 0; y < src_.order(); ++y)
      if ((*this)(src_.op(x, y)) != dst_.op((*this)(x), (*this)(y))) return false;
  return true;
}

Subgroup Homomorphism::kernel() const {
  std::vector<Elem> members;
  for (Elem x = 0; x < src_.order(); ++x)
    if ((*this)(x) == dst_.identity()) members.push_back(x);
  return Subgroup(src_, std::move(members), Subgroup::Unchecked{});
}

Subgroup Homomorphism::image() const {
  std::vector<bool> hit(dst_.order(), false);
  for (Elem x = 0; x < src_.order(); ++x) hit[(*this)(x)] = true;
  std::vector<Elem> members;
  for (Elem y = 0; y < dst_.order(); ++y)
    if (hit[y]) members.push_back(y);
  return Subgroup(dst_, std::move(members), Subgroup::Unchecked{});
}

bool Homomorphism::is_surjective() const { return image().order() == dst_.order(); }

// --- QuotientRep / SubgroupRep -----------------------------------------------

QuotientRep::QuotientRep(FiniteGroup parent, std::vector<Elem> coset_reps,
                         std::shared_ptr<const std::vector<std::uint32_t>> coset_of)
    : parent_(std::move(parent)), reps_(std::move(coset_reps)), coset_of_(std::move(coset_of)) {}

std::string QuotientRep::element_name(Elem a) const {
  return parent_.element_name(reps_[a]) + "N";
}

std::vector<Elem> QuotientRep::natural_generators() const {
  std::vector<Elem> out;
  for (Elem g : parent_.generators()) {
    Elem img = (*coset_of_)[g];
    if (img != 0 && std::find(out.begin(), out.end(), img) == out.end()) out.push_back(img);
  }
  if (out.empty() && reps_.size() > 1) out.push_back(1);
  return out;
}

SubgroupRep::SubgroupRep(FiniteGroup parent, std::vector<Elem> members,
                         std::vector<Elem> generators_in_parent)
    : parent_(std::move(parent)), members_(std::move(members)),
      gens_(std::move(generators_in_parent)) {
  identity_ = rank_of(parent_.identity());
}

std::vector<Elem> SubgroupRep::natural_generators() const {
  std::vector<Elem> out;
  for (Elem g : gens_)
    if (g != parent_.identity()) out.push_back(rank_of(g));
  return out;
}

Elem SubgroupRep::rank_of(Elem parent_elem) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), parent_elem);
  if (it == members_.end() || *it != parent_elem)
    throw std::logic_error("subgroup rep: product escaped the member list");
  return static_cast<Elem>(it - members_.begin());
}

}  // namespace gg
