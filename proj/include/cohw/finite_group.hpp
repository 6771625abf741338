#pragma once
// Finite groups given by multiplication tables, with the constructions the
// cosimplicial layer needs: subgroups, quotients, products, homomorphisms.

#include <memory>
#include <string>
#include <vector>

#include "cohw/exactla.hpp"
#include "cohw/rng.hpp"

namespace cohw {

class GroupError : public MathError {
 public:
  using MathError::MathError;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;
using Perm = std::vector<int>;

// Cycle notation on points 1..n, e.g. "(1 2)(3 4)"; "e" for the identity.
std::string cycle_label(const Perm& p);

/// Elements are 0..order-1 and 0 is always the identity.
class FiniteGroup {
 public:
  // Validates closure, associativity, identity and inverses; reorders so the identity is 0.
  static GroupPtr from_table(std::vector<std::string> labels, const std::vector<std::vector<int>>& table);
  // Closure of permutations of {0..m-1}; (a b)(x) = a(b(x)). Labels are cycle notation.
  static GroupPtr from_permutations(const std::vector<Perm>& generators, size_t points);
  static GroupPtr trivial();

  size_t order() const { return labels_.size(); }
  int mul(int a, int b) const { return table_[static_cast<size_t>(a) * order() + static_cast<size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<size_t>(a)]; }
  int conj(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int power(int a, long k) const;
  int element_order(int a) const;
  const std::string& label(int a) const { return labels_[static_cast<size_t>(a)]; }
  int index_of(const std::string& label) const;  // -1 if absent

  bool is_abelian() const;
  std::vector<int> center() const;
  // Deterministic generating set, built greedily from the element order.
  const std::vector<int>& generators() const { return generators_; }

 private:
  FiniteGroup() = default;
  void finish();

  std::vector<std::string> labels_;
  std::vector<int> table_;
  std::vector<int> inverse_;
  std::vector<int> generators_;
};

// ---- maps -------------------------------------------------------------------

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& map);
// Extends generator images to a homomorphism; empty if the images violate a relation.
std::vector<int> extend_homomorphism(const FiniteGroup& src, const FiniteGroup& tgt,
                                     const std::vector<int>& generator_images);
// All homomorphisms src -> tgt, at most `limit` of them, in a deterministic order.
std::vector<std::vector<int>> homomorphisms(const FiniteGroup& src, const FiniteGroup& tgt, size_t limit);
std::vector<std::vector<int>> automorphisms(const FiniteGroup& g, size_t limit);
std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner);

// ---- subgroups and quotients ------------------------------------------------

// Sorted elements of the subgroup generated by `gens`.
std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens);
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements);
bool is_normal(const FiniteGroup& g, const std::vector<int>& elements);

struct SubgroupData {
  GroupPtr group;
  std::vector<int> embedding;  // subgroup element -> ambient element
};
SubgroupData make_subgroup(const GroupPtr& g, const std::vector<int>& elements);

struct QuotientData {
  GroupPtr group;
  std::vector<int> projection;  // ambient element -> coset
};
QuotientData make_quotient(const GroupPtr& g, const std::vector<int>& normal);

struct ProductData {
  GroupPtr group;  // element (a, b) has index a * |B| + b
  std::vector<int> left_inclusion, right_inclusion, left_projection, right_projection;
};
ProductData direct_product(const GroupPtr& a, const GroupPtr& b);

// Number of double cosets K x H, counted by brute force.
size_t count_double_cosets(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k);
std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b);

// ---- small group library ----------------------------------------------------

GroupPtr cyclic_group(size_t n);
GroupPtr dihedral_group(size_t n);  // order 2n
GroupPtr symmetric_group(size_t n);
GroupPtr alternating_group(size_t n);
GroupPtr quaternion_group();
GroupPtr dicyclic_group(size_t n);  // order 4n
GroupPtr elementary_abelian(size_t p, size_t rank);

struct NamedGroup {
  std::string name;
  GroupPtr group;
};
// Library groups of order at most `max_order`, in a fixed order.
std::vector<NamedGroup> small_groups(size_t max_order);

}  // namespace cohw
