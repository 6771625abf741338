#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cohw/finite_group.hpp"

using namespace cohw;

TEST(FiniteGroup, TableValidation) {
  EXPECT_THROW(FiniteGroup::from_table({}, {}), GroupError);
  // Z/3 listed with the identity last.
  auto g = FiniteGroup::from_table({"a", "b", "e"}, {{1, 2, 0}, {2, 0, 1}, {0, 1, 2}});
  EXPECT_EQ(g->label(0), "e");
  EXPECT_EQ(g->order(), 3u);
  EXPECT_EQ(g->element_order(1), 3);
  // Latin square that is not associative (loop of order 5).
  std::vector<std::vector<int>> loop{{0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
  EXPECT_THROW(FiniteGroup::from_table({"e", "a", "b", "c", "d"}, loop), GroupError);
  EXPECT_THROW(FiniteGroup::from_table({"e", "a"}, {{0, 1}, {1, 1}}), GroupError);
}

TEST(FiniteGroup, LibraryOrdersAndAxioms) {
  for (const auto& ng : small_groups(48)) {
    const auto& g = *ng.group;
    EXPECT_EQ(generated_subgroup(g, g.generators()).size(), g.order()) << ng.name;
    for (size_t a = 0; a < g.order(); ++a) {
      EXPECT_EQ(g.mul(static_cast<int>(a), g.inv(static_cast<int>(a))), 0) << ng.name;
      EXPECT_EQ(g.mul(0, static_cast<int>(a)), static_cast<int>(a));
    }
  }
  EXPECT_EQ(symmetric_group(4)->order(), 24u);
  EXPECT_EQ(alternating_group(4)->order(), 12u);
  EXPECT_EQ(dihedral_group(5)->order(), 10u);
  EXPECT_EQ(dicyclic_group(3)->order(), 12u);
  EXPECT_FALSE(quaternion_group()->is_abelian());
  EXPECT_EQ(quaternion_group()->center().size(), 2u);
  EXPECT_EQ(symmetric_group(3)->center().size(), 1u);
  // Q8 has a unique element of order 2; D4 has five.
  auto count_involutions = [](const FiniteGroup& g) {
    int c = 0;
    for (size_t a = 1; a < g.order(); ++a) c += g.element_order(static_cast<int>(a)) == 2;
    return c;
  };
  EXPECT_EQ(count_involutions(*quaternion_group()), 1);
  EXPECT_EQ(count_involutions(*dihedral_group(4)), 5);
}

TEST(FiniteGroup, HomomorphismCounts) {
  // |Hom(C_m, C_n)| = gcd(m, n); |Aut(S3)| = 6; |Aut(C2^2)| = 6; |Aut(Q8)| = 24.
  EXPECT_EQ(homomorphisms(*cyclic_group(4), *cyclic_group(6), 100).size(), 2u);
  EXPECT_EQ(homomorphisms(*cyclic_group(6), *cyclic_group(9), 100).size(), 3u);
  EXPECT_EQ(automorphisms(*symmetric_group(3), 100).size(), 6u);
  EXPECT_EQ(automorphisms(*elementary_abelian(2, 2), 100).size(), 6u);
  EXPECT_EQ(automorphisms(*quaternion_group(), 100).size(), 24u);
  // |Hom(S3, C2)| = 2, |Hom(C2, S3)| = 4.
  EXPECT_EQ(homomorphisms(*symmetric_group(3), *cyclic_group(2), 100).size(), 2u);
  EXPECT_EQ(homomorphisms(*cyclic_group(2), *symmetric_group(3), 100).size(), 4u);
  for (const auto& m : homomorphisms(*symmetric_group(4), *symmetric_group(3), 100))
    EXPECT_TRUE(is_homomorphism(*symmetric_group(4), *symmetric_group(3), m));
}

TEST(FiniteGroup, SubgroupsQuotientsProducts) {
  auto s4 = symmetric_group(4);
  // The subgroup of squares generates A4.
  std::vector<int> squares;
  for (size_t x = 0; x < s4->order(); ++x) squares.push_back(s4->mul(static_cast<int>(x), static_cast<int>(x)));
  auto sq = generated_subgroup(*s4, squares);
  EXPECT_EQ(sq.size(), 12u);
  EXPECT_TRUE(is_normal(*s4, sq));
  auto q = make_quotient(s4, sq);
  EXPECT_EQ(q.group->order(), 2u);
  EXPECT_TRUE(is_homomorphism(*s4, *q.group, q.projection));
  auto sub = make_subgroup(s4, sq);
  EXPECT_EQ(sub.group->order(), 12u);
  EXPECT_TRUE(is_homomorphism(*sub.group, *s4, sub.embedding));
  bool some_non_normal = false;
  for (size_t x = 1; x < s4->order(); ++x) some_non_normal |= !is_normal(*s4, generated_subgroup(*s4, {static_cast<int>(x)}));
  EXPECT_TRUE(some_non_normal);

  auto p = direct_product(cyclic_group(2), symmetric_group(3));
  EXPECT_EQ(p.group->order(), 12u);
  EXPECT_TRUE(is_homomorphism(*cyclic_group(2), *p.group, p.left_inclusion));
  EXPECT_TRUE(is_homomorphism(*p.group, *symmetric_group(3), p.right_projection));
  EXPECT_EQ(p.group->center().size(), 2u);
}

TEST(FiniteGroup, DoubleCosetsMatchOrbitCounting) {
  auto s3 = symmetric_group(3);
  // Two distinct subgroups of order 2 in S3 give 2 double cosets.
  std::vector<std::vector<int>> order_two;
  for (size_t x = 1; x < s3->order(); ++x)
    if (s3->element_order(static_cast<int>(x)) == 2) order_two.push_back(generated_subgroup(*s3, {static_cast<int>(x)}));
  ASSERT_EQ(order_two.size(), 3u);
  EXPECT_EQ(count_double_cosets(*s3, order_two[0], order_two[1]), 2u);
  EXPECT_EQ(count_double_cosets(*s3, order_two[0], order_two[0]), 2u);
  std::vector<int> all(6);
  for (int i = 0; i < 6; ++i) all[static_cast<size_t>(i)] = i;
  EXPECT_EQ(count_double_cosets(*s3, all, all), 1u);
  EXPECT_EQ(count_double_cosets(*s3, {0}, {0}), 6u);
  // Burnside-style check: sum over double cosets of |KxH| equals |G|.
  auto d4 = dihedral_group(4);
  for (size_t a = 0; a < d4->order(); ++a)
    for (size_t b = 0; b < d4->order(); ++b) {
      auto h = generated_subgroup(*d4, {static_cast<int>(a)});
      auto k = generated_subgroup(*d4, {static_cast<int>(b)});
      std::set<std::set<int>> cosets;
      for (size_t x = 0; x < d4->order(); ++x) {
        std::set<int> c;
        for (int u : k)
          for (int v : h) c.insert(d4->mul(d4->mul(u, static_cast<int>(x)), v));
        cosets.insert(c);
      }
      EXPECT_EQ(count_double_cosets(*d4, h, k), cosets.size());
    }
}

TEST(FiniteGroup, ExtendHomomorphismRejectsBadImages) {
  auto c4 = cyclic_group(4);
  auto c2 = cyclic_group(2);
  ASSERT_EQ(c4->generators().size(), 1u);
  // Generator of C4 sent to an element of order 4 in C4 is fine; into C2 only order <= 2 works.
  EXPECT_FALSE(extend_homomorphism(*c4, *c2, {1}).empty());
  auto c3 = cyclic_group(3);
  EXPECT_TRUE(extend_homomorphism(*c4, *c3, {1}).empty());
}
