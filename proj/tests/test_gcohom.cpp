#include <gtest/gtest.h>

#include <functional>
#include <numeric>

#include "cohw/gcohom.hpp"

using namespace cohw;

namespace {

// Crossed homomorphisms enumerated from the definition, and their classes under
// c ~ (g -> u^-1 c(g) g(u)).
struct Brute {
  std::vector<int> fixed;
  std::vector<FElem> cocycles;
  size_t classes = 0;
  std::vector<size_t> class_of;
};

Brute brute_force(const FiniteGroupAction& a) {
  const auto& g = *a.group;
  const auto& u = *a.target;
  Brute b;
  for (size_t x = 0; x < u.order(); ++x) {
    bool ok = true;
    for (size_t h = 0; h < g.order(); ++h) ok = ok && a.act[h][x] == static_cast<int>(x);
    if (ok) b.fixed.push_back(static_cast<int>(x));
  }
  FElem c(g.order(), 0);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == c.size()) {
      for (size_t x = 0; x < g.order(); ++x)
        for (size_t y = 0; y < g.order(); ++y)
          if (c[static_cast<size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)))] != u.mul(c[x], a.act[x][static_cast<size_t>(c[y])])) return;
      b.cocycles.push_back(c);
      return;
    }
    for (size_t v = 0; v < u.order(); ++v) {
      c[pos] = static_cast<int>(v);
      rec(pos + 1);
    }
  };
  rec(0);
  b.class_of.assign(b.cocycles.size(), SIZE_MAX);
  for (size_t i = 0; i < b.cocycles.size(); ++i) {
    if (b.class_of[i] != SIZE_MAX) continue;
    for (size_t w = 0; w < u.order(); ++w) {
      FElem d(g.order());
      for (size_t x = 0; x < g.order(); ++x) d[x] = u.mul(u.mul(u.inv(static_cast<int>(w)), b.cocycles[i][x]), a.act[x][w]);
      size_t j = static_cast<size_t>(std::find(b.cocycles.begin(), b.cocycles.end(), d) - b.cocycles.begin());
      b.class_of[j] = b.classes;
    }
    ++b.classes;
  }
  return b;
}

FiniteGroupAction inversion_action(const GroupPtr& g, const GroupPtr& u) {
  std::vector<int> inv(u->order());
  for (size_t x = 0; x < u->order(); ++x) inv[x] = u->inv(static_cast<int>(x));
  return make_action(g, u, std::vector<std::vector<int>>(g->generators().size(), inv));
}

GroupPtr random_group(Rng& rng, size_t max_order) {
  static const auto lib = small_groups(64);
  std::vector<GroupPtr> ok;
  for (const auto& n : lib)
    if (n.group->order() <= max_order) ok.push_back(n.group);
  return ok[rng.index(ok.size())];
}

QMat diag(std::vector<long> v) {
  QMat m(v.size(), v.size());
  for (size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}

}  // namespace

TEST(GroupAction, ValidatesRelations) {
  auto c4 = cyclic_group(4), c3 = cyclic_group(3);
  auto autos = automorphisms(*c3, 10);
  ASSERT_EQ(autos.size(), 2u);
  // Inversion on C3 is an order-two automorphism, fine for C4's generator.
  EXPECT_NO_THROW(make_action(c4, c3, {autos[1]}));
  // C3 acting on C4 by inversion violates g^3 = 1.
  std::vector<int> inv4(4);
  for (int x = 0; x < 4; ++x) inv4[static_cast<size_t>(x)] = c4->inv(x);
  EXPECT_THROW(make_action(c3, c4, {inv4}), GroupActionError);
  EXPECT_THROW(make_action(c3, c4, {{0, 0, 0, 0}}), GroupActionError);
  EXPECT_THROW(make_action(cyclic_group(2), heisenberg(), {diag({2, 1, 1})}), GroupActionError);
  EXPECT_NO_THROW(make_action(cyclic_group(2), heisenberg(), {diag({-1, -1, 1})}));
}

TEST(Cochains, TrivialGroupGivesConstantObject) {
  auto s3 = symmetric_group(3);
  FiniteCosimplicial c = cochain_cosimplicial(trivial_action(FiniteGroup::trivial(), s3), 3);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(c.obj[static_cast<size_t>(n)].factors.size(), 1u);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i <= n; ++i) EXPECT_EQ(c.coface(n, i), FiniteCarrier::identity(c.obj[0]));
  auto h = h0_h1(trivial_action(FiniteGroup::trivial(), s3));
  EXPECT_EQ(h.fixed.size(), 6u);
  EXPECT_EQ(h.h1.classes(), 1u);
}

TEST(Cochains, SmallExamples) {
  auto c2 = cyclic_group(2), c3 = cyclic_group(3);
  FiniteGroupAction inv = inversion_action(c2, c3);
  FiniteCosimplicial c = cochain_cosimplicial(inv, 2);
  EXPECT_EQ(c.obj[1].factors.size(), 2u);
  EXPECT_EQ(c.obj[1].factors[0]->order(), 3u);
  EXPECT_EQ(c.obj[2].factors.size(), 4u);
  auto h = h0_h1(inv);
  EXPECT_EQ(h.fixed, std::vector<int>{0});
  EXPECT_EQ(h.h1.classes(), 1u);
  auto t = h0_h1(trivial_action(c2, c2));
  EXPECT_EQ(t.h1.classes(), 2u);
  EXPECT_EQ(t.h1.cocycles.size(), 2u);
  EXPECT_THROW(cochain_cosimplicial(trivial_action(cyclic_group(12), c2), 5, 1000), CapExceeded);
}

TEST(Cochains, AgreeWithCrossedHomomorphismEnumeration) {
  Rng rng(51);
  for (int it = 0; it < 40; ++it) {
    GroupPtr g = random_group(rng, 6), u = random_group(rng, 8);
    FiniteGroupAction a = random_action(rng, g, u);
    Brute b = brute_force(a);
    auto h = h0_h1(a);
    ASSERT_EQ(h.fixed, b.fixed);
    ASSERT_EQ(h.h1.cocycles.size(), b.cocycles.size());
    ASSERT_EQ(h.h1.classes(), b.classes);
    for (size_t i = 0; i < b.cocycles.size(); ++i)
      for (size_t j = 0; j < b.cocycles.size(); ++j)
        ASSERT_EQ(b.class_of[i] == b.class_of[j], h.h1.class_of[h.h1.index_of(b.cocycles[i])] == h.h1.class_of[h.h1.index_of(b.cocycles[j])]);
  }
}

TEST(SerreTwist, ExamplesAndRandomInstances) {
  auto c2 = cyclic_group(2), c3 = cyclic_group(3);
  FiniteGroupAction inv = inversion_action(c2, c3);
  EXPECT_EQ(serre_twist(inv, {0, 0}).act, inv.act);
  // Z/2 on Z/3: every cocycle is a coboundary, so twisting keeps one class.
  auto h = h0_h1(inv);
  size_t twisted_with = 0;
  for (const auto& alpha : h.h1.cocycles) {
    if (alpha == FElem{0, 0}) continue;
    ++twisted_with;
    EXPECT_EQ(h0_h1(serre_twist(inv, alpha)).h1.classes(), h.h1.classes());
  }
  EXPECT_GT(twisted_with, 0u);
  EXPECT_THROW(serre_twist(inv, {1, 0}), GroupActionError);

  Rng rng(52);
  for (int it = 0; it < 15; ++it) {
    FiniteGroupAction a = random_action(rng, random_group(rng, 6), random_group(rng, 8));
    for (const auto& alpha : h0_h1(a).h1.cocycles) {
      SerreTwistReport r = serre_twist_check(a, alpha);
      ASSERT_TRUE(r.matches_twisted_object);
      ASSERT_TRUE(r.bijection.ok) << r.bijection.failure;
    }
  }
}

TEST(InflationRestriction, ExamplesAndRandomTriples) {
  auto c4 = cyclic_group(4), c3 = cyclic_group(3);
  FiniteGroupAction a = inversion_action(c4, c3);
  auto i2 = generated_subgroup(*c4, {c4->index_of("a^2")});
  InflationRestriction r = inflation_restriction(a, i2);
  EXPECT_TRUE(r.sequence.exact());
  EXPECT_EQ(r.sequence.nodes.size(), 3u);
  std::vector<int> all(4);
  std::iota(all.begin(), all.end(), 0);
  EXPECT_TRUE(inflation_restriction(a, all).sequence.exact());
  InflationRestriction t = inflation_restriction(a, {0});
  EXPECT_TRUE(t.sequence.exact());
  EXPECT_EQ(t.inflation.size(), t.restriction.size());
  EXPECT_THROW(inflation_restriction(inversion_action(symmetric_group(3), c3), generated_subgroup(*symmetric_group(3), {1})),
               GroupActionError);

  Rng rng(53);
  int nontrivial = 0;
  for (int it = 0; it < 30; ++it) {
    GroupPtr g = random_group(rng, 12);
    FiniteGroupAction act = random_action(rng, g, random_group(rng, 16));
    std::vector<int> gens;
    int x = static_cast<int>(rng.index(g->order()));
    for (size_t y = 0; y < g->order(); ++y) gens.push_back(g->conj(static_cast<int>(y), x));
    InflationRestriction ir = inflation_restriction(act, generated_subgroup(*g, gens));
    ASSERT_TRUE(ir.sequence.exact()) << ir.sequence.render();
    if (ir.restriction.size() > 1) ++nontrivial;
  }
  EXPECT_GT(nontrivial, 3);
}

TEST(GroupCohomologyLes, QuaternionCentre) {
  auto q8 = quaternion_group();
  auto c2 = cyclic_group(2);
  // An automorphism of order two.
  std::vector<int> chosen;
  for (const auto& m : automorphisms(*q8, 100))
    if (m != compose_maps(m, m) && compose_maps(m, m) == [&] { std::vector<int> id(8); std::iota(id.begin(), id.end(), 0); return id; }()) {
      chosen = m;
      break;
    }
  ASSERT_FALSE(chosen.empty());
  FiniteGroupAction a = make_action(c2, q8, {chosen});
  FiniteLes les = les_group_cohomology(a, q8->center());
  for (const auto& c : les.summary.clauses) EXPECT_TRUE(c.ok) << c.clause << ": " << c.detail;
  EXPECT_EQ(les.sequence.nodes.size(), 7u);
  // Q trivial.
  std::vector<int> all(4);
  std::iota(all.begin(), all.end(), 0);
  FiniteLes whole = les_group_cohomology(trivial_action(c2, cyclic_group(4)), all);
  EXPECT_TRUE(whole.summary.exact());
  EXPECT_EQ(whole.sequence.nodes[2].size, 1u);
  EXPECT_THROW(les_group_cohomology(a, generated_subgroup(*q8, {q8->generators()[0]})), CosimplicialError);
}

TEST(GroupCohomologyLes, RandomCentralExtensions) {
  Rng rng(54);
  for (int it = 0; it < 10; ++it) {
    CentralGroupExtension e = random_central_extension(rng, 8, 24);
    FiniteLes les = les_group_cohomology(e.action, e.central);
    ASSERT_TRUE(les.summary.exact()) << les.summary.render();
  }
}

TEST(UnipotentGroupCohomology, TrivialActionHasOneClass) {
  Rng rng(55);
  for (int it = 0; it < 6; ++it) {
    GroupPtr g = random_group(rng, 6);
    RandomLieOptions opt;
    opt.max_dim = 4;
    opt.max_class = 3;
    LiePtr l = random_nilpotent(rng, opt);
    UnipotentH0H1 h = h0_h1(trivial_action(g, l));
    EXPECT_EQ(h.fixed.size(), l->dim());
    for (int s = 0; s < 3; ++s) {
      auto c = random_cocycle(h.h1.object(), rng);
      ASSERT_TRUE(c.has_value());
      EXPECT_TRUE(h.h1.is_trivial(*c));
    }
  }
}

TEST(UnipotentGroupCohomology, HeisenbergWithSignAction) {
  auto c2 = cyclic_group(2);
  LiePtr h = heisenberg();
  UnipotentGroupAction a = make_action(c2, h, {diag({-1, -1, 1})});
  UnipotentH0H1 low = h0_h1(a);
  EXPECT_EQ(low.fixed.size(), 1u);
  Rng rng(56);
  CentralLes les = les_group_cohomology(a, {unit_vec<Rational>(3, 2)}, rng, 6);
  for (const auto& c : les.sequence.clauses) EXPECT_TRUE(c.ok) << c.clause << ": " << c.detail;
  EXPECT_EQ(les.h1z_dim, 0u);
  // The twist by a random cocycle matches the twisted cochain object.
  for (int s = 0; s < 3; ++s) {
    auto c = random_cocycle(low.h1.object(), rng);
    ASSERT_TRUE(c.has_value());
    std::vector<Vec> alpha = {Vec(c->begin(), c->begin() + 3), Vec(c->begin() + 3, c->end())};
    ASSERT_TRUE(is_crossed_homomorphism(a, alpha));
    EXPECT_TRUE(serre_twist_matches(a, alpha));
  }
}
