#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "cohw/cosimpl.hpp"

using namespace cohw;

namespace {

std::vector<int> all_elements(const FiniteGroup& g) {
  std::vector<int> v(g.order());
  for (size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
  return v;
}

std::vector<int> order_two_subgroup(const GroupPtr& g, int which) {
  int seen = 0;
  for (size_t x = 1; x < g->order(); ++x)
    if (g->element_order(static_cast<int>(x)) == 2 && seen++ == which) return generated_subgroup(*g, {static_cast<int>(x)});
  return {0};
}

// Pads a semi-cosimplicial vector space with zero objects up to `top`.
LieCosimplicial pad(LieCosimplicial x, int top) {
  for (int n = x.top() + 1; n <= top; ++n) {
    size_t prev = x.obj.back()->dim();
    x.obj.push_back(NilpotentLieAlgebra::abelian(0));
    x.d.emplace_back();
    for (int i = 0; i <= n; ++i) x.d.back().push_back(QMat(0, prev));
  }
  return x;
}

// The 1-truncated object (L => L, d^0 = phi, d^1 = id), padded to degree 2.
LieCosimplicial phi_pattern(const LiePtr& l, const QMat& phi) {
  LieCosimplicial x;
  x.obj = {l, l};
  x.d = {{}, {phi, QMat::identity(l->dim())}};
  x.obj.push_back(NilpotentLieAlgebra::abelian(0));
  x.d.push_back({QMat(0, l->dim()), QMat(0, l->dim()), QMat(0, l->dim())});
  return x;
}

QMat q1(long a) {
  QMat m(1, 1);
  m(0, 0) = a;
  return m;
}

}  // namespace

TEST(Simplex, SurjectionsAndIdentities) {
  for (int n = 0; n <= 5; ++n) EXPECT_EQ(surjections(n).size(), size_t{1} << n);
  auto s2 = surjections(2);
  EXPECT_EQ(s2.front(), (SimplexMap{0, 0, 0}));
  EXPECT_EQ(s2[1], (SimplexMap{0, 0, 1}));
  EXPECT_EQ(s2.back(), (SimplexMap{0, 1, 2}));
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j <= n + 1; ++j)
      for (int i = 0; i < j; ++i)
        EXPECT_EQ(compose(coface_map(n + 1, j), coface_map(n, i)), compose(coface_map(n + 1, i), coface_map(n, j - 1)));
  for (const auto& s : surjections(4)) {
    SimplexMap g(s.size());
    for (size_t i = 0; i < g.size(); ++i) g[i] = static_cast<int>(i);
    int deg = 4;
    auto r = repeats(s);
    for (auto it = r.rbegin(); it != r.rend(); ++it) g = compose(codegeneracy_map(--deg, *it), g);
    EXPECT_EQ(g, s);
  }
  EpiMono em = factor({0, 2, 2}, 3);
  EXPECT_EQ(em.epi, (SimplexMap{0, 1, 1}));
  EXPECT_EQ(em.missing, (std::vector<int>{1, 3}));
}

TEST(Cosimplicial, CogenerationOfDegreeZeroIsConstant) {
  auto s3 = symmetric_group(3);
  FiniteCosimplicial x;
  x.obj = {ProductGroup{{s3}}, ProductGroup{}, ProductGroup{}};
  x.d = {{}, {FiniteCarrier::trivial(x.obj[0], x.obj[1]), FiniteCarrier::trivial(x.obj[0], x.obj[1])}, {}};
  for (int i = 0; i < 3; ++i) x.d[2].push_back(FiniteCarrier::trivial(x.obj[1], x.obj[2]));
  FiniteCosimplicial g = cogenerate(x);
  for (int n = 0; n <= 2; ++n) EXPECT_EQ(g.obj[static_cast<size_t>(n)].factors.size(), 1u);
  for (int n = 1; n <= 2; ++n)
    for (int i = 0; i <= n; ++i) EXPECT_EQ(g.coface(n, i), FiniteCarrier::identity(g.obj[0]));
  EXPECT_EQ(pi0_finite(g).size(), 6u);
  EXPECT_EQ(pi1_finite(g).classes(), 1u);
}

TEST(Cosimplicial, DoubleCosetExample) {
  auto s3 = symmetric_group(3);
  auto a = order_two_subgroup(s3, 0), b = order_two_subgroup(s3, 1);
  FiniteCosimplicial x = double_coset_object(s3, a, b);
  FiniteCosimplicial g = cogenerate(x);
  // Gamma^1 = U x (U' x U''): the [1]->>[0] block first, then the identity block.
  ASSERT_EQ(g.obj[1].factors.size(), 3u);
  EXPECT_EQ(g.obj[1].factors[2]->order(), 6u);
  EXPECT_TRUE(check_identities(g).ok);
  EXPECT_EQ(pi0_finite(g).size(), 1u);
  EXPECT_EQ(pi1_finite(g).classes(), 2u);
  EXPECT_EQ(count_double_cosets(*s3, a, b), 2u);

  auto all = all_elements(*s3);
  FiniteCosimplicial full = cogenerate(double_coset_object(s3, all, all));
  EXPECT_EQ(pi0_finite(full).size(), 6u);
  EXPECT_EQ(pi1_finite(full).classes(), 1u);

  auto triv = FiniteGroup::trivial();
  FiniteCosimplicial one = cogenerate(double_coset_object(triv, {0}, {0}));
  EXPECT_EQ(pi1_finite(one).classes(), 1u);
}

TEST(Cosimplicial, DoubleCosetsOnRandomSubgroups) {
  Rng rng(31);
  auto lib = small_groups(24);
  for (int it = 0; it < 15; ++it) {
    GroupPtr u = lib[rng.index(lib.size())].group;
    auto a = generated_subgroup(*u, {static_cast<int>(rng.index(u->order()))});
    auto b = generated_subgroup(*u, {static_cast<int>(rng.index(u->order())), static_cast<int>(rng.index(u->order()))});
    FiniteCosimplicial g = cogenerate(double_coset_object(u, a, b));
    auto p0 = pi0_finite(g);
    std::set<int> inter;
    for (const auto& e : p0) {
      // (u', u'') with u' = u'' in U.
      int x = make_subgroup(u, a).embedding[static_cast<size_t>(e[0])];
      int y = make_subgroup(u, b).embedding[static_cast<size_t>(e[1])];
      EXPECT_EQ(x, y);
      inter.insert(x);
    }
    EXPECT_EQ(inter.size(), intersect_sorted(a, b).size());
    EXPECT_EQ(pi1_finite(g).classes(), count_double_cosets(*u, a, b));
  }
}

TEST(Cosimplicial, NonAbelianDoldKanOnRandomObjects) {
  Rng rng(32);
  size_t nontrivial = 0;
  for (int it = 0; it < 12; ++it) {
    FiniteCosimplicial x = random_finite_semi(rng, 12);
    ASSERT_TRUE(check_identities(x).ok);
    FiniteCosimplicial g = cogenerate(x);
    // Direct computation from the coface data of x.
    auto px0 = pi0_finite(x), pg0 = pi0_finite(g);
    EXPECT_EQ(px0, pg0);
    FinitePi1 px = pi1_finite(x), pg = pi1_finite(g);
    EXPECT_EQ(px.classes(), pg.classes());
    if (px.classes() > 1) ++nontrivial;
    // Projection onto the identity block is a bijection on classes.
    size_t off = g.obj[1].factors.size() - x.obj[1].factors.size();
    std::vector<size_t> image(pg.classes(), SIZE_MAX);
    for (size_t i = 0; i < pg.cocycles.size(); ++i) {
      FElem proj(pg.cocycles[i].begin() + static_cast<long>(off), pg.cocycles[i].end());
      size_t c = px.class_of[px.index_of(proj)];
      size_t& slot = image[pg.class_of[i]];
      if (slot == SIZE_MAX) slot = c;
      EXPECT_EQ(slot, c);
    }
    std::sort(image.begin(), image.end());
    EXPECT_TRUE(std::adjacent_find(image.begin(), image.end()) == image.end());
  }
  EXPECT_GE(nontrivial, 3u);
}

TEST(Cosimplicial, AbelianExamples) {
  LiePtr q = NilpotentLieAlgebra::abelian(1);
  // (Q => Q, d^0 = 0, d^1 = id): differential -id.
  LieCosimplicial a = phi_pattern(q, q1(0));
  EXPECT_EQ(pi_abelian(cogenerate(a)), (std::vector<size_t>{0, 0}));
  // Constant Q.
  LieCosimplicial c;
  c.obj = {q, NilpotentLieAlgebra::abelian(0), NilpotentLieAlgebra::abelian(0), NilpotentLieAlgebra::abelian(0)};
  c.d = {{}, {QMat(0, 1), QMat(0, 1)}, {QMat(0, 0), QMat(0, 0), QMat(0, 0)}, {QMat(0, 0), QMat(0, 0), QMat(0, 0), QMat(0, 0)}};
  EXPECT_EQ(pi_abelian(cogenerate(c)), (std::vector<size_t>{1, 0, 0}));
  // Two-term complex Q -0-> Q: Gamma^1 = Q + Q and pi = (1, 1).
  LieCosimplicial t = pad(embed_complex({1, 1}, {q1(0)}), 2);
  LieCosimplicial gt = cogenerate(t);
  EXPECT_EQ(gt.obj[1]->dim(), 2u);
  EXPECT_EQ(pi_abelian(gt), (std::vector<size_t>{1, 1}));
}

TEST(Cosimplicial, DoldKanOnRandomVectorSpaces) {
  Rng rng(33);
  for (int it = 0; it < 25; ++it) {
    LieCosimplicial x = random_semi_vector(rng, 4);
    ASSERT_TRUE(check_identities(x).ok) << check_identities(x).failure;
    LieCosimplicial g = cogenerate(x);
    EXPECT_EQ(pi_abelian(g), pi_abelian(x));
  }
}

TEST(Cosimplicial, EilenbergZilber) {
  // Concentrated at (0,0).
  LiePtr q = NilpotentLieAlgebra::abelian(1);
  LieCosimplicial point = pad(embed_complex({1}, {}), 3);
  EilenbergZilberReport r0 = eilenberg_zilber_oracle(tensor_bisemi(point, point), 2);
  EXPECT_TRUE(r0.ok);
  EXPECT_EQ(r0.total, (std::vector<size_t>{1, 0, 0}));
  Rng rng(34);
  for (int it = 0; it < 15; ++it) {
    BiSemi a = random_bisemi(rng, 3);
    ASSERT_TRUE(check_bisemi(a).ok) << check_bisemi(a).failure;
    EilenbergZilberReport r = eilenberg_zilber_oracle(a, 2);
    EXPECT_TRUE(r.ok);
  }
}

TEST(Cosimplicial, IdentityCheckerCatchesCorruption) {
  auto s3 = symmetric_group(3);
  FiniteCosimplicial g = cogenerate(double_coset_object(s3, order_two_subgroup(s3, 0), order_two_subgroup(s3, 1)));
  FiniteCosimplicial bad = g;
  std::swap(bad.d[2][0], bad.d[2][1]);
  EXPECT_FALSE(check_identities(bad).ok);
  LieCosimplicial t = cogenerate(pad(embed_complex({1, 1}, {q1(3)}), 2));
  t.s[0][0](0, 0) += 1;
  EXPECT_FALSE(check_identities(t).ok);
}

TEST(Twisting, FiniteBijectionAndTrivialTwists) {
  auto s3 = symmetric_group(3);
  FiniteCosimplicial g = cogenerate(double_coset_object(s3, order_two_subgroup(s3, 0), order_two_subgroup(s3, 1)));
  FinitePi1 p = pi1_finite(g);
  for (const auto& beta : p.cocycles) {
    TwistCheck c = check_twist_bijection(g, beta);
    EXPECT_TRUE(c.ok) << c.failure;
    EXPECT_EQ(c.twisted_classes, 2u);
  }
  // Twisting by the identity changes nothing.
  EXPECT_EQ(twist(g, FiniteCarrier::one(g.obj[1])).d, g.d);
  Rng rng(35);
  auto u0s = enumerate_elements(g.obj[0], 1000);
  for (int it = 0; it < 10; ++it) {
    const FElem& beta = p.cocycles[rng.index(p.cocycles.size())];
    const FElem& u0 = u0s[rng.index(u0s.size())];
    FElem beta2 = act_on_cocycle(g, beta, u0);
    auto phi = trivial_twist_isomorphism(twist(g, beta), u0);
    IdentityReport r = check_cosimplicial_map(twist(g, beta2), twist(g, beta), phi);
    EXPECT_TRUE(r.ok) << r.failure;
  }
  for (const auto& e : enumerate_elements(g.obj[1], 1000)) {
    if (is_cocycle(g, e)) continue;
    EXPECT_THROW(twist(g, e), CosimplicialError);
    break;
  }
}

TEST(Twisting, UnipotentTwistIsCosimplicial) {
  LiePtr h = heisenberg();
  QMat phi(3, 3);
  phi(0, 0) = 2;
  phi(1, 1) = 3;
  phi(2, 2) = 6;
  LieCosimplicial g = cogenerate(phi_pattern(h, phi));
  Rng rng(36);
  for (int it = 0; it < 5; ++it) {
    Vec u0 = rng.rational_vec(3, 4, 2), v0 = rng.rational_vec(3, 4, 2);
    Vec beta = act_on_cocycle(g, Vec(g.obj[1]->dim()), u0);
    ASSERT_TRUE(is_cocycle(g, beta));
    LieCosimplicial tw = twist(g, beta);
    EXPECT_TRUE(check_identities(tw).ok);
    Vec beta2 = act_on_cocycle(g, beta, v0);
    IdentityReport r = check_cosimplicial_map(twist(g, beta2), tw, trivial_twist_isomorphism(tw, v0));
    EXPECT_TRUE(r.ok) << r.failure;
  }
}

TEST(LieDeciders, ConstantAndCoboundaries) {
  LiePtr h = heisenberg();
  LieCosimplicial c = cogenerate(phi_pattern(h, QMat::identity(3)));
  LiePi1 d(c);
  Vec one(c.obj[1]->dim());
  EXPECT_TRUE(d.is_trivial(one));
  Rng rng(37);
  LieCosimplicial g = cogenerate(phi_pattern(h, [] {
    QMat m(3, 3);
    m(0, 0) = 2;
    m(1, 1) = 1;
    m(2, 2) = 2;
    return m;
  }()));
  LiePi1 dg(g);
  for (int it = 0; it < 5; ++it) {
    Vec u0 = rng.rational_vec(3, 5, 3);
    Vec c1 = act_on_cocycle(g, one, rng.rational_vec(3, 5, 3));
    Vec c2 = dg.act(c1, u0);
    ASSERT_TRUE(dg.is_cocycle(c2));
    OrbitMatch m = dg.equivalent(c1, c2);
    EXPECT_TRUE(m.found);
    EXPECT_EQ(dg.act(c1, m.element), c2);
    EXPECT_TRUE(dg.is_trivial(c2));
  }
  Vec junk(g.obj[1]->dim());
  junk[0] = 1;
  junk[junk.size() - 1] = 1;
  if (!dg.is_cocycle(junk)) {
    EXPECT_THROW(dg.is_trivial(junk), CosimplicialError);
  }
}

TEST(LieDeciders, TangentDimensionMatchesAbelianPi1) {
  Rng rng(38);
  for (int it = 0; it < 15; ++it) {
    LieCosimplicial x = random_semi_vector(rng, 2);
    LieCosimplicial g = cogenerate(x);
    LiePi1 d(g);
    EXPECT_EQ(d.tangent_dimension(Vec(g.obj[1]->dim())), pi_abelian(g)[1]);
  }
  // (Q => Q, d^0 = 1, d^1 = 1): pi^1 = Q and the zero cocycle is not equivalent to a nonzero one.
  LiePtr q = NilpotentLieAlgebra::abelian(1);
  LieCosimplicial g = cogenerate(phi_pattern(q, q1(1)));
  LiePi1 d(g);
  Vec zero(g.obj[1]->dim());
  EXPECT_EQ(d.tangent_dimension(zero), 1u);
  bool found_nontrivial = false;
  for (size_t i = 0; i < zero.size(); ++i) {
    Vec e = unit_vec<Rational>(zero.size(), i);
    if (d.is_cocycle(e) && !d.is_trivial(e)) found_nontrivial = true;
  }
  EXPECT_TRUE(found_nontrivial);
}
