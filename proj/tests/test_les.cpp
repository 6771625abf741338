#include <gtest/gtest.h>

#include "cohw/les.hpp"

using namespace cohw;

namespace {

std::string failures(const MixedExactSequence& m) {
  std::string out;
  for (const auto& c : m.clauses)
    if (!c.ok) out += c.clause + " [" + c.detail + "]; ";
  return out;
}

struct DoubleCosetCase {
  GroupPtr u;
  std::vector<int> first, second;
};

// Subgroups of the double-coset object cut out by a subgroup `a` of U.
FactorSubgroups restricted(const DoubleCosetCase& c, const std::vector<int>& a) {
  std::vector<std::vector<std::vector<int>>> x = {{}, {a}, {{0}}};
  SubgroupData s1 = make_subgroup(c.u, c.first), s2 = make_subgroup(c.u, c.second);
  for (const auto* s : {&s1, &s2}) {
    std::vector<int> part;
    for (size_t i = 0; i < s->embedding.size(); ++i)
      if (std::binary_search(a.begin(), a.end(), s->embedding[i])) part.push_back(static_cast<int>(i));
    x[0].push_back(part);
  }
  x[2].clear();
  return cogenerated_subgroups(x, 2);
}

LieCosimplicial phi_pattern(const LiePtr& l, const QMat& phi, int top) {
  LieCosimplicial x;
  x.obj = {l, l};
  x.d = {{}, {phi, QMat::identity(l->dim())}};
  for (int n = 2; n <= top; ++n) {
    size_t prev = x.obj.back()->dim();
    x.obj.push_back(NilpotentLieAlgebra::abelian(0));
    x.d.emplace_back();
    for (int i = 0; i <= n; ++i) x.d.back().push_back(QMat(0, prev));
  }
  return x;
}

QMat diag(std::vector<long> v) {
  QMat m(v.size(), v.size());
  for (size_t i = 0; i < v.size(); ++i) m(i, i) = v[i];
  return m;
}

}  // namespace

TEST(ExactSequence, VerifierCatchesBrokenSequences) {
  // 1 -> C2 -> C4 -> C2 with the action of C2 on a two-point set.
  FiniteSequence s;
  auto c2 = cyclic_group(2), c4 = cyclic_group(4);
  auto table = [](const GroupPtr& g) {
    std::vector<int> t;
    for (size_t a = 0; a < g->order(); ++a)
      for (size_t b = 0; b < g->order(); ++b) t.push_back(g->mul(static_cast<int>(a), static_cast<int>(b)));
    return t;
  };
  s.nodes = {{"A", NodeKind::Abelian, 2, table(c2)}, {"B", NodeKind::Group, 4, table(c4)}, {"C", NodeKind::Group, 2, table(c2)},
             {"D", NodeKind::PointedSet, 1, {}}};
  s.maps = {{0, c4->index_of("a^2")}, {0, 1, 0, 1}, {0, 0}};
  s.j = 0;
  s.k = 2;
  s.action = {{0, 0}};
  s.ends_with_one = true;
  auto m = summarize(s);
  EXPECT_TRUE(m.exact()) << failures(m);
  EXPECT_EQ(m.render(), "1 -> A -z-> B -> C ~> D -> 1");
  // The stabiliser of the point is all of C but the image of B is too: still exact.
  // Break exactness at B.
  s.maps[1] = {0, 0, 0, 0};
  EXPECT_FALSE(summarize(s).exact());
  s.maps[1] = {0, 1, 0, 1};
  s.maps[0] = {0, 0};
  EXPECT_FALSE(summarize(s).exact());
}

TEST(FiniteLes, TrivialQuotientCollapses) {
  auto s3 = symmetric_group(3);
  DoubleCosetCase c{s3, generated_subgroup(*s3, {1}), generated_subgroup(*s3, {2})};
  FiniteCosimplicial u = cogenerate(double_coset_object(c.u, c.first, c.second));
  std::vector<int> all(6);
  for (int i = 0; i < 6; ++i) all[static_cast<size_t>(i)] = i;
  FiniteLes les = les_finite(u, restricted(c, all), LesPart::Normal);
  EXPECT_TRUE(les.summary.exact()) << failures(les.summary);
  EXPECT_EQ(les.sequence.nodes[2].size, 1u);  // pi0(Q)
  EXPECT_EQ(les.sequence.nodes[5].size, 1u);  // pi1(Q)
  EXPECT_EQ(les.sequence.nodes[4].size, count_double_cosets(*s3, c.first, c.second));
}

TEST(FiniteLes, CosetsOfASubgroupOfS3) {
  auto s3 = symmetric_group(3);
  DoubleCosetCase c{s3, generated_subgroup(*s3, {1}), generated_subgroup(*s3, {2})};
  FiniteCosimplicial u = cogenerate(double_coset_object(c.u, c.first, c.second));
  for (const auto& a : {generated_subgroup(*s3, {1}), generated_subgroup(*s3, {3}), std::vector<int>{0}}) {
    FiniteLes les = les_finite(u, restricted(c, a), LesPart::Transitive);
    EXPECT_TRUE(les.summary.exact()) << failures(les.summary);
    EXPECT_EQ(les.sequence.nodes.size(), 5u);
    EXPECT_EQ(les.sequence.k, 1);
  }
}

TEST(FiniteLes, RandomSubgroupsAllParts) {
  Rng rng(41);
  auto lib = small_groups(24);
  int central = 0;
  for (int it = 0; it < 25; ++it) {
    GroupPtr g = lib[rng.index(lib.size())].group;
    DoubleCosetCase c{g, generated_subgroup(*g, {static_cast<int>(rng.index(g->order()))}),
                      generated_subgroup(*g, {static_cast<int>(rng.index(g->order())), static_cast<int>(rng.index(g->order()))})};
    FiniteCosimplicial u = cogenerate(double_coset_object(g, c.first, c.second));
    auto a = generated_subgroup(*g, {static_cast<int>(rng.index(g->order()))});
    FiniteLes t = les_finite(u, restricted(c, a), LesPart::Transitive);
    EXPECT_TRUE(t.summary.exact()) << g->order() << ": " << failures(t.summary);
    // The normal closure of a random element.
    std::vector<int> gens;
    int x = static_cast<int>(rng.index(g->order()));
    for (size_t y = 0; y < g->order(); ++y) gens.push_back(g->conj(static_cast<int>(y), x));
    auto normal = generated_subgroup(*g, gens);
    FiniteLes n = les_finite(u, restricted(c, normal), LesPart::Normal);
    EXPECT_TRUE(n.summary.exact()) << failures(n.summary);
    auto center = g->center();
    auto zc = generated_subgroup(*g, {center[rng.index(center.size())]});
    FiniteLes z = les_finite(u, restricted(c, zc), LesPart::Central);
    EXPECT_TRUE(z.summary.exact()) << failures(z.summary);
    EXPECT_EQ(z.sequence.nodes.size(), 7u);
    if (zc.size() > 1) ++central;
  }
  EXPECT_GT(central, 3);
}

TEST(FiniteLes, RejectsBadInput) {
  auto s3 = symmetric_group(3);
  DoubleCosetCase c{s3, generated_subgroup(*s3, {1}), generated_subgroup(*s3, {2})};
  FiniteCosimplicial u = cogenerate(double_coset_object(c.u, c.first, c.second));
  auto order_two = generated_subgroup(*s3, {1});
  EXPECT_THROW(les_finite(u, restricted(c, order_two), LesPart::Normal), CosimplicialError);
  auto a3 = generated_subgroup(*s3, {3});
  EXPECT_THROW(les_finite(u, restricted(c, a3), LesPart::Central), CosimplicialError);
}

TEST(UnipotentLes, HeisenbergCenterOverPhiPatterns) {
  LiePtr h = heisenberg();
  Rng rng(42);
  std::vector<std::vector<Vec>> x_spans = {{unit_vec<Rational>(3, 2)}, {unit_vec<Rational>(3, 2)}, {}, {}};
  struct Case {
    std::vector<long> phi;
    size_t h1z;
    bool point;
  };
  for (const auto& c : {Case{{2, 3, 6}, 0, true}, Case{{1, 1, 1}, 1, false}, Case{{2, 1, 2}, 0, false}, Case{{1, 2, 2}, 0, false}}) {
    LieCosimplicial x = phi_pattern(h, diag(c.phi), 3);
    LieCosimplicial u = cogenerate(x);
    LieExtension e = split_extension(u, cogenerated_spans(x, x_spans), true);
    CentralLes les = les_unipotent_central(e, rng, 8);
    EXPECT_TRUE(les.sequence.exact()) << failures(les.sequence);
    EXPECT_EQ(les.h1z_dim, c.h1z);
    EXPECT_EQ(les.pi1q_point, c.point);
    ASSERT_TRUE(les.h2z_dim.has_value());
    EXPECT_EQ(*les.h2z_dim, 0u);
  }
}

TEST(UnipotentLes, RejectsNonCentral) {
  LiePtr h = heisenberg();
  LieCosimplicial x = phi_pattern(h, diag({1, 1, 1}), 2);
  LieCosimplicial u = cogenerate(x);
  std::vector<std::vector<Vec>> spans = {{unit_vec<Rational>(3, 0), unit_vec<Rational>(3, 2)}, {unit_vec<Rational>(3, 0), unit_vec<Rational>(3, 2)}, {}};
  EXPECT_THROW(split_extension(u, cogenerated_spans(x, spans), true), CosimplicialError);
}

TEST(AbelianLes, ConeOfIdentity) {
  // Q -id-> Q with Z the degree-1 part: H(Z) = (0,1), H(U) = 0, H(Q) = (1,0).
  QMat one(1, 1);
  one(0, 0) = 1;
  LieCosimplicial c = embed_complex({1, 1, 0, 0}, {one, QMat(0, 1), QMat(0, 0)});
  LieExtension e = split_extension(c, {{}, {unit_vec<Rational>(1, 0)}, {}, {}}, false);
  MixedExactSequence m = les_abelian(e);
  EXPECT_TRUE(m.exact()) << failures(m);
  EXPECT_EQ(m.nodes.size(), 9u);
  EXPECT_EQ(m.nodes[2].size, "dim 1");
  EXPECT_EQ(m.nodes[3].size, "dim 1");
}

TEST(AbelianLes, RandomSubobjects) {
  Rng rng(43);
  for (int it = 0; it < 25; ++it) {
    LieCosimplicial u = random_semi_vector(rng, 3);
    // Close random vectors under the cofaces.
    std::vector<std::vector<Vec>> spans(4);
    for (int n = 0; n <= 3; ++n) {
      size_t dim = u.obj[static_cast<size_t>(n)]->dim();
      if (dim > 0 && rng.coin()) spans[static_cast<size_t>(n)].push_back(rng.rational_vec(dim, 3, 1));
      if (n == 0) continue;
      QSubspace prev(u.obj[static_cast<size_t>(n) - 1]->dim(), spans[static_cast<size_t>(n) - 1]);
      for (const auto& v : prev.basis())
        for (int i = 0; i <= n; ++i) spans[static_cast<size_t>(n)].push_back(u.coface(n, i).apply(v));
    }
    LieExtension e = split_extension(u, spans, false);
    MixedExactSequence m = les_abelian(e);
    EXPECT_TRUE(m.exact()) << failures(m);
  }
}

TEST(CodimVanishing, CogeneratedInLowDegreesLifts) {
  LiePtr h = heisenberg();
  Rng rng(44);
  LieCosimplicial x = phi_pattern(h, diag({2, 1, 2}), 2);
  LieCosimplicial u = cogenerate(x);
  std::vector<std::vector<Vec>> x_spans = {{unit_vec<Rational>(3, 2)}, {unit_vec<Rational>(3, 2)}, {}};
  LieExtension e = split_extension(u, cogenerated_spans(x, x_spans), true);
  std::vector<Vec> qs;
  for (int i = 0; i < 6; ++i)
    if (auto c = random_cocycle(e.q, rng)) qs.push_back(*c);
  ASSERT_FALSE(qs.empty());
  CodimReport r = codim_vanishing_check(e, qs);
  EXPECT_TRUE(r.hypothesis);
  EXPECT_TRUE(r.ok) << r.detail;
  EXPECT_EQ(r.preimages.size(), qs.size());

  // Z constant (cogenerated from degree 0).
  LieCosimplicial xa = phi_pattern(NilpotentLieAlgebra::abelian(2), diag({0, 1}), 2);
  xa.d[1][0](0, 0) = 0;
  xa.d[1][1] = diag({0, 1});
  LieCosimplicial ua = cogenerate(xa);
  LieExtension ea = split_extension(ua, cogenerated_spans(xa, {{unit_vec<Rational>(2, 0)}, {}, {}}), true);
  std::vector<Vec> qa;
  for (int i = 0; i < 4; ++i)
    if (auto c = random_cocycle(ea.q, rng)) qa.push_back(*c);
  CodimReport ra = codim_vanishing_check(ea, qa);
  EXPECT_TRUE(ra.hypothesis);
  EXPECT_TRUE(ra.ok) << ra.detail;
}

TEST(CodimVanishing, DegreeTwoKernelFailsHypothesis) {
  LieCosimplicial x;
  LiePtr zero = NilpotentLieAlgebra::abelian(0), q = NilpotentLieAlgebra::abelian(1);
  x.obj = {zero, zero, q};
  x.d = {{}, {QMat(0, 0), QMat(0, 0)}, {QMat(1, 0), QMat(1, 0), QMat(1, 0)}};
  LieCosimplicial z = cogenerate(x);
  std::vector<std::vector<Vec>> all;
  for (const auto& o : z.obj) {
    std::vector<Vec> b;
    for (size_t i = 0; i < o->dim(); ++i) b.push_back(unit_vec<Rational>(o->dim(), i));
    all.push_back(b);
  }
  LieExtension e = split_extension(z, all, true);
  CodimReport r = codim_vanishing_check(e, {});
  EXPECT_FALSE(r.hypothesis);
  EXPECT_EQ(r.failing_degree, 2);
}
