#include <gtest/gtest.h>

#include "cohw/bch.hpp"
#include "cohw/nilpotent.hpp"
#include "cohw/orbit.hpp"
#include "cohw/torsor.hpp"

using namespace cohw;

namespace {

constexpr int kIterations = 60;

Vec small_vec(Rng& rng, size_t n) { return rng.rational_vec(n, 6, 4); }

// Degree <= 4 truncation of the series, written out term by term.
Vec bch_degree4(const NilpotentLieAlgebra& l, const Vec& x, const Vec& y) {
  Vec xy = l.bracket(x, y);
  Vec xxy = l.bracket(x, xy);
  Vec yxy = l.bracket(y, xy);
  Vec yxxy = l.bracket(y, xxy);
  Vec out = add(x, y);
  axpy(frac(1, 2), xy, out);
  axpy(frac(1, 12), xxy, out);
  axpy(frac(-1, 12), yxy, out);
  axpy(frac(-1, 24), yxxy, out);
  return out;
}

}  // namespace

TEST(Bch, FreeSeriesLowDegreeCoefficients) {
  FreePoly p = log_exp_product(3, 2);
  EXPECT_EQ(p.at(Word{0, 1}), frac(1, 2));
  EXPECT_EQ(p.at(Word{1, 0}), frac(-1, 2));
  EXPECT_EQ(p.at(Word{0, 0, 1}), frac(1, 12));
  EXPECT_EQ(p.at(Word{0, 1, 0}), frac(-1, 6));
  EXPECT_EQ(p.count(Word{0, 0}), 0u);
}

TEST(Bch, MatchesExplicitLowClassFormula) {
  Rng rng(5);
  for (int it = 0; it < kIterations; ++it) {
    LiePtr l = random_nilpotent(rng, {6, 4, rng.coin()});
    Vec x = small_vec(rng, l->dim()), y = small_vec(rng, l->dim());
    EXPECT_EQ(group_mul(*l, x, y), bch_degree4(*l, x, y));
  }
}

TEST(Bch, GroupAxiomsUpToClassSix) {
  Rng rng(6);
  for (int it = 0; it < kIterations; ++it) {
    LiePtr l = random_nilpotent(rng, {8, 6, rng.coin()});
    size_t n = l->dim();
    Vec a = small_vec(rng, n), b = small_vec(rng, n), c = small_vec(rng, n);
    EXPECT_EQ(group_mul(*l, group_mul(*l, a, b), c), group_mul(*l, a, group_mul(*l, b, c)));
    EXPECT_TRUE(is_zero_vec(group_mul(*l, a, group_inv(a))));
    EXPECT_EQ(group_mul(*l, a, Vec(n)), a);
    Rational s = rng.rational(4, 3), t = rng.rational(4, 3);
    EXPECT_EQ(group_mul(*l, scale(s, a), scale(t, a)), scale(Rational(s + t), a));
    // Conjugation agrees with the product formula and with exp(ad).
    Vec conj = group_conj(*l, a, b);
    EXPECT_EQ(conj, group_mul(*l, {a, b, neg(a)}));
    EXPECT_EQ(conj, adjoint_matrix(*l, a).apply(b));
  }
}

TEST(Nilpotent, JacobiFailureNamesTriple) {
  // [e1,e2]=e4, [e2,e3]=e4, [e1,e4]=e5: the Jacobi sum on (1,2,3) is e5.
  std::vector<BracketEntry> br{{0, 1, 3, 1}, {1, 2, 3, 1}, {0, 3, 4, 1}};
  LieReport rep = validate_lie_data(5, br);
  ASSERT_FALSE(rep.ok);
  EXPECT_NE(rep.message.find("(1,2,3)"), std::string::npos);
  EXPECT_THROW(NilpotentLieAlgebra::create({"a", "b", "c", "d", "e"}, br), LieError);
}

TEST(Nilpotent, NonNilpotentRejected) {
  // [h,x] = x is solvable, not nilpotent.
  EXPECT_THROW(NilpotentLieAlgebra::create({"h", "x"}, {{0, 1, 1, 1}}), LieError);
  EXPECT_THROW(NilpotentLieAlgebra::create({"a"}, {{0, 0, 0, 1}}), LieError);
}

TEST(Nilpotent, HeisenbergBasics) {
  LiePtr h = heisenberg();
  EXPECT_EQ(h->nilpotency_class(), 2);
  EXPECT_EQ(h->lcs_dims(), (std::vector<size_t>{3, 1, 0}));
  EXPECT_TRUE(h->frame().identity);
  Vec x{1, 0, 0}, y{0, 1, 0};
  EXPECT_EQ(group_mul(*h, x, y), (Vec{1, 1, frac(1, 2)}));
  EXPECT_EQ(group_commutator(*h, x, y), (Vec{0, 0, 1}));
}

TEST(Nilpotent, AdaptedFrameMatchesSeries) {
  Rng rng(7);
  for (int it = 0; it < kIterations; ++it) {
    LiePtr l = random_nilpotent(rng, {7, 5, true});
    const Frame& f = l->frame();
    for (int k = 1; k <= l->nilpotency_class(); ++k) {
      std::vector<Vec> span;
      for (size_t i = 0; i < l->dim(); ++i)
        if (f.weight[i] >= k) span.push_back(l->from_adapted(unit_vec<Rational>(l->dim(), i)));
      EXPECT_EQ(QSubspace(l->dim(), span), l->lcs(k));
    }
    Vec v = small_vec(rng, l->dim());
    EXPECT_EQ(l->from_adapted(l->adapted(v)), v);
  }
}

TEST(Nilpotent, CentralExtensionsAreValid) {
  Rng rng(8);
  for (int it = 0; it < 30; ++it) {
    LiePtr q = random_nilpotent(rng, {5, 3, false});
    auto z2 = two_cocycles(*q);
    std::vector<BracketEntry> coc;
    size_t p = 0;
    Vec om(q->dim() * (q->dim() - 1) / 2);
    for (const auto& b : z2) axpy(Rational(rng.uniform(-3, 3)), b, om);
    for (size_t i = 0; i < q->dim(); ++i)
      for (size_t j = i + 1; j < q->dim(); ++j, ++p)
        if (sgn(om[p]) != 0) coc.push_back({i, j, 0, om[p]});
    Extension e = central_extension(q, 1, coc);
    EXPECT_FALSE(lie_hom_defect(*e.total, *e.quotient, e.projection));
    EXPECT_FALSE(lie_hom_defect(*e.kernel, *e.total, e.inclusion));
    EXPECT_TRUE(is_ideal(*e.total, column_space(e.inclusion)));
  }
}

TEST(Nilpotent, QuotientAndSubalgebra) {
  LiePtr h = heisenberg();
  Quotient q = quotient(*h, h->lcs(2));
  EXPECT_EQ(q.algebra->dim(), 2u);
  EXPECT_TRUE(q.algebra->is_abelian());
  Subalgebra s = subalgebra(*h, {Vec{1, 0, 0}, Vec{0, 0, 1}});
  EXPECT_TRUE(s.algebra->is_abelian());
  EXPECT_THROW(subalgebra(*h, {Vec{1, 0, 0}, Vec{0, 1, 0}}), LieError);
}

TEST(Nilpotent, GradedSolverRecoversPreimages) {
  Rng rng(9);
  for (int it = 0; it < kIterations; ++it) {
    LiePtr l = random_nilpotent(rng, {6, 4, rng.coin()});
    size_t n = l->dim();
    Vec a = small_vec(rng, n), u = small_vec(rng, n);
    auto f = [&](const Vec& x) { return group_mul(*l, {a, x, a}); };
    GradedSolve s = solve_graded_affine(*l, *l, f, f(u));
    ASSERT_TRUE(s.solved);
    EXPECT_EQ(f(s.solution), f(u));
  }
}

TEST(Nilpotent, GradedSolverRejectsNonlinearMap) {
  LiePtr a = NilpotentLieAlgebra::abelian(1);
  auto f = [](const Vec& x) { return Vec{x[0] + x[0] * x[0]}; };
  EXPECT_THROW(solve_graded_affine(*a, *a, f, Vec{1}), LieError);
}

TEST(Nilpotent, GradedSolverObstruction) {
  // f(u) = u^{-1} c u never reaches a different first layer.
  LiePtr h = heisenberg();
  Vec c{1, 0, 0};
  auto f = [&](const Vec& x) { return group_mul(*h, {neg(x), c, x}); };
  GradedSolve s = solve_graded_affine(*h, *h, f, Vec{2, 0, 0});
  EXPECT_FALSE(s.solved);
  EXPECT_EQ(s.layer, 1);
  EXPECT_TRUE(s.exact);
}

TEST(Torsor, TwoChartLineTrivializesAtMinusT) {
  LiePtr a = NilpotentLieAlgebra::abelian(1);
  UnipotentTorsor p = UnipotentTorsor::two_chart(a, Vec{frac(5, 3)});
  Trivialization t = torsor_trivialize(p);
  EXPECT_EQ(t.sections[1], (Vec{frac(-5, 3)}));
}

TEST(Torsor, RandomTorsorsTrivializeAndPushForward) {
  Rng rng(10);
  for (int it = 0; it < 30; ++it) {
    LiePtr l = random_nilpotent(rng, {6, 4, rng.coin()});
    UnipotentTorsor p = random_torsor(l, 2 + rng.index(3), rng);
    Trivialization t = torsor_trivialize(p);
    EXPECT_EQ(t.sections.size(), p.charts());
    Quotient q = quotient(*l, l->lcs(2));
    UnipotentTorsor pq = torsor_pushout(p, LieMorphism(l, q.algebra, q.projection));
    Trivialization tq = torsor_trivialize(pq);
    for (size_t i = 0; i < p.charts(); ++i) EXPECT_EQ(tq.sections[i], q.projection.apply(t.sections[i]));
    UnipotentTorsor g = torsor_graded(p);
    EXPECT_EQ(torsor_trivialize(g).sections.size(), p.charts());
  }
  LiePtr h = heisenberg();
  EXPECT_THROW(UnipotentTorsor(h, {{Vec(3), Vec{1, 0, 0}}, {Vec{0, 1, 0}, Vec(3)}}), LieError);
}

TEST(Orbit, HeisenbergConjugacyClasses) {
  LiePtr h = heisenberg();
  QMat id = QMat::identity(3);
  OrbitEngine e({h, h, id, id, {}});
  EXPECT_TRUE(e.solve(Vec{1, 2, 0}, Vec{1, 2, 7}).found);
  EXPECT_FALSE(e.solve(Vec{0, 0, 1}, Vec{0, 0, 2}).found);
  EXPECT_FALSE(e.solve(Vec{1, 0, 0}, Vec{2, 0, 0}).found);
  EXPECT_EQ(e.stabilizer(Vec{0, 0, 5}).size(), 3u);
  EXPECT_EQ(e.stabilizer(Vec{1, 0, 0}).size(), 2u);
  EXPECT_FALSE(e.transitive());
}

TEST(Orbit, StabilizerMatchesTangentKernelAndNormalFormIsInvariant) {
  Rng rng(12);
  for (int it = 0; it < kIterations; ++it) {
    LiePtr l = random_nilpotent(rng, {6, 4, rng.coin()});
    size_t n = l->dim();
    // Twisted conjugation by a random automorphism-free pair: left = id, right = id or zero.
    QMat left = QMat::identity(n);
    QMat right = rng.coin() ? QMat::identity(n) : QMat(n, n);
    OrbitEngine e({l, l, left, right, {}});
    Vec c = small_vec(rng, n);
    auto stab = e.stabilizer(c);
    QMat tangent = right - adjoint_matrix(*l, neg(c)) * left;
    EXPECT_EQ(stab.size(), kernel(tangent).size());
    for (const auto& x : stab) EXPECT_EQ(e.act(c, x), c);
    Vec g = small_vec(rng, n);
    Vec c2 = e.act(c, g);
    OrbitMatch m = e.solve(c, c2);
    ASSERT_TRUE(m.found);
    EXPECT_EQ(e.act(c, m.element), c2);
    EXPECT_EQ(e.normal_form(c), e.normal_form(c2));
    Vec other = small_vec(rng, n);
    EXPECT_EQ(e.solve(c, other).found, e.normal_form(c) == e.normal_form(other));
  }
}
