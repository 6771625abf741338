#include <gtest/gtest.h>

#include "cohw/hodge.hpp"

using namespace cohw;

namespace {

Gaussian gi(long re, long im) { return Gaussian(Rational(re), Rational(im)); }

CFiltration f0_only(size_t d, const std::vector<CVec>& f0) {
  return CFiltration(d, FiltrationDirection::Descending, {{0, CSubspace(d, f0)}});
}

QFiltration heisenberg_weights(size_t central_index) {
  return QFiltration(3, FiltrationDirection::Ascending,
                     {{-2, QSubspace(3, {unit_vec<Rational>(3, central_index)})}, {-1, QSubspace::full(3)}});
}

CVec random_point(Rng& rng, size_t d) {
  CVec u(d);
  for (auto& z : u) z = Gaussian(rng.rational(4, 3), rng.rational(4, 3));
  return u;
}

// w^-1 u f for random w in W_0 U(R) and f in F^0 U(C), computed in the realification.
CVec random_translate(Rng& rng, const MHSGroup& m, const CVec& u) {
  size_t d = m.lie->dim();
  LiePtr t = realify(*m.lie);
  W0F0 s = w0_f0_subgroups(m);
  Vec w(2 * d), f(2 * d);
  for (const auto& v : s.w0.basis())
    for (size_t k = 0; k < d; ++k) w[k] += rng.rational(3, 2) * v[k];
  for (const auto& v : realify_span(s.f0)) f = add(f, scale(rng.rational(3, 2), v));
  return complexify(group_mul(*t, {neg(w), realify(u), f}));
}

// Abelian case: the double cosets are U(C) / (U(R) + F^0) as a real vector space.
bool abelian_equivalent(const MHSGroup& m, const CVec& u, const CVec& v) {
  size_t d = m.lie->dim();
  std::vector<Vec> span = realify_span(w0_f0_subgroups(m).f0);
  for (size_t k = 0; k < d; ++k) span.push_back(unit_vec<Rational>(2 * d, k));
  return QSubspace(2 * d, span).contains(sub(realify(u), realify(v)));
}

}  // namespace

TEST(MHS, ValidatesExamples) {
  EXPECT_TRUE(validate_mhs(tate_mhs()).ok);
  EXPECT_TRUE(validate_mhs(pure_weight_minus_one()).ok);
  MHSReport h = validate_mhs(heisenberg_mhs());
  EXPECT_TRUE(h.ok);
  EXPECT_EQ(h.graded_dims, (std::vector<std::pair<int, size_t>>{{-2, 1}, {-1, 2}}));

  auto pure = pure_weight_minus_one();
  MHSGroup real_f0{pure.lie, pure.weight, f0_only(2, {CVec{gi(1, 0), gi(0, 0)}}), true};
  MHSReport r = validate_mhs(real_f0);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violation.find("Hodge decomposition"), std::string::npos) << r.violation;

  MHSGroup bad_w{heisenberg(), heisenberg_weights(0), f0_only(3, {CVec{gi(1, 0), gi(0, 1), gi(0, 0)}}), true};
  EXPECT_NE(validate_mhs(bad_w).violation.find("not an ideal"), std::string::npos);

  MHSGroup bad_f{heisenberg(), heisenberg_weights(2),
                 f0_only(3, {CVec{gi(1, 0), gi(0, 0), gi(0, 0)}, CVec{gi(0, 0), gi(1, 0), gi(0, 0)}}), true};
  EXPECT_NE(validate_mhs(bad_f).violation.find("[F^0, F^0]"), std::string::npos) << validate_mhs(bad_f).violation;

  MHSGroup positive{pure.lie, QFiltration(2, FiltrationDirection::Ascending, {{1, QSubspace::full(2)}}), pure.hodge, true};
  EXPECT_FALSE(validate_mhs(positive).ok);
  EXPECT_THROW(mhs_group(positive.lie, positive.weight, positive.hodge), MHSError);
}

TEST(MHS, W0AndF0) {
  W0F0 t = w0_f0_subgroups(tate_mhs());
  EXPECT_EQ(t.w0.dim(), 1u);
  EXPECT_EQ(t.f0.dim(), 0u);
  W0F0 p = w0_f0_subgroups(pure_weight_minus_one());
  EXPECT_EQ(p.w0.dim(), 2u);
  EXPECT_EQ(p.f0.dim(), 1u);
  W0F0 h = w0_f0_subgroups(heisenberg_mhs());
  EXPECT_EQ(h.w0.dim(), 3u);
  EXPECT_EQ(h.f0.dim(), 1u);
}

TEST(MHS, H1Dimensions) {
  EXPECT_EQ(h1_dimension(tate_mhs()), 1u);
  EXPECT_EQ(h1_dimension(pure_weight_minus_one()), 0u);
  EXPECT_EQ(h1_dimension(heisenberg_mhs()), 1u);
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    MHSGroup m = random_mhs(rng, 3);
    EXPECT_EQ(h1_dimension(m), m.lie->dim() % 2);
  }
}

TEST(MHSTorsor, NormalForms) {
  MHSGroup t = tate_mhs();
  EXPECT_EQ(classify_torsor(t, CVec{gi(0, 0)}).representative, (CVec{gi(0, 0)}));
  EXPECT_EQ(classify_torsor(t, CVec{gi(5, -3)}).representative, (CVec{gi(0, -3)}));

  Rng rng(8);
  MHSGroup p = pure_weight_minus_one();
  for (int k = 0; k < 5; ++k) EXPECT_EQ(classify_torsor(p, random_point(rng, 2)).representative, CVec(2));

  MHSGroup h = heisenberg_mhs();
  MHSTorsorClass c = classify_torsor(h, CVec{gi(0, 0), gi(0, 0), gi(1, 2)});
  EXPECT_EQ(c.representative[2].re, 0);
  EXPECT_EQ(c.representative[2].im, 2);
  EXPECT_EQ(c.representative[0], Gaussian());
  EXPECT_EQ(c.representative[1], Gaussian());
  EXPECT_EQ(c.layers.size(), 2u);
}

TEST(MHSTorsor, EquivalenceOnTranslates) {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    MHSGroup m = t == 0 ? heisenberg_mhs() : random_mhs(rng, 2);
    CVec u = random_point(rng, m.lie->dim());
    EXPECT_TRUE(equivalent(m, u, u));
    CVec v = random_translate(rng, m, u);
    EXPECT_TRUE(equivalent(m, u, v));
    EXPECT_EQ(classify_torsor(m, u).representative, classify_torsor(m, v).representative);
  }
  MHSGroup tate = tate_mhs();
  EXPECT_FALSE(equivalent(tate, CVec{gi(0, 1)}, CVec{gi(0, 2)}));
  EXPECT_TRUE(equivalent(tate, CVec{gi(7, 1)}, CVec{gi(-2, 1)}));
}

TEST(MHSTorsor, AbelianAgainstLinearQuotient) {
  Rng rng(40);
  int checked = 0;
  while (checked < 20) {
    MHSGroup m = random_mhs(rng, 3);
    if (!m.lie->is_abelian()) continue;
    CVec u = random_point(rng, m.lie->dim());
    CVec v = rng.coin() ? random_translate(rng, m, u) : random_point(rng, m.lie->dim());
    EXPECT_EQ(equivalent(m, u, v), abelian_equivalent(m, u, v));
    ++checked;
  }
}

TEST(MHSTorsor, FreeAction) {
  Rng rng(50);
  FreenessCertificate h = freeness_check(heisenberg_mhs(), rng, 50);
  EXPECT_TRUE(h.free());
  EXPECT_EQ(h.samples, 50);
  for (int t = 0; t < 5; ++t) EXPECT_TRUE(freeness_check(random_mhs(rng, 2), rng, 10).free());
}

TEST(MHSLes, HeisenbergBijection) {
  Rng rng(9);
  MHSGroup h = heisenberg_mhs();
  MHSLes les = mhs_les(h, {unit_vec<Rational>(3, 2)}, rng);
  EXPECT_TRUE(les.les.sequence.exact()) << les.les.sequence.render();
  EXPECT_EQ(les.les.pi0_dims, (std::vector<size_t>{0, 0, 0}));
  EXPECT_EQ(les.les.h1z_dim, 1u);
  EXPECT_TRUE(les.les.pi1q_point);
  EXPECT_TRUE(les.les.middle_bijective());
  EXPECT_EQ(h1_dimension(les.z), 1u);
  EXPECT_EQ(h1_dimension(les.q), 0u);
  EXPECT_EQ(w0_f0_subgroups(les.q).w0.intersect(conjugate_fixed(w0_f0_subgroups(les.q).f0)).dim(), 0u);
}

TEST(MHSLes, DegenerateAndSplit) {
  Rng rng(10);
  MHSLes whole = mhs_les(tate_mhs(), {unit_vec<Rational>(1, 0)}, rng);
  EXPECT_TRUE(whole.les.sequence.exact());
  EXPECT_TRUE(whole.les.middle_bijective());

  // V + R(1) as a direct product.
  auto lie = NilpotentLieAlgebra::abelian(3);
  MHSGroup split = mhs_group(lie, heisenberg_weights(2), f0_only(3, {CVec{gi(1, 0), gi(0, 1), gi(0, 0)}}));
  MHSLes s = mhs_les(split, {unit_vec<Rational>(3, 2)}, rng);
  EXPECT_TRUE(s.les.sequence.exact()) << s.les.sequence.render();
  EXPECT_TRUE(s.les.middle_bijective());
  EXPECT_EQ(h1_dimension(split), h1_dimension(s.z) + h1_dimension(s.q));

  EXPECT_THROW(mhs_les(heisenberg_mhs(), {unit_vec<Rational>(3, 0)}, rng), MathError);
}
