#include <gtest/gtest.h>

#include "cohw/phin.hpp"
#include "cohw/rng.hpp"

using namespace cohw;

namespace {

// Cohomology of the total complex D -> D + D -> D with maps
// u -> ((phi - 1) u, N u) and (x, y) -> N x - (p phi - 1) y, written out directly.
struct TotalComplex {
  QMat first, second;
  std::vector<size_t> dims;
};

TotalComplex total_complex(const PhiNGroup& g) {
  size_t d = g.lie->dim();
  QMat id = QMat::identity(d);
  TotalComplex t{vstack(g.phi - id, g.monodromy), hstack(g.monodromy, QMat(d, d) - (g.p * g.phi - id)), {}};
  size_t r1 = rank(t.first), r2 = rank(t.second);
  t.dims = {d - r1, 2 * d - r2 - r1, d - r2};
  return t;
}

// f/e: the two-term complex D -> D, u -> (phi - 1) u.
std::vector<size_t> frobenius_complex(const PhiNGroup& g) {
  size_t d = g.lie->dim();
  size_t r = rank(g.phi - QMat::identity(d));
  return {d - r, d - r, 0};
}

bool same_span(size_t d, const std::vector<Vec>& a, const std::vector<Vec>& b) {
  QSubspace x(d, a), y(d, b);
  return x.dim() == y.dim() && x.contains(y) && y.contains(x);
}

}  // namespace

TEST(PhiNGroup, RejectsBadData) {
  auto l = NilpotentLieAlgebra::abelian(1);
  QMat zero(1, 1), one = QMat::identity(1);
  EXPECT_THROW(phin_group(l, zero), PhiNError);
  EXPECT_THROW(phin_group(l, one, one), PhiNError);  // N phi = p phi N forces N = 0 here
  EXPECT_NO_THROW(phin_group(l, one));
  QMat swap(3, 3);
  swap(0, 1) = 1;
  swap(1, 0) = 1;
  swap(2, 2) = 1;  // swapping x and y must negate z
  EXPECT_THROW(phin_group(heisenberg(), swap), PhiNError);
  swap(2, 2) = -1;
  EXPECT_NO_THROW(phin_group(heisenberg(), swap));
}

TEST(EpsilonDenormalize, SatisfiesIdentities) {
  Rng rng(31);
  for (int t = 0; t < 10; ++t) {
    PhiNGroup g = random_abelian_phin(rng, 3);
    LieCosimplicial e = epsilon_denormalize(g.lie, g.monodromy, 4);
    EXPECT_TRUE(check_identities(e).ok);
    for (int n = 1; n <= 4; ++n)
      for (int i = 0; i <= n; ++i)
        EXPECT_EQ(epsilon_frobenius(g.phi, g.p, n) * e.coface(n, i), e.coface(n, i) * epsilon_frobenius(g.phi, g.p, n - 1));
  }
}

TEST(SelmerQuotient, DegreeDimensions) {
  PhiNGroup g = heisenberg_isocrystal();
  LieCosimplicial ge = selmer_quotient_cosimplicial(g, SelmerVariant::GE, 3);
  LieCosimplicial fe = selmer_quotient_cosimplicial(g, SelmerVariant::FE, 3);
  for (size_t n = 0; n <= 3; ++n) {
    EXPECT_EQ(ge.obj[n]->dim(), 3 * (n + 1) * (n + 1));
    EXPECT_EQ(fe.obj[n]->dim(), 3 * (n + 1));
  }
}

TEST(SelmerQuotient, TateTwist) {
  PhiNGroup g = tate_twist_pattern();
  H1QuotientReport ge = h1_quotient(g, SelmerVariant::GE);
  ASSERT_TRUE(ge.dims);
  EXPECT_EQ(*ge.dims, (std::vector<size_t>{0, 1, 1}));
  EXPECT_EQ(*ge.dims, total_complex(g).dims);
  EXPECT_EQ(ge.dual_pi2, std::optional<size_t>(1));
  H1QuotientReport fe = h1_quotient(g, SelmerVariant::FE);
  EXPECT_EQ(*fe.dims, (std::vector<size_t>{0, 0, 0}));
}

TEST(SelmerQuotient, RandomAbelianAgainstTotalComplex) {
  Rng rng(7);
  for (int t = 0; t < 40; ++t) {
    PhiNGroup g = random_abelian_phin(rng, 3);
    SCOPED_TRACE(t);
    H1QuotientReport ge = h1_quotient(g, SelmerVariant::GE);
    TotalComplex oracle = total_complex(g);
    ASSERT_TRUE(ge.dims);
    EXPECT_EQ(*ge.dims, oracle.dims);
    EXPECT_EQ(*ge.dual_pi2, oracle.dims[2]);
    EXPECT_TRUE(same_span(g.lie->dim(), ge.pi0, d_phi1(g)));
    H1QuotientReport fe = h1_quotient(g, SelmerVariant::FE);
    EXPECT_EQ(*fe.dims, frobenius_complex(g));
  }
}

TEST(SelmerQuotient, Pi0IsPhiNFixedPart) {
  Rng rng(12);
  for (int t = 0; t < 15; ++t) {
    GradedAutomorphism a = random_graded_automorphism(rng, 5, 3);
    PhiNGroup g = phin_group(a.lie, a.phi);
    LieCosimplicial ge = selmer_quotient_cosimplicial(g, SelmerVariant::GE, 2);
    EXPECT_TRUE(same_span(g.lie->dim(), pi0_lie(ge), d_phi1(g)));
  }
}

TEST(SelmerQuotient, HeisenbergIsocrystal) {
  PhiNGroup v = heisenberg_isocrystal();
  EXPECT_TRUE(d_phi1(v).empty());
  H1QuotientReport q = h1_quotient(v, SelmerVariant::GE);
  EXPECT_TRUE(q.pi0.empty());
  EXPECT_FALSE(q.dims);  // not abelian
  // H1(U) is in bijection with H1(Z), a line.
  EXPECT_EQ(LiePi1(q.object).tangent_dimension(Vec(q.object.obj[1]->dim())), 1u);

  QMat phi_v(2, 2);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) phi_v(i, j) = v.phi(i, j);
  PhiNGroup quotient = phin_group(NilpotentLieAlgebra::abelian(2), phi_v);
  EXPECT_TRUE(d_phi1(quotient).empty());
  EXPECT_EQ(*h1_quotient(quotient, SelmerVariant::GE).dims, (std::vector<size_t>{0, 0, 0}));
  EXPECT_EQ(*h1_quotient(tate_twist_pattern(), SelmerVariant::GE).dims, (std::vector<size_t>{0, 1, 1}));

  Rng rng(5);
  CentralLes les = quotient_les(v, {unit_vec<Rational>(3, 2)}, rng);
  EXPECT_TRUE(les.sequence.exact()) << les.sequence.render();
  EXPECT_EQ(les.h1z_dim, 1u);
  EXPECT_EQ(les.h2z_dim, std::optional<size_t>(1));
  EXPECT_TRUE(les.middle_bijective());
}

TEST(SelmerQuotient, RandomQuotientSequences) {
  Rng rng(19);
  int checked = 0;
  for (int t = 0; t < 12; ++t) {
    PhiNGroup g = random_abelian_phin(rng, 3);
    auto z = kernel(g.monodromy);
    if (z.empty()) continue;
    CentralLes les = quotient_les(g, z, rng, 4);
    EXPECT_TRUE(les.sequence.exact()) << les.sequence.render();
    ++checked;
  }
  EXPECT_GT(checked, 0);
}

TEST(TwistedConjugacy, RandomGradedAutomorphisms) {
  Rng rng(2024);
  int transitive = 0;
  for (int t = 0; t < 100; ++t) {
    GradedAutomorphism a = random_graded_automorphism(rng, 5, 3);
    TwistedConjugacy c = twisted_conj_classify(a.lie, a.phi);
    EXPECT_TRUE(c.consistent);
    EXPECT_EQ(c.transitive, !has_graded_eigenvalue_one(*a.lie, a.phi)) << t;
    EXPECT_TRUE(same_span(a.lie->dim(), c.stabilizer, kernel(a.phi - QMat::identity(a.lie->dim()))));
    transitive += c.transitive;
  }
  EXPECT_GT(transitive, 0);
  EXPECT_LT(transitive, 100);
}

TEST(PhiNTorsor, TateTwistClasses) {
  PhiNGroup g = tate_twist_pattern();
  auto torsor = [&](long a, long b) { return PhiNTorsor{g, Vec{Rational(a)}, Vec{Rational(b)}}; };
  // Frobenius can be untwisted since phi - 1 is invertible; monodromy cannot.
  EXPECT_TRUE(phin_torsor_equivalent(torsor(0, 0), torsor(3, 0)));
  EXPECT_FALSE(phin_torsor_equivalent(torsor(0, 0), torsor(0, 1)));
  EXPECT_TRUE(phin_torsor_equivalent(torsor(5, 1), torsor(-1, 1)));
}

TEST(PhiNTorsor, RandomAbelianAgainstTotalComplex) {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    PhiNGroup g = random_abelian_phin(rng, 3);
    size_t d = g.lie->dim();
    TotalComplex oracle = total_complex(g);
    LieCosimplicial ge = selmer_quotient_cosimplicial(g, SelmerVariant::GE, 2);
    auto split = [&](const Vec& v) {
      return PhiNTorsor{g, Vec(v.begin(), v.begin() + static_cast<long>(d)), Vec(v.begin() + static_cast<long>(d), v.end())};
    };
    // Compatible data are exactly the kernel of the second map.
    for (int k = 0; k < 3; ++k) {
      Vec v = rng.rational_vec(2 * d, 3, 1);
      bool compatible = oracle.second.apply(v) == Vec(d);
      if (compatible) {
        EXPECT_NO_THROW(phin_torsor_cocycle(split(v), ge));
      } else {
        EXPECT_THROW(phin_torsor_cocycle(split(v), ge), PhiNError);
      }
    }
    auto z1 = kernel(oracle.second);
    std::vector<Vec> coboundaries;
    for (size_t i = 0; i < d; ++i) coboundaries.push_back(oracle.first.apply(unit_vec<Rational>(d, i)));
    QSubspace image(2 * d, coboundaries);
    for (int k = 0; k < 3 && !z1.empty(); ++k) {
      Vec x(2 * d), y(2 * d);
      for (const auto& v : z1) {
        x = add(x, scale(rng.rational(2, 1), v));
        y = add(y, scale(rng.rational(2, 1), v));
      }
      if (k == 0) y = add(x, coboundaries[rng.index(d)]);
      EXPECT_EQ(phin_torsor_equivalent(split(x), split(y)), image.contains(sub(x, y)));
    }
  }
}
