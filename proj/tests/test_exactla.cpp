#include <gtest/gtest.h>

#include "cohw/exactla.hpp"
#include "cohw/rng.hpp"

using namespace cohw;

namespace {

constexpr int kIterations = 200;

QMat random_matrix(Rng& rng, size_t r, size_t c, int zero_bias) {
  QMat m(r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t j = 0; j < c; ++j)
      if (rng.uniform(0, 9) >= zero_bias) m(i, j) = rng.rational(9, 4);
  return m;
}

// Rank by fraction-free elimination on integer-scaled rows, independent of rref().
size_t bareiss_rank(const QMat& a) {
  std::vector<std::vector<mpz_class>> m(a.rows(), std::vector<mpz_class>(a.cols()));
  for (size_t i = 0; i < a.rows(); ++i) {
    mpz_class l = 1;
    for (size_t j = 0; j < a.cols(); ++j) l = lcm(l, a(i, j).get_den());
    for (size_t j = 0; j < a.cols(); ++j) m[i][j] = mpz_class(a(i, j) * l);
  }
  size_t r = 0;
  for (size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    size_t p = r;
    while (p < a.rows() && m[p][c] == 0) ++p;
    if (p == a.rows()) continue;
    std::swap(m[p], m[r]);
    for (size_t i = r + 1; i < a.rows(); ++i) {
      mpz_class f = m[i][c];
      for (size_t j = 0; j < a.cols(); ++j) m[i][j] = m[i][j] * m[r][c] - f * m[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace

TEST(ExactLa, ScalarParsingRoundTrip) {
  EXPECT_EQ(to_string(parse_gaussian("1+2i")), "1+2*i");
  EXPECT_EQ(to_string(parse_gaussian("-i")), "0-1*i");
  EXPECT_EQ(to_string(parse_gaussian("1/2-3/4*i")), "1/2-3/4*i");
  EXPECT_EQ(to_string(parse_gaussian("7")), "7+0*i");
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_THROW(parse_rational("1/0"), MathError);
  EXPECT_THROW(parse_rational("x"), MathError);
}

TEST(ExactLa, GaussianFieldAxioms) {
  Rng rng(11);
  for (int it = 0; it < kIterations; ++it) {
    Gaussian a(rng.rational(9, 5), rng.rational(9, 5)), b(rng.rational(9, 5), rng.rational(9, 5));
    if (b.is_zero()) continue;
    EXPECT_EQ((a / b) * b, a);
    EXPECT_EQ((a * b).conj(), a.conj() * b.conj());
  }
}

TEST(ExactLa, RrefInvariants) {
  Rng rng(1);
  for (int it = 0; it < kIterations; ++it) {
    size_t r = 1 + rng.index(6), c = 1 + rng.index(6);
    QMat a = random_matrix(rng, r, c, static_cast<int>(rng.uniform(0, 8)));
    Echelon<Rational> e = rref(a);
    EXPECT_EQ(rref(e.reduced).reduced, e.reduced);
    EXPECT_EQ(e.rank(), bareiss_rank(a));
    auto ker = kernel(a);
    EXPECT_EQ(e.rank() + ker.size(), c);
    for (const auto& v : ker) EXPECT_TRUE(is_zero_vec(a.apply(v)));
  }
}

TEST(ExactLa, AffineSolutionsSatisfySystem) {
  Rng rng(2);
  int consistent = 0;
  for (int it = 0; it < kIterations; ++it) {
    size_t r = 1 + rng.index(5), c = 1 + rng.index(5);
    QMat a = random_matrix(rng, r, c, 5);
    Vec b = rng.coin() ? a.apply(rng.rational_vec(c, 5, 3)) : rng.rational_vec(r, 5, 3);
    auto s = solve_affine(a, b);
    if (s.particular) {
      ++consistent;
      EXPECT_EQ(a.apply(*s.particular), b);
    } else {
      // Inconsistent exactly when b raises the rank.
      EXPECT_GT(rank(hstack(a, QMat::from_cols({b}, r))), rank(a));
    }
  }
  EXPECT_GT(consistent, kIterations / 3);
}

TEST(ExactLa, InverseAndSubspaceAlgebra) {
  Rng rng(3);
  for (int it = 0; it < kIterations; ++it) {
    size_t n = 1 + rng.index(5);
    QMat a = random_matrix(rng, n, n, 2);
    auto inv = inverse(a);
    EXPECT_EQ(inv.has_value(), rank(a) == n);
    if (inv) EXPECT_EQ(a * *inv, QMat::identity(n));
    std::vector<Vec> su, sv;
    for (size_t k = 0; k < rng.index(n + 1); ++k) su.push_back(rng.rational_vec(n, 3, 2));
    for (size_t k = 0; k < rng.index(n + 1); ++k) sv.push_back(rng.rational_vec(n, 3, 2));
    QSubspace u(n, su), v(n, sv);
    QSubspace s = u.sum(v), i = u.intersect(v);
    EXPECT_EQ(s.dim() + i.dim(), u.dim() + v.dim());
    EXPECT_TRUE(u.contains(i) && v.contains(i) && s.contains(u) && s.contains(v));
    // Quotient coordinates vanish exactly on the subspace.
    for (const auto& x : su) EXPECT_TRUE(is_zero_vec(u.quotient_coords(x)));
    EXPECT_EQ(u.complement_coords().size(), n - u.dim());
  }
}

TEST(ExactLa, ConjugateFixedPoints) {
  // span(e1 + i e2) has no nonzero real points.
  CSubspace w(2, {CVec{Gaussian(1), Gaussian(0, 1)}});
  EXPECT_EQ(conjugate_fixed(w).dim(), 0u);
  // A complexified rational subspace is recovered exactly.
  Rng rng(4);
  for (int it = 0; it < 50; ++it) {
    size_t n = 1 + rng.index(4);
    std::vector<Vec> span;
    for (size_t k = 0; k < rng.index(n + 1); ++k) span.push_back(rng.rational_vec(n, 4, 3));
    QSubspace v(n, span);
    EXPECT_EQ(conjugate_fixed(to_gaussian(v)), v);
    // W + conj(W) for W = span(v + i u) contains v and u.
    CVec mix(n);
    Vec a = rng.rational_vec(n, 4, 3), b = rng.rational_vec(n, 4, 3);
    for (size_t k = 0; k < n; ++k) mix[k] = Gaussian(a[k], b[k]);
    CSubspace ww(n, {mix});
    QSubspace fixed = conjugate_fixed(ww.sum(conj(ww)));
    EXPECT_TRUE(fixed.contains(a) && fixed.contains(b));
  }
}

TEST(ExactLa, RuntimeFieldTagsRejectMixing) {
  ExactMatrix q(QMat::identity(2));
  ExactMatrix c(CMat::identity(2));
  EXPECT_THROW(multiply(q, c), MathError);
  EXPECT_THROW(solve_affine(q, {Scalar(Gaussian(1, 1)), Scalar(Gaussian(0))}), MathError);
  auto s = solve_affine(c, {Scalar(Gaussian(1, 1)), Scalar(Gaussian(2))});
  ASSERT_TRUE(s.particular);
  EXPECT_EQ((*s.particular)[0].str(), "1+1*i");
}

TEST(ExactLa, FiltrationNesting) {
  QSubspace a(3, {Vec{1, 0, 0}});
  QSubspace b(3, {Vec{1, 0, 0}, Vec{0, 1, 0}});
  FilteredSpace<Rational> w(3, FiltrationDirection::Ascending, {{-2, a}, {-1, b}});
  EXPECT_EQ(w.at(-5).dim(), 0u);
  EXPECT_EQ(w.at(4).dim(), 3u);
  EXPECT_THROW(FilteredSpace<Rational>(3, FiltrationDirection::Ascending, {{-2, b}, {-1, a}}), MathError);
}
