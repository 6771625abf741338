#include "cohw/phin.hpp"

#include <algorithm>

namespace cohw {

namespace {

QMat kron_identity(size_t copies, const QMat& m) { return kron(QMat::identity(copies), m); }

bool is_derivation(const NilpotentLieAlgebra& l, const QMat& n) {
  for (size_t i = 0; i < l.dim(); ++i)
    for (size_t j = i + 1; j < l.dim(); ++j) {
      Vec a = unit_vec<Rational>(l.dim(), i), b = unit_vec<Rational>(l.dim(), j);
      if (n.apply(l.bracket(a, b)) != add(l.bracket(n.apply(a), b), l.bracket(a, n.apply(b)))) return false;
    }
  return true;
}

}  // namespace

// ---- (phi, N) groups --------------------------------------------------------

void validate(const PhiNGroup& x) {
  if (!x.lie) throw PhiNError("missing Lie algebra");
  size_t d = x.lie->dim();
  if (x.phi.rows() != d || x.phi.cols() != d) throw PhiNError("phi has the wrong size");
  if (x.monodromy.rows() != d || x.monodromy.cols() != d) throw PhiNError("N has the wrong size");
  if (x.p <= 1) throw PhiNError("p must exceed 1");
  if (rank(x.phi) != d) throw PhiNError("phi is not invertible");
  if (auto why = lie_hom_defect(*x.lie, *x.lie, x.phi)) throw PhiNError("phi does not preserve the bracket: " + *why);
  if (!is_derivation(*x.lie, x.monodromy)) throw PhiNError("N is not a derivation");
  if (x.monodromy * x.phi != x.p * (x.phi * x.monodromy)) throw PhiNError("N phi != p phi N");
}

PhiNGroup phin_group(LiePtr lie, QMat phi, std::optional<QMat> monodromy, Rational p) {
  size_t d = lie->dim();
  PhiNGroup x{std::move(lie), std::move(phi), monodromy ? *monodromy : QMat(d, d), std::move(p)};
  validate(x);
  return x;
}

LieCosimplicial epsilon_denormalize(const LiePtr& lie, const QMat& monodromy, int top) {
  size_t d = lie->dim();
  LieCosimplicial e;
  for (int n = 0; n <= top; ++n) e.obj.push_back(epsilon_extension(*lie, static_cast<size_t>(n)));
  QMat id = QMat::identity(d);
  e.d.resize(static_cast<size_t>(top) + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      // Slots: 0 is the main part, s >= 1 the coefficient of e_s.
      QMat m((static_cast<size_t>(n) + 1) * d, static_cast<size_t>(n) * d);
      m.put(0, 0, id);
      if (i == 0) m.put(d, 0, monodromy);
      for (int s = 1; s < n; ++s) {
        int t = s < i ? s : s + 1;
        if (i == 0) t = s + 1;
        m.put(static_cast<size_t>(t) * d, static_cast<size_t>(s) * d, id);
        if (i > 0 && s == i) m.put(static_cast<size_t>(s) * d, static_cast<size_t>(s) * d, id);
      }
      e.d[static_cast<size_t>(n)].push_back(m);
    }
  for (int n = 0; n < top; ++n) {
    e.s.emplace_back();
    for (int j = 0; j <= n; ++j) {
      QMat m((static_cast<size_t>(n) + 1) * d, (static_cast<size_t>(n) + 2) * d);
      m.put(0, 0, id);
      for (int s = 1; s <= n + 1; ++s) {
        if (s == j + 1) continue;
        int t = s <= j ? s : s - 1;
        m.put(static_cast<size_t>(t) * d, static_cast<size_t>(s) * d, id);
      }
      e.s.back().push_back(m);
    }
  }
  IdentityReport rep = check_identities(e);
  if (!rep.ok) throw CosimplicialError("epsilon denormalisation fails the identities: " + rep.failure);
  return e;
}

QMat epsilon_frobenius(const QMat& phi, const Rational& p, int n) {
  QMat m = QMat::identity(static_cast<size_t>(n) + 1);
  for (int s = 1; s <= n; ++s) m(static_cast<size_t>(s), static_cast<size_t>(s)) = p;
  return kron(m, phi);
}

const char* variant_name(SelmerVariant v) { return v == SelmerVariant::FE ? "f/e" : "g/e"; }

LieCosimplicial selmer_quotient_cosimplicial(const PhiNGroup& x, SelmerVariant v, int top) {
  validate(x);
  if (top < 1) throw CosimplicialError("Selmer quotient objects need degree 1");
  if (v == SelmerVariant::FE) return cogenerate(two_term_pattern(x.lie, x.lie, x.phi, QMat::identity(x.lie->dim()), top));

  LieCosimplicial vertical = epsilon_denormalize(x.lie, x.monodromy, top);
  std::vector<LieCosimplicial> horizontal;
  for (int n = 0; n <= top; ++n)
    horizontal.push_back(cogenerate(two_term_pattern(vertical.obj[static_cast<size_t>(n)], vertical.obj[static_cast<size_t>(n)],
                                                 epsilon_frobenius(x.phi, x.p, n), QMat::identity(vertical.obj[static_cast<size_t>(n)]->dim()), top)));
  // Horizontal degree m has m + 1 nonzero blocks, listed first.
  LieCosimplicial out;
  for (int n = 0; n <= top; ++n) out.obj.push_back(horizontal[static_cast<size_t>(n)].obj[static_cast<size_t>(n)]);
  out.d.resize(static_cast<size_t>(top) + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i)
      out.d[static_cast<size_t>(n)].push_back(horizontal[static_cast<size_t>(n)].coface(n, i) *
                                              kron_identity(static_cast<size_t>(n), vertical.coface(n, i)));
  for (int n = 0; n < top; ++n) {
    out.s.emplace_back();
    for (int i = 0; i <= n; ++i)
      out.s.back().push_back(kron_identity(static_cast<size_t>(n) + 1, vertical.codegeneracy(n, i)) *
                             horizontal[static_cast<size_t>(n) + 1].codegeneracy(n, i));
  }
  IdentityReport rep = check_identities(out);
  if (!rep.ok) throw CosimplicialError("g/e object fails the identities: " + rep.failure);
  return out;
}

std::vector<Vec> d_phi1(const PhiNGroup& x) {
  validate(x);
  return kernel(vstack(x.phi - QMat::identity(x.lie->dim()), x.monodromy));
}

H1QuotientReport h1_quotient(const PhiNGroup& x, SelmerVariant v) {
  H1QuotientReport r{selmer_quotient_cosimplicial(x, v, 3), {}, {}, {}};
  r.pi0 = pi0_lie(r.object);
  if (x.lie->is_abelian()) {
    r.dims = pi_abelian(r.object);
    if (v == SelmerVariant::GE) {
      size_t d = x.lie->dim();
      r.dual_pi2 = d - rank(hstack(x.p * x.phi - QMat::identity(d), x.monodromy));
    }
  }
  return r;
}

// ---- twisted conjugation ----------------------------------------------------

TwistedConjugacy twisted_conj_classify(const LiePtr& d, const QMat& phi) {
  if (auto why = lie_hom_defect(*d, *d, phi)) throw PhiNError("phi is not an automorphism: " + *why);
  if (rank(phi) != d->dim()) throw PhiNError("phi is not invertible");
  OrbitEngine engine({d, d, QMat::identity(d->dim()), phi, {}});
  TwistedConjugacy t;
  t.transitive = engine.transitive();
  t.stabilizer = engine.stabilizer(Vec(d->dim()));
  t.consistent = t.transitive == t.stabilizer.empty();
  return t;
}

bool has_graded_eigenvalue_one(const NilpotentLieAlgebra& lie, const QMat& phi) {
  const Frame& f = lie.frame();
  QMat m = f.identity ? phi : f.to_adapted * phi * f.from_adapted;
  for (int k = 1; k <= std::max(1, lie.nilpotency_class()); ++k) {
    auto idx = lie.layer_indices(k);
    QMat b(idx.size(), idx.size());
    for (size_t r = 0; r < idx.size(); ++r)
      for (size_t c = 0; c < idx.size(); ++c) b(r, c) = m(idx[r], idx[c]) - (r == c ? 1 : 0);
    if (rank(b) < idx.size()) return true;
  }
  return false;
}

// ---- torsors ----------------------------------------------------------------

Vec phin_torsor_cocycle(const PhiNTorsor& q, const LieCosimplicial& ge) {
  size_t d = q.group.lie->dim();
  if (q.frobenius.size() != d || q.monodromy.size() != d) throw PhiNError("torsor data has the wrong size");
  if (ge.top() < 2 || ge.obj[1]->dim() != 4 * d) throw PhiNError("not the g/e object of this group");
  // Degree 1: block [1]->>[0] = (main, e_1), then block [1]->>[1] = (main, e_1).
  auto assemble = [&](const Vec& c) {
    Vec x(4 * d);
    for (size_t i = 0; i < d; ++i) {
      x[d + i] = q.monodromy[i];
      x[2 * d + i] = q.frobenius[i];
      x[3 * d + i] = c[i];
    }
    return x;
  };
  const auto& o2 = *ge.obj[2];
  auto defect = [&](const Vec& c) {
    Vec x = assemble(c);
    return sub(ge.coface(2, 1).apply(x), group_mul(o2, ge.coface(2, 2).apply(x), ge.coface(2, 0).apply(x)));
  };
  Vec base = defect(Vec(d));
  std::vector<Vec> cols;
  for (size_t i = 0; i < d; ++i) cols.push_back(sub(defect(unit_vec<Rational>(d, i)), base));
  auto sol = solve_affine(QMat::from_cols(cols, o2.dim()), neg(base));
  if (!sol.particular) throw PhiNError("Frobenius and monodromy data are incompatible");
  Vec x = assemble(*sol.particular);
  if (!is_cocycle(ge, x)) throw PhiNError("internal: solved torsor datum is not a cocycle");
  return x;
}

bool phin_torsor_equivalent(const PhiNTorsor& a, const PhiNTorsor& b) {
  const auto& g = a.group;
  const auto& h = b.group;
  if (g.lie != h.lie || g.phi != h.phi || g.monodromy != h.monodromy || g.p != h.p)
    throw PhiNError("torsors under different (phi, N)-groups");
  LieCosimplicial ge = selmer_quotient_cosimplicial(g, SelmerVariant::GE, 2);
  LiePi1 pi(ge);
  return pi.equivalent(phin_torsor_cocycle(a, ge), phin_torsor_cocycle(b, ge)).found;
}

// ---- exact sequence ---------------------------------------------------------

CentralLes quotient_les(const PhiNGroup& u, const std::vector<Vec>& central, Rng& rng, int samples) {
  validate(u);
  size_t d = u.lie->dim();
  QSubspace z(d, central);
  for (const auto& v : z.basis())
    if (!z.contains(u.phi.apply(v)) || !z.contains(u.monodromy.apply(v))) throw PhiNError("the central ideal is not stable under phi and N");
  LieCosimplicial ge = selmer_quotient_cosimplicial(u, SelmerVariant::GE, 3);
  std::vector<std::vector<Vec>> spans;
  for (int n = 0; n <= ge.top(); ++n) {
    size_t total = ge.obj[static_cast<size_t>(n)]->dim();
    size_t slots = static_cast<size_t>(n) + 1;
    spans.emplace_back();
    for (size_t block = 0; block < slots; ++block)
      for (size_t s = 0; s < slots; ++s)
        for (const auto& v : z.basis()) {
          Vec w(total);
          std::copy(v.begin(), v.end(), w.begin() + static_cast<long>((block * slots + s) * d));
          spans.back().push_back(w);
        }
  }
  return les_unipotent_central(split_extension(ge, spans, true), rng, samples);
}

// ---- instances --------------------------------------------------------------

PhiNGroup tate_twist_pattern(const Rational& p) {
  QMat phi(1, 1);
  phi(0, 0) = 1 / p;
  return phin_group(NilpotentLieAlgebra::abelian(1, "t"), phi, std::nullopt, p);
}

PhiNGroup heisenberg_isocrystal() {
  QMat phi(3, 3);
  // Companion matrix of x^2 - x/2 + 1/2; its determinant 1/2 is phi on the centre.
  phi(0, 1) = frac(-1, 2);
  phi(1, 0) = 1;
  phi(1, 1) = frac(1, 2);
  phi(2, 2) = frac(1, 2);
  return phin_group(heisenberg(), phi, std::nullopt, 2);
}

PhiNGroup random_abelian_phin(Rng& rng, size_t max_dim, const Rational& p) {
  static const long nums[] = {1, 1, 1, 2, 4, 3};
  static const long dens[] = {4, 2, 1, 1, 1, 1};
  size_t d = 1 + rng.index(max_dim);
  std::vector<Rational> lambda;
  for (size_t i = 0; i < d; ++i) {
    size_t k = rng.index(6);
    lambda.push_back(frac(nums[k], dens[k]));
  }
  QMat phi(d, d), n(d, d);
  for (size_t i = 0; i < d; ++i) phi(i, i) = lambda[i];
  for (size_t i = 0; i < d; ++i)
    for (size_t j = 0; j < d; ++j)
      if (lambda[j] * p == lambda[i]) n(j, i) = rng.rational(3, 1);
  QMat basis;
  do {
    basis = QMat(d, d);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = 0; j < d; ++j) basis(i, j) = rng.rational(2, 1);
  } while (rank(basis) < d);
  QMat inv = *inverse(basis);
  return phin_group(NilpotentLieAlgebra::abelian(d), basis * phi * inv, basis * n * inv, p);
}

GradedAutomorphism random_graded_automorphism(Rng& rng, size_t max_dim, int max_class) {
  if (rng.index(4) == 0) {
    size_t d = 1 + rng.index(max_dim);
    QMat phi;
    do {
      phi = QMat(d, d);
      for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j) phi(i, j) = rng.rational(2, 2);
      // Upper unitriangular perturbations keep eigenvalue 1 in play.
      if (rng.coin())
        for (size_t i = 0; i < d; ++i)
          for (size_t j = 0; j <= i; ++j) phi(i, j) = i == j ? 1 : 0;
    } while (rank(phi) < d);
    return {NilpotentLieAlgebra::abelian(d), phi};
  }
  RandomLieOptions opt;
  opt.max_dim = max_dim;
  opt.max_class = max_class;
  LiePtr base = random_nilpotent(rng, opt);
  LiePtr gr = associated_graded(*base);
  static const long nums[] = {1, -1, 2, 1, 3, -2};
  static const long dens[] = {1, 1, 1, 2, 1, 1};
  size_t k = rng.index(6);
  Rational t = frac(nums[k], dens[k]);
  const auto& weight = base->frame().weight;
  QMat scale(gr->dim(), gr->dim());
  for (size_t i = 0; i < gr->dim(); ++i) {
    Rational w = 1;
    for (int e = 0; e < weight[i]; ++e) w *= t;
    scale(i, i) = w;
  }
  QMat phi = adjoint_matrix(*gr, rng.rational_vec(gr->dim(), 2, 1)) * scale;
  if (auto why = lie_hom_defect(*gr, *gr, phi)) throw LieError("internal: graded scaling is not an automorphism: " + *why);
  return {gr, phi};
}

}  // namespace cohw
