#include <algorithm>

#include "cohw/cosimpl.hpp"

namespace cohw {

LiePtr LieCarrier::product(const std::vector<Object>& blocks) {
  if (blocks.size() == 1) return blocks[0];
  return direct_sum(blocks).algebra;
}

QMat LieCarrier::assemble(const std::vector<Object>& src_blocks, const std::vector<Object>& tgt_blocks,
                          const std::vector<BlockComponent<Hom>>& comps) {
  if (comps.size() != tgt_blocks.size()) throw CosimplicialError("one component per target block is required");
  std::vector<size_t> col_off{0}, row_off{0};
  for (const auto& b : src_blocks) col_off.push_back(col_off.back() + b->dim());
  for (const auto& b : tgt_blocks) row_off.push_back(row_off.back() + b->dim());
  QMat m(row_off.back(), col_off.back());
  for (size_t t = 0; t < comps.size(); ++t) {
    const auto& c = comps[t];
    if (c.map.rows() != tgt_blocks[t]->dim() || c.map.cols() != src_blocks.at(c.source)->dim())
      throw CosimplicialError("block component has the wrong shape");
    m.put(row_off[t], col_off[c.source], c.map);
  }
  return m;
}

// ---- cohomotopy -------------------------------------------------------------

std::vector<Vec> pi0_lie(const LieCosimplicial& u) {
  if (u.top() < 1) return QSubspace::full(u.obj[0]->dim()).basis();
  return QSubspace(u.obj[0]->dim(), kernel(u.coface(1, 0) - u.coface(1, 1))).basis();
}

std::vector<QMat> moore_differentials(const LieCosimplicial& u) {
  std::vector<QMat> diff;
  for (int n = 0; n < u.top(); ++n) {
    QMat m(u.obj[static_cast<size_t>(n) + 1]->dim(), u.obj[static_cast<size_t>(n)]->dim());
    for (int k = 0; k <= n + 1; ++k) m = k % 2 == 0 ? m + u.coface(n + 1, k) : m - u.coface(n + 1, k);
    diff.push_back(std::move(m));
  }
  return diff;
}

std::vector<size_t> complex_cohomology(const std::vector<size_t>& dims, const std::vector<QMat>& diff) {
  std::vector<size_t> ranks;
  for (const auto& d : diff) ranks.push_back(rank(d));
  std::vector<size_t> h;
  for (size_t i = 0; i < diff.size(); ++i) h.push_back(dims[i] - ranks[i] - (i > 0 ? ranks[i - 1] : 0));
  return h;
}

std::vector<size_t> pi_abelian(const LieCosimplicial& u) {
  std::vector<size_t> dims;
  for (const auto& o : u.obj) {
    if (!o->is_abelian()) throw CosimplicialError("pi_abelian needs abelian objects");
    dims.push_back(o->dim());
  }
  return complex_cohomology(dims, moore_differentials(u));
}

LiePi1::LiePi1(LieCosimplicial u)
    : u_(std::move(u)), engine_(OrbitProblem{u_.obj.at(0), u_.obj.at(1), u_.coface(1, 1), u_.coface(1, 0), {}}) {
  if (u_.top() < 2) throw CosimplicialError("pi^1 deciders need degree 2");
}

bool LiePi1::is_cocycle(const Vec& c) const { return cohw::is_cocycle(u_, c); }

void LiePi1::require_cocycle(const Vec& c) const {
  if (c.size() != u_.obj[1]->dim()) throw CosimplicialError("cocycle has the wrong dimension");
  if (!is_cocycle(c)) throw CosimplicialError("malformed cocycle: d^1(u) != d^2(u) d^0(u)");
}

bool LiePi1::is_trivial(const Vec& c) const {
  require_cocycle(c);
  return engine_.solve(Vec(c.size()), c).found;
}

OrbitMatch LiePi1::equivalent(const Vec& c, const Vec& c2) const {
  require_cocycle(c);
  require_cocycle(c2);
  return engine_.solve(c, c2);
}

std::vector<Vec> LiePi1::stabilizer(const Vec& c) const {
  require_cocycle(c);
  return engine_.stabilizer(c);
}

size_t LiePi1::tangent_dimension(const Vec& c) const {
  require_cocycle(c);
  const auto& l1 = *u_.obj[1];
  const auto& l2 = *u_.obj[2];
  LiePtr e2 = epsilon_extension(l2, 1);
  QMat id2 = QMat::identity(2);
  QMat d0 = kron(id2, u_.coface(2, 0)), d1 = kron(id2, u_.coface(2, 1)), d2 = kron(id2, u_.coface(2, 2));
  size_t n1 = l1.dim(), n2 = l2.dim();
  QMat lin(n2, n1);
  for (size_t j = 0; j < n1; ++j) {
    Vec x(2 * n1);
    for (size_t i = 0; i < n1; ++i) x[i] = c[i];
    x[n1 + j] = 1;
    Vec f = group_mul(*e2, {d2.apply(x), d0.apply(x), neg(d1.apply(x))});
    for (size_t i = 0; i < n2; ++i) {
      if (sgn(f[i]) != 0) throw CosimplicialError("internal: cocycle defect at the base point");
      lin(i, j) = f[n2 + i];
    }
  }
  size_t tangent = n1 - rank(lin);
  size_t orbit = u_.obj[0]->dim() - engine_.stabilizer(c).size();
  return tangent - orbit;
}

std::optional<Vec> random_cocycle(const LieCosimplicial& u, Rng& rng, int attempts) {
  const auto& l1 = *u.obj.at(1);
  if (u.top() < 2) return rng.rational_vec(l1.dim(), 3, 2);
  const auto& l2 = *u.obj[2];
  const QMat& d0 = u.coface(2, 0);
  const QMat& d1 = u.coface(2, 1);
  const QMat& d2 = u.coface(2, 2);
  auto defect = [&](const Vec& c) { return group_mul(l2, {d2.apply(c), d0.apply(c), neg(d1.apply(c))}); };
  QMat lin = d0 + d2 - d1;
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Vec c(l1.dim());
    bool ok = true;
    for (int k = 1; k <= l1.nilpotency_class() && ok; ++k) {
      Vec rk = l2.layer(defect(c), k);
      std::vector<size_t> idx = l1.layer_indices(k);
      QMat m(rk.size(), idx.size());
      std::vector<Vec> steps;
      for (size_t j = 0; j < idx.size(); ++j) {
        steps.push_back(l1.from_adapted(unit_vec<Rational>(l1.dim(), idx[j])));
        m.set_col(j, l2.layer(lin.apply(steps.back()), k));
      }
      auto sol = solve_affine(m, neg(rk));
      if (!sol.particular) {
        ok = false;
        break;
      }
      Vec y = *sol.particular;
      for (const auto& kv : sol.kernel) axpy(rng.rational(3, 2), kv, y);
      Vec step(l1.dim());
      for (size_t j = 0; j < idx.size(); ++j) axpy(y[j], steps[j], step);
      c = group_mul(l1, c, step);
    }
    if (ok && is_zero_vec(defect(c))) return c;
  }
  return std::nullopt;
}

// ---- constructions ----------------------------------------------------------

LieCosimplicial embed_complex(const std::vector<size_t>& dims, const std::vector<QMat>& diff) {
  if (diff.size() + 1 != dims.size()) throw CosimplicialError("complex needs one differential per degree step");
  LieCosimplicial u;
  for (size_t n : dims) u.obj.push_back(NilpotentLieAlgebra::abelian(n));
  u.d.resize(dims.size());
  for (size_t n = 1; n < dims.size(); ++n)
    for (size_t i = 0; i <= n; ++i)
      u.d[n].push_back(i == n ? (n % 2 == 0 ? diff[n - 1] : Rational(-1) * diff[n - 1]) : QMat(dims[n], dims[n - 1]));
  return u;
}

LieCosimplicial direct_sum(const std::vector<LieCosimplicial>& parts) {
  LieCosimplicial u;
  int top = parts.at(0).top();
  for (const auto& p : parts)
    if (p.top() != top) throw CosimplicialError("direct sum of objects with different tops");
  u.d.resize(static_cast<size_t>(top) + 1);
  for (int n = 0; n <= top; ++n) {
    std::vector<LiePtr> objs;
    for (const auto& p : parts) objs.push_back(p.obj[static_cast<size_t>(n)]);
    u.obj.push_back(direct_sum(objs).algebra);
    if (n == 0) continue;
    for (int i = 0; i <= n; ++i) {
      QMat m(0, 0);
      for (size_t k = 0; k < parts.size(); ++k)
        m = k == 0 ? parts[k].coface(n, i) : block_diag(m, parts[k].coface(n, i));
      u.d[static_cast<size_t>(n)].push_back(m);
    }
  }
  bool with_s = std::all_of(parts.begin(), parts.end(), [](const LieCosimplicial& p) { return !p.semi(); });
  if (with_s)
    for (int n = 0; n < top; ++n) {
      u.s.emplace_back();
      for (int i = 0; i <= n; ++i) {
        QMat m(0, 0);
        for (size_t k = 0; k < parts.size(); ++k)
          m = k == 0 ? parts[k].codegeneracy(n, i) : block_diag(m, parts[k].codegeneracy(n, i));
        u.s.back().push_back(m);
      }
    }
  return u;
}

LieCosimplicial change_basis(const LieCosimplicial& u, const std::vector<QMat>& basis) {
  LieCosimplicial out = u;
  std::vector<QMat> inv;
  for (size_t n = 0; n < u.obj.size(); ++n) {
    if (!u.obj[n]->is_abelian()) throw CosimplicialError("change_basis needs abelian objects");
    auto i = inverse(basis.at(n));
    if (!i) throw CosimplicialError("change of basis is singular");
    inv.push_back(*i);
  }
  for (size_t n = 1; n < u.obj.size(); ++n)
    for (auto& m : out.d[n]) m = basis[n] * m * inv[n - 1];
  for (size_t n = 0; n < out.s.size(); ++n)
    for (auto& m : out.s[n]) m = basis[n] * m * inv[n + 1];
  return out;
}

namespace {

QMat random_invertible(Rng& rng, size_t n) {
  while (true) {
    QMat m(n, n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) m(i, j) = Rational(rng.uniform(-2, 2));
    if (rank(m) == n) return m;
  }
}

// A complex built from pieces Q -> Q (identity) and lone Q's, then scrambled.
LieCosimplicial random_complex(Rng& rng, int top) {
  std::vector<size_t> dims(static_cast<size_t>(top) + 1, 0);
  std::vector<std::vector<std::pair<size_t, size_t>>> arrows(static_cast<size_t>(top));
  size_t pieces = 1 + rng.index(3);
  for (size_t k = 0; k < pieces; ++k) {
    size_t deg = rng.index(static_cast<size_t>(top) + 1);
    if (deg < static_cast<size_t>(top) && rng.coin()) {
      arrows[deg].push_back({dims[deg], dims[deg + 1]});
      ++dims[deg];
      ++dims[deg + 1];
    } else {
      ++dims[deg];
    }
  }
  std::vector<QMat> diff;
  for (int n = 0; n < top; ++n) {
    QMat m(dims[static_cast<size_t>(n) + 1], dims[static_cast<size_t>(n)]);
    for (auto [src, tgt] : arrows[static_cast<size_t>(n)]) m(tgt, src) = 1;
    diff.push_back(m);
  }
  std::vector<QMat> p;
  for (size_t n : dims) p.push_back(random_invertible(rng, n));
  for (size_t n = 0; n < diff.size(); ++n) diff[n] = p[n + 1] * diff[n] * *inverse(p[n]);
  return embed_complex(dims, diff);
}

// Degreewise tensor product X^n (x) Y^n with d^i (x) d^i.
LieCosimplicial tensor_diagonal(const LieCosimplicial& x, const LieCosimplicial& y) {
  LieCosimplicial u;
  u.d.resize(x.obj.size());
  for (size_t n = 0; n < x.obj.size(); ++n) {
    u.obj.push_back(NilpotentLieAlgebra::abelian(x.obj[n]->dim() * y.obj[n]->dim()));
    if (n == 0) continue;
    for (size_t i = 0; i <= n; ++i) u.d[n].push_back(kron(x.d[n][i], y.d[n][i]));
  }
  return u;
}

}  // namespace

LieCosimplicial random_semi_vector(Rng& rng, int top) {
  std::vector<LieCosimplicial> parts;
  size_t count = 1 + rng.index(2);
  for (size_t k = 0; k < count; ++k) {
    switch (rng.index(3)) {
      case 0: parts.push_back(random_complex(rng, top)); break;
      case 1: {
        // Cogenerate a short complex and keep the cofaces.
        int t = 1 + static_cast<int>(rng.index(2));
        LieCosimplicial c = random_complex(rng, t);
        LieCosimplicial padded = c;
        for (int n = t + 1; n <= top; ++n) {
          padded.obj.push_back(NilpotentLieAlgebra::abelian(0));
          padded.d.emplace_back();
          for (int i = 0; i <= n; ++i) padded.d.back().push_back(QMat(0, padded.obj[static_cast<size_t>(n) - 1]->dim()));
        }
        parts.push_back(truncate(cogenerate(padded), top));
        break;
      }
      default: {
        LieCosimplicial a = random_complex(rng, top), b = random_complex(rng, top);
        parts.push_back(tensor_diagonal(a, b));
      }
    }
  }
  LieCosimplicial u = direct_sum(parts);
  std::vector<QMat> p;
  for (const auto& o : u.obj) p.push_back(random_invertible(rng, o->dim()));
  return change_basis(u, p);
}

// ---- bi-semi-cosimplicial ---------------------------------------------------

namespace {

// Composite of horizontal cofaces from A^{k',q} skipping `missing`.
QMat h_mono(const BiSemi& a, int kp, int q, const std::vector<int>& missing) {
  QMat m = QMat::identity(a.dim[static_cast<size_t>(kp)][static_cast<size_t>(q)]);
  int deg = kp;
  for (int x : missing) {
    ++deg;
    m = a.h[static_cast<size_t>(deg)][static_cast<size_t>(q)][static_cast<size_t>(x)] * m;
  }
  return m;
}

QMat v_mono(const BiSemi& a, int p, int lp, const std::vector<int>& missing) {
  QMat m = QMat::identity(a.dim[static_cast<size_t>(p)][static_cast<size_t>(lp)]);
  int deg = lp;
  for (int x : missing) {
    ++deg;
    m = a.v[static_cast<size_t>(p)][static_cast<size_t>(deg)][static_cast<size_t>(x)] * m;
  }
  return m;
}

QMat moore(const std::vector<QMat>& faces) {
  QMat m = faces[0];
  for (size_t k = 1; k < faces.size(); ++k) m = k % 2 == 0 ? m + faces[k] : m - faces[k];
  return m;
}

}  // namespace

IdentityReport check_bisemi(const BiSemi& a) {
  auto sz = [](int x) { return static_cast<size_t>(x); };
  for (int p = 0; p <= a.top; ++p)
    for (int q = 0; q <= a.top; ++q) {
      // Horizontal and vertical semi identities into (p, q).
      if (p >= 2)
        for (int j = 0; j <= p; ++j)
          for (int i = 0; i < j; ++i)
            if (a.h[sz(p)][sz(q)][sz(j)] * a.h[sz(p - 1)][sz(q)][sz(i)] != a.h[sz(p)][sz(q)][sz(i)] * a.h[sz(p - 1)][sz(q)][sz(j - 1)])
              return {false, "horizontal identity fails at (" + std::to_string(p) + "," + std::to_string(q) + ")"};
      if (q >= 2)
        for (int j = 0; j <= q; ++j)
          for (int i = 0; i < j; ++i)
            if (a.v[sz(p)][sz(q)][sz(j)] * a.v[sz(p)][sz(q - 1)][sz(i)] != a.v[sz(p)][sz(q)][sz(i)] * a.v[sz(p)][sz(q - 1)][sz(j - 1)])
              return {false, "vertical identity fails at (" + std::to_string(p) + "," + std::to_string(q) + ")"};
      if (p >= 1 && q >= 1)
        for (int i = 0; i <= p; ++i)
          for (int j = 0; j <= q; ++j)
            if (a.h[sz(p)][sz(q)][sz(i)] * a.v[sz(p - 1)][sz(q)][sz(j)] != a.v[sz(p)][sz(q)][sz(j)] * a.h[sz(p)][sz(q - 1)][sz(i)])
              return {false, "horizontal and vertical cofaces do not commute at (" + std::to_string(p) + "," + std::to_string(q) + ")"};
    }
  return {};
}

BiSemi tensor_bisemi(const LieCosimplicial& x, const LieCosimplicial& y) {
  if (x.top() != y.top()) throw CosimplicialError("tensor of objects with different tops");
  BiSemi a;
  a.top = x.top();
  size_t n = static_cast<size_t>(a.top) + 1;
  a.dim.assign(n, std::vector<size_t>(n));
  a.h.assign(n, std::vector<std::vector<QMat>>(n));
  a.v.assign(n, std::vector<std::vector<QMat>>(n));
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q) {
      size_t dx = x.obj[p]->dim(), dy = y.obj[q]->dim();
      a.dim[p][q] = dx * dy;
      if (p >= 1)
        for (size_t i = 0; i <= p; ++i) a.h[p][q].push_back(kron(x.d[p][i], QMat::identity(dy)));
      if (q >= 1)
        for (size_t j = 0; j <= q; ++j) a.v[p][q].push_back(kron(QMat::identity(dx), y.d[q][j]));
    }
  return a;
}

BiSemi direct_sum(const BiSemi& a, const BiSemi& b) {
  if (a.top != b.top) throw CosimplicialError("direct sum of objects with different tops");
  BiSemi c = a;
  size_t n = static_cast<size_t>(a.top) + 1;
  for (size_t p = 0; p < n; ++p)
    for (size_t q = 0; q < n; ++q) {
      c.dim[p][q] += b.dim[p][q];
      for (size_t i = 0; i < c.h[p][q].size(); ++i) c.h[p][q][i] = block_diag(a.h[p][q][i], b.h[p][q][i]);
      for (size_t i = 0; i < c.v[p][q].size(); ++i) c.v[p][q][i] = block_diag(a.v[p][q][i], b.v[p][q][i]);
    }
  return c;
}

BiSemi random_bisemi(Rng& rng, int top) {
  auto small = [&]() {
    LieCosimplicial x = random_semi_vector(rng, top);
    auto too_big = [](const LieCosimplicial& c) {
      return std::any_of(c.obj.begin(), c.obj.end(), [](const LiePtr& o) { return o->dim() > 2; });
    };
    while (too_big(x)) x = random_semi_vector(rng, top);
    return x;
  };
  BiSemi a = tensor_bisemi(small(), small());
  if (rng.coin()) a = direct_sum(a, tensor_bisemi(small(), small()));
  // Scramble each A^{p,q} by its own change of basis.
  size_t n = static_cast<size_t>(top) + 1;
  std::vector<std::vector<QMat>> p(n, std::vector<QMat>(n)), pinv(n, std::vector<QMat>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      p[i][j] = random_invertible(rng, a.dim[i][j]);
      pinv[i][j] = *inverse(p[i][j]);
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      for (auto& m : a.h[i][j]) m = p[i][j] * m * pinv[i - 1][j];
      for (auto& m : a.v[i][j]) m = p[i][j] * m * pinv[i][j - 1];
    }
  return a;
}

LieCosimplicial cogenerated_diagonal(const BiSemi& a) {
  LieCosimplicial u;
  std::vector<std::vector<std::pair<SimplexMap, SimplexMap>>> blocks;
  std::vector<std::map<std::pair<SimplexMap, SimplexMap>, size_t>> index;
  std::vector<std::vector<size_t>> offsets;
  for (int n = 0; n <= a.top; ++n) {
    auto s = surjections(n);
    blocks.emplace_back();
    index.emplace_back();
    offsets.emplace_back(std::vector<size_t>{0});
    for (const auto& g : s)
      for (const auto& h : s) {
        index.back()[{g, h}] = blocks.back().size();
        blocks.back().push_back({g, h});
        offsets.back().push_back(offsets.back().back() +
                                 a.dim[static_cast<size_t>(surjection_target(g))][static_cast<size_t>(surjection_target(h))]);
      }
    u.obj.push_back(NilpotentLieAlgebra::abelian(offsets.back().back()));
  }
  u.d.resize(static_cast<size_t>(a.top) + 1);
  for (int n = 1; n <= a.top; ++n)
    for (int i = 0; i <= n; ++i) {
      const auto& tb = blocks[static_cast<size_t>(n)];
      QMat m(u.obj[static_cast<size_t>(n)]->dim(), u.obj[static_cast<size_t>(n) - 1]->dim());
      for (size_t t = 0; t < tb.size(); ++t) {
        const auto& [g, h] = tb[t];
        EpiMono eg = factor(compose(g, coface_map(n, i)), surjection_target(g));
        EpiMono eh = factor(compose(h, coface_map(n, i)), surjection_target(h));
        int k1 = surjection_target(eg.epi), l1 = surjection_target(eh.epi);
        QMat comp = h_mono(a, k1, surjection_target(h), eg.missing) * v_mono(a, k1, l1, eh.missing);
        size_t src = index[static_cast<size_t>(n) - 1].at({eg.epi, eh.epi});
        m.put(offsets[static_cast<size_t>(n)][t], offsets[static_cast<size_t>(n) - 1][src], comp);
      }
      u.d[static_cast<size_t>(n)].push_back(m);
    }
  return u;
}

std::vector<size_t> total_cohomology(const BiSemi& a) {
  auto sz = [](int x) { return static_cast<size_t>(x); };
  std::vector<size_t> dims;
  std::vector<std::vector<size_t>> off;
  for (int n = 0; n <= a.top; ++n) {
    off.emplace_back(std::vector<size_t>{0});
    for (int p = 0; p <= n; ++p) off.back().push_back(off.back().back() + a.dim[sz(p)][sz(n - p)]);
    dims.push_back(off.back().back());
  }
  std::vector<QMat> diff;
  for (int n = 0; n < a.top; ++n) {
    QMat m(dims[sz(n + 1)], dims[sz(n)]);
    for (int p = 0; p <= n; ++p) {
      int q = n - p;
      m.put(off[sz(n + 1)][sz(p + 1)], off[sz(n)][sz(p)], moore(a.h[sz(p + 1)][sz(q)]));
      QMat vert = moore(a.v[sz(p)][sz(q + 1)]);
      m.put(off[sz(n + 1)][sz(p)], off[sz(n)][sz(p)], p % 2 == 0 ? vert : Rational(-1) * vert);
    }
    diff.push_back(m);
  }
  return complex_cohomology(dims, diff);
}

EilenbergZilberReport eilenberg_zilber_oracle(const BiSemi& a, int degrees) {
  if (degrees >= a.top) throw CosimplicialError("Eilenberg-Zilber comparison needs top > degrees");
  EilenbergZilberReport r;
  auto diag = pi_abelian(cogenerated_diagonal(a));
  auto tot = total_cohomology(a);
  r.diagonal.assign(diag.begin(), diag.begin() + degrees + 1);
  r.total.assign(tot.begin(), tot.begin() + degrees + 1);
  r.ok = r.diagonal == r.total;
  return r;
}

LieCosimplicial two_term_pattern(const LiePtr& x0, const LiePtr& x1, const QMat& d0, const QMat& d1, int top) {
  if (d0.rows() != x1->dim() || d0.cols() != x0->dim() || d1.rows() != x1->dim() || d1.cols() != x0->dim())
    throw CosimplicialError("two-term pattern: coface shapes do not match the objects");
  LieCosimplicial x;
  x.obj = {x0, x1};
  x.d = {{}, {d0, d1}};
  for (int n = 2; n <= top; ++n) {
    size_t prev = x.obj.back()->dim();
    x.obj.push_back(NilpotentLieAlgebra::abelian(0));
    x.d.emplace_back();
    for (int i = 0; i <= n; ++i) x.d.back().push_back(QMat(0, prev));
  }
  return x;
}

}  // namespace cohw
