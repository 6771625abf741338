#include <algorithm>

#include "cohw/les.hpp"

namespace cohw {

namespace {

QMat cols(const std::vector<Vec>& vs, size_t rows) { return QMat::from_cols(vs, rows); }

// Coordinates of the columns of `m` (vectors of a subspace) in the subspace basis.
QMat coords_in(const QSubspace& s, const QMat& m, const std::string& what) {
  QMat out(s.dim(), m.cols());
  for (size_t c = 0; c < m.cols(); ++c) {
    Vec v = m.col(c);
    if (!s.contains(v)) throw CosimplicialError(what + " does not preserve the subgroup");
    out.set_col(c, s.coords(v));
  }
  return out;
}

bool all_abelian(const LieCosimplicial& x) {
  return std::all_of(x.obj.begin(), x.obj.end(), [](const LiePtr& l) { return l->is_abelian(); });
}

// Moore cohomology of an abelian object, with classes reduced modulo boundaries.
struct MooreData {
  std::vector<QMat> diff;
  std::vector<QSubspace> cycles, boundaries;

  explicit MooreData(const LieCosimplicial& x) : diff(moore_differentials(x)) {
    int top = x.top();
    for (int r = 0; r <= top; ++r) {
      size_t n = x.obj[static_cast<size_t>(r)]->dim();
      cycles.push_back(r < top ? kernel_space(diff[static_cast<size_t>(r)]) : QSubspace::full(n));
      boundaries.push_back(r == 0 ? QSubspace(n, {}) : column_space(diff[static_cast<size_t>(r) - 1]));
    }
  }
  Vec reduce(int r, const Vec& v) const { return boundaries[static_cast<size_t>(r)].quotient_coords(v); }
  size_t h(int r) const { return cycles[static_cast<size_t>(r)].dim() - boundaries[static_cast<size_t>(r)].dim(); }
  // Cycles whose classes form a basis of H^r.
  std::vector<Vec> class_basis(int r) const {
    std::vector<Vec> out, reduced;
    for (const auto& c : cycles[static_cast<size_t>(r)].basis()) {
      Vec rc = reduce(r, c);
      std::vector<Vec> trial = reduced;
      trial.push_back(rc);
      if (QSubspace(rc.size(), trial).dim() > reduced.size()) {
        reduced.push_back(rc);
        out.push_back(c);
      }
    }
    return out;
  }
};

ClauseResult clause(std::string name, bool ok, std::string detail = {}, bool sampled = false) {
  return {std::move(name), ok, sampled, std::move(detail)};
}

}  // namespace

std::vector<std::vector<Vec>> cogenerated_spans(const LieCosimplicial& x, const std::vector<std::vector<Vec>>& x_spans) {
  std::vector<std::vector<Vec>> out;
  for (int n = 0; n <= x.top(); ++n) {
    auto blocks = surjections(n);
    size_t total = 0;
    for (const auto& g : blocks) total += x.obj[static_cast<size_t>(surjection_target(g))]->dim();
    out.emplace_back();
    size_t offset = 0;
    for (const auto& g : blocks) {
      size_t k = static_cast<size_t>(surjection_target(g));
      for (const auto& v : x_spans.at(k)) {
        Vec w(total);
        for (size_t i = 0; i < v.size(); ++i) w[offset + i] = v[i];
        out.back().push_back(w);
      }
      offset += x.obj[k]->dim();
    }
  }
  return out;
}

LieExtension split_extension(const LieCosimplicial& u, const std::vector<std::vector<Vec>>& z_spans, bool require_central) {
  if (z_spans.size() != u.obj.size()) throw CosimplicialError("subgroup data has the wrong number of degrees");
  LieExtension e;
  e.u = u;
  e.central = require_central;
  std::vector<QSubspace> spans;
  for (size_t n = 0; n < u.obj.size(); ++n) {
    const auto& lie = *u.obj[n];
    QSubspace s(lie.dim(), z_spans[n]);
    if (!is_ideal(lie, s)) throw CosimplicialError("not degree-wise exact: not an ideal in degree " + std::to_string(n));
    if (require_central)
      for (const auto& b : s.basis())
        for (size_t i = 0; i < lie.dim(); ++i)
          if (!is_zero_vec(lie.bracket(b, unit_vec<Rational>(lie.dim(), i))))
            throw CosimplicialError("centrality violation in degree " + std::to_string(n));
    Subalgebra sa = subalgebra(lie, s.basis());
    Quotient qt = quotient(lie, s);
    e.z.obj.push_back(sa.algebra);
    e.q.obj.push_back(qt.algebra);
    e.inclusion.push_back(sa.inclusion);
    e.projection.push_back(qt.projection);
    QMat sec(lie.dim(), qt.algebra->dim());
    auto comp = s.complement_coords();
    for (size_t a = 0; a < comp.size(); ++a) sec(comp[a], a) = 1;
    e.section.push_back(sec);
    spans.push_back(s);
  }
  auto restrict_map = [&](const QMat& m, size_t from, size_t to, const std::string& what) {
    return coords_in(spans[to], m * e.inclusion[from], what);
  };
  auto quotient_map = [&](const QMat& m, size_t from, size_t to) { return e.projection[to] * m * e.section[from]; };
  e.z.d.resize(u.obj.size());
  e.q.d.resize(u.obj.size());
  for (int n = 1; n <= u.top(); ++n)
    for (int i = 0; i <= n; ++i) {
      size_t a = static_cast<size_t>(n) - 1, b = static_cast<size_t>(n);
      e.z.d[b].push_back(restrict_map(u.coface(n, i), a, b, "d^" + std::to_string(i) + " into degree " + std::to_string(n)));
      e.q.d[b].push_back(quotient_map(u.coface(n, i), a, b));
    }
  if (!u.semi())
    for (int n = 0; n < u.top(); ++n) {
      e.z.s.emplace_back();
      e.q.s.emplace_back();
      for (int i = 0; i <= n; ++i) {
        size_t a = static_cast<size_t>(n) + 1, b = static_cast<size_t>(n);
        e.z.s.back().push_back(restrict_map(u.codegeneracy(n, i), a, b, "s^" + std::to_string(i) + " into degree " + std::to_string(n)));
        e.q.s.back().push_back(quotient_map(u.codegeneracy(n, i), a, b));
      }
    }
  IdentityReport rz = check_identities(e.z), rq = check_identities(e.q);
  if (!rz.ok) throw CosimplicialError("restricted object fails the identities: " + rz.failure);
  if (!rq.ok) throw CosimplicialError("quotient object fails the identities: " + rq.failure);
  return e;
}

CentralLes les_unipotent_central(const LieExtension& e, Rng& rng, int samples) {
  if (!e.central) throw CosimplicialError("the seven-term sequence needs a central extension");
  if (e.u.top() < 2) throw CosimplicialError("the seven-term sequence needs degrees 0..2");
  const LieCosimplicial &z = e.z, &u = e.u, &q = e.q;
  const auto &u0 = *u.obj[0], &u1 = *u.obj[1], &u2 = *u.obj[2], &q0 = *q.obj[0];
  MooreData mz(z);
  CentralLes out;
  auto& cl = out.sequence.clauses;

  std::vector<Vec> pz0 = pi0_lie(z), pu0 = pi0_lie(u), pq0 = pi0_lie(q);
  out.pi0_dims = {pz0.size(), pu0.size(), pq0.size()};
  out.h1z_dim = mz.h(1);
  if (z.top() >= 3) out.h2z_dim = mz.h(2);

  // pi^0 terms: subgroups of unipotent groups are determined by their Lie algebras.
  {
    QMat inc = e.inclusion[0] * cols(pz0, z.obj[0]->dim());
    cl.push_back(clause("exact at pi0(Z)", rank(inc) == pz0.size()));
    QMat bu = cols(pu0, u0.dim());
    std::vector<Vec> ker;
    for (const auto& k : kernel(e.projection[0] * bu)) ker.push_back(bu.apply(k));
    QSubspace kernel_span(u0.dim(), ker), image_span = column_space(inc);
    cl.push_back(clause("exact at pi0(U)", kernel_span == image_span,
                        "kernel dim " + std::to_string(kernel_span.dim()) + ", image dim " + std::to_string(image_span.dim())));
  }

  // Connecting map pi0(Q) -> pi1(Z), x |-> [d^1(u0) d^0(u0)^-1] for a lift u0 of x.
  auto in_z1 = [&](const Vec& w) {
    QSubspace zs = column_space(e.inclusion[1]);
    return zs.coords(w);
  };
  auto delta_with_lift = [&](const Vec& lift) {
    Vec w = group_mul(u1, u.coface(1, 1).apply(lift), neg(u.coface(1, 0).apply(lift)));
    return mz.reduce(1, in_z1(w));
  };
  auto delta = [&](const Vec& x) { return delta_with_lift(e.section[0].apply(x)); };
  std::vector<Vec> delta_cols;
  for (const auto& b : pq0) delta_cols.push_back(delta(b));
  size_t red_dim = z.obj[1]->dim() - mz.boundaries[1].dim();
  QMat lmat = cols(delta_cols, red_dim);
  out.delta_rank = rank(lmat);
  {
    bool ok = true;
    for (int s = 0; s < samples && !pq0.empty(); ++s) {
      Vec a(q0.dim()), b(q0.dim());
      for (const auto& v : pq0) {
        axpy(rng.rational(3, 2), v, a);
        axpy(rng.rational(3, 2), v, b);
      }
      Vec lhs = delta(group_mul(q0, a, b));
      ok = ok && lhs == add(delta(a), delta(b));
      Rational t = rng.rational(4, 3);
      ok = ok && delta(scale(t, a)) == scale(t, delta(a));
      Vec z0 = rng.rational_vec(z.obj[0]->dim(), 3, 2);
      ok = ok && delta_with_lift(group_mul(u0, e.inclusion[0].apply(z0), e.section[0].apply(a))) == delta(a);
    }
    cl.push_back(clause("connecting map pi0(Q) -> pi1(Z) is a homomorphism independent of lifts", ok,
                        std::to_string(samples) + " samples", true));
    QMat bq = cols(pq0, q0.dim());
    std::vector<Vec> ker;
    for (const auto& k : kernel(lmat)) ker.push_back(bq.apply(k));
    QSubspace kernel_span(q0.dim(), ker), image_span = column_space(e.projection[0] * cols(pu0, u0.dim()));
    cl.push_back(clause("exact at pi0(Q)", kernel_span == image_span,
                        "kernel dim " + std::to_string(kernel_span.dim()) + ", image dim " + std::to_string(image_span.dim())));
  }

  LiePi1 du(u), dq(q);
  // Stabiliser of the basepoint of pi1(U) in pi1(Z) against the image of the connecting map.
  {
    bool ok = true;
    std::string detail;
    for (const auto& b : pq0) {
      Vec lift = e.section[0].apply(b);
      Vec w = group_mul(u1, u.coface(1, 1).apply(lift), neg(u.coface(1, 0).apply(lift)));
      if (!du.is_trivial(w)) {
        ok = false;
        detail = "an image class is not trivial in pi1(U)";
      }
    }
    std::vector<Vec> complement, reduced = delta_cols;
    size_t base = QSubspace(red_dim, reduced).dim();
    for (const auto& c : mz.class_basis(1)) {
      std::vector<Vec> trial = reduced;
      trial.push_back(mz.reduce(1, c));
      if (QSubspace(red_dim, trial).dim() > base + complement.size()) {
        reduced = trial;
        complement.push_back(c);
      }
    }
    int tested = 0;
    auto test = [&](const Vec& zc) {
      ++tested;
      if (du.is_trivial(e.inclusion[1].apply(zc))) {
        ok = false;
        detail = "a class outside the image is trivial in pi1(U)";
      }
    };
    for (const auto& c : complement) test(c);
    for (int s = 0; s < samples && !complement.empty(); ++s) {
      Vec zc(z.obj[1]->dim());
      for (const auto& c : complement) axpy(rng.rational(3, 2), c, zc);
      for (const auto& b : mz.boundaries[1].basis()) axpy(rng.rational(3, 2), b, zc);
      if (!is_zero_vec(mz.reduce(1, zc))) test(zc);
    }
    if (detail.empty()) detail = "image dim " + std::to_string(out.delta_rank) + ", " + std::to_string(tested) + " classes off the image";
    cl.push_back(clause("stabiliser of the basepoint of pi1(U) = image of pi0(Q)", ok, detail, !complement.empty()));
  }

  // Orbits of Z^1 x U^0 on Z^1(U) against fibres of pi1(U) -> pi1(Q).
  {
    const QSubspace& zcyc = mz.cycles[1];
    DirectSum act = direct_sum(std::vector<LiePtr>{NilpotentLieAlgebra::abelian(zcyc.dim()), u.obj[0]});
    QMat left(u1.dim(), act.algebra->dim()), right(u1.dim(), act.algebra->dim());
    for (size_t c = 0; c < zcyc.dim(); ++c) left.set_col(c, neg(e.inclusion[1].apply(zcyc.basis()[c])));
    for (size_t c = 0; c < u0.dim(); ++c) {
      left.set_col(zcyc.dim() + c, u.coface(1, 1).col(c));
      right.set_col(zcyc.dim() + c, u.coface(1, 0).col(c));
    }
    OrbitEngine engine({act.algebra, u.obj[1], left, right, {}});
    bool ok = true;
    int same = 0, different = 0, skipped = 0;
    for (int s = 0; s < samples; ++s) {
      auto a = random_cocycle(u, rng);
      if (!a) {
        ++skipped;
        continue;
      }
      Vec b;
      if (rng.coin()) {
        b = engine.act(*a, rng.rational_vec(act.algebra->dim(), 3, 2));
      } else {
        auto c = random_cocycle(u, rng);
        if (!c) {
          ++skipped;
          continue;
        }
        b = *c;
      }
      bool orbit = engine.solve(*a, b).found;
      bool fibre = dq.equivalent(e.projection[1].apply(*a), e.projection[1].apply(b)).found;
      (orbit ? same : different)++;
      if (orbit != fibre) ok = false;
    }
    cl.push_back(clause("orbits of pi1(Z) on pi1(U) = fibres of pi1(U) -> pi1(Q)", ok && skipped < samples,
                        std::to_string(same) + " same orbit, " + std::to_string(different) + " different, " +
                            std::to_string(skipped) + " unsampled",
                        true));
  }

  // Fibre of pi1(Q) -> pi2(Z) over the basepoint against the image of pi1(U).
  {
    QSubspace z2span = column_space(e.inclusion[2]);
    auto obstruction = [&](const Vec& lift) {
      Vec w = group_mul(u2, {u.coface(2, 0).apply(lift), neg(u.coface(2, 1).apply(lift)), u.coface(2, 2).apply(lift)});
      if (!z2span.contains(w)) throw CosimplicialError("internal: obstruction outside Z^2");
      return z2span.coords(w);
    };
    bool ok = true;
    int lifted = 0, obstructed = 0;
    std::string detail;
    for (int s = 0; s < samples; ++s) {
      // Images of U-cocycles have zero obstruction for any lift.
      if (auto a = random_cocycle(u, rng)) {
        Vec qa = e.projection[1].apply(*a);
        if (!is_zero_vec(mz.reduce(2, obstruction(e.section[1].apply(qa))))) {
          ok = false;
          detail = "image of a U-cocycle is obstructed";
        }
      }
      auto qc = random_cocycle(q, rng);
      if (!qc) continue;
      Vec lift = e.section[1].apply(*qc);
      Vec ob = obstruction(lift);
      Vec cls = mz.reduce(2, ob);
      // The class does not depend on the lift or on the representative.
      Vec zshift = rng.rational_vec(z.obj[1]->dim(), 3, 2);
      Vec moved = dq.act(*qc, rng.rational_vec(q0.dim(), 3, 2));
      if (mz.reduce(2, obstruction(group_mul(u1, lift, e.inclusion[1].apply(zshift)))) != cls ||
          mz.reduce(2, obstruction(e.section[1].apply(moved))) != cls) {
        ok = false;
        detail = "obstruction class depends on choices";
      }
      if (is_zero_vec(cls)) {
        auto sol = solve_affine(mz.diff[1], ob);
        if (!sol.particular) {
          ok = false;
          detail = "internal: boundary without a preimage";
          continue;
        }
        Vec fixed = group_mul(u1, lift, neg(e.inclusion[1].apply(*sol.particular)));
        if (!du.is_cocycle(fixed) || e.projection[1].apply(fixed) != *qc) {
          ok = false;
          detail = "corrected lift is not a cocycle over the class";
        }
        ++lifted;
      } else {
        ++obstructed;
      }
    }
    if (detail.empty()) detail = std::to_string(lifted) + " lifted, " + std::to_string(obstructed) + " obstructed";
    cl.push_back(clause("exact at pi1(Q)", ok, detail, true));
  }

  if (all_abelian(q)) {
    out.pi1q_point = pi_abelian(q).at(1) == 0;
  } else {
    out.pi1q_point = dq.engine().transitive();
  }

  auto dim = [](size_t d) { return "dim " + std::to_string(d); };
  auto& nodes = out.sequence.nodes;
  nodes.push_back({"pi0(Z)", NodeKind::Abelian, dim(pz0.size())});
  nodes.push_back({"pi0(U)", NodeKind::Group, dim(pu0.size())});
  nodes.push_back({"pi0(Q)", NodeKind::Group, dim(pq0.size())});
  nodes.push_back({"pi1(Z)", NodeKind::Abelian, dim(out.h1z_dim)});
  nodes.push_back({"pi1(U)", NodeKind::PointedSet, "decided"});
  nodes.push_back({"pi1(Q)", NodeKind::PointedSet, out.pi1q_point ? "1 class" : "decided"});
  nodes.push_back({"pi2(Z)", NodeKind::Abelian, out.h2z_dim ? dim(*out.h2z_dim) : "needs degree 3"});
  out.sequence.j = 0;
  out.sequence.k = 3;
  return out;
}

MixedExactSequence les_abelian(const LieExtension& e) {
  if (!all_abelian(e.z) || !all_abelian(e.u) || !all_abelian(e.q)) throw CosimplicialError("the long exact sequence of part 4 needs abelian objects");
  MooreData mz(e.z), mu(e.u), mq(e.q);
  int top = e.u.top();
  MixedExactSequence out;
  struct Node {
    const MooreData* m;
    int r;
  };
  std::vector<Node> nodes;
  std::vector<std::function<Vec(const Vec&)>> maps;  // cycle -> cycle of the next node
  const char* names[] = {"Z", "U", "Q"};
  for (int r = 0; r < top; ++r) {
    for (int t = 0; t < 3; ++t) {
      const MooreData* m = t == 0 ? &mz : t == 1 ? &mu : &mq;
      nodes.push_back({m, r});
      out.nodes.push_back({"pi" + std::to_string(r) + "(" + names[t] + ")", NodeKind::Abelian, "dim " + std::to_string(m->h(r))});
    }
    size_t rr = static_cast<size_t>(r);
    maps.push_back([&e, rr](const Vec& v) { return e.inclusion[rr].apply(v); });
    maps.push_back([&e, rr](const Vec& v) { return e.projection[rr].apply(v); });
    if (r + 1 < top)
      maps.push_back([&e, &mu, rr](const Vec& v) {
        Vec b = mu.diff[rr].apply(e.section[rr].apply(v));
        return column_space(e.inclusion[rr + 1]).coords(b);
      });
  }
  // Each map as a matrix from class-basis coefficients to reduced coordinates.
  auto reduced_dim = [](const Node& n) { return n.m->cycles[static_cast<size_t>(n.r)].ambient() - n.m->boundaries[static_cast<size_t>(n.r)].dim(); };
  auto image_space = [&](size_t i) {
    const Node &src = nodes[i], &tgt = nodes[i + 1];
    std::vector<Vec> im;
    for (const auto& c : src.m->class_basis(src.r)) im.push_back(tgt.m->reduce(tgt.r, maps[i](c)));
    return QSubspace(reduced_dim(tgt), im);
  };
  auto kernel_space_of = [&](size_t i) {
    const Node &src = nodes[i], &tgt = nodes[i + 1];
    auto basis = src.m->class_basis(src.r);
    std::vector<Vec> images;
    for (const auto& c : basis) images.push_back(tgt.m->reduce(tgt.r, maps[i](c)));
    std::vector<Vec> ker;
    for (const auto& k : kernel(QMat::from_cols(images, reduced_dim(tgt)))) {
      Vec v(reduced_dim(src));
      for (size_t j = 0; j < basis.size(); ++j) axpy(k[j], src.m->reduce(src.r, basis[j]), v);
      ker.push_back(v);
    }
    return QSubspace(reduced_dim(src), ker);
  };
  if (!maps.empty()) {
    QSubspace k0 = kernel_space_of(0);
    out.clauses.push_back(clause("exact at " + out.nodes[0].name, k0.dim() == 0));
  }
  for (size_t i = 1; i < maps.size(); ++i) {
    QSubspace k = kernel_space_of(i), im = image_space(i - 1);
    out.clauses.push_back(clause("exact at " + out.nodes[i].name, k == im,
                                 "kernel dim " + std::to_string(k.dim()) + ", image dim " + std::to_string(im.dim())));
  }
  out.j = static_cast<int>(out.nodes.size()) - 2;
  out.k = static_cast<int>(out.nodes.size()) - 1;
  return out;
}

CodimReport codim_vanishing_check(const LieExtension& e, const std::vector<Vec>& q_cocycles) {
  CodimReport rep;
  if (e.z.semi()) throw CosimplicialError("codimension check needs codegeneracies");
  for (int n = 0; n <= e.z.top(); ++n) {
    std::vector<QMat> parts;
    for (const auto& g : surjections(n))
      if (surjection_target(g) <= 1) parts.push_back(e.z.epi(g));
    QMat stacked = parts.front();
    for (size_t i = 1; i < parts.size(); ++i) stacked = vstack(stacked, parts[i]);
    if (rank(stacked) < e.z.obj[static_cast<size_t>(n)]->dim()) {
      rep.hypothesis = false;
      rep.failing_degree = n;
      rep.detail = "Z^" + std::to_string(n) + " -> Gamma^" + std::to_string(n) + " of the 1-truncation has a kernel of dimension " +
                   std::to_string(e.z.obj[static_cast<size_t>(n)]->dim() - rank(stacked));
      return rep;
    }
  }
  const auto &u1 = *e.u.obj[1], &u2 = *e.u.obj[2];
  rep.ok = true;
  for (const auto& q1 : q_cocycles) {
    if (!is_cocycle(e.q, q1)) throw CosimplicialError("codimension check: input is not a Q-cocycle");
    Vec lift = e.section[1].apply(q1);
    Vec z2 = group_mul(u2, {neg(e.u.coface(2, 2).apply(lift)), e.u.coface(2, 1).apply(lift), neg(e.u.coface(2, 0).apply(lift))});
    Vec fixed = group_mul(u1, lift, e.u.codegeneracy(1, 0).apply(z2));
    if (!is_cocycle(e.u, fixed) || e.projection[1].apply(fixed) != q1) {
      rep.ok = false;
      rep.detail = "s^0 correction did not produce a cocycle";
    }
    rep.preimages.push_back(fixed);
  }
  return rep;
}

}  // namespace cohw
