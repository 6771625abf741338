#include <algorithm>
#include <map>

#include "cohw/les.hpp"

namespace cohw {

FactorSubgroups cogenerated_subgroups(const std::vector<std::vector<std::vector<int>>>& x_subgroups, int top) {
  FactorSubgroups out;
  for (int n = 0; n <= top; ++n) {
    out.emplace_back();
    for (const auto& g : surjections(n)) {
      const auto& block = x_subgroups.at(static_cast<size_t>(surjection_target(g)));
      out.back().insert(out.back().end(), block.begin(), block.end());
    }
  }
  return out;
}

namespace {

struct FactorData {
  GroupPtr ambient;
  SubgroupData sub;
  std::vector<int> to_sub;  // ambient element -> subgroup index, or -1
  // Normal case: the quotient and a section of the projection.
  QuotientData quo;
  std::vector<int> section;
  // Transitive case: right cosets Hx.
  std::vector<int> coset_of, coset_rep;
};

struct Degreewise {
  std::vector<std::vector<FactorData>> f;  // [n][factor]

  FElem to_sub(int n, const FElem& u) const {
    FElem z(u.size());
    for (size_t t = 0; t < u.size(); ++t) {
      int v = f[static_cast<size_t>(n)][t].to_sub[static_cast<size_t>(u[t])];
      if (v < 0) throw CosimplicialError("internal: element expected in the subgroup");
      z[t] = v;
    }
    return z;
  }
  bool in_sub(int n, const FElem& u) const {
    for (size_t t = 0; t < u.size(); ++t)
      if (f[static_cast<size_t>(n)][t].to_sub[static_cast<size_t>(u[t])] < 0) return false;
    return true;
  }
  FElem embed(int n, const FElem& z) const {
    FElem u(z.size());
    for (size_t t = 0; t < z.size(); ++t) u[t] = f[static_cast<size_t>(n)][t].sub.embedding[static_cast<size_t>(z[t])];
    return u;
  }
  FElem project(int n, const FElem& u) const {
    FElem q(u.size());
    for (size_t t = 0; t < u.size(); ++t) q[t] = f[static_cast<size_t>(n)][t].quo.projection[static_cast<size_t>(u[t])];
    return q;
  }
  FElem lift(int n, const FElem& q) const {
    FElem u(q.size());
    for (size_t t = 0; t < q.size(); ++t) u[t] = f[static_cast<size_t>(n)][t].section[static_cast<size_t>(q[t])];
    return u;
  }
  FElem coset(int n, const FElem& u) const {
    FElem q(u.size());
    for (size_t t = 0; t < u.size(); ++t) q[t] = f[static_cast<size_t>(n)][t].coset_of[static_cast<size_t>(u[t])];
    return q;
  }
  FElem coset_rep(int n, const FElem& q) const {
    FElem u(q.size());
    for (size_t t = 0; t < q.size(); ++t) u[t] = f[static_cast<size_t>(n)][t].coset_rep[static_cast<size_t>(q[t])];
    return u;
  }
};

Degreewise analyse(const FiniteCosimplicial& u, const FactorSubgroups& z, LesPart part) {
  if (z.size() != u.obj.size()) throw CosimplicialError("subgroup data has the wrong number of degrees");
  Degreewise dw;
  for (size_t n = 0; n < u.obj.size(); ++n) {
    const auto& factors = u.obj[n].factors;
    if (z[n].size() != factors.size()) throw CosimplicialError("subgroup data has the wrong number of factors in degree " + std::to_string(n));
    dw.f.emplace_back();
    for (size_t t = 0; t < factors.size(); ++t) {
      const GroupPtr& g = factors[t];
      const auto& h = z[n][t];
      if (!is_subgroup(*g, h)) throw CosimplicialError("not a subgroup in degree " + std::to_string(n) + ", factor " + std::to_string(t));
      FactorData d;
      d.ambient = g;
      d.sub = make_subgroup(g, h);
      d.to_sub.assign(g->order(), -1);
      for (size_t i = 0; i < d.sub.embedding.size(); ++i) d.to_sub[static_cast<size_t>(d.sub.embedding[i])] = static_cast<int>(i);
      if (part == LesPart::Transitive) {
        std::map<int, int> index;
        d.coset_of.assign(g->order(), 0);
        for (size_t x = 0; x < g->order(); ++x) {
          int m = static_cast<int>(x);
          for (int e : h) m = std::min(m, g->mul(e, static_cast<int>(x)));
          auto [it, fresh] = index.emplace(m, static_cast<int>(index.size()));
          if (fresh) d.coset_rep.push_back(m);
          d.coset_of[x] = it->second;
        }
      } else {
        if (!is_normal(*g, h)) throw CosimplicialError("not degree-wise exact: subgroup not normal in degree " + std::to_string(n));
        if (part == LesPart::Central) {
          auto c = g->center();
          for (int e : h)
            if (!std::binary_search(c.begin(), c.end(), e))
              throw CosimplicialError("centrality violation in degree " + std::to_string(n) + ", factor " + std::to_string(t));
        }
        d.quo = make_quotient(g, h);
        d.section.assign(d.quo.group->order(), -1);
        for (size_t x = 0; x < g->order(); ++x) {
          int& s = d.section[static_cast<size_t>(d.quo.projection[x])];
          if (s < 0) s = static_cast<int>(x);
        }
      }
      dw.f.back().push_back(std::move(d));
    }
  }
  return dw;
}

// Checks that a structure map sends subgroups into subgroups and returns the
// restricted map and the induced map on quotients or cosets.
struct Induced {
  MonomialHom sub, quo;
};

Induced induce(const Degreewise& dw, int src_deg, int tgt_deg, const MonomialHom& h, LesPart part, const std::string& what) {
  Induced out;
  const auto& src = dw.f[static_cast<size_t>(src_deg)];
  const auto& tgt = dw.f[static_cast<size_t>(tgt_deg)];
  std::vector<MonomialHom::Part> sp, qp;
  for (size_t t = 0; t < h.parts.size(); ++t) {
    const auto& p = h.parts[t];
    if (p.source < 0) {
      sp.push_back({-1, {}});
      qp.push_back({-1, {}});
      continue;
    }
    const FactorData& s = src[static_cast<size_t>(p.source)];
    const FactorData& g = tgt[t];
    std::vector<int> st;
    for (int e : s.sub.embedding) {
      int v = g.to_sub[static_cast<size_t>(p.table[static_cast<size_t>(e)])];
      if (v < 0) throw CosimplicialError(what + " does not preserve the subgroup");
      st.push_back(v);
    }
    sp.push_back({p.source, st});
    std::vector<int> qt;
    if (part == LesPart::Transitive) {
      for (int r : s.coset_rep) qt.push_back(g.coset_of[static_cast<size_t>(p.table[static_cast<size_t>(r)])]);
    } else {
      for (int r : s.section) qt.push_back(g.quo.projection[static_cast<size_t>(p.table[static_cast<size_t>(r)])]);
    }
    qp.push_back({p.source, qt});
  }
  out.sub = monomial(h.source_factors, std::move(sp));
  out.quo = monomial(h.source_factors, std::move(qp));
  return out;
}

struct Split {
  FiniteCosimplicial z, q;  // q only meaningful as a group in the normal case
};

Split split(const FiniteCosimplicial& u, const Degreewise& dw, LesPart part) {
  Split out;
  for (size_t n = 0; n < u.obj.size(); ++n) {
    ProductGroup zs, qs;
    for (const auto& d : dw.f[n]) {
      zs.factors.push_back(d.sub.group);
      if (part != LesPart::Transitive) qs.factors.push_back(d.quo.group);
    }
    out.z.obj.push_back(zs);
    out.q.obj.push_back(qs);
  }
  out.z.d.resize(u.obj.size());
  out.q.d.resize(u.obj.size());
  for (int n = 1; n <= u.top(); ++n)
    for (int i = 0; i <= n; ++i) {
      Induced ind = induce(dw, n - 1, n, u.coface(n, i), part, "d^" + std::to_string(i) + " into degree " + std::to_string(n));
      out.z.d[static_cast<size_t>(n)].push_back(ind.sub);
      out.q.d[static_cast<size_t>(n)].push_back(ind.quo);
    }
  if (!u.semi()) {
    for (int n = 0; n < u.top(); ++n) {
      out.z.s.emplace_back();
      out.q.s.emplace_back();
      for (int i = 0; i <= n; ++i) {
        Induced ind = induce(dw, n + 1, n, u.codegeneracy(n, i), part, "s^" + std::to_string(i) + " into degree " + std::to_string(n));
        out.z.s.back().push_back(ind.sub);
        out.q.s.back().push_back(ind.quo);
      }
    }
  }
  return out;
}

using ElemIndex = std::map<FElem, int>;

ElemIndex index_elements(const std::vector<FElem>& elems) {
  ElemIndex idx;
  for (size_t i = 0; i < elems.size(); ++i) idx.emplace(elems[i], static_cast<int>(i));
  return idx;
}

FiniteSequence::Node group_node(const std::string& name, const ProductGroup& g, const std::vector<FElem>& elems, NodeKind kind) {
  FiniteSequence::Node node;
  node.name = name;
  node.kind = kind;
  node.size = elems.size();
  ElemIndex idx = index_elements(elems);
  node.table.resize(elems.size() * elems.size());
  for (size_t a = 0; a < elems.size(); ++a)
    for (size_t b = 0; b < elems.size(); ++b) {
      auto it = idx.find(FiniteCarrier::mul(g, elems[a], elems[b]));
      if (it == idx.end()) throw CosimplicialError("internal: " + name + " is not closed under multiplication");
      node.table[a * elems.size() + b] = it->second;
    }
  return node;
}

FiniteSequence::Node set_node(const std::string& name, size_t size, NodeKind kind = NodeKind::PointedSet) {
  FiniteSequence::Node node;
  node.name = name;
  node.kind = kind;
  node.size = size;
  return node;
}

// Group structure on pi^1 of an abelian object.
void add_class_table(FiniteSequence::Node& node, const FiniteCosimplicial& z, const FinitePi1& p) {
  size_t n = p.classes();
  node.table.resize(n * n);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      node.table[a * n + b] = static_cast<int>(
          p.class_of[p.index_of(FiniteCarrier::mul(z.obj[1], p.cocycles[p.representative[a]], p.cocycles[p.representative[b]]))]);
}

size_t class_of(const FinitePi1& p, const FElem& c) { return p.class_of[p.index_of(c)]; }

ClauseResult well_defined(const std::string& what, bool ok, std::string detail = {}, bool sampled = false) {
  return {what + " well defined on classes", ok, sampled, std::move(detail)};
}

}  // namespace

FiniteLes les_finite(const FiniteCosimplicial& u, const FactorSubgroups& z, LesPart part, size_t cap) {
  if (u.top() < 2) throw CosimplicialError("long exact sequences need degrees 0..2");
  Degreewise dw = analyse(u, z, part);
  Split sp = split(u, dw, part);
  const FiniteCosimplicial& zc = sp.z;
  const ProductGroup &u0 = u.obj[0], &u1 = u.obj[1];

  std::vector<FElem> pz0 = pi0_finite(zc, cap), pu0 = pi0_finite(u, cap);
  FinitePi1 pz1 = pi1_finite(zc, cap), pu1 = pi1_finite(u, cap);
  ElemIndex iu0 = index_elements(pu0);
  std::vector<ClauseResult> extra;

  FiniteLes out;
  FiniteSequence& s = out.sequence;
  s.nodes.push_back(group_node("pi0(Z)", zc.obj[0], pz0, part == LesPart::Central ? NodeKind::Abelian : NodeKind::Group));
  s.nodes.push_back(group_node("pi0(U)", u0, pu0, NodeKind::Group));
  std::vector<int> m0;
  for (const auto& e : pz0) m0.push_back(iu0.at(dw.embed(0, e)));
  s.maps.push_back(m0);

  auto coboundary_inverse = [&](const FElem& x0) {  // d^1(x0) d^0(x0)^-1 in U^1
    return FiniteCarrier::mul(u1, u.coface(1, 1).apply(x0), FiniteCarrier::inv(u1, u.coface(1, 0).apply(x0)));
  };
  auto z_class_of_u = [&](const FElem& x1) { return static_cast<int>(class_of(pz1, dw.to_sub(1, x1))); };
  auto z_to_u_class = [&](size_t zc_index) {
    return static_cast<int>(class_of(pu1, dw.embed(1, pz1.cocycles[pz1.representative[zc_index]])));
  };

  if (part == LesPart::Transitive) {
    // Q^n = Z^n \ U^n with U acting by right multiplication.
    std::vector<FElem> pq0;
    {
      std::vector<size_t> sizes;
      size_t total = 1;
      for (const auto& d : dw.f[0]) {
        sizes.push_back(d.coset_rep.size());
        total *= sizes.back();
        if (total > cap) throw CapExceeded("pi^0 of the coset object exceeds the cap");
      }
      FElem q(sizes.size(), 0);
      for (size_t it = 0; it < total; ++it) {
        size_t r = it;
        for (size_t t = sizes.size(); t-- > 0;) {
          q[t] = static_cast<int>(r % sizes[t]);
          r /= sizes[t];
        }
        if (sp.q.coface(1, 0).apply(q) == sp.q.coface(1, 1).apply(q)) pq0.push_back(q);
      }
      std::sort(pq0.begin(), pq0.end());
    }
    ElemIndex iq0 = index_elements(pq0);
    s.nodes.push_back(set_node("pi0(Q)", pq0.size()));
    s.nodes.push_back(set_node("pi1(Z)", pz1.classes()));
    s.nodes.push_back(set_node("pi1(U)", pu1.classes()));
    s.j = -1;
    s.k = 1;
    s.action.assign(pq0.size(), std::vector<int>(pu0.size()));
    for (size_t x = 0; x < pq0.size(); ++x)
      for (size_t g = 0; g < pu0.size(); ++g)
        s.action[x][g] = iq0.at(dw.coset(0, FiniteCarrier::mul(u0, dw.coset_rep(0, pq0[x]), pu0[g])));
    s.maps.push_back(s.action[0]);
    std::vector<int> m2;
    bool ok = true;
    auto z0 = enumerate_elements(zc.obj[0], cap);
    for (const auto& q : pq0) {
      FElem lift = dw.coset_rep(0, q);
      int c = z_class_of_u(coboundary_inverse(lift));
      for (const auto& e : z0) ok = ok && z_class_of_u(coboundary_inverse(FiniteCarrier::mul(u0, dw.embed(0, e), lift))) == c;
      m2.push_back(c);
    }
    extra.push_back(well_defined("connecting map pi0(Q) -> pi1(Z)", ok));
    s.maps.push_back(m2);
    std::vector<int> m3;
    for (size_t c = 0; c < pz1.classes(); ++c) m3.push_back(z_to_u_class(c));
    s.maps.push_back(m3);
  } else {
    const FiniteCosimplicial& qc = sp.q;
    std::vector<FElem> pq0 = pi0_finite(qc, cap);
    FinitePi1 pq1 = pi1_finite(qc, cap);
    ElemIndex iq0 = index_elements(pq0);
    s.nodes.push_back(group_node("pi0(Q)", qc.obj[0], pq0, NodeKind::Group));
    std::vector<int> m1;
    for (const auto& e : pu0) m1.push_back(iq0.at(dw.project(0, e)));
    s.maps.push_back(m1);
    s.nodes.push_back(set_node("pi1(Z)", pz1.classes(), part == LesPart::Central ? NodeKind::Abelian : NodeKind::PointedSet));
    s.nodes.push_back(set_node("pi1(U)", pu1.classes()));
    s.nodes.push_back(set_node("pi1(Q)", pq1.classes()));

    // Lifts of pi0(Q) change by Z^0 on the left; the class must not move.
    auto z0 = enumerate_elements(zc.obj[0], cap);
    bool delta_ok = true;
    std::vector<int> m2;
    for (const auto& q : pq0) {
      FElem lift = dw.lift(0, q);
      if (part == LesPart::Central) {
        int c = z_class_of_u(coboundary_inverse(lift));
        for (const auto& e : z0) delta_ok = delta_ok && z_class_of_u(coboundary_inverse(FiniteCarrier::mul(u0, dw.embed(0, e), lift))) == c;
        m2.push_back(c);
      }
    }
    if (part == LesPart::Central) {
      extra.push_back(well_defined("connecting map pi0(Q) -> pi1(Z)", delta_ok));
      s.maps.push_back(m2);
      add_class_table(s.nodes[3], zc, pz1);
      s.j = 0;
      s.k = 3;
      // pi1(Z) acts on pi1(U) by multiplication.
      s.action.assign(pu1.classes(), std::vector<int>(pz1.classes()));
      for (size_t x = 0; x < pu1.classes(); ++x)
        for (size_t g = 0; g < pz1.classes(); ++g)
          s.action[x][g] = static_cast<int>(class_of(
              pu1, FiniteCarrier::mul(u1, pu1.cocycles[pu1.representative[x]], dw.embed(1, pz1.cocycles[pz1.representative[g]]))));
      std::vector<int> m3;
      for (size_t c = 0; c < pz1.classes(); ++c) m3.push_back(z_to_u_class(c));
      s.maps.push_back(m3);
      bool act_ok = true;
      size_t checked = 0;
      for (size_t a = 0; a < pu1.cocycles.size() && checked < 200000; ++a)
        for (size_t b = 0; b < pz1.cocycles.size() && checked < 200000; ++b, ++checked)
          act_ok = act_ok && static_cast<int>(class_of(pu1, FiniteCarrier::mul(u1, pu1.cocycles[a], dw.embed(1, pz1.cocycles[b])))) ==
                                 s.action[pu1.class_of[a]][pz1.class_of[b]];
      extra.push_back(well_defined("action of pi1(Z) on pi1(U)", act_ok, std::to_string(checked) + " pairs",
                                   checked < pu1.cocycles.size() * pz1.cocycles.size()));
    } else {
      s.j = -1;
      s.k = 2;
      // pi0(Q) acts on pi1(Z) through lifts: [z] . q = [d^1(u0)^-1 z d^0(u0)].
      s.action.assign(pz1.classes(), std::vector<int>(pq0.size()));
      bool act_ok = true;
      for (size_t x = 0; x < pz1.classes(); ++x)
        for (size_t g = 0; g < pq0.size(); ++g) {
          FElem lift = dw.lift(0, pq0[g]);
          auto act_with = [&](const FElem& l, const FElem& zcoc) {
            return z_class_of_u(act_on_cocycle(u, dw.embed(1, zcoc), l));
          };
          int c = act_with(lift, pz1.cocycles[pz1.representative[x]]);
          for (const auto& e : z0) act_ok = act_ok && act_with(FiniteCarrier::mul(u0, dw.embed(0, e), lift), pz1.cocycles[pz1.representative[x]]) == c;
          for (size_t i = 0; i < pz1.cocycles.size(); ++i)
            if (pz1.class_of[i] == x) act_ok = act_ok && act_with(lift, pz1.cocycles[i]) == c;
          s.action[x][g] = c;
        }
      extra.push_back(well_defined("action of pi0(Q) on pi1(Z)", act_ok));
      s.maps.push_back(s.action[0]);
      std::vector<int> m3;
      for (size_t c = 0; c < pz1.classes(); ++c) m3.push_back(z_to_u_class(c));
      s.maps.push_back(m3);
    }
    std::vector<int> m4;
    for (size_t c = 0; c < pu1.classes(); ++c)
      m4.push_back(static_cast<int>(class_of(pq1, dw.project(1, pu1.cocycles[pu1.representative[c]]))));
    s.maps.push_back(m4);
    bool m4_ok = true;
    for (size_t i = 0; i < pu1.cocycles.size(); ++i)
      m4_ok = m4_ok && static_cast<int>(class_of(pq1, dw.project(1, pu1.cocycles[i]))) == m4[pu1.class_of[i]];
    extra.push_back(well_defined("pi1(U) -> pi1(Q)", m4_ok));

    if (part == LesPart::Central) {
      // pi1(Q) -> pi2(Z): lift q1 to u1; d^0(u1) d^1(u1)^-1 d^2(u1) lies in Z^2.
      const ProductGroup& u2 = u.obj[2];
      const ProductGroup& z2g = zc.obj[2];
      auto obstruction = [&](const FElem& q1) {
        FElem l = dw.lift(1, q1);
        FElem w = FiniteCarrier::mul(u2, FiniteCarrier::mul(u2, u.coface(2, 0).apply(l), FiniteCarrier::inv(u2, u.coface(2, 1).apply(l))),
                                     u.coface(2, 2).apply(l));
        if (!dw.in_sub(2, w)) throw CosimplicialError("internal: obstruction outside Z^2");
        return dw.to_sub(2, w);
      };
      auto is_coboundary = [&](const FElem& w) {
        FactorEquations eq{&zc.obj[1], &z2g, &zc.coface(2, 1), &zc.coface(2, 0), &zc.coface(2, 2), w};
        return !solve_factor_equations(eq, cap, true).empty();
      };
      std::vector<FElem> reps{FiniteCarrier::one(z2g)};
      auto classify = [&](const FElem& w) {
        for (size_t r = 0; r < reps.size(); ++r)
          if (is_coboundary(FiniteCarrier::mul(z2g, w, FiniteCarrier::inv(z2g, reps[r])))) return static_cast<int>(r);
        reps.push_back(w);
        return static_cast<int>(reps.size() - 1);
      };
      std::vector<int> m5;
      for (size_t c = 0; c < pq1.classes(); ++c) m5.push_back(classify(obstruction(pq1.cocycles[pq1.representative[c]])));
      bool m5_ok = true;
      size_t limit = std::min<size_t>(pq1.cocycles.size(), 400);
      for (size_t i = 0; i < limit; ++i) m5_ok = m5_ok && classify(obstruction(pq1.cocycles[i])) == m5[pq1.class_of[i]];
      extra.push_back(well_defined("pi1(Q) -> pi2(Z)", m5_ok, std::to_string(limit) + " cocycles", limit < pq1.cocycles.size()));
      FiniteSequence::Node last = set_node("pi2(Z)", reps.size(), NodeKind::Abelian);
      last.partial = true;
      s.nodes.push_back(last);
      s.maps.push_back(m5);
    }
  }
  out.summary = summarize(s);
  for (auto& c : extra) out.summary.clauses.push_back(std::move(c));
  return out;
}

}  // namespace cohw
