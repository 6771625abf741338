#include "cohw/gcohom.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cohw {

namespace {

std::vector<int> identity_table(size_t n) {
  std::vector<int> t(n);
  std::iota(t.begin(), t.end(), 0);
  return t;
}

// Breadth-first extension of generator images to all of G with act(g s) = act(g) act(s).
template <class Hom, class Compose>
std::vector<Hom> extend_over_cayley(const FiniteGroup& g, const std::vector<Hom>& gen_images, const Hom& one, Compose compose) {
  const auto& gens = g.generators();
  if (gen_images.size() != gens.size())
    throw GroupActionError("expected " + std::to_string(gens.size()) + " generator images, got " + std::to_string(gen_images.size()));
  std::vector<std::optional<Hom>> out(g.order());
  out[0] = one;
  std::vector<int> queue{0};
  for (size_t q = 0; q < queue.size(); ++q) {
    int x = queue[q];
    for (size_t k = 0; k < gens.size(); ++k) {
      int y = g.mul(x, gens[k]);
      Hom h = compose(*out[static_cast<size_t>(x)], gen_images[k]);
      if (!out[static_cast<size_t>(y)]) {
        out[static_cast<size_t>(y)] = std::move(h);
        queue.push_back(y);
      } else if (!(*out[static_cast<size_t>(y)] == h)) {
        throw GroupActionError("generator images violate a relation of the acting group at element " + g.label(y));
      }
    }
  }
  std::vector<Hom> all;
  for (auto& h : out) {
    if (!h) throw GroupActionError("generators do not generate the acting group");
    all.push_back(std::move(*h));
  }
  return all;
}

template <class C>
Cosimplicial<C> build_cochains(const FiniteGroup& g, const typename C::Object& u, const std::vector<typename C::Hom>& act,
                               int top, size_t cap) {
  if (top < 0) throw CosimplicialError("negative top degree");
  size_t order = g.order();
  std::vector<size_t> count{1};
  for (int n = 1; n <= top; ++n) {
    if (count.back() > cap / order) throw CapExceeded("|G|^" + std::to_string(n) + " exceeds the cochain cap " + std::to_string(cap));
    count.push_back(count.back() * order);
  }
  typename C::Hom id = C::identity(u);
  Cosimplicial<C> out;
  std::vector<std::vector<typename C::Object>> blocks;
  for (int n = 0; n <= top; ++n) {
    blocks.emplace_back(count[static_cast<size_t>(n)], u);
    out.obj.push_back(C::product(blocks.back()));
  }
  out.d.resize(static_cast<size_t>(top) + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<BlockComponent<typename C::Hom>> comps;
      for (size_t t = 0; t < count[static_cast<size_t>(n)]; ++t) {
        std::vector<int> tu = tuple_at(t, n, order), src;
        if (i == 0) {
          src.assign(tu.begin() + 1, tu.end());
          comps.push_back({tuple_index(src, order), act[static_cast<size_t>(tu[0])]});
          continue;
        }
        if (i == n) {
          src.assign(tu.begin(), tu.end() - 1);
        } else {
          src = tu;
          src[static_cast<size_t>(i) - 1] = g.mul(tu[static_cast<size_t>(i) - 1], tu[static_cast<size_t>(i)]);
          src.erase(src.begin() + i);
        }
        comps.push_back({tuple_index(src, order), id});
      }
      out.d[static_cast<size_t>(n)].push_back(C::assemble(blocks[static_cast<size_t>(n) - 1], blocks[static_cast<size_t>(n)], comps));
    }
  for (int n = 0; n < top; ++n) {
    out.s.emplace_back();
    for (int i = 0; i <= n; ++i) {
      std::vector<BlockComponent<typename C::Hom>> comps;
      for (size_t t = 0; t < count[static_cast<size_t>(n)]; ++t) {
        std::vector<int> src = tuple_at(t, n, order);
        src.insert(src.begin() + i, 0);
        comps.push_back({tuple_index(src, order), id});
      }
      out.s.back().push_back(C::assemble(blocks[static_cast<size_t>(n) + 1], blocks[static_cast<size_t>(n)], comps));
    }
  }
  IdentityReport rep = check_identities(out);
  if (!rep.ok) throw CosimplicialError("cochain object fails the identities: " + rep.failure);
  return out;
}

MonomialHom factor_map(const std::vector<int>& table) { return monomial(1, {{0, table}}); }

std::vector<MonomialHom> factor_maps(const FiniteGroupAction& a) {
  std::vector<MonomialHom> out;
  for (const auto& t : a.act) out.push_back(factor_map(t));
  return out;
}

ProductGroup single(const GroupPtr& g) { return ProductGroup{{g}}; }

Vec flatten(const std::vector<Vec>& parts) {
  Vec out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

FiniteGroupAction restrict_action(const FiniteGroupAction& a, const SubgroupData& sub) {
  FiniteGroupAction r{sub.group, a.target, {}};
  for (int h : sub.embedding) r.act.push_back(a.act[static_cast<size_t>(h)]);
  return r;
}

}  // namespace

size_t tuple_index(const std::vector<int>& tuple, size_t order) {
  size_t x = 0;
  for (int g : tuple) x = x * order + static_cast<size_t>(g);
  return x;
}

std::vector<int> tuple_at(size_t index, int n, size_t order) {
  std::vector<int> out(static_cast<size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    out[static_cast<size_t>(k)] = static_cast<int>(index % order);
    index /= order;
  }
  return out;
}

// ---- actions ----------------------------------------------------------------

void validate(const FiniteGroupAction& a) {
  const auto& g = *a.group;
  const auto& u = *a.target;
  if (a.act.size() != g.order()) throw GroupActionError("one automorphism per group element is required");
  for (size_t x = 0; x < g.order(); ++x) {
    const auto& m = a.act[x];
    if (m.size() != u.order() || !is_homomorphism(u, u, m)) throw GroupActionError(g.label(static_cast<int>(x)) + " does not act by a homomorphism");
    if (std::set<int>(m.begin(), m.end()).size() != u.order()) throw GroupActionError(g.label(static_cast<int>(x)) + " does not act bijectively");
  }
  if (a.act[0] != identity_table(u.order())) throw GroupActionError("the identity acts nontrivially");
  for (size_t x = 0; x < g.order(); ++x)
    for (size_t y = 0; y < g.order(); ++y)
      if (a.act[static_cast<size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)))] != compose_maps(a.act[x], a.act[y]))
        throw GroupActionError("(gh).u != g.(h.u) for g=" + g.label(static_cast<int>(x)) + ", h=" + g.label(static_cast<int>(y)));
}

void validate(const UnipotentGroupAction& a) {
  const auto& g = *a.group;
  size_t d = a.target->dim();
  if (a.act.size() != g.order()) throw GroupActionError("one automorphism per group element is required");
  for (size_t x = 0; x < g.order(); ++x) {
    if (a.act[x].rows() != d || a.act[x].cols() != d) throw GroupActionError("automorphism of the wrong size");
    if (auto why = lie_hom_defect(*a.target, *a.target, a.act[x])) throw GroupActionError(g.label(static_cast<int>(x)) + ": " + *why);
    if (rank(a.act[x]) != d) throw GroupActionError(g.label(static_cast<int>(x)) + " does not act bijectively");
  }
  if (!(a.act[0] == QMat::identity(d))) throw GroupActionError("the identity acts nontrivially");
  for (size_t x = 0; x < g.order(); ++x)
    for (size_t y = 0; y < g.order(); ++y)
      if (!(a.act[static_cast<size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)))] == a.act[x] * a.act[y]))
        throw GroupActionError("(gh).u != g.(h.u) for g=" + g.label(static_cast<int>(x)) + ", h=" + g.label(static_cast<int>(y)));
}

FiniteGroupAction make_action(const GroupPtr& g, const GroupPtr& u, const std::vector<std::vector<int>>& generator_images) {
  FiniteGroupAction a{g, u, extend_over_cayley(*g, generator_images, identity_table(u->order()), compose_maps)};
  validate(a);
  return a;
}

UnipotentGroupAction make_action(const GroupPtr& g, const LiePtr& u, const std::vector<QMat>& generator_images) {
  UnipotentGroupAction a{g, u, extend_over_cayley(*g, generator_images, QMat::identity(u->dim()), [](const QMat& x, const QMat& y) { return x * y; })};
  validate(a);
  return a;
}

FiniteGroupAction trivial_action(const GroupPtr& g, const GroupPtr& u) {
  return {g, u, std::vector<std::vector<int>>(g->order(), identity_table(u->order()))};
}

UnipotentGroupAction trivial_action(const GroupPtr& g, const LiePtr& u) {
  return {g, u, std::vector<QMat>(g->order(), QMat::identity(u->dim()))};
}

// ---- cochains and low degrees -----------------------------------------------

FiniteCosimplicial cochain_cosimplicial(const FiniteGroupAction& a, int top, size_t cap) {
  return build_cochains<FiniteCarrier>(*a.group, single(a.target), factor_maps(a), top, cap);
}

LieCosimplicial cochain_cosimplicial(const UnipotentGroupAction& a, int top, size_t cap) {
  return build_cochains<LieCarrier>(*a.group, a.target, a.act, top, cap);
}

FiniteH0H1 h0_h1(const FiniteGroupAction& a, size_t cap) {
  FiniteCosimplicial c = cochain_cosimplicial(a, 2);
  FiniteH0H1 out{{}, pi1_finite(c, cap)};
  for (const auto& x : pi0_finite(c, cap)) out.fixed.push_back(x[0]);
  std::sort(out.fixed.begin(), out.fixed.end());
  return out;
}

UnipotentH0H1 h0_h1(const UnipotentGroupAction& a) {
  LieCosimplicial c = cochain_cosimplicial(a, 2);
  return {pi0_lie(c), LiePi1(c)};
}

bool is_crossed_homomorphism(const FiniteGroupAction& a, const FElem& c) {
  const auto& g = *a.group;
  const auto& u = *a.target;
  if (c.size() != g.order()) return false;
  for (size_t x = 0; x < g.order(); ++x)
    for (size_t y = 0; y < g.order(); ++y)
      if (c[static_cast<size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)))] != u.mul(c[x], a.act[x][static_cast<size_t>(c[y])])) return false;
  return true;
}

bool is_crossed_homomorphism(const UnipotentGroupAction& a, const std::vector<Vec>& c) {
  const auto& g = *a.group;
  if (c.size() != g.order()) return false;
  for (size_t x = 0; x < g.order(); ++x)
    for (size_t y = 0; y < g.order(); ++y)
      if (c[static_cast<size_t>(g.mul(static_cast<int>(x), static_cast<int>(y)))] != group_mul(*a.target, c[x], a.act[x].apply(c[y]))) return false;
  return true;
}

// ---- twisting ---------------------------------------------------------------

FiniteGroupAction serre_twist(const FiniteGroupAction& a, const FElem& alpha) {
  if (!is_crossed_homomorphism(a, alpha)) throw GroupActionError("twisting element is not a 1-cocycle");
  const auto& u = *a.target;
  FiniteGroupAction out = a;
  for (size_t g = 0; g < a.act.size(); ++g)
    for (size_t x = 0; x < u.order(); ++x) out.act[g][x] = u.conj(alpha[g], a.act[g][x]);
  validate(out);
  return out;
}

UnipotentGroupAction serre_twist(const UnipotentGroupAction& a, const std::vector<Vec>& alpha) {
  if (!is_crossed_homomorphism(a, alpha)) throw GroupActionError("twisting element is not a 1-cocycle");
  UnipotentGroupAction out = a;
  for (size_t g = 0; g < a.act.size(); ++g) out.act[g] = adjoint_matrix(*a.target, alpha[g]) * a.act[g];
  validate(out);
  return out;
}

SerreTwistReport serre_twist_check(const FiniteGroupAction& a, const FElem& alpha, size_t cap) {
  FiniteCosimplicial c = cochain_cosimplicial(a, 2);
  FiniteCosimplicial direct = cochain_cosimplicial(serre_twist(a, alpha), 2);
  FiniteCosimplicial twisted = twist(c, alpha);
  SerreTwistReport r;
  r.matches_twisted_object = direct.d == twisted.d;
  r.bijection = check_twist_bijection(c, alpha, cap);
  return r;
}

bool serre_twist_matches(const UnipotentGroupAction& a, const std::vector<Vec>& alpha) {
  LieCosimplicial c = cochain_cosimplicial(a, 2);
  LieCosimplicial direct = cochain_cosimplicial(serre_twist(a, alpha), 2);
  return direct.d == twist(c, flatten(alpha)).d;
}

// ---- inflation-restriction --------------------------------------------------

InflationRestriction inflation_restriction(const FiniteGroupAction& a, const std::vector<int>& normal, size_t cap) {
  const GroupPtr& g = a.group;
  const GroupPtr& u = a.target;
  if (!is_subgroup(*g, normal) || !is_normal(*g, normal)) throw GroupActionError("inflation-restriction needs a normal subgroup");
  std::vector<int> fixed;
  for (size_t x = 0; x < u->order(); ++x)
    if (std::all_of(normal.begin(), normal.end(), [&](int h) { return a.act[static_cast<size_t>(h)][x] == static_cast<int>(x); }))
      fixed.push_back(static_cast<int>(x));
  SubgroupData ui = make_subgroup(u, fixed);
  std::vector<int> to_ui(u->order(), -1);
  for (size_t s = 0; s < ui.embedding.size(); ++s) to_ui[static_cast<size_t>(ui.embedding[s])] = static_cast<int>(s);
  QuotientData gq = make_quotient(g, normal);
  std::vector<int> rep(gq.group->order(), -1);
  for (size_t x = 0; x < g->order(); ++x)
    if (rep[static_cast<size_t>(gq.projection[x])] < 0) rep[static_cast<size_t>(gq.projection[x])] = static_cast<int>(x);

  FiniteGroupAction quotient_action{gq.group, ui.group, {}};
  for (int r : rep) {
    std::vector<int> m;
    for (int s : ui.embedding) m.push_back(to_ui[static_cast<size_t>(a.act[static_cast<size_t>(r)][static_cast<size_t>(s)])]);
    quotient_action.act.push_back(m);
  }
  validate(quotient_action);
  SubgroupData gi = make_subgroup(g, normal);
  FiniteGroupAction sub_action = restrict_action(a, gi);

  FinitePi1 h_q = h0_h1(quotient_action, cap).h1, h_g = h0_h1(a, cap).h1, h_i = h0_h1(sub_action, cap).h1;

  InflationRestriction out;
  MixedExactSequence& m = out.sequence;
  m.nodes = {{"H1(G/I,U^I)", NodeKind::PointedSet, std::to_string(h_q.classes())},
             {"H1(G,U)", NodeKind::PointedSet, std::to_string(h_g.classes())},
             {"H1(I,U)", NodeKind::PointedSet, std::to_string(h_i.classes())}};
  m.k = -1;
  auto add = [&](std::string clause, bool ok, std::string detail = {}) { m.clauses.push_back({std::move(clause), ok, false, std::move(detail)}); };

  out.inflation.assign(h_q.classes(), SIZE_MAX);
  bool well_defined = true;
  for (size_t i = 0; i < h_q.cocycles.size(); ++i) {
    FElem c(g->order());
    for (size_t x = 0; x < g->order(); ++x)
      c[x] = ui.embedding[static_cast<size_t>(h_q.cocycles[i][static_cast<size_t>(gq.projection[x])])];
    size_t cls = h_g.class_of[h_g.index_of(c)];
    size_t& slot = out.inflation[h_q.class_of[i]];
    if (slot == SIZE_MAX) slot = cls;
    well_defined = well_defined && slot == cls;
  }
  add("inflation is well defined on classes", well_defined);
  out.restriction.assign(h_g.classes(), SIZE_MAX);
  well_defined = true;
  for (size_t i = 0; i < h_g.cocycles.size(); ++i) {
    FElem c;
    for (int h : gi.embedding) c.push_back(h_g.cocycles[i][static_cast<size_t>(h)]);
    size_t cls = h_i.class_of[h_i.index_of(c)];
    size_t& slot = out.restriction[h_g.class_of[i]];
    if (slot == SIZE_MAX) slot = cls;
    well_defined = well_defined && slot == cls;
  }
  add("restriction is well defined on classes", well_defined);
  add("inflation preserves basepoints", out.inflation[h_q.base_class] == h_g.base_class);
  add("restriction preserves basepoints", out.restriction[h_g.base_class] == h_i.base_class);
  std::set<size_t> image(out.inflation.begin(), out.inflation.end());
  add("exact at H1(G/I,U^I): inflation injective", image.size() == out.inflation.size(),
      std::to_string(image.size()) + " images of " + std::to_string(out.inflation.size()) + " classes");
  std::set<size_t> kernel;
  for (size_t c = 0; c < out.restriction.size(); ++c)
    if (out.restriction[c] == h_i.base_class) kernel.insert(c);
  add("exact at H1(G,U)", kernel == image,
      std::to_string(kernel.size()) + " classes restrict trivially, " + std::to_string(image.size()) + " are inflated");
  return out;
}

// ---- long exact sequences ---------------------------------------------------

FiniteLes les_group_cohomology(const FiniteGroupAction& a, const std::vector<int>& central, size_t cap) {
  FiniteCosimplicial c = cochain_cosimplicial(a, 2);
  FactorSubgroups z;
  for (const auto& o : c.obj) z.emplace_back(o.factors.size(), central);
  return les_finite(c, z, LesPart::Central, cap);
}

CentralLes les_group_cohomology(const UnipotentGroupAction& a, const std::vector<Vec>& central, Rng& rng, int samples) {
  LieCosimplicial c = cochain_cosimplicial(a, 3);
  size_t d = a.target->dim();
  std::vector<std::vector<Vec>> spans;
  for (const auto& o : c.obj) {
    spans.emplace_back();
    for (size_t block = 0; block < o->dim() / std::max<size_t>(d, 1); ++block)
      for (const auto& v : central) {
        Vec w(o->dim());
        std::copy(v.begin(), v.end(), w.begin() + static_cast<long>(block * d));
        spans.back().push_back(w);
      }
  }
  return les_unipotent_central(split_extension(c, spans, true), rng, samples);
}

// ---- random instances -------------------------------------------------------

FiniteGroupAction random_action(Rng& rng, const GroupPtr& g, const GroupPtr& u) {
  auto autos = automorphisms(*u, 200);
  for (int attempt = 0; attempt < 40; ++attempt) {
    std::vector<std::vector<int>> images;
    for (size_t k = 0; k < g->generators().size(); ++k)
      images.push_back(rng.coin() ? autos[rng.index(autos.size())] : identity_table(u->order()));
    try {
      return make_action(g, u, images);
    } catch (const GroupActionError&) {
    }
  }
  return trivial_action(g, u);
}

CentralGroupExtension random_central_extension(Rng& rng, size_t max_group, size_t max_target) {
  static const std::vector<NamedGroup> lib = small_groups(64);
  std::vector<GroupPtr> gs, us;
  for (const auto& n : lib) {
    if (n.group->order() <= max_group) gs.push_back(n.group);
    if (n.group->order() <= max_target) us.push_back(n.group);
  }
  GroupPtr g = gs[rng.index(gs.size())], u = us[rng.index(us.size())];
  CentralGroupExtension e{random_action(rng, g, u), {}};
  std::vector<int> centre = u->center();
  int z = centre[rng.index(centre.size())];
  if (z == 0 && centre.size() > 1) z = centre[1 + rng.index(centre.size() - 1)];
  std::vector<int> orbit;
  for (const auto& m : e.action.act) orbit.push_back(m[static_cast<size_t>(z)]);
  e.central = generated_subgroup(*u, orbit);
  return e;
}

}  // namespace cohw
