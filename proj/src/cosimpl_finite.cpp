#include <algorithm>
#include <numeric>

#include "cohw/cosimpl.hpp"

namespace cohw {

// ---- product groups and monomial maps ---------------------------------------

size_t ProductGroup::order_capped(size_t cap) const {
  size_t n = 1;
  for (const auto& f : factors) {
    if (n > cap / f->order()) return cap + 1;
    n *= f->order();
  }
  return n;
}

std::string ProductGroup::describe() const {
  std::string s;
  for (size_t i = 0; i < factors.size(); ++i) s += (i ? " x " : "") + std::to_string(factors[i]->order());
  return s.empty() ? "1" : s;
}

namespace {

void normalize(MonomialHom::Part& p) {
  if (p.source < 0) {
    p.table.clear();
    return;
  }
  if (std::all_of(p.table.begin(), p.table.end(), [](int v) { return v == 0; })) {
    p.source = -1;
    p.table.clear();
  }
}

std::vector<size_t> block_offsets(const std::vector<ProductGroup>& blocks) {
  std::vector<size_t> off;
  size_t o = 0;
  for (const auto& b : blocks) {
    off.push_back(o);
    o += b.factors.size();
  }
  off.push_back(o);
  return off;
}

}  // namespace

FElem MonomialHom::apply(const FElem& x) const {
  if (x.size() != source_factors) throw CosimplicialError("element has the wrong number of factors");
  FElem y(parts.size(), 0);
  for (size_t t = 0; t < parts.size(); ++t)
    if (parts[t].source >= 0) y[t] = parts[t].table[static_cast<size_t>(x[static_cast<size_t>(parts[t].source)])];
  return y;
}

MonomialHom monomial(size_t source_factors, std::vector<MonomialHom::Part> parts) {
  MonomialHom h;
  h.source_factors = source_factors;
  h.parts = std::move(parts);
  for (auto& p : h.parts) normalize(p);
  return h;
}

std::optional<std::string> monomial_defect(const ProductGroup& src, const ProductGroup& tgt, const MonomialHom& h) {
  if (h.source_factors != src.factors.size()) return "map expects " + std::to_string(h.source_factors) + " source factors";
  if (h.parts.size() != tgt.factors.size()) return "map has " + std::to_string(h.parts.size()) + " target factors";
  for (size_t t = 0; t < h.parts.size(); ++t) {
    const auto& p = h.parts[t];
    if (p.source < 0) continue;
    if (static_cast<size_t>(p.source) >= src.factors.size()) return "target factor " + std::to_string(t) + " reads a missing factor";
    const auto& a = *src.factors[static_cast<size_t>(p.source)];
    if (!is_homomorphism(a, *tgt.factors[t], p.table)) return "target factor " + std::to_string(t) + " is not a homomorphism";
  }
  return std::nullopt;
}

ProductGroup FiniteCarrier::product(const std::vector<Object>& blocks) {
  ProductGroup g;
  for (const auto& b : blocks) g.factors.insert(g.factors.end(), b.factors.begin(), b.factors.end());
  return g;
}

MonomialHom FiniteCarrier::identity(const Object& o) {
  std::vector<MonomialHom::Part> parts;
  for (size_t t = 0; t < o.factors.size(); ++t) {
    std::vector<int> id(o.factors[t]->order());
    std::iota(id.begin(), id.end(), 0);
    parts.push_back({static_cast<int>(t), id});
  }
  return monomial(o.factors.size(), std::move(parts));
}

MonomialHom FiniteCarrier::trivial(const Object& src, const Object& tgt) {
  return monomial(src.factors.size(), std::vector<MonomialHom::Part>(tgt.factors.size()));
}

MonomialHom FiniteCarrier::compose(const Hom& outer, const Hom& inner) {
  if (outer.source_factors != inner.parts.size()) throw CosimplicialError("composing maps with mismatched factors");
  std::vector<MonomialHom::Part> parts;
  for (const auto& p : outer.parts) {
    MonomialHom::Part q;
    if (p.source >= 0) {
      const auto& r = inner.parts[static_cast<size_t>(p.source)];
      if (r.source >= 0) {
        q.source = r.source;
        for (int v : r.table) q.table.push_back(p.table[static_cast<size_t>(v)]);
      }
    }
    parts.push_back(std::move(q));
  }
  return monomial(inner.source_factors, std::move(parts));
}

MonomialHom FiniteCarrier::assemble(const std::vector<Object>& src_blocks, const std::vector<Object>& tgt_blocks,
                                    const std::vector<BlockComponent<Hom>>& comps) {
  if (comps.size() != tgt_blocks.size()) throw CosimplicialError("one component per target block is required");
  std::vector<size_t> off = block_offsets(src_blocks);
  std::vector<MonomialHom::Part> parts;
  for (size_t t = 0; t < comps.size(); ++t) {
    const auto& c = comps[t];
    if (c.map.parts.size() != tgt_blocks[t].factors.size() || c.map.source_factors != src_blocks.at(c.source).factors.size())
      throw CosimplicialError("block component has the wrong shape");
    for (auto p : c.map.parts) {
      if (p.source >= 0) p.source += static_cast<int>(off[c.source]);
      parts.push_back(std::move(p));
    }
  }
  return monomial(off.back(), std::move(parts));
}

FElem FiniteCarrier::mul(const Object& o, const Element& a, const Element& b) {
  FElem r(a.size());
  for (size_t t = 0; t < a.size(); ++t) r[t] = o.factors[t]->mul(a[t], b[t]);
  return r;
}

FElem FiniteCarrier::inv(const Object& o, const Element& a) {
  FElem r(a.size());
  for (size_t t = 0; t < a.size(); ++t) r[t] = o.factors[t]->inv(a[t]);
  return r;
}

MonomialHom FiniteCarrier::conjugation(const Object& o, const Element& g) {
  std::vector<MonomialHom::Part> parts;
  for (size_t t = 0; t < o.factors.size(); ++t) {
    const auto& f = *o.factors[t];
    std::vector<int> tab(f.order());
    for (size_t x = 0; x < f.order(); ++x) tab[x] = f.conj(g[t], static_cast<int>(x));
    parts.push_back({static_cast<int>(t), tab});
  }
  return monomial(o.factors.size(), std::move(parts));
}

// ---- factorwise equation solver ---------------------------------------------

namespace {

struct Term {
  int var = -1;
  const std::vector<int>* table = nullptr;
  int eval(const std::vector<int>& val) const { return var < 0 ? 0 : (*table)[static_cast<size_t>(val[static_cast<size_t>(var)])]; }
};

struct Constraint {
  const FiniteGroup* group;
  Term a, b, e;
  int c = 0;
  std::vector<int> vars;
  bool holds(const std::vector<int>& val) const {
    return group->mul(a.eval(val), c) == group->mul(b.eval(val), e.eval(val));
  }
};

Term term_of(const MonomialHom* h, size_t t) {
  Term r;
  if (h && h->parts[t].source >= 0) {
    r.var = h->parts[t].source;
    r.table = &h->parts[t].table;
  }
  return r;
}

}  // namespace

std::vector<FElem> solve_factor_equations(const FactorEquations& eq, size_t cap, bool first_only) {
  const auto& dom = *eq.domain;
  const auto& cod = *eq.codomain;
  size_t nv = dom.factors.size();
  std::vector<Constraint> cons;
  for (size_t t = 0; t < cod.factors.size(); ++t) {
    Constraint c;
    c.group = cod.factors[t].get();
    c.a = term_of(eq.a, t);
    c.b = term_of(eq.b, t);
    c.e = term_of(eq.e, t);
    c.c = eq.constant.empty() ? 0 : eq.constant[t];
    for (int v : {c.a.var, c.b.var, c.e.var})
      if (v >= 0 && std::find(c.vars.begin(), c.vars.end(), v) == c.vars.end()) c.vars.push_back(v);
    if (c.vars.empty()) {
      if (!c.holds({})) return {};
      continue;
    }
    cons.push_back(c);
  }
  std::vector<std::vector<size_t>> by_var(nv);
  for (size_t i = 0; i < cons.size(); ++i)
    for (int v : cons[i].vars) by_var[static_cast<size_t>(v)].push_back(i);

  std::vector<int> val(nv, -1);
  std::vector<FElem> out;
  bool stop = false;
  std::function<void(size_t)> rec = [&](size_t assigned) {
    if (stop) return;
    if (assigned == nv) {
      if (out.size() >= cap) throw CapExceeded("more than " + std::to_string(cap) + " solutions");
      out.push_back(val);
      if (first_only) stop = true;
      return;
    }
    // Most constrained variable: filter each open domain against fully determined constraints.
    int best = -1;
    std::vector<int> best_cands;
    for (size_t v = 0; v < nv; ++v) {
      if (val[v] >= 0) continue;
      std::vector<int> cands;
      size_t order = dom.factors[v]->order();
      for (size_t x = 0; x < order; ++x) {
        val[v] = static_cast<int>(x);
        bool ok = true;
        for (size_t ci : by_var[v]) {
          const auto& c = cons[ci];
          bool ready = std::all_of(c.vars.begin(), c.vars.end(), [&](int w) { return val[static_cast<size_t>(w)] >= 0; });
          if (ready && !c.holds(val)) {
            ok = false;
            break;
          }
        }
        if (ok) cands.push_back(static_cast<int>(x));
      }
      val[v] = -1;
      if (best < 0 || cands.size() < best_cands.size()) {
        best = static_cast<int>(v);
        best_cands = std::move(cands);
        if (best_cands.size() <= 1) break;
      }
    }
    for (int x : best_cands) {
      val[static_cast<size_t>(best)] = x;
      rec(assigned + 1);
      if (stop) break;
    }
    val[static_cast<size_t>(best)] = -1;
  };
  rec(0);
  return out;
}

std::vector<FElem> enumerate_elements(const ProductGroup& g, size_t cap) {
  if (g.order_capped(cap) > cap) throw CapExceeded("group of order above " + std::to_string(cap));
  std::vector<FElem> out{FElem(g.factors.size(), 0)};
  for (size_t t = g.factors.size(); t-- > 0;) {
    std::vector<FElem> next;
    for (size_t x = 0; x < g.factors[t]->order(); ++x)
      for (const auto& e : out) {
        FElem f = e;
        f[t] = static_cast<int>(x);
        next.push_back(f);
      }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<FElem> product_generators(const ProductGroup& g) {
  std::vector<FElem> gens;
  for (size_t t = 0; t < g.factors.size(); ++t)
    for (int s : g.factors[t]->generators()) {
      FElem e(g.factors.size(), 0);
      e[t] = s;
      gens.push_back(e);
    }
  return gens;
}

// ---- cohomotopy -------------------------------------------------------------

std::vector<FElem> pi0_finite(const FiniteCosimplicial& u, size_t cap) {
  if (u.top() < 1) return enumerate_elements(u.obj[0], cap);
  FactorEquations eq{&u.obj[0], &u.obj[1], &u.coface(1, 0), &u.coface(1, 1), nullptr, {}};
  auto sol = solve_factor_equations(eq, cap);
  std::sort(sol.begin(), sol.end());
  return sol;
}

size_t FinitePi1::index_of(const FElem& z) const {
  auto it = std::lower_bound(cocycles.begin(), cocycles.end(), z);
  if (it == cocycles.end() || *it != z) throw CosimplicialError("element is not a cocycle");
  return static_cast<size_t>(it - cocycles.begin());
}

FinitePi1 pi1_finite(const FiniteCosimplicial& u, size_t cap) {
  if (u.top() < 1) throw CosimplicialError("pi^1 needs degree 1");
  FinitePi1 p;
  if (u.top() == 1) {
    p.cocycles = enumerate_elements(u.obj[1], cap);
  } else {
    FactorEquations eq{&u.obj[1], &u.obj[2], &u.coface(2, 1), &u.coface(2, 2), &u.coface(2, 0), {}};
    p.cocycles = solve_factor_equations(eq, cap);
    std::sort(p.cocycles.begin(), p.cocycles.end());
  }
  size_t n = p.cocycles.size();
  std::vector<size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<size_t(size_t)> find = [&](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& g : product_generators(u.obj[0]))
    for (size_t i = 0; i < n; ++i) {
      size_t j = p.index_of(act_on_cocycle(u, p.cocycles[i], g));
      size_t a = find(i), b = find(j);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  p.class_of.assign(n, 0);
  std::vector<size_t> root_class(n, SIZE_MAX);
  for (size_t i = 0; i < n; ++i) {
    size_t r = find(i);
    if (root_class[r] == SIZE_MAX) {
      root_class[r] = p.representative.size();
      p.representative.push_back(i);
    }
    p.class_of[i] = root_class[r];
  }
  p.base_class = p.class_of[p.index_of(FiniteCarrier::one(u.obj[1]))];
  return p;
}

// ---- constructions ----------------------------------------------------------

namespace {

MonomialHom single(const ProductGroup& src, const ProductGroup& tgt, const std::vector<std::pair<int, std::vector<int>>>& parts) {
  (void)tgt;
  std::vector<MonomialHom::Part> ps;
  for (const auto& [s, t] : parts) ps.push_back({s, t});
  return monomial(src.factors.size(), std::move(ps));
}

// Degree-2 padding: the trivial group with trivial cofaces.
void pad_trivial_degree(FiniteCosimplicial& x) {
  ProductGroup one;
  x.obj.push_back(one);
  size_t n = x.obj.size() - 1;
  x.d.emplace_back();
  for (size_t i = 0; i <= n; ++i) x.d.back().push_back(FiniteCarrier::trivial(x.obj[n - 1], one));
}

}  // namespace

FiniteCosimplicial double_coset_object(const GroupPtr& u, const std::vector<int>& first, const std::vector<int>& second) {
  SubgroupData a = make_subgroup(u, first), b = make_subgroup(u, second);
  FiniteCosimplicial x;
  x.obj = {ProductGroup{{a.group, b.group}}, ProductGroup{{u}}};
  x.d.resize(2);
  x.d[1].push_back(single(x.obj[0], x.obj[1], {{0, a.embedding}}));
  x.d[1].push_back(single(x.obj[0], x.obj[1], {{1, b.embedding}}));
  pad_trivial_degree(x);
  return x;
}

namespace {

// n -> maps Hom([n], [r]) -> B, i.e. B^{Hom([n],[r])}, with f acting by precomposition.
FiniteCosimplicial function_object(const GroupPtr& b, int r, int top) {
  auto maps_into = [r](int n) {
    std::vector<SimplexMap> out;
    SimplexMap s(static_cast<size_t>(n) + 1, 0);
    std::function<void(int, int)> rec = [&](int pos, int lo) {
      if (pos > n) {
        out.push_back(s);
        return;
      }
      for (int v = lo; v <= r; ++v) {
        s[static_cast<size_t>(pos)] = v;
        rec(pos + 1, v);
      }
    };
    rec(0, 0);
    return out;
  };
  FiniteCosimplicial x;
  std::vector<std::vector<SimplexMap>> dom;
  for (int n = 0; n <= top; ++n) {
    dom.push_back(maps_into(n));
    x.obj.push_back(ProductGroup{std::vector<GroupPtr>(dom.back().size(), b)});
  }
  std::vector<int> id(b->order());
  std::iota(id.begin(), id.end(), 0);
  x.d.resize(static_cast<size_t>(top) + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<MonomialHom::Part> parts;
      for (const auto& s : dom[static_cast<size_t>(n)]) {
        SimplexMap pre = compose(s, coface_map(n, i));
        auto it = std::find(dom[static_cast<size_t>(n - 1)].begin(), dom[static_cast<size_t>(n - 1)].end(), pre);
        parts.push_back({static_cast<int>(it - dom[static_cast<size_t>(n - 1)].begin()), id});
      }
      x.d[static_cast<size_t>(n)].push_back(monomial(dom[static_cast<size_t>(n - 1)].size(), std::move(parts)));
    }
  return x;
}

FiniteCosimplicial product_object(const FiniteCosimplicial& x, const FiniteCosimplicial& y) {
  FiniteCosimplicial z;
  z.d.resize(x.obj.size());
  for (size_t n = 0; n < x.obj.size(); ++n) {
    z.obj.push_back(FiniteCarrier::product({x.obj[n], y.obj[n]}));
    if (n == 0) continue;
    for (size_t i = 0; i <= n; ++i)
      z.d[n].push_back(FiniteCarrier::assemble({x.obj[n - 1], y.obj[n - 1]}, {x.obj[n], y.obj[n]},
                                               {{0, x.d[n][i]}, {1, y.d[n][i]}}));
  }
  return z;
}

GroupPtr random_library_group(Rng& rng, size_t max_order) {
  static const std::vector<NamedGroup> lib = small_groups(64);
  std::vector<GroupPtr> ok;
  for (const auto& g : lib)
    if (g.group->order() <= max_order) ok.push_back(g.group);
  return ok[rng.index(ok.size())];
}

}  // namespace

FiniteCosimplicial random_finite_semi(Rng& rng, size_t max_order) {
  auto two_homs = [&]() {
    GroupPtr a = random_library_group(rng, max_order), b = random_library_group(rng, max_order);
    auto homs = homomorphisms(*a, *b, 200);
    FiniteCosimplicial x;
    x.obj = {ProductGroup{{a}}, ProductGroup{{b}}};
    x.d.resize(2);
    for (int i = 0; i < 2; ++i) x.d[1].push_back(monomial(1, {{0, homs[rng.index(homs.size())]}}));
    pad_trivial_degree(x);
    return x;
  };
  auto functions = [&]() {
    return function_object(random_library_group(rng, std::min<size_t>(max_order, 6)), static_cast<int>(rng.index(2)), 2);
  };
  switch (rng.index(4)) {
    case 0: return two_homs();
    case 1: return functions();
    case 2: return product_object(two_homs(), functions());
    default: {
      GroupPtr g = random_library_group(rng, max_order);
      std::vector<int> gens = g->generators();
      auto h1 = generated_subgroup(*g, {gens[rng.index(gens.size())]});
      auto h2 = generated_subgroup(*g, {static_cast<int>(rng.index(g->order()))});
      return double_coset_object(g, h1, h2);
    }
  }
}

TwistCheck check_twist_bijection(const FiniteCosimplicial& u, const FElem& beta, size_t cap) {
  TwistCheck out;
  FiniteCosimplicial tw = twist(u, beta);
  FinitePi1 p = pi1_finite(u, cap), q = pi1_finite(tw, cap);
  out.classes = p.classes();
  out.twisted_classes = q.classes();
  auto fail = [&](const std::string& m) {
    out.ok = false;
    out.failure = m;
    return out;
  };
  if (p.cocycles.size() != q.cocycles.size()) return fail("cocycle sets differ in size");
  std::vector<size_t> image_class(q.classes(), SIZE_MAX);
  std::vector<bool> hit(p.cocycles.size(), false);
  for (size_t i = 0; i < q.cocycles.size(); ++i) {
    FElem z = FiniteCarrier::mul(u.obj[1], q.cocycles[i], beta);
    auto it = std::lower_bound(p.cocycles.begin(), p.cocycles.end(), z);
    if (it == p.cocycles.end() || *it != z) return fail("twisted cocycle times beta is not a cocycle");
    size_t j = static_cast<size_t>(it - p.cocycles.begin());
    if (hit[j]) return fail("right multiplication is not injective");
    hit[j] = true;
    size_t& c = image_class[q.class_of[i]];
    if (c == SIZE_MAX) c = p.class_of[j];
    else if (c != p.class_of[j]) return fail("a twisted class maps to two classes");
  }
  std::vector<size_t> sorted = image_class;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || q.classes() != p.classes())
    return fail("induced map on classes is not bijective");
  if (image_class[q.base_class] != p.class_of[p.index_of(beta)]) return fail("basepoint does not map to the class of beta");
  return out;
}

}  // namespace cohw
