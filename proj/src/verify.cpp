#include "cohw/verify.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cohw/cosimpl.hpp"
#include "cohw/gcohom.hpp"
#include "cohw/hodge.hpp"
#include "cohw/hopf.hpp"
#include "cohw/les.hpp"
#include "cohw/phin.hpp"
#include "cohw/rng.hpp"
#include "cohw/torsor.hpp"

namespace cohw {

namespace {

class Recorder {
 public:
  void check(const std::string& name, bool ok, const std::function<std::string()>& describe) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, results_.size()).first;
      results_.push_back({name, 0, 0, {}});
    }
    PropertyResult& r = results_[it->second];
    ++r.checked;
    if (ok) {
      ++r.passed;
    } else if (r.counterexamples.size() < 3) {
      r.counterexamples.push_back("instance " + std::to_string(instance_) + ": " + describe());
    }
  }
  void check(const std::string& name, bool ok) {
    check(name, ok, [] { return std::string("see instance"); });
  }
  void set_instance(int i) { instance_ = i; }
  std::vector<PropertyResult> take() { return std::move(results_); }

 private:
  std::vector<PropertyResult> results_;
  std::map<std::string, size_t> index_;
  int instance_ = 0;
};

std::string dims(const std::vector<size_t>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

std::string elements(const std::vector<int>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "}";
}

GroupPtr library_group(Rng& rng, size_t max_order, std::string* name = nullptr) {
  static const auto lib = small_groups(64);
  std::vector<const NamedGroup*> ok;
  for (const auto& n : lib)
    if (n.group->order() <= max_order) ok.push_back(&n);
  const NamedGroup* pick = ok[rng.index(ok.size())];
  if (name) *name = pick->name;
  return pick->group;
}

// ---- bch --------------------------------------------------------------------

void suite_bch(Rng& rng, Recorder& r) {
  LiePtr l = random_nilpotent(rng, {6, 4, rng.coin()});
  size_t n = l->dim();
  Vec a = rng.rational_vec(n, 100, 100), b = rng.rational_vec(n, 100, 100), c = rng.rational_vec(n, 100, 100);
  auto where = [&] { return "dim " + std::to_string(n) + ", a = " + to_string(a) + ", b = " + to_string(b); };
  r.check("associativity", group_mul(*l, group_mul(*l, a, b), c) == group_mul(*l, a, group_mul(*l, b, c)), where);
  r.check("inverse", is_zero_vec(group_mul(*l, a, group_inv(a))) && is_zero_vec(group_mul(*l, group_inv(b), b)), where);
  r.check("identity", group_mul(*l, a, Vec(n)) == a && group_mul(*l, Vec(n), a) == a, where);
  r.check("conjugation is exp(ad)", group_conj(*l, a, b) == adjoint_matrix(*l, a).apply(b), where);
}

// ---- double cosets and twisting ----------------------------------------------

struct DoubleCosetInstance {
  std::string name;
  GroupPtr u;
  std::vector<int> first, second;
};

DoubleCosetInstance double_coset_instance(Rng& rng) {
  DoubleCosetInstance c;
  c.u = library_group(rng, 48, &c.name);
  int n = static_cast<int>(c.u->order());
  auto pick = [&] { return static_cast<int>(rng.index(static_cast<size_t>(n))); };
  c.first = generated_subgroup(*c.u, {pick()});
  c.second = generated_subgroup(*c.u, {pick(), pick()});
  return c;
}

std::string describe(const DoubleCosetInstance& c) {
  return c.name + " with U' = " + elements(c.first) + ", U'' = " + elements(c.second);
}

void suite_double_coset(Rng& rng, Recorder& r) {
  DoubleCosetInstance c = double_coset_instance(rng);
  FiniteCosimplicial g = cogenerate(double_coset_object(c.u, c.first, c.second));
  auto where = [&] { return describe(c); };
  r.check("identities", check_identities(g).ok, where);
  SubgroupData s1 = make_subgroup(c.u, c.first), s2 = make_subgroup(c.u, c.second);
  std::set<int> inter;
  bool diagonal = true;
  for (const auto& e : pi0_finite(g)) {
    int x = s1.embedding[static_cast<size_t>(e[0])], y = s2.embedding[static_cast<size_t>(e[1])];
    diagonal = diagonal && x == y;
    inter.insert(x);
  }
  auto meet = intersect_sorted(c.first, c.second);
  r.check("pi0 = U' meet U''", diagonal && std::vector<int>(inter.begin(), inter.end()) == meet, where);
  size_t classes = pi1_finite(g).classes(), brute = count_double_cosets(*c.u, c.first, c.second);
  r.check("pi1 = double cosets", classes == brute,
          [&] { return where() + ": " + std::to_string(classes) + " vs " + std::to_string(brute); });
}

void suite_twisting(Rng& rng, Recorder& r) {
  DoubleCosetInstance c = double_coset_instance(rng);
  FiniteCosimplicial g = cogenerate(double_coset_object(c.u, c.first, c.second));
  FinitePi1 p = pi1_finite(g);
  auto where = [&] { return describe(c); };
  bool all = true;
  for (const auto& beta : p.cocycles) {
    TwistCheck t = check_twist_bijection(g, beta);
    all = all && t.ok && t.classes == p.classes();
  }
  r.check("right multiplication is a bijection on pi1", all, where);
  auto u0s = enumerate_elements(g.obj[0], 100000);
  for (int k = 0; k < 3; ++k) {
    const FElem& beta = p.cocycles[rng.index(p.cocycles.size())];
    const FElem& u0 = u0s[rng.index(u0s.size())];
    FElem moved = act_on_cocycle(g, beta, u0);
    auto iso = trivial_twist_isomorphism(twist(g, beta), u0);
    r.check("twist by a coboundary is isomorphic", check_cosimplicial_map(twist(g, moved), twist(g, beta), iso).ok, where);
  }
}

// ---- Dold-Kan and Eilenberg-Zilber ---------------------------------------------

void suite_dold_kan(Rng& rng, Recorder& r, int instance) {
  LieCosimplicial x = random_semi_vector(rng, 4);
  LieCosimplicial g = cogenerate(x);
  auto a = pi_abelian(g), b = pi_abelian(x);
  r.check("cogenerated identities", check_identities(g).ok);
  r.check("pi of Gamma = Moore cohomology", a == b, [&] { return dims(a) + " vs " + dims(b); });
  if (instance % 10 != 0) return;
  FiniteCosimplicial fx = random_finite_semi(rng, 12);
  FiniteCosimplicial fg = cogenerate(fx);
  r.check("finite pi0 preserved", pi0_finite(fx) == pi0_finite(fg));
  r.check("finite pi1 classes preserved", pi1_finite(fx).classes() == pi1_finite(fg).classes());
}

void suite_eilenberg_zilber(Rng& rng, Recorder& r) {
  BiSemi a = random_bisemi(rng, 3);
  r.check("bisemi identities", check_bisemi(a).ok);
  auto diag = pi_abelian(cogenerated_diagonal(a));
  auto total = total_cohomology(a);
  size_t n = std::min(diag.size(), total.size());
  diag.resize(n);
  total.resize(n);
  r.check("diagonal pi = total cohomology", n > 0 && diag == total, [&] { return dims(diag) + " vs " + dims(total); });
}

// ---- exact sequences ------------------------------------------------------------

std::string failed_clauses(const MixedExactSequence& m) {
  std::string out;
  for (const auto& c : m.clauses)
    if (!c.ok) out += c.clause + " [" + c.detail + "]; ";
  return out;
}

void suite_les(Rng& rng, Recorder& r) {
  CentralGroupExtension e = random_central_extension(rng, 12, 64);
  FiniteLes les = les_group_cohomology(e.action, e.central);
  r.check("group cohomology sequence exact", les.summary.exact(), [&] {
    return "G order " + std::to_string(e.action.group->order()) + ", U order " + std::to_string(e.action.target->order()) +
           ", Z = " + elements(e.central) + ": " + failed_clauses(les.summary);
  });
  r.check("seven nodes", les.sequence.nodes.size() == 7);
}

// ---- twisted conjugation and isocrystals --------------------------------------------

void suite_twisted_conj(Rng& rng, Recorder& r) {
  GradedAutomorphism a = random_graded_automorphism(rng, 5, 3);
  TwistedConjugacy c = twisted_conj_classify(a.lie, a.phi);
  bool eig = has_graded_eigenvalue_one(*a.lie, a.phi);
  auto where = [&] { return "dim " + std::to_string(a.lie->dim()) + ", class " + std::to_string(a.lie->nilpotency_class()); };
  r.check("transitive iff trivial stabilizer", c.consistent, where);
  r.check("no graded eigenvalue 1 implies transitive", eig || c.transitive, where);
  QSubspace fixed(a.lie->dim(), kernel(a.phi - QMat::identity(a.lie->dim())));
  QSubspace stab(a.lie->dim(), c.stabilizer);
  r.check("stabilizer = fixed points", fixed == stab, where);
}

// Cohomology of D -> D + D -> D, u -> ((phi - 1) u, N u), (x, y) -> N x - (p phi - 1) y.
std::vector<size_t> phin_total_complex(const PhiNGroup& g) {
  size_t d = g.lie->dim();
  QMat id = QMat::identity(d);
  size_t r1 = rank(vstack(g.phi - id, g.monodromy));
  size_t r2 = rank(hstack(g.monodromy, QMat(d, d) - (g.p * g.phi - id)));
  return {d - r1, 2 * d - r1 - r2, d - r2};
}

void suite_isocrystal(Rng& rng, Recorder& r, int instance) {
  if (instance == 0) {
    PhiNGroup u = heisenberg_isocrystal();
    QMat phi_v(2, 2);
    for (size_t i = 0; i < 2; ++i)
      for (size_t j = 0; j < 2; ++j) phi_v(i, j) = u.phi(i, j);
    PhiNGroup v = phin_group(NilpotentLieAlgebra::abelian(2), phi_v);
    H1QuotientReport hv = h1_quotient(v, SelmerVariant::GE);
    H1QuotientReport hz = h1_quotient(tate_twist_pattern(), SelmerVariant::GE);
    r.check("Heisenberg: D^{phi=1}(V) = 0", d_phi1(v).empty());
    r.check("Heisenberg: H1, pi2 of V vanish", hv.dims && (*hv.dims)[1] == 0 && (*hv.dims)[2] == 0);
    r.check("Heisenberg: H1(Z) = 1, pi2(Z) = 1", hz.dims && (*hz.dims)[1] == 1 && (*hz.dims)[2] == 1 && hz.dual_pi2 == 1u);
    CentralLes les = quotient_les(u, {unit_vec<Rational>(3, 2)}, rng);
    r.check("Heisenberg: quotient sequence exact", les.sequence.exact(), [&] { return failed_clauses(les.sequence); });
    r.check("Heisenberg: middle map bijective", les.middle_bijective());
    return;
  }
  GradedAutomorphism a = random_graded_automorphism(rng, 4, 3);
  PhiNGroup g = phin_group(a.lie, a.phi);
  int cls = std::max(1, a.lie->nilpotency_class());
  const QSubspace& last = a.lie->lcs(cls);
  // The last lower central term is a phi-stable central ideal.
  std::vector<Vec> z = last.basis();
  if (z.empty()) z = {unit_vec<Rational>(a.lie->dim(), a.lie->dim() - 1)};
  CentralLes les = quotient_les(g, z, rng, 4);
  r.check("quotient sequence exact", les.sequence.exact(), [&] { return failed_clauses(les.sequence); });
  LieCosimplicial ge = selmer_quotient_cosimplicial(g, SelmerVariant::GE, 2);
  r.check("pi0 = D^{phi=1, N=0}", QSubspace(g.lie->dim(), pi0_lie(ge)) == QSubspace(g.lie->dim(), d_phi1(g)));
}

void suite_phin(Rng& rng, Recorder& r) {
  PhiNGroup g = random_abelian_phin(rng, 3);
  size_t d = g.lie->dim();
  H1QuotientReport ge = h1_quotient(g, SelmerVariant::GE);
  auto oracle = phin_total_complex(g);
  r.check("g/e dims = total complex", ge.dims && *ge.dims == oracle,
          [&] { return dims(ge.dims ? *ge.dims : std::vector<size_t>{}) + " vs " + dims(oracle); });
  r.check("dual pi2 formula", ge.dual_pi2 && *ge.dual_pi2 == oracle[2]);
  r.check("pi0 = D^{phi=1, N=0}", QSubspace(d, ge.pi0) == QSubspace(d, d_phi1(g)));
  size_t rk = rank(g.phi - QMat::identity(d));
  H1QuotientReport fe = h1_quotient(g, SelmerVariant::FE);
  r.check("f/e dims = two-term complex", fe.dims && *fe.dims == std::vector<size_t>{d - rk, d - rk, 0});
  // Torsor data from a random compatible pair are equivalent to a coboundary translate.
  QMat second = hstack(g.monodromy, QMat(d, d) - (g.p * g.phi - QMat::identity(d)));
  auto z1 = kernel(second);
  if (z1.empty()) return;
  Vec x(2 * d);
  for (const auto& v : z1) x = add(x, scale(rng.rational(3, 1), v));
  Vec u = rng.rational_vec(d, 3, 1);
  Vec y = add(x, vstack(g.phi - QMat::identity(d), g.monodromy).apply(u));
  auto torsor = [&](const Vec& v) {
    return PhiNTorsor{g, Vec(v.begin(), v.begin() + static_cast<long>(d)), Vec(v.begin() + static_cast<long>(d), v.end())};
  };
  r.check("torsor translate equivalent", phin_torsor_equivalent(torsor(x), torsor(y)));
}

// ---- Hodge ----------------------------------------------------------------------

void suite_hodge(Rng& rng, Recorder& r, int instance) {
  if (instance == 0) {
    MHSGroup h = heisenberg_mhs();
    MHSGroup v = pure_weight_minus_one();
    W0F0 sv = w0_f0_subgroups(v);
    r.check("Heisenberg: F0 W0 V = 0", sv.w0.intersect(conjugate_fixed(sv.f0)).dim() == 0);
    r.check("Heisenberg: H1(V) is a point", h1_dimension(v) == 0 && double_coset_engine(v).transitive());
    r.check("Heisenberg: h1(Z) = 1", h1_dimension(tate_mhs()) == 1);
    r.check("Heisenberg: h1(U) = 1", h1_dimension(h) == 1);
    MHSLes les = mhs_les(h, {unit_vec<Rational>(3, 2)}, rng);
    r.check("Heisenberg: sequence exact", les.les.sequence.exact(), [&] { return failed_clauses(les.les.sequence); });
    r.check("Heisenberg: middle map bijective", les.les.middle_bijective());
    r.check("Heisenberg: free on 50 samples", freeness_check(h, rng, 50).free());
    return;
  }
  MHSGroup m = random_mhs(rng, 2);
  size_t d = m.lie->dim();
  CVec u(d);
  for (auto& z : u) z = Gaussian(rng.rational(4, 3), rng.rational(4, 3));
  LiePtr t = realify(*m.lie);
  W0F0 s = w0_f0_subgroups(m);
  Vec w(2 * d), f(2 * d);
  for (const auto& b : s.w0.basis())
    for (size_t k = 0; k < d; ++k) w[k] += rng.rational(3, 2) * b[k];
  for (const auto& b : realify_span(s.f0)) f = add(f, scale(rng.rational(3, 2), b));
  CVec v = complexify(group_mul(*t, {neg(w), realify(u), f}));
  r.check("translates are equivalent", equivalent(m, u, v));
  r.check("normal form is an invariant", classify_torsor(m, u).representative == classify_torsor(m, v).representative);
  r.check("h1 dimension", h1_dimension(m) == d % 2);
  r.check("free action", freeness_check(m, rng, 5).free());
  if (!m.lie->is_abelian()) return;
  CVec other(d);
  for (auto& z : other) z = Gaussian(rng.rational(4, 3), rng.rational(4, 3));
  std::vector<Vec> span = realify_span(s.f0);
  for (size_t k = 0; k < d; ++k) span.push_back(unit_vec<Rational>(2 * d, k));
  bool linear = QSubspace(2 * d, span).contains(sub(realify(u), realify(other)));
  r.check("abelian double cosets are linear", equivalent(m, u, other) == linear);
}

// ---- Hopf -------------------------------------------------------------------------

void suite_hopf(Rng& rng, Recorder& r) {
  LiePtr l = random_nilpotent(rng, {4, 3, rng.coin()});
  TruncatedEnvelope env(l, l->nilpotency_class() + 1);
  auto where = [&] { return "dim " + std::to_string(l->dim()) + ", class " + std::to_string(l->nilpotency_class()); };
  HopfCheck ax = env.check_axioms(1500);
  r.check("Hopf axioms", ax.ok, [&] { return where() + ": " + ax.failure; });
  SymmetrizationReport sym = symmetrization_check(env);
  r.check("symmetrization filtered isomorphism", sym.isomorphism && sym.triangular, where);
  r.check("J filtration multiplicative", env.check_filtration_multiplicative().ok, where);
  Vec a = rng.rational_vec(l->dim(), 5, 3), b = rng.rational_vec(l->dim(), 5, 3);
  r.check("product through the envelope = BCH", env.to_lie(env.log(env.mul(env.exp(a), env.exp(b)))) == group_mul(*l, a, b), where);
  UnipotentTorsor p = random_torsor(l, 2, rng);
  bool identity = true;
  for (int k = 0; k < 3; ++k)
    for (const auto& blk : graded_trivialization(env, p, rng.rational_vec(l->dim(), 5, 3)))
      identity = identity && blk == QMat::identity(blk.rows());
  r.check("graded trivialization independent of the point", identity, where);
}

// ---- group cohomology -------------------------------------------------------------------

void suite_gcohom(Rng& rng, Recorder& r) {
  std::string gname, uname;
  GroupPtr g = library_group(rng, 6, &gname), u = library_group(rng, 8, &uname);
  FiniteGroupAction a = random_action(rng, g, u);
  auto where = [&] { return gname + " acting on " + uname; };
  FiniteH0H1 h = h0_h1(a);
  // Crossed homomorphisms by exhaustive search, then their classes.
  size_t n = g->order(), m = u->order();
  std::vector<FElem> z1;
  FElem c(n, 0);
  std::function<void(size_t)> rec = [&](size_t pos) {
    if (pos == n) {
      if (is_crossed_homomorphism(a, c)) z1.push_back(c);
      return;
    }
    for (size_t v = 0; v < m; ++v) {
      c[pos] = static_cast<int>(v);
      rec(pos + 1);
    }
  };
  rec(0);
  std::sort(z1.begin(), z1.end());
  std::set<FElem> seen;
  size_t classes = 0;
  for (const auto& z : z1) {
    if (seen.count(z)) continue;
    ++classes;
    for (size_t w = 0; w < m; ++w) {
      FElem e(n);
      for (size_t x = 0; x < n; ++x) e[x] = u->mul(u->mul(u->inv(static_cast<int>(w)), z[x]), a.act[x][w]);
      seen.insert(e);
    }
  }
  r.check("Z1 = crossed homomorphisms", h.h1.cocycles == z1, where);
  r.check("H1 classes = brute force", h.h1.classes() == classes, where);
  const FElem& alpha = h.h1.cocycles[rng.index(h.h1.cocycles.size())];
  SerreTwistReport tw = serre_twist_check(a, alpha);
  r.check("Serre twist", tw.matches_twisted_object && tw.bijection.ok, where);
  std::vector<int> gens;
  int x = static_cast<int>(rng.index(n));
  for (size_t y = 0; y < n; ++y) gens.push_back(g->conj(static_cast<int>(y), x));
  InflationRestriction ir = inflation_restriction(a, generated_subgroup(*g, gens));
  r.check("inflation-restriction exact", ir.sequence.exact(), [&] { return where() + ": " + failed_clauses(ir.sequence); });
}

struct SuiteDef {
  const char* name;
  int instances;
  std::function<void(Rng&, Recorder&, int)> run;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"bch", 1000, [](Rng& g, Recorder& r, int) { suite_bch(g, r); }},
      {"double-coset", 50, [](Rng& g, Recorder& r, int) { suite_double_coset(g, r); }},
      {"dold-kan", 100, suite_dold_kan},
      {"eilenberg-zilber", 100, [](Rng& g, Recorder& r, int) { suite_eilenberg_zilber(g, r); }},
      {"les", 30, [](Rng& g, Recorder& r, int) { suite_les(g, r); }},
      {"twisting", 50, [](Rng& g, Recorder& r, int) { suite_twisting(g, r); }},
      {"twisted-conj", 100, [](Rng& g, Recorder& r, int) { suite_twisted_conj(g, r); }},
      {"isocrystal", 10, suite_isocrystal},
      {"hodge", 30, suite_hodge},
      {"hopf", 10, [](Rng& g, Recorder& r, int) { suite_hopf(g, r); }},
      {"gcohom", 20, [](Rng& g, Recorder& r, int) { suite_gcohom(g, r); }},
      {"phin", 30, [](Rng& g, Recorder& r, int) { suite_phin(g, r); }},
  };
  return defs;
}

const SuiteDef& find_suite(const std::string& name) {
  for (const auto& d : registry())
    if (name == d.name) return d;
  throw std::invalid_argument("unknown suite '" + name + "'");
}

}  // namespace

bool SuiteResult::ok() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.ok(); });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.emplace_back(d.name);
    return v;
  }();
  return names;
}

bool is_suite(const std::string& name) {
  return name == "all" || std::find(suite_names().begin(), suite_names().end(), name) != suite_names().end();
}

int default_instances(const std::string& suite) { return find_suite(suite).instances; }

SuiteResult run_suite(const std::string& suite, uint64_t seed, std::optional<int> instances) {
  const SuiteDef& def = find_suite(suite);
  int n = instances.value_or(def.instances);
  if (n < 0) throw std::invalid_argument("instances must be non-negative");
  Rng base(seed);
  Recorder rec;
  for (int i = 0; i < n; ++i) {
    Rng rng = base.split();
    rec.set_instance(i);
    try {
      def.run(rng, rec, i);
    } catch (const std::exception& e) {
      std::string what = e.what();
      rec.check("no internal error", false, [&] { return what; });
    }
  }
  return {suite, seed, n, rec.take()};
}

std::vector<SuiteResult> run_verify(const std::string& suite, uint64_t seed, std::optional<int> instances) {
  std::vector<SuiteResult> out;
  if (suite == "all") {
    for (const auto& name : suite_names()) out.push_back(run_suite(name, seed, instances));
  } else {
    out.push_back(run_suite(suite, seed, instances));
  }
  return out;
}

}  // namespace cohw
