#include "cohw/hodge.hpp"

#include <algorithm>

namespace cohw {

namespace {

CVec times_i(const CVec& v) {
  CVec out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = Gaussian(-v[k].im, v[k].re);
  return out;
}

Vec real_part(const CVec& v) {
  Vec out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = v[k].re;
  return out;
}

Vec imag_part(const CVec& v) {
  Vec out(v.size());
  for (size_t k = 0; k < v.size(); ++k) out[k] = v[k].im;
  return out;
}

CVec complex_bracket(const NilpotentLieAlgebra& l, const CVec& u, const CVec& v) {
  Vec a = real_part(u), b = imag_part(u), c = real_part(v), d = imag_part(v);
  Vec re = sub(l.bracket(a, c), l.bracket(b, d));
  Vec im = add(l.bracket(a, d), l.bracket(b, c));
  CVec out(l.dim());
  for (size_t k = 0; k < l.dim(); ++k) out[k] = Gaussian(re[k], im[k]);
  return out;
}

// Dimension of the image of s in W_m / W_{m-1}, where s lies in W_m(C).
size_t graded_dim(const CSubspace& s, const CSubspace& lower) { return s.sum(lower).dim() - lower.dim(); }

struct DoubleCosetData {
  LiePtr target;  // realification of U
  Subalgebra w0, f0;
  DirectSum acting;
  QMat left, right;
};

DoubleCosetData double_coset_data(const MHSGroup& m) {
  size_t d = m.lie->dim();
  W0F0 sub = w0_f0_subgroups(m);
  DoubleCosetData x;
  x.target = realify(*m.lie);
  x.w0 = subalgebra(*m.lie, sub.w0.basis());
  x.f0 = subalgebra(*x.target, realify_span(sub.f0));
  x.acting = direct_sum({x.w0.algebra, x.f0.algebra});
  size_t w = x.w0.algebra->dim(), f = x.f0.algebra->dim();
  x.left = QMat(2 * d, w + f);
  x.right = QMat(2 * d, w + f);
  if (w > 0) x.left.put(0, 0, x.w0.inclusion);
  if (f > 0) x.right.put(0, w, x.f0.inclusion);
  return x;
}

QFiltration map_filtration(const QFiltration& f, const QMat& m) {
  std::vector<std::pair<int, QSubspace>> levels;
  for (const auto& [k, s] : f.levels()) levels.emplace_back(k, s.image(m));
  return QFiltration(m.rows(), f.direction(), levels);
}

CFiltration map_filtration(const CFiltration& f, const CMat& m) {
  std::vector<std::pair<int, CSubspace>> levels;
  for (const auto& [k, s] : f.levels()) levels.emplace_back(k, s.image(m));
  return CFiltration(m.rows(), f.direction(), levels);
}

}  // namespace

MHSReport validate_mhs(const MHSGroup& m) {
  MHSReport r;
  auto fail = [&](std::string why) {
    r.ok = false;
    r.violation = std::move(why);
    return r;
  };
  if (!m.lie) return fail("missing Lie algebra");
  const auto& l = *m.lie;
  size_t d = l.dim();
  if (m.weight.ambient() != d || m.hodge.ambient() != d) return fail("filtration has the wrong ambient dimension");
  const auto& w = m.weight;
  const auto& f = m.hodge;

  for (int a = w.min_level(); a <= w.max_level(); ++a) {
    QSubspace wa = w.at(a);
    if (!is_ideal(l, wa)) return fail("W_" + std::to_string(a) + " is not an ideal");
    for (int b = a; b <= w.max_level(); ++b) {
      QSubspace target = w.at(a + b), wb = w.at(b);
      for (const auto& x : wa.basis())
        for (const auto& y : wb.basis())
          if (!target.contains(l.bracket(x, y)))
            return fail("[W_" + std::to_string(a) + ", W_" + std::to_string(b) + "] is not in W_" + std::to_string(a + b));
    }
  }
  for (int a = f.min_level() - 1; a <= f.max_level(); ++a)
    for (int b = a; b <= f.max_level(); ++b) {
      CSubspace target = f.at(a + b), fa = f.at(a), fb = f.at(b);
      for (const auto& x : fa.basis())
        for (const auto& y : fb.basis())
          if (!target.contains(complex_bracket(l, x, y)))
            return fail("[F^" + std::to_string(a) + ", F^" + std::to_string(b) + "] is not in F^" + std::to_string(a + b));
    }
  if (m.negative_weights && w.at(-1).dim() != d) return fail("negative weights require W_-1 = U");

  for (int k = w.min_level(); k <= w.max_level(); ++k) {
    CSubspace upper = to_gaussian(w.at(k)), lower = to_gaussian(w.at(k - 1));
    size_t g = upper.dim() - lower.dim();
    if (g == 0) continue;
    r.graded_dims.emplace_back(k, g);
    int lo = std::min(f.min_level(), k - f.max_level() + 1) - 1;
    int hi = std::max(f.max_level(), k - f.min_level() + 1) + 1;
    for (int p = lo; p <= hi; ++p) {
      CSubspace fp = f.at(p).intersect(upper);
      CSubspace fq = conj(f.at(k - p + 1).intersect(upper));
      bool direct = graded_dim(fp, lower) + graded_dim(fq, lower) == g && graded_dim(fp.sum(fq), lower) == g;
      if (!direct)
        return fail("Hodge decomposition fails on Gr^W_" + std::to_string(k) + ": F^" + std::to_string(p) +
                    " and conj F^" + std::to_string(k - p + 1) + " are not complementary");
    }
  }
  return r;
}

MHSGroup mhs_group(LiePtr lie, QFiltration weight, CFiltration hodge, bool negative_weights) {
  MHSGroup m{std::move(lie), std::move(weight), std::move(hodge), negative_weights};
  MHSReport r = validate_mhs(m);
  if (!r.ok) throw MHSError(r.violation);
  return m;
}

// ---- realification ----------------------------------------------------------

LiePtr realify(const NilpotentLieAlgebra& lie) {
  size_t d = lie.dim();
  std::vector<std::string> labels;
  for (const auto& s : lie.labels()) labels.push_back("re(" + s + ")");
  for (const auto& s : lie.labels()) labels.push_back("im(" + s + ")");
  std::vector<BracketEntry> br;
  for (const auto& e : lie.entries()) {
    br.push_back({e.i, e.j, e.k, e.c});
    br.push_back({d + e.i, d + e.j, e.k, -e.c});
    br.push_back({e.i, d + e.j, d + e.k, e.c});
    br.push_back({d + e.i, e.j, d + e.k, e.c});
  }
  return NilpotentLieAlgebra::create_trusted(labels, br);
}

Vec realify(const CVec& v) {
  Vec out = real_part(v);
  Vec im = imag_part(v);
  out.insert(out.end(), im.begin(), im.end());
  return out;
}

CVec complexify(const Vec& v) {
  if (v.size() % 2 != 0) throw MathError("complexify: odd length");
  size_t d = v.size() / 2;
  CVec out(d);
  for (size_t k = 0; k < d; ++k) out[k] = Gaussian(v[k], v[d + k]);
  return out;
}

std::vector<Vec> realify_span(const CSubspace& s) {
  std::vector<Vec> out;
  for (const auto& v : s.basis()) {
    out.push_back(realify(v));
    out.push_back(realify(times_i(v)));
  }
  return out;
}

W0F0 w0_f0_subgroups(const MHSGroup& m) { return {m.weight.at(0), m.hodge.at(0)}; }

OrbitEngine double_coset_engine(const MHSGroup& m) {
  DoubleCosetData x = double_coset_data(m);
  return OrbitEngine({x.acting.algebra, x.target, x.left, x.right, {}});
}

MHSTorsorClass classify_torsor(const MHSGroup& m, const CVec& u) {
  OrbitEngine engine = double_coset_engine(m);
  Vec nf = engine.normal_form(realify(u));
  MHSTorsorClass c{complexify(nf), {}};
  const auto& t = *engine.problem().target;
  for (int k = 1; k <= std::max(1, t.nilpotency_class()); ++k) c.layers.push_back(t.layer(nf, k));
  return c;
}

bool equivalent(const MHSGroup& m, const CVec& u, const CVec& v) {
  return double_coset_engine(m).solve(realify(u), realify(v)).found;
}

FreenessCertificate freeness_check(const MHSGroup& m, Rng& rng, int samples) {
  if (!m.negative_weights) throw MHSError("freeness check needs negative weights");
  OrbitEngine engine = double_coset_engine(m);
  FreenessCertificate c;
  for (int s = 0; s < samples; ++s) {
    CVec u(m.lie->dim());
    for (auto& z : u) z = Gaussian(rng.rational(3, 2), rng.rational(3, 2));
    ++c.samples;
    if (engine.stabilizer(realify(u)).empty())
      ++c.trivial;
    else
      c.failures.push_back(u);
  }
  return c;
}

size_t h1_dimension(const MHSGroup& m) {
  if (!m.negative_weights) throw MHSError("h1 dimension needs negative weights");
  OrbitEngine engine = double_coset_engine(m);
  size_t d = m.lie->dim();
  if (!engine.stabilizer(Vec(2 * d)).empty()) throw MHSError("internal: the double coset action is not free at 1");
  W0F0 s = w0_f0_subgroups(m);
  return 2 * d - 2 * s.f0.dim() - s.w0.dim();
}

LieCosimplicial mhs_cosimplicial(const MHSGroup& m, int top) {
  DoubleCosetData x = double_coset_data(m);
  return cogenerate(two_term_pattern(x.acting.algebra, x.target, x.right, x.left, top));
}

MHSGroup restrict_mhs(const MHSGroup& m, const QSubspace& sub) {
  Subalgebra s = subalgebra(*m.lie, sub.basis());
  CSubspace csub = to_gaussian(s.span);
  std::vector<std::pair<int, QSubspace>> w;
  for (const auto& [k, level] : m.weight.levels()) {
    std::vector<Vec> coords;
    QSubspace meet = level.intersect(s.span);
    for (const auto& v : meet.basis()) coords.push_back(s.span.coords(v));
    w.emplace_back(k, QSubspace(s.span.dim(), coords));
  }
  std::vector<std::pair<int, CSubspace>> f;
  for (const auto& [k, level] : m.hodge.levels()) {
    std::vector<CVec> coords;
    CSubspace meet = level.intersect(csub);
    for (const auto& v : meet.basis()) coords.push_back(csub.coords(v));
    f.emplace_back(k, CSubspace(csub.dim(), coords));
  }
  MHSGroup out{s.algebra, QFiltration(s.span.dim(), FiltrationDirection::Ascending, w),
               CFiltration(csub.dim(), FiltrationDirection::Descending, f), m.negative_weights};
  MHSReport r = validate_mhs(out);
  if (!r.ok) throw MHSError("non-strict filtration data: the subgroup is not a sub-MHS (" + r.violation + ")");
  return out;
}

MHSGroup quotient_mhs(const MHSGroup& m, const QSubspace& ideal) {
  Quotient q = quotient(*m.lie, ideal);
  MHSGroup out{q.algebra, map_filtration(m.weight, q.projection), map_filtration(m.hodge, to_gaussian(q.projection)),
               m.negative_weights};
  MHSReport r = validate_mhs(out);
  if (!r.ok) throw MHSError("non-strict filtration data: the quotient is not an MHS (" + r.violation + ")");
  return out;
}

MHSLes mhs_les(const MHSGroup& u, const std::vector<Vec>& central, Rng& rng, int samples) {
  size_t d = u.lie->dim();
  QSubspace z(d, central);
  MHSLes out{restrict_mhs(u, z), quotient_mhs(u, z), {}};
  DoubleCosetData x = double_coset_data(u);
  const int top = 3;
  LieCosimplicial pattern = two_term_pattern(x.acting.algebra, x.target, x.right, x.left, top);

  std::vector<std::vector<Vec>> spans(static_cast<size_t>(top) + 1);
  size_t w = x.w0.algebra->dim(), f = x.f0.algebra->dim();
  QSubspace w0z = x.w0.span.intersect(z);
  for (const auto& v : w0z.basis()) {
    Vec c(w + f);
    Vec k = x.w0.span.coords(v);
    std::copy(k.begin(), k.end(), c.begin());
    spans[0].push_back(c);
  }
  QSubspace zc(2 * d, realify_span(to_gaussian(z)));
  QSubspace f0z = x.f0.span.intersect(zc);
  for (const auto& v : f0z.basis()) {
    Vec c(w + f);
    Vec k = x.f0.span.coords(v);
    std::copy(k.begin(), k.end(), c.begin() + static_cast<long>(w));
    spans[0].push_back(c);
  }
  spans[1] = zc.basis();
  LieCosimplicial gamma = cogenerate(pattern);
  out.les = les_unipotent_central(split_extension(gamma, cogenerated_spans(pattern, spans), true), rng, samples);
  return out;
}

// ---- instances --------------------------------------------------------------

namespace {

CFiltration hodge_f0(size_t d, const std::vector<CVec>& f0) {
  return CFiltration(d, FiltrationDirection::Descending, {{0, CSubspace(d, f0)}});
}

}  // namespace

MHSGroup tate_mhs() {
  return mhs_group(NilpotentLieAlgebra::abelian(1, "t"),
                   QFiltration(1, FiltrationDirection::Ascending, {{-2, QSubspace::full(1)}}), hodge_f0(1, {}));
}

MHSGroup pure_weight_minus_one() {
  return mhs_group(NilpotentLieAlgebra::abelian(2),
                   QFiltration(2, FiltrationDirection::Ascending, {{-1, QSubspace::full(2)}}),
                   hodge_f0(2, {CVec{Gaussian(1), Gaussian(0, 1)}}));
}

MHSGroup heisenberg_mhs() {
  QFiltration w(3, FiltrationDirection::Ascending, {{-2, QSubspace(3, {unit_vec<Rational>(3, 2)})}, {-1, QSubspace::full(3)}});
  return mhs_group(heisenberg(), w, hodge_f0(3, {CVec{Gaussian(1), Gaussian(0, 1), Gaussian(0)}}));
}

MHSGroup random_mhs(Rng& rng, size_t max_genus) {
  size_t g = 1 + rng.index(max_genus);
  bool central = rng.coin();
  size_t d = 2 * g + (central ? 1 : 0);
  LiePtr lie;
  std::vector<std::string> labels;
  for (size_t k = 0; k < d; ++k) labels.push_back("e" + std::to_string(k + 1));
  if (central) {
    std::vector<BracketEntry> br;
    for (size_t k = 0; k < g; ++k) br.push_back({k, g + k, 2 * g, 1});
    lie = NilpotentLieAlgebra::create(labels, br);
  } else {
    lie = NilpotentLieAlgebra::create(labels, {});
  }
  std::vector<CVec> f0;
  for (size_t k = 0; k < g; ++k) {
    Rational im = rng.rational(3, 2);
    if (sgn(im) == 0) im = 1;
    CVec v(d);
    v[k] = 1;
    v[g + k] = Gaussian(rng.rational(3, 2), im);
    f0.push_back(v);
  }
  std::vector<std::pair<int, QSubspace>> w;
  if (central) w.emplace_back(-2, QSubspace(d, {unit_vec<Rational>(d, 2 * g)}));
  w.emplace_back(-1, QSubspace::full(d));
  return mhs_group(lie, QFiltration(d, FiltrationDirection::Ascending, w), hodge_f0(d, f0));
}

}  // namespace cohw
