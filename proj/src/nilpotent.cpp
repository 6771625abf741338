#include "cohw/nilpotent.hpp"

#include <algorithm>
#include <map>

#include "cohw/bch.hpp"

namespace cohw {

namespace {

std::string triple_name(size_t i, size_t j, size_t k) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

// Dense structure constants from bracket entries, checking antisymmetry.
std::vector<std::vector<Vec>> dense_constants(size_t n, const std::vector<BracketEntry>& brackets, LieReport& rep) {
  std::vector<std::vector<Vec>> c(n, std::vector<Vec>(n, Vec(n)));
  std::vector<std::vector<std::vector<bool>>> seen(n, std::vector<std::vector<bool>>(n, std::vector<bool>(n, false)));
  for (const auto& e : brackets) {
    if (e.i >= n || e.j >= n || e.k >= n) {
      rep = {false, "bracket index out of range"};
      return c;
    }
    if (e.i == e.j) {
      if (sgn(e.c) != 0) rep = {false, "bracket is not alternating: [e" + std::to_string(e.i + 1) + ",e" + std::to_string(e.i + 1) + "] != 0"};
      continue;
    }
    auto check = [&](size_t a, size_t b, const Rational& v) {
      if (seen[a][b][e.k] && c[a][b][e.k] != v) {
        rep = {false, "bracket is not antisymmetric at [e" + std::to_string(a + 1) + ",e" + std::to_string(b + 1) + "]"};
      }
      seen[a][b][e.k] = true;
      c[a][b][e.k] = v;
    };
    check(e.i, e.j, e.c);
    check(e.j, e.i, -e.c);
  }
  return c;
}

Vec dense_bracket(const std::vector<std::vector<Vec>>& c, const Vec& a, const Vec& b) {
  size_t n = a.size();
  Vec r(n);
  for (size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < n; ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational ab = a[i] * b[j];
      axpy(ab, c[i][j], r);
    }
  }
  return r;
}

}  // namespace

LieReport validate_lie_data(size_t n, const std::vector<BracketEntry>& brackets) {
  LieReport rep;
  auto c = dense_constants(n, brackets, rep);
  if (!rep.ok) return rep;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Vec ei = unit_vec<Rational>(n, i), ej = unit_vec<Rational>(n, j), ek = unit_vec<Rational>(n, k);
        Vec s = dense_bracket(c, ei, c[j][k]);
        s = add(s, dense_bracket(c, ej, c[k][i]));
        s = add(s, dense_bracket(c, ek, c[i][j]));
        if (!is_zero_vec(s)) return {false, "Jacobi identity fails on basis triple " + triple_name(i, j, k)};
      }
  return rep;
}

LiePtr NilpotentLieAlgebra::build(std::vector<std::string> labels, const std::vector<BracketEntry>& brackets,
                                  bool check_jacobi) {
  size_t n = labels.size();
  LieReport rep;
  if (check_jacobi) {
    rep = validate_lie_data(n, brackets);
  } else {
    dense_constants(n, brackets, rep);
  }
  if (!rep.ok) throw LieError(rep.message);
  auto* raw = new NilpotentLieAlgebra();
  LiePtr out(raw);
  raw->labels_ = std::move(labels);
  raw->terms_.assign(n, {});
  std::map<std::tuple<size_t, size_t, size_t>, Rational> acc;
  for (const auto& e : brackets) {
    if (e.i == e.j) continue;
    acc[{e.i, e.j, e.k}] = e.c;
    acc[{e.j, e.i, e.k}] = -e.c;
  }
  for (const auto& [key, c] : acc) {
    if (sgn(c) == 0) continue;
    raw->terms_[std::get<0>(key)].push_back({std::get<1>(key), std::get<2>(key), c});
  }
  raw->compute_lcs();
  raw->compute_frame();
  return out;
}

LiePtr NilpotentLieAlgebra::create(std::vector<std::string> labels, const std::vector<BracketEntry>& brackets) {
  return build(std::move(labels), brackets, true);
}

LiePtr NilpotentLieAlgebra::create_trusted(std::vector<std::string> labels, const std::vector<BracketEntry>& brackets) {
  return build(std::move(labels), brackets, false);
}

LiePtr NilpotentLieAlgebra::abelian(size_t n, const std::string& prefix) {
  std::vector<std::string> labels;
  for (size_t i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i + 1));
  return create_trusted(labels, {});
}

Vec NilpotentLieAlgebra::bracket(const Vec& a, const Vec& b) const {
  size_t n = dim();
  if (a.size() != n || b.size() != n) throw MathError("bracket: wrong dimension");
  Vec r(n);
  for (size_t i = 0; i < n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (const auto& t : terms_[i]) {
      if (sgn(b[t.j]) == 0) continue;
      r[t.k] += a[i] * b[t.j] * t.c;
    }
  }
  return r;
}

Vec NilpotentLieAlgebra::bracket_basis(size_t i, size_t j) const {
  Vec r(dim());
  for (const auto& t : terms_.at(i))
    if (t.j == j) r[t.k] += t.c;
  return r;
}

QMat NilpotentLieAlgebra::ad(const Vec& x) const {
  size_t n = dim();
  QMat m(n, n);
  for (size_t j = 0; j < n; ++j) m.set_col(j, bracket(x, unit_vec<Rational>(n, j)));
  return m;
}

std::vector<BracketEntry> NilpotentLieAlgebra::entries() const {
  std::vector<BracketEntry> out;
  for (size_t i = 0; i < dim(); ++i)
    for (const auto& t : terms_[i])
      if (i < t.j) out.push_back({i, t.j, t.k, t.c});
  return out;
}

void NilpotentLieAlgebra::compute_lcs() {
  size_t n = dim();
  lcs_.clear();
  lcs_.push_back(QSubspace::full(n));
  while (lcs_.back().dim() > 0) {
    const QSubspace& cur = lcs_.back();
    std::vector<Vec> span;
    for (size_t i = 0; i < n; ++i)
      for (const auto& v : cur.basis()) {
        Vec b = bracket(unit_vec<Rational>(n, i), v);
        if (!is_zero_vec(b)) span.push_back(std::move(b));
      }
    QSubspace next(n, span);
    if (next.dim() == cur.dim()) throw LieError("algebra is not nilpotent: lower central series stabilizes in dimension " + std::to_string(cur.dim()));
    lcs_.push_back(std::move(next));
  }
  nilpotency_class_ = static_cast<int>(lcs_.size()) - 1;
}

const QSubspace& NilpotentLieAlgebra::lcs(int k) const {
  if (k < 1) throw MathError("lower central series index must be >= 1");
  if (k > static_cast<int>(lcs_.size())) return lcs_.back();
  return lcs_[k - 1];
}

std::vector<size_t> NilpotentLieAlgebra::lcs_dims() const {
  std::vector<size_t> d;
  for (const auto& s : lcs_) d.push_back(s.dim());
  return d;
}

void NilpotentLieAlgebra::compute_frame() {
  size_t n = dim();
  int c = nilpotency_class_;
  // Weight of each input basis vector.
  std::vector<int> w(n, 0);
  for (size_t i = 0; i < n; ++i) {
    Vec e = unit_vec<Rational>(n, i);
    for (int k = 1; k <= c; ++k)
      if (lcs(k).contains(e)) w[i] = k;
  }
  bool adapted = true;
  for (int k = 1; k <= c; ++k) {
    size_t cnt = std::count_if(w.begin(), w.end(), [k](int x) { return x >= k; });
    if (cnt != lcs(k).dim()) adapted = false;
  }
  frame_ = Frame{};
  if (adapted) {
    frame_.identity = true;
    frame_.to_adapted = QMat::identity(n);
    frame_.from_adapted = QMat::identity(n);
    frame_.weight = w;
    return;
  }
  std::vector<std::vector<Vec>> chosen(c + 1);
  QSubspace deeper(n);
  for (int k = c; k >= 1; --k) {
    for (const auto& v : lcs(k).basis()) {
      if (deeper.contains(v)) continue;
      chosen[k].push_back(v);
      std::vector<Vec> span = deeper.basis();
      span.push_back(v);
      deeper = QSubspace(n, span);
    }
  }
  std::vector<Vec> cols;
  for (int k = 1; k <= c; ++k)
    for (const auto& v : chosen[k]) {
      cols.push_back(v);
      frame_.weight.push_back(k);
    }
  frame_.identity = false;
  frame_.from_adapted = QMat::from_cols(cols, n);
  auto inv = inverse(frame_.from_adapted);
  if (!inv) throw LieError("internal: adapted basis is singular");
  frame_.to_adapted = *inv;
}

Vec NilpotentLieAlgebra::adapted(const Vec& x) const {
  return frame_.identity ? x : frame_.to_adapted.apply(x);
}

Vec NilpotentLieAlgebra::from_adapted(const Vec& y) const {
  return frame_.identity ? y : frame_.from_adapted.apply(y);
}

Vec NilpotentLieAlgebra::layer(const Vec& x, int k) const {
  Vec y = adapted(x);
  Vec out;
  for (size_t i = 0; i < y.size(); ++i)
    if (frame_.weight[i] == k) out.push_back(y[i]);
  return out;
}

std::vector<size_t> NilpotentLieAlgebra::layer_indices(int k) const {
  std::vector<size_t> out;
  for (size_t i = 0; i < frame_.weight.size(); ++i)
    if (frame_.weight[i] == k) out.push_back(i);
  return out;
}

// ---- group law -------------------------------------------------------------

Vec group_mul(const NilpotentLieAlgebra& lie, const Vec& a, const Vec& b) {
  if (lie.nilpotency_class() <= 1) return add(a, b);
  if (is_zero_vec(a)) return b;
  if (is_zero_vec(b)) return a;
  return BchTable::get(lie.nilpotency_class(), 2)->evaluate(lie, {&a, &b});
}

Vec group_mul(const NilpotentLieAlgebra& lie, const std::vector<Vec>& factors) {
  Vec acc(lie.dim());
  for (const auto& f : factors) acc = group_mul(lie, acc, f);
  return acc;
}

Vec group_conj(const NilpotentLieAlgebra& lie, const Vec& g, const Vec& x) {
  Vec out(x), term(x);
  for (int k = 1; k <= lie.nilpotency_class(); ++k) {
    term = scale(frac(1, k), lie.bracket(g, term));
    if (is_zero_vec(term)) break;
    out = add(out, term);
  }
  return out;
}

Vec group_commutator(const NilpotentLieAlgebra& lie, const Vec& a, const Vec& b) {
  return group_mul(lie, {a, b, neg(a), neg(b)});
}

QMat adjoint_matrix(const NilpotentLieAlgebra& lie, const Vec& x) {
  size_t n = lie.dim();
  QMat ad = lie.ad(x);
  QMat out = QMat::identity(n), term = QMat::identity(n);
  for (int k = 1; k <= lie.nilpotency_class(); ++k) {
    term = frac(1, k) * (ad * term);
    if (term.is_zero()) break;
    out = out + term;
  }
  return out;
}

int element_weight(const NilpotentLieAlgebra& lie, const Vec& x) {
  int w = 0;
  for (int k = 1; k <= lie.nilpotency_class() + 1; ++k)
    if (lie.lcs(k).contains(x)) w = k;
  return w;
}

// ---- morphisms -------------------------------------------------------------

std::optional<std::string> lie_hom_defect(const NilpotentLieAlgebra& src, const NilpotentLieAlgebra& tgt, const QMat& m) {
  if (m.rows() != tgt.dim() || m.cols() != src.dim()) return std::string("matrix shape does not match the algebras");
  for (size_t i = 0; i < src.dim(); ++i)
    for (size_t j = i + 1; j < src.dim(); ++j) {
      Vec lhs = m.apply(src.bracket_basis(i, j));
      Vec rhs = tgt.bracket(m.col(i), m.col(j));
      if (lhs != rhs)
        return "bracket not preserved on basis pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
    }
  return std::nullopt;
}

LieMorphism::LieMorphism(LiePtr src, LiePtr tgt, QMat m) : src_(std::move(src)), tgt_(std::move(tgt)), m_(std::move(m)) {
  if (auto d = lie_hom_defect(*src_, *tgt_, m_)) throw LieError("not a Lie homomorphism: " + *d);
}

DirectSum direct_sum(const std::vector<LiePtr>& parts) {
  DirectSum out;
  std::vector<std::string> labels;
  std::vector<BracketEntry> br;
  size_t off = 0;
  for (size_t p = 0; p < parts.size(); ++p) {
    out.offsets.push_back(off);
    for (const auto& l : parts[p]->labels()) labels.push_back(parts.size() > 1 ? l + "#" + std::to_string(p + 1) : l);
    for (const auto& e : parts[p]->entries()) br.push_back({e.i + off, e.j + off, e.k + off, e.c});
    off += parts[p]->dim();
  }
  out.algebra = NilpotentLieAlgebra::create_trusted(labels, br);
  return out;
}

LiePtr epsilon_extension(const NilpotentLieAlgebra& lie, size_t n) {
  size_t d = lie.dim();
  std::vector<std::string> labels = lie.labels();
  for (size_t e = 1; e <= n; ++e)
    for (const auto& l : lie.labels()) labels.push_back("e" + std::to_string(e) + "*" + l);
  std::vector<BracketEntry> br;
  for (const auto& t : lie.entries()) {
    br.push_back({t.i, t.j, t.k, t.c});
    for (size_t e = 1; e <= n; ++e) {
      br.push_back({t.i, e * d + t.j, e * d + t.k, t.c});
      br.push_back({e * d + t.i, t.j, e * d + t.k, t.c});
    }
  }
  return NilpotentLieAlgebra::create_trusted(labels, br);
}

bool is_subalgebra(const NilpotentLieAlgebra& lie, const QSubspace& s) {
  for (size_t a = 0; a < s.dim(); ++a)
    for (size_t b = a + 1; b < s.dim(); ++b)
      if (!s.contains(lie.bracket(s.basis()[a], s.basis()[b]))) return false;
  return true;
}

bool is_ideal(const NilpotentLieAlgebra& lie, const QSubspace& s) {
  for (size_t i = 0; i < lie.dim(); ++i)
    for (const auto& v : s.basis())
      if (!s.contains(lie.bracket(unit_vec<Rational>(lie.dim(), i), v))) return false;
  return true;
}

Subalgebra subalgebra(const NilpotentLieAlgebra& lie, const std::vector<Vec>& span) {
  QSubspace s(lie.dim(), span);
  if (!is_subalgebra(lie, s)) throw LieError("subspace is not closed under the bracket");
  std::vector<BracketEntry> br;
  for (size_t a = 0; a < s.dim(); ++a)
    for (size_t b = a + 1; b < s.dim(); ++b) {
      Vec c = s.coords(lie.bracket(s.basis()[a], s.basis()[b]));
      for (size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) != 0) br.push_back({a, b, k, c[k]});
    }
  std::vector<std::string> labels;
  for (size_t a = 0; a < s.dim(); ++a) labels.push_back("s" + std::to_string(a + 1));
  Subalgebra out;
  out.algebra = NilpotentLieAlgebra::create_trusted(labels, br);
  out.inclusion = QMat::from_cols(s.basis(), lie.dim());
  out.span = s;
  return out;
}

Quotient quotient(const NilpotentLieAlgebra& lie, const QSubspace& ideal) {
  if (!is_ideal(lie, ideal)) throw LieError("quotient by a subspace that is not an ideal");
  size_t n = lie.dim();
  std::vector<size_t> comp = ideal.complement_coords();
  Quotient out;
  out.projection = QMat(comp.size(), n);
  for (size_t j = 0; j < n; ++j) out.projection.set_col(j, ideal.quotient_coords(unit_vec<Rational>(n, j)));
  std::vector<BracketEntry> br;
  std::vector<std::string> labels;
  for (size_t a = 0; a < comp.size(); ++a) {
    labels.push_back(lie.labels()[comp[a]]);
    for (size_t b = a + 1; b < comp.size(); ++b) {
      Vec c = ideal.quotient_coords(lie.bracket_basis(comp[a], comp[b]));
      for (size_t k = 0; k < c.size(); ++k)
        if (sgn(c[k]) != 0) br.push_back({a, b, k, c[k]});
    }
  }
  out.algebra = NilpotentLieAlgebra::create_trusted(labels, br);
  return out;
}

Extension central_extension(const LiePtr& base, size_t kernel_dim, const std::vector<BracketEntry>& cocycle) {
  size_t q = base->dim();
  std::vector<std::string> labels = base->labels();
  for (size_t k = 0; k < kernel_dim; ++k) labels.push_back("z" + std::to_string(k + 1));
  std::vector<BracketEntry> br = base->entries();
  std::map<std::tuple<size_t, size_t, size_t>, Rational> om;
  for (const auto& e : cocycle) {
    if (e.i >= q || e.j >= q || e.k >= kernel_dim) throw LieError("cocycle index out of range");
    if (e.i == e.j) continue;
    if (e.i < e.j) om[{e.i, e.j, e.k}] += e.c;
    else om[{e.j, e.i, e.k}] -= e.c;
  }
  for (const auto& [key, c] : om)
    if (sgn(c) != 0) br.push_back({std::get<0>(key), std::get<1>(key), q + std::get<2>(key), c});
  Extension ext;
  ext.total = NilpotentLieAlgebra::create(labels, br);  // Jacobi here is the cocycle condition
  ext.quotient = base;
  ext.kernel = NilpotentLieAlgebra::abelian(kernel_dim, "z");
  ext.inclusion = QMat(q + kernel_dim, kernel_dim);
  for (size_t k = 0; k < kernel_dim; ++k) ext.inclusion(q + k, k) = 1;
  ext.projection = QMat(q, q + kernel_dim);
  for (size_t i = 0; i < q; ++i) ext.projection(i, i) = 1;
  return ext;
}

std::vector<Vec> two_cocycles(const NilpotentLieAlgebra& lie) {
  size_t n = lie.dim();
  std::vector<std::pair<size_t, size_t>> pairs;
  std::map<std::pair<size_t, size_t>, size_t> idx;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j) {
      idx[{i, j}] = pairs.size();
      pairs.emplace_back(i, j);
    }
  // omega(x, e_k) as a linear form in the unknowns.
  auto pair_form = [&](const Vec& x, size_t k) {
    Vec f(pairs.size());
    for (size_t a = 0; a < n; ++a) {
      if (sgn(x[a]) == 0 || a == k) continue;
      if (a < k) f[idx[{a, k}]] += x[a];
      else f[idx[{k, a}]] -= x[a];
    }
    return f;
  };
  std::vector<Vec> rows;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (size_t k = j + 1; k < n; ++k) {
        Vec f = add(add(pair_form(lie.bracket_basis(i, j), k), pair_form(lie.bracket_basis(j, k), i)),
                    pair_form(lie.bracket_basis(k, i), j));
        if (!is_zero_vec(f)) rows.push_back(std::move(f));
      }
  if (pairs.empty()) return {};
  if (rows.empty()) {
    std::vector<Vec> all;
    for (size_t p = 0; p < pairs.size(); ++p) all.push_back(unit_vec<Rational>(pairs.size(), p));
    return all;
  }
  return kernel(QMat::from_rows(rows, pairs.size()));
}

LiePtr change_basis(const NilpotentLieAlgebra& lie, const QMat& basis) {
  size_t n = lie.dim();
  auto inv = inverse(basis);
  if (!inv) throw LieError("change of basis matrix is singular");
  std::vector<BracketEntry> br;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      Vec c = inv->apply(lie.bracket(basis.col(a), basis.col(b)));
      for (size_t k = 0; k < n; ++k)
        if (sgn(c[k]) != 0) br.push_back({a, b, k, c[k]});
    }
  std::vector<std::string> labels;
  for (size_t a = 0; a < n; ++a) labels.push_back("f" + std::to_string(a + 1));
  return NilpotentLieAlgebra::create_trusted(labels, br);
}

LiePtr associated_graded(const NilpotentLieAlgebra& lie) {
  size_t n = lie.dim();
  const Frame& fr = lie.frame();
  std::vector<BracketEntry> br;
  for (size_t a = 0; a < n; ++a)
    for (size_t b = a + 1; b < n; ++b) {
      int w = fr.weight[a] + fr.weight[b];
      Vec c = lie.adapted(lie.bracket(lie.from_adapted(unit_vec<Rational>(n, a)), lie.from_adapted(unit_vec<Rational>(n, b))));
      for (size_t k = 0; k < n; ++k)
        if (fr.weight[k] == w && sgn(c[k]) != 0) br.push_back({a, b, k, c[k]});
    }
  std::vector<std::string> labels;
  for (size_t a = 0; a < n; ++a) labels.push_back("g" + std::to_string(a + 1));
  return NilpotentLieAlgebra::create(labels, br);
}

LiePtr random_nilpotent(Rng& rng, const RandomLieOptions& opt) {
  size_t start = 1 + rng.index(std::min<size_t>(3, opt.max_dim));
  size_t target = start + rng.index(opt.max_dim - start + 1);
  LiePtr cur = NilpotentLieAlgebra::abelian(start, "e");
  while (cur->dim() < target) {
    std::vector<Vec> z2 = two_cocycles(*cur);
    size_t q = cur->dim();
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < q; ++i)
      for (size_t j = i + 1; j < q; ++j) pairs.emplace_back(i, j);
    LiePtr next;
    for (int attempt = 0; attempt < 4 && !next; ++attempt) {
      Vec om(pairs.size());
      for (const auto& b : z2) axpy(Rational(rng.uniform(-2, 2)), b, om);
      std::vector<BracketEntry> coc;
      for (size_t p = 0; p < pairs.size(); ++p)
        if (sgn(om[p]) != 0) coc.push_back({pairs[p].first, pairs[p].second, 0, om[p]});
      LiePtr cand = central_extension(cur, 1, coc).total;
      if (cand->nilpotency_class() <= opt.max_class) next = cand;
    }
    if (!next) next = central_extension(cur, 1, {}).total;
    std::vector<std::string> labels;
    for (size_t i = 0; i < next->dim(); ++i) labels.push_back("e" + std::to_string(i + 1));
    cur = NilpotentLieAlgebra::create_trusted(labels, next->entries());
  }
  if (opt.shuffle_basis) {
    size_t n = cur->dim();
    QMat b;
    do {
      b = QMat(n, n);
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) b(i, j) = rng.uniform(-2, 2);
    } while (!inverse(b));
    cur = change_basis(*cur, b);
  }
  return cur;
}

LiePtr heisenberg() { return NilpotentLieAlgebra::create({"x", "y", "z"}, {{0, 1, 2, Rational(1)}}); }

// ---- layered solving -------------------------------------------------------

GradedSolve solve_graded_affine(const NilpotentLieAlgebra& source, const NilpotentLieAlgebra& target,
                                const std::function<Vec(const Vec&)>& f, const Vec& value) {
  GradedSolve out;
  int top = std::max(source.nilpotency_class(), target.nilpotency_class());
  Vec u(source.dim());
  Vec inv_value = neg(value);
  auto residual = [&](const Vec& x) { return group_mul(target, inv_value, f(x)); };
  bool forced = true;
  for (int k = 1; k <= top; ++k) {
    Vec r = residual(u);
    Vec rk = target.layer(r, k);
    for (int j = 1; j < k; ++j)
      if (!is_zero_vec(target.layer(r, j))) throw LieError("map does not respect the lower central series at layer " + std::to_string(j));
    std::vector<size_t> idx = source.layer_indices(k);
    QMat m(rk.size(), idx.size());
    for (size_t c = 0; c < idx.size(); ++c) {
      Vec step = source.from_adapted(unit_vec<Rational>(source.dim(), idx[c]));
      Vec r2 = residual(group_mul(source, u, step));
      for (int j = 1; j < k; ++j)
        if (!is_zero_vec(target.layer(r2, j))) throw LieError("map does not respect the lower central series at layer " + std::to_string(j));
      m.set_col(c, sub(target.layer(r2, k), rk));
    }
    // Affineness probe: the sum of all basis steps, doubled.
    if (!idx.empty()) {
      Vec probe(source.dim());
      Vec coef(idx.size());
      for (size_t c = 0; c < idx.size(); ++c) {
        coef[c] = Rational(static_cast<long>(c + 2));
        axpy(coef[c], source.from_adapted(unit_vec<Rational>(source.dim(), idx[c])), probe);
      }
      Vec got = sub(target.layer(residual(group_mul(source, u, probe)), k), rk);
      if (got != m.apply(coef)) throw LieError("graded part nonlinear at layer " + std::to_string(k));
    }
    auto sol = solve_affine(m, neg(rk));
    if (!sol.particular) {
      out.layer = k;
      out.exact = forced;
      out.detail = "no solution on layer " + std::to_string(k);
      return out;
    }
    if (!sol.kernel.empty()) forced = false;
    Vec step(source.dim());
    for (size_t c = 0; c < idx.size(); ++c)
      axpy((*sol.particular)[c], source.from_adapted(unit_vec<Rational>(source.dim(), idx[c])), step);
    u = group_mul(source, u, step);
  }
  if (f(u) != value) throw LieError("internal: layered solution does not satisfy the equation");
  out.solved = true;
  out.solution = u;
  return out;
}

}  // namespace cohw
