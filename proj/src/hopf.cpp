#include "cohw/hopf.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <string>

namespace cohw {

namespace {

Rational binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Rational(r);
}

Rational factorial(unsigned n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return Rational(r);
}

}  // namespace

size_t max_envelope_basis() {
  const char* v = std::getenv("COHW_MAX_BASIS");
  if (v == nullptr || *v == '\0') return 5000;
  char* end = nullptr;
  unsigned long long n = std::strtoull(v, &end, 10);
  if (*end != '\0' || n == 0) throw MathError("COHW_MAX_BASIS must be a positive integer");
  return static_cast<size_t>(n);
}

TruncatedEnvelope::TruncatedEnvelope(LiePtr lie, int level) : lie_(std::move(lie)), level_(level) {
  if (level_ < 0) throw MathError("envelope level must be non-negative");
  const Frame& fr = lie_->frame();
  adapted_ = fr.identity ? lie_ : change_basis(*lie_, fr.from_adapted);
  gen_weight_ = fr.weight;
  size_t d = lie_->dim();
  Exponents cur(d, 0);
  const size_t cap = max_envelope_basis();
  std::function<void(size_t, int)> rec = [&](size_t i, int w) {
    if (i == d) {
      if (monomials_.size() == cap)
        throw EnvelopeTooLarge("PBW basis exceeds " + std::to_string(cap) + " monomials (COHW_MAX_BASIS)");
      monomials_.push_back(cur);
      wdeg_.push_back(w);
      return;
    }
    for (int e = 0; w + e * gen_weight_[i] <= level_; ++e) {
      cur[i] = static_cast<uint8_t>(e);
      rec(i + 1, w + e * gen_weight_[i]);
    }
    cur[i] = 0;
  };
  rec(0, 0);
  std::vector<size_t> order(monomials_.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (wdeg_[a] != wdeg_[b]) return wdeg_[a] < wdeg_[b];
    return monomials_[a] > monomials_[b];
  });
  std::vector<Exponents> mons;
  std::vector<int> w;
  for (size_t i : order) {
    mons.push_back(monomials_[i]);
    w.push_back(wdeg_[i]);
  }
  monomials_ = std::move(mons);
  wdeg_ = std::move(w);
  for (size_t i = 0; i < monomials_.size(); ++i) index_[monomials_[i]] = i;
}

std::string TruncatedEnvelope::monomial_name(size_t m) const {
  const Exponents& e = monomials_[m];
  std::string s;
  for (size_t i = 0; i < e.size(); ++i) {
    if (!e[i]) continue;
    if (!s.empty()) s += "*";
    s += adapted_->labels()[i];
    if (e[i] > 1) s += "^" + std::to_string(e[i]);
  }
  return s.empty() ? "1" : s;
}

size_t TruncatedEnvelope::index_of(const Exponents& e) const { return index_.at(e); }

Vec TruncatedEnvelope::unit() const { return unit_vec<Rational>(dim(), 0); }

Vec TruncatedEnvelope::generator(size_t g) const {
  Vec v(dim());
  if (gen_weight_[g] > level_) return v;
  Exponents e(lie_->dim(), 0);
  e[g] = 1;
  v[index_of(e)] = 1;
  return v;
}

Vec TruncatedEnvelope::from_lie(const Vec& x) const {
  Vec y = lie_->adapted(x);
  Vec v(dim());
  for (size_t g = 0; g < y.size(); ++g)
    if (sgn(y[g]) != 0) axpy(y[g], generator(g), v);
  return v;
}

Vec TruncatedEnvelope::to_lie(const Vec& u) const {
  size_t d = lie_->dim();
  Vec y(d);
  for (size_t m = 0; m < dim(); ++m) {
    if (sgn(u[m]) == 0) continue;
    const Exponents& e = monomials_[m];
    int len = 0;
    size_t g = 0;
    for (size_t i = 0; i < d; ++i)
      if (e[i]) {
        len += e[i];
        g = i;
      }
    if (len != 1) throw MathError("element is not in the image of L: term " + monomial_name(m));
    y[g] = u[m];
  }
  return lie_->from_adapted(y);
}

const TruncatedEnvelope::Sparse& TruncatedEnvelope::mul_generator(size_t m, size_t g) const {
  uint64_t key = static_cast<uint64_t>(m) * lie_->dim() + g;
  auto it = gen_cache_.find(key);
  if (it != gen_cache_.end()) return it->second;
  Sparse result;
  const Exponents& a = monomials_[m];
  if (wdeg_[m] + gen_weight_[g] <= level_) {
    size_t d = a.size();
    size_t j = d;
    for (size_t i = d; i-- > 0;)
      if (a[i]) {
        j = i;
        break;
      }
    if (j == d || j <= g) {
      Exponents b = a;
      ++b[g];
      result.emplace_back(index_of(b), Rational(1));
    } else {
      // a = a' e_j and e_j e_g = e_g e_j + [e_j, e_g].
      Exponents ap = a;
      --ap[j];
      size_t mp = index_of(ap);
      std::map<size_t, Rational> acc;
      Sparse first = mul_generator(mp, g);
      for (const auto& [b, c] : first)
        for (const auto& [t, c2] : mul_generator(b, j)) acc[t] += c * c2;
      Vec br = adapted_->bracket_basis(j, g);
      for (size_t k = 0; k < br.size(); ++k) {
        if (sgn(br[k]) == 0) continue;
        for (const auto& [t, c2] : mul_generator(mp, k)) acc[t] += br[k] * c2;
      }
      for (auto& [t, c] : acc)
        if (sgn(c) != 0) result.emplace_back(t, c);
    }
  }
  return gen_cache_.emplace(key, std::move(result)).first->second;
}

const TruncatedEnvelope::Sparse& TruncatedEnvelope::mul_monomial(size_t a, size_t b) const {
  uint64_t key = static_cast<uint64_t>(a) * dim() + b;
  auto it = mono_cache_.find(key);
  if (it != mono_cache_.end()) return it->second;
  std::map<size_t, Rational> cur{{a, Rational(1)}};
  const Exponents& e = monomials_[b];
  for (size_t g = 0; g < e.size() && !cur.empty(); ++g)
    for (int r = 0; r < e[g] && !cur.empty(); ++r) {
      std::map<size_t, Rational> next;
      for (const auto& [m, c] : cur)
        for (const auto& [t, c2] : mul_generator(m, g)) next[t] += c * c2;
      cur.clear();
      for (auto& [t, c] : next)
        if (sgn(c) != 0) cur.emplace(t, c);
    }
  Sparse result(cur.begin(), cur.end());
  return mono_cache_.emplace(key, std::move(result)).first->second;
}

Vec TruncatedEnvelope::mul(const Vec& a, const Vec& b) const {
  Vec out(dim());
  for (size_t i = 0; i < dim(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (size_t j = 0; j < dim(); ++j) {
      if (sgn(b[j]) == 0) continue;
      Rational c = a[i] * b[j];
      for (const auto& [t, c2] : mul_monomial(i, j)) out[t] += c * c2;
    }
  }
  return out;
}

const Tensor& TruncatedEnvelope::coproduct_monomial(size_t m) const {
  auto it = cop_cache_.find(m);
  if (it != cop_cache_.end()) return it->second;
  Tensor t;
  const Exponents& a = monomials_[m];
  Exponents b(a.size(), 0);
  std::function<void(size_t, Rational)> rec = [&](size_t i, Rational c) {
    if (i == a.size()) {
      Exponents rest(a.size());
      for (size_t k = 0; k < a.size(); ++k) rest[k] = a[k] - b[k];
      t[{index_of(b), index_of(rest)}] += c;
      return;
    }
    for (unsigned e = 0; e <= a[i]; ++e) {
      b[i] = static_cast<uint8_t>(e);
      rec(i + 1, c * binomial(a[i], e));
    }
    b[i] = 0;
  };
  rec(0, Rational(1));
  return cop_cache_.emplace(m, std::move(t)).first->second;
}

Tensor TruncatedEnvelope::coproduct(const Vec& a) const {
  Tensor out;
  for (size_t m = 0; m < dim(); ++m) {
    if (sgn(a[m]) == 0) continue;
    for (const auto& [k, c] : coproduct_monomial(m)) out[k] += a[m] * c;
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

Vec TruncatedEnvelope::antipode(const Vec& a) const {
  Vec out(dim());
  for (size_t m = 0; m < dim(); ++m) {
    if (sgn(a[m]) == 0) continue;
    const Exponents& e = monomials_[m];
    std::map<size_t, Rational> cur{{0, Rational(1)}};
    int len = 0;
    for (size_t g = e.size(); g-- > 0;)
      for (int r = 0; r < e[g]; ++r) {
        ++len;
        std::map<size_t, Rational> next;
        for (const auto& [x, c] : cur)
          for (const auto& [t, c2] : mul_generator(x, g)) next[t] += c * c2;
        cur = std::move(next);
      }
    Rational sign = len % 2 ? -1 : 1;
    for (const auto& [t, c] : cur) out[t] += sign * a[m] * c;
  }
  return out;
}

Vec TruncatedEnvelope::exp(const Vec& x) const {
  Vec xx = from_lie(x);
  Vec sum = unit(), term = unit();
  for (int k = 1; k <= level_; ++k) {
    term = scale(frac(1, k), mul(term, xx));
    sum = add(sum, term);
  }
  return sum;
}

Vec TruncatedEnvelope::log(const Vec& g) const {
  if (g[0] != 1) throw MathError("log of an element with counit != 1");
  Vec y = sub(g, unit());
  Vec sum(dim()), power = y;
  for (int k = 1; k <= level_; ++k) {
    axpy(frac(k % 2 ? 1 : -1, k), power, sum);
    power = mul(power, y);
  }
  return sum;
}

bool TruncatedEnvelope::is_grouplike(const Vec& g) const {
  if (g[0] != 1) return false;
  Tensor lhs = coproduct(g);
  Tensor rhs;
  for (size_t i = 0; i < dim(); ++i)
    for (size_t j = 0; j < dim(); ++j) {
      if (sgn(g[i]) == 0 || sgn(g[j]) == 0 || wdeg_[i] + wdeg_[j] > level_) continue;
      rhs[{i, j}] = g[i] * g[j];
    }
  return lhs == rhs;
}

bool TruncatedEnvelope::is_primitive(const Vec& x) const {
  Tensor lhs = coproduct(x);
  Tensor rhs;
  for (size_t i = 0; i < dim(); ++i) {
    if (sgn(x[i]) == 0) continue;
    rhs[{i, 0}] += x[i];
    rhs[{0, i}] += x[i];
  }
  for (auto it = rhs.begin(); it != rhs.end();) it = sgn(it->second) == 0 ? rhs.erase(it) : std::next(it);
  return lhs == rhs;
}

HopfCheck TruncatedEnvelope::check_axioms(size_t max_triples) const {
  size_t n = dim();
  auto basis = [&](size_t m) { return unit_vec<Rational>(n, m); };
  auto tensor_mul = [&](const Tensor& a, const Tensor& b) {
    Tensor out;
    for (const auto& [ka, ca] : a)
      for (const auto& [kb, cb] : b) {
        for (const auto& [x, cx] : mul_monomial(ka.first, kb.first))
          for (const auto& [y, cy] : mul_monomial(ka.second, kb.second)) {
            if (wdeg_[x] + wdeg_[y] > level_) continue;
            out[{x, y}] += ca * cb * cx * cy;
          }
      }
    for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
  };
  size_t total = n * n * n;
  size_t stride = std::max<size_t>(1, total / std::max<size_t>(1, max_triples));
  for (size_t t = 0; t < total; t += stride) {
    size_t a = t / (n * n), b = (t / n) % n, c = t % n;
    if (mul(mul(basis(a), basis(b)), basis(c)) != mul(basis(a), mul(basis(b), basis(c))))
      return {false, "associativity on (" + monomial_name(a) + "," + monomial_name(b) + "," + monomial_name(c) + ")"};
  }
  size_t pairs = n * n;
  size_t pstride = std::max<size_t>(1, pairs / std::max<size_t>(1, max_triples / 4));
  for (size_t t = 0; t < pairs; t += pstride) {
    size_t a = t / n, b = t % n;
    if (coproduct(mul(basis(a), basis(b))) != tensor_mul(coproduct_monomial(a), coproduct_monomial(b)))
      return {false, "coproduct not multiplicative on (" + monomial_name(a) + "," + monomial_name(b) + ")"};
  }
  for (size_t m = 0; m < n; ++m) {
    const Tensor& d = coproduct_monomial(m);
    std::map<std::tuple<size_t, size_t, size_t>, Rational> left, right;
    Vec eps_left(n), eps_right(n), s_left(n), s_right(n);
    for (const auto& [k, c] : d) {
      for (const auto& [k2, c2] : coproduct_monomial(k.first)) left[{k2.first, k2.second, k.second}] += c * c2;
      for (const auto& [k2, c2] : coproduct_monomial(k.second)) right[{k.first, k2.first, k2.second}] += c * c2;
      if (k.first == 0) eps_left[k.second] += c;
      if (k.second == 0) eps_right[k.first] += c;
      s_left = add(s_left, scale(c, mul(antipode(basis(k.first)), basis(k.second))));
      s_right = add(s_right, scale(c, mul(basis(k.first), antipode(basis(k.second)))));
    }
    if (left != right) return {false, "coassociativity on " + monomial_name(m)};
    if (eps_left != basis(m) || eps_right != basis(m)) return {false, "counit on " + monomial_name(m)};
    Vec expect = m == 0 ? unit() : Vec(n);
    if (s_left != expect || s_right != expect) return {false, "antipode on " + monomial_name(m)};
  }
  return {};
}

std::vector<QSubspace> TruncatedEnvelope::j_powers() const {
  size_t n = dim();
  std::vector<QSubspace> out;
  out.push_back(QSubspace::full(n));
  std::vector<Vec> j1;
  for (size_t m = 1; m < n; ++m) j1.push_back(unit_vec<Rational>(n, m));
  out.emplace_back(n, j1);
  for (int p = 2; p <= level_ + 1; ++p) {
    std::vector<Vec> span;
    for (const auto& v : out.back().basis())
      for (size_t g = 0; g < lie_->dim(); ++g) {
        Vec w = mul(v, generator(g));
        if (!is_zero_vec(w)) span.push_back(std::move(w));
      }
    out.emplace_back(n, span);
  }
  return out;
}

FilteredSpace<Rational> TruncatedEnvelope::j_filtration() const {
  std::vector<QSubspace> pw = j_powers();
  std::vector<std::pair<int, QSubspace>> levels;
  for (int m = 0; m <= level_; ++m) {
    const QSubspace& jp = pw[m + 1];
    if (jp.dim() == 0) {
      levels.emplace_back(m, QSubspace::full(dim()));
    } else {
      levels.emplace_back(m, kernel_space(QMat::from_rows(jp.basis(), dim())));
    }
  }
  return FilteredSpace<Rational>(dim(), FiltrationDirection::Ascending, std::move(levels));
}

HopfCheck TruncatedEnvelope::check_filtration_multiplicative() const {
  FilteredSpace<Rational> jf = j_filtration();
  size_t n = dim();
  for (int a = 0; a <= level_; ++a)
    for (int b = 0; a + b <= level_; ++b) {
      QSubspace fa = jf.at(a), fb = jf.at(b), fab = jf.at(a + b);
      for (const auto& f : fa.basis())
        for (const auto& g : fb.basis()) {
          Vec h(n);
          for (size_t m = 0; m < n; ++m)
            for (const auto& [k, c] : coproduct_monomial(m)) h[m] += c * f[k.first] * g[k.second];
          if (!fab.contains(h))
            return {false, "J_" + std::to_string(a) + " * J_" + std::to_string(b) + " not inside J_" + std::to_string(a + b)};
        }
    }
  return {};
}

QMat symmetrization_matrix(const TruncatedEnvelope& env) {
  size_t n = env.dim();
  QMat s(n, n);
  for (size_t m = 0; m < n; ++m) {
    const Exponents& e = env.monomial(m);
    std::vector<size_t> word;
    Rational mult = 1;
    for (size_t g = 0; g < e.size(); ++g) {
      for (int r = 0; r < e[g]; ++r) word.push_back(g);
      mult *= factorial(e[g]);
    }
    Rational coef = mult / factorial(static_cast<unsigned>(word.size()));
    Vec col(n);
    do {
      Vec cur = env.unit();
      for (size_t g : word) {
        Vec gen = env.from_lie(env.lie()->from_adapted(unit_vec<Rational>(e.size(), g)));
        cur = env.mul(cur, gen);
      }
      axpy(coef, cur, col);
    } while (std::next_permutation(word.begin(), word.end()));
    s.set_col(m, col);
  }
  return s;
}

SymmetrizationReport symmetrization_check(const TruncatedEnvelope& env) {
  SymmetrizationReport rep;
  QMat s = symmetrization_matrix(env);
  size_t n = env.dim();
  for (size_t c = 0; c < n && rep.triangular; ++c)
    for (size_t r = 0; r < n; ++r)
      if (env.weight(r) < env.weight(c) && sgn(s(r, c)) != 0) {
        rep.triangular = false;
        rep.first_violation = env.monomial_name(c);
        break;
      }
  for (int w = 0; w <= env.level() && rep.isomorphism; ++w) {
    std::vector<size_t> idx;
    for (size_t m = 0; m < n; ++m)
      if (env.weight(m) == w) idx.push_back(m);
    QMat blk(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) blk(i, j) = s(idx[i], idx[j]);
    Echelon<Rational> e = rref(blk);
    if (e.rank() < idx.size()) {
      rep.isomorphism = false;
      size_t missing = 0;
      while (missing < e.pivots.size() && e.pivots[missing] == missing) ++missing;
      rep.first_violation = env.monomial_name(idx[missing]);
    }
  }
  return rep;
}

std::vector<QMat> graded_trivialization(const TruncatedEnvelope& env, const Vec& point) {
  size_t n = env.dim();
  Vec g = env.exp(point);
  QMat left(n, n);
  for (size_t m = 0; m < n; ++m) left.set_col(m, env.mul(g, unit_vec<Rational>(n, m)));
  for (size_t c = 0; c < n; ++c)
    for (size_t r = 0; r < n; ++r)
      if (env.weight(r) < env.weight(c) && sgn(left(r, c)) != 0)
        throw MathError("translation does not preserve the J-adic filtration");
  std::vector<QMat> blocks;
  for (int w = 0; w <= env.level(); ++w) {
    std::vector<size_t> idx;
    for (size_t m = 0; m < n; ++m)
      if (env.weight(m) == w) idx.push_back(m);
    QMat blk(idx.size(), idx.size());
    for (size_t i = 0; i < idx.size(); ++i)
      for (size_t j = 0; j < idx.size(); ++j) blk(i, j) = left(idx[i], idx[j]);
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

std::vector<QMat> graded_trivialization(const TruncatedEnvelope& env, const UnipotentTorsor& p, const Vec& point) {
  Trivialization t = torsor_trivialize(p);
  return graded_trivialization(env, group_mul(*p.group(), t.sections[0], point));
}

}  // namespace cohw
