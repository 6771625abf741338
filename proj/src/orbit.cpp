#include "cohw/orbit.hpp"

namespace cohw {

OrbitEngine::OrbitEngine(OrbitProblem p) : p_(std::move(p)) {
  if (!p_.acting || !p_.target) throw LieError("orbit problem needs both algebras");
  if (auto d = lie_hom_defect(*p_.acting, *p_.target, p_.left)) throw LieError("left map: " + *d);
  if (auto d = lie_hom_defect(*p_.acting, *p_.target, p_.right)) throw LieError("right map: " + *d);
  size_t n = p_.acting->dim();
  if (p_.subgroup.empty()) {
    for (size_t i = 0; i < n; ++i) h0_.push_back(unit_vec<Rational>(n, i));
  } else {
    QSubspace s(n, p_.subgroup);
    if (!is_subalgebra(*p_.acting, s)) throw LieError("acting subgroup is not a Lie subalgebra");
    h0_ = s.basis();
  }
}

Vec OrbitEngine::act(const Vec& c, const Vec& g) const {
  const auto& t = *p_.target;
  return group_mul(t, {neg(p_.left.apply(g)), c, p_.right.apply(g)});
}

Vec OrbitEngine::exp_combination(const std::vector<Vec>& h, const Vec& coeffs) const {
  Vec x(p_.acting->dim());
  for (size_t i = 0; i < h.size(); ++i) axpy(coeffs[i], h[i], x);
  return x;
}

QMat OrbitEngine::layer_map(const Vec& base, const std::vector<Vec>& h, int k) const {
  const auto& t = *p_.target;
  size_t rows = t.layer_indices(k).size();
  QMat m(rows, h.size());
  Vec inv_base = neg(base);
  for (size_t i = 0; i < h.size(); ++i) {
    Vec d = group_mul(t, inv_base, act(base, h[i]));
    for (int j = 1; j < k; ++j)
      if (!is_zero_vec(t.layer(d, j))) throw LieError("internal: stabilizer chain broken at layer " + std::to_string(j));
    m.set_col(i, t.layer(d, k));
  }
  return m;
}

OrbitMatch OrbitEngine::solve(const Vec& c, const Vec& c2) const {
  const auto& t = *p_.target;
  OrbitMatch out;
  Vec u(p_.acting->dim());
  std::vector<Vec> h = h0_;
  Vec inv_c2 = neg(c2);
  for (int k = 1; k <= t.nilpotency_class(); ++k) {
    Vec delta = group_mul(t, inv_c2, act(c, u));
    for (int j = 1; j < k; ++j)
      if (!is_zero_vec(t.layer(delta, j))) throw LieError("internal: lower layers not cleared");
    Vec dk = t.layer(delta, k);
    QMat m = layer_map(c2, h, k);
    auto sol = solve_affine(m, neg(dk));
    if (!sol.particular) {
      out.layer = k;
      return out;
    }
    u = group_mul(*p_.acting, u, exp_combination(h, *sol.particular));
    std::vector<Vec> next;
    for (const auto& kv : sol.kernel) next.push_back(exp_combination(h, kv));
    h = std::move(next);
  }
  if (act(c, u) != c2) throw LieError("internal: orbit solution failed verification");
  out.found = true;
  out.element = u;
  return out;
}

std::vector<Vec> OrbitEngine::stabilizer(const Vec& c) const {
  const auto& t = *p_.target;
  std::vector<Vec> h = h0_;
  for (int k = 1; k <= t.nilpotency_class() && !h.empty(); ++k) {
    QMat m = layer_map(c, h, k);
    std::vector<Vec> next;
    for (const auto& kv : kernel(m)) next.push_back(exp_combination(h, kv));
    h = std::move(next);
  }
  return QSubspace(p_.acting->dim(), h).basis();
}

std::vector<size_t> OrbitEngine::layer_ranks(const Vec& c) const {
  const auto& t = *p_.target;
  std::vector<size_t> ranks;
  std::vector<Vec> h = h0_;
  for (int k = 1; k <= t.nilpotency_class(); ++k) {
    QMat m = layer_map(c, h, k);
    ranks.push_back(rank(m));
    std::vector<Vec> next;
    for (const auto& kv : kernel(m)) next.push_back(exp_combination(h, kv));
    h = std::move(next);
  }
  return ranks;
}

bool OrbitEngine::transitive() const {
  const auto& t = *p_.target;
  Vec one(t.dim());
  std::vector<size_t> ranks = layer_ranks(one);
  for (int k = 1; k <= t.nilpotency_class(); ++k)
    if (ranks[k - 1] != t.layer_indices(k).size()) return false;
  return true;
}

Vec OrbitEngine::normal_form(const Vec& c) const {
  const auto& t = *p_.target;
  Vec e = c;
  std::vector<Vec> h = h0_;
  for (int k = 1; k <= t.nilpotency_class(); ++k) {
    QMat m = layer_map(e, h, k);
    Vec v = t.layer(e, k);
    QSubspace img = column_space(m);
    Vec r = img.reduce(v);
    auto sol = solve_affine(m, sub(r, v));
    if (!sol.particular) throw LieError("internal: reduction target outside the image");
    e = act(e, exp_combination(h, *sol.particular));
    if (t.layer(e, k) != r) throw LieError("internal: normal form layer mismatch");
    std::vector<Vec> next;
    for (const auto& kv : sol.kernel) next.push_back(exp_combination(h, kv));
    h = std::move(next);
  }
  return e;
}

}  // namespace cohw
