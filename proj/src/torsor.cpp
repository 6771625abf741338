#include "cohw/torsor.hpp"

namespace cohw {

UnipotentTorsor::UnipotentTorsor(LiePtr group, std::vector<std::vector<Vec>> transition)
    : group_(std::move(group)), t_(std::move(transition)) {
  size_t m = t_.size();
  for (size_t i = 0; i < m; ++i) {
    if (t_[i].size() != m) throw LieError("transition data must be square");
    if (!is_zero_vec(t_[i][i])) throw LieError("transition t_ii must be the identity");
  }
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j)
      for (size_t k = 0; k < m; ++k)
        if (group_mul(*group_, t_[i][j], t_[j][k]) != t_[i][k])
          throw LieError("cocycle condition fails on charts (" + std::to_string(i) + "," + std::to_string(j) + "," +
                         std::to_string(k) + ")");
}

UnipotentTorsor UnipotentTorsor::two_chart(LiePtr group, const Vec& t) {
  size_t n = group->dim();
  return UnipotentTorsor(group, {{Vec(n), t}, {neg(t), Vec(n)}});
}

Trivialization torsor_trivialize(const UnipotentTorsor& p) {
  const auto& g = *p.group();
  Trivialization out;
  out.sections.push_back(Vec(g.dim()));
  // x_j solves x_j^{-1} = x_0^{-1} t_0j.
  for (size_t j = 1; j < p.charts(); ++j) {
    auto res = solve_graded_affine(g, g, [](const Vec& x) { return neg(x); }, p.transition(0, j));
    if (!res.solved) throw LieError("internal: unipotent torsor did not trivialize");
    out.sections.push_back(res.solution);
  }
  for (size_t i = 0; i < p.charts(); ++i)
    for (size_t j = 0; j < p.charts(); ++j)
      if (group_mul(g, out.sections[i], neg(out.sections[j])) != p.transition(i, j))
        throw LieError("internal: trivialization does not reproduce the transitions");
  return out;
}

UnipotentTorsor torsor_pushout(const UnipotentTorsor& p, const LieMorphism& f) {
  if (f.source() != p.group() && f.source()->dim() != p.group()->dim())
    throw LieError("pushout along a map from a different group");
  std::vector<std::vector<Vec>> t(p.charts(), std::vector<Vec>(p.charts()));
  for (size_t i = 0; i < p.charts(); ++i)
    for (size_t j = 0; j < p.charts(); ++j) t[i][j] = f.apply(p.transition(i, j));
  return UnipotentTorsor(f.target(), std::move(t));
}

UnipotentTorsor torsor_graded(const UnipotentTorsor& p) {
  const auto& g = *p.group();
  LiePtr gr = associated_graded(g);
  std::vector<std::vector<Vec>> t(p.charts(), std::vector<Vec>(p.charts()));
  // Layer-wise leading terms of the sections give a trivialization of the graded torsor.
  Trivialization triv = torsor_trivialize(p);
  std::vector<Vec> lead;
  for (const auto& x : triv.sections) lead.push_back(g.adapted(x));
  for (size_t i = 0; i < p.charts(); ++i)
    for (size_t j = 0; j < p.charts(); ++j) t[i][j] = group_mul(*gr, lead[i], neg(lead[j]));
  return UnipotentTorsor(gr, std::move(t));
}

UnipotentTorsor random_torsor(const LiePtr& group, size_t charts, Rng& rng) {
  std::vector<Vec> x;
  for (size_t i = 0; i < charts; ++i) x.push_back(i == 0 ? Vec(group->dim()) : rng.rational_vec(group->dim(), 9, 5));
  std::vector<std::vector<Vec>> t(charts, std::vector<Vec>(charts));
  for (size_t i = 0; i < charts; ++i)
    for (size_t j = 0; j < charts; ++j) t[i][j] = group_mul(*group, x[i], neg(x[j]));
  return UnipotentTorsor(group, std::move(t));
}

}  // namespace cohw
