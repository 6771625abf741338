#pragma once
// Orbits of a unipotent group acting by c * g = left(g)^{-1} c right(g).
//
// The target is filtered by its lower central series. On each layer the
// stabilizer of the lower layers acts through a homomorphism into the
// abelian layer, so every question reduces to exact linear algebra.

#include <optional>
#include <string>
#include <vector>

#include "cohw/nilpotent.hpp"

namespace cohw {

struct OrbitProblem {
  LiePtr acting;  // Lie algebra of the acting group
  LiePtr target;  // Lie algebra of the group being acted on
  QMat left;      // Lie homomorphism acting -> target
  QMat right;     // Lie homomorphism acting -> target
  // Basis of the acting subgroup's Lie algebra; empty means all of `acting`.
  std::vector<Vec> subgroup;
};

struct OrbitMatch {
  bool found = false;
  Vec element;    // g with c * g = c2, when found
  int layer = 0;  // first layer where the equation has no solution
};

class OrbitEngine {
 public:
  explicit OrbitEngine(OrbitProblem p);  // validates both homomorphisms and the subgroup

  const OrbitProblem& problem() const { return p_; }
  Vec act(const Vec& c, const Vec& g) const;

  // Decides whether c2 lies in the orbit of c; the answer is exact.
  OrbitMatch solve(const Vec& c, const Vec& c2) const;
  // Lie algebra of the stabilizer of c.
  std::vector<Vec> stabilizer(const Vec& c) const;
  // True when the orbit of the identity is everything, i.e. every layer map is onto.
  bool transitive() const;
  // Canonical orbit representative: on each layer the component is reduced to the
  // canonical complement of the image of that layer's map.
  Vec normal_form(const Vec& c) const;
  // Per-layer ranks of the layer maps at the identity (diagnostics).
  std::vector<size_t> layer_ranks(const Vec& c) const;

 private:
  // Layer-k map at base point `base` restricted to the span of `h`.
  QMat layer_map(const Vec& base, const std::vector<Vec>& h, int k) const;
  Vec exp_combination(const std::vector<Vec>& h, const Vec& coeffs) const;

  OrbitProblem p_;
  std::vector<Vec> h0_;
};

}  // namespace cohw
