#pragma once
// Torsors under unipotent groups, presented by transition data on a finite chart set.

#include <vector>

#include "cohw/nilpotent.hpp"

namespace cohw {

/// Transition elements t[i][j] in U with t_ij t_jk = t_ik and t_ii = 1.
class UnipotentTorsor {
 public:
  // Throws LieError if the data violates the cocycle condition.
  UnipotentTorsor(LiePtr group, std::vector<std::vector<Vec>> transition);
  // Two-chart torsor with the single transition t_01 = t.
  static UnipotentTorsor two_chart(LiePtr group, const Vec& t);

  const LiePtr& group() const { return group_; }
  size_t charts() const { return t_.size(); }
  const Vec& transition(size_t i, size_t j) const { return t_.at(i).at(j); }

 private:
  LiePtr group_;
  std::vector<std::vector<Vec>> t_;
};

/// Sections x_i with t_ij = x_i x_j^{-1}; x_0 is the identity.
struct Trivialization {
  std::vector<Vec> sections;
};

Trivialization torsor_trivialize(const UnipotentTorsor& p);
// The torsor under the target obtained by applying a homomorphism to the transition data.
UnipotentTorsor torsor_pushout(const UnipotentTorsor& p, const LieMorphism& f);
// The induced torsor under the associated graded group.
UnipotentTorsor torsor_graded(const UnipotentTorsor& p);
UnipotentTorsor random_torsor(const LiePtr& group, size_t charts, Rng& rng);

}  // namespace cohw
