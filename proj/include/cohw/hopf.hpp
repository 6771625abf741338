#pragma once
// Truncated universal enveloping algebras U(L)/J^{n+1} in a PBW basis.
//
// The PBW basis uses an adapted basis of L, so a monomial of weighted degree d
// lies in J^d and the truncation keeps exactly the monomials of weighted degree <= n.

#include <map>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cohw/nilpotent.hpp"
#include "cohw/torsor.hpp"

namespace cohw {

using Exponents = std::vector<uint8_t>;
using Tensor = std::map<std::pair<size_t, size_t>, Rational>;

class EnvelopeTooLarge : public MathError {
 public:
  using MathError::MathError;
};

// PBW basis size limit: COHW_MAX_BASIS from the environment, 5000 by default.
size_t max_envelope_basis();

struct HopfCheck {
  bool ok = true;
  std::string failure;  // first failing axiom and basis element
};

class TruncatedEnvelope {
 public:
  // Throws EnvelopeTooLarge beyond max_envelope_basis() monomials.
  TruncatedEnvelope(LiePtr lie, int level);

  const LiePtr& lie() const { return lie_; }
  int level() const { return level_; }
  size_t dim() const { return monomials_.size(); }
  const Exponents& monomial(size_t m) const { return monomials_[m]; }
  int weight(size_t m) const { return wdeg_[m]; }
  std::string monomial_name(size_t m) const;

  Vec unit() const;
  // Image of x (input coordinates of L) as a degree-one element.
  Vec from_lie(const Vec& x) const;
  // Coordinates in L of a primitive element; throws MathError if it is not in L.
  Vec to_lie(const Vec& u) const;

  Vec mul(const Vec& a, const Vec& b) const;
  Tensor coproduct(const Vec& a) const;
  Rational counit(const Vec& a) const { return a[0]; }
  Vec antipode(const Vec& a) const;

  Vec exp(const Vec& x) const;  // x in input coordinates of L
  Vec log(const Vec& g) const;
  bool is_grouplike(const Vec& g) const;
  bool is_primitive(const Vec& x) const;

  // Associativity, coassociativity, counit, compatibility and antipode on basis monomials.
  HopfCheck check_axioms(size_t max_triples = 4000) const;

  // J^m inside U/J^{n+1} for m = 0..n+1, computed by repeated multiplication.
  std::vector<QSubspace> j_powers() const;
  // Dual filtration J_m = annihilator of J^{m+1}, m = 0..n, in dual PBW coordinates.
  FilteredSpace<Rational> j_filtration() const;
  // Checks J_a * J_b inside J_{a+b} for the convolution product of functionals.
  HopfCheck check_filtration_multiplicative() const;

 private:
  using Sparse = std::vector<std::pair<size_t, Rational>>;
  const Sparse& mul_generator(size_t m, size_t g) const;
  const Sparse& mul_monomial(size_t a, size_t b) const;
  const Tensor& coproduct_monomial(size_t m) const;
  size_t index_of(const Exponents& e) const;
  Vec generator(size_t g) const;

  LiePtr lie_;      // as given
  LiePtr adapted_;  // same algebra in its adapted basis
  int level_;
  std::vector<int> gen_weight_;
  std::vector<Exponents> monomials_;
  std::vector<int> wdeg_;
  std::map<Exponents, size_t> index_;
  mutable std::unordered_map<uint64_t, Sparse> gen_cache_;
  mutable std::unordered_map<uint64_t, Sparse> mono_cache_;
  mutable std::unordered_map<size_t, Tensor> cop_cache_;
};

/// Symmetrization S(L)/(weight > n) -> U(L)/J^{n+1}: a linear isomorphism compatible with weights.
struct SymmetrizationReport {
  bool isomorphism = true;
  bool triangular = true;
  std::string first_violation;  // name of the first basis vector breaking the check
};
SymmetrizationReport symmetrization_check(const TruncatedEnvelope& env);
// Matrix of symmetrization in PBW coordinates (columns indexed like the PBW monomials).
QMat symmetrization_matrix(const TruncatedEnvelope& env);

/// Induced map on gr^J of left translation by a point: one block per weight 0..n.
std::vector<QMat> graded_trivialization(const TruncatedEnvelope& env, const Vec& point);
// Same, for the point in chart 0 of a torsor composed with `point`.
std::vector<QMat> graded_trivialization(const TruncatedEnvelope& env, const UnipotentTorsor& p, const Vec& point);

}  // namespace cohw
