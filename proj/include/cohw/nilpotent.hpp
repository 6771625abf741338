#pragma once
// Nilpotent Lie algebras over Q and the unipotent groups they determine.
//
// Group elements are stored by their logarithms; the product is the
// Baker-Campbell-Hausdorff series, which terminates at the nilpotency class.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cohw/exactla.hpp"
#include "cohw/rng.hpp"

namespace cohw {

class LieError : public MathError {
 public:
  using MathError::MathError;
};

/// [e_i, e_j] gets coefficient `c` on e_k (0-based indices).
struct BracketEntry {
  size_t i, j, k;
  Rational c;
};

/// Change of basis to a basis adapted to the lower central series.
struct Frame {
  bool identity = true;
  QMat to_adapted;          // input coordinates -> adapted coordinates
  QMat from_adapted;        // adapted coordinates -> input coordinates
  std::vector<int> weight;  // weight of each adapted coordinate
};

class NilpotentLieAlgebra;
using LiePtr = std::shared_ptr<const NilpotentLieAlgebra>;

class NilpotentLieAlgebra {
 public:
  // Validates antisymmetry, the Jacobi identity and nilpotency; throws LieError naming the failure.
  static LiePtr create(std::vector<std::string> labels, const std::vector<BracketEntry>& brackets);
  // Skips the Jacobi check; for algebras assembled from already validated pieces.
  static LiePtr create_trusted(std::vector<std::string> labels, const std::vector<BracketEntry>& brackets);
  static LiePtr abelian(size_t n, const std::string& prefix = "e");

  size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  Vec bracket(const Vec& a, const Vec& b) const;
  Vec bracket_basis(size_t i, size_t j) const;
  QMat ad(const Vec& x) const;
  // Nonzero structure constants with i < j.
  std::vector<BracketEntry> entries() const;
  bool is_abelian() const { return nilpotency_class_ <= 1; }

  int nilpotency_class() const { return nilpotency_class_; }
  // Lower central series term L_k for k >= 1 (zero beyond the class).
  const QSubspace& lcs(int k) const;
  std::vector<size_t> lcs_dims() const;
  const Frame& frame() const { return frame_; }

  // Coordinates of x in the adapted basis, and those of weight exactly k.
  Vec adapted(const Vec& x) const;
  Vec layer(const Vec& x, int k) const;
  // The vector of the input basis with adapted coordinates y.
  Vec from_adapted(const Vec& y) const;
  std::vector<size_t> layer_indices(int k) const;

 private:
  NilpotentLieAlgebra() = default;
  static LiePtr build(std::vector<std::string> labels, const std::vector<BracketEntry>& brackets, bool check_jacobi);
  void compute_lcs();
  void compute_frame();

  struct Term {
    size_t j, k;
    Rational c;
  };
  std::vector<std::string> labels_;
  std::vector<std::vector<Term>> terms_;  // terms_[i]: [e_i, e_j] += c e_k
  std::vector<QSubspace> lcs_;           // lcs_[k-1] = L_k, last entry is the zero space
  int nilpotency_class_ = 0;
  Frame frame_;
};

/// Outcome of validating bracket data without constructing an algebra.
struct LieReport {
  bool ok = true;
  std::string message;
};
LieReport validate_lie_data(size_t dim, const std::vector<BracketEntry>& brackets);

// ---- group law -------------------------------------------------------------

Vec group_mul(const NilpotentLieAlgebra& lie, const Vec& a, const Vec& b);
Vec group_mul(const NilpotentLieAlgebra& lie, const std::vector<Vec>& factors);
inline Vec group_inv(const Vec& a) { return neg(a); }
// log(g exp(x) g^{-1}).
Vec group_conj(const NilpotentLieAlgebra& lie, const Vec& g, const Vec& x);
// log(a b a^{-1} b^{-1}).
Vec group_commutator(const NilpotentLieAlgebra& lie, const Vec& a, const Vec& b);
// exp(ad x) as an exact matrix.
QMat adjoint_matrix(const NilpotentLieAlgebra& lie, const Vec& x);
// Largest k with x in L_k (the class + 1 for x = 0).
int element_weight(const NilpotentLieAlgebra& lie, const Vec& x);

// ---- morphisms and constructions ------------------------------------------

// Empty optional if m is a Lie homomorphism src -> tgt, otherwise a diagnostic.
std::optional<std::string> lie_hom_defect(const NilpotentLieAlgebra& src, const NilpotentLieAlgebra& tgt, const QMat& m);

class LieMorphism {
 public:
  LieMorphism(LiePtr src, LiePtr tgt, QMat m);  // throws LieError if not a homomorphism
  const LiePtr& source() const { return src_; }
  const LiePtr& target() const { return tgt_; }
  const QMat& matrix() const { return m_; }
  Vec apply(const Vec& x) const { return m_.apply(x); }
  bool injective() const { return rank(m_) == src_->dim(); }
  bool surjective() const { return rank(m_) == tgt_->dim(); }

 private:
  LiePtr src_, tgt_;
  QMat m_;
};

struct DirectSum {
  LiePtr algebra;
  std::vector<size_t> offsets;  // offsets[i]: first coordinate of summand i
};
DirectSum direct_sum(const std::vector<LiePtr>& parts);

struct Subalgebra {
  LiePtr algebra;
  QMat inclusion;  // columns: the echelon basis of the subalgebra in ambient coordinates
  QSubspace span;
};
// Throws LieError if the span is not closed under the bracket.
Subalgebra subalgebra(const NilpotentLieAlgebra& lie, const std::vector<Vec>& span);
bool is_subalgebra(const NilpotentLieAlgebra& lie, const QSubspace& s);
bool is_ideal(const NilpotentLieAlgebra& lie, const QSubspace& s);

struct Quotient {
  LiePtr algebra;
  QMat projection;
};
Quotient quotient(const NilpotentLieAlgebra& lie, const QSubspace& ideal);

struct Extension {
  LiePtr kernel, total, quotient;
  QMat inclusion;   // kernel -> total
  QMat projection;  // total -> quotient
};
// Central extension of `base` by an abelian algebra of dimension `kernel_dim`.
// `cocycle` entries (i, j, k, c) mean omega(e_i, e_j) = c z_k.
Extension central_extension(const LiePtr& base, size_t kernel_dim, const std::vector<BracketEntry>& cocycle);
// Basis of alternating 2-cocycles L x L -> Q, each as the upper triangle omega(e_i, e_j), i < j.
std::vector<Vec> two_cocycles(const NilpotentLieAlgebra& lie);
// The same algebra written in the basis given by the columns of `basis` (invertible).
LiePtr change_basis(const NilpotentLieAlgebra& lie, const QMat& basis);
// The associated graded algebra of the lower central series, in adapted coordinates.
LiePtr associated_graded(const NilpotentLieAlgebra& lie);

struct RandomLieOptions {
  size_t max_dim = 6;
  int max_class = 4;
  bool shuffle_basis = false;  // conjugate by a random change of basis
};
// L tensored with Q[e_1..e_n]/(e_i e_j): coordinates are the main part followed by the e_1..e_n parts.
LiePtr epsilon_extension(const NilpotentLieAlgebra& lie, size_t n);

LiePtr random_nilpotent(Rng& rng, const RandomLieOptions& opt);
LiePtr heisenberg();

// ---- layered solving -------------------------------------------------------

struct GradedSolve {
  bool solved = false;
  Vec solution;
  int layer = 0;       // first layer with no solution
  bool exact = false;  // the obstruction rules out every solution
  std::string detail;
};

// Solves f(u) = value for u in the source group, one lower-central-series layer at a time.
// The map is probed as a black box; a layer on which it is not affine raises LieError.
GradedSolve solve_graded_affine(const NilpotentLieAlgebra& source, const NilpotentLieAlgebra& target,
                                const std::function<Vec(const Vec&)>& f, const Vec& value);

}  // namespace cohw
