#pragma once
// Long exact sequences of cohomotopy for extensions of cosimplicial groups.

#include <optional>
#include <string>
#include <vector>

#include "cohw/cosimpl.hpp"
#include "cohw/exact_sequence.hpp"

namespace cohw {

// ---- finite carriers --------------------------------------------------------

// subgroups[n][f]: sorted elements of a subgroup of factor f of U^n.
using FactorSubgroups = std::vector<std::vector<std::vector<int>>>;

// The factorwise subgroups of Gamma(X) induced by subgroups of the factors of each X^k.
FactorSubgroups cogenerated_subgroups(const std::vector<std::vector<std::vector<int>>>& x_subgroups, int top);

enum class LesPart {
  Transitive = 1,  // U acts on the cosets Z\U; five terms
  Normal = 2,      // Z normal; six terms
  Central = 3,     // Z central; seven terms, the last one listed on the image only
};

struct FiniteLes {
  FiniteSequence sequence;
  MixedExactSequence summary;  // includes the well-definedness clauses
};

// Throws CosimplicialError if the subgroups are not stable under the structure maps,
// not normal (parts 2, 3) or not central (part 3).
FiniteLes les_finite(const FiniteCosimplicial& u, const FactorSubgroups& z, LesPart part, size_t cap = 200000);

// ---- unipotent and vector carriers -------------------------------------------

struct LieExtension {
  LieCosimplicial z, u, q;
  std::vector<QMat> inclusion;   // Z^n -> U^n
  std::vector<QMat> projection;  // U^n -> Q^n
  std::vector<QMat> section;     // Q^n -> U^n, a linear right inverse of the projection
  bool central = false;
};

// Spans in Gamma(X)^n induced by spans in each X^k (blockwise, in surjection order).
std::vector<std::vector<Vec>> cogenerated_spans(const LieCosimplicial& x, const std::vector<std::vector<Vec>>& x_spans);

// Z^n given by spans of ideals of U^n; codegeneracies are carried over when present.
LieExtension split_extension(const LieCosimplicial& u, const std::vector<std::vector<Vec>>& z_spans, bool require_central);

struct CentralLes {
  MixedExactSequence sequence;
  std::vector<size_t> pi0_dims;  // Z, U, Q
  size_t h1z_dim = 0;
  std::optional<size_t> h2z_dim;  // needs degree 3
  size_t delta_rank = 0;          // rank of pi^0(Q) -> pi^1(Z)
  bool pi1q_point = false;        // pi^1(Q) is a single class
  // pi^1(Z) -> pi^1(U) is a bijection: the connecting map is zero and pi^1(Q) is a point.
  bool middle_bijective() const { return delta_rank == 0 && pi1q_point; }
};

// The seven-term sequence with pi^2(Z) for a central extension of unipotent
// cosimplicial groups. Linear clauses are exact; clauses on pi^1 use exact
// deciders on `samples` random cocycles.
CentralLes les_unipotent_central(const LieExtension& e, Rng& rng, int samples = 12);

// The long exact sequence of Moore cohomology for vector space objects, up to degree top - 1.
MixedExactSequence les_abelian(const LieExtension& e);

struct CodimReport {
  bool hypothesis = true;
  int failing_degree = -1;
  bool ok = false;            // every class got a preimage cocycle
  std::vector<Vec> preimages;  // one U-cocycle per input Q-cocycle
  std::string detail;
};

// Checks that Z^n -> Gamma^n(Z restricted to degrees <= 1) is injective, then lifts each
// Q-cocycle to a U-cocycle by the s^0 correction.
CodimReport codim_vanishing_check(const LieExtension& e, const std::vector<Vec>& q_cocycles);

}  // namespace cohw
