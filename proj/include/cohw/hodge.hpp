#pragma once
// Mixed Hodge structures on unipotent groups and the double cosets
// W_0 U(R) \ U(C) / F^0 U(C) classifying torsors.
//
// Complex points are handled through the realification: U(C) as a rational Lie
// algebra of twice the dimension with coordinates (real parts, imaginary parts).

#include <string>
#include <vector>

#include "cohw/cosimpl.hpp"
#include "cohw/les.hpp"
#include "cohw/orbit.hpp"
#include "cohw/rng.hpp"

namespace cohw {

class MHSError : public MathError {
 public:
  using MathError::MathError;
};

using QFiltration = FilteredSpace<Rational>;
using CFiltration = FilteredSpace<Gaussian>;

struct MHSGroup {
  LiePtr lie;
  QFiltration weight;  // ascending, by ideals
  CFiltration hodge;   // descending, on the complexification
  bool negative_weights = true;
};

struct MHSReport {
  bool ok = true;
  std::string violation;
  std::vector<std::pair<int, size_t>> graded_dims;  // (m, dim Gr^W_m) for nonzero pieces
};
MHSReport validate_mhs(const MHSGroup& m);
// Throws MHSError with the violation.
MHSGroup mhs_group(LiePtr lie, QFiltration weight, CFiltration hodge, bool negative_weights = true);

// ---- realification ----------------------------------------------------------

LiePtr realify(const NilpotentLieAlgebra& lie);
Vec realify(const CVec& v);
CVec complexify(const Vec& v);
// Real span of a complex subspace inside the realification: re/im of v and of i v.
std::vector<Vec> realify_span(const CSubspace& s);

struct W0F0 {
  QSubspace w0;  // in U
  CSubspace f0;  // in U(C)
};
W0F0 w0_f0_subgroups(const MHSGroup& m);

// The action (w, f) : u -> w^-1 u f of W_0 U(R) x F^0 U(C) on U(C), realified.
OrbitEngine double_coset_engine(const MHSGroup& m);

struct MHSTorsorClass {
  CVec representative;      // normal form
  std::vector<Vec> layers;  // realified lower central series components of the normal form
};
MHSTorsorClass classify_torsor(const MHSGroup& m, const CVec& u);
// Exact: decides whether w^-1 u f = v for some (w, f).
bool equivalent(const MHSGroup& m, const CVec& u, const CVec& v);

struct FreenessCertificate {
  int samples = 0;
  int trivial = 0;
  std::vector<CVec> failures;
  bool free() const { return samples == trivial; }
};
FreenessCertificate freeness_check(const MHSGroup& m, Rng& rng, int samples);

// dim_R U(C) - dim_R F^0 U(C) - dim_R U(R); needs negative weights and a free action at 1.
size_t h1_dimension(const MHSGroup& m);

// Gamma of F^0 U(C) x W_0 U(R) => U(C), with d^0 the F^0 inclusion and d^1 the W_0 inclusion.
// pi^0 is F^0 W_0 U(R) and pi^1 the double coset space.
LieCosimplicial mhs_cosimplicial(const MHSGroup& m, int top = 3);

// Induced filtrations on a subgroup and image filtrations on the quotient.
// Throws MHSError if the induced data are not mixed Hodge structures.
MHSGroup restrict_mhs(const MHSGroup& m, const QSubspace& sub);
MHSGroup quotient_mhs(const MHSGroup& m, const QSubspace& ideal);

struct MHSLes {
  MHSGroup z, q;
  CentralLes les;
};
// 1 -> F0W0 Z(R) -> F0W0 U(R) -> F0W0 Q(R) -> H1(Z) -> H1(U) -> H1(Q) -> 1 for a central sub-MHS Z.
MHSLes mhs_les(const MHSGroup& u, const std::vector<Vec>& central, Rng& rng, int samples = 8);

// ---- instances --------------------------------------------------------------

// L one-dimensional of weight -2 with F^0 = 0.
MHSGroup tate_mhs();
// Pure of weight -1 and rank 2 with F^0 = span(e_1 + i e_2).
MHSGroup pure_weight_minus_one();
// Heisenberg (x, y, z): span(x, y) as above, z of weight -2 with F^0 meeting it trivially.
MHSGroup heisenberg_mhs();
// Rank 2g pure of weight -1 with F^0 = span(e_k + t_k e_{g+k}), Im t_k != 0, optionally
// extended by a weight -2 line through the standard symplectic form.
MHSGroup random_mhs(Rng& rng, size_t max_genus);

}  // namespace cohw
