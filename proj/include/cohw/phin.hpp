#pragma once
// (phi, N)-modules on unipotent groups over the rationals, the cosimplicial groups
// of the Selmer quotients g/e and f/e, and twisted conjugation.

#include <optional>
#include <string>
#include <vector>

#include "cohw/cosimpl.hpp"
#include "cohw/les.hpp"

namespace cohw {

class PhiNError : public MathError {
 public:
  using MathError::MathError;
};

struct PhiNGroup {
  LiePtr lie;
  QMat phi;        // Lie algebra automorphism
  QMat monodromy;  // derivation with N phi = p phi N
  Rational p{2};
};
// Throws PhiNError naming the violated condition.
void validate(const PhiNGroup& x);
PhiNGroup phin_group(LiePtr lie, QMat phi, std::optional<QMat> monodromy = std::nullopt, Rational p = 2);

// L[e_1..e_n] with e_i e_j = 0 for n <= top, coordinates as in epsilon_extension.
// d^0 = exp(e_1 N) followed by e_s -> e_{s+1}; d^i (0 < i < n) sends e_i to e_i + e_{i+1}
// and shifts the later e_s; d^n keeps e_1..e_{n-1}; s^j kills e_{j+1} and shifts down.
// The identities are checked before returning.
LieCosimplicial epsilon_denormalize(const LiePtr& lie, const QMat& monodromy, int top);
// phi on the main part and p phi on every e_i.
QMat epsilon_frobenius(const QMat& phi, const Rational& p, int n);

enum class SelmerVariant { FE, GE };
const char* variant_name(SelmerVariant v);

// f/e: cogenerated by L => L with d^0 = phi, d^1 = 1 (n + 1 copies of L in degree n).
// g/e: diagonal of the same construction over L[e_1..e_n] ((n + 1)^2 copies of L in degree n).
LieCosimplicial selmer_quotient_cosimplicial(const PhiNGroup& x, SelmerVariant v, int top = 3);

// {u : phi(u) = u, N(u) = 0} as a basis of a Lie subalgebra.
std::vector<Vec> d_phi1(const PhiNGroup& x);

struct H1QuotientReport {
  LieCosimplicial object;
  std::vector<Vec> pi0;                       // from the cosimplicial object
  std::optional<std::vector<size_t>> dims;    // pi^0, pi^1, pi^2 for abelian groups
  std::optional<size_t> dual_pi2;             // dim D - rank[p phi - 1 | N] (g/e, abelian)
};
H1QuotientReport h1_quotient(const PhiNGroup& x, SelmerVariant v);

struct TwistedConjugacy {
  bool transitive = false;
  std::vector<Vec> stabilizer;  // of the identity: the fixed points of phi
  bool consistent = false;      // transitive exactly when the stabilizer is trivial
};
// The action u : w -> u^-1 w phi(u) of D on itself.
TwistedConjugacy twisted_conj_classify(const LiePtr& d, const QMat& phi);
// phi - 1 is singular on some lower central series quotient.
bool has_graded_eigenvalue_one(const NilpotentLieAlgebra& lie, const QMat& phi);

/// A (phi, N)-torsor trivialised as U: Frobenius x -> a phi(x) and monodromy datum b in L.
struct PhiNTorsor {
  PhiNGroup group;
  Vec frobenius;  // a
  Vec monodromy;  // b
};
// The degree-1 cocycle of the g/e object with blocks (e b, a + e c); c is solved for.
// Throws PhiNError if no c exists.
Vec phin_torsor_cocycle(const PhiNTorsor& q, const LieCosimplicial& ge);
bool phin_torsor_equivalent(const PhiNTorsor& a, const PhiNTorsor& b);

// The seven-term sequence of the g/e objects for a phi- and N-stable central ideal.
CentralLes quotient_les(const PhiNGroup& u, const std::vector<Vec>& central, Rng& rng, int samples = 8);

// ---- instances --------------------------------------------------------------

// Z with phi = 1/p, N = 0.
PhiNGroup tate_twist_pattern(const Rational& p = 2);
// Heisenberg (x, y, z) with phi on span(x, y) of characteristic polynomial x^2 - x/2 + 1/2
// and phi = 1/2 on the centre, N = 0, p = 2.
PhiNGroup heisenberg_isocrystal();
// Abelian, dim <= max_dim; eigenvalues drawn so that N is often nonzero.
PhiNGroup random_abelian_phin(Rng& rng, size_t max_dim, const Rational& p = 2);

struct GradedAutomorphism {
  LiePtr lie;
  QMat phi;
};
// An associated graded algebra with phi = exp(ad x) composed with the weight scaling by t,
// or an abelian algebra with a random invertible phi.
GradedAutomorphism random_graded_automorphism(Rng& rng, size_t max_dim, int max_class);

}  // namespace cohw
