#pragma once
// Cohomology of a finite group acting on a finite or unipotent group, computed as
// the cohomotopy of the cochain cosimplicial group.

#include <optional>
#include <string>
#include <vector>

#include "cohw/cosimpl.hpp"
#include "cohw/les.hpp"

namespace cohw {

class GroupActionError : public MathError {
 public:
  using MathError::MathError;
};

// act[g] is the automorphism u -> g.u of the target, for every element g of G.
struct FiniteGroupAction {
  GroupPtr group;
  GroupPtr target;
  std::vector<std::vector<int>> act;
};

struct UnipotentGroupAction {
  GroupPtr group;
  LiePtr target;
  std::vector<QMat> act;  // Lie algebra automorphisms
};

// Extends the images of group->generators() over the Cayley graph and validates the result
// against the full multiplication table. Throws GroupActionError.
FiniteGroupAction make_action(const GroupPtr& g, const GroupPtr& u, const std::vector<std::vector<int>>& generator_images);
UnipotentGroupAction make_action(const GroupPtr& g, const LiePtr& u, const std::vector<QMat>& generator_images);
FiniteGroupAction trivial_action(const GroupPtr& g, const GroupPtr& u);
UnipotentGroupAction trivial_action(const GroupPtr& g, const LiePtr& u);
void validate(const FiniteGroupAction& a);
void validate(const UnipotentGroupAction& a);

// Index of (g_1, ..., g_n) in G^n, with g_1 most significant.
size_t tuple_index(const std::vector<int>& tuple, size_t order);
std::vector<int> tuple_at(size_t index, int n, size_t order);

// C^n = maps G^n -> U for n <= top, with d^0 f = g_1 . f(g_2, ...), inner cofaces multiplying
// neighbours, the last one dropping g_n, and codegeneracies inserting 1.
// Throws CapExceeded if |G|^top exceeds `cap`.
FiniteCosimplicial cochain_cosimplicial(const FiniteGroupAction& a, int top = 2, size_t cap = 100000);
LieCosimplicial cochain_cosimplicial(const UnipotentGroupAction& a, int top = 2, size_t cap = 4096);

struct FiniteH0H1 {
  std::vector<int> fixed;  // H^0, sorted
  FinitePi1 h1;            // cocycles are indexed by the elements of G
};
FiniteH0H1 h0_h1(const FiniteGroupAction& a, size_t cap = 1000000);

struct UnipotentH0H1 {
  std::vector<Vec> fixed;  // basis of the Lie algebra of H^0
  LiePi1 h1;
};
UnipotentH0H1 h0_h1(const UnipotentGroupAction& a);

// The crossed homomorphism condition c(gh) = c(g) g(c(h)).
bool is_crossed_homomorphism(const FiniteGroupAction& a, const FElem& c);
bool is_crossed_homomorphism(const UnipotentGroupAction& a, const std::vector<Vec>& c);

// g acts by u -> alpha(g) g(u) alpha(g)^-1. Throws GroupActionError if alpha is not a cocycle.
FiniteGroupAction serre_twist(const FiniteGroupAction& a, const FElem& alpha);
UnipotentGroupAction serre_twist(const UnipotentGroupAction& a, const std::vector<Vec>& alpha);

struct SerreTwistReport {
  bool matches_twisted_object = false;  // cochains of the twist = twist of the cochains
  TwistCheck bijection;                 // right multiplication by alpha on H^1
};
SerreTwistReport serre_twist_check(const FiniteGroupAction& a, const FElem& alpha, size_t cap = 1000000);
bool serre_twist_matches(const UnipotentGroupAction& a, const std::vector<Vec>& alpha);

struct InflationRestriction {
  MixedExactSequence sequence;
  std::vector<size_t> inflation;    // class of H^1(G/I, U^I) -> class of H^1(G, U)
  std::vector<size_t> restriction;  // class of H^1(G, U) -> class of H^1(I, U)
};
// 1 -> H^1(G/I, U^I) -> H^1(G, U) -> H^1(I, U), verified by enumeration.
InflationRestriction inflation_restriction(const FiniteGroupAction& a, const std::vector<int>& normal, size_t cap = 1000000);

// The seven-term sequence for a G-stable central subgroup Z of U, on cochain objects.
FiniteLes les_group_cohomology(const FiniteGroupAction& a, const std::vector<int>& central, size_t cap = 200000);
// Same for a G-stable central ideal; the cochain object is built up to degree 3 so H^2(G, Z) is reported.
CentralLes les_group_cohomology(const UnipotentGroupAction& a, const std::vector<Vec>& central, Rng& rng, int samples = 8);

// ---- random instances -------------------------------------------------------

// A random action through automorphisms of u; falls back to the trivial action.
FiniteGroupAction random_action(Rng& rng, const GroupPtr& g, const GroupPtr& u);

struct CentralGroupExtension {
  FiniteGroupAction action;
  std::vector<int> central;  // G-stable subgroup of the centre of U
};
CentralGroupExtension random_central_extension(Rng& rng, size_t max_group, size_t max_target);

}  // namespace cohw
