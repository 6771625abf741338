#pragma once
// Cosimplicial and semi-cosimplicial groups, cogeneration, cohomotopy and twisting.
//
// Two carriers are provided. FiniteCarrier objects are products of finite table
// groups and maps send each target factor through one source factor. LieCarrier
// objects are nilpotent Lie algebras and maps are homomorphism matrices; the
// group structure is the BCH law.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cohw/finite_group.hpp"
#include "cohw/nilpotent.hpp"
#include "cohw/orbit.hpp"

namespace cohw {

class CosimplicialError : public MathError {
 public:
  using MathError::MathError;
};

// ---- simplex category -------------------------------------------------------

// An order-preserving map [m] -> [n] stored as its values f(0), ..., f(m).
using SimplexMap = std::vector<int>;

SimplexMap coface_map(int n, int i);        // [n-1] -> [n], skipping i
SimplexMap codegeneracy_map(int n, int i);  // [n+1] -> [n], hitting i twice
SimplexMap compose(const SimplexMap& g, const SimplexMap& f);
// All surjections [n] ->> [k], k = 0..n, ordered by k and then lexicographically.
std::vector<SimplexMap> surjections(int n);
inline int surjection_target(const SimplexMap& s) { return s.back(); }

struct EpiMono {
  SimplexMap epi;            // onto [m]
  std::vector<int> missing;  // points of [n] not hit, ascending
};
EpiMono factor(const SimplexMap& f, int n);
// Positions j with s(j) = s(j + 1); s = sigma^{j_1} ... sigma^{j_t} with these ascending.
std::vector<int> repeats(const SimplexMap& s);

// ---- finite carrier ---------------------------------------------------------

struct ProductGroup {
  std::vector<GroupPtr> factors;
  // Order of the product, or cap + 1 if it exceeds cap.
  size_t order_capped(size_t cap) const;
  std::string describe() const;
};
using FElem = std::vector<int>;

struct MonomialHom {
  struct Part {
    int source = -1;         // -1: this target factor is constant 1
    std::vector<int> table;  // source factor element -> target factor element
    friend bool operator==(const Part& a, const Part& b) { return a.source == b.source && a.table == b.table; }
  };
  size_t source_factors = 0;
  std::vector<Part> parts;  // one per target factor

  FElem apply(const FElem& x) const;
  friend bool operator==(const MonomialHom& a, const MonomialHom& b) {
    return a.source_factors == b.source_factors && a.parts == b.parts;
  }
};

// Empty optional if `h` is a homomorphism src -> tgt.
std::optional<std::string> monomial_defect(const ProductGroup& src, const ProductGroup& tgt, const MonomialHom& h);
// The map whose factor t is `table` applied to source factor `source[t]`.
MonomialHom monomial(size_t source_factors, std::vector<MonomialHom::Part> parts);

template <class Hom>
struct BlockComponent {
  size_t source;  // source block
  Hom map;        // source block -> target block
};

struct FiniteCarrier {
  using Object = ProductGroup;
  using Hom = MonomialHom;
  using Element = FElem;

  static Object product(const std::vector<Object>& blocks);
  static Hom identity(const Object& o);
  static Hom trivial(const Object& src, const Object& tgt);
  static Hom compose(const Hom& outer, const Hom& inner);
  static bool equal(const Hom& a, const Hom& b) { return a == b; }
  static Hom assemble(const std::vector<Object>& src_blocks, const std::vector<Object>& tgt_blocks,
                      const std::vector<BlockComponent<Hom>>& comps);
  static Element one(const Object& o) { return FElem(o.factors.size(), 0); }
  static Element mul(const Object& o, const Element& a, const Element& b);
  static Element inv(const Object& o, const Element& a);
  static Element apply(const Hom& h, const Element& x) { return h.apply(x); }
  static Hom conjugation(const Object& o, const Element& g);  // x -> g x g^-1
};

// ---- Lie carrier ------------------------------------------------------------

struct LieCarrier {
  using Object = LiePtr;
  using Hom = QMat;
  using Element = Vec;

  static Object product(const std::vector<Object>& blocks);
  static Hom identity(const Object& o) { return QMat::identity(o->dim()); }
  static Hom trivial(const Object& src, const Object& tgt) { return QMat(tgt->dim(), src->dim()); }
  static Hom compose(const Hom& outer, const Hom& inner) { return outer * inner; }
  static bool equal(const Hom& a, const Hom& b) { return a == b; }
  static Hom assemble(const std::vector<Object>& src_blocks, const std::vector<Object>& tgt_blocks,
                      const std::vector<BlockComponent<Hom>>& comps);
  static Element one(const Object& o) { return Vec(o->dim()); }
  static Element mul(const Object& o, const Element& a, const Element& b) { return group_mul(*o, a, b); }
  static Element inv(const Object&, const Element& a) { return neg(a); }
  static Element apply(const Hom& h, const Element& x) { return h.apply(x); }
  static Hom conjugation(const Object& o, const Element& g) { return adjoint_matrix(*o, g); }
};

// ---- cosimplicial objects ---------------------------------------------------

/// Objects U^0..U^N with cofaces d[n][i]: U^{n-1} -> U^n (n >= 1, 0 <= i <= n) and,
/// unless semi-cosimplicial, codegeneracies s[n][i]: U^{n+1} -> U^n (0 <= i <= n).
template <class C>
struct Cosimplicial {
  using Object = typename C::Object;
  using Hom = typename C::Hom;
  using Element = typename C::Element;

  std::vector<Object> obj;
  std::vector<std::vector<Hom>> d;  // d[0] is empty
  std::vector<std::vector<Hom>> s;  // empty for semi-cosimplicial objects

  int top() const { return static_cast<int>(obj.size()) - 1; }
  bool semi() const { return s.empty(); }
  const Hom& coface(int n, int i) const { return d.at(static_cast<size_t>(n)).at(static_cast<size_t>(i)); }
  const Hom& codegeneracy(int n, int i) const { return s.at(static_cast<size_t>(n)).at(static_cast<size_t>(i)); }

  // U(f) for the injection [m] -> [m + |missing|] avoiding `missing`.
  Hom mono(int m, const std::vector<int>& missing) const {
    Hom h = C::identity(obj.at(static_cast<size_t>(m)));
    int deg = m;
    for (int x : missing) h = C::compose(coface(++deg, x), h);
    return h;
  }
  // U(g) for a surjection g out of [n].
  Hom epi(const SimplexMap& g) const {
    int n = static_cast<int>(g.size()) - 1;
    std::vector<int> r = repeats(g);
    Hom h = C::identity(obj.at(static_cast<size_t>(n)));
    int deg = n;
    for (auto it = r.rbegin(); it != r.rend(); ++it) h = C::compose(codegeneracy(--deg, *it), h);
    return h;
  }
};

using FiniteCosimplicial = Cosimplicial<FiniteCarrier>;
using LieCosimplicial = Cosimplicial<LieCarrier>;

struct IdentityReport {
  bool ok = true;
  std::string failure;
};

template <class C>
IdentityReport check_identities(const Cosimplicial<C>& u) {
  IdentityReport rep;
  auto fail = [&](const std::string& m) {
    if (rep.ok) rep = {false, m};
  };
  int top = u.top();
  auto name = [](const char* a, int x, const char* b, int y, int deg) {
    return std::string(a) + std::to_string(x) + " " + b + std::to_string(y) + " in degree " + std::to_string(deg);
  };
  // d^j d^i = d^i d^{j-1} for i < j.
  for (int n = 1; n + 1 <= top; ++n)
    for (int j = 0; j <= n + 1; ++j)
      for (int i = 0; i < j; ++i)
        if (!C::equal(C::compose(u.coface(n + 1, j), u.coface(n, i)), C::compose(u.coface(n + 1, i), u.coface(n, j - 1))))
          fail("d^" + std::to_string(j) + " d^" + std::to_string(i) + " != d^" + std::to_string(i) + " d^" +
               std::to_string(j - 1) + " from degree " + std::to_string(n - 1));
  if (u.semi()) return rep;
  // s^j s^i = s^i s^{j+1} for i <= j, as maps U^{n+2} -> U^n.
  for (int n = 0; n + 2 <= top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= j; ++i)
        if (!C::equal(C::compose(u.codegeneracy(n, j), u.codegeneracy(n + 1, i)),
                      C::compose(u.codegeneracy(n, i), u.codegeneracy(n + 1, j + 1))))
          fail(name("s^", j, "s^", i, n));
  // s^j d^i as maps U^n -> U^n.
  for (int n = 0; n + 1 <= top; ++n)
    for (int j = 0; j <= n; ++j)
      for (int i = 0; i <= n + 1; ++i) {
        typename C::Hom lhs = C::compose(u.codegeneracy(n, j), u.coface(n + 1, i));
        typename C::Hom rhs;
        if (i == j || i == j + 1) {
          rhs = C::identity(u.obj[static_cast<size_t>(n)]);
        } else if (i < j) {
          rhs = C::compose(u.coface(n, i), u.codegeneracy(n - 1, j - 1));
        } else {
          rhs = C::compose(u.coface(n, i - 1), u.codegeneracy(n - 1, j));
        }
        if (!C::equal(lhs, rhs)) fail(name("s^", j, "d^", i, n));
      }
  return rep;
}

/// Checks that phi[n]: src^n -> tgt^n commute with all structure maps.
template <class C>
IdentityReport check_cosimplicial_map(const Cosimplicial<C>& src, const Cosimplicial<C>& tgt,
                                      const std::vector<typename C::Hom>& phi) {
  if (src.top() != tgt.top() || static_cast<int>(phi.size()) != src.top() + 1)
    return {false, "map has the wrong number of components"};
  for (int n = 1; n <= src.top(); ++n)
    for (int i = 0; i <= n; ++i)
      if (!C::equal(C::compose(phi[static_cast<size_t>(n)], src.coface(n, i)),
                    C::compose(tgt.coface(n, i), phi[static_cast<size_t>(n - 1)])))
        return {false, "does not commute with d^" + std::to_string(i) + " into degree " + std::to_string(n)};
  if (!src.semi() && !tgt.semi())
    for (int n = 0; n < src.top(); ++n)
      for (int i = 0; i <= n; ++i)
        if (!C::equal(C::compose(phi[static_cast<size_t>(n)], src.codegeneracy(n, i)),
                      C::compose(tgt.codegeneracy(n, i), phi[static_cast<size_t>(n + 1)])))
          return {false, "does not commute with s^" + std::to_string(i) + " into degree " + std::to_string(n)};
  return {};
}

/// The cosimplicial object with U^n the product over surjections [n] ->> [k] of X^k.
/// Only the cofaces of X are used. The identities are checked before returning.
template <class C>
Cosimplicial<C> cogenerate(const Cosimplicial<C>& x) {
  int top = x.top();
  Cosimplicial<C> out;
  std::vector<std::vector<SimplexMap>> blocks;
  std::vector<std::map<SimplexMap, size_t>> index;
  std::vector<std::vector<typename C::Object>> block_obj;
  for (int n = 0; n <= top; ++n) {
    blocks.push_back(surjections(n));
    std::map<SimplexMap, size_t> idx;
    std::vector<typename C::Object> objs;
    for (size_t b = 0; b < blocks.back().size(); ++b) {
      idx[blocks.back()[b]] = b;
      objs.push_back(x.obj[static_cast<size_t>(surjection_target(blocks.back()[b]))]);
    }
    index.push_back(std::move(idx));
    block_obj.push_back(objs);
    out.obj.push_back(C::product(objs));
  }
  out.d.resize(static_cast<size_t>(top) + 1);
  for (int n = 1; n <= top; ++n)
    for (int i = 0; i <= n; ++i) {
      std::vector<BlockComponent<typename C::Hom>> comps;
      for (const auto& g : blocks[static_cast<size_t>(n)]) {
        EpiMono em = factor(compose(g, coface_map(n, i)), surjection_target(g));
        comps.push_back({index[static_cast<size_t>(n - 1)].at(em.epi), x.mono(surjection_target(em.epi), em.missing)});
      }
      out.d[static_cast<size_t>(n)].push_back(
          C::assemble(block_obj[static_cast<size_t>(n - 1)], block_obj[static_cast<size_t>(n)], comps));
    }
  for (int n = 0; n < top; ++n) {
    out.s.emplace_back();
    for (int i = 0; i <= n; ++i) {
      std::vector<BlockComponent<typename C::Hom>> comps;
      for (const auto& g : blocks[static_cast<size_t>(n)]) {
        SimplexMap h = compose(g, codegeneracy_map(n, i));
        comps.push_back({index[static_cast<size_t>(n + 1)].at(h), C::identity(x.obj[static_cast<size_t>(surjection_target(h))])});
      }
      out.s.back().push_back(C::assemble(block_obj[static_cast<size_t>(n + 1)], block_obj[static_cast<size_t>(n)], comps));
    }
  }
  IdentityReport rep = check_identities(out);
  if (!rep.ok) throw CosimplicialError("cogeneration produced a non-cosimplicial object: " + rep.failure);
  return out;
}

/// Drops codegeneracies and everything above degree `top`.
template <class C>
Cosimplicial<C> truncate(const Cosimplicial<C>& u, int top, bool keep_codegeneracies = false) {
  Cosimplicial<C> out;
  for (int n = 0; n <= top; ++n) {
    out.obj.push_back(u.obj.at(static_cast<size_t>(n)));
    out.d.push_back(u.d.at(static_cast<size_t>(n)));
  }
  if (keep_codegeneracies && !u.semi())
    for (int n = 0; n < top; ++n) out.s.push_back(u.s.at(static_cast<size_t>(n)));
  return out;
}

// ---- cocycles and twisting --------------------------------------------------

template <class C>
bool is_cocycle(const Cosimplicial<C>& u, const typename C::Element& c) {
  if (u.top() < 2) return true;
  const auto& o2 = u.obj[2];
  return C::apply(u.coface(2, 1), c) == C::mul(o2, C::apply(u.coface(2, 2), c), C::apply(u.coface(2, 0), c));
}

// u0 : u1 -> d^1(u0)^-1 u1 d^0(u0).
template <class C>
typename C::Element act_on_cocycle(const Cosimplicial<C>& u, const typename C::Element& u1, const typename C::Element& u0) {
  const auto& o1 = u.obj[1];
  return C::mul(o1, C::mul(o1, C::inv(o1, C::apply(u.coface(1, 1), u0)), u1), C::apply(u.coface(1, 0), u0));
}

/// Replaces d^0 into degree n by conjugation with d^n ... d^2(beta) after d^0.
template <class C>
Cosimplicial<C> twist(const Cosimplicial<C>& u, const typename C::Element& beta) {
  if (u.top() < 1) throw CosimplicialError("twisting needs degree 1");
  if (!is_cocycle(u, beta)) throw CosimplicialError("twisting element is not a cocycle");
  Cosimplicial<C> out = u;
  typename C::Element b = beta;
  for (int n = 1; n <= u.top(); ++n) {
    if (n >= 2) b = C::apply(u.coface(n, n), b);
    out.d[static_cast<size_t>(n)][0] = C::compose(C::conjugation(u.obj[static_cast<size_t>(n)], b), u.coface(n, 0));
  }
  IdentityReport rep = check_identities(out);
  if (!rep.ok) throw CosimplicialError("twisted object fails the identities: " + rep.failure);
  return out;
}

/// For beta' = d^1(u0)^-1 beta d^0(u0): the isomorphism from the beta'-twist to the
/// beta-twist, conjugation by D_n = d^n ... d^1(u0) in degree n.
template <class C>
std::vector<typename C::Hom> trivial_twist_isomorphism(const Cosimplicial<C>& u, const typename C::Element& u0) {
  std::vector<typename C::Hom> phi;
  typename C::Element dn = u0;
  for (int n = 0; n <= u.top(); ++n) {
    if (n >= 1) dn = C::apply(u.coface(n, n), dn);
    phi.push_back(C::conjugation(u.obj[static_cast<size_t>(n)], dn));
  }
  return phi;
}

// ---- finite cohomotopy ------------------------------------------------------

struct CapExceeded : public CosimplicialError {
  using CosimplicialError::CosimplicialError;
};

/// Solutions x of a(x) c = b(x) e(x) in each target factor, where a, b, e are the
/// factor maps of monomial homomorphisms and c a constant element.
struct FactorEquations {
  const ProductGroup* domain = nullptr;
  const ProductGroup* codomain = nullptr;
  const MonomialHom* a = nullptr;
  const MonomialHom* b = nullptr;
  const MonomialHom* e = nullptr;  // may be null (treated as the trivial map)
  FElem constant;                  // empty means the identity
};
// All solutions (throws CapExceeded beyond `cap`), or the first one when `first_only`.
std::vector<FElem> solve_factor_equations(const FactorEquations& eq, size_t cap, bool first_only = false);

std::vector<FElem> enumerate_elements(const ProductGroup& g, size_t cap);
std::vector<FElem> product_generators(const ProductGroup& g);

std::vector<FElem> pi0_finite(const FiniteCosimplicial& u, size_t cap = 1000000);

struct FinitePi1 {
  std::vector<FElem> cocycles;        // Z^1, sorted
  std::vector<size_t> class_of;       // class index of each cocycle
  std::vector<size_t> representative; // one cocycle index per class
  size_t base_class = 0;              // class of the identity
  size_t classes() const { return representative.size(); }
  size_t index_of(const FElem& z) const;  // position in `cocycles`, throws if absent
};
FinitePi1 pi1_finite(const FiniteCosimplicial& u, size_t cap = 1000000);

// The 1-truncated object U' x U'' => U with d^0, d^1 the two inclusions, padded with a trivial degree 2.
FiniteCosimplicial double_coset_object(const GroupPtr& u, const std::vector<int>& first, const std::vector<int>& second);
// Random 2-truncated semi-cosimplicial finite groups built from library groups.
FiniteCosimplicial random_finite_semi(Rng& rng, size_t max_order);

struct TwistCheck {
  bool ok = true;
  size_t twisted_classes = 0, classes = 0;
  std::string failure;
};
// Right multiplication by beta maps Z^1 of the twist bijectively onto Z^1 and classes onto classes.
TwistCheck check_twist_bijection(const FiniteCosimplicial& u, const FElem& beta, size_t cap = 1000000);

// ---- Lie cohomotopy ---------------------------------------------------------

// Lie algebra of pi^0: the equaliser of d^0 and d^1 on U^0.
std::vector<Vec> pi0_lie(const LieCosimplicial& u);
// Dimensions of H^i of the Moore complex (sum of (-1)^k d^k) for i < top; objects must be abelian.
std::vector<size_t> pi_abelian(const LieCosimplicial& u);
// H^i dimensions of a complex given by its differentials diff[i]: C^i -> C^{i+1}.
std::vector<size_t> complex_cohomology(const std::vector<size_t>& dims, const std::vector<QMat>& diff);
std::vector<QMat> moore_differentials(const LieCosimplicial& u);

/// Decision procedures for pi^1 of a unipotent cosimplicial group.
class LiePi1 {
 public:
  explicit LiePi1(LieCosimplicial u);

  const LieCosimplicial& object() const { return u_; }
  bool is_cocycle(const Vec& c) const;
  bool is_trivial(const Vec& c) const;
  OrbitMatch equivalent(const Vec& c, const Vec& c2) const;
  std::vector<Vec> stabilizer(const Vec& c) const;
  // dim T_c Z^1 minus the dimension of the orbit through c.
  size_t tangent_dimension(const Vec& c) const;
  Vec act(const Vec& c, const Vec& u0) const { return engine_.act(c, u0); }
  const OrbitEngine& engine() const { return engine_; }

 private:
  void require_cocycle(const Vec& c) const;
  LieCosimplicial u_;
  OrbitEngine engine_;
};

// A random element of Z^1, built one lower-central-series layer of U^1 at a time with a
// random point of each affine solution space; empty if `attempts` restarts all get obstructed.
std::optional<Vec> random_cocycle(const LieCosimplicial& u, Rng& rng, int attempts = 20);

// Cochain complex C^0 -> ... -> C^N placed in a semi-cosimplicial vector space with d^n = (-1)^n diff, other cofaces 0.
LieCosimplicial embed_complex(const std::vector<size_t>& dims, const std::vector<QMat>& diff);
LieCosimplicial direct_sum(const std::vector<LieCosimplicial>& parts);
// X^0 => X^1 with the given cofaces, padded with zero objects up to degree `top`.
LieCosimplicial two_term_pattern(const LiePtr& x0, const LiePtr& x1, const QMat& d0, const QMat& d1, int top);
// Conjugates every object by an invertible matrix.
LieCosimplicial change_basis(const LieCosimplicial& u, const std::vector<QMat>& basis);
// Random semi-cosimplicial rational vector space with degrees 0..top.
LieCosimplicial random_semi_vector(Rng& rng, int top);

// ---- bi-semi-cosimplicial vector spaces -------------------------------------

/// A^{p,q} for p, q <= top with horizontal cofaces h[p][q][i]: A^{p-1,q} -> A^{p,q} and
/// vertical cofaces v[p][q][i]: A^{p,q-1} -> A^{p,q}, commuting with each other.
struct BiSemi {
  int top = 0;
  std::vector<std::vector<size_t>> dim;
  std::vector<std::vector<std::vector<QMat>>> h, v;
};
IdentityReport check_bisemi(const BiSemi& a);
// Tensor product of two semi-cosimplicial vector spaces.
BiSemi tensor_bisemi(const LieCosimplicial& x, const LieCosimplicial& y);
BiSemi direct_sum(const BiSemi& a, const BiSemi& b);
BiSemi random_bisemi(Rng& rng, int top);
// The diagonal of the cosimplicial object cogenerated in both directions.
LieCosimplicial cogenerated_diagonal(const BiSemi& a);
// H^j of the total complex with D = horizontal Moore + (-1)^p vertical Moore, j < top.
std::vector<size_t> total_cohomology(const BiSemi& a);

struct EilenbergZilberReport {
  std::vector<size_t> diagonal, total;
  bool ok = false;
};
EilenbergZilberReport eilenberg_zilber_oracle(const BiSemi& a, int degrees);

}  // namespace cohw
