#include "cohw/finite_group.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>

namespace cohw {

std::string cycle_label(const Perm& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    out += "(";
    size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += " ";
      out += std::to_string(x + 1);
      first = false;
      x = static_cast<size_t>(p[x]);
    }
    out += ")";
  }
  return out.empty() ? "e" : out;
}

GroupPtr FiniteGroup::from_table(std::vector<std::string> labels, const std::vector<std::vector<int>>& table) {
  size_t n = labels.size();
  if (n == 0) throw GroupError("group table is empty");
  if (table.size() != n) throw GroupError("group table has " + std::to_string(table.size()) + " rows, expected " + std::to_string(n));
  for (size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw GroupError("group table row " + std::to_string(a + 1) + " has wrong length");
    for (int v : table[a])
      if (v < 0 || static_cast<size_t>(v) >= n) throw GroupError("group table entry out of range in row " + std::to_string(a + 1));
  }
  auto m = [&](size_t a, size_t b) { return static_cast<size_t>(table[a][b]); };
  size_t e = n;
  for (size_t a = 0; a < n && e == n; ++a) {
    bool ok = true;
    for (size_t b = 0; b < n && ok; ++b) ok = m(a, b) == b && m(b, a) == b;
    if (ok) e = a;
  }
  if (e == n) throw GroupError("group table has no identity");
  for (size_t a = 0; a < n; ++a) {
    bool found = false;
    for (size_t b = 0; b < n && !found; ++b) found = m(a, b) == e && m(b, a) == e;
    if (!found) throw GroupError("element " + labels[a] + " has no inverse");
  }
  // Generators of the magma, then Light's test on them.
  std::vector<bool> reach(n, false);
  reach[e] = true;
  std::vector<size_t> gens;
  std::vector<size_t> reached{e};
  for (size_t cand = 0; cand < n; ++cand) {
    if (reach[cand]) continue;
    gens.push_back(cand);
    std::queue<size_t> q;
    for (size_t x : reached) q.push(x);
    while (!q.empty()) {
      size_t x = q.front();
      q.pop();
      for (size_t s : gens) {
        size_t y = m(x, s);
        if (!reach[y]) {
          reach[y] = true;
          reached.push_back(y);
          q.push(y);
        }
      }
    }
  }
  for (size_t s : gens)
    for (size_t x = 0; x < n; ++x)
      for (size_t y = 0; y < n; ++y)
        if (m(m(x, s), y) != m(x, m(s, y)))
          throw GroupError("group table is not associative: (" + labels[x] + "*" + labels[s] + ")*" + labels[y]);

  // Reorder so the identity is element 0.
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::swap(order[0], order[e]);
  std::vector<size_t> pos(n);
  for (size_t i = 0; i < n; ++i) pos[order[i]] = i;
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->labels_.resize(n);
  g->table_.resize(n * n);
  for (size_t i = 0; i < n; ++i) {
    g->labels_[i] = labels[order[i]];
    for (size_t j = 0; j < n; ++j) g->table_[i * n + j] = static_cast<int>(pos[m(order[i], order[j])]);
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::from_permutations(const std::vector<Perm>& generators, size_t points) {
  Perm id(points);
  std::iota(id.begin(), id.end(), 0);
  for (const auto& p : generators) {
    Perm s = p;
    std::sort(s.begin(), s.end());
    if (p.size() != points || s != id) throw GroupError("generator is not a permutation of " + std::to_string(points) + " points");
  }
  std::map<Perm, int> index{{id, 0}};
  std::vector<Perm> elems{id};
  for (size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : generators) {
      Perm c(points);
      for (size_t x = 0; x < points; ++x) c[x] = elems[i][static_cast<size_t>(g[x])];
      if (index.emplace(c, static_cast<int>(elems.size())).second) elems.push_back(c);
    }
  size_t n = elems.size();
  auto g = std::shared_ptr<FiniteGroup>(new FiniteGroup());
  g->table_.resize(n * n);
  for (size_t a = 0; a < n; ++a) {
    g->labels_.push_back(cycle_label(elems[a]));
    for (size_t b = 0; b < n; ++b) {
      Perm c(points);
      for (size_t x = 0; x < points; ++x) c[x] = elems[a][static_cast<size_t>(elems[b][x])];
      g->table_[a * n + b] = index.at(c);
    }
  }
  g->finish();
  return g;
}

GroupPtr FiniteGroup::trivial() { return from_table({"e"}, {{0}}); }

void FiniteGroup::finish() {
  size_t n = order();
  inverse_.assign(n, 0);
  for (size_t a = 0; a < n; ++a)
    for (size_t b = 0; b < n; ++b)
      if (table_[a * n + b] == 0) inverse_[a] = static_cast<int>(b);
  std::vector<int> span{0};
  for (size_t c = 1; c < n; ++c) {
    if (std::binary_search(span.begin(), span.end(), static_cast<int>(c))) continue;
    generators_.push_back(static_cast<int>(c));
    span = generated_subgroup(*this, generators_);
  }
}

int FiniteGroup::power(int a, long k) const {
  if (k < 0) return power(inv(a), -k);
  int r = 0;
  for (long i = 0; i < k; ++i) r = mul(r, a);
  return r;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::index_of(const std::string& label) const {
  for (size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<int>(i);
  return -1;
}

bool FiniteGroup::is_abelian() const {
  for (int a : generators_)
    for (int b : generators_)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

std::vector<int> FiniteGroup::center() const {
  std::vector<int> out;
  for (size_t x = 0; x < order(); ++x) {
    bool central = true;
    for (int g : generators_) central = central && mul(g, static_cast<int>(x)) == mul(static_cast<int>(x), g);
    if (central) out.push_back(static_cast<int>(x));
  }
  return out;
}

// ---- maps -------------------------------------------------------------------

bool is_homomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& map) {
  if (map.size() != src.order()) return false;
  for (int v : map)
    if (v < 0 || static_cast<size_t>(v) >= tgt.order()) return false;
  for (size_t x = 0; x < src.order(); ++x)
    for (int s : src.generators())
      if (map[static_cast<size_t>(src.mul(static_cast<int>(x), s))] != tgt.mul(map[x], map[static_cast<size_t>(s)])) return false;
  return map[0] == 0;
}

std::vector<int> extend_homomorphism(const FiniteGroup& src, const FiniteGroup& tgt, const std::vector<int>& images) {
  const auto& gens = src.generators();
  if (images.size() != gens.size()) throw GroupError("wrong number of generator images");
  std::vector<int> map(src.order(), -1);
  map[0] = 0;
  std::queue<int> q;
  q.push(0);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (size_t i = 0; i < gens.size(); ++i) {
      int y = src.mul(x, gens[i]);
      int v = tgt.mul(map[static_cast<size_t>(x)], images[i]);
      if (map[static_cast<size_t>(y)] < 0) {
        map[static_cast<size_t>(y)] = v;
        q.push(y);
      } else if (map[static_cast<size_t>(y)] != v) {
        return {};
      }
    }
  }
  return map;
}

namespace {

std::vector<std::vector<int>> search_homs(const FiniteGroup& src, const FiniteGroup& tgt, size_t limit, bool bijective) {
  const auto& gens = src.generators();
  std::vector<std::vector<int>> candidates(gens.size());
  for (size_t i = 0; i < gens.size(); ++i) {
    int o = src.element_order(gens[i]);
    for (size_t y = 0; y < tgt.order(); ++y) {
      int oy = tgt.element_order(static_cast<int>(y));
      if (bijective ? oy == o : o % oy == 0) candidates[i].push_back(static_cast<int>(y));
    }
  }
  std::vector<std::vector<int>> out;
  std::vector<int> images(gens.size());
  size_t budget = 4000000;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (out.size() >= limit || budget == 0) return;
    if (i == gens.size()) {
      --budget;
      auto m = extend_homomorphism(src, tgt, images);
      if (m.empty()) return;
      if (bijective) {
        if (src.order() != tgt.order()) return;
        std::vector<bool> hit(tgt.order(), false);
        for (int v : m) hit[static_cast<size_t>(v)] = true;
        if (std::find(hit.begin(), hit.end(), false) != hit.end()) return;
      }
      out.push_back(std::move(m));
      return;
    }
    for (int c : candidates[i]) {
      images[i] = c;
      rec(i + 1);
      if (out.size() >= limit || budget == 0) return;
    }
  };
  rec(0);
  return out;
}

}  // namespace

std::vector<std::vector<int>> homomorphisms(const FiniteGroup& src, const FiniteGroup& tgt, size_t limit) {
  return search_homs(src, tgt, limit, false);
}

std::vector<std::vector<int>> automorphisms(const FiniteGroup& g, size_t limit) { return search_homs(g, g, limit, true); }

std::vector<int> compose_maps(const std::vector<int>& outer, const std::vector<int>& inner) {
  std::vector<int> out(inner.size());
  for (size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<size_t>(inner[i])];
  return out;
}

// ---- subgroups and quotients ------------------------------------------------

std::vector<int> generated_subgroup(const FiniteGroup& g, const std::vector<int>& gens) {
  std::vector<bool> in(g.order(), false);
  std::vector<int> elems{0};
  in[0] = true;
  for (size_t i = 0; i < elems.size(); ++i)
    for (int s : gens) {
      int y = g.mul(elems[i], s);
      if (!in[static_cast<size_t>(y)]) {
        in[static_cast<size_t>(y)] = true;
        elems.push_back(y);
      }
    }
  std::sort(elems.begin(), elems.end());
  return elems;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements) {
  std::vector<int> s = elements;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty() || s[0] != 0 || static_cast<size_t>(s.back()) >= g.order()) return false;
  for (int a : s)
    for (int b : s)
      if (!std::binary_search(s.begin(), s.end(), g.mul(a, g.inv(b)))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& elements) {
  if (!is_subgroup(g, elements)) return false;
  std::vector<int> s = elements;
  std::sort(s.begin(), s.end());
  for (int x : s)
    for (int t : g.generators())
      if (!std::binary_search(s.begin(), s.end(), g.conj(t, x))) return false;
  return true;
}

SubgroupData make_subgroup(const GroupPtr& g, const std::vector<int>& elements) {
  if (!is_subgroup(*g, elements)) throw GroupError("elements do not form a subgroup");
  std::vector<int> s = elements;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  std::map<int, int> pos;
  for (size_t i = 0; i < s.size(); ++i) pos[s[i]] = static_cast<int>(i);
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(s.size(), std::vector<int>(s.size()));
  for (size_t i = 0; i < s.size(); ++i) {
    labels.push_back(g->label(s[i]));
    for (size_t j = 0; j < s.size(); ++j) table[i][j] = pos.at(g->mul(s[i], s[j]));
  }
  return {FiniteGroup::from_table(labels, table), s};
}

QuotientData make_quotient(const GroupPtr& g, const std::vector<int>& normal) {
  if (!is_normal(*g, normal)) throw GroupError("subgroup is not normal");
  size_t n = g->order();
  std::vector<int> proj(n, -1);
  std::vector<int> reps;
  for (size_t x = 0; x < n; ++x) {
    if (proj[x] >= 0) continue;
    int c = static_cast<int>(reps.size());
    reps.push_back(static_cast<int>(x));
    for (int k : normal) proj[static_cast<size_t>(g->mul(static_cast<int>(x), k))] = c;
  }
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(reps.size(), std::vector<int>(reps.size()));
  for (size_t i = 0; i < reps.size(); ++i) {
    labels.push_back("[" + g->label(reps[i]) + "]");
    for (size_t j = 0; j < reps.size(); ++j) table[i][j] = proj[static_cast<size_t>(g->mul(reps[i], reps[j]))];
  }
  return {FiniteGroup::from_table(labels, table), proj};
}

ProductData direct_product(const GroupPtr& a, const GroupPtr& b) {
  size_t na = a->order(), nb = b->order(), n = na * nb;
  std::vector<std::string> labels(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (size_t x = 0; x < n; ++x) {
    labels[x] = "(" + a->label(static_cast<int>(x / nb)) + "," + b->label(static_cast<int>(x % nb)) + ")";
    for (size_t y = 0; y < n; ++y) {
      size_t l = static_cast<size_t>(a->mul(static_cast<int>(x / nb), static_cast<int>(y / nb)));
      size_t r = static_cast<size_t>(b->mul(static_cast<int>(x % nb), static_cast<int>(y % nb)));
      table[x][y] = static_cast<int>(l * nb + r);
    }
  }
  ProductData d;
  d.group = FiniteGroup::from_table(labels, table);
  for (size_t x = 0; x < na; ++x) d.left_inclusion.push_back(static_cast<int>(x * nb));
  for (size_t y = 0; y < nb; ++y) d.right_inclusion.push_back(static_cast<int>(y));
  for (size_t x = 0; x < n; ++x) {
    d.left_projection.push_back(static_cast<int>(x / nb));
    d.right_projection.push_back(static_cast<int>(x % nb));
  }
  return d;
}

size_t count_double_cosets(const FiniteGroup& g, const std::vector<int>& h, const std::vector<int>& k) {
  std::vector<int> cls(g.order(), -1);
  size_t count = 0;
  for (size_t x = 0; x < g.order(); ++x) {
    if (cls[x] >= 0) continue;
    for (int a : k)
      for (int b : h) cls[static_cast<size_t>(g.mul(g.mul(a, static_cast<int>(x)), b))] = static_cast<int>(count);
    ++count;
  }
  return count;
}

std::vector<int> intersect_sorted(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

// ---- library ----------------------------------------------------------------

GroupPtr cyclic_group(size_t n) {
  std::vector<std::string> labels;
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (size_t a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "e" : "a^" + std::to_string(a));
    for (size_t b = 0; b < n; ++b) table[a][b] = static_cast<int>((a + b) % n);
  }
  return FiniteGroup::from_table(labels, table);
}

GroupPtr dihedral_group(size_t n) {
  if (n < 3) throw GroupError("dihedral group needs n >= 3");
  Perm r(n), s(n);
  for (size_t i = 0; i < n; ++i) {
    r[i] = static_cast<int>((i + 1) % n);
    s[i] = static_cast<int>((n - i) % n);
  }
  return FiniteGroup::from_permutations({r, s}, n);
}

GroupPtr symmetric_group(size_t n) {
  if (n <= 1) return FiniteGroup::trivial();
  Perm t(n), c(n);
  std::iota(t.begin(), t.end(), 0);
  std::swap(t[0], t[1]);
  for (size_t i = 0; i < n; ++i) c[i] = static_cast<int>((i + 1) % n);
  return FiniteGroup::from_permutations({t, c}, n);
}

GroupPtr alternating_group(size_t n) {
  if (n <= 2) return FiniteGroup::trivial();
  std::vector<Perm> gens;
  for (size_t i = 0; i + 2 < n; ++i) {
    Perm c(n);
    std::iota(c.begin(), c.end(), 0);
    c[i] = static_cast<int>(i + 1);
    c[i + 1] = static_cast<int>(i + 2);
    c[i + 2] = static_cast<int>(i);
    gens.push_back(c);
  }
  return FiniteGroup::from_permutations(gens, n);
}

GroupPtr dicyclic_group(size_t n) {
  // a^k x^e with a of order 2n, x^2 = a^n, x a x^-1 = a^-1.
  size_t m = 2 * n, order = 2 * m;
  auto idx = [&](size_t k, size_t e) { return static_cast<int>(e * m + k % m); };
  std::vector<std::string> labels(order);
  std::vector<std::vector<int>> table(order, std::vector<int>(order));
  for (size_t e1 = 0; e1 < 2; ++e1)
    for (size_t k1 = 0; k1 < m; ++k1) {
      size_t x = e1 * m + k1;
      labels[x] = (k1 == 0 && e1 == 0) ? "e" : (k1 ? "a^" + std::to_string(k1) : "") + (e1 ? "x" : "");
      for (size_t e2 = 0; e2 < 2; ++e2)
        for (size_t k2 = 0; k2 < m; ++k2) {
          size_t y = e2 * m + k2;
          if (e1 == 0) table[x][y] = idx(k1 + k2, e2);
          else if (e2 == 0) table[x][y] = idx(k1 + m - k2, 1);
          else table[x][y] = idx(k1 + m - k2 + n, 0);
        }
    }
  return FiniteGroup::from_table(labels, table);
}

GroupPtr quaternion_group() { return dicyclic_group(2); }

GroupPtr elementary_abelian(size_t p, size_t rank) {
  size_t n = 1;
  for (size_t i = 0; i < rank; ++i) n *= p;
  std::vector<std::string> labels(n);
  std::vector<std::vector<int>> table(n, std::vector<int>(n));
  for (size_t a = 0; a < n; ++a) {
    std::string l;
    size_t t = a;
    for (size_t i = 0; i < rank; ++i, t /= p) l += std::to_string(t % p);
    labels[a] = l;
    for (size_t b = 0; b < n; ++b) {
      size_t r = 0, pw = 1, x = a, y = b;
      for (size_t i = 0; i < rank; ++i, x /= p, y /= p, pw *= p) r += ((x % p + y % p) % p) * pw;
      table[a][b] = static_cast<int>(r);
    }
  }
  return FiniteGroup::from_table(labels, table);
}

std::vector<NamedGroup> small_groups(size_t max_order) {
  std::vector<NamedGroup> out;
  auto add = [&](const std::string& name, size_t order, const std::function<GroupPtr()>& make) {
    if (order <= max_order) out.push_back({name, make()});
  };
  for (size_t n = 1; n <= 12; ++n) add("C" + std::to_string(n), n, [n] { return cyclic_group(n); });
  add("C2^2", 4, [] { return elementary_abelian(2, 2); });
  add("C2^3", 8, [] { return elementary_abelian(2, 3); });
  add("C3^2", 9, [] { return elementary_abelian(3, 2); });
  add("S3", 6, [] { return symmetric_group(3); });
  add("D4", 8, [] { return dihedral_group(4); });
  add("Q8", 8, [] { return quaternion_group(); });
  add("D5", 10, [] { return dihedral_group(5); });
  add("A4", 12, [] { return alternating_group(4); });
  add("D6", 12, [] { return dihedral_group(6); });
  add("Dic3", 12, [] { return dicyclic_group(3); });
  add("C2xC6", 12, [] { return direct_product(cyclic_group(2), cyclic_group(6)).group; });
  add("C16", 16, [] { return cyclic_group(16); });
  add("C2xD4", 16, [] { return direct_product(cyclic_group(2), dihedral_group(4)).group; });
  add("C2xQ8", 16, [] { return direct_product(cyclic_group(2), quaternion_group()).group; });
  add("C4xC4", 16, [] { return direct_product(cyclic_group(4), cyclic_group(4)).group; });
  add("D8", 16, [] { return dihedral_group(8); });
  add("C3xS3", 18, [] { return direct_product(cyclic_group(3), symmetric_group(3)).group; });
  add("D9", 18, [] { return dihedral_group(9); });
  add("S4", 24, [] { return symmetric_group(4); });
  add("C2xA4", 24, [] { return direct_product(cyclic_group(2), alternating_group(4)).group; });
  add("C4xS3", 24, [] { return direct_product(cyclic_group(4), symmetric_group(3)).group; });
  add("D12", 24, [] { return dihedral_group(12); });
  add("Dic6", 24, [] { return dicyclic_group(6); });
  add("C3xQ8", 24, [] { return direct_product(cyclic_group(3), quaternion_group()).group; });
  add("C2xC2xS3", 24, [] { return direct_product(elementary_abelian(2, 2), symmetric_group(3)).group; });
  add("C4xD4", 32, [] { return direct_product(cyclic_group(4), dihedral_group(4)).group; });
  add("Q8xC4", 32, [] { return direct_product(quaternion_group(), cyclic_group(4)).group; });
  add("S3xS3", 36, [] { return direct_product(symmetric_group(3), symmetric_group(3)).group; });
  add("C2xS4", 48, [] { return direct_product(cyclic_group(2), symmetric_group(4)).group; });
  add("D24", 48, [] { return dihedral_group(24); });
  add("Q8xS3", 48, [] { return direct_product(quaternion_group(), symmetric_group(3)).group; });
  add("C4xQ8xC2", 64, [] { return direct_product(direct_product(cyclic_group(4), quaternion_group()).group, cyclic_group(2)).group; });
  add("D4xC2xC4", 64, [] { return direct_product(dihedral_group(4), direct_product(cyclic_group(2), cyclic_group(4)).group).group; });
  return out;
}

}  // namespace cohw
