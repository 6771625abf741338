#include "cohw/exact_sequence.hpp"

#include <algorithm>
#include <set>

namespace cohw {

const char* node_kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::Abelian: return "abelian group";
    case NodeKind::Group: return "group";
    case NodeKind::PointedSet: return "pointed set";
  }
  return "?";
}

bool MixedExactSequence::exact() const {
  return std::all_of(clauses.begin(), clauses.end(), [](const ClauseResult& c) { return c.ok; });
}

std::string MixedExactSequence::render() const {
  std::string out = starts_with_one ? "1 -> " : "";
  for (size_t r = 0; r < nodes.size(); ++r) {
    out += nodes[r].name;
    if (r + 1 == nodes.size()) break;
    if (static_cast<int>(r) == j) out += " -z-> ";
    else if (static_cast<int>(r) == k) out += " ~> ";
    else out += " -> ";
  }
  if (ends_with_one) out += " -> 1";
  return out;
}

namespace {

using Node = FiniteSequence::Node;

int mul(const Node& n, int a, int b) { return n.table[static_cast<size_t>(a) * n.size + static_cast<size_t>(b)]; }

std::set<int> image_of(const std::vector<int>& map) { return {map.begin(), map.end()}; }

std::set<int> fibre(const std::vector<int>& map, int value) {
  std::set<int> out;
  for (size_t x = 0; x < map.size(); ++x)
    if (map[x] == value) out.insert(static_cast<int>(x));
  return out;
}

std::string show(const std::set<int>& s) {
  std::string out = "{";
  size_t shown = 0;
  for (int x : s) {
    if (shown++) out += ",";
    if (shown > 8) {
      out += "...";
      break;
    }
    out += std::to_string(x);
  }
  return out + "}";
}

}  // namespace

std::vector<ClauseResult> verify_finite(const FiniteSequence& s) {
  std::vector<ClauseResult> out;
  auto add = [&](std::string clause, bool ok, std::string detail = {}) {
    out.push_back({std::move(clause), ok, false, std::move(detail)});
  };
  const int last = static_cast<int>(s.nodes.size()) - 1;
  bool shape = s.j < s.k && s.k + 1 <= last && s.maps.size() == s.nodes.size() - 1;
  for (size_t r = 0; shape && r < s.maps.size(); ++r) {
    shape = s.maps[r].size() == s.nodes[r].size;
    for (int v : s.maps[r]) shape = shape && v >= 0 && static_cast<size_t>(v) < s.nodes[r + 1].size;
  }
  for (int r = 0; shape && r <= s.k; ++r) shape = s.nodes[static_cast<size_t>(r)].table.size() == s.nodes[static_cast<size_t>(r)].size * s.nodes[static_cast<size_t>(r)].size;
  if (shape) {
    const Node& acted = s.nodes[static_cast<size_t>(s.k) + 1];
    shape = s.action.size() == acted.size;
    for (const auto& row : s.action) shape = shape && row.size() == s.nodes[static_cast<size_t>(s.k)].size;
  }
  add("shape", shape, shape ? "" : "node, map or action sizes inconsistent");
  if (!shape) return out;

  for (int r = 0; r <= s.k; ++r) {
    const Node& n = s.nodes[static_cast<size_t>(r)];
    bool ok = true;
    for (size_t a = 0; a < n.size && ok; ++a) ok = mul(n, 0, static_cast<int>(a)) == static_cast<int>(a) && mul(n, static_cast<int>(a), 0) == static_cast<int>(a);
    add(n.name + " has identity 0", ok);
  }
  for (int r = 0; r < s.k; ++r) {
    const Node &src = s.nodes[static_cast<size_t>(r)], &tgt = s.nodes[static_cast<size_t>(r) + 1];
    const auto& f = s.maps[static_cast<size_t>(r)];
    bool ok = true;
    std::string detail;
    for (size_t a = 0; a < src.size && ok; ++a)
      for (size_t b = 0; b < src.size && ok; ++b)
        if (f[static_cast<size_t>(mul(src, static_cast<int>(a), static_cast<int>(b)))] != mul(tgt, f[a], f[b])) {
          ok = false;
          detail = "fails on (" + std::to_string(a) + "," + std::to_string(b) + ")";
        }
    add(src.name + " -> " + tgt.name + " is a homomorphism", ok, detail);
  }
  for (int r = 0; r <= s.j; ++r) {
    const Node& n = s.nodes[static_cast<size_t>(r)];
    bool ok = true;
    for (size_t a = 0; a < n.size && ok; ++a)
      for (size_t b = 0; b < n.size && ok; ++b) ok = mul(n, static_cast<int>(a), static_cast<int>(b)) == mul(n, static_cast<int>(b), static_cast<int>(a));
    add(n.name + " is abelian", ok);
  }
  if (s.j >= 0) {
    const Node& tgt = s.nodes[static_cast<size_t>(s.j) + 1];
    bool ok = true;
    for (int z : image_of(s.maps[static_cast<size_t>(s.j)]))
      for (size_t b = 0; b < tgt.size && ok; ++b) ok = mul(tgt, z, static_cast<int>(b)) == mul(tgt, static_cast<int>(b), z);
    add("image of " + s.nodes[static_cast<size_t>(s.j)].name + " is central in " + tgt.name, ok);
  }
  if (s.starts_with_one) {
    auto f = fibre(s.maps[0], 0);
    add("exact at " + s.nodes[0].name, f == std::set<int>{0}, "kernel " + show(f));
  }
  for (int r = 1; r < s.k; ++r) {
    auto ker = fibre(s.maps[static_cast<size_t>(r)], 0), im = image_of(s.maps[static_cast<size_t>(r) - 1]);
    add("exact at " + s.nodes[static_cast<size_t>(r)].name, ker == im, "kernel " + show(ker) + " image " + show(im));
  }

  // The action of node k on node k+1.
  const Node& g = s.nodes[static_cast<size_t>(s.k)];
  const Node& x = s.nodes[static_cast<size_t>(s.k) + 1];
  {
    bool ok = true;
    std::string detail;
    for (size_t a = 0; a < x.size && ok; ++a) {
      if (s.action[a][0] != static_cast<int>(a)) {
        ok = false;
        detail = "identity moves " + std::to_string(a);
      }
      for (size_t p = 0; p < g.size && ok; ++p)
        for (size_t q = 0; q < g.size && ok; ++q)
          if (s.action[static_cast<size_t>(s.action[a][p])][q] != s.action[a][static_cast<size_t>(mul(g, static_cast<int>(p), static_cast<int>(q)))]) {
            ok = false;
            detail = "(x.g).h != x.(gh) at x=" + std::to_string(a);
          }
    }
    add(g.name + " acts on " + x.name + " from the right", ok, detail);
    bool orbit_map = true;
    for (size_t p = 0; p < g.size; ++p) orbit_map = orbit_map && s.maps[static_cast<size_t>(s.k)][p] == s.action[0][p];
    add(g.name + " -> " + x.name + " is the orbit map of the basepoint", orbit_map);
  }
  {
    std::set<int> stab;
    for (size_t p = 0; p < g.size; ++p)
      if (s.action[0][p] == 0) stab.insert(static_cast<int>(p));
    std::set<int> im = s.k == 0 ? std::set<int>{0} : image_of(s.maps[static_cast<size_t>(s.k) - 1]);
    add("stabiliser of the basepoint of " + x.name + " = image in " + g.name, stab == im,
        "stabiliser " + show(stab) + " image " + show(im));
  }
  if (s.k + 2 <= last) {
    // Orbits of node k on node k+1 against fibres of the next map.
    std::vector<int> orbit(x.size, -1);
    int count = 0;
    for (size_t a = 0; a < x.size; ++a) {
      if (orbit[a] >= 0) continue;
      for (size_t p = 0; p < g.size; ++p) orbit[static_cast<size_t>(s.action[a][p])] = count;
      ++count;
    }
    const auto& f = s.maps[static_cast<size_t>(s.k) + 1];
    bool ok = true;
    std::string detail;
    for (size_t a = 0; a < x.size && ok; ++a)
      for (size_t b = 0; b < x.size && ok; ++b)
        if ((orbit[a] == orbit[b]) != (f[a] == f[b])) {
          ok = false;
          detail = "elements " + std::to_string(a) + " and " + std::to_string(b);
        }
    add("orbits on " + x.name + " = fibres of " + x.name + " -> " + s.nodes[static_cast<size_t>(s.k) + 2].name, ok, detail);
  }
  for (int r = s.k + 1; r < last; ++r) {
    bool ok = s.maps[static_cast<size_t>(r)][0] == 0;
    add(s.nodes[static_cast<size_t>(r)].name + " -> " + s.nodes[static_cast<size_t>(r) + 1].name + " preserves basepoints", ok);
  }
  for (int r = s.k + 2; r < last; ++r) {
    auto fib = fibre(s.maps[static_cast<size_t>(r)], 0), im = image_of(s.maps[static_cast<size_t>(r) - 1]);
    add("exact at " + s.nodes[static_cast<size_t>(r)].name, fib == im, "fibre " + show(fib) + " image " + show(im));
  }
  if (s.ends_with_one && !s.nodes.back().partial) {
    auto im = image_of(s.maps.back());
    add("exact at " + s.nodes.back().name + " (final 1)", im.size() == s.nodes.back().size,
        std::to_string(im.size()) + " of " + std::to_string(s.nodes.back().size) + " hit");
  }
  return out;
}

MixedExactSequence summarize(const FiniteSequence& s) {
  MixedExactSequence m;
  for (const auto& n : s.nodes) m.nodes.push_back({n.name, n.kind, (n.partial ? "image " : "") + std::to_string(n.size)});
  m.j = s.j;
  m.k = s.k;
  m.starts_with_one = s.starts_with_one;
  m.ends_with_one = s.ends_with_one;
  m.clauses = verify_finite(s);
  return m;
}

}  // namespace cohw
