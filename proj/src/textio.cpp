#include "cohw/textio.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace cohw {

InputError::InputError(size_t line, size_t column, const std::string& message)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      message_(message) {}

const std::vector<std::string>& section_kinds() {
  static const std::vector<std::string> kinds = {"matrix", "lie", "group", "action", "double_coset", "phin", "mhs", "cosimplicial"};
  return kinds;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

bool is_name(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

// A piece of an entry value with its 1-based column.
struct Token {
  std::string text;
  size_t line = 0, column = 0;
  [[noreturn]] void fail(const std::string& message) const { throw InputError(line, column, message); }
};

Token whole_value(const Entry& e) { return {e.value, e.line, e.value_column}; }

// Splits at `sep` outside brackets and parentheses; `sep == ' '` splits on whitespace.
std::vector<Token> split(const Token& t, char sep) {
  std::vector<Token> out;
  int depth = 0;
  size_t start = 0;
  auto flush = [&](size_t end) {
    size_t a = start, b = end;
    while (a < b && is_space(t.text[a])) ++a;
    while (b > a && is_space(t.text[b - 1])) --b;
    if (a < b || sep != ' ') out.push_back({t.text.substr(a, b - a), t.line, t.column + a});
  };
  for (size_t k = 0; k < t.text.size(); ++k) {
    char c = t.text[k];
    if (c == '[' || c == '(') ++depth;
    if (c == ']' || c == ')') --depth;
    bool at_sep = sep == ' ' ? is_space(c) : c == sep;
    if (depth == 0 && at_sep) {
      flush(k);
      start = k + 1;
    }
  }
  flush(t.text.size());
  if (sep == ' ') {
    out.erase(std::remove_if(out.begin(), out.end(), [](const Token& x) { return x.text.empty(); }), out.end());
  } else if (out.size() == 1 && out[0].text.empty()) {
    out.clear();
  }
  for (const auto& x : out)
    if (x.text.empty()) x.fail("empty item in list");
  return out;
}

Token inner(const Token& t, char open, char close) {
  if (t.text.size() < 2 || t.text.front() != open || t.text.back() != close)
    t.fail(std::string("expected ") + open + "..." + close);
  return {t.text.substr(1, t.text.size() - 2), t.line, t.column + 1};
}

Rational rational_token(const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const MathError& e) {
    t.fail(e.what());
  }
}

Gaussian gaussian_token(const Token& t) {
  try {
    return parse_gaussian(t.text);
  } catch (const MathError& e) {
    t.fail(e.what());
  }
}

long integer_token(const Token& t) {
  std::string s = t.text;
  size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (k == s.size() || !std::all_of(s.begin() + static_cast<long>(k), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }) ||
      s.size() > 9)
    t.fail("expected an integer, found '" + s + "'");
  return std::stol(s);
}

// ---- typed values ---------------------------------------------------------------

QMat matrix_literal(const Token& t) {
  std::vector<Token> rows = split(inner(t, '[', ']'), ';');
  if (rows.empty()) t.fail("empty matrix");
  std::vector<std::vector<Rational>> data;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& x : split(r, ' ')) row.push_back(rational_token(x));
    if (!data.empty() && row.size() != data[0].size()) r.fail("row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(data[0].size()));
    data.push_back(std::move(row));
  }
  QMat m(data.size(), data[0].size());
  for (size_t i = 0; i < data.size(); ++i)
    for (size_t j = 0; j < data[i].size(); ++j) m(i, j) = data[i][j];
  return m;
}

size_t label_index(const Token& t, const std::vector<std::string>& labels) {
  for (size_t k = 0; k < labels.size(); ++k)
    if (labels[k] == t.text) return k;
  if (!t.text.empty() && std::all_of(t.text.begin(), t.text.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    long k = integer_token(t);
    if (static_cast<size_t>(k) < labels.size()) return static_cast<size_t>(k);
    t.fail("basis index " + t.text + " out of range for dimension " + std::to_string(labels.size()));
  }
  t.fail("unknown basis element '" + t.text + "'");
}

template <class T>
VecT<T> vector_token(const Token& t, const std::vector<std::string>& labels, const std::function<T(const Token&)>& scalar) {
  size_t n = labels.size();
  if (t.text.front() != '[') return unit_vec<T>(n, label_index(t, labels));
  std::vector<Token> xs = split(inner(t, '[', ']'), ' ');
  if (xs.size() != n) t.fail("vector has " + std::to_string(xs.size()) + " coordinates, expected " + std::to_string(n));
  VecT<T> v(n);
  for (size_t k = 0; k < n; ++k) v[k] = scalar(xs[k]);
  return v;
}

std::vector<Vec> rational_vectors(const Token& t, const std::vector<std::string>& labels) {
  std::vector<Vec> out;
  for (const auto& x : split(t, ',')) out.push_back(vector_token<Rational>(x, labels, rational_token));
  return out;
}

std::vector<CVec> gaussian_vectors(const Token& t, const std::vector<std::string>& labels) {
  std::vector<CVec> out;
  for (const auto& x : split(t, ',')) out.push_back(vector_token<Gaussian>(x, labels, gaussian_token));
  return out;
}

// Group elements by label; cycle notation is normalised against the group's labels.
int element_token(const Token& t, const FiniteGroup& g) {
  int k = g.index_of(t.text);
  if (k >= 0) return k;
  if (!t.text.empty() && t.text.front() == '(') {
    std::vector<std::vector<long>> cycles;
    long points = 0;
    size_t pos = 0;
    while (pos < t.text.size()) {
      size_t close = t.text.find(')', pos);
      if (t.text[pos] != '(' || close == std::string::npos) t.fail("malformed cycle notation '" + t.text + "'");
      std::vector<long> cyc;
      for (const auto& x : split({t.text.substr(pos + 1, close - pos - 1), t.line, t.column + pos + 1}, ' ')) {
        long v = integer_token(x);
        if (v < 1) x.fail("points are numbered from 1");
        points = std::max(points, v);
        cyc.push_back(v - 1);
      }
      cycles.push_back(cyc);
      pos = close + 1;
    }
    size_t n = static_cast<size_t>(points);
    Perm p(n);
    for (size_t x = 0; x < n; ++x) p[x] = static_cast<int>(x);
    for (const auto& c : cycles)
      for (size_t a = 0; a < c.size(); ++a) p[static_cast<size_t>(c[a])] = static_cast<int>(c[(a + 1) % c.size()]);
    Perm sorted = p;
    std::sort(sorted.begin(), sorted.end());
    for (size_t x = 0; x < n; ++x)
      if (sorted[x] != static_cast<int>(x)) t.fail("'" + t.text + "' is not a permutation");
    k = g.index_of(cycle_label(p));
    if (k >= 0) return k;
  }
  t.fail("'" + t.text + "' is not an element of the group");
}

std::vector<int> element_list(const Token& t, const FiniteGroup& g) {
  std::vector<int> out;
  for (const auto& x : split(t, ',')) out.push_back(element_token(x, g));
  return out;
}

// Fills values[x] for every x reachable from 0 by right multiplication with the generators,
// with values[x g] = combine(values[x], image of g). Returns the first inconsistency.
template <class V>
std::optional<std::string> extend_over(const FiniteGroup& g, const std::vector<std::pair<int, V>>& gens, const V& one,
                                       const std::function<V(const V&, const V&)>& combine, std::vector<std::optional<V>>& values) {
  values.assign(g.order(), std::nullopt);
  values[0] = one;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (const auto& [h, img] : gens) {
      int y = g.mul(x, h);
      V v = combine(*values[static_cast<size_t>(x)], img);
      auto& slot = values[static_cast<size_t>(y)];
      if (!slot) {
        slot = v;
        queue.push_back(y);
      } else if (!(*slot == v)) {
        return "the given images do not define a homomorphism (conflict at " + g.label(y) + ")";
      }
    }
  }
  return std::nullopt;
}

// ---- section builders -------------------------------------------------------------

class Invalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Fields {
  const Section& sec;
  std::vector<bool> used;

  explicit Fields(const Section& s) : sec(s), used(s.entries.size(), false) {}

  static std::string head(const std::string& key) { return key.substr(0, key.find(' ')); }
  static std::string rest(const std::string& key) {
    size_t k = key.find(' ');
    return k == std::string::npos ? "" : key.substr(k + 1);
  }

  std::vector<const Entry*> all(const std::string& name) {
    std::vector<const Entry*> out;
    for (size_t k = 0; k < sec.entries.size(); ++k)
      if (head(sec.entries[k].key) == name) {
        used[k] = true;
        out.push_back(&sec.entries[k]);
      }
    return out;
  }
  const Entry* optional(const std::string& name) {
    auto v = all(name);
    if (v.size() > 1) throw InputError(v[1]->line, v[1]->key_column, "duplicate key '" + name + "'");
    if (!v.empty() && !rest(v[0]->key).empty())
      throw InputError(v[0]->line, v[0]->key_column, "key '" + name + "' takes no arguments");
    return v.empty() ? nullptr : v[0];
  }
  const Entry& required(const std::string& name) {
    const Entry* e = optional(name);
    if (!e) throw InputError(sec.line, 1, "[" + sec.kind + " " + sec.name + "] needs '" + name + "'");
    return *e;
  }
  void finish() const {
    for (size_t k = 0; k < used.size(); ++k)
      if (!used[k]) {
        const Entry& e = sec.entries[k];
        throw InputError(e.line, e.key_column, "unknown key '" + head(e.key) + "' in " + sec.kind + " section");
      }
  }
};

Token key_arguments(const Entry& e) {
  size_t k = e.key.find(' ');
  return {k == std::string::npos ? "" : e.key.substr(k + 1), e.line, e.key_column + (k == std::string::npos ? e.key.size() : k + 1)};
}

class Builder {
 public:
  explicit Builder(Model& m) : m_(m) {
    for (const auto& s : m.document.sections) kind_of_[s.name] = s.kind;
  }

  void build(const Section& s) {
    SectionStatus st{s.kind, s.name, s.line, true, ""};
    try {
      if (s.kind == "matrix") matrix(s);
      else if (s.kind == "lie") lie(s);
      else if (s.kind == "group") group(s);
      else if (s.kind == "action") action(s);
      else if (s.kind == "double_coset") double_coset(s);
      else if (s.kind == "phin") phin(s);
      else if (s.kind == "mhs") mhs(s);
      else cosimplicial(s);
    } catch (const Invalid& e) {
      st.valid = false;
      st.violation = e.what();
    }
    m_.status.push_back(st);
    valid_[s.name] = st.valid;
  }

 private:
  // Resolves a reference to a section of one of `kinds`; Invalid if that section is invalid.
  std::string reference(const Token& t, const std::vector<std::string>& kinds) {
    auto it = kind_of_.find(t.text);
    if (it == kind_of_.end() || std::find(kinds.begin(), kinds.end(), it->second) == kinds.end()) {
      std::string want = kinds[0];
      for (size_t k = 1; k < kinds.size(); ++k) want += " or " + kinds[k];
      t.fail("no " + want + " section named '" + t.text + "'");
    }
    auto v = valid_.find(t.text);
    if (v == valid_.end()) t.fail("section '" + t.text + "' must appear before it is used");
    if (!v->second) throw Invalid("depends on invalid section '" + t.text + "'");
    return it->second;
  }

  LiePtr lie_ref(const Entry& e) {
    Token t = whole_value(e);
    reference(t, {"lie"});
    return m_.lies.at(t.text);
  }
  GroupPtr group_ref(const Entry& e) {
    Token t = whole_value(e);
    reference(t, {"group"});
    return m_.groups.at(t.text);
  }
  QMat matrix_value(const Entry& e, size_t rows, size_t cols) {
    Token t = whole_value(e);
    QMat m;
    if (!t.text.empty() && t.text.front() == '[') {
      m = matrix_literal(t);
    } else {
      reference(t, {"matrix"});
      m = m_.matrices.at(t.text);
    }
    if (m.rows() != rows || m.cols() != cols)
      t.fail("matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
             std::to_string(cols));
    return m;
  }

  void matrix(const Section& s) {
    Fields f(s);
    const Entry& v = f.required("value");
    f.finish();
    m_.matrices[s.name] = matrix_literal(whole_value(v));
  }

  void lie(const Section& s) {
    Fields f(s);
    const Entry& b = f.required("basis");
    std::vector<std::string> labels;
    std::set<std::string> seen;
    for (const auto& t : split(whole_value(b), ' ')) {
      if (!is_name(t.text) || std::isdigit(static_cast<unsigned char>(t.text[0]))) t.fail("basis labels must be names not starting with a digit");
      if (!seen.insert(t.text).second) t.fail("duplicate basis label '" + t.text + "'");
      labels.push_back(t.text);
    }
    if (labels.empty()) whole_value(b).fail("empty basis");
    std::vector<BracketEntry> brackets;
    for (const Entry* e : f.all("bracket")) {
      if (!key_arguments(*e).text.empty()) key_arguments(*e).fail("key 'bracket' takes no arguments");
      auto ts = split(whole_value(*e), ' ');
      if (ts.size() != 4) whole_value(*e).fail("bracket needs 'i j k coefficient'");
      size_t i = label_index(ts[0], labels), j = label_index(ts[1], labels), k = label_index(ts[2], labels);
      if (i == j) ts[1].fail("[e, e] is zero and cannot be assigned");
      brackets.push_back({i, j, k, rational_token(ts[3])});
    }
    f.finish();
    LieReport rep = validate_lie_data(labels.size(), brackets);
    if (!rep.ok) throw Invalid(rep.message);
    try {
      m_.lies[s.name] = NilpotentLieAlgebra::create(labels, brackets);
    } catch (const LieError& e) {
      throw Invalid(e.what());
    }
  }

  void group(const Section& s) {
    Fields f(s);
    const Entry* lib = f.optional("library");
    const Entry* points = f.optional("points");
    auto gens = f.all("generator");
    const Entry* elements = f.optional("elements");
    auto rows = f.all("row");
    f.finish();
    int modes = (lib ? 1 : 0) + (points ? 1 : 0) + (elements ? 1 : 0);
    if (modes != 1) throw InputError(s.line, 1, "a group section needs exactly one of 'library', 'points', 'elements'");
    if (lib) {
      for (const auto& g : small_groups(64))
        if (g.name == lib->value) {
          m_.groups[s.name] = g.group;
          return;
        }
      whole_value(*lib).fail("unknown library group '" + lib->value + "'");
    }
    if (points) {
      long n = integer_token(whole_value(*points));
      if (n < 1 || n > 12) whole_value(*points).fail("points must be between 1 and 12");
      std::vector<Perm> perms;
      for (const Entry* e : gens) {
        auto ts = split(whole_value(*e), ' ');
        if (ts.size() != static_cast<size_t>(n)) whole_value(*e).fail("generator needs " + std::to_string(n) + " images");
        Perm p;
        for (const auto& t : ts) {
          long v = integer_token(t);
          if (v < 1 || v > n) t.fail("image out of range");
          p.push_back(static_cast<int>(v - 1));
        }
        perms.push_back(p);
      }
      try {
        m_.groups[s.name] = FiniteGroup::from_permutations(perms, static_cast<size_t>(n));
      } catch (const GroupError& e) {
        throw Invalid(e.what());
      }
      return;
    }
    std::vector<std::string> labels;
    for (const auto& t : split(whole_value(*elements), ' ')) labels.push_back(t.text);
    if (rows.size() != labels.size()) throw InputError(elements->line, elements->value_column, "expected " + std::to_string(labels.size()) + " rows");
    std::vector<std::vector<int>> table;
    for (const Entry* e : rows) {
      auto ts = split(whole_value(*e), ' ');
      if (ts.size() != labels.size()) whole_value(*e).fail("row needs " + std::to_string(labels.size()) + " entries");
      std::vector<int> row;
      for (const auto& t : ts) {
        auto it = std::find(labels.begin(), labels.end(), t.text);
        if (it == labels.end()) t.fail("unknown element '" + t.text + "'");
        row.push_back(static_cast<int>(it - labels.begin()));
      }
      table.push_back(row);
    }
    try {
      m_.groups[s.name] = FiniteGroup::from_table(labels, table);
    } catch (const GroupError& e) {
      throw Invalid(e.what());
    }
  }

  void action(const Section& s) {
    Fields f(s);
    GroupPtr g = group_ref(f.required("group"));
    const Entry& target = f.required("target");
    auto acts = f.all("act");
    const Entry* central = f.optional("central");
    f.finish();
    Token tt = whole_value(target);
    std::string kind = reference(tt, {"group", "lie"});
    if (acts.empty()) throw InputError(s.line, 1, "an action section needs 'act' entries");
    if (kind == "group") {
      GroupPtr u = m_.groups.at(tt.text);
      std::vector<std::pair<int, std::vector<int>>> images;
      for (const Entry* e : acts) {
        int x = element_token(key_arguments(*e), *g);
        // Images of some generators of U, extended to an endomorphism.
        std::vector<std::pair<int, int>> pairs;
        for (const auto& item : split(whole_value(*e), ',')) {
          size_t arrow = item.text.find("->");
          if (arrow == std::string::npos) item.fail("expected 'u -> v'");
          Token a{item.text.substr(0, arrow), item.line, item.column}, b{item.text.substr(arrow + 2), item.line, item.column + arrow + 2};
          auto trim = [](Token t) {
            size_t lo = t.text.find_first_not_of(" \t"), hi = t.text.find_last_not_of(" \t");
            if (lo == std::string::npos) t.fail("empty element");
            return Token{t.text.substr(lo, hi - lo + 1), t.line, t.column + lo};
          };
          pairs.push_back({element_token(trim(a), *u), element_token(trim(b), *u)});
        }
        std::vector<std::pair<int, int>> gens(pairs.begin(), pairs.end());
        std::vector<std::optional<int>> vals;
        auto conflict = extend_over<int>(*u, gens, 0, [&](const int& a, const int& b) { return u->mul(a, b); }, vals);
        if (conflict) throw Invalid("act " + key_arguments(*e).text + ": " + *conflict);
        std::vector<int> map;
        for (const auto& v : vals) {
          if (!v) whole_value(*e).fail("the listed elements do not generate the target");
          map.push_back(*v);
        }
        images.push_back({x, map});
      }
      std::vector<int> id(u->order());
      for (size_t k = 0; k < id.size(); ++k) id[k] = static_cast<int>(k);
      std::vector<std::optional<std::vector<int>>> vals;
      auto conflict = extend_over<std::vector<int>>(*g, images, id, [](const std::vector<int>& a, const std::vector<int>& b) { return compose_maps(a, b); }, vals);
      if (conflict) throw Invalid(*conflict);
      FiniteGroupAction a{g, u, {}};
      for (const auto& v : vals) {
        if (!v) throw InputError(s.line, 1, "the 'act' elements do not generate the acting group");
        a.act.push_back(*v);
      }
      try {
        validate(a);
      } catch (const GroupActionError& e) {
        throw Invalid(e.what());
      }
      FiniteActionData d{a, std::nullopt};
      if (central) d.central = generated_subgroup(*u, element_list(whole_value(*central), *u));
      m_.finite_actions[s.name] = d;
      return;
    }
    LiePtr u = m_.lies.at(tt.text);
    std::vector<std::pair<int, QMat>> images;
    for (const Entry* e : acts) images.push_back({element_token(key_arguments(*e), *g), matrix_value(*e, u->dim(), u->dim())});
    std::vector<std::optional<QMat>> vals;
    auto conflict = extend_over<QMat>(*g, images, QMat::identity(u->dim()), [](const QMat& a, const QMat& b) { return a * b; }, vals);
    if (conflict) throw Invalid(*conflict);
    UnipotentGroupAction a{g, u, {}};
    for (const auto& v : vals) {
      if (!v) throw InputError(s.line, 1, "the 'act' elements do not generate the acting group");
      a.act.push_back(*v);
    }
    try {
      validate(a);
    } catch (const GroupActionError& e) {
      throw Invalid(e.what());
    }
    LieActionData d{a, std::nullopt};
    if (central) d.central = rational_vectors(whole_value(*central), u->labels());
    m_.lie_actions[s.name] = d;
  }

  void double_coset(const Section& s) {
    Fields f(s);
    GroupPtr g = group_ref(f.required("group"));
    const Entry& first = f.required("first");
    const Entry& second = f.required("second");
    f.finish();
    m_.double_cosets[s.name] = {g, generated_subgroup(*g, element_list(whole_value(first), *g)),
                                generated_subgroup(*g, element_list(whole_value(second), *g))};
  }

  void phin(const Section& s) {
    Fields f(s);
    LiePtr l = lie_ref(f.required("lie"));
    size_t n = l->dim();
    QMat phi = matrix_value(f.required("phi"), n, n);
    const Entry* mono = f.optional("N");
    const Entry* p = f.optional("p");
    const Entry* central = f.optional("central");
    f.finish();
    std::optional<QMat> nm;
    if (mono) nm = matrix_value(*mono, n, n);
    Rational pv = p ? rational_token(whole_value(*p)) : Rational(2);
    PhiNData d;
    try {
      d.group = phin_group(l, phi, nm, pv);
    } catch (const MathError& e) {
      throw Invalid(e.what());
    }
    if (central) d.central = rational_vectors(whole_value(*central), l->labels());
    m_.phins[s.name] = d;
  }

  template <class T>
  FilteredSpace<T> filtration(std::vector<const Entry*> entries, size_t n, FiltrationDirection dir,
                              const std::function<std::vector<VecT<T>>(const Token&)>& vectors) {
    std::map<int, std::pair<const Entry*, Subspace<T>>> levels;
    for (const Entry* e : entries) {
      Token arg = key_arguments(*e);
      if (arg.text.empty()) arg.fail("missing level");
      int level = static_cast<int>(integer_token(arg));
      if (levels.count(level)) arg.fail("level " + arg.text + " given twice");
      std::vector<VecT<T>> span = e->value.empty() ? std::vector<VecT<T>>{} : vectors(whole_value(*e));
      levels.emplace(level, std::make_pair(e, Subspace<T>(n, span)));
    }
    // Missing intermediate levels repeat the nearest level on the smaller side.
    std::vector<std::pair<int, Subspace<T>>> list;
    int lo = levels.begin()->first, hi = levels.rbegin()->first;
    for (int k = lo; k <= hi; ++k) {
      if (levels.count(k)) {
        list.emplace_back(k, levels.at(k).second);
      } else if (dir == FiltrationDirection::Ascending) {
        list.emplace_back(k, list.back().second);
      } else {
        auto next = levels.upper_bound(k);
        list.emplace_back(k, next->second.second);
      }
    }
    try {
      return FilteredSpace<T>(n, dir, list);
    } catch (const MathError& e) {
      throw Invalid(e.what());
    }
  }

  void mhs(const Section& s) {
    Fields f(s);
    LiePtr l = lie_ref(f.required("lie"));
    auto weights = f.all("weight");
    auto hodge = f.all("hodge");
    const Entry* central = f.optional("central");
    f.finish();
    if (weights.empty() || hodge.empty()) throw InputError(s.line, 1, "an mhs section needs 'weight' and 'hodge' levels");
    const auto& labels = l->labels();
    QFiltration w = filtration<Rational>(weights, l->dim(), FiltrationDirection::Ascending,
                                         [&](const Token& t) { return rational_vectors(t, labels); });
    CFiltration h = filtration<Gaussian>(hodge, l->dim(), FiltrationDirection::Descending,
                                         [&](const Token& t) { return gaussian_vectors(t, labels); });
    std::optional<std::vector<Vec>> z;
    if (central) z = rational_vectors(whole_value(*central), labels);
    try {
      m_.mhs.insert_or_assign(s.name, MHSData{mhs_group(l, w, h), z});
    } catch (const MathError& e) {
      throw Invalid(e.what());
    }
  }

  void cosimplicial(const Section& s) {
    Fields f(s);
    auto objects = f.all("object");
    auto cofaces = f.all("coface");
    auto codegen = f.all("codegeneracy");
    const Entry* cog = f.optional("cogenerate");
    f.finish();
    if (objects.empty()) throw InputError(s.line, 1, "a cosimplicial section needs 'object' entries");
    std::map<long, LiePtr> obj;
    for (const Entry* e : objects) {
      Token arg = key_arguments(*e);
      long n = integer_token(arg);
      if (obj.count(n)) arg.fail("object " + arg.text + " given twice");
      Token v = whole_value(*e);
      if (!v.text.empty() && std::isdigit(static_cast<unsigned char>(v.text[0]))) {
        obj[n] = NilpotentLieAlgebra::abelian(static_cast<size_t>(integer_token(v)));
      } else {
        reference(v, {"lie"});
        obj[n] = m_.lies.at(v.text);
      }
    }
    int top = static_cast<int>(obj.rbegin()->first);
    if (obj.begin()->first != 0 || static_cast<int>(obj.size()) != top + 1) throw InputError(s.line, 1, "objects must be given for degrees 0..n");
    LieCosimplicial u;
    for (const auto& [n, o] : obj) u.obj.push_back(o);
    auto indexed = [&](const std::vector<const Entry*>& es, const std::string& what, int lo_n, int hi_n, int extra,
                       std::vector<std::vector<QMat>>& out, bool codegeneracy) {
      out.assign(static_cast<size_t>(top) + 1, {});
      std::map<std::pair<long, long>, const Entry*> seen;
      for (const Entry* e : es) {
        auto ts = split(key_arguments(*e), ' ');
        if (ts.size() != 2) key_arguments(*e).fail(what + " needs 'n i'");
        long n = integer_token(ts[0]), i = integer_token(ts[1]);
        if (n < lo_n || n > hi_n) ts[0].fail("degree out of range");
        if (i < 0 || i > n + extra) ts[1].fail("index out of range");
        if (!seen.emplace(std::make_pair(n, i), e).second) ts[1].fail(what + " given twice");
      }
      for (long n = lo_n; n <= hi_n; ++n)
        for (long i = 0; i <= n + extra; ++i) {
          auto it = seen.find({n, i});
          if (it == seen.end())
            throw InputError(s.line, 1, "missing " + what + " " + std::to_string(n) + " " + std::to_string(i));
          size_t src = static_cast<size_t>(codegeneracy ? n + 1 : n - 1), tgt = static_cast<size_t>(n);
          out[static_cast<size_t>(n)].push_back(matrix_value(*it->second, u.obj[tgt]->dim(), u.obj[src]->dim()));
        }
    };
    indexed(cofaces, "coface", 1, top, 0, u.d, false);
    if (!codegen.empty()) {
      indexed(codegen, "codegeneracy", 0, top - 1, 0, u.s, true);
      u.s.pop_back();
    }
    bool cogenerate_flag = false;
    if (cog) {
      if (cog->value != "yes" && cog->value != "no") whole_value(*cog).fail("expected yes or no");
      cogenerate_flag = cog->value == "yes";
    }
    IdentityReport rep = check_identities(u);
    if (!rep.ok) throw Invalid(rep.failure);
    m_.cosimplicials[s.name] = cogenerate_flag ? cogenerate(u) : u;
  }

  Model& m_;
  std::map<std::string, std::string> kind_of_;
  std::map<std::string, bool> valid_;
};

}  // namespace

Document parse_document(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  size_t line = 0;
  bool any = false;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::string s = raw.substr(0, raw.find('#'));
    size_t a = s.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = s.find_last_not_of(" \t");
    std::string body = s.substr(a, b - a + 1);
    if (body.front() == '[') {
      if (body.back() != ']') throw InputError(line, a + body.size(), "syntax error: section header must end with ']'");
      std::istringstream words(body.substr(1, body.size() - 2));
      std::string kind, name, extra;
      words >> kind >> name;
      if (words >> extra) throw InputError(line, a + 1, "syntax error: section header is '[kind name]'");
      if (std::find(section_kinds().begin(), section_kinds().end(), kind) == section_kinds().end())
        throw InputError(line, a + 2, "unknown section kind '" + kind + "'");
      if (!is_name(name)) throw InputError(line, a + 2 + kind.size(), "syntax error: missing or malformed section name");
      for (const auto& sec : doc.sections)
        if (sec.name == name) throw InputError(line, a + 2 + kind.size(), "duplicate section name '" + name + "'");
      doc.sections.push_back({kind, name, line, {}});
      any = true;
      continue;
    }
    size_t eq = s.find('=', a);
    if (eq == std::string::npos) throw InputError(line, a + 1, "syntax error: expected 'key = value'");
    if (doc.sections.empty()) throw InputError(line, a + 1, "syntax error: entry before the first section header");
    std::string key_raw = s.substr(a, eq - a);
    std::istringstream kw(key_raw);
    std::string key, w;
    while (kw >> w) key += (key.empty() ? "" : " ") + w;
    if (key.empty()) throw InputError(line, a + 1, "syntax error: empty key");
    size_t v = s.find_first_not_of(" \t", eq + 1);
    std::string value = v == std::string::npos ? "" : s.substr(v, b + 1 - v);
    doc.sections.back().entries.push_back({key, value, line, a + 1, v == std::string::npos ? eq + 2 : v + 1});
  }
  if (!any) throw InputError(1, 1, "syntax error: no sections in description");
  return doc;
}

std::string format_document(const Document& doc) {
  std::string out;
  for (size_t k = 0; k < doc.sections.size(); ++k) {
    const Section& s = doc.sections[k];
    if (k) out += "\n";
    out += "[" + s.kind + " " + s.name + "]\n";
    for (const auto& e : s.entries) out += e.key + " = " + e.value + "\n";
  }
  return out;
}

bool same_content(const Document& a, const Document& b) {
  if (a.sections.size() != b.sections.size()) return false;
  for (size_t k = 0; k < a.sections.size(); ++k) {
    const Section &x = a.sections[k], &y = b.sections[k];
    if (x.kind != y.kind || x.name != y.name || x.entries.size() != y.entries.size()) return false;
    for (size_t e = 0; e < x.entries.size(); ++e)
      if (x.entries[e].key != y.entries[e].key || x.entries[e].value != y.entries[e].value) return false;
  }
  return true;
}

const SectionStatus& Model::pick(const std::vector<std::string>& kinds, const std::string& name) const {
  for (const auto& s : status) {
    bool kind_ok = std::find(kinds.begin(), kinds.end(), s.kind) != kinds.end();
    if (!name.empty() && s.name == name) {
      if (!kind_ok) throw InputError(s.line, 1, "section '" + name + "' has the wrong kind for this command");
      return s;
    }
    if (name.empty() && kind_ok) return s;
  }
  std::string want = kinds[0];
  for (size_t k = 1; k < kinds.size(); ++k) want += " or " + kinds[k];
  if (!name.empty()) throw InputError(1, 1, "no section named '" + name + "'");
  throw InputError(1, 1, "no " + want + " section in description");
}

Model load_model(const std::string& text) {
  Model m;
  m.document = parse_document(text);
  Builder b(m);
  for (const auto& s : m.document.sections) b.build(s);
  return m;
}

}  // namespace cohw
