#pragma once
// Description files: line-oriented `[kind name]` sections of `key = value` entries.
// The grammar is documented in docs/format.md.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cohw/cosimpl.hpp"
#include "cohw/gcohom.hpp"
#include "cohw/hodge.hpp"
#include "cohw/phin.hpp"

namespace cohw {

/// A syntax, reference or dimension error at a 1-based line and column.
class InputError : public std::runtime_error {
 public:
  InputError(size_t line, size_t column, const std::string& message);
  size_t line() const { return line_; }
  size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  size_t line_, column_;
  std::string message_;
};

struct Entry {
  std::string key;    // words before '=', separated by single spaces
  std::string value;  // trimmed text after '='
  size_t line = 0, key_column = 0, value_column = 0;
};

struct Section {
  std::string kind, name;
  size_t line = 0;
  std::vector<Entry> entries;
};

struct Document {
  std::vector<Section> sections;
};

const std::vector<std::string>& section_kinds();

Document parse_document(const std::string& text);
// Canonical text: comments and blank lines dropped, one entry per line.
std::string format_document(const Document& doc);
// Same sections, keys and values, ignoring positions.
bool same_content(const Document& a, const Document& b);

// ---- resolved model -----------------------------------------------------------

struct FiniteActionData {
  FiniteGroupAction action;
  std::optional<std::vector<int>> central;
};

struct LieActionData {
  UnipotentGroupAction action;
  std::optional<std::vector<Vec>> central;
};

struct DoubleCosetData {
  GroupPtr group;
  std::vector<int> first, second;  // sorted subgroups
};

struct PhiNData {
  PhiNGroup group;
  std::optional<std::vector<Vec>> central;
};

struct MHSData {
  MHSGroup group;
  std::optional<std::vector<Vec>> central;
};

/// Whether a section satisfies its mathematical invariants (Jacobi identity, group
/// axioms, N phi = p phi N, ...). Sections depending on an invalid one are invalid.
struct SectionStatus {
  std::string kind, name;
  size_t line = 0;
  bool valid = true;
  std::string violation;
};

struct Model {
  Document document;
  std::vector<SectionStatus> status;  // in file order
  std::map<std::string, QMat> matrices;
  std::map<std::string, LiePtr> lies;
  std::map<std::string, GroupPtr> groups;
  std::map<std::string, FiniteActionData> finite_actions;
  std::map<std::string, LieActionData> lie_actions;
  std::map<std::string, DoubleCosetData> double_cosets;
  std::map<std::string, PhiNData> phins;
  std::map<std::string, MHSData> mhs;
  std::map<std::string, LieCosimplicial> cosimplicials;

  // The named section, or the first one of the given kinds. Throws InputError if absent.
  const SectionStatus& pick(const std::vector<std::string>& kinds, const std::string& name = "") const;
};

// Parses and resolves every section. Throws InputError for syntax, reference and
// dimension errors; invariant failures are recorded in `status`.
Model load_model(const std::string& text);

}  // namespace cohw
