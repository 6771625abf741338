#pragma once
// Mixed exact sequences of groups and pointed sets.
//
// Nodes 0..k are groups, nodes k+1.. are pointed sets, node k acts on node k+1
// from the right, nodes up to j are abelian and the image of node j in node j+1
// is central. j = -1 means no abelian or central requirement.

#include <optional>
#include <string>
#include <vector>

namespace cohw {

enum class NodeKind { Abelian, Group, PointedSet };
const char* node_kind_name(NodeKind k);

struct SequenceNode {
  std::string name;
  NodeKind kind = NodeKind::PointedSet;
  std::string size;  // "6", "dim 2", "variety", ...
};

struct ClauseResult {
  std::string clause;
  bool ok = true;
  bool sampled = false;  // checked on samples rather than exhaustively
  std::string detail;
};

struct MixedExactSequence {
  std::vector<SequenceNode> nodes;
  int j = -1, k = 0;
  bool starts_with_one = true;
  bool ends_with_one = false;
  std::vector<ClauseResult> clauses;

  bool exact() const;
  // One line, e.g. "1 -> A -z-> B -> C ~> D -> E".
  std::string render() const;
};

/// A mixed sequence with every node enumerated. Element 0 of each node is the
/// identity or basepoint; groups carry multiplication tables.
struct FiniteSequence {
  struct Node {
    std::string name;
    NodeKind kind = NodeKind::PointedSet;
    size_t size = 1;
    std::vector<int> table;  // size * size entries for groups
    // Only part of the set is listed (e.g. the image of the previous map in a
    // terminal node); the node then only takes part in the basepoint fibre test.
    bool partial = false;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<int>> maps;  // maps[r]: nodes[r] -> nodes[r + 1]
  int j = -1, k = 0;
  std::vector<std::vector<int>> action;  // action[x][g] = x . g for x in node k+1, g in node k
  bool starts_with_one = true;
  bool ends_with_one = false;
};

// Checks every clause by enumeration.
std::vector<ClauseResult> verify_finite(const FiniteSequence& s);
MixedExactSequence summarize(const FiniteSequence& s);

}  // namespace cohw
