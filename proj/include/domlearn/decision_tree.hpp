#pragma once

// Binary decision tree that classifies a vertex to a leaf label by asking
// connection queries. Each decision node holds one of three tests:
//
//   loop(a)     is (u, a, u) an edge?
//   to(a, v)    is (u, a, v) an edge?
//   from(v, a)  is (v, a, u) an edge?
//
// The left subtree is the yes-branch.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "domlearn/digraph.hpp"

namespace domlearn {

struct DecisionTest {
  enum class Kind { Loop, To, From };

  Kind kind = Kind::Loop;
  RightId right = 0;
  VertexId vertex = 0;  // unused for Loop

  static DecisionTest loop(RightId a) { return {Kind::Loop, a, 0}; }
  static DecisionTest to(RightId a, VertexId v) { return {Kind::To, a, v}; }
  static DecisionTest from(VertexId v, RightId a) { return {Kind::From, a, v}; }

  /// The request this test asks about when classifying u.
  AccessRequest request_for(VertexId u) const;

  friend bool operator==(const DecisionTest& lhs, const DecisionTest& rhs);
};

std::string to_string(const DecisionTest& t, const Alphabet& alphabet);

using ConnectionQuery = std::function<bool(VertexId, RightId, VertexId)>;

class DecisionTree {
 public:
  using NodeId = std::size_t;

  /// A single leaf.
  explicit DecisionTree(VertexId label);

  NodeId root() const { return 0; }
  bool is_leaf(NodeId n) const { return nodes_.at(n).is_leaf; }
  VertexId label(NodeId n) const;
  const DecisionTest& test(NodeId n) const;
  NodeId yes_branch(NodeId n) const;
  NodeId no_branch(NodeId n) const;

  /// Leaves in left-to-right order.
  std::vector<NodeId> leaves() const;
  std::size_t leaf_count() const { return leaf_count_; }
  std::vector<VertexId> leaf_labels() const;

  /// Turns a leaf into a decision node with two fresh leaves; returns
  /// (yes-leaf, no-leaf).
  std::pair<NodeId, NodeId> split(NodeId leaf, const DecisionTest& test,
                                  VertexId yes_label, VertexId no_label);

  /// Walks from the root asking one connection query per decision node.
  VertexId classify(VertexId u, const ConnectionQuery& cnq) const;

  friend bool operator==(const DecisionTree& lhs, const DecisionTree& rhs);

 private:
  struct Node {
    bool is_leaf = true;
    VertexId label = 0;
    DecisionTest test;
    NodeId yes = 0;
    NodeId no = 0;
  };

  static bool same_shape(const DecisionTree& a, NodeId na, const DecisionTree& b,
                         NodeId nb);

  std::vector<Node> nodes_;
  std::size_t leaf_count_ = 1;
};

/// Convenience wrapper matching the free-function form of classification.
inline VertexId classify(const DecisionTree& tree, VertexId u,
                         const ConnectionQuery& cnq) {
  return tree.classify(u, cnq);
}

void write_tree_text(std::ostream& out, const DecisionTree& tree,
                     const Alphabet& alphabet);
void write_tree_dot(std::ostream& out, const DecisionTree& tree,
                    const Alphabet& alphabet);

}  // namespace domlearn
