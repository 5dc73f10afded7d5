#include "domlearn/decision_tree.hpp"

#include <ostream>
#include <stdexcept>

namespace domlearn {

AccessRequest DecisionTest::request_for(VertexId u) const {
  switch (kind) {
    case Kind::Loop:
      return {u, right, u};
    case Kind::To:
      return {u, right, vertex};
    case Kind::From:
      return {vertex, right, u};
  }
  return {u, right, u};
}

bool operator==(const DecisionTest& lhs, const DecisionTest& rhs) {
  if (lhs.kind != rhs.kind || lhs.right != rhs.right) return false;
  return lhs.kind == DecisionTest::Kind::Loop || lhs.vertex == rhs.vertex;
}

std::string to_string(const DecisionTest& t, const Alphabet& alphabet) {
  const std::string& a = alphabet.name(t.right);
  switch (t.kind) {
    case DecisionTest::Kind::Loop:
      return "loop(" + a + ")";
    case DecisionTest::Kind::To:
      return "to(" + a + ", " + std::to_string(t.vertex) + ")";
    case DecisionTest::Kind::From:
      return "from(" + std::to_string(t.vertex) + ", " + a + ")";
  }
  return "?";
}

DecisionTree::DecisionTree(VertexId label) { nodes_.push_back({true, label, {}, 0, 0}); }

VertexId DecisionTree::label(NodeId n) const {
  const Node& node = nodes_.at(n);
  if (!node.is_leaf) throw std::logic_error("decision tree: label of a decision node");
  return node.label;
}

const DecisionTest& DecisionTree::test(NodeId n) const {
  const Node& node = nodes_.at(n);
  if (node.is_leaf) throw std::logic_error("decision tree: test of a leaf");
  return node.test;
}

DecisionTree::NodeId DecisionTree::yes_branch(NodeId n) const {
  test(n);
  return nodes_[n].yes;
}

DecisionTree::NodeId DecisionTree::no_branch(NodeId n) const {
  test(n);
  return nodes_[n].no;
}

std::vector<DecisionTree::NodeId> DecisionTree::leaves() const {
  std::vector<NodeId> result;
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    const NodeId n = stack.back();
    stack.pop_back();
    if (nodes_[n].is_leaf) {
      result.push_back(n);
    } else {
      stack.push_back(nodes_[n].no);
      stack.push_back(nodes_[n].yes);
    }
  }
  return result;
}

std::vector<VertexId> DecisionTree::leaf_labels() const {
  std::vector<VertexId> result;
  for (NodeId n : leaves()) result.push_back(nodes_[n].label);
  return result;
}

std::pair<DecisionTree::NodeId, DecisionTree::NodeId> DecisionTree::split(
    NodeId leaf, const DecisionTest& test, VertexId yes_label,
    VertexId no_label) {
  if (!is_leaf(leaf)) throw std::logic_error("decision tree: split of a decision node");
  const NodeId yes = nodes_.size();
  const NodeId no = yes + 1;
  nodes_.push_back({true, yes_label, {}, 0, 0});
  nodes_.push_back({true, no_label, {}, 0, 0});
  nodes_[leaf] = {false, 0, test, yes, no};
  ++leaf_count_;
  return {yes, no};
}

VertexId DecisionTree::classify(VertexId u, const ConnectionQuery& cnq) const {
  NodeId n = root();
  while (!nodes_[n].is_leaf) {
    const AccessRequest q = nodes_[n].test.request_for(u);
    n = cnq(q.source, q.right, q.target) ? nodes_[n].yes : nodes_[n].no;
  }
  return nodes_[n].label;
}

bool DecisionTree::same_shape(const DecisionTree& a, NodeId na,
                              const DecisionTree& b, NodeId nb) {
  const Node& x = a.nodes_[na];
  const Node& y = b.nodes_[nb];
  if (x.is_leaf != y.is_leaf) return false;
  if (x.is_leaf) return x.label == y.label;
  return x.test == y.test && same_shape(a, x.yes, b, y.yes) &&
         same_shape(a, x.no, b, y.no);
}

bool operator==(const DecisionTree& lhs, const DecisionTree& rhs) {
  return DecisionTree::same_shape(lhs, lhs.root(), rhs, rhs.root());
}

namespace {

void write_text_node(std::ostream& out, const DecisionTree& tree,
                     DecisionTree::NodeId n, const Alphabet& alphabet,
                     const std::string& indent, const std::string& tag) {
  out << indent << tag;
  if (tree.is_leaf(n)) {
    out << "leaf " << tree.label(n) << '\n';
    return;
  }
  out << to_string(tree.test(n), alphabet) << '\n';
  write_text_node(out, tree, tree.yes_branch(n), alphabet, indent + "  ", "yes: ");
  write_text_node(out, tree, tree.no_branch(n), alphabet, indent + "  ", "no: ");
}

void write_dot_node(std::ostream& out, const DecisionTree& tree,
                    DecisionTree::NodeId n, const Alphabet& alphabet) {
  if (tree.is_leaf(n)) {
    out << "  n" << n << " [shape=box, label=\"" << tree.label(n) << "\"];\n";
    return;
  }
  out << "  n" << n << " [label=\"" << to_string(tree.test(n), alphabet)
      << "\"];\n";
  out << "  n" << n << " -> n" << tree.yes_branch(n) << " [label=\"yes\"];\n";
  out << "  n" << n << " -> n" << tree.no_branch(n) << " [label=\"no\"];\n";
  write_dot_node(out, tree, tree.yes_branch(n), alphabet);
  write_dot_node(out, tree, tree.no_branch(n), alphabet);
}

}  // namespace

void write_tree_text(std::ostream& out, const DecisionTree& tree,
                     const Alphabet& alphabet) {
  write_text_node(out, tree, tree.root(), alphabet, "", "");
}

void write_tree_dot(std::ostream& out, const DecisionTree& tree,
                    const Alphabet& alphabet) {
  out << "digraph T {\n";
  write_dot_node(out, tree, tree.root(), alphabet);
  out << "}\n";
}

}  // namespace domlearn
