#pragma once

// Plain-text and DOT serialization for labelled digraphs.
//
// Text format:
//
//   digraph k=<k> n=<n>
//   rights <name> ...          (only when names differ from r0..r{k-1})
//   vertices <id> ...          (only when ids differ from 0..n-1)
//   <u> <right-name> <v>       (one line per edge, sorted)
//
// Blank lines and lines starting with '#' are ignored on input.

#include <iosfwd>
#include <string>

#include "domlearn/digraph.hpp"

namespace domlearn {

void write_graph_text(std::ostream& out, const LabeledDigraph& g);
std::string to_text(const LabeledDigraph& g);

/// Throws std::invalid_argument on malformed input.
LabeledDigraph read_graph_text(std::istream& in);
LabeledDigraph parse_graph_text(const std::string& text);

void write_graph_dot(std::ostream& out, const LabeledDigraph& g,
                     const std::string& name = "G");
std::string to_dot(const LabeledDigraph& g, const std::string& name = "G");

/// One `pi <v> <x>` line per assigned vertex, after the summary graph.
void write_policy_text(std::ostream& out, const DomainPolicy& policy);

}  // namespace domlearn
