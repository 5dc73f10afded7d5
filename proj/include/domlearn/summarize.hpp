#pragma once

#include "domlearn/digraph.hpp"

namespace domlearn {

/// Summary of a finite digraph: H is the subgraph induced by the minimum-id
/// member of every indistinguishability class, and pi maps each vertex to
/// its class representative. pi is a surjective strong homomorphism onto H
/// and H is irreducible.
DomainPolicy summarize(const LabeledDigraph& g);

}  // namespace domlearn
