#include "domlearn/summarize.hpp"

namespace domlearn {

DomainPolicy summarize(const LabeledDigraph& g) {
  DomainPolicy policy;
  std::vector<VertexId> representatives;
  for (const auto& cls : equivalence_partition(g)) {
    representatives.push_back(cls.front());
    for (VertexId v : cls) policy.assignment.emplace(v, cls.front());
  }
  policy.summary = induced_subgraph(g, representatives);
  return policy;
}

}  // namespace domlearn
