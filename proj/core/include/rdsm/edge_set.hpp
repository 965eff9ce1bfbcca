#ifndef RDSM_EDGE_SET_HPP
#define RDSM_EDGE_SET_HPP

#include "rdsm/molecule.hpp"

#include <utility>
#include <vector>

namespace rdsm {

/// Atom-pair membership policy for the internal-coordinate chart. The default
/// is the complete graph, which keeps the chart redundant (|E| > 3N for
/// N >= 8) and free of degeneracies at this molecule scale; the cutoff policy
/// exists for larger systems.
struct EdgePolicy {
    enum class Kind { complete, cutoff };
    Kind kind = Kind::complete;
    double cutoff_radius = 0.0; // Angstrom, used when kind == cutoff

    static EdgePolicy complete() { return {}; }
    static EdgePolicy cutoff(double radius) {
        return {Kind::cutoff, radius};
    }
};

/// Unordered atom-index pairs (i < j), sorted lexicographically.
struct EdgeSet {
    std::vector<std::pair<int, int>> edges;
    EdgePolicy policy;

    int size() const { return static_cast<int>(edges.size()); }
};

/// Build the pair set for a molecule. The cutoff policy keeps pairs with
/// interatomic distance <= radius in the given geometry and throws Error when
/// the resulting pair graph is disconnected (the chart would be blind to the
/// relative placement of the components).
EdgeSet build_edge_set(const Molecule& mol, const EdgePolicy& policy = EdgePolicy::complete());

} // namespace rdsm

#endif
