#include "rdsm/edge_set.hpp"

#include "rdsm/errors.hpp"

#include <numeric>

namespace rdsm {
namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

} // namespace

EdgeSet build_edge_set(const Molecule& mol, const EdgePolicy& policy) {
    const int n = mol.size();
    EdgeSet out;
    out.policy = policy;

    if (policy.kind == EdgePolicy::Kind::complete) {
        out.edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) out.edges.emplace_back(i, j);
        return out;
    }

    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (mol.distance(i, j) <= policy.cutoff_radius) {
                out.edges.emplace_back(i, j);
                uf.unite(i, j);
            }

    int root = uf.find(0);
    for (int i = 1; i < n; ++i)
        if (uf.find(i) != root)
            throw Error("cutoff(" + std::to_string(policy.cutoff_radius) +
                        ") yields a disconnected pair graph; the q-chart cannot see the "
                        "relative placement of the components");
    return out;
}

} // namespace rdsm
