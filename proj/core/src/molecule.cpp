#include "rdsm/molecule.hpp"

#include "rdsm/elements.hpp"
#include "rdsm/errors.hpp"

#include <algorithm>
#include <limits>

namespace rdsm {

Molecule::Molecule(std::vector<int> atomic_numbers,
                   Eigen::Matrix<double, Eigen::Dynamic, 3> positions, std::string tag)
    : atomic_numbers_(std::move(atomic_numbers)),
      positions_(std::move(positions)),
      tag_(std::move(tag)) {
    const auto n = static_cast<Eigen::Index>(atomic_numbers_.size());
    if (n < 2) throw Error("molecule needs at least 2 atoms, got " + std::to_string(n));
    if (positions_.rows() != n)
        throw Error("position count " + std::to_string(positions_.rows()) +
                    " does not match atom count " + std::to_string(n));
    masses_.resize(n);
    for (Eigen::Index i = 0; i < n; ++i)
        masses_[i] = atomic_mass(atomic_numbers_[static_cast<std::size_t>(i)]);
}

Molecule Molecule::with_positions(const Eigen::Matrix<double, Eigen::Dynamic, 3>& pos) const {
    Molecule out(*this);
    if (pos.rows() != positions_.rows())
        throw Error("with_positions: row count mismatch");
    out.positions_ = pos;
    return out;
}

bool Molecule::same_element_multiset(const Molecule& other) const {
    if (size() != other.size()) return false;
    auto a = atomic_numbers_;
    auto b = other.atomic_numbers_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

double Molecule::min_pair_distance() const {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j) best = std::min(best, distance(i, j));
    return best;
}

} // namespace rdsm
