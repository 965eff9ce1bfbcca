#ifndef RDSM_MOLECULE_HPP
#define RDSM_MOLECULE_HPP

#include <Eigen/Core>

#include <string>
#include <vector>

namespace rdsm {

/// A molecular structure: atomic numbers, Cartesian positions (Angstrom), and
/// masses filled from the element table at construction. Immutable enough to
/// share across threads; geometry updates go through with_positions().
class Molecule {
public:
    Molecule() = default;

    /// Masses are always taken from the element table. Throws Error when any
    /// atomic number is unsupported or fewer than two atoms are given.
    Molecule(std::vector<int> atomic_numbers, Eigen::Matrix<double, Eigen::Dynamic, 3> positions,
             std::string tag = "");

    int size() const { return static_cast<int>(atomic_numbers_.size()); }
    const std::vector<int>& atomic_numbers() const { return atomic_numbers_; }
    const Eigen::Matrix<double, Eigen::Dynamic, 3>& positions() const { return positions_; }
    const Eigen::VectorXd& masses() const { return masses_; }
    const std::string& tag() const { return tag_; }
    void set_tag(std::string tag) { tag_ = std::move(tag); }

    Eigen::Vector3d position(int i) const { return positions_.row(i).transpose(); }
    double distance(int i, int j) const {
        return (positions_.row(i) - positions_.row(j)).norm();
    }

    /// Copy with replaced positions (same atoms, same tag).
    Molecule with_positions(const Eigen::Matrix<double, Eigen::Dynamic, 3>& pos) const;

    /// True when both molecules have identical atomic-number sequences.
    bool same_atoms(const Molecule& other) const {
        return atomic_numbers_ == other.atomic_numbers_;
    }

    /// True when the two element multisets match (ordering ignored).
    bool same_element_multiset(const Molecule& other) const;

    /// Smallest interatomic distance.
    double min_pair_distance() const;

private:
    std::vector<int> atomic_numbers_;
    Eigen::Matrix<double, Eigen::Dynamic, 3> positions_;
    Eigen::VectorXd masses_;
    std::string tag_;
};

} // namespace rdsm

#endif
