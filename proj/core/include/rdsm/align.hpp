#ifndef RDSM_ALIGN_HPP
#define RDSM_ALIGN_HPP

#include "rdsm/molecule.hpp"

#include <Eigen/Core>

namespace rdsm {

/// x -> rotation * (x - pivot) + offset
struct RigidTransform {
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d pivot = Eigen::Vector3d::Zero();
    Eigen::Vector3d offset = Eigen::Vector3d::Zero();

    Eigen::Matrix<double, Eigen::Dynamic, 3>
    apply(const Eigen::Matrix<double, Eigen::Dynamic, 3>& pos) const;
};

/// Proper-rotation Kabsch fit mapping `moving` onto `target` (row-wise 3D
/// points, equal counts). Minimizes the sum of squared deviations; no
/// reflections.
RigidTransform kabsch_fit(const Eigen::Matrix<double, Eigen::Dynamic, 3>& moving,
                          const Eigen::Matrix<double, Eigen::Dynamic, 3>& target);

/// Copy of mol rigidly moved to best-fit target (all atoms, unweighted).
Molecule align_onto(const Molecule& mol, const Molecule& target);

} // namespace rdsm

#endif
