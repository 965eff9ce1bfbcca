#ifndef RDSM_TOY_PES_HPP
#define RDSM_TOY_PES_HPP

#include "rdsm/errors.hpp"
#include "rdsm/molecule.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <vector>

namespace rdsm {

/// Energy evaluation rejected because atoms nearly overlap; callers that
/// build statistics count these as excluded samples.
class ClampedEnergyError : public Error {
public:
    using Error::Error;
};

/// Constants of the analytic potential. Arbitrary consistent units, pinned
/// for reproducibility: stiff Morse bonds, soft cosine-harmonic angles,
/// Lennard-Jones between topologically distant pairs.
struct ToyPotentialParams {
    double morse_depth = 100.0;   // D_e
    double morse_width = 2.0;     // a, 1/Angstrom
    double angle_k = 20.0;        // k_ang
    double lj_epsilon = 0.2;
    double lj_sigma_scale = 1.7;  // sigma = scale * (R_i + R_j)
    double cos_theta0 = -1.0 / 3.0; // tetrahedral reference angle
    double bond_factor = 1.3;     // bonded when d < factor * (R_i + R_j)
    double overlap_distance = 0.1; // below -> ClampedEnergyError
};

struct BondTerm {
    int i, j;
    double depth, width, r0;
};
struct AngleTerm {
    int i, center, k;
    double force, cos0;
};
struct NonbondedTerm {
    int i, j;
    double epsilon, sigma;
};

/// Analytic stand-in for an ab initio potential energy surface. Terms are
/// fixed at construction from a geometry: bonded pairs by the distance rule,
/// one angle per bonded-pair wedge, Lennard-Jones for everything else except
/// 1-2 and 1-3 pairs.
class ToyPotential {
public:
    static ToyPotential from_geometry(const Molecule& mol, const ToyPotentialParams& params = {});

    double energy(const Molecule& mol) const;
    /// Analytic gradient, plain Cartesian, 3N. Same overlap error as energy.
    Eigen::VectorXd gradient(const Molecule& mol) const;

    const std::vector<BondTerm>& bonds() const { return bonds_; }
    const std::vector<AngleTerm>& angles() const { return angles_; }
    const std::vector<NonbondedTerm>& nonbonded() const { return nonbonded_; }
    const ToyPotentialParams& params() const { return params_; }

    /// Sorted bonded pairs; equal topologies mean "same conformation" for
    /// start/reference pairing.
    std::vector<std::pair<int, int>> bonded_pairs() const;

    /// Copy with every term constant multiplied by (1 + jitter * u),
    /// u ~ U(-1, 1) per constant. Models a shifted-minimum surrogate surface.
    ToyPotential jittered(double jitter, std::uint64_t seed) const;

private:
    ToyPotentialParams params_;
    std::vector<BondTerm> bonds_;
    std::vector<AngleTerm> angles_;
    std::vector<NonbondedTerm> nonbonded_;
    int n_atoms_ = 0;
};

struct MinimizeResult {
    Molecule structure;
    bool converged = false;
    int iterations = 0;
    double grad_max_norm = 0.0;
    double energy = 0.0;
};

/// Gradient descent with backtracking line search; stops when the gradient
/// max-norm falls below tol.
MinimizeResult minimize(const ToyPotential& pot, const Molecule& mol, double tol = 1e-6,
                        int max_iter = 20000);

struct SynthesisConfig {
    int n_molecules = 50;
    int min_atoms = 4;
    int max_atoms = 9;
    std::uint64_t seed = 0;
    double jitter = 0.2;
    double rmsd_band_lo = 0.05; // Angstrom, median over pairs
    double rmsd_band_hi = 0.5;
    int max_band_retries = 8;
};

struct SynthesizedDataset {
    std::vector<Molecule> references;
    std::vector<Molecule> starts;
    std::vector<double> reference_energies; // under each molecule's true potential
    std::vector<double> start_energies;
    int skipped = 0;        // embedding or topology failures
    double median_rmsd = 0.0;
    double jitter_used = 0.0;
};

/// Random chain/branched H/C/N/O molecules: references are minima of the
/// true potential; starts are minima of a jittered copy reached from the
/// reference (same bonded topology, shifted minimum). Deterministic per seed.
/// The jitter scale adapts until the median start/reference rmsd falls in
/// the configured band.
SynthesizedDataset synthesize_dataset(const SynthesisConfig& config);

/// One random molecule embedding (unminimized), for tests that need varied
/// valid geometries. Throws Error after repeated embedding failures.
Molecule random_molecule(int n_atoms, std::uint64_t seed);

} // namespace rdsm

#endif
