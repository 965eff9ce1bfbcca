#include "rdsm/toy_pes.hpp"

#include "rdsm/align.hpp"
#include "rdsm/elements.hpp"
#include "rdsm/rng.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace rdsm {
namespace {

double pair_r_sum(const Molecule& mol, int i, int j) {
    return covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(i)]) +
           covalent_radius(mol.atomic_numbers()[static_cast<std::size_t>(j)]);
}

double plain_rmsd_aligned(const Molecule& a, const Molecule& b) {
    const Molecule al = align_onto(a, b);
    return std::sqrt((al.positions() - b.positions()).squaredNorm() /
                     static_cast<double>(a.size()));
}

} // namespace

ToyPotential ToyPotential::from_geometry(const Molecule& mol, const ToyPotentialParams& params) {
    ToyPotential pot;
    pot.params_ = params;
    pot.n_atoms_ = mol.size();

    std::set<std::pair<int, int>> bonded;
    for (int i = 0; i < mol.size(); ++i)
        for (int j = i + 1; j < mol.size(); ++j) {
            const double r_sum = pair_r_sum(mol, i, j);
            if (mol.distance(i, j) < params.bond_factor * r_sum) {
                pot.bonds_.push_back({i, j, params.morse_depth, params.morse_width, r_sum});
                bonded.insert({i, j});
            }
        }

    // One angle per wedge of two bonds sharing a center atom.
    std::set<std::pair<int, int>> one_three;
    for (std::size_t a = 0; a < pot.bonds_.size(); ++a)
        for (std::size_t b = a + 1; b < pot.bonds_.size(); ++b) {
            const BondTerm& ba = pot.bonds_[a];
            const BondTerm& bb = pot.bonds_[b];
            int center = -1, i = -1, k = -1;
            if (ba.i == bb.i) { center = ba.i; i = ba.j; k = bb.j; }
            else if (ba.i == bb.j) { center = ba.i; i = ba.j; k = bb.i; }
            else if (ba.j == bb.i) { center = ba.j; i = ba.i; k = bb.j; }
            else if (ba.j == bb.j) { center = ba.j; i = ba.i; k = bb.i; }
            if (center < 0) continue;
            pot.angles_.push_back({i, center, k, params.angle_k, params.cos_theta0});
            one_three.insert({std::min(i, k), std::max(i, k)});
        }

    for (int i = 0; i < mol.size(); ++i)
        for (int j = i + 1; j < mol.size(); ++j) {
            if (bonded.count({i, j}) || one_three.count({i, j})) continue;
            pot.nonbonded_.push_back(
                {i, j, params.lj_epsilon, params.lj_sigma_scale * pair_r_sum(mol, i, j)});
        }
    return pot;
}

std::vector<std::pair<int, int>> ToyPotential::bonded_pairs() const {
    std::vector<std::pair<int, int>> out;
    out.reserve(bonds_.size());
    for (const BondTerm& b : bonds_) out.emplace_back(b.i, b.j);
    std::sort(out.begin(), out.end());
    return out;
}

double ToyPotential::energy(const Molecule& mol) const {
    if (mol.size() != n_atoms_) throw Error("ToyPotential: atom count mismatch");
    double e = 0.0;
    for (const BondTerm& b : bonds_) {
        const double d = mol.distance(b.i, b.j);
        if (d < params_.overlap_distance)
            throw ClampedEnergyError("near-overlap of atoms " + std::to_string(b.i) + "," +
                                     std::to_string(b.j));
        const double m = 1.0 - std::exp(-b.width * (d - b.r0));
        e += b.depth * m * m;
    }
    for (const AngleTerm& a : angles_) {
        const Eigen::Vector3d u = mol.position(a.i) - mol.position(a.center);
        const Eigen::Vector3d w = mol.position(a.k) - mol.position(a.center);
        const double c = u.dot(w) / (u.norm() * w.norm());
        e += a.force * (c - a.cos0) * (c - a.cos0);
    }
    for (const NonbondedTerm& p : nonbonded_) {
        const double d = mol.distance(p.i, p.j);
        if (d < params_.overlap_distance)
            throw ClampedEnergyError("near-overlap of atoms " + std::to_string(p.i) + "," +
                                     std::to_string(p.j));
        const double s6 = std::pow(p.sigma / d, 6);
        e += 4.0 * p.epsilon * (s6 * s6 - s6);
    }
    return e;
}

Eigen::VectorXd ToyPotential::gradient(const Molecule& mol) const {
    if (mol.size() != n_atoms_) throw Error("ToyPotential: atom count mismatch");
    Eigen::VectorXd g = Eigen::VectorXd::Zero(3 * mol.size());
    auto add = [&](int atom, const Eigen::Vector3d& v) { g.segment<3>(3 * atom) += v; };

    for (const BondTerm& b : bonds_) {
        const Eigen::Vector3d diff = mol.position(b.i) - mol.position(b.j);
        const double d = diff.norm();
        if (d < params_.overlap_distance)
            throw ClampedEnergyError("near-overlap of atoms " + std::to_string(b.i) + "," +
                                     std::to_string(b.j));
        const double ex = std::exp(-b.width * (d - b.r0));
        const double de_dd = 2.0 * b.depth * (1.0 - ex) * b.width * ex;
        add(b.i, de_dd * diff / d);
        add(b.j, -de_dd * diff / d);
    }
    for (const AngleTerm& a : angles_) {
        const Eigen::Vector3d u = mol.position(a.i) - mol.position(a.center);
        const Eigen::Vector3d w = mol.position(a.k) - mol.position(a.center);
        const double nu = u.norm(), nw = w.norm();
        const double c = u.dot(w) / (nu * nw);
        const double pref = 2.0 * a.force * (c - a.cos0);
        const Eigen::Vector3d dc_di = (w / nw - c * u / nu) / nu;
        const Eigen::Vector3d dc_dk = (u / nu - c * w / nw) / nw;
        add(a.i, pref * dc_di);
        add(a.k, pref * dc_dk);
        add(a.center, -pref * (dc_di + dc_dk));
    }
    for (const NonbondedTerm& p : nonbonded_) {
        const Eigen::Vector3d diff = mol.position(p.i) - mol.position(p.j);
        const double d = diff.norm();
        if (d < params_.overlap_distance)
            throw ClampedEnergyError("near-overlap of atoms " + std::to_string(p.i) + "," +
                                     std::to_string(p.j));
        const double s6 = std::pow(p.sigma / d, 6);
        const double de_dd = 4.0 * p.epsilon * (-12.0 * s6 * s6 + 6.0 * s6) / d;
        add(p.i, de_dd * diff / d);
        add(p.j, -de_dd * diff / d);
    }
    return g;
}

ToyPotential ToyPotential::jittered(double jitter, std::uint64_t seed) const {
    auto rng = make_rng(seed, {0x7e5});
    auto scale = [&](double value) { return value * (1.0 + jitter * uniform(rng, -1.0, 1.0)); };

    ToyPotential out(*this);
    for (BondTerm& b : out.bonds_) {
        b.depth = scale(b.depth);
        b.width = scale(b.width);
        b.r0 = scale(b.r0);
    }
    for (AngleTerm& a : out.angles_) {
        a.force = scale(a.force);
        a.cos0 = scale(a.cos0);
    }
    for (NonbondedTerm& p : out.nonbonded_) {
        p.epsilon = scale(p.epsilon);
        p.sigma = scale(p.sigma);
    }
    return out;
}

MinimizeResult minimize(const ToyPotential& pot, const Molecule& mol, double tol, int max_iter) {
    MinimizeResult res;
    Eigen::Matrix<double, Eigen::Dynamic, 3> pos = mol.positions();
    double e = pot.energy(mol.with_positions(pos));

    // Steepest descent with backtracking; the trial step comes from the
    // Barzilai-Borwein secant estimate, which handles the stiff-bond /
    // soft-contact conditioning that defeats a fixed step.
    Eigen::VectorXd grad = pot.gradient(mol.with_positions(pos));
    Eigen::VectorXd prev_grad;
    Eigen::Matrix<double, Eigen::Dynamic, 3> prev_pos;
    double step = 1e-4;

    int it = 0;
    for (; it < max_iter; ++it) {
        res.grad_max_norm = grad.cwiseAbs().maxCoeff();
        if (res.grad_max_norm <= tol) break;

        if (it > 0) {
            Eigen::VectorXd dx(3 * mol.size());
            for (int i = 0; i < mol.size(); ++i)
                dx.segment<3>(3 * i) = (pos.row(i) - prev_pos.row(i)).transpose();
            const Eigen::VectorXd dg = grad - prev_grad;
            const double denom = dx.dot(dg);
            if (denom > 1e-30) step = std::clamp(dx.squaredNorm() / denom, 1e-7, 1e2);
        }

        bool accepted = false;
        for (int half = 0; half < 48; ++half) {
            Eigen::Matrix<double, Eigen::Dynamic, 3> trial = pos;
            for (int i = 0; i < mol.size(); ++i)
                trial.row(i) -= step * grad.segment<3>(3 * i).transpose();
            try {
                const double e_trial = pot.energy(mol.with_positions(trial));
                if (e_trial < e) {
                    prev_pos = pos;
                    prev_grad = grad;
                    pos = std::move(trial);
                    e = e_trial;
                    grad = pot.gradient(mol.with_positions(pos));
                    accepted = true;
                    break;
                }
            } catch (const ClampedEnergyError&) {
                // stepped into an overlap; shrink
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }

    res.structure = mol.with_positions(pos);
    res.converged = res.grad_max_norm <= tol;
    res.iterations = it;
    res.energy = e;
    return res;
}

namespace {

int max_valence(int z) {
    switch (z) {
        case 1: return 1;
        case 6: return 4;
        case 7: return 3;
        case 8: return 2;
        default: return 0;
    }
}

struct Topology {
    std::vector<int> atomic_numbers;
    std::vector<std::pair<int, int>> bonds; // parent edges of the tree
};

Topology random_topology(int n_atoms, std::mt19937_64& rng) {
    Topology topo;
    auto pick_heavy = [&]() {
        const double u = uniform01(rng);
        if (u < 0.6) return 6;
        if (u < 0.8) return 7;
        return 8;
    };

    topo.atomic_numbers.push_back(pick_heavy());
    std::vector<int> free_valence{max_valence(topo.atomic_numbers[0])};

    while (static_cast<int>(topo.atomic_numbers.size()) < n_atoms) {
        std::vector<int> open;
        for (int i = 0; i < static_cast<int>(topo.atomic_numbers.size()); ++i)
            if (free_valence[static_cast<std::size_t>(i)] > 0) open.push_back(i);
        if (open.empty()) break;

        const int parent = open[uniform_index(rng, open.size())];
        const int remaining = n_atoms - static_cast<int>(topo.atomic_numbers.size());

        // Keep enough open valence to finish the chain: attach hydrogens
        // only when they cannot strand the remaining atoms.
        int total_free = 0;
        for (int f : free_valence) total_free += f;
        int z;
        if (remaining > 1 && total_free <= 1) z = pick_heavy();
        else z = uniform01(rng) < 0.55 ? 1 : pick_heavy();

        const int child = static_cast<int>(topo.atomic_numbers.size());
        topo.atomic_numbers.push_back(z);
        free_valence.push_back(max_valence(z) - 1);
        --free_valence[static_cast<std::size_t>(parent)];
        topo.bonds.emplace_back(parent, child);
    }
    return topo;
}

// BFS placement along the tree with clash rejection.
bool embed_topology(const Topology& topo, std::mt19937_64& rng,
                    Eigen::Matrix<double, Eigen::Dynamic, 3>& pos) {
    const int n = static_cast<int>(topo.atomic_numbers.size());
    pos.resize(n, 3);
    pos.row(0).setZero();

    std::vector<std::vector<int>> children(static_cast<std::size_t>(n));
    for (auto [p, c] : topo.bonds) children[static_cast<std::size_t>(p)].push_back(c);

    std::vector<int> order{0};
    std::vector<bool> placed(static_cast<std::size_t>(n), false);
    placed[0] = true;

    for (std::size_t head = 0; head < order.size(); ++head) {
        const int parent = order[head];
        for (int child : children[static_cast<std::size_t>(parent)]) {
            const double bond_len =
                covalent_radius(topo.atomic_numbers[static_cast<std::size_t>(parent)]) +
                covalent_radius(topo.atomic_numbers[static_cast<std::size_t>(child)]);

            // Best-of-K placement: maximize the clearance margin over all
            // already-placed atoms, measured in bonding-shell units so a
            // margin > 1.35 cannot create spurious bonds.
            double best_margin = -1.0;
            Eigen::Vector3d best_candidate = Eigen::Vector3d::Zero();
            for (int attempt = 0; attempt < 48; ++attempt) {
                Eigen::Vector3d dir(standard_normal(rng), standard_normal(rng),
                                    standard_normal(rng));
                if (dir.norm() < 1e-8) continue;
                dir.normalize();
                const Eigen::Vector3d candidate =
                    pos.row(parent).transpose() + bond_len * dir;
                double margin = 1e30;
                for (int other = 0; other < n; ++other) {
                    if (!placed[static_cast<std::size_t>(other)] || other == parent) continue;
                    const double r_sum =
                        covalent_radius(topo.atomic_numbers[static_cast<std::size_t>(other)]) +
                        covalent_radius(topo.atomic_numbers[static_cast<std::size_t>(child)]);
                    margin = std::min(
                        margin, (candidate - pos.row(other).transpose()).norm() / r_sum);
                }
                if (margin > best_margin) {
                    best_margin = margin;
                    best_candidate = candidate;
                }
                if (best_margin > 2.0) break; // comfortably clear
            }
            if (best_margin < 1.35) return false;
            pos.row(child) = best_candidate.transpose();
            placed[static_cast<std::size_t>(child)] = true;
            order.push_back(child);
        }
    }
    return true;
}

} // namespace

Molecule random_molecule(int n_atoms, std::uint64_t seed) {
    for (int attempt = 0; attempt < 40; ++attempt) {
        auto rng = make_rng(seed, {0x301Du, static_cast<std::uint64_t>(attempt)});
        Topology topo = random_topology(n_atoms, rng);
        if (static_cast<int>(topo.atomic_numbers.size()) < std::max(2, n_atoms - 1)) continue;
        Eigen::Matrix<double, Eigen::Dynamic, 3> pos;
        if (!embed_topology(topo, rng, pos)) continue;
        return Molecule(topo.atomic_numbers, pos, "random-" + std::to_string(seed));
    }
    throw Error("random_molecule: embedding failed repeatedly for n=" + std::to_string(n_atoms));
}

SynthesizedDataset synthesize_dataset(const SynthesisConfig& config) {
    if (config.min_atoms < 3 || config.max_atoms > 12 || config.min_atoms > config.max_atoms)
        throw Error("synthesize_dataset: size range must lie within [3, 12]");

    SynthesizedDataset out;
    ToyPotentialParams pes_params;

    struct RefEntry {
        Molecule reference;
        ToyPotential potential;
        std::vector<std::pair<int, int>> topology;
        double energy;
    };
    std::vector<RefEntry> refs;

    for (int index = 0; static_cast<int>(refs.size()) < config.n_molecules; ++index) {
        if (index > 4 * config.n_molecules + 100) break; // give up on a hostile seed
        auto rng = make_rng(config.seed, {0xDA7Au, static_cast<std::uint64_t>(index)});
        const int n_atoms =
            config.min_atoms + static_cast<int>(uniform_index(
                                   rng, static_cast<std::size_t>(config.max_atoms -
                                                                 config.min_atoms + 1)));

        Topology topo = random_topology(n_atoms, rng);
        if (static_cast<int>(topo.atomic_numbers.size()) < 2) {
            ++out.skipped;
            continue;
        }
        Eigen::Matrix<double, Eigen::Dynamic, 3> pos;
        if (!embed_topology(topo, rng, pos)) {
            ++out.skipped;
            continue;
        }
        Molecule embedded(topo.atomic_numbers, pos,
                          "mol" + std::to_string(refs.size()));

        ToyPotential pot = ToyPotential::from_geometry(embedded, pes_params);
        MinimizeResult min = minimize(pot, embedded, 1e-6, 20000);
        if (!min.converged) {
            ++out.skipped;
            continue;
        }
        // The reference must sit on its own topology's surface.
        ToyPotential check = ToyPotential::from_geometry(min.structure, pes_params);
        if (check.bonded_pairs() != pot.bonded_pairs()) {
            ++out.skipped;
            continue;
        }
        refs.push_back({min.structure, pot, pot.bonded_pairs(), min.energy});
    }

    double jitter = config.jitter;
    std::vector<Molecule> starts;
    std::vector<double> start_energies;
    double median = 0.0;

    for (int retry = 0; retry <= config.max_band_retries; ++retry) {
        starts.clear();
        start_energies.clear();
        std::vector<double> rmsds;

        for (std::size_t i = 0; i < refs.size(); ++i) {
            const std::uint64_t jitter_seed =
                config.seed ^ (0x5EEDu + 1000003ULL * (i + 1) + 7919ULL * static_cast<std::uint64_t>(retry));
            Molecule start = refs[i].reference;
            double energy = refs[i].energy;
            // A plain jitter draw occasionally breaks the topology; retry
            // with follow-up seeds before giving up on perturbing this one.
            for (int draw = 0; draw < 6; ++draw) {
                ToyPotential perturbed =
                    refs[i].potential.jittered(jitter, jitter_seed + static_cast<std::uint64_t>(draw));
                MinimizeResult min = minimize(perturbed, refs[i].reference, 1e-6, 20000);
                if (!min.converged) continue;
                ToyPotential topo_check = ToyPotential::from_geometry(min.structure,
                                                                      ToyPotentialParams{});
                if (topo_check.bonded_pairs() != refs[i].topology) continue;
                const double r = plain_rmsd_aligned(min.structure, refs[i].reference);
                if (r <= 1e-10) continue;
                start = min.structure;
                energy = refs[i].potential.energy(min.structure);
                break;
            }
            start.set_tag(refs[i].reference.tag());
            starts.push_back(start);
            start_energies.push_back(energy);
            rmsds.push_back(plain_rmsd_aligned(start, refs[i].reference));
        }

        std::vector<double> sorted = rmsds;
        std::sort(sorted.begin(), sorted.end());
        median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
        if (median >= config.rmsd_band_lo && median <= config.rmsd_band_hi) break;
        jitter *= median < config.rmsd_band_lo ? 1.6 : 0.6;
    }

    out.jitter_used = jitter;
    out.median_rmsd = median;
    for (std::size_t i = 0; i < refs.size(); ++i) {
        out.references.push_back(refs[i].reference);
        out.reference_energies.push_back(refs[i].energy);
    }
    out.starts = std::move(starts);
    out.start_energies = std::move(start_energies);
    return out;
}

} // namespace rdsm
