#ifndef RDSM_ELEMENTS_HPP
#define RDSM_ELEMENTS_HPP

#include <string>

namespace rdsm {

// Element data for the supported set {H, C, N, O, F}. Covalent radii are
// pinned in code so q values are bit-stable across machines:
//   H 0.31, C 0.76, N 0.71, O 0.66, F 0.57 (Angstrom)
// Masses are standard atomic weights in unified atomic mass units.

bool element_supported(int atomic_number);

/// Covalent radius in Angstrom. Throws Error on unsupported element.
double covalent_radius(int atomic_number);

/// Atomic mass in unified atomic mass units. Throws Error on unsupported element.
double atomic_mass(int atomic_number);

/// "H", "C", ... Throws Error on unsupported element.
const std::string& element_symbol(int atomic_number);

/// Inverse of element_symbol; returns 0 when the symbol is unknown.
int atomic_number_of(const std::string& symbol);

} // namespace rdsm

#endif
