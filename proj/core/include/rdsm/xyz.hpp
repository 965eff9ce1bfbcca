#ifndef RDSM_XYZ_HPP
#define RDSM_XYZ_HPP

#include "rdsm/molecule.hpp"

#include <string>
#include <vector>

namespace rdsm {

/// Parse a standard XYZ document (count line, comment line, N element lines);
/// multiple concatenated frames allowed. The comment line is preserved as the
/// molecule tag. Throws ParseError with a line number on malformed input.
std::vector<Molecule> parse_xyz(const std::string& text);

/// Serialize molecules as concatenated XYZ frames. Positions are written with
/// enough digits that parse_xyz(write_xyz(m)) reproduces them to 1e-6 A.
std::string write_xyz(const std::vector<Molecule>& mols);

std::vector<Molecule> read_xyz_file(const std::string& path);
void write_xyz_file(const std::string& path, const std::vector<Molecule>& mols);

} // namespace rdsm

#endif
