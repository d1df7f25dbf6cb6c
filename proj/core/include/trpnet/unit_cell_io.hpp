#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "trpnet/dipole.hpp"

namespace trpnet {

// Unit-cell text format, one file per cell:
//   # unitcell v1 mu2=<mu_squared>
//   x y z ux uy uz
//   ...
// Whitespace-separated full-precision decimals, positions in Angstrom,
// orientations unit vectors. All dipoles in one file share mu2.

/// Serializes a cell. Every dipole must carry the same mu_squared.
void write_unit_cell(const UnitCell& cell, std::ostream& out);
void write_unit_cell(const UnitCell& cell, const std::filesystem::path& path);
std::string unit_cell_to_string(const UnitCell& cell);

/// Parses a cell; throws FormatError on header mismatch, wrong column count,
/// or orientation norms off unity by more than 1e-9. Orientations are
/// renormalized after that gate so downstream invariants hold exactly.
UnitCell read_unit_cell(std::istream& in, const std::string& label = "");
UnitCell read_unit_cell(const std::filesystem::path& path);
UnitCell unit_cell_from_string(const std::string& text, const std::string& label = "");

} // namespace trpnet
