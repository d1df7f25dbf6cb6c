#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

namespace trpnet {

/// One Trp 1La point emitter: position (Angstrom), unit orientation, and
/// squared transition dipole moment (A^3 cm^-1).
struct Dipole {
    Eigen::Vector3d position = Eigen::Vector3d::Zero();
    Eigen::Vector3d orientation = Eigen::Vector3d::UnitX();
    double mu_squared = 181224.0;
};

/// Where a unit cell came from: content hash of the source file plus the
/// extraction parameters that produced it. Informational only.
struct Provenance {
    std::string source_sha1;  ///< git-blob-style SHA-1 of the source bytes
    double angle_deg = 0.0;   ///< in-plane 1La angle used at extraction
    std::string anchor;       ///< anchor atom name used at extraction
};

/// Ordered dipole table for one structural repeat unit (e.g. a tubulin dimer,
/// which carries eight Trp chromophores).
struct UnitCell {
    std::vector<Dipole> dipoles;
    std::string label;
    Provenance source;

    std::size_t size() const noexcept { return dipoles.size(); }
};

} // namespace trpnet
