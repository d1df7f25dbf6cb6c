#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "trpnet/dipole.hpp"

namespace trpnet {

/// The nine indole ring atoms, in canonical order.
inline const std::vector<std::string>& indole_ring_atoms() {
    static const std::vector<std::string> names = {
        "CG", "CD1", "CD2", "NE1", "CE2", "CE3", "CZ2", "CZ3", "CH2"};
    return names;
}

/// One tryptophan residue with a complete, coplanar indole ring.
struct TrpResidue {
    int residue_id = 0;
    std::string chain_id;
    std::map<std::string, Eigen::Vector3d> ring_atoms; ///< name -> position, Angstrom

    const Eigen::Vector3d& atom(const std::string& name) const;
    bool has_all_ring_atoms() const;
    /// RMS distance of the nine ring atoms from their best-fit plane, Angstrom.
    double planarity_rms() const;
};

/// Result of scanning a structure file for tryptophans.
struct TrpExtraction {
    std::vector<TrpResidue> residues;       ///< file order
    std::size_t skipped = 0;                ///< residues dropped (incomplete / non-planar ring)
    std::vector<std::string> warnings;      ///< one message per skipped residue
};

/// Scans fixed-column ATOM records for TRP residues with a complete indole
/// ring. Residues missing ring atoms (or failing the 0.1 A coplanarity gate)
/// are skipped and counted, not imputed. Alternate conformers: first wins.
///
/// Throws ParseError (with line number) on malformed records and
/// EmptyResultError when no usable residue survives.
TrpExtraction parse_pdb_trp(std::string_view text,
                            const std::optional<std::set<std::string>>& chain_filter = std::nullopt);

/// Places the 1La transition dipole of one residue.
///
/// The dipole direction lies in the best-fit indole plane at `angle_deg`
/// (counterclockwise about the plane normal, which is oriented right-handed
/// over the atom order CG, CD1, NE1) from the in-plane projection of the
/// CG -> NE1 axis. Position is the anchor atom (default CD2).
Dipole derive_dipole(const TrpResidue& residue, double angle_deg,
                     const std::string& anchor = "CD2",
                     double mu_squared = 181224.0);

} // namespace trpnet
