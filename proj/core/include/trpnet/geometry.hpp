#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "trpnet/dipole.hpp"

namespace trpnet {

enum class GeometryKind { Microtubule, Centriole, AxonemeIdealized, Bundle };

std::string to_string(GeometryKind kind);
GeometryKind geometry_kind_from_string(const std::string& name);

/// What to build and from which unit cell.
struct GeometrySpec {
    GeometryKind kind = GeometryKind::Microtubule;
    int n_spirals = 1;          ///< layers along the longitudinal x axis, 8 nm each
    int n_mt = 0;               ///< Bundle only; centered-hexagonal count
    UnitCell unit_cell;
};

/// An assembled emitter network. Ordering is deterministic:
/// microtubule-major where applicable, then spiral, dimer, unit-cell order.
struct DipoleLattice {
    std::vector<Dipole> dipoles;
    GeometrySpec spec;
    double length_nm = 0.0;

    std::size_t size() const noexcept { return dipoles.size(); }
};

/// The rigid-motion recipe that stacks tubulin dimers into a microtubule.
/// Angles are exact decimal degrees; yz-plane rotations are right-handed
/// about +x. The 11.7 degree tilt pivots on the beta-Trp346 CD2 site, which
/// is row `tilt_anchor_index` of the canonical cell.
struct MicrotubuleProtocol {
    double surface_align_deg = -55.38;
    double dimer_tilt_deg = 11.7;
    int tilt_anchor_index = 6;
    double post_tilt_shift_z_nm = 0.3;
    double radial_shift_y_nm = 11.2;
    double dimer_step_deg = -27.69; ///< kept as printed, not 360/13
    double dimer_step_x_nm = 0.9;
    int dimers_per_spiral = 13;
    double spiral_pitch_nm = 8.0;
};

DipoleLattice build_microtubule(const UnitCell& cell, int n_spirals,
                                const MicrotubuleProtocol& protocol = {});

/// Nine microtubule triplets at 40 degree spacing; triplet members centered
/// at (y,z) = (87, -22.5167), (100, 0), (113, 22.5167) nm.
DipoleLattice build_centriole(const UnitCell& cell, int n_spirals,
                              const MicrotubuleProtocol& protocol = {});

/// One central microtubule pair plus nine pairs at radius 98 nm, 40 degrees
/// apart; members of a pair sit 26 nm apart center-to-center.
DipoleLattice build_axoneme(const UnitCell& cell, int n_spirals,
                            const MicrotubuleProtocol& protocol = {});

/// Hexagonal bundle: triangular lattice of microtubules, nearest-neighbor
/// spacing 50 nm, filled ring-by-ring around a central one. `n_mt` must be a
/// centered-hexagonal count (7, 19, 37, 61, 91, 127, 169, 217, ...).
DipoleLattice build_bundle(const UnitCell& cell, int n_mt, int n_spirals,
                           const MicrotubuleProtocol& protocol = {});

bool is_centered_hexagonal(int n);

/// First `n` dipoles of a lattice, in lattice order. Used for yield-vs-N
/// sweeps that resolve single chromophores below one full layer.
DipoleLattice truncate_lattice(const DipoleLattice& lattice, std::size_t n);

/// Text export: `# lattice v1 kind=<...> n_spirals=<...> [n_mt=<...>]`
/// followed by unit-cell rows (x y z ux uy uz, Angstrom).
void write_lattice(const DipoleLattice& lattice, std::ostream& out);
void write_lattice(const DipoleLattice& lattice, const std::filesystem::path& path);

} // namespace trpnet
