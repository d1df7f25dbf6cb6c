#include "trpnet/geometry.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <Eigen/Geometry>

#include "trpnet/constants.hpp"
#include "trpnet/errors.hpp"

namespace trpnet {

namespace {

constexpr double kNmToAngstrom = 10.0;

double deg_to_rad(double deg) { return deg * kTwoPi / 360.0; }

/// Right-handed rotation about +x ("yz-plane" rotation in the assembly
/// protocols): y' = y cos - z sin, z' = y sin + z cos.
Eigen::Matrix3d rot_x(double deg) {
    const double c = std::cos(deg_to_rad(deg));
    const double s = std::sin(deg_to_rad(deg));
    Eigen::Matrix3d r;
    r << 1, 0, 0,
         0, c, -s,
         0, s, c;
    return r;
}

std::vector<Dipole> transformed(const std::vector<Dipole>& dipoles,
                                const Eigen::Matrix3d& rotation,
                                const Eigen::Vector3d& translation) {
    std::vector<Dipole> out;
    out.reserve(dipoles.size());
    for (const auto& d : dipoles) {
        Dipole t = d;
        t.position = rotation * d.position + translation;
        t.orientation = (rotation * d.orientation).normalized();
        out.push_back(t);
    }
    return out;
}

/// One tubulin dimer placed per the microtubule protocol, before the
/// per-dimer ring rotation: surface alignment, tilt about the anchor Trp,
/// then the z and y shifts that set the wall radius.
std::vector<Dipole> seed_dimer(const UnitCell& cell, const MicrotubuleProtocol& p) {
    if (p.tilt_anchor_index < 0 ||
        static_cast<std::size_t>(p.tilt_anchor_index) >= cell.dipoles.size()) {
        throw DomainError("tilt anchor index " + std::to_string(p.tilt_anchor_index) +
                          " outside unit cell of size " + std::to_string(cell.size()));
    }

    const Eigen::Matrix3d align = rot_x(p.surface_align_deg);
    std::vector<Dipole> dimer = transformed(cell.dipoles, align, Eigen::Vector3d::Zero());

    const Eigen::Vector3d anchor = dimer[p.tilt_anchor_index].position;
    const Eigen::Matrix3d tilt = rot_x(p.dimer_tilt_deg);
    dimer = transformed(dimer, tilt, anchor - tilt * anchor);

    const Eigen::Vector3d shift(0.0, p.radial_shift_y_nm * kNmToAngstrom,
                                p.post_tilt_shift_z_nm * kNmToAngstrom);
    for (auto& d : dimer) d.position += shift;
    return dimer;
}

std::vector<Dipole> microtubule_dipoles(const UnitCell& cell, int n_spirals,
                                        const MicrotubuleProtocol& p) {
    if (n_spirals <= 0) throw DomainError("n_spirals must be positive");

    const std::vector<Dipole> dimer = seed_dimer(cell, p);

    // Precompute the 13 in-ring placements; spirals reuse them shifted in x.
    std::vector<std::vector<Dipole>> ring(p.dimers_per_spiral);
    for (int d = 0; d < p.dimers_per_spiral; ++d) {
        const Eigen::Matrix3d rot = rot_x(d * p.dimer_step_deg);
        const Eigen::Vector3d step(d * p.dimer_step_x_nm * kNmToAngstrom, 0.0, 0.0);
        ring[d] = transformed(dimer, rot, step);
    }

    std::vector<Dipole> dipoles;
    dipoles.reserve(static_cast<std::size_t>(n_spirals) * p.dimers_per_spiral *
                    cell.dipoles.size());
    for (int s = 0; s < n_spirals; ++s) {
        const double x_shift = s * p.spiral_pitch_nm * kNmToAngstrom;
        for (int d = 0; d < p.dimers_per_spiral; ++d) {
            for (const auto& dip : ring[d]) {
                Dipole placed = dip;
                placed.position.x() += x_shift;
                dipoles.push_back(placed);
            }
        }
    }
    return dipoles;
}

void append_translated(std::vector<Dipole>& out, const std::vector<Dipole>& mt,
                       double y_nm, double z_nm) {
    const Eigen::Vector3d shift(0.0, y_nm * kNmToAngstrom, z_nm * kNmToAngstrom);
    for (const auto& d : mt) {
        Dipole placed = d;
        placed.position += shift;
        out.push_back(placed);
    }
}

void append_rotated(std::vector<Dipole>& out, const std::vector<Dipole>& group,
                    double deg) {
    const Eigen::Matrix3d rot = rot_x(deg);
    for (const auto& d : group) {
        Dipole placed = d;
        placed.position = rot * d.position;
        placed.orientation = (rot * d.orientation).normalized();
        out.push_back(placed);
    }
}

} // namespace

std::string to_string(GeometryKind kind) {
    switch (kind) {
        case GeometryKind::Microtubule: return "mt";
        case GeometryKind::Centriole: return "centriole";
        case GeometryKind::AxonemeIdealized: return "axoneme";
        case GeometryKind::Bundle: return "bundle";
    }
    throw DomainError("unknown geometry kind");
}

GeometryKind geometry_kind_from_string(const std::string& name) {
    if (name == "mt") return GeometryKind::Microtubule;
    if (name == "centriole") return GeometryKind::Centriole;
    if (name == "axoneme") return GeometryKind::AxonemeIdealized;
    if (name == "bundle") return GeometryKind::Bundle;
    throw DomainError("unknown geometry kind '" + name + "'");
}

DipoleLattice build_microtubule(const UnitCell& cell, int n_spirals,
                                const MicrotubuleProtocol& protocol) {
    DipoleLattice lattice;
    lattice.dipoles = microtubule_dipoles(cell, n_spirals, protocol);
    lattice.spec = {GeometryKind::Microtubule, n_spirals, 0, cell};
    lattice.length_nm = n_spirals * protocol.spiral_pitch_nm;
    return lattice;
}

DipoleLattice build_centriole(const UnitCell& cell, int n_spirals,
                              const MicrotubuleProtocol& protocol) {
    if (n_spirals <= 0) throw DomainError("n_spirals must be positive");
    const std::vector<Dipole> mt = microtubule_dipoles(cell, n_spirals, protocol);

    // One triplet: members offset from the triplet center line along the
    // 60-degree blade direction, 26 nm apart.
    std::vector<Dipole> triplet;
    triplet.reserve(3 * mt.size());
    append_translated(triplet, mt, 87.0, -22.5167);
    append_translated(triplet, mt, 100.0, 0.0);
    append_translated(triplet, mt, 113.0, 22.5167);

    DipoleLattice lattice;
    lattice.dipoles.reserve(9 * triplet.size());
    for (int k = 0; k < 9; ++k) append_rotated(lattice.dipoles, triplet, k * 40.0);
    lattice.spec = {GeometryKind::Centriole, n_spirals, 0, cell};
    lattice.length_nm = n_spirals * protocol.spiral_pitch_nm;
    return lattice;
}

DipoleLattice build_axoneme(const UnitCell& cell, int n_spirals,
                            const MicrotubuleProtocol& protocol) {
    if (n_spirals <= 0) throw DomainError("n_spirals must be positive");
    const std::vector<Dipole> mt = microtubule_dipoles(cell, n_spirals, protocol);

    DipoleLattice lattice;
    lattice.dipoles.reserve(20 * mt.size());

    // Central pair along y.
    append_translated(lattice.dipoles, mt, -13.0, 0.0);
    append_translated(lattice.dipoles, mt, 13.0, 0.0);

    // Nine outer pairs at radius 98 nm, members offset tangentially.
    std::vector<Dipole> pair;
    pair.reserve(2 * mt.size());
    append_translated(pair, mt, 98.0, -13.0);
    append_translated(pair, mt, 98.0, 13.0);
    for (int k = 0; k < 9; ++k) append_rotated(lattice.dipoles, pair, k * 40.0);

    lattice.spec = {GeometryKind::AxonemeIdealized, n_spirals, 0, cell};
    lattice.length_nm = n_spirals * protocol.spiral_pitch_nm;
    return lattice;
}

bool is_centered_hexagonal(int n) {
    for (int n_mt : {7, 19, 37, 61, 91, 127, 169, 217})
        if (n == n_mt) return true;
    return false;
}

DipoleLattice build_bundle(const UnitCell& cell, int n_mt, int n_spirals,
                           const MicrotubuleProtocol& protocol) {
    if (n_spirals <= 0) throw DomainError("n_spirals must be positive");
    if (!is_centered_hexagonal(n_mt)) {
        throw DomainError("bundle size " + std::to_string(n_mt) +
                          " is not a supported centered-hexagonal count");
    }
    const std::vector<Dipole> mt = microtubule_dipoles(cell, n_spirals, protocol);

    constexpr double spacing_nm = 50.0;
    // Axial hex coordinates; corner i+1 minus corner i equals corner i+2,
    // which makes the ring walk a corner-plus-steps enumeration.
    static const int corners[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};

    DipoleLattice lattice;
    lattice.dipoles.reserve(static_cast<std::size_t>(n_mt) * mt.size());
    append_translated(lattice.dipoles, mt, 0.0, 0.0);

    int placed = 1;
    for (int ring = 1; placed < n_mt; ++ring) {
        for (int i = 0; i < 6; ++i) {
            const int(&c)[2] = corners[i];
            const int(&step)[2] = corners[(i + 2) % 6];
            for (int k = 0; k < ring; ++k) {
                const int q = ring * c[0] + k * step[0];
                const int r = ring * c[1] + k * step[1];
                const double y = spacing_nm * (q + 0.5 * r);
                const double z = spacing_nm * (std::sqrt(3.0) / 2.0 * r);
                append_translated(lattice.dipoles, mt, y, z);
                ++placed;
            }
        }
    }

    lattice.spec = {GeometryKind::Bundle, n_spirals, n_mt, cell};
    lattice.length_nm = n_spirals * protocol.spiral_pitch_nm;
    return lattice;
}

DipoleLattice truncate_lattice(const DipoleLattice& lattice, std::size_t n) {
    if (n == 0 || n > lattice.size()) {
        throw DomainError("truncation size " + std::to_string(n) +
                          " outside lattice of " + std::to_string(lattice.size()));
    }
    DipoleLattice prefix = lattice;
    prefix.dipoles.resize(n);
    return prefix;
}

void write_lattice(const DipoleLattice& lattice, std::ostream& out) {
    out << "# lattice v1 kind=" << to_string(lattice.spec.kind)
        << " n_spirals=" << lattice.spec.n_spirals;
    if (lattice.spec.kind == GeometryKind::Bundle)
        out << " n_mt=" << lattice.spec.n_mt;
    out << '\n';
    char buf[160];
    for (const auto& d : lattice.dipoles) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g %.17g %.17g %.17g\n",
                      d.position.x(), d.position.y(), d.position.z(),
                      d.orientation.x(), d.orientation.y(), d.orientation.z());
        out << buf;
    }
}

void write_lattice(const DipoleLattice& lattice, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
    write_lattice(lattice, out);
}

} // namespace trpnet
