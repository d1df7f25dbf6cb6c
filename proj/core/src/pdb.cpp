#include "trpnet/pdb.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include <Eigen/Dense>

#include "trpnet/constants.hpp"
#include "trpnet/errors.hpp"

namespace trpnet {

namespace {

std::string strip(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_coord(std::string_view field, std::size_t line_no, const char* what) {
    const std::string token = strip(field);
    double value = 0.0;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (token.empty() || ec != std::errc{} || ptr != last || !std::isfinite(value)) {
        throw ParseError(std::string("non-numeric ") + what + " coordinate '" +
                             token + "'",
                         line_no);
    }
    return value;
}

/// Best-fit plane through a point set: centroid + unit normal (smallest
/// principal axis). Returns the middle singular value as well so callers can
/// detect rank-deficient (collinear) sets.
struct PlaneFit {
    Eigen::Vector3d centroid;
    Eigen::Vector3d normal;
    double rms;          // RMS out-of-plane distance
    double mid_spread;   // sqrt of middle covariance eigenvalue
};

PlaneFit fit_plane(const std::map<std::string, Eigen::Vector3d>& atoms) {
    Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
    for (const auto& [name, p] : atoms) centroid += p;
    centroid /= static_cast<double>(atoms.size());

    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (const auto& [name, p] : atoms) {
        const Eigen::Vector3d d = p - centroid;
        cov += d * d.transpose();
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(cov);
    PlaneFit fit;
    fit.centroid = centroid;
    fit.normal = es.eigenvectors().col(0); // smallest eigenvalue
    fit.rms = std::sqrt(std::max(0.0, es.eigenvalues()(0)) /
                        static_cast<double>(atoms.size()));
    fit.mid_spread = std::sqrt(std::max(0.0, es.eigenvalues()(1)));
    return fit;
}

} // namespace

const Eigen::Vector3d& TrpResidue::atom(const std::string& name) const {
    auto it = ring_atoms.find(name);
    if (it == ring_atoms.end()) {
        throw LookupError("atom '" + name + "' not present in residue " +
                          chain_id + "/" + std::to_string(residue_id));
    }
    return it->second;
}

bool TrpResidue::has_all_ring_atoms() const {
    for (const auto& name : indole_ring_atoms())
        if (!ring_atoms.contains(name)) return false;
    return true;
}

double TrpResidue::planarity_rms() const {
    return fit_plane(ring_atoms).rms;
}

TrpExtraction parse_pdb_trp(std::string_view text,
                            const std::optional<std::set<std::string>>& chain_filter) {
    // Accumulate ring atoms per (chain, resSeq, iCode); first conformer wins.
    struct PendingResidue {
        TrpResidue residue;
        std::size_t first_line = 0;
    };
    std::vector<PendingResidue> order;                   // file order
    std::map<std::string, std::size_t> index_of;         // key -> order slot

    const auto& ring_names = indole_ring_atoms();

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
        ++line_no;
        pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;

        if (!line.starts_with("ATOM")) continue; // all other record types ignored
        if (line.size() < 54) {
            throw ParseError("ATOM record shorter than the fixed coordinate columns",
                             line_no);
        }

        const std::string res_name = strip(line.substr(17, 3));
        if (res_name != "TRP") continue;

        const std::string atom_name = strip(line.substr(12, 4));
        if (std::find(ring_names.begin(), ring_names.end(), atom_name) ==
            ring_names.end())
            continue;

        const std::string chain = strip(line.substr(21, 1));
        if (chain_filter && !chain_filter->contains(chain)) continue;

        const std::string seq_str = strip(line.substr(22, 4));
        int res_seq = 0;
        {
            auto [ptr, ec] =
                std::from_chars(seq_str.data(), seq_str.data() + seq_str.size(), res_seq);
            if (seq_str.empty() || ec != std::errc{} ||
                ptr != seq_str.data() + seq_str.size()) {
                throw ParseError("non-numeric residue sequence number '" + seq_str + "'",
                                 line_no);
            }
        }
        const char icode = line.size() > 26 ? line[26] : ' ';

        Eigen::Vector3d xyz(parse_coord(line.substr(30, 8), line_no, "x"),
                            parse_coord(line.substr(38, 8), line_no, "y"),
                            parse_coord(line.substr(46, 8), line_no, "z"));

        const std::string key = chain + "|" + std::to_string(res_seq) + "|" + icode;
        auto [it, inserted] = index_of.try_emplace(key, order.size());
        if (inserted) {
            PendingResidue pending;
            pending.residue.chain_id = chain;
            pending.residue.residue_id = res_seq;
            pending.first_line = line_no;
            order.push_back(std::move(pending));
        }
        auto& atoms = order[it->second].residue.ring_atoms;
        atoms.try_emplace(atom_name, xyz); // first conformer wins
    }

    TrpExtraction result;
    for (auto& pending : order) {
        auto& residue = pending.residue;
        const std::string tag = residue.chain_id + "/" + std::to_string(residue.residue_id);
        if (!residue.has_all_ring_atoms()) {
            ++result.skipped;
            result.warnings.push_back("TRP " + tag + ": incomplete indole ring, skipped");
            continue;
        }
        if (residue.planarity_rms() > 0.1) {
            ++result.skipped;
            result.warnings.push_back("TRP " + tag + ": ring not coplanar, skipped");
            continue;
        }
        result.residues.push_back(std::move(residue));
    }

    if (result.residues.empty()) {
        throw EmptyResultError("no usable TRP residues found (" +
                               std::to_string(result.skipped) + " skipped)");
    }
    return result;
}

Dipole derive_dipole(const TrpResidue& residue, double angle_deg,
                     const std::string& anchor, double mu_squared) {
    if (!residue.has_all_ring_atoms()) {
        throw GeometryError("residue " + residue.chain_id + "/" +
                            std::to_string(residue.residue_id) +
                            " lacks a complete indole ring");
    }
    const Eigen::Vector3d anchor_pos = residue.atom(anchor);

    const PlaneFit fit = fit_plane(residue.ring_atoms);
    if (fit.mid_spread < 1e-6) {
        throw GeometryError("degenerate plane fit for residue " + residue.chain_id +
                            "/" + std::to_string(residue.residue_id));
    }

    // Orient the normal right-handed over (CG, CD1, NE1).
    Eigen::Vector3d normal = fit.normal;
    const Eigen::Vector3d cg = residue.atom("CG");
    const Eigen::Vector3d cd1 = residue.atom("CD1");
    const Eigen::Vector3d ne1 = residue.atom("NE1");
    const Eigen::Vector3d winding = (cd1 - cg).cross(ne1 - cd1);
    if (normal.dot(winding) < 0.0) normal = -normal;

    // Reference axis: CG -> NE1 projected into the plane.
    Eigen::Vector3d axis = ne1 - cg;
    axis -= axis.dot(normal) * normal;
    const double axis_norm = axis.norm();
    if (axis_norm < 1e-9) {
        throw GeometryError("CG->NE1 axis is normal to the ring plane in residue " +
                            residue.chain_id + "/" + std::to_string(residue.residue_id));
    }
    axis /= axis_norm;

    const double theta = angle_deg * kTwoPi / 360.0;
    Eigen::Vector3d direction =
        std::cos(theta) * axis + std::sin(theta) * normal.cross(axis);
    direction.normalize();

    Dipole dipole;
    dipole.position = anchor_pos;
    dipole.orientation = direction;
    dipole.mu_squared = mu_squared;
    return dipole;
}

} // namespace trpnet
