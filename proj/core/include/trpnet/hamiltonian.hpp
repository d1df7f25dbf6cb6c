#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "trpnet/constants.hpp"
#include "trpnet/dipole.hpp"
#include "trpnet/geometry.hpp"

namespace trpnet {

/// Static on-site disorder: energies drawn i.i.d. uniform on
/// [e0 - width/2, e0 + width/2] from a counter-based stream, so realization
/// `realization_index` of a given seed is reproducible site-by-site
/// independent of evaluation order.
struct DisorderConfig {
    double width = 0.0; ///< cm^-1, >= 0
    std::uint64_t seed = 0;
    std::uint64_t realization_index = 0;
};

/// Site energy of site `n` under a disorder configuration, cm^-1.
/// width == 0 returns e0 exactly.
double disordered_site_energy(double e0, const DisorderConfig& disorder, std::uint64_t n);

struct AssemblyOptions {
    std::size_t max_dim = 20000; ///< dense-storage cap; exceeding it is a CapacityError
};

/// Real coherent coupling Omega_mn between two dipoles, cm^-1.
double coupling_omega(const Dipole& m, const Dipole& n, const PhysicalConstants& c);

/// Radiative cross-damping Upsilon_mn between two dipoles, cm^-1.
/// Upsilon -> gamma as the pair separation vanishes for parallel dipoles.
double coupling_upsilon(const Dipole& m, const Dipole& n, const PhysicalConstants& c);

/// Dense complex-symmetric effective Hamiltonian in the single-excitation
/// site basis, cm^-1: diagonal eps_n - i gamma/2, off-diagonal
/// Omega_mn - i Upsilon_mn / 2.
struct EffectiveHamiltonian {
    Eigen::MatrixXcd entries;
    PhysicalConstants constants;
    Eigen::VectorXd site_energies;

    Eigen::Index dim() const noexcept { return entries.rows(); }
};

EffectiveHamiltonian assemble(std::span<const Dipole> dipoles,
                              const PhysicalConstants& c,
                              const std::optional<DisorderConfig>& disorder = std::nullopt,
                              const AssemblyOptions& options = {});

EffectiveHamiltonian assemble(const DipoleLattice& lattice,
                              const PhysicalConstants& c,
                              const std::optional<DisorderConfig>& disorder = std::nullopt,
                              const AssemblyOptions& options = {});

/// Binary matrix dump: magic "HEFF1", little-endian u64 N, then N^2 entries
/// (f64 re, f64 im) row-major, cm^-1. With `zero_diagonal_real` the real part
/// of the diagonal is written as zero (coupling-structure view).
void write_heff(const EffectiveHamiltonian& h, const std::filesystem::path& path,
                bool zero_diagonal_real = false);

} // namespace trpnet
