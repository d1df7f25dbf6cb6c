#pragma once

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>

#include <Eigen/Core>

#include "trpnet/constants.hpp"
#include "trpnet/hamiltonian.hpp"

namespace trpnet {

/// Complex resonances E_j - i Gamma_j / 2 of an effective Hamiltonian,
/// sorted ascending in E_j (ties broken by descending Gamma_j). Right
/// eigenvectors, when retained, are c-normalized: v^T v = 1 (plain
/// transpose, no conjugation).
struct ResonanceSpectrum {
    Eigen::VectorXd energies; ///< E_j, cm^-1
    Eigen::VectorXd widths;   ///< Gamma_j, cm^-1
    std::optional<Eigen::MatrixXcd> right_vectors; ///< column j = |E_j^R>
    PhysicalConstants constants;

    Eigen::Index size() const noexcept { return energies.size(); }
};

/// Dense non-Hermitian eigendecomposition of the effective Hamiltonian.
///
/// Enforces the trace sum rules (sum E_j = sum eps_n, sum Gamma_j = N gamma,
/// both to 1e-8 relative) and, when vectors are kept, the c-normalization and
/// eigenpair residual bounds. Near-defective pairs (|v^T v| < 1e-12) raise
/// QuasiDegeneracyError rather than being silently re-orthogonalized.
ResonanceSpectrum diagonalize(const EffectiveHamiltonian& h, bool keep_vectors = false);

/// Headline collective-emission numbers of one spectrum.
struct EnhancementMetrics {
    double max_ratio = 0.0;       ///< max_j Gamma_j / gamma
    double max_per_n = 0.0;       ///< max_j Gamma_j / (N gamma)
    double min_ratio = 0.0;       ///< min_j Gamma_j / gamma
    double tau_super_s = 0.0;     ///< 1 / (2 pi c max Gamma)
    double tau_sub_s = 0.0;       ///< 1 / (2 pi c min Gamma)
    double e_offset_of_max = 0.0; ///< E_{argmax Gamma} - E0, cm^-1
};

EnhancementMetrics enhancement_metrics(const ResonanceSpectrum& s);

/// Survival probability P(t) = sum_j C_j^R C_j^L exp(-Gamma_j 2 pi c t) of an
/// initial state under the non-unitary evolution, evaluated at `times_s`
/// (seconds). Vectors must be retained in `s`; `initial` must be normalized
/// under the standard inner product.
std::vector<double> survival_probability(const ResonanceSpectrum& s,
                                         const Eigen::VectorXcd& initial,
                                         std::span<const double> times_s);

/// Site-basis convenience overload: excitation starts fully on `site`.
std::vector<double> survival_probability(const ResonanceSpectrum& s, Eigen::Index site,
                                         std::span<const double> times_s);

/// CSV export: header `j,E_minus_E0_cm1,Gamma_over_gamma`, one row per
/// eigenvalue in spectrum order, full-precision decimals.
void write_spectrum_csv(const ResonanceSpectrum& s, std::ostream& out);
void write_spectrum_csv(const ResonanceSpectrum& s, const std::filesystem::path& path);

} // namespace trpnet
