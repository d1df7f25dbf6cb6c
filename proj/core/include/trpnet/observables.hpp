#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "trpnet/constants.hpp"
#include "trpnet/geometry.hpp"
#include "trpnet/hamiltonian.hpp"
#include "trpnet/spectrum.hpp"

namespace trpnet {

/// Thermal-equilibrium fluorescence quantum yield of one spectrum.
struct ThermalReport {
    double temperature_k = 0.0;
    double k_b_t = 0.0;     ///< cm^-1
    double gamma_th = 0.0;  ///< Boltzmann-averaged radiative width, cm^-1
    double qy = 0.0;        ///< gamma_th / (gamma_th + gamma_nr)
    double partition = 0.0; ///< Z, computed with energies shifted by min E_j
};

/// <Gamma>_th = sum_j Gamma_j exp(-E_j/kT) / Z with the non-radiative channel
/// held at the single-emitter rate. Energies are shifted by min_j E_j before
/// exponentiation (shift-invariant weights, overflow-safe).
ThermalReport thermal_qy(const ResonanceSpectrum& s, double temperature_k,
                         double gamma_nr);

enum class Lineshape { Lorentzian, Gaussian };

/// A sampled intensity curve. `normalization` is the factor that scaled the
/// raw sum to peak value 1 (A for absorption, A' for fluorescence).
struct SpectrumCurve {
    std::vector<double> grid;   ///< strictly increasing abscissae
    std::vector<double> values; ///< non-negative intensities
    Lineshape lineshape = Lineshape::Lorentzian;
    double sigma = 0.0;         ///< broadening, cm^-1
    double normalization = 1.0;
};

/// A(E) = A sum_j Gamma_j D_j(E), peak-normalized. D_j is a Lorentzian
/// sigma/((E-E_j)^2 + sigma^2) or a Gaussian exp(-(E-E_j)^2 / 2 sigma^2).
SpectrumCurve absorption_curve(const ResonanceSpectrum& s, double sigma,
                               Lineshape shape, std::vector<double> grid);

/// I(E) = A' sum_j (exp(-E_j/kT)/Z) Gamma_j D_j(E), peak-normalized.
SpectrumCurve fluorescence_curve(const ResonanceSpectrum& s, double sigma,
                                 Lineshape shape, double temperature_k,
                                 std::vector<double> grid);

/// Ensemble statistics at one disorder strength.
struct DisorderStats {
    double width = 0.0; ///< W, cm^-1
    int n_realizations = 0;
    double mean_qy = 0.0;
    double std_qy = 0.0;
    double mean_max_ratio = 0.0;
    double std_max_ratio = 0.0;
    /// Alternative estimator: QY of the realization-averaged <Gamma>_th.
    /// Reported alongside the mean of per-realization yields; the two agree
    /// closely for the ensembles studied here.
    double qy_of_mean_gamma = 0.0;
};

/// Assembles and diagonalizes `n_realizations` disordered Hamiltonians per
/// disorder strength (counter-based streams keyed by `seed`), reporting
/// mean/std of the thermal yield and of max Gamma / gamma.
std::vector<DisorderStats> disorder_sweep(const DipoleLattice& lattice,
                                          std::span<const double> widths,
                                          int n_realizations, std::uint64_t seed,
                                          double temperature_k,
                                          const PhysicalConstants& c,
                                          const AssemblyOptions& options = {});

/// Fixed parameters of the closed-form enhancement fits.
struct FitParams {
    double lambda0_nm = 280.0;
    double ell0_nm = 8.0;
    int n_d = 8;  ///< Trp dipoles per tubulin dimer
    int n_s = 13; ///< dimers per spiral
    int n_0 = 7;  ///< microtubules in the smallest hexagonal bundle
    int d = 3;    ///< spatial dimension
};

enum class FitKind {
    AxonemeIdealized, ///< idealized pair-of-pairs axoneme (tubulin-dimer model)
    AxonemeDoublet,   ///< cryo-EM ciliary doublet axoneme
    Centriole,
    Bundle, ///< hexagonal axon bundle; requires n_mt
};

/// A fit prediction for max Gamma / gamma at longitudinal length `ell_nm`.
/// The closed forms go negative below ell ~ 2 n_s ell0; `valid` flags that.
struct FitPrediction {
    double value = 0.0;
    bool valid = false; ///< ell_nm >= 2 n_s ell0
};

FitPrediction fit_curve(FitKind kind, double ell_nm,
                        std::optional<int> n_mt = std::nullopt,
                        const FitParams& params = {});

/// The estimated most-superradiant centriole state and its complex
/// expectation value <phi|H|phi> under the c-product.
struct ApproxBrightState {
    std::complex<double> expectation; ///< E~ - i Gamma~ / 2, cm^-1
    int n_segments = 0;               ///< longitudinal segments per microtubule

    double energy() const { return expectation.real(); }
    double width() const { return -2.0 * expectation.imag(); }
};

/// Builds the weighted superposition of per-segment brightest microtubule
/// states, with segment weights sin(pi n / (N+1)) sin(2 pi ceil(m/3) / 9),
/// and evaluates its expectation by a direct O(n^2) double sum over the
/// pairwise kernels -- the full matrix is never materialized. The segment
/// state comes from one diagonalization of a `spirals_per_segment`-spiral
/// microtubule (default 13, i.e. 104 nm segments).
ApproxBrightState approx_centriole_state(const DipoleLattice& centriole,
                                         const PhysicalConstants& c,
                                         int spirals_per_segment = 13);

/// Standard reference formula for relative quantum-yield determination:
/// qy_s = (F_s a_r n_s^2) / (F_r a_s n_r^2) qy_r.
double reference_qy(double f_s, double f_r, double a_s, double a_r,
                    double n_s, double n_r, double qy_r);

/// Fitted scattering background b * lambda^-4 (+ optional offset c >= 0).
struct RayleighBackground {
    double b = 0.0;
    double c = 0.0;
};

struct RayleighCorrection {
    SpectrumCurve corrected;
    RayleighBackground background;
};

/// Least-squares fit of a Rayleigh-like background on `fit_range_nm`
/// (default 307-800 nm), extrapolated below the range and subtracted;
/// negative residuals clamp to zero. The curve must be sampled in the
/// wavelength domain and cover the fit range with at least 8 points.
RayleighCorrection rayleigh_correct(const SpectrumCurve& measured,
                                    std::pair<double, double> fit_range_nm = {307.0, 800.0},
                                    bool with_offset = true);

} // namespace trpnet
