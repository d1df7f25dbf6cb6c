#pragma once

namespace trpnet {

/// Speed of light in cm/s; converts widths in cm^-1 to rates via 2*pi*c.
inline constexpr double kSpeedOfLightCmPerS = 2.99792458e10;

/// Two pi, spelled once.
inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Physical parameters of the Trp 1La transition and its environment.
///
/// All energies and rates are in cm^-1, lengths in Angstrom. The defaults are
/// the published reference values; gamma and k0 are kept as printed rather
/// than rederived from each other (they are mutually consistent to ~0.5%).
struct PhysicalConstants {
    double lambda0 = 2800.0;      ///< excitation wavelength, Angstrom (280 nm)
    double e0 = 35714.0;          ///< site excitation energy, cm^-1
    double k0 = 2.24e-3;          ///< angular wavenumber, 1/Angstrom
    double mu_squared = 181224.0; ///< squared transition dipole, A^3 cm^-1
    double gamma = 2.73e-3;       ///< single-emitter radiative width, cm^-1
    double gamma_nr = 0.0183;     ///< single-emitter non-radiative width, cm^-1
    double k_b = 0.695;           ///< Boltzmann constant, cm^-1 / K

    /// gamma recomputed from 4 mu^2 k0^3 / 3; used by self-consistency checks.
    double gamma_from_formula() const {
        return 4.0 / 3.0 * mu_squared * k0 * k0 * k0;
    }
};

/// Lifetime in seconds of a resonance of width gamma_cm1 (tau = 1/(2 pi c Gamma)).
inline double lifetime_seconds(double gamma_cm1) {
    return 1.0 / (kTwoPi * kSpeedOfLightCmPerS * gamma_cm1);
}

/// Rate in 1/s corresponding to a width in cm^-1.
inline double rate_per_second(double gamma_cm1) {
    return kTwoPi * kSpeedOfLightCmPerS * gamma_cm1;
}

} // namespace trpnet
