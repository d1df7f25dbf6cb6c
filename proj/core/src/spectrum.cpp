#include "trpnet/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include <lapacke.h>

#include "trpnet/errors.hpp"

namespace trpnet {

namespace {

/// zgeev on a column-major copy. The input is symmetric, so handing Eigen's
/// column-major storage to LAPACK needs no transposition.
void dense_eig(Eigen::MatrixXcd& a, Eigen::VectorXcd& values,
               Eigen::MatrixXcd* vectors) {
    const lapack_int n = static_cast<lapack_int>(a.rows());
    values.resize(n);
    if (vectors) vectors->resize(n, n);

    const lapack_int info = LAPACKE_zgeev(
        LAPACK_COL_MAJOR, 'N', vectors ? 'V' : 'N', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n,
        reinterpret_cast<lapack_complex_double*>(values.data()), nullptr, 1,
        vectors ? reinterpret_cast<lapack_complex_double*>(vectors->data()) : nullptr,
        vectors ? n : 1);

    if (info < 0) {
        throw NumericalError("zgeev: illegal argument " + std::to_string(-info), info);
    }
    if (info > 0) {
        throw NumericalError("zgeev failed to converge; eigenvalues beyond index " +
                                 std::to_string(info) + " are unreliable",
                             info);
    }
}

std::vector<std::size_t> quasi_degenerate_cluster(const Eigen::VectorXcd& values,
                                                  std::size_t j) {
    // Neighbors within a small multiple of the local eigenvalue spacing scale.
    std::vector<std::size_t> cluster;
    const double scale = 1e-6 * (1.0 + std::abs(values[static_cast<Eigen::Index>(j)]));
    for (Eigen::Index k = 0; k < values.size(); ++k) {
        if (std::abs(values[k] - values[static_cast<Eigen::Index>(j)]) <= scale)
            cluster.push_back(static_cast<std::size_t>(k));
    }
    return cluster;
}

} // namespace

ResonanceSpectrum diagonalize(const EffectiveHamiltonian& h, bool keep_vectors) {
    const Eigen::Index n = h.dim();
    if (n < 1) throw DomainError("cannot diagonalize an empty Hamiltonian");
    if (!h.entries.allFinite()) throw DomainError("Hamiltonian has non-finite entries");

    // Shift the diagonal to the mean site energy before factorizing: the
    // widths sit ~7 orders below E0, and the backward error of the solve
    // scales with ||H||. The shift is undone exactly on the eigenvalues.
    const double shift = h.site_energies.mean();
    Eigen::MatrixXcd work = h.entries;
    work.diagonal().array() -= shift;

    Eigen::VectorXcd values;
    Eigen::MatrixXcd vectors;
    dense_eig(work, values, keep_vectors ? &vectors : nullptr);

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const double ea = values[a].real();
        const double eb = values[b].real();
        if (ea != eb) return ea < eb;
        return values[a].imag() < values[b].imag(); // larger width first
    });

    ResonanceSpectrum s;
    s.constants = h.constants;
    s.energies.resize(n);
    s.widths.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s.energies[i] = values[order[static_cast<std::size_t>(i)]].real() + shift;
        s.widths[i] = -2.0 * values[order[static_cast<std::size_t>(i)]].imag();
    }

    if (keep_vectors) {
        Eigen::MatrixXcd sorted(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            sorted.col(i) = vectors.col(order[static_cast<std::size_t>(i)]);

        for (Eigen::Index j = 0; j < n; ++j) {
            const std::complex<double> cnorm = sorted.col(j).transpose() * sorted.col(j);
            if (std::abs(cnorm) < 1e-12) {
                throw QuasiDegeneracyError(
                    "c-norm collapsed for eigenvector " + std::to_string(j) +
                        "; quasi-degenerate cluster",
                    quasi_degenerate_cluster(values, static_cast<std::size_t>(
                                                         order[static_cast<std::size_t>(j)])));
            }
            // Principal square root: Re >= 0, and Im >= 0 on the cut.
            sorted.col(j) /= std::sqrt(cnorm);
        }
        s.right_vectors = std::move(sorted);
    }

    // Trace sum rules: eigenvalues against the assembled diagonal.
    const double width_sum = s.widths.sum();
    const double width_expected = static_cast<double>(n) * h.constants.gamma;
    if (std::abs(width_sum - width_expected) > 1e-8 * width_expected) {
        throw NumericalError("width sum rule violated: sum Gamma_j = " +
                             std::to_string(width_sum) + ", expected " +
                             std::to_string(width_expected));
    }
    const double energy_sum = s.energies.sum();
    const double energy_expected = h.site_energies.sum();
    if (std::abs(energy_sum - energy_expected) > 1e-8 * std::abs(energy_expected)) {
        throw NumericalError("energy sum rule violated: sum E_j = " +
                             std::to_string(energy_sum) + ", expected " +
                             std::to_string(energy_expected));
    }

    if (keep_vectors) {
        // Eigenpair residuals, one matrix product for all columns.
        const Eigen::MatrixXcd& v = *s.right_vectors;
        Eigen::VectorXcd lambda(n);
        for (Eigen::Index j = 0; j < n; ++j)
            lambda[j] = std::complex<double>(s.energies[j], -0.5 * s.widths[j]);
        const Eigen::MatrixXcd residual =
            h.entries * v - v * lambda.asDiagonal();
        const double h_norm = h.entries.norm();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (residual.col(j).norm() > 1e-8 * h_norm) {
                throw NumericalError("eigenpair residual above bound at index " +
                                         std::to_string(j),
                                     j);
            }
        }
    }

    return s;
}

EnhancementMetrics enhancement_metrics(const ResonanceSpectrum& s) {
    if (s.size() < 1) throw DomainError("empty spectrum");
    Eigen::Index j_max = 0;
    Eigen::Index j_min = 0;
    for (Eigen::Index j = 1; j < s.size(); ++j) {
        if (s.widths[j] > s.widths[j_max]) j_max = j;
        if (s.widths[j] < s.widths[j_min]) j_min = j;
    }
    const double gamma = s.constants.gamma;
    EnhancementMetrics m;
    m.max_ratio = s.widths[j_max] / gamma;
    m.max_per_n = s.widths[j_max] / (static_cast<double>(s.size()) * gamma);
    m.min_ratio = s.widths[j_min] / gamma;
    m.tau_super_s = lifetime_seconds(s.widths[j_max]);
    m.tau_sub_s = lifetime_seconds(s.widths[j_min]);
    m.e_offset_of_max = s.energies[j_max] - s.constants.e0;
    return m;
}

std::vector<double> survival_probability(const ResonanceSpectrum& s,
                                         const Eigen::VectorXcd& initial,
                                         std::span<const double> times_s) {
    if (!s.right_vectors) {
        throw DomainError("survival probability needs retained eigenvectors");
    }
    if (initial.size() != s.size()) {
        throw DomainError("initial state dimension mismatch");
    }
    if (std::abs(initial.norm() - 1.0) > 1e-9) {
        throw DomainError("initial state must be normalized");
    }

    const Eigen::MatrixXcd& v = *s.right_vectors;
    // C_j^L = v_j^T psi0 (c-product), C_j^R = <psi0 | v_j>.
    const Eigen::VectorXcd c_left = v.transpose() * initial;
    const Eigen::VectorXcd c_right = v.transpose() * initial.conjugate();

    std::vector<double> out;
    out.reserve(times_s.size());
    for (double t : times_s) {
        std::complex<double> p(0.0, 0.0);
        for (Eigen::Index j = 0; j < s.size(); ++j) {
            p += c_right[j] * c_left[j] *
                 std::exp(-rate_per_second(s.widths[j]) * t);
        }
        if (std::abs(p.imag()) > 1e-8) {
            throw NumericalError("survival probability has imaginary residue " +
                                 std::to_string(p.imag()));
        }
        out.push_back(p.real());
    }
    return out;
}

std::vector<double> survival_probability(const ResonanceSpectrum& s, Eigen::Index site,
                                         std::span<const double> times_s) {
    if (site < 0 || site >= s.size()) throw DomainError("site index out of range");
    Eigen::VectorXcd initial = Eigen::VectorXcd::Zero(s.size());
    initial[site] = 1.0;
    return survival_probability(s, initial, times_s);
}

void write_spectrum_csv(const ResonanceSpectrum& s, std::ostream& out) {
    out << "j,E_minus_E0_cm1,Gamma_over_gamma\n";
    char buf[96];
    for (Eigen::Index j = 0; j < s.size(); ++j) {
        std::snprintf(buf, sizeof buf, "%lld,%.17g,%.17g\n",
                      static_cast<long long>(j + 1), s.energies[j] - s.constants.e0,
                      s.widths[j] / s.constants.gamma);
        out << buf;
    }
}

void write_spectrum_csv(const ResonanceSpectrum& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
    write_spectrum_csv(s, out);
}

} // namespace trpnet
