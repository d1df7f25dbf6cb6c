#include "trpnet/observables.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <thread>

#include "trpnet/errors.hpp"

namespace trpnet {

namespace {

/// Boltzmann weights with energies shifted by their minimum; shift-invariant
/// and overflow-safe at any temperature.
Eigen::VectorXd boltzmann_weights(const Eigen::VectorXd& energies, double k_b_t) {
    const double e_min = energies.minCoeff();
    return ((energies.array() - e_min) * (-1.0 / k_b_t)).exp();
}

double lineshape_value(Lineshape shape, double e, double e_j, double sigma) {
    const double d = e - e_j;
    if (shape == Lineshape::Lorentzian) return sigma / (d * d + sigma * sigma);
    return std::exp(-d * d / (2.0 * sigma * sigma));
}

SpectrumCurve weighted_lineshape_sum(const ResonanceSpectrum& s,
                                     const Eigen::VectorXd& weights, double sigma,
                                     Lineshape shape, std::vector<double> grid) {
    if (sigma <= 0.0) throw DomainError("lineshape broadening must be positive");
    if (grid.empty()) throw DomainError("curve grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (grid[i] <= grid[i - 1])
            throw DomainError("curve grid must be strictly increasing");

    SpectrumCurve curve;
    curve.grid = std::move(grid);
    curve.lineshape = shape;
    curve.sigma = sigma;
    curve.values.resize(curve.grid.size());

    double peak = 0.0;
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        double sum = 0.0;
        for (Eigen::Index j = 0; j < s.size(); ++j) {
            sum += weights[j] * s.widths[j] *
                   lineshape_value(shape, curve.grid[i], s.energies[j], sigma);
        }
        curve.values[i] = sum;
        peak = std::max(peak, sum);
    }
    curve.normalization = peak > 0.0 ? 1.0 / peak : 1.0;
    for (auto& v : curve.values) v *= curve.normalization;
    return curve;
}

} // namespace

ThermalReport thermal_qy(const ResonanceSpectrum& s, double temperature_k,
                         double gamma_nr) {
    if (temperature_k <= 0.0) throw DomainError("temperature must be positive");
    if (s.size() < 1) throw DomainError("empty spectrum");

    ThermalReport report;
    report.temperature_k = temperature_k;
    report.k_b_t = s.constants.k_b * temperature_k;

    const Eigen::VectorXd w = boltzmann_weights(s.energies, report.k_b_t);
    report.partition = w.sum();
    report.gamma_th = w.dot(s.widths) / report.partition;
    // The non-radiative channel stays at the single-emitter rate; the model
    // adds no size-dependent quenching pathways.
    report.qy = report.gamma_th / (report.gamma_th + gamma_nr);
    return report;
}

SpectrumCurve absorption_curve(const ResonanceSpectrum& s, double sigma,
                               Lineshape shape, std::vector<double> grid) {
    const Eigen::VectorXd uniform = Eigen::VectorXd::Ones(s.size());
    return weighted_lineshape_sum(s, uniform, sigma, shape, std::move(grid));
}

SpectrumCurve fluorescence_curve(const ResonanceSpectrum& s, double sigma,
                                 Lineshape shape, double temperature_k,
                                 std::vector<double> grid) {
    if (temperature_k <= 0.0) throw DomainError("temperature must be positive");
    Eigen::VectorXd w = boltzmann_weights(s.energies, s.constants.k_b * temperature_k);
    w /= w.sum();
    return weighted_lineshape_sum(s, w, sigma, shape, std::move(grid));
}

std::vector<DisorderStats> disorder_sweep(const DipoleLattice& lattice,
                                          std::span<const double> widths,
                                          int n_realizations, std::uint64_t seed,
                                          double temperature_k,
                                          const PhysicalConstants& c,
                                          const AssemblyOptions& options) {
    if (n_realizations < 1) throw DomainError("need at least one realization");

    std::vector<DisorderStats> out;
    out.reserve(widths.size());
    for (double w : widths) {
        std::vector<double> yields, ratios, gammas;
        yields.reserve(n_realizations);
        for (int r = 0; r < n_realizations; ++r) {
            DisorderConfig config{w, seed, static_cast<std::uint64_t>(r)};
            try {
                const auto h = assemble(lattice, c, config, options);
                const auto s = diagonalize(h, false);
                const auto thermal = thermal_qy(s, temperature_k, c.gamma_nr);
                yields.push_back(thermal.qy);
                gammas.push_back(thermal.gamma_th);
                ratios.push_back(enhancement_metrics(s).max_ratio);
            } catch (const NumericalError& e) {
                throw NumericalError("disorder realization (W=" + std::to_string(w) +
                                     ", r=" + std::to_string(r) + "): " + e.what());
            }
        }

        auto mean = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double x : v) s += x;
            return s / static_cast<double>(v.size());
        };
        auto stdev = [&](const std::vector<double>& v, double m) {
            double s = 0.0;
            for (double x : v) s += (x - m) * (x - m);
            return std::sqrt(s / static_cast<double>(v.size()));
        };

        DisorderStats stats;
        stats.width = w;
        stats.n_realizations = n_realizations;
        stats.mean_qy = mean(yields);
        stats.std_qy = stdev(yields, stats.mean_qy);
        stats.mean_max_ratio = mean(ratios);
        stats.std_max_ratio = stdev(ratios, stats.mean_max_ratio);
        const double mean_gamma = mean(gammas);
        stats.qy_of_mean_gamma = mean_gamma / (mean_gamma + c.gamma_nr);
        out.push_back(stats);
    }
    return out;
}

FitPrediction fit_curve(FitKind kind, double ell_nm, std::optional<int> n_mt,
                        const FitParams& p) {
    if (ell_nm <= 0.0) throw DomainError("length must be positive");

    const double lambda = p.lambda0_nm;
    const double ell0 = p.ell0_nm;
    const double n_d = p.n_d;
    const double n_s = p.n_s;
    const double half_arg = ell_nm / (2.0 * n_s * ell0);

    FitPrediction prediction;
    prediction.valid = ell_nm >= 2.0 * n_s * ell0;
    switch (kind) {
        case FitKind::AxonemeIdealized:
            prediction.value =
                lambda * n_d / ell0 * ((n_s - 2.0) * std::tanh(half_arg) - 1.0);
            return prediction;
        case FitKind::AxonemeDoublet:
            prediction.value =
                lambda * (n_s - 3.0) / ell0 * (std::tanh(3.0 * half_arg - 2.0) + 1.0);
            return prediction;
        case FitKind::Centriole:
            prediction.value =
                lambda * n_d / ell0 * (2.0 * n_d * std::tanh(half_arg) - 1.0);
            return prediction;
        case FitKind::Bundle: {
            if (!n_mt) throw DomainError("bundle fit needs the microtubule count");
            const double scale =
                n_d * std::pow(static_cast<double>(*n_mt) / p.n_0, 1.0 / p.d);
            prediction.value =
                scale * (lambda * n_d / ell0 * std::tanh(half_arg) - n_s);
            return prediction;
        }
    }
    throw DomainError("unknown fit kind");
}

ApproxBrightState approx_centriole_state(const DipoleLattice& centriole,
                                         const PhysicalConstants& c,
                                         int spirals_per_segment) {
    if (centriole.spec.kind != GeometryKind::Centriole)
        throw DomainError("approximate bright state is defined for centrioles");
    if (spirals_per_segment < 1) throw DomainError("segment length must be positive");
    const int n_spirals = centriole.spec.n_spirals;
    if (n_spirals % spirals_per_segment != 0) {
        throw DomainError("centriole of " + std::to_string(n_spirals) +
                          " spirals is not a whole number of " +
                          std::to_string(spirals_per_segment) + "-spiral segments");
    }
    const int n_segments = n_spirals / spirals_per_segment;
    constexpr int n_mts = 27;

    // Brightest state of one free-standing segment, computed once and reused
    // in every slot. Segments of all 27 microtubules are congruent copies.
    const auto segment_mt = build_microtubule(centriole.spec.unit_cell,
                                              spirals_per_segment);
    const auto segment_spectrum = diagonalize(assemble(segment_mt, c), true);
    Eigen::Index brightest = 0;
    for (Eigen::Index j = 1; j < segment_spectrum.size(); ++j)
        if (segment_spectrum.widths[j] > segment_spectrum.widths[brightest])
            brightest = j;
    const Eigen::VectorXcd phi_seg = segment_spectrum.right_vectors->col(brightest);
    const Eigen::Index seg_size = phi_seg.size();

    // Segment weights: a half-wave along the length and a 9-fold standing
    // wave across the triplets (ceil(m/3) indexes the triplet of MT m).
    Eigen::VectorXcd phi(centriole.size());
    std::complex<double> norm_sq(0.0, 0.0);
    for (int m = 1; m <= n_mts; ++m) {
        for (int n = 1; n <= n_segments; ++n) {
            const double weight =
                std::sin(kTwoPi / 2.0 * n / (n_segments + 1.0)) *
                std::sin(kTwoPi * std::ceil(m / 3.0) / 9.0);
            const Eigen::Index offset =
                static_cast<Eigen::Index>(m - 1) * n_segments * seg_size +
                static_cast<Eigen::Index>(n - 1) * seg_size;
            phi.segment(offset, seg_size) = weight * phi_seg;
            norm_sq += weight * weight; // phi_seg is c-normalized
        }
    }
    phi /= std::sqrt(norm_sq);

    // <phi|H|phi> under the c-product by direct pair summation; the matrix is
    // never materialized. Fixed-size row blocks keep the reduction order (and
    // the result) independent of the thread count.
    const Eigen::Index total = phi.size();
    const std::vector<Dipole>& dipoles = centriole.dipoles;
    constexpr Eigen::Index block = 256;
    const Eigen::Index n_blocks = (total + block - 1) / block;
    std::vector<std::complex<double>> partial(static_cast<std::size_t>(n_blocks));

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::thread> workers;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run_block = [&](Eigen::Index b) {
        const Eigen::Index begin = b * block;
        const Eigen::Index end = std::min(total, begin + block);
        std::complex<double> acc(0.0, 0.0);
        for (Eigen::Index i = begin; i < end; ++i) {
            if (phi[i] == std::complex<double>(0.0, 0.0)) {
                // Site energy term still contributes zero; skip the row.
                continue;
            }
            acc += phi[i] * phi[i] *
                   std::complex<double>(c.e0, -0.5 * c.gamma);
            for (Eigen::Index j = i + 1; j < total; ++j) {
                if (phi[j] == std::complex<double>(0.0, 0.0)) continue;
                const std::complex<double> h_ij(
                    coupling_omega(dipoles[static_cast<std::size_t>(i)],
                                   dipoles[static_cast<std::size_t>(j)], c),
                    -0.5 * coupling_upsilon(dipoles[static_cast<std::size_t>(i)],
                                            dipoles[static_cast<std::size_t>(j)], c));
                acc += 2.0 * phi[i] * phi[j] * h_ij;
            }
        }
        partial[static_cast<std::size_t>(b)] = acc;
    };
    std::atomic<Eigen::Index> next{0};
    for (unsigned t = 0; t < hw; ++t) {
        workers.emplace_back([&] {
            try {
                for (Eigen::Index b = next.fetch_add(1); b < n_blocks;
                     b = next.fetch_add(1))
                    run_block(b);
            } catch (...) {
                std::scoped_lock lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& w : workers) w.join();
    if (failure) std::rethrow_exception(failure);

    ApproxBrightState state;
    state.n_segments = n_segments;
    for (const auto& p : partial) state.expectation += p;
    return state;
}

double reference_qy(double f_s, double f_r, double a_s, double a_r, double n_s,
                    double n_r, double qy_r) {
    for (double v : {f_s, f_r, a_s, a_r, n_s, n_r, qy_r}) {
        if (!(v > 0.0)) throw DomainError("reference-yield inputs must be positive");
    }
    return (f_s * a_r * n_s * n_s) / (f_r * a_s * n_r * n_r) * qy_r;
}

RayleighCorrection rayleigh_correct(const SpectrumCurve& measured,
                                    std::pair<double, double> fit_range_nm,
                                    bool with_offset) {
    const auto [lo, hi] = fit_range_nm;
    if (measured.grid.empty() || measured.grid.front() > lo ||
        measured.grid.back() < hi) {
        throw DomainError("curve does not cover the background fit range");
    }

    std::vector<double> x, y; // x = lambda^-4
    for (std::size_t i = 0; i < measured.grid.size(); ++i) {
        const double lambda = measured.grid[i];
        if (lambda < lo || lambda > hi) continue;
        x.push_back(std::pow(lambda, -4.0));
        y.push_back(measured.values[i]);
    }
    if (x.size() < 8) {
        throw DomainError("fewer than 8 samples in the background fit range");
    }

    RayleighBackground bg;
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    if (with_offset) {
        const double det = n * sxx - sx * sx;
        bg.b = (n * sxy - sx * sy) / det;
        bg.c = (sy - bg.b * sx) / n;
        if (bg.c < 0.0) with_offset = false; // constrained fit: offset floors at zero
    }
    if (!with_offset) {
        bg.b = sxy / sxx;
        bg.c = 0.0;
    }

    RayleighCorrection result;
    result.background = bg;
    result.corrected = measured;
    for (std::size_t i = 0; i < measured.grid.size(); ++i) {
        const double model = bg.b * std::pow(measured.grid[i], -4.0) + bg.c;
        result.corrected.values[i] = std::max(0.0, measured.values[i] - model);
    }
    return result;
}

} // namespace trpnet
