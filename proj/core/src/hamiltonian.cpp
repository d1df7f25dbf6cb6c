#include "trpnet/hamiltonian.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <thread>
#include <vector>

#include "trpnet/errors.hpp"

namespace trpnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Geometric factors shared by both kernels:
///   a = mu_m . mu_n - (mu_m . r)(mu_n . r)
///   b = mu_m . mu_n - 3 (mu_m . r)(mu_n . r)
/// and x = k0 r. Throws on coincident positions.
struct PairGeometry {
    double a;
    double b;
    double x;
};

inline PairGeometry pair_geometry(const Dipole& m, const Dipole& n, double k0) {
    const Eigen::Vector3d rvec = n.position - m.position;
    const double r = rvec.norm();
    if (r <= 0.0) throw SingularityError();
    const Eigen::Vector3d rhat = rvec / r;
    const double mm = m.orientation.dot(n.orientation);
    const double mr = m.orientation.dot(rhat);
    const double nr = n.orientation.dot(rhat);
    return {mm - mr * nr, mm - 3.0 * mr * nr, k0 * r};
}

inline double omega_from_geometry(const PairGeometry& g, double gamma) {
    const double x = g.x;
    const double s = std::sin(x);
    const double c = std::cos(x);
    return 0.75 * gamma *
           (-g.a * c / x + g.b * (s / (x * x) + c / (x * x * x)));
}

inline double upsilon_from_geometry(const PairGeometry& g, double gamma) {
    const double x = g.x;
    const double s = std::sin(x);
    const double c = std::cos(x);
    return 1.5 * gamma * (g.a * s / x + g.b * (c / (x * x) - s / (x * x * x)));
}

} // namespace

double disordered_site_energy(double e0, const DisorderConfig& disorder, std::uint64_t n) {
    if (disorder.width < 0.0) throw DomainError("disorder width must be non-negative");
    const std::uint64_t h = splitmix64(
        splitmix64(splitmix64(disorder.seed) + disorder.realization_index) + n);
    const double u = static_cast<double>(h >> 11) * 0x1.0p-53; // [0, 1)
    return e0 + disorder.width * (u - 0.5);
}

double coupling_omega(const Dipole& m, const Dipole& n, const PhysicalConstants& c) {
    return omega_from_geometry(pair_geometry(m, n, c.k0), c.gamma);
}

double coupling_upsilon(const Dipole& m, const Dipole& n, const PhysicalConstants& c) {
    return upsilon_from_geometry(pair_geometry(m, n, c.k0), c.gamma);
}

EffectiveHamiltonian assemble(std::span<const Dipole> dipoles,
                              const PhysicalConstants& c,
                              const std::optional<DisorderConfig>& disorder,
                              const AssemblyOptions& options) {
    const std::size_t n = dipoles.size();
    if (n == 0) throw DomainError("cannot assemble an empty lattice");
    if (n > options.max_dim) throw CapacityError(n, options.max_dim);

    EffectiveHamiltonian h;
    h.constants = c;
    h.site_energies.resize(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        h.site_energies[static_cast<Eigen::Index>(i)] =
            disorder ? disordered_site_energy(c.e0, *disorder, i) : c.e0;
    }

    h.entries.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const std::complex<double> half_i(0.0, 0.5);

    // Upper triangle (m < col), mirrored; columns are write-disjoint so the
    // fill parallelizes without coordination.
    auto fill_columns = [&](std::size_t begin, std::size_t end) {
        for (std::size_t col = begin; col < end; ++col) {
            for (std::size_t row = 0; row < col; ++row) {
                if ((dipoles[col].position - dipoles[row].position).squaredNorm() <= 0.0)
                    throw SingularityError(row, col);
                PairGeometry g = pair_geometry(dipoles[row], dipoles[col], c.k0);
                const std::complex<double> value(
                    omega_from_geometry(g, c.gamma),
                    -0.5 * upsilon_from_geometry(g, c.gamma));
                h.entries(static_cast<Eigen::Index>(row),
                          static_cast<Eigen::Index>(col)) = value;
            }
            h.entries(static_cast<Eigen::Index>(col), static_cast<Eigen::Index>(col)) =
                h.site_energies[static_cast<Eigen::Index>(col)] -
                half_i * std::complex<double>(c.gamma, 0.0);
        }
    };

    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n < 512 || hw == 1) {
        fill_columns(0, n);
    } else {
        // Interleave column blocks so the triangular work balances.
        constexpr std::size_t block = 64;
        std::vector<std::thread> workers;
        std::exception_ptr failure;
        std::mutex failure_mutex;
        for (unsigned t = 0; t < hw; ++t) {
            workers.emplace_back([&, t] {
                try {
                    for (std::size_t b = t * block; b < n; b += hw * block)
                        fill_columns(b, std::min(n, b + block));
                } catch (...) {
                    std::scoped_lock lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                }
            });
        }
        for (auto& w : workers) w.join();
        if (failure) std::rethrow_exception(failure);
    }

    // Mirror the strictly upper triangle; the matrix is symmetric by
    // construction of the kernels.
    for (Eigen::Index col = 0; col < h.entries.cols(); ++col)
        for (Eigen::Index row = 0; row < col; ++row)
            h.entries(col, row) = h.entries(row, col);

    return h;
}

EffectiveHamiltonian assemble(const DipoleLattice& lattice,
                              const PhysicalConstants& c,
                              const std::optional<DisorderConfig>& disorder,
                              const AssemblyOptions& options) {
    return assemble(std::span<const Dipole>(lattice.dipoles), c, disorder, options);
}

void write_heff(const EffectiveHamiltonian& h, const std::filesystem::path& path,
                bool zero_diagonal_real) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");

    out.write("HEFF1", 5);
    const std::uint64_t n = static_cast<std::uint64_t>(h.dim());
    out.write(reinterpret_cast<const char*>(&n), sizeof n);

    for (Eigen::Index row = 0; row < h.dim(); ++row) {
        for (Eigen::Index col = 0; col < h.dim(); ++col) {
            std::complex<double> v = h.entries(row, col);
            if (zero_diagonal_real && row == col) v.real(0.0);
            const double re = v.real();
            const double im = v.imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof re);
            out.write(reinterpret_cast<const char*>(&im), sizeof im);
        }
    }
    if (!out) throw DomainError("write failed for '" + path.string() + "'");
}

} // namespace trpnet
