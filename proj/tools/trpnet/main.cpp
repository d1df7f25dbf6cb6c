// trpnet: builds tryptophan transition-dipole networks from hierarchical
// protein geometries, assembles the radiative non-Hermitian Hamiltonian,
// and derives spectra, thermal quantum yields, and disorder statistics.

#include <CLI11.hpp>

#include <exception>
#include <string>
#include <vector>

#include "trpnet/commands.hpp"

int main(int argc, char** argv) {
    using namespace trpnet::cli;

    CLI::App app{"tryptophan dipole-network superradiance simulator"};
    app.require_subcommand(1);

    std::vector<std::string> argv_copy(argv, argv + argc);

    ExtractArgs extract;
    CLI::App* cmd_extract =
        app.add_subcommand("extract", "extract a unit-cell dipole table from ATOM records");
    cmd_extract->add_option("--pdb", extract.pdb_path, "structure file (fixed-column ATOM records)")
        ->required();
    cmd_extract->add_option("--angle-deg", extract.angle_deg,
                            "in-plane dipole angle from the CG->NE1 axis (degrees)")
        ->capture_default_str();
    cmd_extract->add_option("--anchor", extract.anchor, "anchor atom name")
        ->capture_default_str();
    cmd_extract->add_option("--chains", extract.chains, "chain filter (default: all)");
    cmd_extract->add_option("--out", extract.out_path, "output unit-cell file")->required();

    SpectrumArgs spectrum;
    CLI::App* cmd_spectrum =
        app.add_subcommand("spectrum", "assemble and diagonalize one network");
    auto add_geometry_flags = [](CLI::App* cmd, auto& args) {
        cmd->add_option("--kind", args.kind, "mt|centriole|axoneme|bundle")
            ->capture_default_str();
        cmd->add_option("--n-mt", args.n_mt, "microtubule count (bundle only)");
        cmd->add_option("--unit-cell", args.unit_cell_path, "unit-cell file")->required();
        cmd->add_option("--temp-k", args.temp_k, "temperature, K")->capture_default_str();
        cmd->add_option("--gamma-nr", args.gamma_nr, "non-radiative width, cm^-1")
            ->capture_default_str();
        cmd->add_option("--out", args.out_prefix, "output path prefix")->required();
    };
    add_geometry_flags(cmd_spectrum, spectrum);
    cmd_spectrum->add_option("--spirals", spectrum.spirals, "layers along the axis")
        ->capture_default_str();
    cmd_spectrum->add_option("--sigma", spectrum.sigma,
                             "lineshape broadening, cm^-1 (emits curve CSVs)");
    cmd_spectrum->add_option("--lineshape", spectrum.lineshape, "lorentzian|gaussian")
        ->capture_default_str();
    cmd_spectrum->add_option("--grid-points", spectrum.grid_points, "curve grid size")
        ->capture_default_str();
    cmd_spectrum->add_option("--disorder-w", spectrum.disorder_w,
                             "static disorder width, cm^-1 (single realization)");
    cmd_spectrum->add_option("--seed", spectrum.seed, "disorder stream seed")
        ->capture_default_str();
    cmd_spectrum->add_option("--realization", spectrum.realization,
                             "disorder realization index")
        ->capture_default_str();
    cmd_spectrum->add_option("--dump-heff", spectrum.dump_heff_path,
                             "write the HEFF1 binary matrix dump here");
    cmd_spectrum->add_option("--zero-diagonal-dump", spectrum.zero_diagonal_dump_path,
                             "write a HEFF1 dump with Re(diagonal) zeroed");
    cmd_spectrum->add_option("--dump-lattice", spectrum.dump_lattice_path,
                             "write the built lattice as text");

    SweepArgs sweep;
    CLI::App* cmd_sweep =
        app.add_subcommand("sweep", "quantum yield and enhancement vs network size");
    add_geometry_flags(cmd_sweep, sweep);
    cmd_sweep->add_option("--spirals", sweep.spirals,
                          "layer counts, e.g. 1:10 or 1,2,5:40:5")
        ->capture_default_str();
    cmd_sweep->add_option("--trp-counts", sweep.trp_counts,
                          "extra sub-layer points as dipole-count prefixes");

    DisorderArgs disorder;
    CLI::App* cmd_disorder =
        app.add_subcommand("disorder", "disorder-averaged yield statistics");
    add_geometry_flags(cmd_disorder, disorder);
    cmd_disorder->add_option("--spirals", disorder.spirals, "layers along the axis")
        ->capture_default_str();
    cmd_disorder->add_option("--disorder-w", disorder.widths, "disorder widths, cm^-1")
        ->required();
    cmd_disorder->add_option("--realizations", disorder.realizations,
                             "realizations per width")
        ->capture_default_str();
    cmd_disorder->add_option("--seed", disorder.seed, "disorder stream seed")
        ->capture_default_str();

    std::string manifest_path;
    CLI::App* cmd_rerun =
        app.add_subcommand("rerun", "re-execute a run from its manifest");
    cmd_rerun->add_option("--manifest", manifest_path, "manifest JSON")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmd_extract->parsed()) return run_extract(extract, argv_copy);
        if (cmd_spectrum->parsed()) return run_spectrum(spectrum, argv_copy);
        if (cmd_sweep->parsed()) return run_sweep(sweep, argv_copy);
        if (cmd_disorder->parsed()) return run_disorder(disorder, argv_copy);
        if (cmd_rerun->parsed()) return run_rerun(manifest_path);
    } catch (const std::exception& e) {
        return report_error(e);
    }
    return 1;
}
