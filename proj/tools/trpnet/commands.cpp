#include "trpnet/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "trpnet/constants.hpp"
#include "trpnet/digest.hpp"
#include "trpnet/errors.hpp"
#include "trpnet/geometry.hpp"
#include "trpnet/hamiltonian.hpp"
#include "trpnet/manifest.hpp"
#include "trpnet/observables.hpp"
#include "trpnet/pdb.hpp"
#include "trpnet/spectrum.hpp"
#include "trpnet/unit_cell_io.hpp"

namespace trpnet::cli {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

AssemblyOptions assembly_options_from_env() {
    AssemblyOptions options;
    if (const char* env = std::getenv("SIM_MAX_N")) {
        std::size_t value = 0;
        auto [ptr, ec] = std::from_chars(env, env + std::string_view(env).size(), value);
        if (ec != std::errc{} || value == 0) {
            throw DomainError("SIM_MAX_N must be a positive integer");
        }
        options.max_dim = value;
    }
    return options;
}

void log_stage(const std::string& message) { std::cerr << "[trpnet] " << message << "\n"; }

UnitCell load_cell(const std::string& path) {
    if (path.empty()) throw DomainError("--unit-cell is required");
    return read_unit_cell(std::filesystem::path(path));
}

DipoleLattice build_lattice(const std::string& kind_name, int spirals, int n_mt,
                            const UnitCell& cell) {
    const GeometryKind kind = geometry_kind_from_string(kind_name);
    switch (kind) {
        case GeometryKind::Microtubule: return build_microtubule(cell, spirals);
        case GeometryKind::Centriole: return build_centriole(cell, spirals);
        case GeometryKind::AxonemeIdealized: return build_axoneme(cell, spirals);
        case GeometryKind::Bundle: return build_bundle(cell, n_mt, spirals);
    }
    throw DomainError("unknown kind");
}

void fill_constants(nlohmann::json& j, const PhysicalConstants& c) {
    j["lambda0_A"] = c.lambda0;
    j["e0_cm1"] = c.e0;
    j["k0_invA"] = c.k0;
    j["mu_squared_A3cm1"] = c.mu_squared;
    j["gamma_cm1"] = c.gamma;
    j["gamma_nr_cm1"] = c.gamma_nr;
    j["k_b_cm1_per_K"] = c.k_b;
}

Lineshape lineshape_from_string(const std::string& name) {
    if (name == "lorentzian") return Lineshape::Lorentzian;
    if (name == "gaussian") return Lineshape::Gaussian;
    throw DomainError("unknown lineshape '" + name + "'");
}

std::string curve_csv(const SpectrumCurve& curve) {
    std::string csv = "x,value\n";
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        csv += fmt(curve.grid[i]) + "," + fmt(curve.values[i]) + "\n";
    return csv;
}

} // namespace

std::vector<int> parse_range_list(const std::string& text) {
    std::vector<int> out;
    std::istringstream stream(text);
    std::string piece;
    auto to_int = [&](const std::string& s) {
        int v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw DomainError("bad range element '" + s + "' in '" + text + "'");
        return v;
    };
    while (std::getline(stream, piece, ',')) {
        if (piece.empty()) continue;
        const auto c1 = piece.find(':');
        if (c1 == std::string::npos) {
            out.push_back(to_int(piece));
            continue;
        }
        const auto c2 = piece.find(':', c1 + 1);
        const int from = to_int(piece.substr(0, c1));
        const int to = to_int(c2 == std::string::npos ? piece.substr(c1 + 1)
                                                      : piece.substr(c1 + 1, c2 - c1 - 1));
        const int step = c2 == std::string::npos ? 1 : to_int(piece.substr(c2 + 1));
        if (step <= 0 || to < from) throw DomainError("bad range '" + piece + "'");
        for (int v = from; v <= to; v += step) out.push_back(v);
    }
    if (out.empty()) throw DomainError("empty range list '" + text + "'");
    return out;
}

int report_error(const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
    if (dynamic_cast<const EmptyResultError*>(&e)) return kExitParse;
    if (dynamic_cast<const FormatError*>(&e)) return kExitParse;
    if (dynamic_cast<const GeometryError*>(&e)) return kExitExtraction;
    if (dynamic_cast<const LookupError*>(&e)) return kExitExtraction;
    if (dynamic_cast<const CapacityError*>(&e)) return kExitDomain;
    if (dynamic_cast<const DomainError*>(&e)) return kExitDomain;
    if (dynamic_cast<const QuasiDegeneracyError*>(&e)) return kExitNumerical;
    if (dynamic_cast<const NumericalError*>(&e)) return kExitNumerical;
    return 1;
}

int run_extract(const ExtractArgs& args, const std::vector<std::string>& argv) {
    ManifestBuilder manifest("extract", argv);
    manifest.parameters() = {{"pdb", args.pdb_path},
                             {"angle_deg", args.angle_deg},
                             {"anchor", args.anchor},
                             {"chains", args.chains},
                             {"out", args.out_path}};

    std::string text;
    try {
        text = slurp(args.pdb_path);
    } catch (const DomainError& e) {
        throw ParseError(e.what(), 0);
    }
    manifest.add_input("structure", args.pdb_path);

    std::optional<std::set<std::string>> filter;
    if (!args.chains.empty())
        filter.emplace(args.chains.begin(), args.chains.end());

    StageTimer timer;
    const TrpExtraction extraction = parse_pdb_trp(text, filter);
    log_stage("parsed " + std::to_string(extraction.residues.size()) +
              " TRP residue(s), skipped " + std::to_string(extraction.skipped));
    for (const auto& w : extraction.warnings) log_stage("warning: " + w);

    UnitCell cell;
    cell.label = std::filesystem::path(args.pdb_path).stem().string();
    cell.source.source_sha1 = git_blob_sha1(text);
    cell.source.angle_deg = args.angle_deg;
    cell.source.anchor = args.anchor;
    for (const auto& residue : extraction.residues)
        cell.dipoles.push_back(derive_dipole(residue, args.angle_deg, args.anchor));
    manifest.add_timing("extract", timer.lap());

    atomic_write(args.out_path, unit_cell_to_string(cell));
    manifest.add_output(args.out_path);
    manifest.write(args.out_path);
    std::cout << "residues: " << extraction.residues.size()
              << "\nskipped: " << extraction.skipped << "\nwrote: " << args.out_path
              << "\n";
    return kExitOk;
}

int run_spectrum(const SpectrumArgs& args, const std::vector<std::string>& argv) {
    ManifestBuilder manifest("spectrum", argv);
    nlohmann::json& params = manifest.parameters();
    params = {{"kind", args.kind},
              {"spirals", args.spirals},
              {"n_mt", args.n_mt},
              {"unit_cell", args.unit_cell_path},
              {"temp_k", args.temp_k},
              {"gamma_nr", args.gamma_nr},
              {"lineshape", args.lineshape},
              {"grid_points", args.grid_points},
              {"seed", args.seed},
              {"realization", args.realization},
              {"out", args.out_prefix}};
    if (args.sigma) params["sigma"] = *args.sigma;
    if (args.disorder_w) params["disorder_w"] = *args.disorder_w;
    if (!args.dump_heff_path.empty()) params["dump_heff"] = args.dump_heff_path;
    if (!args.zero_diagonal_dump_path.empty())
        params["zero_diagonal_dump"] = args.zero_diagonal_dump_path;
    if (!args.dump_lattice_path.empty()) params["dump_lattice"] = args.dump_lattice_path;

    PhysicalConstants constants;
    constants.gamma_nr = args.gamma_nr;
    fill_constants(manifest.constants(), constants);

    const UnitCell cell = load_cell(args.unit_cell_path);
    manifest.add_input("unit_cell", args.unit_cell_path);

    StageTimer timer;
    const DipoleLattice lattice =
        build_lattice(args.kind, args.spirals, args.n_mt, cell);
    manifest.add_timing("build", timer.lap());
    log_stage("built " + args.kind + " lattice, N=" + std::to_string(lattice.size()));

    if (!args.dump_lattice_path.empty()) {
        std::ostringstream out;
        write_lattice(lattice, out);
        atomic_write(args.dump_lattice_path, out.str());
        manifest.add_output(args.dump_lattice_path);
    }

    std::optional<DisorderConfig> disorder;
    if (args.disorder_w) disorder = DisorderConfig{*args.disorder_w, args.seed, args.realization};

    const AssemblyOptions options = assembly_options_from_env();
    const EffectiveHamiltonian h = assemble(lattice, constants, disorder, options);
    manifest.add_timing("assemble", timer.lap());
    log_stage("assembled H, dim=" + std::to_string(h.dim()));

    if (!args.dump_heff_path.empty()) {
        write_heff(h, args.dump_heff_path, false);
        manifest.add_output(args.dump_heff_path);
    }
    if (!args.zero_diagonal_dump_path.empty()) {
        write_heff(h, args.zero_diagonal_dump_path, true);
        manifest.add_output(args.zero_diagonal_dump_path);
    }

    const ResonanceSpectrum spectrum = diagonalize(h, false);
    manifest.add_timing("diagonalize", timer.lap());
    log_stage("diagonalized");

    const EnhancementMetrics metrics = enhancement_metrics(spectrum);
    const ThermalReport thermal = thermal_qy(spectrum, args.temp_k, args.gamma_nr);

    {
        std::ostringstream csv;
        write_spectrum_csv(spectrum, csv);
        const std::string path = args.out_prefix + ".spectrum.csv";
        atomic_write(path, csv.str());
        manifest.add_output(path);
    }
    {
        nlohmann::json j = {{"N", lattice.size()},
                            {"max_ratio", metrics.max_ratio},
                            {"max_per_N", metrics.max_per_n},
                            {"min_ratio", metrics.min_ratio},
                            {"tau_super_s", metrics.tau_super_s},
                            {"tau_sub_s", metrics.tau_sub_s},
                            {"E_offset_of_max_cm1", metrics.e_offset_of_max},
                            {"qy_thermal", thermal.qy},
                            {"gamma_th_cm1", thermal.gamma_th},
                            {"temp_k", thermal.temperature_k}};
        const std::string path = args.out_prefix + ".metrics.json";
        atomic_write(path, j.dump(2) + "\n");
        manifest.add_output(path);
    }
    if (args.sigma) {
        const Lineshape shape = lineshape_from_string(args.lineshape);
        const double sigma = *args.sigma;
        const double lo = spectrum.energies.minCoeff() - 5.0 * sigma;
        const double hi = spectrum.energies.maxCoeff() + 5.0 * sigma;
        std::vector<double> grid(static_cast<std::size_t>(args.grid_points));
        for (int i = 0; i < args.grid_points; ++i)
            grid[static_cast<std::size_t>(i)] =
                lo + (hi - lo) * i / static_cast<double>(args.grid_points - 1);

        const auto absorption = absorption_curve(spectrum, sigma, shape, grid);
        const auto fluorescence =
            fluorescence_curve(spectrum, sigma, shape, args.temp_k, grid);
        const std::string a_path = args.out_prefix + ".absorption.csv";
        const std::string f_path = args.out_prefix + ".fluorescence.csv";
        atomic_write(a_path, curve_csv(absorption));
        atomic_write(f_path, curve_csv(fluorescence));
        manifest.add_output(a_path);
        manifest.add_output(f_path);
    }

    manifest.write(args.out_prefix);
    std::cout << "max_per_N: " << fmt(metrics.max_per_n)
              << "\nqy_thermal: " << fmt(thermal.qy) << "\n";
    return kExitOk;
}

int run_sweep(const SweepArgs& args, const std::vector<std::string>& argv) {
    ManifestBuilder manifest("sweep", argv);
    manifest.parameters() = {{"kind", args.kind},
                             {"spirals", args.spirals},
                             {"n_mt", args.n_mt},
                             {"unit_cell", args.unit_cell_path},
                             {"trp_counts", args.trp_counts},
                             {"temp_k", args.temp_k},
                             {"gamma_nr", args.gamma_nr},
                             {"out", args.out_prefix}};
    PhysicalConstants constants;
    constants.gamma_nr = args.gamma_nr;
    fill_constants(manifest.constants(), constants);

    const UnitCell cell = load_cell(args.unit_cell_path);
    manifest.add_input("unit_cell", args.unit_cell_path);
    const AssemblyOptions options = assembly_options_from_env();

    std::string csv = "N_trp,qy,max_ratio\n";
    StageTimer timer;

    auto emit_row = [&](const DipoleLattice& lattice) {
        const auto h = assemble(lattice, constants, std::nullopt, options);
        const auto s = diagonalize(h, false);
        const auto thermal = thermal_qy(s, args.temp_k, args.gamma_nr);
        const auto metrics = enhancement_metrics(s);
        csv += std::to_string(lattice.size()) + "," + fmt(thermal.qy) + "," +
               fmt(metrics.max_ratio) + "\n";
    };

    // Sub-layer prefix points first (ascending N), then whole-layer points.
    if (!args.trp_counts.empty()) {
        std::vector<std::uint64_t> counts = args.trp_counts;
        std::sort(counts.begin(), counts.end());
        const std::uint64_t max_count = counts.back();
        std::uint64_t mts_per_layer = 1;
        const GeometryKind kind = geometry_kind_from_string(args.kind);
        if (kind == GeometryKind::Centriole) mts_per_layer = 27;
        if (kind == GeometryKind::AxonemeIdealized) mts_per_layer = 20;
        if (kind == GeometryKind::Bundle) mts_per_layer = static_cast<std::uint64_t>(args.n_mt);
        const std::uint64_t per_layer = cell.dipoles.size() * 13 * mts_per_layer;
        const int spirals_needed =
            static_cast<int>((max_count + per_layer - 1) / per_layer);
        const DipoleLattice full =
            build_lattice(args.kind, std::max(1, spirals_needed), args.n_mt, cell);
        for (std::uint64_t n : counts) {
            emit_row(truncate_lattice(full, n));
            log_stage("sweep point N=" + std::to_string(n));
        }
    }
    for (int spirals : parse_range_list(args.spirals)) {
        const DipoleLattice lattice = build_lattice(args.kind, spirals, args.n_mt, cell);
        emit_row(lattice);
        log_stage("sweep point spirals=" + std::to_string(spirals) +
                  " N=" + std::to_string(lattice.size()));
    }
    manifest.add_timing("sweep", timer.lap());

    const std::string path = args.out_prefix + ".sweep.csv";
    atomic_write(path, csv);
    manifest.add_output(path);
    manifest.write(args.out_prefix);
    std::cout << "wrote: " << path << "\n";
    return kExitOk;
}

int run_disorder(const DisorderArgs& args, const std::vector<std::string>& argv) {
    ManifestBuilder manifest("disorder", argv);
    manifest.parameters() = {{"kind", args.kind},
                             {"spirals", args.spirals},
                             {"n_mt", args.n_mt},
                             {"unit_cell", args.unit_cell_path},
                             {"disorder_w", args.widths},
                             {"realizations", args.realizations},
                             {"seed", args.seed},
                             {"temp_k", args.temp_k},
                             {"gamma_nr", args.gamma_nr},
                             {"out", args.out_prefix}};
    PhysicalConstants constants;
    constants.gamma_nr = args.gamma_nr;
    fill_constants(manifest.constants(), constants);

    const UnitCell cell = load_cell(args.unit_cell_path);
    manifest.add_input("unit_cell", args.unit_cell_path);

    StageTimer timer;
    const DipoleLattice lattice =
        build_lattice(args.kind, args.spirals, args.n_mt, cell);
    manifest.add_timing("build", timer.lap());

    const auto stats =
        disorder_sweep(lattice, args.widths, args.realizations, args.seed,
                       args.temp_k, constants, assembly_options_from_env());
    manifest.add_timing("sweep", timer.lap());

    std::string csv = "W,mean_qy,std_qy,mean_max_ratio,std_max_ratio\n";
    nlohmann::json extra = nlohmann::json::array();
    for (const auto& row : stats) {
        csv += fmt(row.width) + "," + fmt(row.mean_qy) + "," + fmt(row.std_qy) + "," +
               fmt(row.mean_max_ratio) + "," + fmt(row.std_max_ratio) + "\n";
        extra.push_back({{"W", row.width},
                         {"qy_of_mean_gamma", row.qy_of_mean_gamma},
                         {"mean_qy", row.mean_qy}});
        log_stage("W=" + fmt(row.width) + " mean_qy=" + fmt(row.mean_qy));
    }
    manifest.parameters()["qy_estimators"] = extra;

    const std::string path = args.out_prefix + ".disorder.csv";
    atomic_write(path, csv);
    manifest.add_output(path);
    manifest.write(args.out_prefix);
    std::cout << "wrote: " << path << "\n";
    return kExitOk;
}

int run_rerun(const std::string& manifest_path) {
    const nlohmann::json doc = nlohmann::json::parse(slurp(manifest_path));
    const std::string command = doc.at("command");
    const nlohmann::json& p = doc.at("parameters");
    const std::vector<std::string> argv = doc.at("argv");

    if (command == "extract") {
        ExtractArgs args;
        args.pdb_path = p.at("pdb");
        args.angle_deg = p.at("angle_deg");
        args.anchor = p.at("anchor");
        args.chains = p.at("chains").get<std::vector<std::string>>();
        args.out_path = p.at("out");
        return run_extract(args, argv);
    }
    if (command == "spectrum") {
        SpectrumArgs args;
        args.kind = p.at("kind");
        args.spirals = p.at("spirals");
        args.n_mt = p.at("n_mt");
        args.unit_cell_path = p.at("unit_cell");
        args.temp_k = p.at("temp_k");
        args.gamma_nr = p.at("gamma_nr");
        args.lineshape = p.at("lineshape");
        args.grid_points = p.at("grid_points");
        args.seed = p.at("seed");
        args.realization = p.at("realization");
        args.out_prefix = p.at("out");
        if (p.contains("sigma")) args.sigma = p.at("sigma").get<double>();
        if (p.contains("disorder_w")) args.disorder_w = p.at("disorder_w").get<double>();
        if (p.contains("dump_heff")) args.dump_heff_path = p.at("dump_heff");
        if (p.contains("zero_diagonal_dump"))
            args.zero_diagonal_dump_path = p.at("zero_diagonal_dump");
        if (p.contains("dump_lattice")) args.dump_lattice_path = p.at("dump_lattice");
        return run_spectrum(args, argv);
    }
    if (command == "sweep") {
        SweepArgs args;
        args.kind = p.at("kind");
        args.spirals = p.at("spirals");
        args.n_mt = p.at("n_mt");
        args.unit_cell_path = p.at("unit_cell");
        args.trp_counts = p.at("trp_counts").get<std::vector<std::uint64_t>>();
        args.temp_k = p.at("temp_k");
        args.gamma_nr = p.at("gamma_nr");
        args.out_prefix = p.at("out");
        return run_sweep(args, argv);
    }
    if (command == "disorder") {
        DisorderArgs args;
        args.kind = p.at("kind");
        args.spirals = p.at("spirals");
        args.n_mt = p.at("n_mt");
        args.unit_cell_path = p.at("unit_cell");
        args.widths = p.at("disorder_w").get<std::vector<double>>();
        args.realizations = p.at("realizations");
        args.seed = p.at("seed");
        args.temp_k = p.at("temp_k");
        args.gamma_nr = p.at("gamma_nr");
        args.out_prefix = p.at("out");
        return run_disorder(args, argv);
    }
    throw DomainError("manifest has unknown command '" + command + "'");
}

} // namespace trpnet::cli
