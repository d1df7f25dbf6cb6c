#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace trpnet::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitExtraction = 3;
inline constexpr int kExitDomain = 4;
inline constexpr int kExitNumerical = 5;

struct ExtractArgs {
    std::string pdb_path;
    double angle_deg = -41.0;
    std::string anchor = "CD2";
    std::vector<std::string> chains; // empty = all
    std::string out_path;
};

struct SpectrumArgs {
    std::string kind = "mt";
    int spirals = 1;
    int n_mt = 0;
    std::string unit_cell_path;
    double temp_k = 298.0;
    double gamma_nr = 0.0183;
    std::optional<double> sigma;        // emit lineshape curves when set
    std::string lineshape = "lorentzian";
    int grid_points = 2001;
    std::optional<double> disorder_w;
    std::uint64_t seed = 1;
    std::uint64_t realization = 0;
    std::string dump_heff_path;          // absolute-energy HEFF1 dump
    std::string zero_diagonal_dump_path; // Re(diagonal)-zeroed HEFF1 dump
    std::string dump_lattice_path;
    std::string out_prefix;
};

struct SweepArgs {
    std::string kind = "mt";
    std::string spirals = "1"; // range list, e.g. "1:10" or "1,2,5:40:5"
    int n_mt = 0;
    std::string unit_cell_path;
    std::vector<std::uint64_t> trp_counts; // optional sub-layer prefix points
    double temp_k = 298.0;
    double gamma_nr = 0.0183;
    std::string out_prefix;
};

struct DisorderArgs {
    std::string kind = "mt";
    int spirals = 1;
    int n_mt = 0;
    std::string unit_cell_path;
    std::vector<double> widths;
    int realizations = 10;
    std::uint64_t seed = 1;
    double temp_k = 298.0;
    double gamma_nr = 0.0183;
    std::string out_prefix;
};

int run_extract(const ExtractArgs& args, const std::vector<std::string>& argv);
int run_spectrum(const SpectrumArgs& args, const std::vector<std::string>& argv);
int run_sweep(const SweepArgs& args, const std::vector<std::string>& argv);
int run_disorder(const DisorderArgs& args, const std::vector<std::string>& argv);
int run_rerun(const std::string& manifest_path);

/// Parses "1,3,5:9:2" style range lists into an increasing count sequence.
std::vector<int> parse_range_list(const std::string& text);

/// Maps a thrown trpnet error to the documented exit code and prints it.
int report_error(const std::exception& e);

} // namespace trpnet::cli
