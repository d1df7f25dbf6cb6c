#include "trpnet/unit_cell_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "trpnet/digest.hpp"
#include "trpnet/errors.hpp"

namespace trpnet {

namespace {

constexpr std::string_view kHeaderPrefix = "# unitcell v1 mu2=";

std::string format_full(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& token, const char* what) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size() ||
        !std::isfinite(value)) {
        throw FormatError(std::string("unit-cell file: bad ") + what + " value '" +
                          token + "'");
    }
    return value;
}

} // namespace

void write_unit_cell(const UnitCell& cell, std::ostream& out) {
    if (cell.dipoles.empty()) throw DomainError("cannot write an empty unit cell");
    const double mu2 = cell.dipoles.front().mu_squared;
    for (const auto& d : cell.dipoles) {
        if (d.mu_squared != mu2)
            throw DomainError("unit-cell file format carries a single mu2 for all rows");
    }
    out << kHeaderPrefix << format_full(mu2) << '\n';
    for (const auto& d : cell.dipoles) {
        out << format_full(d.position.x()) << ' ' << format_full(d.position.y()) << ' '
            << format_full(d.position.z()) << ' ' << format_full(d.orientation.x())
            << ' ' << format_full(d.orientation.y()) << ' '
            << format_full(d.orientation.z()) << '\n';
    }
}

void write_unit_cell(const UnitCell& cell, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw DomainError("cannot open '" + path.string() + "' for writing");
    write_unit_cell(cell, out);
}

std::string unit_cell_to_string(const UnitCell& cell) {
    std::ostringstream out;
    write_unit_cell(cell, out);
    return out.str();
}

UnitCell read_unit_cell(std::istream& in, const std::string& label) {
    std::string header;
    if (!std::getline(in, header)) throw FormatError("unit-cell file: empty input");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (!header.starts_with(kHeaderPrefix)) {
        throw FormatError("unit-cell file: bad header '" + header + "'");
    }
    const double mu2 = parse_double(header.substr(kHeaderPrefix.size()), "mu2");
    if (mu2 <= 0.0) throw FormatError("unit-cell file: mu2 must be positive");

    UnitCell cell;
    cell.label = label;

    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::istringstream row(line);
        std::vector<std::string> tokens;
        std::string tok;
        while (row >> tok) tokens.push_back(tok);
        if (tokens.size() != 6) {
            throw FormatError("unit-cell file: expected 6 columns, got " +
                              std::to_string(tokens.size()));
        }
        Dipole d;
        d.position = {parse_double(tokens[0], "x"), parse_double(tokens[1], "y"),
                      parse_double(tokens[2], "z")};
        d.orientation = {parse_double(tokens[3], "ux"), parse_double(tokens[4], "uy"),
                         parse_double(tokens[5], "uz")};
        d.mu_squared = mu2;
        const double norm = d.orientation.norm();
        if (std::abs(norm - 1.0) > 1e-9) {
            throw FormatError("unit-cell file: orientation norm " +
                              std::to_string(norm) + " is not unit");
        }
        d.orientation /= norm;
        cell.dipoles.push_back(d);
    }
    if (cell.dipoles.empty()) throw FormatError("unit-cell file: no dipole rows");
    return cell;
}

UnitCell read_unit_cell(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    std::istringstream stream(text);
    UnitCell cell = read_unit_cell(stream, path.stem().string());
    cell.source.source_sha1 = git_blob_sha1(text);
    return cell;
}

UnitCell unit_cell_from_string(const std::string& text, const std::string& label) {
    std::istringstream stream(text);
    UnitCell cell = read_unit_cell(stream, label);
    cell.source.source_sha1 = git_blob_sha1(text);
    return cell;
}

} // namespace trpnet
