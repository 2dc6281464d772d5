#include "tcm/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

static_assert(std::endian::native == std::endian::little,
              "checkpoint layout assumes a little-endian host");

namespace tcm {

const char* const series_csv_header =
    "time,l2_u,l2_v,l2_theta,l2_triple,hhalf_triple,h1_triple,h32_triple,"
    "h2_triple,lp_alpha_u,lp_beta_v,bmo_u,bmo_v,bmo_theta,pi,pi_tilde,"
    "energy_residual,damping_res_u,damping_res_v";

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string series_to_csv(std::span<const DiagnosticsRecord> records) {
    std::ostringstream out;
    out << series_csv_header << "\n";
    for (const auto& r : records) {
        const double cols[] = {r.time,        r.l2_u,         r.l2_v,
                               r.l2_theta,    r.l2_triple,    r.hhalf_triple,
                               r.h1_triple,   r.h32_triple,   r.h2_triple,
                               r.lp_alpha_u,  r.lp_beta_v,    r.bmo_u,
                               r.bmo_v,       r.bmo_theta,    r.pi,
                               r.pi_tilde,    r.energy_residual,
                               r.damping_res_u, r.damping_res_v};
        bool first = true;
        for (double c : cols) {
            if (!first) out << ',';
            out << format_float(c);
            first = false;
        }
        out << '\n';
    }
    return out.str();
}

void write_series(std::span<const DiagnosticsRecord> records,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_series: cannot open " + path);
    out << series_to_csv(records);
    if (!out) throw std::runtime_error("write_series: write failed for " + path);
}

void write_sweep_csv(const SweepResult& result, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_sweep_csv: cannot open " + path);
    out << "c0,r_h2,violations,l2_ratio,h2_ratio,pi,delta_sq_integral,"
           "classification\n";
    for (const auto& row : result.rows) {
        out << format_float(row.c0) << ',' << format_float(row.r_h2) << ','
            << row.violations << ',' << format_float(row.l2_ratio) << ','
            << format_float(row.h2_ratio) << ',' << format_float(row.pi) << ','
            << format_float(row.delta_sq_integral) << ',' << row.classification
            << '\n';
    }
    if (!out) throw std::runtime_error("write_sweep_csv: write failed for " + path);
}

namespace {

constexpr char checkpoint_magic[4] = {'T', 'C', 'M', 'S'};
constexpr std::uint32_t checkpoint_version = 1;

template <class T>
void put(std::ostream& out, const T& v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
void get(std::istream& in, T& v) {
    in.read(reinterpret_cast<char*>(&v), sizeof v);
}

void put_field(std::ostream& out, const SpectralScalarField& f) {
    for (const auto& c : f.coeffs) {
        const double re = c.real(), im = c.imag();
        put(out, re);
        put(out, im);
    }
}

void get_field(std::istream& in, SpectralScalarField& f) {
    for (auto& c : f.coeffs) {
        double re, im;
        get(in, re);
        get(in, im);
        c = Complex{re, im};
    }
}

} // namespace

void write_checkpoint(const SimState& state, const ModelParams& params,
                      const std::string& path, double pi, double pi_tilde) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_checkpoint: cannot open " + path);
    out.write(checkpoint_magic, 4);
    put(out, checkpoint_version);
    const std::uint32_t n = static_cast<std::uint32_t>(state.grid()->n());
    put(out, n);
    const double box = state.grid()->box_length();
    put(out, box);
    put(out, state.time);
    put(out, params.nu);
    put(out, params.eta);
    put(out, params.mu);
    put(out, params.sigma1);
    put(out, params.sigma2);
    put(out, params.alpha);
    put(out, params.beta);
    const std::uint8_t toggles[3] = {params.advection, params.coupling,
                                     params.damping};
    out.write(reinterpret_cast<const char*>(toggles), 3);
    put(out, pi);
    put(out, pi_tilde);
    for (int i = 0; i < 3; ++i) put_field(out, state.u[i]);
    for (int i = 0; i < 3; ++i) put_field(out, state.v[i]);
    put_field(out, state.theta);
    if (!out)
        throw std::runtime_error("write_checkpoint: write failed for " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_checkpoint: cannot open " + path);
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, checkpoint_magic, 4) != 0)
        throw std::runtime_error("read_checkpoint: bad magic in " + path);
    std::uint32_t version;
    get(in, version);
    if (version != checkpoint_version)
        throw std::runtime_error("read_checkpoint: unsupported version " +
                                 std::to_string(version));
    std::uint32_t n;
    get(in, n);
    double box;
    get(in, box);

    Checkpoint ck;
    double time;
    get(in, time);
    get(in, ck.params.nu);
    get(in, ck.params.eta);
    get(in, ck.params.mu);
    get(in, ck.params.sigma1);
    get(in, ck.params.sigma2);
    get(in, ck.params.alpha);
    get(in, ck.params.beta);
    std::uint8_t toggles[3];
    in.read(reinterpret_cast<char*>(toggles), 3);
    ck.params.advection = toggles[0];
    ck.params.coupling = toggles[1];
    ck.params.damping = toggles[2];
    get(in, ck.pi);
    get(in, ck.pi_tilde);
    if (!in) throw std::runtime_error("read_checkpoint: truncated header in " + path);

    const auto grid = Grid::make(static_cast<int>(n), box);
    ck.state = SimState(grid);
    ck.state.time = time;
    for (int i = 0; i < 3; ++i) get_field(in, ck.state.u[i]);
    for (int i = 0; i < 3; ++i) get_field(in, ck.state.v[i]);
    get_field(in, ck.state.theta);
    if (!in)
        throw std::runtime_error("read_checkpoint: truncated payload in " + path);
    char extra;
    if (in.read(&extra, 1))
        throw std::runtime_error("read_checkpoint: trailing bytes in " + path);
    return ck;
}

std::vector<std::string> write_plot_data(const std::string& series_csv,
                                         const std::string& out_dir) {
    std::ifstream in(series_csv);
    if (!in)
        throw std::runtime_error("write_plot_data: cannot open " + series_csv);
    std::string header;
    if (!std::getline(in, header))
        throw std::runtime_error("write_plot_data: empty file " + series_csv);

    std::vector<std::string> columns;
    {
        std::istringstream hs(header);
        std::string col;
        while (std::getline(hs, col, ',')) columns.push_back(col);
    }
    if (columns.empty() || columns[0] != "time")
        throw std::runtime_error("write_plot_data: first column must be time");

    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (cells.size() != columns.size())
            throw std::runtime_error("write_plot_data: ragged row in " +
                                     series_csv);
        rows.push_back(std::move(cells));
    }

    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    for (std::size_t c = 1; c < columns.size(); ++c) {
        const std::string path = out_dir + "/" + columns[c] + ".dat";
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("write_plot_data: cannot open " + path);
        for (const auto& row : rows) out << row[0] << ' ' << row[c] << '\n';
        written.push_back(path);
    }
    return written;
}

} // namespace tcm
