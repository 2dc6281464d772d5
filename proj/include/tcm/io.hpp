#pragma once

#include <span>
#include <string>

#include "tcm/diagnostics.hpp"
#include "tcm/experiments.hpp"
#include "tcm/model.hpp"

namespace tcm {

/// Fixed CSV schema; floats with 17 significant digits.
extern const char* const series_csv_header;

std::string series_to_csv(std::span<const DiagnosticsRecord> records);
void write_series(std::span<const DiagnosticsRecord> records,
                  const std::string& path);

void write_sweep_csv(const SweepResult& result, const std::string& path);

/// Binary checkpoint, magic "TCMS" version 1: n, box_length, time, model
/// parameters and term toggles, the blow-up accumulators, then the
/// little-endian (re,im) f64 pairs of u1,u2,u3,v1,v2,v3,theta in flat mode
/// order.  Round trip is byte-exact.
struct Checkpoint {
    SimState state;
    ModelParams params;
    double pi = 0.0;
    double pi_tilde = 0.0;
};

void write_checkpoint(const SimState& state, const ModelParams& params,
                      const std::string& path, double pi = 0.0,
                      double pi_tilde = 0.0);
Checkpoint read_checkpoint(const std::string& path);

/// Splits a series CSV into per-column "time value" files under out_dir,
/// one file per quantity.  Returns the file names written.
std::vector<std::string> write_plot_data(const std::string& series_csv,
                                         const std::string& out_dir);

std::string format_float(double x); // %.17g

} // namespace tcm
