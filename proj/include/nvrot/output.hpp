#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nvrot/analysis.hpp"
#include "nvrot/config.hpp"
#include "nvrot/evolution.hpp"
#include "nvrot/metrology.hpp"
#include "nvrot/spectrum.hpp"

namespace nvrot {

/// 15 significant digits, "-0" normalised to "0".
std::string format_number(double value);
/// Shortest text that parses back to exactly @p value.
std::string format_exact(double value);

void write_comments(std::ostream &os, std::span<const std::string> comments);

void write_trajectory_csv(std::ostream &os, const Trajectory &traj,
                          std::span<const std::string> comments = {});
void write_spectrum_csv(std::ostream &os, std::span<const SpectrumRow> rows,
                        std::span<const std::string> comments = {});
void write_periodogram_csv(std::ostream &os, const Periodogram &pg,
                           std::span<const std::string> comments = {});
void write_qfi_series_csv(std::ostream &os, const QfiSeries &series,
                          std::span<const std::string> comments = {});
void write_qfi_sweep_csv(std::ostream &os, std::span<const QfiSweepRow> rows,
                         std::span<const std::string> comments = {});
void write_scaling_csv(std::ostream &os, std::span<const ScalingRow> rows,
                       std::span<const std::string> comments = {});
void write_fit(std::ostream &os, const FitResult &fit, OutputFormat format,
               std::span<const std::string> comments = {});

} // namespace nvrot
