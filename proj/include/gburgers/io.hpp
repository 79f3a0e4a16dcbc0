#pragma once

#include "gburgers/field.hpp"
#include "gburgers/invariants.hpp"
#include "gburgers/mild_solver.hpp"

#include <string>
#include <vector>

namespace gb {

/// Shortest round-trippable decimal representation; identical output for
/// identical doubles, so CSV artifacts are byte-reproducible.
std::string format_double(double v);

/// Solution CSV with schema: source,t,x,u.
void write_solution_csv(const std::string& path, const std::vector<const Field*>& fields,
                        const std::string& source);

/// Simple SVG line plot of u(., t) for the given profiles.
void write_svg_plot(const std::string& path, const std::vector<const Field*>& fields,
                    const std::string& title);

/// One CSV row per (name, measured, threshold) entry of each report.
void write_reports_csv(const std::string& path, const std::vector<InvariantReport>& reports);

} // namespace gb
