#pragma once

#include <string>
#include <vector>

#include "dsr/energy.hpp"
#include "dsr/experiments.hpp"
#include "dsr/format.hpp"
#include "dsr/trace.hpp"

namespace dsr {

// Trace CSV. Columns: time, wheel_angle, wheel_rate, stool_angle, stool_rate,
// torque_u, tau, desired_angle, ke, ie, le and, for fluid runs, fluid_ke,
// fluid_diss, v_0 .. v_{N-1}.
std::string trace_to_csv(const SimulationTrace& trace);
void write_trace_csv(const SimulationTrace& trace, const std::string& path);
SimulationTrace read_trace_csv(const std::string& path);

// Validation table CSV with the ValidationRow fields in order.
std::string table_to_csv(const std::vector<ValidationRow>& rows);
void write_table_csv(const std::vector<ValidationRow>& rows, const std::string& path);

// Energy audit CSV derived from a trace: the ledger columns plus the balance
// residual and an input-energy cross-check recomputed from torque * rate.
std::string audit_to_csv(const SimulationTrace& trace);
void write_audit_csv(const SimulationTrace& trace, const std::string& path);

// Minimal self-contained SVG line plot of trace columns against time.
std::string plot_to_svg(const SimulationTrace& trace, const std::vector<std::string>& columns);
void write_plot_svg(const SimulationTrace& trace, const std::vector<std::string>& columns,
                    const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Pairs file for the validation table: header line then inner_cm,outer_cm rows.
std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path);

}  // namespace dsr
