#include "dsr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string_view>

#include "dsr/errors.hpp"

namespace dsr {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    for (;;) {
        size_t pos = line.find(sep);
        out.push_back(trim(line.substr(0, pos)));
        if (pos == std::string_view::npos) break;
        line = line.substr(pos + 1);
    }
    return out;
}

double cell_or_fail(std::string_view token, size_t line_no) {
    double value = 0.0;
    if (!parse_double(token, value))
        throw ConfigError("line " + std::to_string(line_no) + ": cannot parse '" +
                          std::string(token) + "' as a number");
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buffer[64];
    auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    if (ec != std::errc{}) throw NumericalError("number formatting failed");
    return std::string(buffer, end);
}

bool parse_double(std::string_view token, double& out) {
    token = trim(token);
    if (token.empty()) return false;
    const char* first = token.data();
    const char* last = token.data() + token.size();
    if (*first == '+') ++first;  // from_chars rejects an explicit plus sign
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return false;
    out = value;
    return true;
}

std::string trace_to_csv(const SimulationTrace& trace) {
    std::ostringstream out;
    auto names = trace.column_names();
    for (size_t c = 0; c < names.size(); ++c) out << (c ? "," : "") << names[c];
    out << "\n";
    for (size_t i = 0; i < trace.samples.size(); ++i) {
        const TraceSample& s = trace.samples[i];
        out << format_double(s.time) << "," << format_double(s.wheel_angle) << ","
            << format_double(s.wheel_rate) << "," << format_double(s.stool_angle) << ","
            << format_double(s.stool_rate) << "," << format_double(s.torque_u) << ","
            << format_double(s.tau) << "," << format_double(s.desired_angle) << ","
            << format_double(s.ke) << "," << format_double(s.ie) << "," << format_double(s.le);
        if (trace.has_fluid) {
            out << "," << format_double(s.fluid_ke) << "," << format_double(s.fluid_diss);
            for (double v : trace.field[i]) out << "," << format_double(v);
        }
        out << "\n";
    }
    return out.str();
}

void write_trace_csv(const SimulationTrace& trace, const std::string& path) {
    write_text_file(path, trace_to_csv(trace));
}

SimulationTrace read_trace_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw ConfigError(path + ": empty trace file");

    auto header = split(line, ',');
    static const char* kRigid[11] = {"time", "wheel_angle", "wheel_rate",    "stool_angle",
                                     "stool_rate", "torque_u", "tau",        "desired_angle",
                                     "ke",   "ie",          "le"};
    if (header.size() < 11)
        throw ConfigError(path + ": expected at least the 11 rigid trace columns");
    for (size_t c = 0; c < 11; ++c)
        if (header[c] != kRigid[c])
            throw ConfigError(path + ": unexpected trace column '" + std::string(header[c]) + "'");

    SimulationTrace trace;
    size_t field_points = 0;
    if (header.size() > 11) {
        if (header.size() < 13 || header[11] != "fluid_ke" || header[12] != "fluid_diss")
            throw ConfigError(path + ": unexpected trace column '" + std::string(header[11]) + "'");
        trace.has_fluid = true;
        field_points = header.size() - 13;
        for (size_t c = 0; c < field_points; ++c) {
            std::string expected = "v_" + std::to_string(c);
            if (header[13 + c] != expected)
                throw ConfigError(path + ": unexpected trace column '" + std::string(header[13 + c]) +
                                  "'");
        }
    }
    trace.meta.model = trace.has_fluid ? "fluid" : "rigid";
    trace.meta.grid_points = static_cast<int>(field_points);
    // The file carries no grid geometry; index placeholders let v_i columns
    // resolve by name on a loaded trace.
    trace.radii.resize(field_points);
    for (size_t c = 0; c < field_points; ++c) trace.radii[c] = static_cast<double>(c);

    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cells = split(line, ',');
        if (cells.size() != header.size())
            throw ConfigError(path + ": line " + std::to_string(line_no) + " has " +
                              std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(header.size()));
        TraceSample s;
        s.time = cell_or_fail(cells[0], line_no);
        s.wheel_angle = cell_or_fail(cells[1], line_no);
        s.wheel_rate = cell_or_fail(cells[2], line_no);
        s.stool_angle = cell_or_fail(cells[3], line_no);
        s.stool_rate = cell_or_fail(cells[4], line_no);
        s.torque_u = cell_or_fail(cells[5], line_no);
        s.tau = cell_or_fail(cells[6], line_no);
        s.desired_angle = cell_or_fail(cells[7], line_no);
        s.ke = cell_or_fail(cells[8], line_no);
        s.ie = cell_or_fail(cells[9], line_no);
        s.le = cell_or_fail(cells[10], line_no);
        if (trace.has_fluid) {
            s.fluid_ke = cell_or_fail(cells[11], line_no);
            s.fluid_diss = cell_or_fail(cells[12], line_no);
            std::vector<double> row(field_points);
            for (size_t c = 0; c < field_points; ++c) row[c] = cell_or_fail(cells[13 + c], line_no);
            trace.field.push_back(std::move(row));
        }
        trace.samples.push_back(s);
    }
    if (trace.samples.empty()) throw ConfigError(path + ": trace has no samples");
    return trace;
}

std::string table_to_csv(const std::vector<ValidationRow>& rows) {
    std::ostringstream out;
    out << "inner_cm,outer_cm,gap_percent,angle_pde,angle_keff,percent_error,settled\n";
    for (const ValidationRow& r : rows) {
        out << format_double(r.inner_cm) << "," << format_double(r.outer_cm) << ","
            << format_double(r.gap_percent) << "," << format_double(r.angle_pde) << ","
            << format_double(r.angle_keff) << "," << format_double(r.percent_error) << ","
            << (r.settled ? 1 : 0) << "\n";
    }
    return out.str();
}

void write_table_csv(const std::vector<ValidationRow>& rows, const std::string& path) {
    write_text_file(path, table_to_csv(rows));
}

std::string audit_to_csv(const SimulationTrace& trace) {
    std::vector<EnergyLedger> ledgers = energy_ledgers(trace);
    std::vector<double> ie_check = input_energy(trace);
    std::ostringstream out;
    out << "time,kinetic_rigid,input_energy,lost_energy,fluid_kinetic,fluid_dissipated,"
           "balance_residual,input_energy_check\n";
    for (size_t i = 0; i < ledgers.size(); ++i) {
        const EnergyLedger& l = ledgers[i];
        out << format_double(trace.samples[i].time) << "," << format_double(l.kinetic_rigid) << ","
            << format_double(l.input_energy_cum) << "," << format_double(l.lost_energy_cum) << ","
            << format_double(l.fluid_kinetic) << "," << format_double(l.fluid_dissipation_cum) << ","
            << format_double(l.balance_residual) << "," << format_double(ie_check[i]) << "\n";
    }
    return out.str();
}

void write_audit_csv(const SimulationTrace& trace, const std::string& path) {
    write_text_file(path, audit_to_csv(trace));
}

namespace {

// Fixed-precision tick label, trimmed of trailing zeros.
std::string tick_label(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    return buffer;
}

constexpr const char* kPalette[6] = {"#1f77b4", "#d62728", "#2ca02c",
                                     "#9467bd", "#ff7f0e", "#8c564b"};

}  // namespace

std::string plot_to_svg(const SimulationTrace& trace, const std::vector<std::string>& columns) {
    if (columns.empty()) throw ConfigError("plot needs at least one column");
    if (trace.samples.size() < 2) throw ConfigError("plot needs at least two samples");

    std::vector<double> times = trace.times();
    std::vector<std::vector<double>> series;
    series.reserve(columns.size());
    for (const std::string& name : columns) {
        try {
            series.push_back(trace.column(name));
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
    }

    double x_min = times.front(), x_max = times.back();
    double y_min = std::numeric_limits<double>::infinity();
    double y_max = -y_min;
    for (const auto& s : series)
        for (double v : s)
            if (std::isfinite(v)) {
                y_min = std::min(y_min, v);
                y_max = std::max(y_max, v);
            }
    if (!(y_min <= y_max)) throw NumericalError("plot columns contain no finite values");
    if (x_max <= x_min) x_max = x_min + 1.0;
    double pad = (y_max - y_min) * 0.05;
    if (pad <= 0.0) pad = std::abs(y_max) * 0.05 + 1e-12;
    y_min -= pad;
    y_max += pad;

    const double width = 900.0, height = 560.0;
    const double left = 72.0, right = 24.0, top = 24.0, bottom = 48.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;
    auto sx = [&](double t) { return left + (t - x_min) / (x_max - x_min) * plot_w; };
    auto sy = [&](double v) { return top + (y_max - v) / (y_max - y_min) * plot_h; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w << "\" height=\""
        << plot_h << "\" fill=\"none\" stroke=\"#444\"/>\n";

    const int ticks = 5;
    out << "<g font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">\n";
    for (int k = 0; k <= ticks; ++k) {
        double f = static_cast<double>(k) / ticks;
        double tx = x_min + f * (x_max - x_min);
        double px = sx(tx);
        out << "<line x1=\"" << px << "\" y1=\"" << top + plot_h << "\" x2=\"" << px << "\" y2=\""
            << top + plot_h + 6 << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << px << "\" y=\"" << top + plot_h + 20
            << "\" text-anchor=\"middle\">" << tick_label(tx) << "</text>\n";
        double ty = y_min + f * (y_max - y_min);
        double py = sy(ty);
        out << "<line x1=\"" << left - 6 << "\" y1=\"" << py << "\" x2=\"" << left << "\" y2=\""
            << py << "\" stroke=\"#444\"/>\n";
        out << "<text x=\"" << left - 10 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\">" << tick_label(ty) << "</text>\n";
    }
    out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\">time</text>\n";
    out << "</g>\n";

    for (size_t c = 0; c < series.size(); ++c) {
        const char* color = kPalette[c % 6];
        out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (size_t i = 0; i < times.size(); ++i) {
            double v = series[c][i];
            if (!std::isfinite(v)) continue;
            if (!first) out << " ";
            first = false;
            char buffer[64];
            std::snprintf(buffer, sizeof(buffer), "%.2f,%.2f", sx(times[i]), sy(v));
            out << buffer;
        }
        out << "\"/>\n";
        double ly = top + 18.0 + 18.0 * static_cast<double>(c);
        out << "<line x1=\"" << left + 12 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + 40
            << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << left + 46 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#222\">" << columns[c]
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_plot_svg(const SimulationTrace& trace, const std::vector<std::string>& columns,
                    const std::string& path) {
    write_text_file(path, plot_to_svg(trace, columns));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    out << content;
    if (!out) throw ConfigError("failed writing " + path);
}

std::vector<std::pair<double, double>> read_pairs_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::vector<std::pair<double, double>> pairs;
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view body = line;
        if (size_t hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
        body = trim(body);
        if (body.empty()) continue;
        auto cells = split(body, ',');
        double a = 0.0, b = 0.0;
        if (cells.size() == 2 && parse_double(cells[0], a) && parse_double(cells[1], b)) {
            pairs.emplace_back(a, b);
        } else if (pairs.empty() && line_no == 1) {
            continue;  // header line
        } else {
            throw ConfigError(path + ": line " + std::to_string(line_no) +
                              ": expected inner_cm,outer_cm");
        }
    }
    if (pairs.empty()) throw ConfigError(path + ": no radius pairs found");
    return pairs;
}

}  // namespace dsr
