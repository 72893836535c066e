/// @file csv.hpp
/// @brief Deterministic CSV emission (17 significant digits, '.' decimal,
///        '\n' line ends) and a reader for round trips.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "henle/diagnostics.hpp"
#include "henle/grid_solver.hpp"

namespace henle {

/// Locale-independent "%.17g" rendering.
std::string format_double(double v);

/// t,x,u1,u2,q1,q2,u0 rows, one per snapshot and cell.
void write_fields(std::ostream& out, const Trajectory5& traj, const Grid1D& g);
/// Same schema with empty q columns.
void write_fields(std::ostream& out, const Trajectory3& traj, const Grid1D& g);

/// t,u1_at_L,u2_at_0 rows, one per step.
void write_boundary(std::ostream& out, const std::vector<BoundarySample>& boundary);

/// t,H,balance_residual,min_val,max_val,tv_total; the last row has an empty residual.
void write_invariants(std::ostream& out, const DiagnosticSeries& s);

/// eps,gap_q1u1,gap_q2u2,dist_u1,dist_u2,dist_u0 rows plus an `order` row
/// when fitted orders exist.
void write_convergence(std::ostream& out, const ConvergenceReport& r);

/// Writes `content` to `path`, throwing InputError on I/O failure.
void write_file(const std::string& path, const std::string& content);

/// Parsed CSV: header names plus rows; empty cells read as nullopt.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::optional<double>>> rows;
};

CsvTable read_csv(const std::string& path);
CsvTable parse_csv(const std::string& text);

}  // namespace henle
