/// @file csv.cpp
/// @brief CSV writers and reader.

#include "henle/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "henle/errors.hpp"

namespace henle {

std::string format_double(double v) {
    // snprintf honours LC_NUMERIC; the CLI never changes it from "C"
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void row(std::ostream& out, std::initializer_list<std::optional<double>> cells) {
    bool first = true;
    for (const auto& c : cells) {
        if (!first) out << ',';
        first = false;
        if (c) out << format_double(*c);
    }
    out << '\n';
}

}  // namespace

void write_fields(std::ostream& out, const Trajectory5& traj, const Grid1D& g) {
    out << "t,x,u1,u2,q1,q2,u0\n";
    for (const auto& s : traj.snapshots) {
        for (std::size_t i = 0; i < s.size(); ++i)
            row(out, {s.t, g.x(static_cast<int>(i)), s.u1[i], s.u2[i], s.q1[i], s.q2[i], s.u0[i]});
    }
}

void write_fields(std::ostream& out, const Trajectory3& traj, const Grid1D& g) {
    out << "t,x,u1,u2,q1,q2,u0\n";
    for (const auto& s : traj.snapshots) {
        for (std::size_t i = 0; i < s.size(); ++i)
            row(out, {s.t, g.x(static_cast<int>(i)), s.u1[i], s.u2[i], std::nullopt, std::nullopt,
                      s.u0[i]});
    }
}

void write_boundary(std::ostream& out, const std::vector<BoundarySample>& boundary) {
    out << "t,u1_at_L,u2_at_0\n";
    for (const auto& b : boundary) row(out, {b.t, b.u1_at_L, b.u2_at_0});
}

void write_invariants(std::ostream& out, const DiagnosticSeries& s) {
    out << "t,H,balance_residual,min_val,max_val,tv_total\n";
    for (std::size_t n = 0; n < s.t.size(); ++n) {
        std::optional<double> r;
        if (n < s.balance_residual.size()) r = s.balance_residual[n];
        row(out, {s.t[n], s.H[n], r, s.min_val[n], s.max_val[n], s.tv_x[n]});
    }
}

void write_convergence(std::ostream& out, const ConvergenceReport& r) {
    out << "eps,gap_q1u1,gap_q2u2,dist_u1,dist_u2,dist_u0\n";
    for (std::size_t k = 0; k < r.gap_q1u1.size(); ++k)
        row(out, {r.eps_list[k], r.gap_q1u1[k], r.gap_q2u2[k], r.dist_u1[k], r.dist_u2[k],
                  r.dist_u0[k]});
    if (r.order_gap1) {
        out << "order";
        for (const auto& o : {r.order_gap1, r.order_gap2, r.order_u1, r.order_u2, r.order_u0})
            out << ',' << (o ? format_double(*o) : std::string());
        out << '\n';
    }
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw InputError("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw InputError("failed writing '" + path + "'");
}

CsvTable parse_csv(const std::string& text) {
    CsvTable t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& l) {
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ss(l);
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!l.empty() && l.back() == ',') cells.emplace_back();
        return cells;
    };
    if (!std::getline(in, line)) return t;
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::optional<double>> r;
        for (const auto& c : split(line)) {
            if (c.empty()) {
                r.emplace_back();
                continue;
            }
            char* end = nullptr;
            const double v = std::strtod(c.c_str(), &end);
            if (end != c.c_str() + c.size()) r.emplace_back();  // non-numeric label
            else r.emplace_back(v);
        }
        t.rows.push_back(std::move(r));
    }
    return t;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_csv(buf.str());
}

}  // namespace henle
