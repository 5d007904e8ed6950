#include <cstdio>
#include <sstream>
#include <string>

#include "avgkit/cli.hpp"
#include "avgkit/errors.hpp"

namespace avgkit::cli {

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string num(const json& j) {
    if (j.is_number()) return num(j.get<double>());
    if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

void render_modulus(std::ostringstream& out, const json& m) {
    out << "kappa = " << num(m.at("kappa")) << "  (route " << m.at("route").get<std::string>() << ", d = "
        << m.at("d").get<std::size_t>() << ")\n";
    if (m.contains("certificate") && !m.at("certificate").is_null()) {
        const json& c = m.at("certificate");
        out << "  achieving eigenvalue  " << num(c.at("achieving_eigenvalue")) << "\n"
            << "  PSD margin at kappa   " << num(c.at("psd_margin_at_kappa")) << "\n"
            << "  PSD margin below      " << num(c.at("psd_margin_below")) << "\n";
    }
}

void render_rows(std::ostringstream& out, const json& rows, std::initializer_list<const char*> columns) {
    bool first = true;
    for (const char* c : columns) {
        out << (first ? "" : ",") << c;
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const char* c : columns) {
            out << (first ? "" : ",") << num(row.at(c));
            first = false;
        }
        out << "\n";
    }
}

}  // namespace

std::string render_csv(const RunReport& report) {
    std::ostringstream out;
    const json& rows = report.results.at("rows");
    if (report.command == "sweep")
        render_rows(out, rows, {"beta", "c_F", "kappa_closed_form", "oy_bound", "gap"});
    else if (report.command == "compare")
        render_rows(out, rows,
                    {"trial", "dim_u", "dim_v", "dim_intersection", "beta", "c_F", "kappa_exact", "kappa_closed_form",
                     "abs_diff", "oy_bound"});
    else
        throw ParseError("csv output is only available for sweep and compare");
    return out.str();
}

std::string render_text(const RunReport& report) {
    std::ostringstream out;
    const json& r = report.results;
    if (report.command == "kappa") {
        render_modulus(out, r.at("modulus"));
    } else if (report.command == "angles") {
        const json& a = r.at("angles");
        out << "cosines           ";
        for (const auto& c : a.at("cosines")) out << " " << num(c);
        out << "\ndim(U cap V)       " << a.at("dim_intersection").get<std::size_t>() << "\n"
            << "c_D (Dixmier)      " << num(a.at("dixmier")) << "\n"
            << "c_F (Friedrichs)   " << num(a.at("friedrichs")) << "\n";
    } else if (report.command == "closed-form") {
        for (const auto& [key, value] : r.items()) out << key << " = " << num(value) << "\n";
    } else if (report.command == "compare") {
        out << "trials " << r.at("rows").size() << ", max |kappa_exact - kappa_closed_form| = "
            << num(r.at("max_abs_diff")) << " (threshold " << num(r.at("threshold")) << ") "
            << (r.at("passed").get<bool>() ? "PASS" : "FAIL") << "\n";
    } else if (report.command == "sweep") {
        out << render_csv(report);
        out << (r.at("passed").get<bool>() ? "all rows monotone and below the bound\n" : "violations found\n");
    } else if (report.command == "verify-paper") {
        for (const auto& c : r.at("checks"))
            out << "[" << (c.at("passed").get<bool>() ? "PASS" : "FAIL") << "] (" << c.at("name").get<std::string>()
                << ") " << c.at("description").get<std::string>() << "\n";
    } else if (report.command == "random") {
        out << r.at("instance").dump(2) << "\n";
    } else {
        out << r.dump(2) << "\n";
    }
    return out.str();
}

}  // namespace avgkit::cli
