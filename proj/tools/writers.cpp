#include "writers.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace nestres::cli {

std::string fmt_double(double x) {
    return fmt::format("{:.17g}", x);
}

std::string fmt_complex(std::complex<double> z) {
    return fmt::format("{:.10g}{:+.10g}i", z.real(), z.imag());
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw std::invalid_argument(fmt::format("CSV row has {} cells, header has {}", cells.size(), header_.size()));
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string out;
    auto emit = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    emit(header_);
    for (const auto& r : rows_) emit(r);
    return out;
}

nlohmann::json CsvTable::to_json() const {
    auto rows = nlohmann::json::array();
    for (const auto& r : rows_) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t i = 0; i < header_.size(); ++i) {
            const std::string& cell = r[i];
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            const bool numeric = !cell.empty() && end == cell.c_str() + cell.size();
            if (numeric && std::isfinite(v)) {
                if (cell.find_first_of(".eE") == std::string::npos)
                    obj[header_[i]] = std::stoll(cell);
                else
                    obj[header_[i]] = v;
            } else {
                obj[header_[i]] = cell;
            }
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::string tool_version() {
    return "1.0.0";
}

nlohmann::json json_document(const std::string& command, const nlohmann::json& config, const CsvTable& table) {
    nlohmann::json doc;
    doc["metadata"] = {{"command", command}, {"version", tool_version()}, {"config", config}};
    doc["columns"] = table.header();
    doc["rows"] = table.to_json();
    return doc;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

Svg::Svg(double width, double height) : width_(width), height_(height) {}

void Svg::rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke) {
    body_ += fmt::format(R"(<rect x="{:.2f}" y="{:.2f}" width="{:.2f}" height="{:.2f}" fill="{}" stroke="{}"/>)", x,
                         y, w, h, fill, stroke);
    body_ += '\n';
}

void Svg::line(double x1, double y1, double x2, double y2, const std::string& stroke, double width,
               const std::string& dash) {
    body_ += fmt::format(R"(<line x1="{:.2f}" y1="{:.2f}" x2="{:.2f}" y2="{:.2f}" stroke="{}" stroke-width="{}")", x1,
                         y1, x2, y2, stroke, width);
    if (!dash.empty()) body_ += fmt::format(R"( stroke-dasharray="{}")", dash);
    body_ += "/>\n";
}

void Svg::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width) {
    body_ += R"(<polyline fill="none" stroke=")" + stroke + fmt::format(R"(" stroke-width="{}" points=")", width);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) body_ += ' ';
        body_ += fmt::format("{:.2f},{:.2f}", pts[i].first, pts[i].second);
    }
    body_ += "\"/>\n";
}

void Svg::circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke, double width) {
    body_ += fmt::format(R"(<circle cx="{:.2f}" cy="{:.2f}" r="{:.2f}" fill="{}" stroke="{}" stroke-width="{}"/>)",
                         cx, cy, r, fill, stroke, width);
    body_ += '\n';
}

void Svg::text(double x, double y, const std::string& s, double size, const std::string& anchor) {
    body_ += fmt::format(R"(<text x="{:.2f}" y="{:.2f}" font-size="{}" font-family="sans-serif" text-anchor="{}">)",
                         x, y, size, anchor);
    body_ += xml_escape(s) + "</text>\n";
}

void Svg::raw(const std::string& element) {
    body_ += element;
    body_ += '\n';
}

std::string Svg::str() const {
    std::string out = R"(<?xml version="1.0" encoding="UTF-8"?>)";
    out += '\n';
    out += fmt::format(R"(<svg xmlns="http://www.w3.org/2000/svg" width="{0}" height="{1}" viewBox="0 0 {0} {1}">)",
                       width_, height_);
    out += '\n';
    out += fmt::format(R"(<rect x="0" y="0" width="{}" height="{}" fill="white"/>)", width_, height_);
    out += '\n';
    out += body_;
    out += "</svg>\n";
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int count) {
    if (!(hi > lo) || count < 2) return {lo};
    const double raw = (hi - lo) / count;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 2.5, 5.0, 10.0}) {
        step = m * mag;
        if (step >= raw) break;
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * step; t += step)
        ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
    return ticks;
}

void draw_axes(Svg& svg, const Axis& x, const Axis& y, const std::string& xlabel, const std::string& ylabel,
               const std::string& title) {
    const double left = std::min(x.px_lo, x.px_hi);
    const double right = std::max(x.px_lo, x.px_hi);
    const double top = std::min(y.px_lo, y.px_hi);
    const double bottom = std::max(y.px_lo, y.px_hi);
    svg.rect(left, top, right - left, bottom - top, "none", "black");
    for (double t : nice_ticks(x.lo, x.hi)) {
        const double px = x(t);
        svg.line(px, bottom, px, bottom + 5, "black");
        svg.text(px, bottom + 18, fmt::format("{:.3g}", t), 11);
    }
    for (double t : nice_ticks(y.lo, y.hi)) {
        const double py = y(t);
        svg.line(left - 5, py, left, py, "black");
        svg.text(left - 8, py + 4, fmt::format("{:.3g}", t), 11, "end");
    }
    svg.text(0.5 * (left + right), bottom + 38, xlabel, 13);
    svg.raw(fmt::format(
        R"svg(<text x="{0:.2f}" y="{1:.2f}" font-size="13" font-family="sans-serif" text-anchor="middle" transform="rotate(-90 {0:.2f} {1:.2f})">{2}</text>)svg",
        left - 62, 0.5 * (top + bottom), xml_escape(ylabel)));
    svg.text(0.5 * (left + right), top - 12, title, 14);
}

std::string diverging_color(double t) {
    t = std::clamp(t, -1.0, 1.0);
    int r = 255;
    int g = 255;
    int b = 255;
    if (t >= 0.0) {
        g = b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    } else {
        r = g = static_cast<int>(std::lround(255.0 * (1.0 + t)));
    }
    return fmt::format("#{:02x}{:02x}{:02x}", r, g, b);
}

}  // namespace nestres::cli
