#pragma once

#include <complex>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace nestres::cli {

/// Float as 17 significant digits, the CSV and report convention.
std::string fmt_double(double x);

/// Short human-readable complex number for diagnostics.
std::string fmt_complex(std::complex<double> z);

/// Minimal CSV table: header row, comma separated, LF endings.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header);

    /// Cells are already formatted; use fmt_double for floats.
    void add_row(std::vector<std::string> cells);
    [[nodiscard]] std::string str() const;
    [[nodiscard]] const std::vector<std::string>& header() const { return header_; }
    [[nodiscard]] const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    /// Rows as an array of objects keyed by header; numeric cells become numbers.
    [[nodiscard]] nlohmann::json to_json() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& content);

/// {"metadata": {...}, "rows": [...]} for a CSV table.
nlohmann::json json_document(const std::string& command, const nlohmann::json& config, const CsvTable& table);

std::string tool_version();

/// Hand-emitted SVG document. All coordinates are in user units.
class Svg {
public:
    Svg(double width, double height);

    void rect(double x, double y, double w, double h, const std::string& fill, const std::string& stroke = "none");
    void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0,
              const std::string& dash = "");
    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.5);
    void circle(double cx, double cy, double r, const std::string& fill, const std::string& stroke = "none",
                double width = 1.0);
    void text(double x, double y, const std::string& s, double size = 12.0, const std::string& anchor = "middle");
    void raw(const std::string& element);

    [[nodiscard]] std::string str() const;

private:
    double width_;
    double height_;
    std::string body_;
};

/// Escapes &, <, >, " for XML text and attributes.
std::string xml_escape(const std::string& s);

/// Linear map from a data interval onto a pixel interval.
struct Axis {
    double lo;
    double hi;
    double px_lo;
    double px_hi;
    [[nodiscard]] double operator()(double v) const { return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo); }
};

/// About `count` round tick values covering [lo, hi].
std::vector<double> nice_ticks(double lo, double hi, int count = 5);

/// Frame, ticks and labels of a plot panel.
void draw_axes(Svg& svg, const Axis& x, const Axis& y, const std::string& xlabel, const std::string& ylabel,
               const std::string& title);

/// Diverging blue-white-red color for t in [-1, 1].
std::string diverging_color(double t);

}  // namespace nestres::cli
