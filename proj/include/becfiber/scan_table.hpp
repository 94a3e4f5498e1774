#pragma once

// Tabulated scan results plus the serializers behind the CLI output
// formats: CSV with '#'-prefixed metadata lines, a JSON object
// {config, columns, rows, errors}, and a self-contained SVG line chart.
// Formatting is locale-independent with 12 significant digits, so
// identical tables serialize byte-identically.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace becfiber {

struct ScanTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    // ordered config echo / provenance written into every output file
    std::vector<std::pair<std::string, std::string>> metadata;

    struct RowError {
        std::size_t row = 0;
        std::string message;
    };
    std::vector<RowError> errors;

    bool has_errors() const { return !errors.empty(); }
};

/// %.12g formatting shared by every writer.
std::string format_number(double v);

/// CSV: metadata as "# key = value" lines, then the header, then one line
/// per row. When any row failed, a trailing "status" column (0 ok, 1 failed)
/// is appended so that NaN cells are always accounted for.
std::string to_csv(const ScanTable& table);

/// JSON object {config, columns, rows, errors}; numbers round-trip exactly.
std::string to_json(const ScanTable& table);

/// Parse a table back out of the JSON produced by to_json.
ScanTable from_json(const std::string& text);

struct ChartOptions {
    std::string title;
    std::string x_label = "x";
    std::string y_label = "y";
    std::size_t x_column = 0;
    std::size_t y_column = 1;
    std::optional<double> reference_line;  // dashed horizontal
    std::string reference_label;
    int width = 860;
    int height = 520;
};

/// Minimal deterministic SVG line chart of one column against another,
/// with an optional dashed horizontal reference line.
std::string to_svg(const ScanTable& table, const ChartOptions& options);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace becfiber
