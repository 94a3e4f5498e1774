#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "becfiber/scan_table.hpp"

using becfiber::ChartOptions;
using becfiber::ScanTable;

namespace {

ScanTable sample_table() {
    ScanTable table;
    table.metadata = {{"tool", "becfiber"}, {"sigma_bar", "50"}, {"w0_bar", "70.7106781187"}};
    table.columns = {"theta", "xi0_sq", "xi_over_n"};
    table.rows = {{0.0, 0.2498, 0.0666}, {0.01, 0.2201, 0.0666}, {0.02, 0.15155, 0.0666}};
    return table;
}

}  // namespace

TEST_CASE("CSV output is deterministic with config echo up front") {
    const auto table = sample_table();
    const std::string csv = becfiber::to_csv(table);
    CHECK(csv == becfiber::to_csv(table));
    CHECK(csv.rfind("# tool = becfiber\n", 0) == 0);
    CHECK(csv.find("# sigma_bar = 50\n") != std::string::npos);
    CHECK(csv.find("theta,xi0_sq,xi_over_n\n") != std::string::npos);
    CHECK(csv.find("0.01,0.2201,0.0666\n") != std::string::npos);
    // 12 significant digits survive
    CHECK(csv.find("70.7106781187") != std::string::npos);
}

TEST_CASE("JSON round trip preserves columns, rows, and config") {
    const auto table = sample_table();
    const ScanTable back = becfiber::from_json(becfiber::to_json(table));
    CHECK(back.columns == table.columns);
    CHECK(back.metadata == table.metadata);
    REQUIRE(back.rows.size() == table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        for (std::size_t c = 0; c < table.rows[r].size(); ++c)
            CHECK(back.rows[r][c] == table.rows[r][c]);  // exact
    CHECK_FALSE(back.has_errors());
}

TEST_CASE("failed rows surface as a status column and error entries") {
    auto table = sample_table();
    table.rows.push_back({0.03, std::numeric_limits<double>::quiet_NaN(), 0.0666});
    table.errors.push_back({3, "quadrature failed"});

    const std::string csv = becfiber::to_csv(table);
    CHECK(csv.find("theta,xi0_sq,xi_over_n,status\n") != std::string::npos);
    CHECK(csv.find(",nan,") != std::string::npos);
    CHECK(csv.find("# error row 3: quadrature failed\n") != std::string::npos);
    CHECK(csv.find("0.0666,1\n") != std::string::npos);

    const ScanTable back = becfiber::from_json(becfiber::to_json(table));
    REQUIRE(back.errors.size() == 1);
    CHECK(back.errors[0].row == 3);
    CHECK(std::isnan(back.rows[3][1]));
}

TEST_CASE("SVG chart contains the curve and the dashed reference line") {
    ChartOptions options;
    options.title = "angular scan";
    options.x_label = "theta";
    options.y_label = "|xi0|^2";
    options.reference_line = 0.0666;
    options.reference_label = "xi/N";
    const std::string svg = becfiber::to_svg(sample_table(), options);
    CHECK(svg.rfind("<svg xmlns=", 0) == 0);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("xi/N") != std::string::npos);
    CHECK(svg == becfiber::to_svg(sample_table(), options));

    ScanTable empty;
    empty.columns = {"x", "y"};
    CHECK_THROWS_AS(becfiber::to_svg(empty, options), std::invalid_argument);
}
