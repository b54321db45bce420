#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fte/csv.hpp"
#include "fte/errors.hpp"
#include "fte/svg.hpp"

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  const fs::path dir = fs::path("test_out") / "csv_svg";
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("value formatting uses 12 significant digits") {
  CHECK(fte::format_value(0.0) == "0");
  CHECK(fte::format_value(1.0) == "1");
  CHECK(fte::format_value(1.0 / 3.0) == "0.333333333333");
  CHECK(fte::format_value(-2.5e-7) == "-2.5e-07");
  CHECK(fte::format_value(300.0) == "300");
}

TEST_CASE("csv emission and parsing round-trip") {
  const fs::path p = scratch_dir() / "roundtrip.csv";
  fte::Table t;
  t.columns = {"t", "u", "v"};
  t.rows = {{0.0, 1.0 / 3.0, -2.5e-7},
            {1e-3, 2.0, 3.14159265358979},
            {2e-3, -0.0, 1e308}};
  fte::emit_csv(t, p);

  const fte::Table back = fte::parse_csv(p);
  REQUIRE(back.columns == t.columns);
  REQUIRE(back.rows.size() == 3);
  // Parsed values equal the printed decimals exactly, and a second emission
  // reproduces the same bytes.
  const fs::path p2 = scratch_dir() / "roundtrip2.csv";
  fte::emit_csv(back, p2);
  CHECK(slurp(p) == slurp(p2));
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      const double orig = t.rows[r][c];
      const double got = back.rows[r][c];
      const double rel =
          std::abs(orig) > 0 ? std::abs(got - orig) / std::abs(orig) : got;
      CHECK(rel <= 1e-11);  // 12 significant digits
    }
}

TEST_CASE("empty table emits a header-only file") {
  const fs::path p = scratch_dir() / "header_only.csv";
  fte::Table t;
  t.columns = {"a", "b"};
  fte::emit_csv(t, p);
  CHECK(slurp(p) == "a,b\n");
  const fte::Table back = fte::parse_csv(p);
  CHECK(back.columns == t.columns);
  CHECK(back.rows.empty());
}

TEST_CASE("csv uses LF line endings only") {
  const fs::path p = scratch_dir() / "lf.csv";
  fte::Table t;
  t.columns = {"x"};
  t.rows = {{1.0}, {2.0}};
  fte::emit_csv(t, p);
  const std::string bytes = slurp(p);
  CHECK(bytes.find('\r') == std::string::npos);
  CHECK(bytes.back() == '\n');
}

TEST_CASE("emission rejects ragged rows") {
  fte::Table t;
  t.columns = {"a", "b"};
  t.rows = {{1.0}};
  CHECK_THROWS_AS(fte::emit_csv(t, scratch_dir() / "ragged.csv"),
                  fte::IoError);
}

TEST_CASE("parser reports the offending line") {
  const fs::path p = scratch_dir() / "bad.csv";
  {
    std::ofstream out(p, std::ios::binary);
    out << "a,b\n1,2\n3,oops\n";
  }
  CHECK_THROWS_WITH_AS((void)fte::parse_csv(p), doctest::Contains("line 3"),
                       fte::IoError);

  const fs::path p2 = scratch_dir() / "short_row.csv";
  {
    std::ofstream out(p2, std::ios::binary);
    out << "a,b\n1,2\n3\n";
  }
  CHECK_THROWS_WITH_AS((void)fte::parse_csv(p2), doctest::Contains("line 3"),
                       fte::IoError);
}

TEST_CASE("parser rejects missing files") {
  CHECK_THROWS_AS((void)fte::parse_csv(scratch_dir() / "absent.csv"),
                  fte::IoError);
}

TEST_CASE("svg emission") {
  fte::PanelSpec panel;
  panel.title = "flat line";
  panel.y_label = "value [-]";
  fte::Series s;
  s.label = "constant";
  s.style = "solid";
  s.t = {0.0, 1.0, 2.0, 3.0};
  s.y = {2.0, 2.0, 2.0, 2.0};
  panel.series.push_back(s);

  SUBCASE("constant series produces a horizontal polyline") {
    const fs::path p = scratch_dir() / "flat.svg";
    fte::emit_svg({panel}, p);
    const std::string bytes = slurp(p);
    CHECK(bytes.find("<svg") != std::string::npos);
    CHECK(bytes.find("polyline") != std::string::npos);
    CHECK(bytes.find("constant") != std::string::npos);
    CHECK(bytes.find("time [s]") != std::string::npos);
    // All sample points share one y coordinate.
    const std::size_t pts = bytes.find("points=");
    REQUIRE(pts != std::string::npos);
    const std::size_t quote1 = bytes.find('"', pts);
    const std::size_t quote2 = bytes.find('"', quote1 + 1);
    const std::string points = bytes.substr(quote1 + 1, quote2 - quote1 - 1);
    std::istringstream iss(points);
    std::string pair;
    std::string y_coord;
    while (iss >> pair) {
      const std::string this_y = pair.substr(pair.find(',') + 1);
      if (y_coord.empty()) y_coord = this_y;
      CHECK(this_y == y_coord);
    }
  }
  SUBCASE("emission is deterministic") {
    const fs::path p1 = scratch_dir() / "det1.svg";
    const fs::path p2 = scratch_dir() / "det2.svg";
    fte::emit_svg({panel}, p1);
    fte::emit_svg({panel}, p2);
    CHECK(slurp(p1) == slurp(p2));
  }
  SUBCASE("line styles map to dash patterns") {
    fte::PanelSpec multi = panel;
    fte::Series dashed = s;
    dashed.label = "dashed series";
    dashed.style = "dashed";
    dashed.y = {1.0, 1.5, 1.2, 1.7};
    multi.series.push_back(dashed);
    fte::Series dashdot = s;
    dashdot.label = "dash-dot series";
    dashdot.style = "dash-dot";
    dashdot.y = {0.5, 0.6, 0.4, 0.8};
    multi.series.push_back(dashdot);
    const fs::path p = scratch_dir() / "styles.svg";
    fte::emit_svg({multi}, p);
    const std::string bytes = slurp(p);
    CHECK(bytes.find("stroke-dasharray") != std::string::npos);
  }
  SUBCASE("log panels label decades") {
    fte::PanelSpec logp;
    logp.title = "decades";
    logp.y_label = "magnitude";
    logp.log_y = true;
    fte::Series ls;
    ls.label = "decay";
    ls.style = "solid";
    for (int i = 0; i <= 100; ++i) {
      ls.t.push_back(0.1 * i);
      ls.y.push_back(std::pow(10.0, -3.0 * 0.01 * i));
    }
    logp.series.push_back(ls);
    const fs::path p = scratch_dir() / "log.svg";
    fte::emit_svg({logp}, p);
    const std::string bytes = slurp(p);
    CHECK(bytes.find("1e") != std::string::npos);
  }
  SUBCASE("empty inputs are rejected") {
    CHECK_THROWS_AS(fte::emit_svg({}, scratch_dir() / "none.svg"),
                    std::invalid_argument);
    fte::PanelSpec blank;
    blank.title = "empty";
    CHECK_THROWS_AS(fte::emit_svg({blank}, scratch_dir() / "none.svg"),
                    std::invalid_argument);
  }
  SUBCASE("unwritable destination raises an io error") {
    CHECK_THROWS_AS(
        fte::emit_svg({panel}, fs::path("/nonexistent_dir") / "x.svg"),
        fte::IoError);
  }
}

TEST_CASE("long series are decimated but keep the final sample") {
  fte::PanelSpec panel;
  panel.title = "long";
  panel.y_label = "v";
  fte::Series s;
  s.label = "ramp";
  s.style = "solid";
  const int n = 10000;
  for (int i = 0; i <= n; ++i) {
    s.t.push_back(i * 1e-3);
    s.y.push_back(i * 1e-3);
  }
  panel.series.push_back(s);
  const fs::path p = scratch_dir() / "long.svg";
  fte::emit_svg({panel}, p);
  const std::string bytes = slurp(p);
  // Point count stays bounded regardless of input length.
  std::size_t commas = 0;
  const std::size_t pts = bytes.find("points=");
  const std::size_t quote1 = bytes.find('"', pts);
  const std::size_t quote2 = bytes.find('"', quote1 + 1);
  for (std::size_t i = quote1; i < quote2; ++i)
    if (bytes[i] == ',') ++commas;
  CHECK(commas <= 2500);
  CHECK(commas >= 100);
}
