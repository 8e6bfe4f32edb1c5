#include "emin/errors.hpp"
#include "emin/experiments.hpp"
#include "emin/io.hpp"
#include "emin/models.hpp"

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <sstream>

using namespace emin;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string &name) {
  const fs::path dir = fs::temp_directory_path() / ("emin_io_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("matrix JSON round trip is bit-identical") {
  const fs::path dir = scratch_dir("roundtrip");
  for (std::uint64_t i = 0; i < 20; ++i) {
    Rng rng({101, i, 0});
    const int rows = 1 + int(i % 5);
    const int cols = 1 + int((i / 5) % 4);
    ComplexMatrix m = ginibre_matrix(rng, rows, cols);
    m(0, 0) *= 1e-300;
    const fs::path p = dir / "m.json";
    io::write_matrix(p, m);
    const ComplexMatrix back = io::read_matrix(p);
    REQUIRE(back.rows() == rows);
    REQUIRE(back.cols() == cols);
    CHECK(std::memcmp(back.data(), m.data(), sizeof(cplx) * m.size()) == 0);
  }
}

TEST_CASE("matrix JSON layout is row-major [re, im] pairs") {
  ComplexMatrix m(2, 2);
  m << cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8);
  const nlohmann::json j = io::matrix_to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 2);
  CHECK(j["data"][1][0] == 3.0);
  CHECK(j["data"][1][1] == 4.0);
  CHECK(j["data"][2][0] == 5.0);
  CHECK(io::matrix_from_json(j) == m);
}

TEST_CASE("matrix parse errors") {
  try {
    io::parse_matrix("{\n  \"rows\": 1,\n  \"cols\": 1,\n  \"data\": [[1, 0]] oops\n}");
    FAIL("expected ParseError");
  } catch (const ParseError &e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 4") != std::string::npos);
    CHECK(msg.find("offset") != std::string::npos);
  }
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 2, "cols": 1, "data": [[1, 0]]})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 1, "cols": 1, "data": [[1]]})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"rows": 0, "cols": 1, "data": []})"),
                  ParseError);
  CHECK_THROWS_AS(io::parse_matrix(R"({"cols": 1, "data": [[1, 0]]})"),
                  ParseError);
  CHECK_THROWS_AS(io::read_matrix("/nonexistent/emin/matrix.json"), Error);
}

TEST_CASE("format_double uses 17 significant digits") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(1.0) == "1");
  CHECK(std::stod(io::format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("records CSV") {
  ScatterConfig cfg;
  cfg.g = 2.0;
  cfg.samples = 25;
  cfg.seed = 3;
  const auto records = run_scatter(cfg);
  const std::string csv = io::records_to_csv(records);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == io::kCsvHeader);
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 7);
  }
  CHECK(rows == 25);
}

TEST_CASE("sha256") {
  CHECK(io::sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(io::sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("manifest lists every file with a matching checksum") {
  const fs::path dir = scratch_dir("manifest");
  const fs::path a = dir / "a.csv";
  const fs::path b = dir / "b.svg";
  io::write_text(a, "x,y\n1,2\n");
  io::write_text(b, "<svg/>");
  io::RunManifest m;
  m.command_line = "emin_lab fig1-scatter";
  m.master_seed = 5;
  m.version = "test";
  m.files = {a, b};
  m.parameters = {{"g", 0.05}};
  io::write_manifest(dir / "manifest.json", m);

  const nlohmann::json j =
      nlohmann::json::parse(io::read_text(dir / "manifest.json"));
  CHECK(j["master_seed"] == 5);
  CHECK(j["command_line"] == "emin_lab fig1-scatter");
  CHECK(j["parameters"]["g"] == 0.05);
  REQUIRE(j["files"].size() == 2);
  for (const auto &f : j["files"]) {
    const fs::path p = dir / f["path"].get<std::string>();
    CHECK(f["sha256"] == io::sha256_hex(io::read_text(p)));
    CHECK(f["bytes"] == fs::file_size(p));
  }
  CHECK(j.contains("wall_clock_seconds"));
}

TEST_CASE("SVG output") {
  io::Series s{"data", {0.0, 1.0, 2.0}, {1.0, -1.0, 0.5}};
  const std::string scatter = io::scatter_svg({s}, "title <&>", "x", "y");
  CHECK(scatter.rfind("<svg", 0) == 0);
  CHECK(scatter.find("</svg>") != std::string::npos);
  CHECK(scatter.find("&lt;&amp;&gt;") != std::string::npos);
  CHECK(scatter.find("<circle") != std::string::npos);
  const std::string line = io::line_svg({s}, "t", "x", "y");
  CHECK(line.find("<polyline") != std::string::npos);
}
