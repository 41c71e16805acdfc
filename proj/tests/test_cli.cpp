#include "cli.hpp"

#include "jacobi/matrix_elements.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using json = nlohmann::json;
using jacobi::cplx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = jacobi::cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

cplx entry(const json& j, std::size_t i, std::size_t k) {
  const auto& e = j["data"]["entries"][i][k];
  return {e[0].get<double>(), e[1].get<double>()};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path scratch_dir() {
  auto dir = std::filesystem::temp_directory_path() / ("jacobi_cli_test_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

} // namespace

TEST_CASE("displacement command") {
  const auto r = run({"displacement", "--alpha", "0,0", "--dims", "8", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 65);
  CHECK(rows[0] == std::vector<std::string>{"row", "col", "re", "im"});
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const bool diag = rows[i][0] == rows[i][1];
    CHECK(std::stod(rows[i][2]) == (diag ? 1.0 : 0.0));
    CHECK(std::stod(rows[i][3]) == 0.0);
  }

  const auto j = run({"displacement", "--alpha", "1,0", "--dims", "8"});
  REQUIRE(j.code == 0);
  const auto doc = json::parse(j.out);
  CHECK(doc["meta"]["command"] == "displacement");
  CHECK(doc["meta"].contains("version"));
  CHECK(doc["data"]["rows"] == 8);
  CHECK(std::abs(entry(doc, 1, 0) - 0.6065307) < 1e-7);

  const auto bad = run({"displacement", "--alpha", "1,zz"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("cannot parse") != std::string::npos);
  CHECK(run({"displacement", "--alpha", "1,2,3"}).code == 2);
}

TEST_CASE("CSV values round-trip exactly") {
  const auto r = run({"squeeze", "--k", "0.75", "--w", "0.3,-0.45", "--dims", "6", "--format", "csv"});
  REQUIRE(r.code == 0);
  const auto t = jacobi::me::me_table(jacobi::me::TableKind::squeeze, jacobi::BargmannIndex(0.75), {0.3, -0.45}, 6);
  const auto rows = csv_rows(r.out);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto a = std::stoul(rows[i][0]), b = std::stoul(rows[i][1]);
    CHECK(std::strtod(rows[i][2].c_str(), nullptr) == t.entries(a, b).real());
    CHECK(std::strtod(rows[i][3].c_str(), nullptr) == t.entries(a, b).imag());
  }
}

TEST_CASE("squeeze command") {
  const auto id = json::parse(run({"squeeze", "--k", "1", "--w", "0,0", "--dims", "4"}).out);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) CHECK(entry(id, i, k) == cplx(i == k ? 1.0 : 0.0));

  const auto both = run({"squeeze", "--k", "2.5", "--w", "0.5,0.6", "--dims", "20", "--form", "both"});
  REQUIRE(both.code == 0);
  CHECK(json::parse(both.out)["diagnostics"]["max_err"].get<double>() <= 1e-12);

  CHECK(run({"squeeze", "--k", "0", "--w", "0.1,0"}).code == 2);
  CHECK(run({"squeeze", "--k", "1", "--w", "0.8,0.8"}).code == 2);
  CHECK(run({"squeeze", "--w", "0.1,0"}).code == 2);
  CHECK(run({"squeeze", "--k", "1", "--form", "other"}).code == 2);
}

TEST_CASE("jacobi command") {
  SUBCASE("alpha = 0 and w = w' = 0 collapses") {
    const auto r = run({"jacobi", "--k", "1.25", "--alpha", "0,0", "--w", "0,0", "--dims", "4,2"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    CHECK(doc["data"]["rows"] == 8);
    for (std::size_t i = 0; i < 8; ++i)
      for (std::size_t k = 0; k < 8; ++k) CHECK(entry(doc, i, k) == cplx(i == k ? 1.0 : 0.0));
    CHECK(doc["diagnostics"]["tail_bound"].get<double>() == 0.0);
  }
  SUBCASE("w = w' = 0 leaves the displacement table") {
    const auto r = run({"jacobi", "--k", "1.25", "--alpha", "0.5,0.2", "--dims", "5"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    for (int i = 0; i < 5; ++i)
      for (int k = 0; k < 5; ++k)
        CHECK(std::abs(entry(doc, i, k) - jacobi::me::displacement_me(i, k, {0.5, 0.2})) < 1e-15);
  }
  SUBCASE("tail-bound column") {
    const auto r = run({"jacobi", "--k", "1", "--alpha", "0.3,0", "--w", "0.2,0.1", "--dims", "3", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(csv_rows(r.out)[0].back() == "tail_bound");
  }
  SUBCASE("tail above tolerance fails") {
    const auto r = run({"jacobi", "--k", "1", "--alpha", "2,0", "--w", "0.2,0.1", "--dims", "3", "--trunc", "2"});
    CHECK(r.code == 1);
    CHECK(r.err.find("tail bound") != std::string::npos);
  }
  CHECK(run({"jacobi", "--k", "0.25", "--dims", "3"}).code == 2);
}

TEST_CASE("coefficients and kernel commands") {
  const auto c = run({"coefficients", "--k", "1", "--z", "0.3,0.1", "--w", "0.2,0", "--trunc", "5,3"});
  REQUIRE(c.code == 0);
  const auto doc = json::parse(c.out);
  CHECK(doc["data"]["n_max"] == 5);
  CHECK(doc["data"]["coeffs"][0][0][0] == 1.0);

  const auto k = run({"kernel", "--k", "1.25", "--z", "0.4,-0.3", "--w", "0.2,0.5", "--z2", "-0.7,0.1", "--w2", "0.3,-0.6"});
  REQUIRE(k.code == 0);
  const auto kv = json::parse(k.out)["data"]["value"];
  CHECK(std::abs(cplx(kv[0], kv[1]) - cplx(0.33393852407973453, 0.29439230093230697)) < 1e-13);
}

TEST_CASE("verify command") {
  const auto g = run({"verify", "group-law", "--seed", "7"});
  REQUIRE(g.code == 0);
  const auto doc = json::parse(g.out);
  CHECK(doc["data"]["suite"] == "group-law");
  CHECK(doc["data"]["pass"] == true);
  CHECK(doc["data"]["cases"].get<int>() > 1000);
  CHECK(doc["data"]["max_abs_err"].get<double>() < 1e-12);

  const auto s = run({"verify", "squeeze", "--k", "0.25"});
  CHECK(s.code == 0);
  CHECK(json::parse(s.out)["data"]["pass"] == true);

  const auto k = run({"verify", "kernel"});
  CHECK(k.code == 0);
  CHECK(json::parse(k.out)["data"]["max_rel_err"].get<double>() < 1e-6);

  // An impossible tolerance fails and echoes the worst input.
  const auto f = run({"verify", "displacement", "--tol", "1e-300"});
  CHECK(f.code == 1);
  CHECK(json::parse(f.out)["data"]["worst_case"].contains("alpha"));

  CHECK(run({"verify", "nonsense"}).code == 2);
  CHECK(run({"verify", "kernel", "--tol", "-1"}).code == 2);
}

TEST_CASE("deterministic output apart from the timestamp") {
  auto strip = [](const std::string& text) {
    auto j = json::parse(text);
    j["meta"].erase("timestamp");
    return j.dump();
  };
  const std::vector<std::string> args{"verify", "covering", "--seed", "3"};
  CHECK(strip(run(args).out) == strip(run(args).out));
  const std::vector<std::string> table{"squeeze", "--k", "0.6", "--w", "0.1,0.7", "--dims", "10"};
  CHECK(strip(run(table).out) == strip(run(table).out));
}

TEST_CASE("output files") {
  const auto dir = scratch_dir();
  const auto ok = dir / "table.json";
  REQUIRE(run({"displacement", "--alpha", "0.2,0", "--dims", "3", "--out", ok.string()}).code == 0);
  std::ifstream in(ok);
  CHECK(json::parse(in)["data"]["rows"] == 3);

  const auto failed = dir / "failed.json";
  CHECK(run({"jacobi", "--k", "1", "--alpha", "2,0", "--dims", "3", "--trunc", "2", "--out", failed.string()}).code == 1);
  CHECK_FALSE(std::filesystem::exists(failed));
  std::size_t files = 0;
  for ([[maybe_unused]] const auto& e : std::filesystem::directory_iterator(dir)) ++files;
  CHECK(files == 1); // no temporaries left behind
  std::filesystem::remove_all(dir);
}

TEST_CASE("usage") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("verify") != std::string::npos);
}
