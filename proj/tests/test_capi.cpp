#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>

#include "ceu/ceu.h"

namespace {
const char* kConfig = R"({
  "scenario": "one",
  "lattice": {"n_points": 256, "y_min": -10.0, "y_max": 10.0},
  "states": {"kind": "gaussian", "width": 1.0},
  "profiles": {"f": {"shape": "gaussian", "width": 0.2},
               "g": {"shape": "gaussian", "width": 0.2}},
  "orders": [1.0, 2.0],
  "tolerance": 1e-3
})";
}

TEST_CASE("version string") {
    CHECK(std::strlen(ceu_version()) > 0);
}

TEST_CASE("open rejects malformed input with a message") {
    ceu_experiment* exp = nullptr;
    char err[256] = {0};
    CHECK(ceu_open_json("{broken", &exp, err, sizeof(err)) == CEU_CONFIG_ERROR);
    CHECK(exp == nullptr);
    CHECK(std::strlen(err) > 0);
    CHECK(ceu_open("/no/such/file.json", &exp, err, sizeof(err)) == CEU_CONFIG_ERROR);
    CHECK(ceu_open_json(nullptr, &exp, err, sizeof(err)) == CEU_INVALID_ARGUMENT);
}

TEST_CASE("validate reports derived quantities") {
    ceu_experiment* exp = nullptr;
    REQUIRE(ceu_open_json(kConfig, &exp, nullptr, 0) == CEU_OK);
    CHECK(ceu_validate(exp) == CEU_OK);
    CHECK(std::string(ceu_last_error(exp)).find("kappa") != std::string::npos);
    ceu_close(exp);
}

TEST_CASE("run and read back rows") {
    ceu_experiment* exp = nullptr;
    REQUIRE(ceu_open_json(kConfig, &exp, nullptr, 0) == CEU_OK);
    const std::string dir =
        (std::filesystem::temp_directory_path() / "ceu_capi_run").string();
    CHECK(ceu_run(exp, dir.c_str(), 2, -1.0, "both") == CEU_OK);
    REQUIRE(ceu_row_count(exp) == 2);
    ceu_row row;
    REQUIRE(ceu_get_row(exp, 1, &row) == CEU_OK);
    CHECK(row.alpha == 2.0);
    CHECK(row.margin >= 0.0);
    CHECK(std::string(row.scenario) == "one");
    CHECK(ceu_get_row(exp, 99, &row) == CEU_INVALID_ARGUMENT);
    CHECK(std::filesystem::exists(std::filesystem::path(dir) / "results.csv"));
    CHECK(ceu_run(exp, dir.c_str(), 1, -1.0, "xml") == CEU_INVALID_ARGUMENT);
    ceu_close(exp);
}

TEST_CASE("convenience numerics") {
    const double probs[2] = {0.75, 0.25};
    double v = 0.0;
    REQUIRE(ceu_renyi_entropy(probs, 2, 2.0, &v) == CEU_OK);
    CHECK(std::abs(v - 0.470004) <= 1e-6);
    CHECK(ceu_renyi_entropy(probs, 2, -1.0, &v) == CEU_INVALID_ARGUMENT);

    double k = 0.0;
    REQUIRE(ceu_kappa(2.0, &k) == CEU_OK);
    CHECK(std::abs(k - std::sqrt(6.75)) <= 1e-12);
    CHECK(ceu_kappa(0.2, &k) == CEU_INVALID_ARGUMENT);
}
