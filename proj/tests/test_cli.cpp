#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "floqlab/config.hpp"
#include "floqlab/errors.hpp"
#include "floqlab/io.hpp"
#include "floqlab/runner.hpp"

using namespace floqlab;
using config::RunConfig;

namespace {

std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("floqlab_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

std::string write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    return path.string();
}

}  // namespace

TEST_CASE("config: minimal file gets defaults") {
    const auto dir = temp_dir("minimal");
    const auto path = write_file(dir / "run.cfg", "scenario = RES_SIN\n");
    const RunConfig cfg = config::load_config(path);
    CHECK(cfg.scenario_name == "RES_SIN");
    CHECK(cfg.scenario().basis.n_points == 512);
    CHECK(cfg.format == "csv");
    CHECK(cfg.interior_fraction == 0.5);
}

TEST_CASE("config: unknown keys are rejected with the key name") {
    try {
        config::parse_config_text("scenario = RES_SIN\nbasis.n_pts = 256\n");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("basis.n_pts") != std::string::npos);
    }
}

TEST_CASE("config: invalid values name the offending key") {
    const auto dir = temp_dir("badvalue");
    const auto path = write_file(dir / "run.cfg",
                                 "scenario = inline\n"
                                 "basis.n_points = -4\n"
                                 "field.shape = sin(1,1)\n");
    CHECK_THROWS_AS(config::load_config(path), Error);

    CHECK_THROWS_AS(config::parse_config_text("time_steps = maybe\n"), ValidationError);
    CHECK_THROWS_AS(config::parse_config_text("broken line without equals\n"), ParseError);
}

TEST_CASE("config: save/load round-trip") {
    RunConfig cfg;
    cfg.scenario_name = "inline";
    cfg.inline_scenario.basis.n_points = 128;
    cfg.inline_scenario.basis.half_width = 9.5;
    cfg.inline_scenario.field.shape = grid::FuncSpec::cosine(0.7, 1.0);
    cfg.inline_scenario.potential = grid::FuncSpec::gaussian(0.25, 1.5);
    cfg.inline_scenario.time_steps = 64;
    cfg.arc_lo = -1.25;
    cfg.arc_hi = 2.5;
    cfg.eps_grid = {0.3, 0.15};
    cfg.seed = 99;
    cfg.weight_min = 0.2;
    cfg.radius = 0.97;

    const RunConfig back = config::parse_config_text(config::save_config(cfg));
    CHECK(back.scenario_name == "inline");
    CHECK(back.inline_scenario.basis.n_points == 128);
    CHECK(back.inline_scenario.basis.half_width == 9.5);
    CHECK(back.inline_scenario.field.shape.str() == cfg.inline_scenario.field.shape.str());
    CHECK(back.inline_scenario.potential.str() == cfg.inline_scenario.potential.str());
    CHECK(back.arc_lo == cfg.arc_lo);
    CHECK(back.arc_hi == cfg.arc_hi);
    CHECK(back.eps_grid == cfg.eps_grid);
    CHECK(back.seed == 99);
    CHECK(back.weight_min == 0.2);
    CHECK(back.radius == 0.97);
    // and the round-trip is a fixed point textually
    CHECK(config::save_config(back) == config::save_config(cfg));
}

TEST_CASE("config: JSON alternative with the same keys") {
    const std::string json = R"cfg({
        "scenario": "inline",
        "basis.n_points": 64,
        "basis.half_width": 8.0,
        "field.shape": "sin(1,1)",
        "potential": "gaussian(0.1,1)",
        "time_steps": 32,
        "eps_grid": [0.2, 0.1],
        "interior.rotation_safe": true,
        "seed": 5
    })cfg";
    const RunConfig cfg = config::parse_config_text(json);
    CHECK(cfg.inline_scenario.basis.n_points == 64);
    CHECK(cfg.inline_scenario.time_steps == 32);
    CHECK(cfg.eps_grid == std::vector<double>{0.2, 0.1});
    CHECK(cfg.seed == 5);

    CHECK_THROWS_AS(config::parse_config_text(R"({"scenario": "RES_SIN", "mystery": 1})"),
                    ValidationError);
}

TEST_CASE("cli: bad configuration exits with code 2") {
    CHECK(cli::run({"spectrum", "--scenario", "NOPE"}) == 2);
    CHECK(cli::run({"mourre", "--scenario", "RES_SIN", "--conjugate", "q"}) == 2);
}

TEST_CASE("cli: spectrum writes a parsable csv") {
    const auto dir = temp_dir("spectrum");
    CHECK(cli::run({"spectrum", "--scenario", "RES_SIN", "--n", "64", "--output-dir",
                    dir.string()}) == 0);
    std::ifstream in(dir / "spectrum.csv");
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "index,phase,cluster");
    int rows = 0;
    std::string line;
    while (std::getline(in, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 64);
}

TEST_CASE("cli: identical seed and config give hash-identical outputs") {
    const auto dir1 = temp_dir("det1");
    const auto dir2 = temp_dir("det2");
    for (const auto& dir : {dir1, dir2}) {
        CHECK(cli::run({"usmooth", "--scenario", "RES_SIN", "--n", "64", "--seed", "42",
                        "--output-dir", dir.string()}) == 0);
        CHECK(cli::run({"c11", "--potential", "gaussian(1,1)", "--scenario", "RES_SIN", "--n",
                        "64", "--output-dir", dir.string()}) == 0);
    }
    CHECK(io::hash_file((dir1 / "usmooth.json").string()) ==
          io::hash_file((dir2 / "usmooth.json").string()));
    CHECK(io::hash_file((dir1 / "c11.json").string()) ==
          io::hash_file((dir2 / "c11.json").string()));
}

TEST_CASE("cli: csv numbers carry 17 significant digits") {
    CHECK(io::format_double(pi) == "3.1415926535897931");
    CHECK(io::format_double(1.0) == "1");
    CHECK(io::format_double(-0.125) == "-0.125");
}
