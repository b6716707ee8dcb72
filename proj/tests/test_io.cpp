#include <cstdlib>
#include <stdexcept>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "qbs/focksim.hpp"
#include "qbs/io.hpp"
#include "qbs/rng.hpp"

using namespace qbs;

TEST_SUITE("io") {

TEST_CASE("g17 float rendering round-trips") {
    PortableRng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double x = (rng.uniform01() - 0.5) * std::pow(10.0, int(rng.uniform01() * 20) - 10);
        CHECK(std::stod(fmt_g17(x)) == x);
    }
    CHECK(fmt_g17(0.5) == "0.5");
}

TEST_CASE("matrix JSON round trip") {
    PortableRng rng(13);
    Eigen::MatrixXcd a(3, 2);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 2; ++j) {
            a(i, j) = Complex(rng.normal(), rng.normal());
        }
    }
    const Eigen::MatrixXcd back = matrix_from_json_string(matrix_to_json_string(a));
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 2);
    CHECK((back - a).cwiseAbs().maxCoeff() < 1e-15);

    CHECK_THROWS_AS(matrix_from_json_string("not json"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json_string("[]"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json_string("[[1,2]]"), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json_string("[[[1,0]],[[1,0],[0,1]]]"), std::invalid_argument);
}

TEST_CASE("species grammar") {
    CHECK(parse_species("standard").kind == SpeciesKind::Standard);

    const Species qb = parse_species("q:0.9");
    CHECK(qb.kind == SpeciesKind::QBoson);
    CHECK(qb.deformation.q == doctest::Approx(0.9));
    CHECK(qb.deformation.flavor == QFlavor::ArikCoon);

    CHECK(parse_species("spin:0.5").two_s == 1);
    CHECK(parse_species("spin:1").two_s == 2);
    CHECK(parse_species("spin:1.5").two_s == 3);

    CHECK_THROWS_AS(parse_species("bogus"), std::invalid_argument);
    CHECK_THROWS_AS(parse_species("q:-1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_species("q:abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_species("spin:0.3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_species("spin:0"), std::invalid_argument);

    CHECK(species_to_string(parse_species("spin:1.5")) == "spin:1.5");
    CHECK(species_to_string(parse_species("standard")) == "standard");
}

TEST_CASE("distribution artifacts") {
    const SectorBasisPtr basis = sector_basis(2, 2);
    const OutcomeDistribution dist{basis, {0.5, 0.0, 0.5}};
    const std::string csv = distribution_csv(dist);
    CHECK(csv ==
          "occupation,probability\n\"0,2\",0.5\n\"1,1\",0\n\"2,0\",0.5\n");

    const std::string text = samples_text({{1, 1}, {2, 0}});
    CHECK(text == "1,1\n2,0\n");

    CHECK(occupation_from_string("1,0,2") == OccupationVector{1, 0, 2});
    CHECK_THROWS_AS(occupation_from_string("1,-2"), std::invalid_argument);
    CHECK_THROWS_AS(occupation_from_string("1,x"), std::invalid_argument);
}

TEST_CASE("JSON artifacts mirror the CSV data") {
    const SectorBasisPtr basis = sector_basis(2, 2);
    const OutcomeDistribution dist{basis, {0.25, 0.5, 0.25}};
    const auto parsed = nlohmann::json::parse(distribution_json(dist));
    REQUIRE(parsed["probabilities"].size() == 3);
    CHECK(parsed["modes"] == 2);
    CHECK(parsed["quanta"] == 2);
    CHECK(parsed["states"][1] == nlohmann::json::array({1, 1}));
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(parsed["probabilities"][i].get<double>() == dist.probs[i]);
    }

    const SpectrumTable table{SpectrumModel::Kerr, {{0, 0.0}, {1, 1.05}}};
    const auto spec = nlohmann::json::parse(spectrum_json(table));
    CHECK(spec["model"] == "kerr");
    CHECK(spec["levels"][1]["energy"].get<double>() == 1.05);
}

TEST_CASE("sampling job JSON") {
    const std::string good = R"({"modes": 2, "haar_seed": 7,
        "input_occupation": [1, 1], "species": "q:0.9", "shots": 10, "seed": 3})";
    const SamplingJob job = parse_sampling_job(good);
    CHECK(job.modes == 2);
    CHECK(job.haar_seed.has_value());
    CHECK(*job.haar_seed == 7);
    CHECK(job.input == OccupationVector{1, 1});
    CHECK(job.species.kind == SpeciesKind::QBoson);
    CHECK(job.shots == 10);
    CHECK(job.sample_seed == 3);

    SUBCASE("unknown keys are rejected") {
        const std::string bad = R"({"modes": 2, "haar_seed": 7,
            "input_occupation": [1, 1], "species": "standard", "bogus": 1})";
        CHECK_THROWS_WITH_AS(parse_sampling_job(bad), "job JSON: unknown key 'bogus'",
                             std::invalid_argument);
    }
    SUBCASE("unitary and haar_seed are mutually exclusive") {
        const std::string both = R"({"modes": 2, "haar_seed": 7,
            "unitary": [[[1,0],[0,0]],[[0,0],[1,0]]],
            "input_occupation": [1, 1], "species": "standard"})";
        CHECK_THROWS_AS(parse_sampling_job(both), std::invalid_argument);
    }
    SUBCASE("explicit unitary") {
        const std::string with_matrix = R"({"modes": 2,
            "unitary": [[[1,0],[0,0]],[[0,0],[1,0]]],
            "input_occupation": [2, 0], "species": "standard"})";
        const SamplingJob j = parse_sampling_job(with_matrix);
        REQUIRE(j.unitary.has_value());
        CHECK(j.unitary->rows() == 2);
    }
}

TEST_CASE("file round trip") {
    const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                             "/qbs_io_test/file.txt";
    write_file(path, "contents\n");
    CHECK(read_file(path) == "contents\n");
    CHECK_THROWS_AS(read_file(path + ".missing"), std::runtime_error);
}

}  // TEST_SUITE
