#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <doctest.h>

#include "qbs/focksim.hpp"
#include "qbs/rng.hpp"

using namespace qbs;

namespace {

constexpr double kPi = 3.14159265358979323846;

const Eigen::Matrix2cd kHomReal = [] {
    Eigen::Matrix2cd u;
    const double s = 1.0 / std::sqrt(2.0);
    u << s, s, s, -s;
    return u;
}();

BeamsplitterLayer balanced_layer() { return BeamsplitterLayer{0, 1, kPi / 4.0, 0.0}; }

MeshCircuit single_layer_mesh(int modes, const BeamsplitterLayer& layer) {
    MeshCircuit mesh;
    mesh.modes = modes;
    mesh.layers.push_back(layer);
    mesh.output_phases.assign(modes, 0.0);
    return mesh;
}

double max_amp_difference_up_to_phase(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    // Align the global phase on the largest component of a.
    Eigen::Index pivot = 0;
    a.cwiseAbs().maxCoeff(&pivot);
    const Complex phase = (std::abs(b(pivot)) > 0.0)
                              ? a(pivot) / b(pivot) / std::abs(a(pivot) / b(pivot))
                              : Complex{1.0};
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_SUITE("focksim") {

TEST_CASE("sector basis enumeration") {
    const SectorBasisPtr b22 = sector_basis(2, 2);
    REQUIRE(b22->size() == 3);
    CHECK(b22->state(0) == OccupationVector{0, 2});
    CHECK(b22->state(1) == OccupationVector{1, 1});
    CHECK(b22->state(2) == OccupationVector{2, 0});

    const SectorBasisPtr b15 = sector_basis(1, 5);
    REQUIRE(b15->size() == 1);
    CHECK(b15->state(0) == OccupationVector{5});

    const SectorBasisPtr vacuum = sector_basis(3, 0);
    REQUIRE(vacuum->size() == 1);
    CHECK(vacuum->state(0) == OccupationVector{0, 0, 0});

    const SectorBasisPtr b43 = sector_basis(4, 3);
    CHECK(b43->size() == 20);  // C(6, 3)

    SUBCASE("index bijection and ordering") {
        for (std::size_t i = 0; i < b43->size(); ++i) {
            CHECK(b43->index_of(b43->state(i)) == i);
            CHECK(total_quanta(b43->state(i)) == 3);
            if (i > 0) CHECK(b43->state(i - 1) < b43->state(i));  // strict lex order
        }
        CHECK_FALSE(b43->contains({3, 0, 0, 1}));
        CHECK_THROWS_AS(b43->index_of({4, 0, 0, 0}), std::invalid_argument);
    }

    CHECK_THROWS_AS(sector_basis(50, 10), std::overflow_error);
}

TEST_CASE("input state") {
    const SectorBasisPtr basis = sector_basis(2, 2);
    const CharacteristicF std_f = characteristic_f(Species::standard(), 2);
    const StateVector psi = input_state({1, 1}, std_f, basis);
    CHECK(psi.norm() == doctest::Approx(1.0));
    CHECK(std::abs(psi.amps(1) - Complex{1.0}) < 1e-15);

    const CharacteristicF hard_core = characteristic_f(Species::spin(1), 1);
    CHECK_THROWS_AS(input_state({2, 0}, hard_core, basis), std::invalid_argument);
    CHECK_NOTHROW(input_state({1, 1}, hard_core, basis));
}

TEST_CASE("layer block and mesh reconstruction") {
    SUBCASE("balanced block") {
        const Eigen::Matrix2cd b = layer_block(balanced_layer());
        const double s = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(b(0, 0) - Complex{s}) < 1e-15);
        CHECK(std::abs(b(0, 1) - Complex(0.0, -s)) < 1e-15);
        CHECK(std::abs(b(1, 0) - Complex(0.0, -s)) < 1e-15);
        CHECK(std::abs(b(1, 1) - Complex{s}) < 1e-15);
    }
    SUBCASE("empty mesh is the identity") {
        MeshCircuit mesh;
        mesh.modes = 3;
        mesh.output_phases.assign(3, 0.0);
        const ModeUnitary u = mesh_reconstruct(mesh);
        CHECK((u.matrix() - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("single balanced layer on two modes") {
        const ModeUnitary u = mesh_reconstruct(single_layer_mesh(2, balanced_layer()));
        CHECK((u.matrix() - layer_block(balanced_layer())).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("clements decomposition") {
    SUBCASE("identity gives trivial angles") {
        const ModeUnitary id(Eigen::MatrixXcd::Identity(4, 4));
        const MeshCircuit mesh = clements_decompose(id);
        CHECK(mesh.layers.size() == 6);
        for (const BeamsplitterLayer& layer : mesh.layers) {
            CHECK(std::abs(std::sin(layer.theta)) < 1e-12);  // theta = 0 mod pi
        }
        for (double phi : mesh.output_phases) {
            CHECK(std::abs(phi) < 1e-12);
        }
    }

    SUBCASE("two-mode rotation recovers its angle") {
        const double theta0 = 0.37;
        Eigen::Matrix2cd rot;
        rot << std::cos(theta0), -std::sin(theta0), std::sin(theta0), std::cos(theta0);
        const MeshCircuit mesh = clements_decompose(ModeUnitary(rot));
        REQUIRE(mesh.layers.size() == 1);
        CHECK(mesh.layers[0].theta == doctest::Approx(theta0).epsilon(1e-10));
        const ModeUnitary rebuilt = mesh_reconstruct(mesh);
        CHECK((rebuilt.matrix() - rot).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("structured unitaries with exact zeros") {
        // Permutation matrices and the real balanced splitter hit the
        // theta = 0 and theta = pi/2 nulling branches.
        Eigen::Matrix3cd perm = Eigen::Matrix3cd::Zero();
        perm(0, 2) = 1.0;
        perm(1, 0) = 1.0;
        perm(2, 1) = 1.0;
        for (const Eigen::MatrixXcd& m :
             {Eigen::MatrixXcd(perm), Eigen::MatrixXcd(kHomReal)}) {
            const ModeUnitary u(m);
            const ModeUnitary rebuilt = mesh_reconstruct(clements_decompose(u));
            CHECK((rebuilt.matrix() - m).cwiseAbs().maxCoeff() < 1e-12);
        }
    }

    SUBCASE("round trip on Haar unitaries") {
        for (const int m : {2, 3, 4, 5}) {
            for (std::uint64_t seed = 1; seed <= 3; ++seed) {
                const ModeUnitary u = haar_unitary(m, seed * 11 + m);
                const MeshCircuit mesh = clements_decompose(u);
                CHECK(static_cast<int>(mesh.layers.size()) == m * (m - 1) / 2);
                const ModeUnitary rebuilt = mesh_reconstruct(mesh);
                CHECK((rebuilt.matrix() - u.matrix()).cwiseAbs().maxCoeff() < 1e-10);
            }
        }
    }
}

TEST_CASE("beamsplitter generator") {
    const CharacteristicF std_f = characteristic_f(Species::standard(), 2);

    SUBCASE("single-photon block is the mode generator") {
        const SectorBasisPtr basis = sector_basis(2, 1);
        const BeamsplitterLayer layer{0, 1, 0.3, 0.7};
        const Eigen::MatrixXcd g = beamsplitter_generator(layer, std_f, *basis);
        // Basis order is ((0,1), (1,0)); state (1,0) has the photon in mode 0.
        const Complex expected = 0.3 * Complex(std::cos(0.7), std::sin(0.7));
        const std::size_t idx10 = basis->index_of({1, 0});
        const std::size_t idx01 = basis->index_of({0, 1});
        CHECK(std::abs(g(idx10, idx01) - expected) < 1e-14);
        CHECK(std::abs(g(idx01, idx10) - std::conj(expected)) < 1e-14);
        CHECK(std::abs(g(idx01, idx01)) < 1e-15);
    }

    SUBCASE("hermiticity across species") {
        const SectorBasisPtr basis = sector_basis(3, 3);
        const BeamsplitterLayer layer{0, 2, 1.1, -0.4};
        for (const CharacteristicF& f :
             {characteristic_f(Species::standard(), 3),
              characteristic_f(Species::qboson(QDeformation(0.8)), 3),
              characteristic_f(Species::spin(2), 2)}) {
            const Eigen::MatrixXcd g = beamsplitter_generator(layer, f, *basis);
            CHECK((g - g.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        }
    }

    SUBCASE("deformed ladder weight") {
        const SectorBasisPtr basis = sector_basis(2, 2);
        const CharacteristicF qb = characteristic_f(Species::qboson(QDeformation(2.0)), 2);
        const BeamsplitterLayer layer{0, 1, 0.5, 0.0};
        const Eigen::MatrixXcd g = beamsplitter_generator(layer, qb, *basis);
        // Hop (1,1) -> (2,0) carries f(2)/f(1) * f(1)/f(0) = sqrt([2]_2) = sqrt(3).
        const std::size_t from = basis->index_of({1, 1});
        const std::size_t to = basis->index_of({2, 0});
        CHECK(std::abs(g(to, from) - Complex{0.5 * std::sqrt(3.0)}) < 1e-14);
    }

    SUBCASE("undersized table is rejected for unbounded species") {
        const SectorBasisPtr basis = sector_basis(2, 3);
        const CharacteristicF small = characteristic_f(Species::standard(), 2);
        const BeamsplitterLayer layer{0, 1, 0.5, 0.0};
        CHECK_THROWS_AS(beamsplitter_generator(layer, small, *basis), std::invalid_argument);
    }
}

TEST_CASE("evolution") {
    const SectorBasisPtr basis = sector_basis(2, 2);
    const CharacteristicF std_f = characteristic_f(Species::standard(), 2);
    const StateVector in = input_state({1, 1}, std_f, basis);

    SUBCASE("trivial mesh leaves the state alone") {
        MeshCircuit mesh;
        mesh.modes = 2;
        const StateVector out = evolve(in, mesh, std_f);
        CHECK((out.amps - in.amps).cwiseAbs().maxCoeff() < 1e-15);
    }

    SUBCASE("balanced layer cancels the coincidence amplitude") {
        const StateVector out = evolve(in, single_layer_mesh(2, balanced_layer()), std_f);
        CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(out.amps(basis->index_of({1, 1}))) < 1e-12);
        CHECK(std::norm(out.amps(basis->index_of({2, 0}))) == doctest::Approx(0.5).epsilon(1e-10));
    }

    SUBCASE("deformed bunching leaks back into the coincidence outcome") {
        const double q = 0.9;
        const CharacteristicF qb = characteristic_f(Species::qboson(QDeformation(q)), 2);
        const StateVector out = evolve(input_state({1, 1}, qb, basis),
                                       single_layer_mesh(2, balanced_layer()), qb);
        const double pr_coincidence = std::norm(out.amps(basis->index_of({1, 1})));
        // Analytic value on the 3-state sector: the middle amplitude is
        // cos(sqrt(2) * theta * sqrt(1 + q)).
        const double expected = std::pow(std::cos(kPi / 4.0 * std::sqrt(2.0 * (1.0 + q))), 2);
        CHECK(pr_coincidence == doctest::Approx(expected).epsilon(1e-10));
        CHECK(pr_coincidence > 1e-6);
    }

    SUBCASE("norm preserved for random meshes and species") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const ModeUnitary u = haar_unitary(3, seed);
            const MeshCircuit mesh = clements_decompose(u);
            for (const CharacteristicF& f :
                 {characteristic_f(Species::standard(), 3),
                  characteristic_f(Species::qboson(QDeformation(1.1)), 3),
                  characteristic_f(Species::spin(2), 2)}) {
                const SectorBasisPtr b3 = sector_basis(3, 2);
                const StateVector psi = input_state({1, 1, 0}, f, b3);
                const StateVector out = evolve(psi, mesh, f);
                CHECK(out.norm() == doctest::Approx(1.0).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("outcome distribution and engine agreement") {
    const CharacteristicF std_f = characteristic_f(Species::standard(), 2);

    SUBCASE("balanced two-photon interference") {
        const ModeUnitary u = mesh_reconstruct(single_layer_mesh(2, balanced_layer()));
        const OutcomeDistribution d = outcome_distribution(u, {1, 1}, std_f);
        CHECK(d.probs[0] == doctest::Approx(0.5).epsilon(1e-10));
        CHECK(d.probs[1] == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(d.probs[2] == doctest::Approx(0.5).epsilon(1e-10));
    }

    SUBCASE("mesh engine matches the permanent engine for standard bosons") {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const int m = 2 + static_cast<int>(seed % 3);
            const int n = 1 + static_cast<int>(seed % 3);
            OccupationVector input(m, 0);
            for (int k = 0; k < n; ++k) input[k % m] += 1;
            const ModeUnitary u = haar_unitary(m, 1000 + seed);
            const CharacteristicF f = characteristic_f(Species::standard(), n);
            const OutcomeDistribution mesh_dist = outcome_distribution(u, input, f);
            const OutcomeDistribution perm_dist = distribution_permanent(u, input);
            CHECK(tv_distance(mesh_dist, perm_dist) < 1e-8);
            CHECK(mesh_dist.sum() == doctest::Approx(1.0).epsilon(1e-8));
        }
    }

    SUBCASE("identity network is a point mass for every species") {
        const ModeUnitary id(Eigen::MatrixXcd::Identity(2, 2));
        for (const CharacteristicF& f :
             {characteristic_f(Species::standard(), 2),
              characteristic_f(Species::qboson(QDeformation(0.8)), 2)}) {
            const OutcomeDistribution d = outcome_distribution(id, {2, 0}, f);
            CHECK(d.probs[d.basis->index_of({2, 0})] == doctest::Approx(1.0).epsilon(1e-10));
        }
    }

    SUBCASE("hard-core species cannot bunch") {
        const ModeUnitary u = haar_unitary(2, 99);
        const CharacteristicF half = characteristic_f(Species::spin(1), 1);
        const OutcomeDistribution d = outcome_distribution(u, {1, 1}, half);
        CHECK(d.probs[d.basis->index_of({2, 0})] == 0.0);
        CHECK(d.probs[d.basis->index_of({0, 2})] == 0.0);
        // With both bunched outcomes forbidden, the coincidence is certain.
        CHECK(d.probs[d.basis->index_of({1, 1})] == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("support stays on the fixed-number sector") {
        const ModeUnitary u = haar_unitary(3, 5);
        const CharacteristicF f = characteristic_f(Species::qboson(QDeformation(1.1)), 2);
        const OutcomeDistribution d = outcome_distribution(u, {1, 1, 0}, f);
        for (std::size_t i = 0; i < d.probs.size(); ++i) {
            CHECK(total_quanta(d.basis->state(i)) == 2);
        }
        CHECK(d.sum() == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("substitution oracle") {
    SUBCASE("single photon reproduces the unitary column") {
        const ModeUnitary u = haar_unitary(3, 17);
        const CharacteristicF f = characteristic_f(Species::standard(), 1);
        const StateVector psi = substitution_oracle(u, {0, 1, 0}, f);
        const SectorBasisPtr basis = psi.basis;
        for (int j = 0; j < 3; ++j) {
            OccupationVector k(3, 0);
            k[j] = 1;
            CHECK(std::abs(std::abs(psi.amps(basis->index_of(k))) -
                           std::abs(u.matrix()(j, 1))) < 1e-12);
        }
    }

    SUBCASE("identity network returns the input state") {
        const ModeUnitary id(Eigen::MatrixXcd::Identity(3, 3));
        const CharacteristicF f = characteristic_f(Species::qboson(QDeformation(0.7)), 3);
        const StateVector psi = substitution_oracle(id, {2, 1, 0}, f);
        CHECK(std::abs(std::abs(psi.amps(psi.basis->index_of({2, 1, 0}))) - 1.0) < 1e-12);
    }

    SUBCASE("agrees with mesh evolution for standard bosons") {
        const ModeUnitary u = haar_unitary(3, 23);
        const OccupationVector input = {1, 1, 0};
        const CharacteristicF f = characteristic_f(Species::standard(), 2);
        const StateVector subst = substitution_oracle(u, input, f);
        const StateVector mesh_out =
            evolve(input_state(input, f, subst.basis), clements_decompose(u), f);
        CHECK(max_amp_difference_up_to_phase(mesh_out.amps, subst.amps) < 1e-8);
        CHECK(tv_distance(state_distribution(mesh_out), state_distribution(subst)) < 1e-8);
    }

    SUBCASE("deformed species define a different distribution than the mesh") {
        // On the real balanced splitter with input (1,1) the substituted
        // expansion gives amplitudes proportional to
        //   (sqrt(1+q)/2, (U00 U11 + U01 U10), -sqrt(1+q)/2)
        // whose middle term cancels for ANY q: the interference term
        // carries no f weight. The mesh definition leaks instead, so the
        // two deformed-sampling definitions genuinely differ.
        const double q = 0.9;
        const ModeUnitary u(kHomReal);
        const CharacteristicF f = characteristic_f(Species::qboson(QDeformation(q)), 2);

        const StateVector subst = substitution_oracle(u, {1, 1}, f);
        const SectorBasisPtr basis = subst.basis;
        CHECK(subst.norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(subst.amps(basis->index_of({1, 1}))) < 1e-14);
        CHECK(std::norm(subst.amps(basis->index_of({2, 0}))) ==
              doctest::Approx(0.5).epsilon(1e-12));
        CHECK(std::norm(subst.amps(basis->index_of({0, 2}))) ==
              doctest::Approx(0.5).epsilon(1e-12));

        const OutcomeDistribution mesh_dist = outcome_distribution(u, {1, 1}, f);
        CHECK(mesh_dist.probs[basis->index_of({1, 1})] > 1e-6);
        CHECK(tv_distance(state_distribution(subst), mesh_dist) > 1e-6);
    }

    SUBCASE("size caps") {
        const ModeUnitary u = haar_unitary(2, 3);
        const CharacteristicF f = characteristic_f(Species::standard(), 6);
        CHECK_THROWS_AS(substitution_oracle(u, {3, 3}, f), std::runtime_error);
    }
}

TEST_CASE("haar unitary generation") {
    const ModeUnitary a = haar_unitary(3, 42);
    const ModeUnitary b = haar_unitary(3, 42);
    CHECK((a.matrix() - b.matrix()).cwiseAbs().maxCoeff() == 0.0);

    const ModeUnitary c = haar_unitary(3, 43);
    CHECK((a.matrix() - c.matrix()).cwiseAbs().maxCoeff() > 1e-3);

    for (const int m : {1, 2, 4, 6}) {
        const ModeUnitary u = haar_unitary(m, 7 * m + 1);
        const Eigen::MatrixXcd gram = u.matrix().adjoint() * u.matrix();
        CHECK((gram - Eigen::MatrixXcd::Identity(m, m)).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("first-entry Haar moment") {
        // |U_11|^2 averages to 1/m; Beta(1, m-1) has variance
        // (m-1)/(m^2 (m+1)).
        const int m = 3;
        const int trials = 10000;
        double acc = 0.0;
        for (int t = 0; t < trials; ++t) {
            acc += std::norm(haar_unitary(m, 50000 + t).matrix()(0, 0));
        }
        const double mean = acc / trials;
        const double sigma = std::sqrt((m - 1.0) / (double(m) * m * (m + 1.0)) / trials);
        CHECK(std::abs(mean - 1.0 / m) < 3.0 * sigma);
    }
}

TEST_CASE("sampling") {
    const ModeUnitary u = mesh_reconstruct(single_layer_mesh(2, balanced_layer()));
    const CharacteristicF f = characteristic_f(Species::standard(), 2);
    const OutcomeDistribution hom = outcome_distribution(u, {1, 1}, f);

    SUBCASE("determinism and shapes") {
        const auto draws1 = sample_outcomes(hom, 99, 50);
        const auto draws2 = sample_outcomes(hom, 99, 50);
        CHECK(draws1 == draws2);
        CHECK(sample_outcomes(hom, 1, 0).empty());
    }

    SUBCASE("point mass yields constant draws") {
        const ModeUnitary id(Eigen::MatrixXcd::Identity(2, 2));
        const OutcomeDistribution point = outcome_distribution(id, {2, 0}, f);
        for (const OccupationVector& draw : sample_outcomes(point, 5, 20)) {
            CHECK(draw == OccupationVector{2, 0});
        }
    }

    SUBCASE("empirical frequencies converge") {
        const std::size_t shots = 100000;
        const auto draws = sample_outcomes(hom, 1234, shots);
        std::vector<long> counts(hom.probs.size(), 0);
        for (const OccupationVector& d : draws) counts[hom.basis->index_of(d)] += 1;
        CHECK(tv_distance(hom, counts) < 0.01);
    }
}

TEST_CASE("tv distance") {
    const SectorBasisPtr basis = sector_basis(2, 2);
    OutcomeDistribution hom{basis, {0.5, 0.0, 0.5}};
    OutcomeDistribution uniform{basis, {1.0 / 3, 1.0 / 3, 1.0 / 3}};
    OutcomeDistribution point_a{basis, {1.0, 0.0, 0.0}};
    OutcomeDistribution point_b{basis, {0.0, 0.0, 1.0}};

    CHECK(tv_distance(hom, hom) == 0.0);
    CHECK(tv_distance(point_a, point_b) == doctest::Approx(1.0));
    CHECK(tv_distance(hom, uniform) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    OutcomeDistribution other{sector_basis(3, 2), std::vector<double>(6, 1.0 / 6)};
    CHECK_THROWS_AS(tv_distance(hom, other), std::invalid_argument);
}

TEST_CASE("deformation continuity toward the standard species") {
    for (std::uint64_t seed = 1; seed <= 2; ++seed) {
        const ModeUnitary u = haar_unitary(3, 300 + seed);
        const OccupationVector input = {1, 1, 0};
        const CharacteristicF std_f = characteristic_f(Species::standard(), 2);
        const OutcomeDistribution reference = outcome_distribution(u, input, std_f);

        double previous = 1e9;
        for (const double q : {0.5, 0.8, 0.95, 0.99}) {
            const CharacteristicF f = characteristic_f(Species::qboson(QDeformation(q)), 2);
            const double tv = tv_distance(outcome_distribution(u, input, f), reference);
            CHECK(tv < previous);
            previous = tv;
        }
        CHECK(previous < 0.01);  // q = 0.99 is already close
    }
}

TEST_CASE("single-photon universality") {
    const ModeUnitary u = haar_unitary(3, 77);
    const OccupationVector input = {0, 0, 1};
    const OutcomeDistribution std_d =
        outcome_distribution(u, input, characteristic_f(Species::standard(), 1));
    const OutcomeDistribution q_d =
        outcome_distribution(u, input, characteristic_f(Species::qboson(QDeformation(0.5)), 1));
    const OutcomeDistribution spin_d =
        outcome_distribution(u, input, characteristic_f(Species::spin(1), 1));
    CHECK(tv_distance(std_d, q_d) < 1e-12);
    CHECK(tv_distance(std_d, spin_d) < 1e-12);
}

}  // TEST_SUITE
