#ifndef QBS_FOCKSIM_HPP
#define QBS_FOCKSIM_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "qbs/occupation.hpp"
#include "qbs/permanent.hpp"
#include "qbs/qalgebra.hpp"

namespace qbs {

/// Amplitudes over a fixed-total-number sector basis.
struct StateVector {
    SectorBasisPtr basis;
    Eigen::VectorXcd amps;

    double norm() const { return amps.norm(); }
};

/// Two-mode rotation with generator
///   g = theta (e^{i phi} a_i^dag a_j + e^{-i phi} a_j^dag a_i).
/// The single-particle block of exp(-i g) on modes (i, j) is
///   [[cos th, -i e^{i phi} sin th], [-i e^{-i phi} sin th, cos th]];
/// theta = pi/4, phi = 0 is the balanced beamsplitter.
struct BeamsplitterLayer {
    int mode_i = 0;
    int mode_j = 1;
    double theta = 0.0;
    double phi = 0.0;
};

/// Layered beamsplitter network plus a final per-mode phase screen.
/// Layers act in list order; the phases act last.
struct MeshCircuit {
    int modes = 0;
    std::vector<BeamsplitterLayer> layers;
    std::vector<double> output_phases;
};

/// Single-particle 2x2 block of a layer.
Eigen::Matrix2cd layer_block(const BeamsplitterLayer& layer);

/// Multiplies out the mesh: diag(e^{i phases}) * B_last * ... * B_first.
ModeUnitary mesh_reconstruct(const MeshCircuit& mesh);

/// Rectangular nulling decomposition of a mode unitary into
/// m(m-1)/2 adjacent-pair layers plus output phases, with
/// mesh_reconstruct(result) matching U entrywise within 1e-10.
MeshCircuit clements_decompose(const ModeUnitary& u);

/// Unit basis vector at l in the generalized Fock basis (the states of
/// any species are orthonormal under the 1/f(n) normalization).
/// Rejects occupations above the species bound (e.g. spin-1/2 with
/// l_i = 2) or outside the basis sector.
StateVector input_state(const OccupationVector& l, const CharacteristicF& f,
                        const SectorBasisPtr& basis);

/// Sector matrix of the layer generator with the species' ladder weights:
/// the element between states differing by one i<-j hop is
/// theta e^{i phi} (f(n_i+1)/f(n_i)) (f(n_j)/f(n_j-1)).
///
/// Hermitian and number-conserving by construction. For Spin species,
/// hops that would exceed n = 2S have zero amplitude, so states beyond
/// the hard-core cap are exactly decoupled; other species require
/// cutoff >= sector quanta.
Eigen::MatrixXcd beamsplitter_generator(const BeamsplitterLayer& layer, const CharacteristicF& f,
                                        const SectorBasis& basis);

/// Applies exp(-i g) per layer (Hermitian eigendecomposition) followed
/// by the output phase screen exp(i sum_k phi_k n_k).
StateVector evolve(const StateVector& state, const MeshCircuit& mesh, const CharacteristicF& f);

/// Born-rule outcome distribution of the mesh evolution of input l
/// through clements_decompose(U) with species f. For the Standard
/// species this reproduces distribution_permanent(U, l).
OutcomeDistribution outcome_distribution(const ModeUnitary& u, const OccupationVector& l,
                                         const CharacteristicF& f);

/// Size caps for the multinomial expansion of the substitution oracle.
inline constexpr int kSubstitutionMaxPhotons = 5;
inline constexpr int kSubstitutionMaxModes = 6;

/// Independent output-state construction: expands
///   prod_i (sum_j U_{ji} a_j^dag)^{l_i} |0>
/// with the species' ladder weights and normalizes.
///
/// For the Standard species this equals the mesh evolution up to a
/// global phase. For deformed species the two constructions are
/// genuinely different definitions of deformed sampling (the
/// substituted operators do not close the same-site algebra); both are
/// exposed so the difference can be measured rather than hidden.
StateVector substitution_oracle(const ModeUnitary& u, const OccupationVector& l,
                                const CharacteristicF& f);

/// Haar-random m x m unitary: QR of a complex Gaussian matrix with the
/// R diagonal phases absorbed, deterministic per seed (PortableRng).
ModeUnitary haar_unitary(int m, std::uint64_t seed);

/// i.i.d. draws from a distribution by inverse CDF over the basis order,
/// deterministic per seed.
std::vector<OccupationVector> sample_outcomes(const OutcomeDistribution& dist, std::uint64_t seed,
                                              std::size_t count);

/// Born-rule probabilities of a state.
OutcomeDistribution state_distribution(const StateVector& state);

}  // namespace qbs

#endif  // QBS_FOCKSIM_HPP
