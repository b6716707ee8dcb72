#include "qbs/focksim.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "qbs/rng.hpp"

namespace qbs {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void check_layer(const BeamsplitterLayer& layer, int modes) {
    require(layer.mode_i != layer.mode_j, "beamsplitter layer needs two distinct modes");
    require(layer.mode_i >= 0 && layer.mode_i < modes && layer.mode_j >= 0 &&
                layer.mode_j < modes,
            "beamsplitter layer modes out of range");
    require(std::isfinite(layer.theta) && std::isfinite(layer.phi),
            "beamsplitter layer angles must be finite");
}

// Species-aware single-mode cap plus the table-size guard for species
// whose Fock space does not end (cutoff must cover the sector).
int occupation_cap(const CharacteristicF& f, int quanta) {
    if (f.kind == SpeciesKind::Spin) return f.two_s;
    if (f.cutoff() < quanta) {
        throw std::invalid_argument(
            "characteristic table cutoff is smaller than the sector quanta");
    }
    return f.cutoff();
}

}  // namespace

Eigen::Matrix2cd layer_block(const BeamsplitterLayer& layer) {
    const double c = std::cos(layer.theta);
    const double s = std::sin(layer.theta);
    const Complex phase(std::cos(layer.phi), std::sin(layer.phi));
    Eigen::Matrix2cd block;
    block << Complex(c, 0.0), Complex(0.0, -1.0) * phase * s,
        Complex(0.0, -1.0) * std::conj(phase) * s, Complex(c, 0.0);
    return block;
}

ModeUnitary mesh_reconstruct(const MeshCircuit& mesh) {
    require(mesh.modes >= 1, "mesh_reconstruct: modes must be >= 1");
    require(mesh.output_phases.empty() ||
                static_cast<int>(mesh.output_phases.size()) == mesh.modes,
            "mesh_reconstruct: output phase count must match modes");
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(mesh.modes, mesh.modes);
    for (const BeamsplitterLayer& layer : mesh.layers) {
        check_layer(layer, mesh.modes);
        const Eigen::Matrix2cd b = layer_block(layer);
        // Rows mode_i, mode_j of u pick up the block from the left.
        const Eigen::RowVectorXcd row_i = u.row(layer.mode_i);
        const Eigen::RowVectorXcd row_j = u.row(layer.mode_j);
        u.row(layer.mode_i) = b(0, 0) * row_i + b(0, 1) * row_j;
        u.row(layer.mode_j) = b(1, 0) * row_i + b(1, 1) * row_j;
    }
    if (!mesh.output_phases.empty()) {
        for (int k = 0; k < mesh.modes; ++k) {
            const double phi = mesh.output_phases[k];
            u.row(k) *= Complex(std::cos(phi), std::sin(phi));
        }
    }
    return ModeUnitary(std::move(u));
}

MeshCircuit clements_decompose(const ModeUnitary& u) {
    const int m = u.modes();
    Eigen::MatrixXcd v = u.matrix();

    struct Op {
        int p;
        double theta;
        double phi;
    };
    std::vector<Op> right_ops;
    std::vector<Op> left_ops;

    constexpr double kTiny = 1e-14;
    const auto solve_angles = [](Complex nulled, Complex partner, double phase_shift,
                                 double& theta, double& phi) {
        const double na = std::abs(nulled);
        const double nb = std::abs(partner);
        if (na < kTiny) {
            theta = 0.0;
            phi = 0.0;
            return;
        }
        if (nb < kTiny) {
            theta = 0.5 * kPi;
            phi = 0.0;
            return;
        }
        theta = std::atan2(na, nb);
        phi = std::arg(partner) - std::arg(nulled) + phase_shift;
    };

    for (int i = 0; i <= m - 2; ++i) {
        if (i % 2 == 0) {
            // Null V(m-1-j, i-j) with a column rotation on (p, p+1).
            for (int j = 0; j <= i; ++j) {
                const int p = i - j;
                const int r = m - 1 - j;
                double theta = 0.0, phi = 0.0;
                solve_angles(v(r, p), v(r, p + 1), -0.5 * kPi, theta, phi);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const Complex eiphi(std::cos(phi), std::sin(phi));
                // v <- v * T(p, theta, phi)^dag
                const Eigen::VectorXcd col_p = v.col(p);
                const Eigen::VectorXcd col_q = v.col(p + 1);
                v.col(p) = c * col_p + Complex(0.0, 1.0) * std::conj(eiphi) * s * col_q;
                v.col(p + 1) = Complex(0.0, 1.0) * eiphi * s * col_p + c * col_q;
                right_ops.push_back({p, theta, phi});
            }
        } else {
            // Null V(m-1-i+j, j) with a row rotation on (p, p+1).
            for (int j = 0; j <= i; ++j) {
                const int p = m - 2 - i + j;
                const int c_idx = j;
                double theta = 0.0, phi = 0.0;
                solve_angles(v(p + 1, c_idx), v(p, c_idx), 0.5 * kPi, theta, phi);
                const double c = std::cos(theta);
                const double s = std::sin(theta);
                const Complex eiphi(std::cos(phi), std::sin(phi));
                // v <- T(p, theta, phi) * v
                const Eigen::RowVectorXcd row_p = v.row(p);
                const Eigen::RowVectorXcd row_q = v.row(p + 1);
                v.row(p) = c * row_p + Complex(0.0, -1.0) * eiphi * s * row_q;
                v.row(p + 1) = Complex(0.0, -1.0) * std::conj(eiphi) * s * row_p + c * row_q;
                left_ops.push_back({p, theta, phi});
            }
        }
    }

    // v is now diagonal with unit-modulus entries d_k.
    MeshCircuit mesh;
    mesh.modes = m;
    mesh.output_phases.resize(m);
    std::vector<Complex> diag(m);
    for (int k = 0; k < m; ++k) {
        diag[k] = v(k, k);
        mesh.output_phases[k] = std::arg(v(k, k));
    }

    // U = (prod L^dag) D (prod R reversed); pushing each L^dag through D
    // leaves D unchanged and shifts the layer phase:
    //   T(p, th, phi)^dag D = D T(p, th, phi') with
    //   e^{i phi'} = -e^{i phi} d_{p+1} / d_p.
    mesh.layers.reserve(right_ops.size() + left_ops.size());
    for (const Op& op : right_ops) {
        mesh.layers.push_back({op.p, op.p + 1, op.theta, op.phi});
    }
    for (auto it = left_ops.rbegin(); it != left_ops.rend(); ++it) {
        const Complex shifted = -Complex(std::cos(it->phi), std::sin(it->phi)) *
                                diag[it->p + 1] / diag[it->p];
        mesh.layers.push_back({it->p, it->p + 1, it->theta, std::arg(shifted)});
    }
    return mesh;
}

StateVector input_state(const OccupationVector& l, const CharacteristicF& f,
                        const SectorBasisPtr& basis) {
    require(basis != nullptr, "input_state: basis is null");
    require(static_cast<int>(l.size()) == basis->modes(),
            "input_state: occupation length must match the basis modes");
    const int cap = f.max_occupation();
    for (int li : l) {
        require(li >= 0, "input_state: occupations must be nonnegative");
        if (li > cap) {
            throw std::invalid_argument("input_state: occupation " + std::to_string(li) +
                                        " exceeds the species bound " + std::to_string(cap));
        }
    }
    StateVector state;
    state.basis = basis;
    state.amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
    state.amps(static_cast<Eigen::Index>(basis->index_of(l))) = 1.0;
    return state;
}

namespace {

// Sector states a species can populate (occupations <= cap), as
// full-basis indices plus the inverse map.
struct ActiveSet {
    std::vector<std::size_t> states;           // full-basis indices
    std::vector<Eigen::Index> slot;            // full index -> position, -1 if excluded
    bool restricted = false;
};

ActiveSet active_states(const SectorBasis& basis, int cap) {
    ActiveSet set;
    set.slot.assign(basis.size(), -1);
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const OccupationVector& v = basis.state(s);
        if (*std::max_element(v.begin(), v.end()) <= cap) {
            set.slot[s] = static_cast<Eigen::Index>(set.states.size());
            set.states.push_back(s);
        }
    }
    set.restricted = set.states.size() != basis.size();
    return set;
}

// Layer generator on the active subspace. Hops that would exceed the
// cap have zero amplitude, so the excluded states are exactly decoupled.
Eigen::MatrixXcd generator_on(const BeamsplitterLayer& layer, const CharacteristicF& f,
                              const SectorBasis& basis, const ActiveSet& set, int cap) {
    const auto dim = static_cast<Eigen::Index>(set.states.size());
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    const Complex eiphi(std::cos(layer.phi), std::sin(layer.phi));

    for (Eigen::Index a = 0; a < dim; ++a) {
        const OccupationVector& v = basis.state(set.states[a]);
        const auto add_hop = [&](int to, int from, Complex weight) {
            if (v[from] < 1 || v[to] + 1 > cap) return;
            OccupationVector w = v;
            w[to] += 1;
            w[from] -= 1;
            const double ladder =
                (f.f[v[to] + 1] / f.f[v[to]]) * (f.f[v[from]] / f.f[v[from] - 1]);
            const Eigen::Index b = set.slot[basis.index_of(w)];
            g(b, a) += layer.theta * weight * ladder;
        };
        add_hop(layer.mode_i, layer.mode_j, eiphi);
        add_hop(layer.mode_j, layer.mode_i, std::conj(eiphi));
    }
    return g;
}

}  // namespace

Eigen::MatrixXcd beamsplitter_generator(const BeamsplitterLayer& layer, const CharacteristicF& f,
                                        const SectorBasis& basis) {
    check_layer(layer, basis.modes());
    const int cap = occupation_cap(f, basis.quanta());
    const ActiveSet set = active_states(basis, cap);
    const Eigen::MatrixXcd sub = generator_on(layer, f, basis, set, cap);

    const auto dim = static_cast<Eigen::Index>(basis.size());
    if (!set.restricted) return sub;
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t a = 0; a < set.states.size(); ++a) {
        for (std::size_t b = 0; b < set.states.size(); ++b) {
            g(static_cast<Eigen::Index>(set.states[b]), static_cast<Eigen::Index>(set.states[a])) =
                sub(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a));
        }
    }
    return g;
}

StateVector evolve(const StateVector& state, const MeshCircuit& mesh, const CharacteristicF& f) {
    require(state.basis != nullptr, "evolve: state has no basis");
    require(state.basis->modes() == mesh.modes, "evolve: state and mesh mode counts differ");
    require(mesh.output_phases.empty() ||
                static_cast<int>(mesh.output_phases.size()) == mesh.modes,
            "evolve: output phase count must match modes");

    StateVector out;
    out.basis = state.basis;
    out.amps = state.amps;

    // Evolution acts on the species' reachable subspace; amplitudes on
    // excluded states (occupations past a hard-core cap) are decoupled
    // and left untouched, keeping their zeros exact.
    const int cap = occupation_cap(f, state.basis->quanta());
    const ActiveSet set = active_states(*state.basis, cap);
    Eigen::VectorXcd sub(static_cast<Eigen::Index>(set.states.size()));
    for (std::size_t a = 0; a < set.states.size(); ++a) {
        sub(static_cast<Eigen::Index>(a)) = out.amps(static_cast<Eigen::Index>(set.states[a]));
    }

    for (const BeamsplitterLayer& layer : mesh.layers) {
        check_layer(layer, mesh.modes);
        const Eigen::MatrixXcd g = generator_on(layer, f, *state.basis, set, cap);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(g);
        if (es.info() != Eigen::Success) {
            throw std::runtime_error("evolve: eigendecomposition of a layer generator failed");
        }
        const Eigen::VectorXcd rotated = es.eigenvectors().adjoint() * sub;
        Eigen::VectorXcd scaled(rotated.size());
        for (Eigen::Index k = 0; k < rotated.size(); ++k) {
            const double lambda = es.eigenvalues()(k);
            scaled(k) = rotated(k) * Complex(std::cos(lambda), -std::sin(lambda));
        }
        sub = es.eigenvectors() * scaled;
    }
    for (std::size_t a = 0; a < set.states.size(); ++a) {
        out.amps(static_cast<Eigen::Index>(set.states[a])) = sub(static_cast<Eigen::Index>(a));
    }
    if (!mesh.output_phases.empty()) {
        for (std::size_t s = 0; s < state.basis->size(); ++s) {
            double phase = 0.0;
            const OccupationVector& v = state.basis->state(s);
            for (int k = 0; k < mesh.modes; ++k) {
                phase += mesh.output_phases[k] * static_cast<double>(v[k]);
            }
            out.amps(static_cast<Eigen::Index>(s)) *= Complex(std::cos(phase), std::sin(phase));
        }
    }
    return out;
}

OutcomeDistribution state_distribution(const StateVector& state) {
    OutcomeDistribution dist;
    dist.basis = state.basis;
    dist.probs.resize(state.basis->size());
    for (std::size_t s = 0; s < dist.probs.size(); ++s) {
        dist.probs[s] = std::norm(state.amps(static_cast<Eigen::Index>(s)));
    }
    return dist;
}

OutcomeDistribution outcome_distribution(const ModeUnitary& u, const OccupationVector& l,
                                         const CharacteristicF& f) {
    require(static_cast<int>(l.size()) == u.modes(),
            "outcome_distribution: occupation length must match the unitary modes");
    const SectorBasisPtr basis = sector_basis(u.modes(), total_quanta(l));
    const StateVector in = input_state(l, f, basis);
    const MeshCircuit mesh = clements_decompose(u);
    return state_distribution(evolve(in, mesh, f));
}

namespace {

// Enumerates compositions of l[mode] over output modes, accumulating the
// multinomial coefficient and the U factors, then recurses to the next
// input mode.
void substitution_rec(const Eigen::MatrixXcd& u, const OccupationVector& l,
                      std::size_t input_mode, OccupationVector& counts, Complex coeff,
                      const SectorBasis& basis, int cap, Eigen::VectorXcd& amps) {
    const int m = static_cast<int>(l.size());
    if (input_mode == l.size()) {
        if (*std::max_element(counts.begin(), counts.end()) > cap) return;
        amps(static_cast<Eigen::Index>(basis.index_of(counts))) += coeff;
        return;
    }
    if (l[input_mode] == 0) {
        substitution_rec(u, l, input_mode + 1, counts, coeff, basis, cap, amps);
        return;
    }

    OccupationVector part(m, 0);
    // Compositions of l[input_mode] into m parts, rightmost-heavy first.
    const int quanta = l[input_mode];
    const std::function<void(int, int, Complex)> walk = [&](int mode, int remaining,
                                                            Complex factor) {
        if (mode == m - 1) {
            part[mode] = remaining;
            Complex term = factor;
            for (int r = 0; r < remaining; ++r) term *= u(mode, static_cast<int>(input_mode));
            double multi = 1.0;
            {
                // multinomial(l_i; part)
                int placed = 0;
                for (int p : part) {
                    for (int r = 1; r <= p; ++r) {
                        ++placed;
                        multi *= static_cast<double>(placed) / static_cast<double>(r);
                    }
                }
            }
            for (int k = 0; k < m; ++k) counts[k] += part[k];
            substitution_rec(u, l, input_mode + 1, counts, coeff * term * multi, basis, cap,
                             amps);
            for (int k = 0; k < m; ++k) counts[k] -= part[k];
            part[mode] = 0;
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            part[mode] = take;
            Complex f2 = factor;
            for (int r = 0; r < take; ++r) f2 *= u(mode, static_cast<int>(input_mode));
            walk(mode + 1, remaining - take, f2);
            part[mode] = 0;
        }
    };
    walk(0, quanta, Complex{1.0});
}

}  // namespace

StateVector substitution_oracle(const ModeUnitary& u, const OccupationVector& l,
                                const CharacteristicF& f) {
    const int m = u.modes();
    require(static_cast<int>(l.size()) == m,
            "substitution_oracle: occupation length must match the unitary modes");
    const int n = total_quanta(l);
    if (n > kSubstitutionMaxPhotons || m > kSubstitutionMaxModes) {
        throw std::runtime_error("substitution_oracle: beyond the expansion size caps");
    }
    const SectorBasisPtr basis = sector_basis(m, n);
    const int cap = f.max_occupation();
    for (int li : l) {
        if (li > cap) {
            throw std::invalid_argument(
                "substitution_oracle: input occupation exceeds the species bound");
        }
    }

    StateVector state;
    state.basis = basis;
    state.amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis->size()));
    OccupationVector counts(m, 0);
    substitution_rec(u.matrix(), l, 0, counts, Complex{1.0}, *basis, cap, state.amps);

    // Ladder normalization: each output pattern k carries prod f(k_j),
    // the input normalization removes prod f(l_i).
    double input_norm = 1.0;
    for (int li : l) input_norm *= f.f[li];
    for (std::size_t s = 0; s < basis->size(); ++s) {
        const OccupationVector& v = basis->state(s);
        if (*std::max_element(v.begin(), v.end()) > cap) continue;  // amplitude is zero
        double out_norm = 1.0;
        for (int vk : v) out_norm *= f.f[vk];
        state.amps(static_cast<Eigen::Index>(s)) *= out_norm / input_norm;
    }

    const double norm = state.amps.norm();
    if (norm <= 0.0) {
        throw std::runtime_error("substitution_oracle: expansion produced a null state");
    }
    state.amps /= norm;
    return state;
}

ModeUnitary haar_unitary(int m, std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("haar_unitary: m must be >= 1");
    PortableRng rng(seed);
    Eigen::MatrixXcd a(m, m);
    const double inv_sqrt2 = 0.70710678118654752440;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const double re = rng.normal();
            const double im = rng.normal();
            a(i, j) = Complex(re, im) * inv_sqrt2;
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    Eigen::MatrixXcd q = qr.householderQ();
    const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < m; ++k) {
        const Complex d = r(k, k);
        const double mag = std::abs(d);
        const Complex phase = (mag > 0.0) ? d / mag : Complex{1.0};
        q.col(k) *= phase;
    }
    return ModeUnitary(std::move(q));
}

std::vector<OccupationVector> sample_outcomes(const OutcomeDistribution& dist, std::uint64_t seed,
                                              std::size_t count) {
    require(dist.basis != nullptr, "sample_outcomes: distribution has no basis");
    require(dist.probs.size() == dist.basis->size(),
            "sample_outcomes: probability table size mismatch");
    if (std::abs(dist.sum() - 1.0) > 1e-6) {
        throw std::invalid_argument("sample_outcomes: probabilities do not sum to 1");
    }
    std::vector<double> cdf(dist.probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        acc += dist.probs[i];
        cdf[i] = acc;
    }

    PortableRng rng(seed);
    std::vector<OccupationVector> draws;
    draws.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        const double u = rng.uniform01() * acc;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const std::size_t idx =
            std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
        draws.push_back(dist.basis->state(idx));
    }
    return draws;
}

}  // namespace qbs
