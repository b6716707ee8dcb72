#include "qbs/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

#include "qbs/parallel.hpp"

namespace qbs {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

int checked_order(const Eigen::MatrixXcd& a, int size_cap, int default_cap, const char* name) {
    require(a.rows() == a.cols(), "permanent kernels require a square matrix");
    require(a.rows() >= 1, "permanent kernels require a nonempty matrix");
    const int n = static_cast<int>(a.rows());
    const int cap = size_cap > 0 ? size_cap : default_cap;
    if (n > cap) {
        throw std::runtime_error(std::string(name) + ": matrix order " + std::to_string(n) +
                                 " exceeds the size cap " + std::to_string(cap));
    }
    return n;
}

Complex permanent_naive(const Eigen::MatrixXcd& a, int n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex sum = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(i, sigma[i]);
        sum += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return sum;
}

// One contiguous Gray-code range [first, last) of the Ryser
// inclusion-exclusion sum; row sums seeded from gray(first - 1).
Complex ryser_range(const Eigen::MatrixXcd& a, int n, std::uint64_t first, std::uint64_t last) {
    Eigen::VectorXcd rowsum = Eigen::VectorXcd::Zero(n);
    std::uint64_t prev = (first - 1) ^ ((first - 1) >> 1);
    for (int j = 0; j < n; ++j) {
        if (prev & (std::uint64_t{1} << j)) rowsum += a.col(j);
    }
    Complex acc = 0.0;
    for (std::uint64_t k = first; k < last; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t diff = gray ^ prev;
        const int j = std::countr_zero(diff);
        if (gray & diff) {
            rowsum += a.col(j);
        } else {
            rowsum -= a.col(j);
        }
        prev = gray;
        const Complex prod = rowsum.prod();
        if (std::popcount(gray) % 2 == 0) {
            acc += prod;
        } else {
            acc -= prod;
        }
    }
    return acc;
}

Complex permanent_ryser(const Eigen::MatrixXcd& a, int n) {
    const std::uint64_t count = std::uint64_t{1} << n;
    Complex acc = ryser_range(a, n, 1, count);
    return (n % 2 == 0) ? acc : -acc;
}

}  // namespace

Complex permanent(const Eigen::MatrixXcd& a, PermanentAlgorithm algorithm, int size_cap) {
    switch (algorithm) {
        case PermanentAlgorithm::Naive: {
            const int n = checked_order(a, size_cap, kNaivePermanentCap, "permanent(Naive)");
            return permanent_naive(a, n);
        }
        case PermanentAlgorithm::Ryser: {
            const int n = checked_order(a, size_cap, kRyserPermanentCap, "permanent(Ryser)");
            return permanent_ryser(a, n);
        }
    }
    throw std::logic_error("permanent: unknown algorithm");
}

Complex permanent_ryser_parallel(const Eigen::MatrixXcd& a, int partitions, int size_cap) {
    const int n = checked_order(a, size_cap, kRyserPermanentCap, "permanent_ryser_parallel");
    require(partitions >= 1, "permanent_ryser_parallel: partitions must be >= 1");
    const std::uint64_t total = (std::uint64_t{1} << n) - 1;  // subsets 1..2^n-1
    const std::uint64_t chunks = std::min<std::uint64_t>(partitions, total);
    std::vector<Complex> partial(chunks, Complex{0.0});

    parallel_for(0, chunks, [&](std::size_t c) {
        const std::uint64_t first = 1 + (total * c) / chunks;
        const std::uint64_t last = 1 + (total * (c + 1)) / chunks;
        partial[c] = ryser_range(a, n, first, last);
    });

    Complex acc = 0.0;
    for (const Complex& p : partial) acc += p;  // fixed reduction order
    return (n % 2 == 0) ? acc : -acc;
}

int inversion_number(const std::vector<int>& sigma) {
    int inv = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        for (std::size_t j = i + 1; j < sigma.size(); ++j) {
            if (sigma[i] > sigma[j]) ++inv;
        }
    }
    return inv;
}

namespace {

// Depth-first expansion over images; tracks the running product and the
// inversions contributed by each placement (unused values below the
// chosen one are all placed later, each creating one inversion).
void q_permanent_rec(const Eigen::MatrixXcd& a, int n, int row, std::uint32_t unused,
                     Complex prod, int invs, const std::vector<double>& qpow, Complex& acc) {
    if (row == n) {
        acc += prod * qpow[invs];
        return;
    }
    for (int c = 0; c < n; ++c) {
        const std::uint32_t bit = std::uint32_t{1} << c;
        if (!(unused & bit)) continue;
        const int added = std::popcount(unused & (bit - 1));
        q_permanent_rec(a, n, row + 1, unused & ~bit, prod * a(row, c), invs + added, qpow, acc);
    }
}

}  // namespace

Complex q_permanent(const Eigen::MatrixXcd& a, double q, int size_cap) {
    const int n = checked_order(a, size_cap, kQPermanentCap, "q_permanent");
    std::vector<double> qpow(n * (n - 1) / 2 + 1);
    qpow[0] = 1.0;
    for (std::size_t k = 1; k < qpow.size(); ++k) qpow[k] = qpow[k - 1] * q;
    Complex acc = 0.0;
    q_permanent_rec(a, n, 0, (std::uint32_t{1} << n) - 1, Complex{1.0}, 0, qpow, acc);
    return acc;
}

Complex q_permanent(const Eigen::MatrixXcd& a, double q, const PermutationStatistic& statistic,
                    int size_cap) {
    if (!statistic) return q_permanent(a, q, size_cap);
    const int n = checked_order(a, size_cap, kQPermanentCap, "q_permanent");
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    Complex acc = 0.0;
    do {
        Complex prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= a(i, sigma[i]);
        acc += prod * std::pow(q, statistic(sigma));
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return acc;
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd u) : u_(std::move(u)) {
    require(u_.rows() == u_.cols(), "ModeUnitary: matrix must be square");
    require(u_.rows() >= 1, "ModeUnitary: matrix must be nonempty");
    require(u_.allFinite(), "ModeUnitary: matrix entries must be finite");
    const Eigen::MatrixXcd gram = u_.adjoint() * u_;
    const double defect =
        (gram - Eigen::MatrixXcd::Identity(u_.rows(), u_.cols())).cwiseAbs().maxCoeff();
    if (defect > kUnitarityTol) {
        throw std::invalid_argument("ModeUnitary: matrix is not unitary (defect " +
                                    std::to_string(defect) + ")");
    }
}

namespace {

std::vector<int> repeat_indices(const OccupationVector& multiplicities) {
    std::vector<int> out;
    for (std::size_t mode = 0; mode < multiplicities.size(); ++mode) {
        require(multiplicities[mode] >= 0, "occupation entries must be nonnegative");
        for (int r = 0; r < multiplicities[mode]; ++r) out.push_back(static_cast<int>(mode));
    }
    return out;
}

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= static_cast<double>(k);
    return f;
}

}  // namespace

Eigen::MatrixXcd build_lambda(const ModeUnitary& u, const OccupationVector& k,
                              const OccupationVector& l) {
    const int m = u.modes();
    require(static_cast<int>(k.size()) == m, "build_lambda: k must have one entry per mode");
    require(static_cast<int>(l.size()) == m, "build_lambda: l must have one entry per mode");
    const int nk = total_quanta(k);
    const int nl = total_quanta(l);
    if (nk != nl) {
        throw std::invalid_argument("build_lambda: photon number mismatch (sum k = " +
                                    std::to_string(nk) + ", sum l = " + std::to_string(nl) + ")");
    }
    require(nk >= 1, "build_lambda: requires at least one photon");

    const std::vector<int> rows = repeat_indices(k);
    const std::vector<int> cols = repeat_indices(l);
    Eigen::MatrixXcd lambda(nk, nk);
    for (int r = 0; r < nk; ++r) {
        for (int c = 0; c < nk; ++c) {
            lambda(r, c) = u.matrix()(rows[r], cols[c]);
        }
    }
    return lambda;
}

double prob_outcome(const ModeUnitary& u, const OccupationVector& k, const OccupationVector& l) {
    const Eigen::MatrixXcd lambda = build_lambda(u, k, l);
    const Complex perm = permanent(lambda, PermanentAlgorithm::Ryser);
    double denom = 1.0;
    for (int li : l) denom *= factorial(li);
    for (int ki : k) denom *= factorial(ki);
    return std::norm(perm) / denom;
}

OutcomeDistribution distribution_permanent(const ModeUnitary& u, const OccupationVector& l) {
    const int m = u.modes();
    require(static_cast<int>(l.size()) == m, "distribution_permanent: l must match the modes");
    const int n = total_quanta(l);
    OutcomeDistribution dist;
    dist.basis = sector_basis(m, n);
    dist.probs.assign(dist.basis->size(), 0.0);
    if (n == 0) {
        dist.probs[0] = 1.0;
        return dist;
    }
    parallel_for(0, dist.basis->size(), [&](std::size_t i) {
        dist.probs[i] = prob_outcome(u, dist.basis->state(i), l);
    });
    return dist;
}

}  // namespace qbs
