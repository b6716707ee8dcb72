#ifndef QBS_PERMANENT_HPP
#define QBS_PERMANENT_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <vector>

#include "qbs/occupation.hpp"

namespace qbs {

using Complex = std::complex<double>;

/// Default size caps keeping exact kernels at desk scale; every entry
/// point takes an explicit override for larger runs.
inline constexpr int kNaivePermanentCap = 14;
inline constexpr int kRyserPermanentCap = 28;
inline constexpr int kQPermanentCap = 12;

enum class PermanentAlgorithm { Naive, Ryser };

/// Matrix permanent sum_{sigma in S_n} prod_i A(i, sigma(i)).
///
/// Naive enumerates all permutations (exact reference, O(n! n));
/// Ryser runs the inclusion-exclusion formula over Gray-code-ordered
/// subsets with incremental row sums (O(2^n n)).
Complex permanent(const Eigen::MatrixXcd& a, PermanentAlgorithm algorithm,
                  int size_cap = -1);

/// Ryser kernel over `partitions` contiguous Gray-code ranges evaluated
/// concurrently. Each range re-initializes its row sums from its first
/// subset, and partial sums are reduced in fixed range order, so the
/// result is bit-stable for a fixed partition count no matter how many
/// threads execute it.
Complex permanent_ryser_parallel(const Eigen::MatrixXcd& a, int partitions = 64,
                                 int size_cap = -1);

/// Permutation statistic used to weight q-permanent terms. Receives the
/// image vector sigma(0..n-1).
using PermutationStatistic = std::function<int(const std::vector<int>&)>;

/// Number of inversions |{(i,j): i < j, sigma(i) > sigma(j)}|.
int inversion_number(const std::vector<int>& sigma);

/// q-weighted permanent sum_sigma q^{ell(sigma)} prod_i A(i, sigma(i)).
///
/// ell defaults to the inversion number; pass a statistic to swap in an
/// alternative. q = 1 reduces to the permanent, q = 0 to the diagonal
/// product (only the identity has ell = 0).
Complex q_permanent(const Eigen::MatrixXcd& a, double q, int size_cap = -1);
Complex q_permanent(const Eigen::MatrixXcd& a, double q, const PermutationStatistic& statistic,
                    int size_cap = -1);

/// m x m complex mode-mixing matrix, validated unitary at construction
/// (U^dag U = I within 1e-10 entrywise).
class ModeUnitary {
  public:
    explicit ModeUnitary(Eigen::MatrixXcd u);

    int modes() const { return static_cast<int>(u_.rows()); }
    const Eigen::MatrixXcd& matrix() const { return u_; }

    static constexpr double kUnitarityTol = 1e-10;

  private:
    Eigen::MatrixXcd u_;
};

/// The n x n matrix Lambda[k|l]: column i of U repeated l_i times, row j
/// repeated k_j times, ascending mode index with repeats adjacent.
/// Requires sum k = sum l = n >= 1.
Eigen::MatrixXcd build_lambda(const ModeUnitary& u, const OccupationVector& k,
                              const OccupationVector& l);

/// Transition probability |Perm(Lambda[k|l])|^2 / (prod l_i! prod k_i!).
double prob_outcome(const ModeUnitary& u, const OccupationVector& k, const OccupationVector& l);

/// Full outcome distribution of prob_outcome over the fixed-n sector.
OutcomeDistribution distribution_permanent(const ModeUnitary& u, const OccupationVector& l);

}  // namespace qbs

#endif  // QBS_PERMANENT_HPP
