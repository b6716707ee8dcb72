#ifndef QBS_QALGEBRA_HPP
#define QBS_QALGEBRA_HPP

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

namespace qbs {

/// Threshold below which |q - 1| is treated as the undeformed limit and
/// q-number closed forms dispatch to their polynomial limit.
inline constexpr double kQUnityEps = 1e-12;

/// Which q-number convention a deformation uses.
///
/// ArikCoon:  [n]_q = (q^n - 1) / (q - 1)
/// Symmetric: [n]_q = (q^n - q^-n) / (q - q^-1), invariant under q <-> 1/q
enum class QFlavor { ArikCoon, Symmetric };

/// Deformation parameter q > 0 plus the q-number convention.
struct QDeformation {
    double q = 1.0;
    QFlavor flavor = QFlavor::ArikCoon;

    QDeformation() = default;
    QDeformation(double q_in, QFlavor flavor_in = QFlavor::ArikCoon);
};

/// q-deformed integer [n]_q in the deformation's flavor.
/// Both flavors return exactly n when |q - 1| < kQUnityEps.
double q_number(int n, const QDeformation& d);

/// Product of [1]_q ... [n]_q; the empty product is 1.
/// Throws std::overflow_error if the product leaves the double range.
double q_factorial(int n, const QDeformation& d);

/// Deviation of the Arik-Coon q-integer from n.
struct ErrorMetrics {
    double delta_abs = 0.0;  ///< n - [n]_q
    double delta_rel = 0.0;  ///< (n - [n]_q) / n
};

/// Absolute and relative deviation n - [n]_q for the Arik-Coon q-number.
/// Requires n >= 1 (the relative metric divides by n) and q in
/// (0,1) u (1,inf). For 0 < q < 1 and n >= 2 the result satisfies
/// 0 < delta_abs <= n(n-1)(1-q)/2, with equality exactly at n = 2
/// ([2]_q = 1 + q) and a strict bound from n = 3 on.
ErrorMetrics error_metrics(int n, double q);

/// Difference [n]_q^sym - [n]_q between the symmetric and Arik-Coon
/// q-numbers at the same q. Rejects q = 1 (the limit value is 0).
///
/// Note: the symmetric q-number has no linear term in delta = q - 1
/// (its exponents are symmetric about zero), so the gap behaves as
/// -n(n-1)/2 * delta + O(delta^2); direct evaluation confirms this.
double symmetric_gap(int n, double q);

/// Structure constants of the (q; alpha, beta, gamma; nu) oscillator family.
/// f0 is the sequence seed f(0). The alpha == gamma branch has its own
/// closed form; selection is exact on alpha == gamma.
struct BurbanParams {
    double q = 1.0;
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double nu = 0.0;
    double f0 = 0.0;
};

/// Evaluates the family's spectrum-like sequence f(n).
/// Throws std::domain_error when q^gamma == q^alpha numerically while
/// alpha != gamma (ill-conditioned parameters, division by ~0).
double burban_f(int n, const BurbanParams& p);

enum class Admissibility { Pass, Fail, Indeterminate };

/// Result of the small-deformation admissibility probe.
struct AdmissibilityReport {
    Admissibility verdict = Admissibility::Indeterminate;
    bool pass = false;        ///< verdict == Pass
    double slope = 0.0;       ///< fitted d log(gap) / d log(delta)
    double intercept = 0.0;   ///< fitted log-gap intercept
    double max_abs_gap0 = 0.0;
    std::vector<double> deltas;
    std::vector<double> gap0;
    std::vector<double> gap1;
    std::vector<double> gap2;
    std::string note;
};

/// Fitted-slope threshold for admissibility: the gap has to close at
/// least this fast in delta (quadratic scaling with a margin for
/// higher-order contamination over delta in [1e-3, 1e-1]).
inline constexpr double kAdmissibilitySlopeMin = 1.8;

/// Probes whether the (q; alpha, beta, gamma; nu) family reproduces the
/// Arik-Coon q-integer up to O(delta^2) at small deformation.
///
/// For each delta in the grid (values in (0, 0.2], at least 4 points
/// spanning a decade), sets q = 1 + delta and evaluates
/// gap(n) = f(n) - [n]_q at n = 0, 1, 2. With beta = nu = f0 = 0 the
/// n = 1 gap vanishes identically, so n = 2 carries the signal for the
/// gamma + alpha = 1 condition; the fit uses max(|gap(1)|, |gap(2)|).
/// Pass requires fitted slope >= kAdmissibilitySlopeMin and gap(0)
/// identically zero; a fit with all gaps at floating-point noise is
/// Indeterminate, never Pass. p.q is ignored (q is set per grid point).
/// alpha == gamma is rejected.
AdmissibilityReport theorem1_check(const BurbanParams& p, std::span<const double> delta_grid);

/// Log-spaced default grid over [1e-3, 1e-1].
std::vector<double> default_delta_grid();

/// Boson species selector for a characteristic function table.
enum class SpeciesKind { Standard, QBoson, Spin, Custom };

/// Tag describing a generalized-boson species.
struct Species {
    SpeciesKind kind = SpeciesKind::Standard;
    QDeformation deformation;  ///< QBoson only
    int two_s = 0;             ///< Spin only: 2S as an integer
    std::vector<double> custom_table;

    static Species standard();
    static Species qboson(const QDeformation& d);
    static Species spin(int two_s);
    static Species custom(std::vector<double> f_table);
};

/// Tabulated normalization function f(0..cutoff) with f(0) = 1.
///
/// f defines the generalized Fock states |n> = (a^dag)^n |0> / f(n);
/// the ladder weight is f(n)/f(n-1) and the same-site commutator
/// spectrum F(n) follows from the ratio formula in commutator_F.
struct CharacteristicF {
    SpeciesKind kind = SpeciesKind::Standard;
    QDeformation deformation;
    int two_s = 0;
    std::vector<double> f;  ///< f[n] for n = 0..cutoff; f[0] = 1; all > 0

    int cutoff() const { return static_cast<int>(f.size()) - 1; }

    /// Largest occupation a single mode admits: 2S for Spin species,
    /// the table cutoff otherwise.
    int max_occupation() const { return kind == SpeciesKind::Spin ? two_s : cutoff(); }
};

/// Builds the f table for a species up to the given cutoff.
///   Standard: f(n) = sqrt(n!)
///   QBoson:   f(n) = sqrt([n]_q!)
///   Spin:     f(n) = sqrt(n! (2S)! / (2S-n)!), defined only for n <= 2S
///             (cutoff > 2S is rejected; the Fock space ends at 2S)
///   Custom:   the provided table, f(0) = 1 and all entries > 0 required
CharacteristicF characteristic_f(const Species& species, int cutoff);

/// Same-site commutator spectrum
///   F(n) = f(n+1)^2/f(n)^2 - f(n)^2/f(n-1)^2   (second term 0 at n = 0).
/// Standard species gives 1; QBoson gives q^n (so a a^dag - q a^dag a = 1);
/// Spin gives 2S - 2n. Requires n + 1 <= cutoff.
double commutator_F(const CharacteristicF& f, int n);

/// Truncated ladder-operator matrices on span{|0>, ..., |dim-1>}.
struct LadderRep {
    int dim = 0;
    Eigen::MatrixXcd lower;   ///< <n-1| a |n> = f(n)/f(n-1)
    Eigen::MatrixXcd raise;   ///< conjugate transpose of lower
    Eigen::MatrixXcd number;  ///< diag(0..dim-1)
};

/// Matrix representation of (a, a^dag, N) for a species; dim <= cutoff + 1.
LadderRep ladder_matrices(const CharacteristicF& f, int dim);

}  // namespace qbs

#endif  // QBS_QALGEBRA_HPP
