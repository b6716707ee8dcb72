#ifndef QBS_SPECTRA_HPP
#define QBS_SPECTRA_HPP

#include <string>
#include <vector>

#include "qbs/qalgebra.hpp"

namespace qbs {

/// Transmon device parameters (consistent energy units, hbar = 1).
/// ng is the offset charge; it is recorded but does not enter the
/// perturbative spectrum (the levels are nearly independent of it).
struct TransmonParams {
    double ej = 0.0;
    double ec = 0.0;
    double ng = 0.0;

    TransmonParams() = default;
    TransmonParams(double ej_in, double ec_in, double ng_in = 0.0);

    double ratio() const { return ej / ec; }
    /// True in the charge-insensitive regime EJ/EC >= 20.
    bool in_transmon_regime() const { return ratio() >= 20.0; }
};

/// Kerr oscillator parameters: bare frequency omega > 0 and Kerr strength K
/// (negative for transmons).
struct KerrParams {
    double omega = 0.0;
    double kerr = 0.0;

    KerrParams() = default;
    KerrParams(double omega_in, double kerr_in);

    /// True when |K|/omega <= 0.1, where the q-boson mapping is accurate.
    bool weakly_nonlinear() const { return std::abs(kerr) / omega <= 0.1; }
};

enum class SpectrumModel { Transmon, Kerr, QBoson };

std::string to_string(SpectrumModel model);

struct SpectrumLevel {
    int index = 0;
    double energy = 0.0;
};

/// Energy levels of one model, indices contiguous from 0.
struct SpectrumTable {
    SpectrumModel model = SpectrumModel::Kerr;
    std::vector<SpectrumLevel> levels;
};

/// Successive level spacings E_n - E_{n-1} of a table.
std::vector<double> level_spacings(const SpectrumTable& table);

/// Perturbative transmon spectrum for m = 0..m_max:
///   E_m = sqrt(8 EJ EC) (m + 1/2) - (EC/2) (m^2 + m + 1/2)
/// with the constant -EJ offset dropped (zero of energy).
///
/// The quartic correction is -(EC/12)(6m^2+6m+3) = -(EC/2)(m^2+m+1/2);
/// the literature sometimes quotes EC/12 against the already-reduced
/// polynomial, which does not reproduce the defining anharmonicity -EC
/// and is not used here.
SpectrumTable transmon_levels(const TransmonParams& p, int m_max);

/// Kerr oscillator spectrum E_n = omega n + (K/2) n(n-1) for n = 0..n_max.
SpectrumTable kerr_levels(const KerrParams& p, int n_max);

/// q-boson spectrum E_n = omega [n]_q for n = 0..n_max.
SpectrumTable qboson_levels(double omega, const QDeformation& d, int n_max);

/// First-order spectral identification q = 1 + K/omega (Arik-Coon flavor).
/// Rejects |K|/omega > 0.5, far outside the regime where the
/// identification is meaningful.
QDeformation map_kerr_to_q(const KerrParams& p);

/// Kerr-to-frequency ratio implied by transmon energies:
///   K/omega ~= 1 / (sqrt(8 EJ/EC) - 1).
/// Requires EJ/EC > 1.
double kerr_ratio_from_ej_ec(double ej, double ec);

struct ComparisonRow {
    int n = 0;
    double e_kerr = 0.0;
    double e_qboson = 0.0;
    double gap_abs = 0.0;
    double gap_rel = 0.0;  ///< gap_abs / |e_kerr|, 0 when e_kerr = 0
};

/// Side-by-side Kerr vs q-boson spectra at q = 1 + K/omega.
struct ComparisonTable {
    double omega = 0.0;
    double kerr = 0.0;
    double q = 1.0;
    std::vector<ComparisonRow> rows;
};

/// Tabulates E_n^Kerr = omega [n + (q-1)/2 n(n-1)] against omega [n]_q
/// for n = 0..n_max. The gap is exactly 0 at K = 0 and O((K/omega)^2)
/// at fixed n.
ComparisonTable spectrum_compare(double omega, double kerr, int n_max);

struct Phi4Moment {
    double closed_form = 0.0;  ///< 6 m^2 + 6 m + 3
    double oracle = 0.0;       ///< <m| (a + a^dag)^4 |m> by matrix powers
};

/// Fourth moment of the harmonic quadrature in Fock state |m>, computed
/// both in closed form and by explicit truncated-matrix powers.
/// oracle_dim must be at least m + 5 so the truncation cannot touch the
/// matrix element.
Phi4Moment phi4_moment(int m, int oracle_dim);

}  // namespace qbs

#endif  // QBS_SPECTRA_HPP
