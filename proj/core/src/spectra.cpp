#include "qbs/spectra.hpp"

#include <cmath>
#include <stdexcept>

namespace qbs {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

TransmonParams::TransmonParams(double ej_in, double ec_in, double ng_in)
    : ej(ej_in), ec(ec_in), ng(ng_in) {
    require(ej > 0.0, "TransmonParams: EJ must be positive");
    require(ec > 0.0, "TransmonParams: EC must be positive");
}

KerrParams::KerrParams(double omega_in, double kerr_in) : omega(omega_in), kerr(kerr_in) {
    require(omega > 0.0, "KerrParams: omega must be positive");
}

std::string to_string(SpectrumModel model) {
    switch (model) {
        case SpectrumModel::Transmon: return "transmon";
        case SpectrumModel::Kerr: return "kerr";
        case SpectrumModel::QBoson: return "qboson";
    }
    return "unknown";
}

std::vector<double> level_spacings(const SpectrumTable& table) {
    std::vector<double> out;
    for (std::size_t i = 1; i < table.levels.size(); ++i) {
        out.push_back(table.levels[i].energy - table.levels[i - 1].energy);
    }
    return out;
}

SpectrumTable transmon_levels(const TransmonParams& p, int m_max) {
    require(m_max >= 2, "transmon_levels: m_max must be >= 2");
    const double harmonic = std::sqrt(8.0 * p.ej * p.ec);
    SpectrumTable table;
    table.model = SpectrumModel::Transmon;
    for (int m = 0; m <= m_max; ++m) {
        const double md = static_cast<double>(m);
        const double e = harmonic * (md + 0.5) - 0.5 * p.ec * (md * md + md + 0.5);
        table.levels.push_back({m, e});
    }
    return table;
}

SpectrumTable kerr_levels(const KerrParams& p, int n_max) {
    require(n_max >= 1, "kerr_levels: n_max must be >= 1");
    SpectrumTable table;
    table.model = SpectrumModel::Kerr;
    for (int n = 0; n <= n_max; ++n) {
        const double nd = static_cast<double>(n);
        table.levels.push_back({n, p.omega * nd + 0.5 * p.kerr * nd * (nd - 1.0)});
    }
    return table;
}

SpectrumTable qboson_levels(double omega, const QDeformation& d, int n_max) {
    require(omega > 0.0, "qboson_levels: omega must be positive");
    require(n_max >= 1, "qboson_levels: n_max must be >= 1");
    SpectrumTable table;
    table.model = SpectrumModel::QBoson;
    for (int n = 0; n <= n_max; ++n) {
        table.levels.push_back({n, omega * q_number(n, d)});
    }
    return table;
}

QDeformation map_kerr_to_q(const KerrParams& p) {
    const double ratio = p.kerr / p.omega;
    if (std::abs(ratio) > 0.5) {
        throw std::invalid_argument(
            "map_kerr_to_q: |K|/omega > 0.5; the first-order identification "
            "q = 1 + K/omega is meaningless this far from the weakly "
            "nonlinear regime");
    }
    return QDeformation(1.0 + ratio, QFlavor::ArikCoon);
}

double kerr_ratio_from_ej_ec(double ej, double ec) {
    require(ec > 0.0 && ej > 0.0, "kerr_ratio_from_ej_ec: energies must be positive");
    require(ej / ec > 1.0, "kerr_ratio_from_ej_ec: requires EJ/EC > 1");
    return 1.0 / (std::sqrt(8.0 * ej / ec) - 1.0);
}

ComparisonTable spectrum_compare(double omega, double kerr, int n_max) {
    require(n_max >= 2, "spectrum_compare: n_max must be >= 2");
    const KerrParams kp(omega, kerr);
    const QDeformation d = map_kerr_to_q(kp);

    ComparisonTable table;
    table.omega = omega;
    table.kerr = kerr;
    table.q = d.q;
    const SpectrumTable ek = kerr_levels(kp, n_max);
    const SpectrumTable eq = qboson_levels(omega, d, n_max);
    for (int n = 0; n <= n_max; ++n) {
        ComparisonRow row;
        row.n = n;
        row.e_kerr = ek.levels[n].energy;
        row.e_qboson = eq.levels[n].energy;
        row.gap_abs = std::abs(row.e_qboson - row.e_kerr);
        row.gap_rel = (row.e_kerr != 0.0) ? row.gap_abs / std::abs(row.e_kerr) : 0.0;
        table.rows.push_back(row);
    }
    return table;
}

Phi4Moment phi4_moment(int m, int oracle_dim) {
    require(m >= 0, "phi4_moment: m must be nonnegative");
    if (oracle_dim < m + 5) {
        throw std::invalid_argument(
            "phi4_moment: oracle_dim must be >= m + 5 so the truncation "
            "cannot touch the matrix element");
    }
    Phi4Moment out;
    const double md = static_cast<double>(m);
    out.closed_form = 6.0 * md * md + 6.0 * md + 3.0;

    const CharacteristicF f = characteristic_f(Species::standard(), oracle_dim);
    const LadderRep rep = ladder_matrices(f, oracle_dim);
    const Eigen::MatrixXcd x = rep.lower + rep.raise;
    const Eigen::MatrixXcd x4 = x * x * x * x;
    out.oracle = x4(m, m).real();
    return out;
}

}  // namespace qbs
