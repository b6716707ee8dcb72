#include "qbs/qalgebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qbs {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

QDeformation::QDeformation(double q_in, QFlavor flavor_in) : q(q_in), flavor(flavor_in) {
    require(q > 0.0, "QDeformation: q must be positive");
}

double q_number(int n, const QDeformation& d) {
    require(n >= 0, "q_number: n must be nonnegative");
    if (std::abs(d.q - 1.0) < kQUnityEps) return static_cast<double>(n);
    const double q = d.q;
    if (d.flavor == QFlavor::ArikCoon) {
        return (std::pow(q, n) - 1.0) / (q - 1.0);
    }
    return (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
}

double q_factorial(int n, const QDeformation& d) {
    require(n >= 0, "q_factorial: n must be nonnegative");
    double prod = 1.0;
    for (int k = 1; k <= n; ++k) {
        prod *= q_number(k, d);
        if (!std::isfinite(prod)) {
            throw std::overflow_error("q_factorial: product exceeds representable range");
        }
    }
    return prod;
}

ErrorMetrics error_metrics(int n, double q) {
    require(q > 0.0, "error_metrics: q must be positive");
    require(std::abs(q - 1.0) >= kQUnityEps, "error_metrics: q must differ from 1");
    if (n < 1) throw std::domain_error("error_metrics: relative metric requires n >= 1");
    const double qn = q_number(n, QDeformation(q, QFlavor::ArikCoon));
    const double abs_err = static_cast<double>(n) - qn;
    return ErrorMetrics{abs_err, abs_err / static_cast<double>(n)};
}

double symmetric_gap(int n, double q) {
    require(n >= 0, "symmetric_gap: n must be nonnegative");
    require(q > 0.0, "symmetric_gap: q must be positive");
    require(std::abs(q - 1.0) >= kQUnityEps,
            "symmetric_gap: q = 1 rejected; the limit value is 0");
    return q_number(n, QDeformation(q, QFlavor::Symmetric)) -
           q_number(n, QDeformation(q, QFlavor::ArikCoon));
}

double burban_f(int n, const BurbanParams& p) {
    require(n >= 0, "burban_f: n must be nonnegative");
    require(p.q > 0.0, "burban_f: q must be positive");
    const double q = p.q;
    const double qgn = std::pow(q, p.gamma * n);
    const double seed = p.f0 * qgn;
    if (p.alpha == p.gamma) {
        const double common = std::pow(q, p.gamma * (n - 1) + p.beta);
        const double osc = (n % 2 == 0) ? 0.0 : 1.0;
        return seed + n * common + 2.0 * p.nu * common * osc;
    }
    const double qan = std::pow(q, p.alpha * n);
    const double qg = std::pow(q, p.gamma);
    const double qa = std::pow(q, p.alpha);
    const double denom = qg - qa;
    if (std::abs(denom) < 1e-300 * (std::abs(qg) + std::abs(qa))) {
        throw std::domain_error("burban_f: q^gamma == q^alpha with alpha != gamma; "
                                "ill-conditioned parameters");
    }
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    const double smooth = (qgn - qan) / denom;
    const double osc = 2.0 * p.nu * (qgn - sgn * qan) / (qg + qa);
    return seed + std::pow(q, p.beta) * (smooth + osc);
}

std::vector<double> default_delta_grid() {
    return {1e-3, 3.1622776601683794e-3, 1e-2, 3.1622776601683794e-2, 1e-1};
}

AdmissibilityReport theorem1_check(const BurbanParams& p, std::span<const double> delta_grid) {
    require(p.alpha != p.gamma, "theorem1_check: restricted to alpha != gamma");
    require(delta_grid.size() >= 4, "theorem1_check: need at least 4 grid points");
    double dmin = delta_grid[0];
    double dmax = delta_grid[0];
    for (double d : delta_grid) {
        require(d > 0.0 && d <= 0.2, "theorem1_check: grid values must lie in (0, 0.2]");
        dmin = std::min(dmin, d);
        dmax = std::max(dmax, d);
    }
    require(dmax / dmin >= 10.0, "theorem1_check: grid must span at least a decade");

    AdmissibilityReport rep;
    rep.deltas.assign(delta_grid.begin(), delta_grid.end());
    std::sort(rep.deltas.begin(), rep.deltas.end());

    for (double delta : rep.deltas) {
        BurbanParams pq = p;
        pq.q = 1.0 + delta;
        const QDeformation d(pq.q, QFlavor::ArikCoon);
        rep.gap0.push_back(burban_f(0, pq) - q_number(0, d));
        rep.gap1.push_back(burban_f(1, pq) - q_number(1, d));
        rep.gap2.push_back(burban_f(2, pq) - q_number(2, d));
    }

    for (double g : rep.gap0) rep.max_abs_gap0 = std::max(rep.max_abs_gap0, std::abs(g));
    const bool gap0_zero = rep.max_abs_gap0 <= 1e-12;

    // With beta = nu = f0 = 0 the n = 1 gap is identically zero, so the
    // probe quantity is the larger of the n = 1 and n = 2 gaps.
    constexpr double kNoiseFloor = 1e-14;
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rep.deltas.size(); ++i) {
        const double g = std::max(std::abs(rep.gap1[i]), std::abs(rep.gap2[i]));
        if (g > kNoiseFloor) {
            xs.push_back(std::log(rep.deltas[i]));
            ys.push_back(std::log(g));
        }
    }
    if (xs.size() < 3) {
        rep.verdict = Admissibility::Indeterminate;
        rep.pass = false;
        rep.note = "all probed gaps at floating-point noise; fit degenerate";
        return rep;
    }

    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= static_cast<double>(xs.size());
    ym /= static_cast<double>(xs.size());
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
    }
    rep.slope = sxy / sxx;
    rep.intercept = ym - rep.slope * xm;

    const bool ok = gap0_zero && rep.slope >= kAdmissibilitySlopeMin;
    rep.verdict = ok ? Admissibility::Pass : Admissibility::Fail;
    rep.pass = ok;
    if (!gap0_zero) rep.note = "gap(0) nonzero: f(0) must vanish";
    return rep;
}

Species Species::standard() { return Species{}; }

Species Species::qboson(const QDeformation& d) {
    Species s;
    s.kind = SpeciesKind::QBoson;
    s.deformation = d;
    return s;
}

Species Species::spin(int two_s) {
    require(two_s >= 1, "Species::spin: 2S must be a positive integer");
    Species s;
    s.kind = SpeciesKind::Spin;
    s.two_s = two_s;
    return s;
}

Species Species::custom(std::vector<double> f_table) {
    Species s;
    s.kind = SpeciesKind::Custom;
    s.custom_table = std::move(f_table);
    return s;
}

CharacteristicF characteristic_f(const Species& species, int cutoff) {
    require(cutoff >= 1, "characteristic_f: cutoff must be >= 1");
    CharacteristicF cf;
    cf.kind = species.kind;
    cf.deformation = species.deformation;
    cf.two_s = species.two_s;

    if (species.kind == SpeciesKind::Custom) {
        require(static_cast<int>(species.custom_table.size()) == cutoff + 1,
                "characteristic_f: custom table size must equal cutoff + 1");
        require(std::abs(species.custom_table[0] - 1.0) < 1e-12,
                "characteristic_f: custom table must have f(0) = 1");
        for (double v : species.custom_table) {
            require(v > 0.0 && std::isfinite(v),
                    "characteristic_f: custom table entries must be positive and finite");
        }
        cf.f = species.custom_table;
        return cf;
    }

    if (species.kind == SpeciesKind::Spin && cutoff > species.two_s) {
        throw std::invalid_argument("characteristic_f: spin-S Fock space ends at n = 2S");
    }

    cf.f.resize(cutoff + 1);
    cf.f[0] = 1.0;
    for (int n = 1; n <= cutoff; ++n) {
        double weight = 0.0;  // f(n)^2 / f(n-1)^2
        switch (species.kind) {
            case SpeciesKind::Standard:
                weight = static_cast<double>(n);
                break;
            case SpeciesKind::QBoson:
                weight = q_number(n, species.deformation);
                break;
            case SpeciesKind::Spin:
                weight = static_cast<double>(n) * static_cast<double>(species.two_s - n + 1);
                break;
            case SpeciesKind::Custom:
                break;  // handled above
        }
        cf.f[n] = cf.f[n - 1] * std::sqrt(weight);
        if (!std::isfinite(cf.f[n])) {
            throw std::overflow_error("characteristic_f: f table exceeds representable range");
        }
    }
    return cf;
}

double commutator_F(const CharacteristicF& f, int n) {
    require(n >= 0, "commutator_F: n must be nonnegative");
    if (n + 1 > f.cutoff()) {
        throw std::invalid_argument("commutator_F: n + 1 exceeds the table cutoff");
    }
    const double up = f.f[n + 1] / f.f[n];
    const double down = (n == 0) ? 0.0 : f.f[n] / f.f[n - 1];
    return up * up - down * down;
}

LadderRep ladder_matrices(const CharacteristicF& f, int dim) {
    require(dim >= 1, "ladder_matrices: dim must be >= 1");
    if (dim > f.cutoff() + 1) {
        throw std::invalid_argument("ladder_matrices: dim exceeds cutoff + 1");
    }
    LadderRep rep;
    rep.dim = dim;
    rep.lower = Eigen::MatrixXcd::Zero(dim, dim);
    rep.number = Eigen::MatrixXcd::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) {
        rep.lower(n - 1, n) = f.f[n] / f.f[n - 1];
    }
    for (int n = 0; n < dim; ++n) {
        rep.number(n, n) = static_cast<double>(n);
    }
    rep.raise = rep.lower.adjoint();
    return rep;
}

}  // namespace qbs
