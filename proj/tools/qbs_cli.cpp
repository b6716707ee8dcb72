// Command-line entry point: every library module exposed as a subcommand,
// with CSV/JSON artifact emission and reproducible seeding.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qbs/focksim.hpp"
#include "qbs/io.hpp"
#include "qbs/occupation.hpp"
#include "qbs/parallel.hpp"
#include "qbs/permanent.hpp"
#include "qbs/qalgebra.hpp"
#include "qbs/rng.hpp"
#include "qbs/spectra.hpp"

namespace {

using nlohmann::json;

// Relative artifact paths land in $QBS_OUT_DIR when it is set.
std::string resolve_out(const std::string& path) {
    if (path.empty()) return path;
    const std::filesystem::path p(path);
    if (p.is_absolute()) return path;
    const char* base = std::getenv("QBS_OUT_DIR");
    if (!base || !*base) return path;
    return (std::filesystem::path(base) / p).string();
}

void emit_summary(const json& summary) {
    std::cout << summary.dump() << std::endl;
}

struct SpectraArgs {
    std::string model;
    double ej = 0.0, ec = 0.0, ng = 0.0;
    double omega = 0.0, kerr = 0.0;
    double q = 0.0;
    int levels = 0;
    std::string out;
    bool as_json = false;
    bool got_ej = false, got_ec = false, got_omega = false, got_kerr = false, got_q = false;
};

void run_spectra(const SpectraArgs& args) {
    std::string model = args.model;
    if (model.empty()) {
        const bool transmon_like = args.got_ej && args.got_ec;
        const bool kerr_like = args.got_omega && args.got_kerr;
        const bool qboson_like = args.got_omega && args.got_q;
        if (transmon_like && !kerr_like && !qboson_like) {
            model = "transmon";
        } else if (kerr_like && !transmon_like && !qboson_like) {
            model = "kerr";
        } else if (qboson_like && !transmon_like && !kerr_like) {
            model = "qboson";
        } else {
            throw std::invalid_argument(
                "spectra: cannot infer --model; give --ej/--ec, --omega/--kerr, or "
                "--omega/--q (or --model explicitly)");
        }
    }
    if (args.levels < 1) throw std::invalid_argument("spectra: --levels must be >= 1");
    const int top = args.levels - 1;

    json summary = {{"command", "spectra"}, {"model", model}, {"status", "ok"}};
    std::string artifact;

    if (model == "transmon") {
        if (!(args.got_ej && args.got_ec)) {
            throw std::invalid_argument("spectra: transmon model needs --ej and --ec");
        }
        const qbs::TransmonParams p(args.ej, args.ec, args.ng);
        if (!p.in_transmon_regime()) {
            std::cerr << "warning: EJ/EC = " << p.ratio()
                      << " is outside the transmon regime (typically 20-100)\n";
            summary["regime_warning"] = true;
        }
        const qbs::SpectrumTable table = qbs::transmon_levels(p, std::max(top, 2));
        qbs::SpectrumTable cut = table;
        cut.levels.resize(args.levels);
        artifact = args.as_json ? qbs::spectrum_json(cut) : qbs::spectrum_csv(cut);
    } else if (model == "kerr") {
        if (!(args.got_omega && args.got_kerr)) {
            throw std::invalid_argument("spectra: kerr model needs --omega and --kerr");
        }
        const qbs::KerrParams p(args.omega, args.kerr);
        if (!p.weakly_nonlinear()) {
            std::cerr << "warning: |K|/omega > 0.1; far outside the weakly nonlinear regime\n";
            summary["regime_warning"] = true;
        }
        const qbs::SpectrumTable table = qbs::kerr_levels(p, std::max(top, 1));
        qbs::SpectrumTable cut = table;
        cut.levels.resize(args.levels);
        artifact = args.as_json ? qbs::spectrum_json(cut) : qbs::spectrum_csv(cut);
    } else if (model == "qboson") {
        if (!(args.got_omega && args.got_q)) {
            throw std::invalid_argument("spectra: qboson model needs --omega and --q");
        }
        const qbs::QDeformation d(args.q, qbs::QFlavor::ArikCoon);
        const qbs::SpectrumTable table = qbs::qboson_levels(args.omega, d, std::max(top, 1));
        qbs::SpectrumTable cut = table;
        cut.levels.resize(args.levels);
        artifact = args.as_json ? qbs::spectrum_json(cut) : qbs::spectrum_csv(cut);
    } else if (model == "compare") {
        if (!(args.got_omega && args.got_kerr)) {
            throw std::invalid_argument("spectra: compare model needs --omega and --kerr");
        }
        const qbs::ComparisonTable table =
            qbs::spectrum_compare(args.omega, args.kerr, std::max(top, 2));
        qbs::ComparisonTable cut = table;
        cut.rows.resize(args.levels);
        summary["q"] = table.q;
        artifact = args.as_json ? qbs::comparison_json(cut) : qbs::comparison_csv(cut);
    } else {
        throw std::invalid_argument("spectra: unknown model '" + model + "'");
    }

    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, artifact);
        summary["artifact"] = out;
    } else {
        std::cerr << artifact;
    }
    summary["levels"] = args.levels;
    emit_summary(summary);
}

struct QnumArgs {
    int n_max = 0;
    double q = 1.0;
    std::string flavor = "arikcoon";
    std::string out;
    bool as_json = false;
};

void run_qnum(const QnumArgs& args) {
    if (args.n_max < 0) throw std::invalid_argument("qnum: --n must be >= 0");
    qbs::QFlavor flavor;
    if (args.flavor == "arikcoon") {
        flavor = qbs::QFlavor::ArikCoon;
    } else if (args.flavor == "symmetric") {
        flavor = qbs::QFlavor::Symmetric;
    } else {
        throw std::invalid_argument("qnum: --flavor must be arikcoon or symmetric");
    }
    const qbs::QDeformation d(args.q, flavor);
    const bool with_errors =
        flavor == qbs::QFlavor::ArikCoon && std::abs(args.q - 1.0) >= qbs::kQUnityEps;

    std::ostringstream csv;
    csv << "n,q_number,delta_abs,delta_rel\n";
    json rows = json::array();
    for (int n = 0; n <= args.n_max; ++n) {
        const double qn = qbs::q_number(n, d);
        json row = {{"n", n}, {"q_number", qn}};
        csv << n << ',' << qbs::fmt_g17(qn) << ',';
        if (with_errors && n >= 1) {
            const qbs::ErrorMetrics em = qbs::error_metrics(n, args.q);
            csv << qbs::fmt_g17(em.delta_abs) << ',' << qbs::fmt_g17(em.delta_rel);
            row["delta_abs"] = em.delta_abs;
            row["delta_rel"] = em.delta_rel;
        } else {
            csv << ',';
        }
        csv << '\n';
        rows.push_back(row);
    }

    const std::string artifact =
        args.as_json ? json{{"q", args.q}, {"flavor", args.flavor}, {"rows", rows}}.dump()
                     : csv.str();
    json summary = {{"command", "qnum"},
                    {"q", args.q},
                    {"flavor", args.flavor},
                    {"n_max", args.n_max},
                    {"status", "ok"}};
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, artifact);
        summary["artifact"] = out;
    } else {
        std::cerr << artifact;
    }
    emit_summary(summary);
}

struct Theorem1Args {
    double alpha = 0.0, beta = 0.0, gamma = 0.0, nu = 0.0, f0 = 0.0;
    std::vector<double> deltas;
    std::string out;
    std::string csv;
};

void run_theorem1(const Theorem1Args& args) {
    qbs::BurbanParams p;
    p.alpha = args.alpha;
    p.beta = args.beta;
    p.gamma = args.gamma;
    p.nu = args.nu;
    p.f0 = args.f0;
    const std::vector<double> grid =
        args.deltas.empty() ? qbs::default_delta_grid() : args.deltas;
    const qbs::AdmissibilityReport report = qbs::theorem1_check(p, grid);

    json summary = json::parse(qbs::admissibility_json(report));
    summary["command"] = "theorem1";
    summary["status"] = "ok";
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, qbs::admissibility_json(report));
        summary["artifact"] = out;
    }
    const std::string csv = resolve_out(args.csv);
    if (!csv.empty()) {
        qbs::write_file(csv, qbs::admissibility_csv(report));
        summary["csv_artifact"] = csv;
    }
    emit_summary(summary);
}

struct PermArgs {
    std::string matrix_path;
    std::string algorithm = "ryser";
    double q = 1.0;
    int partitions = 64;
    std::string out;
};

void run_perm(const PermArgs& args) {
    if (args.matrix_path.empty()) throw std::invalid_argument("perm: --matrix is required");
    const Eigen::MatrixXcd a = qbs::matrix_from_json_file(args.matrix_path);

    qbs::Complex value;
    if (args.algorithm == "naive") {
        value = qbs::permanent(a, qbs::PermanentAlgorithm::Naive);
    } else if (args.algorithm == "ryser") {
        value = qbs::permanent(a, qbs::PermanentAlgorithm::Ryser);
    } else if (args.algorithm == "ryser-par") {
        value = qbs::permanent_ryser_parallel(a, args.partitions);
    } else if (args.algorithm == "qperm") {
        value = qbs::q_permanent(a, args.q);
    } else {
        throw std::invalid_argument(
            "perm: --algorithm must be naive, ryser, ryser-par or qperm");
    }

    json summary = {{"command", "perm"},
                    {"algorithm", args.algorithm},
                    {"n", a.rows()},
                    {"value_re", value.real()},
                    {"value_im", value.imag()},
                    {"status", "ok"}};
    if (args.algorithm == "qperm") summary["q"] = args.q;
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, summary.dump());
        summary["artifact"] = out;
    }
    emit_summary(summary);
}

struct SamplingArgs {
    std::string job_path;
    int modes = 0;
    std::optional<std::uint64_t> haar_seed;
    std::string unitary_path;
    std::string input_text;
    std::string species_text = "standard";
    std::string engine = "mesh";
    std::uint64_t sample_seed = 0;
    std::size_t shots = 0;
    std::string out;
    bool as_json = false;
};

struct ResolvedJob {
    qbs::ModeUnitary unitary;
    qbs::OccupationVector input;
    qbs::Species species;
    std::uint64_t sample_seed = 0;
    std::size_t shots = 0;
    json descriptor;
};

ResolvedJob resolve_job(const SamplingArgs& args, bool need_shots) {
    std::optional<qbs::SamplingJob> job;
    if (!args.job_path.empty()) {
        job = qbs::parse_sampling_job(qbs::read_file(args.job_path));
    }

    int modes = job ? job->modes : args.modes;
    if (modes < 1) throw std::invalid_argument("sampling: modes must be >= 1");

    std::optional<Eigen::MatrixXcd> unitary_matrix;
    std::optional<std::uint64_t> haar_seed;
    if (job) {
        unitary_matrix = job->unitary;
        haar_seed = job->haar_seed;
    } else {
        haar_seed = args.haar_seed;
        if (!args.unitary_path.empty()) {
            unitary_matrix = qbs::matrix_from_json_file(args.unitary_path);
        }
    }
    if (unitary_matrix.has_value() == haar_seed.has_value()) {
        throw std::invalid_argument(
            "sampling: exactly one of --haar-seed or --unitary is required");
    }

    qbs::ModeUnitary u = unitary_matrix ? qbs::ModeUnitary(*unitary_matrix)
                                        : qbs::haar_unitary(modes, *haar_seed);
    if (u.modes() != modes) {
        throw std::invalid_argument("sampling: unitary size does not match --modes");
    }

    qbs::OccupationVector input =
        job ? job->input : qbs::occupation_from_string(args.input_text);
    if (static_cast<int>(input.size()) != modes) {
        throw std::invalid_argument("sampling: input occupation length must equal modes");
    }

    const qbs::Species species =
        job ? job->species : qbs::parse_species(args.species_text);

    json descriptor = {{"modes", modes},
                       {"input", qbs::occupation_to_string(input)},
                       {"species", qbs::species_to_string(species)}};
    if (haar_seed) descriptor["haar_seed"] = *haar_seed;

    ResolvedJob resolved{std::move(u), std::move(input), species,
                         job ? job->sample_seed : args.sample_seed,
                         job ? job->shots : args.shots, std::move(descriptor)};
    if (need_shots && resolved.shots == 0) {
        throw std::invalid_argument("sample: --shots must be >= 1");
    }
    return resolved;
}

qbs::OutcomeDistribution compute_distribution(const ResolvedJob& job,
                                              const std::string& engine) {
    const int n = qbs::total_quanta(job.input);
    const qbs::CharacteristicF f = qbs::species_table(job.species, n);
    if (engine == "mesh") {
        return qbs::outcome_distribution(job.unitary, job.input, f);
    }
    if (engine == "permanent") {
        if (job.species.kind != qbs::SpeciesKind::Standard) {
            throw std::invalid_argument(
                "sampling: the permanent engine is defined for the standard species only");
        }
        return qbs::distribution_permanent(job.unitary, job.input);
    }
    if (engine == "substitution") {
        return qbs::state_distribution(qbs::substitution_oracle(job.unitary, job.input, f));
    }
    throw std::invalid_argument("sampling: --engine must be mesh, permanent or substitution");
}

void run_dist(const SamplingArgs& args) {
    const ResolvedJob job = resolve_job(args, false);
    const qbs::OutcomeDistribution dist = compute_distribution(job, args.engine);

    json summary = {{"command", "dist"},
                    {"engine", args.engine},
                    {"sum", dist.sum()},
                    {"status", "ok"}};
    summary.update(job.descriptor);
    if (job.species.kind == qbs::SpeciesKind::Standard && args.engine == "mesh") {
        const qbs::OutcomeDistribution reference =
            qbs::distribution_permanent(job.unitary, job.input);
        summary["tv_vs_permanent"] = qbs::tv_distance(dist, reference);
    }

    const std::string artifact =
        args.as_json ? qbs::distribution_json(dist) : qbs::distribution_csv(dist);
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, artifact);
        summary["artifact"] = out;
    } else {
        std::cerr << artifact;
    }
    emit_summary(summary);
}

void run_sample(const SamplingArgs& args) {
    const ResolvedJob job = resolve_job(args, true);
    const qbs::OutcomeDistribution dist = compute_distribution(job, args.engine);
    const std::vector<qbs::OccupationVector> draws =
        qbs::sample_outcomes(dist, job.sample_seed, job.shots);

    std::vector<long> counts(dist.probs.size(), 0);
    for (const qbs::OccupationVector& d : draws) {
        counts[dist.basis->index_of(d)] += 1;
    }

    json summary = {{"command", "sample"},
                    {"engine", args.engine},
                    {"shots", job.shots},
                    {"seed", job.sample_seed},
                    {"empirical_tv", qbs::tv_distance(dist, counts)},
                    {"status", "ok"}};
    summary.update(job.descriptor);

    std::string artifact;
    if (args.as_json) {
        json rows = json::array();
        for (const qbs::OccupationVector& d : draws) rows.push_back(d);
        artifact = json{{"samples", rows}}.dump();
    } else {
        artifact = qbs::samples_text(draws);
    }
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, artifact);
        summary["artifact"] = out;
    } else {
        std::cerr << artifact;
    }
    emit_summary(summary);
}

struct ValidateArgs {
    int trials = 20;
    std::string out;
};

void run_validate(const ValidateArgs& args) {
    if (args.trials < 1) throw std::invalid_argument("validate: --trials must be >= 1");
    double max_tv_perm = 0.0;
    double max_tv_subst = 0.0;
    double max_norm_defect = 0.0;
    json cases = json::array();

    for (int t = 0; t < args.trials; ++t) {
        const int m = 2 + t % 3;            // 2..4 modes
        const int n = 1 + t % 3;            // 1..3 photons
        const std::uint64_t seed = 1000 + static_cast<std::uint64_t>(t);
        const qbs::ModeUnitary u = qbs::haar_unitary(m, seed);

        qbs::OccupationVector input(m, 0);
        int left = n;
        for (int k = 0; k < m && left > 0; ++k, --left) input[k] += 1;
        for (int k = 0; left > 0; k = (k + 1) % m, --left) input[k] += 1;

        const qbs::CharacteristicF f = qbs::species_table(qbs::Species::standard(), n);
        const qbs::OutcomeDistribution mesh_dist = qbs::outcome_distribution(u, input, f);
        const qbs::OutcomeDistribution perm_dist = qbs::distribution_permanent(u, input);
        const qbs::StateVector subst = qbs::substitution_oracle(u, input, f);
        const qbs::OutcomeDistribution subst_dist = qbs::state_distribution(subst);

        const double tv_perm = qbs::tv_distance(mesh_dist, perm_dist);
        const double tv_subst = qbs::tv_distance(mesh_dist, subst_dist);
        const double norm_defect = std::abs(mesh_dist.sum() - 1.0);
        max_tv_perm = std::max(max_tv_perm, tv_perm);
        max_tv_subst = std::max(max_tv_subst, tv_subst);
        max_norm_defect = std::max(max_norm_defect, norm_defect);
        cases.push_back({{"seed", seed},
                         {"modes", m},
                         {"photons", n},
                         {"tv_mesh_vs_permanent", tv_perm},
                         {"tv_mesh_vs_substitution", tv_subst},
                         {"norm_defect", norm_defect}});
    }

    const double max_tv = std::max(max_tv_perm, max_tv_subst);
    const bool ok = max_tv < 1e-8;
    json summary = {{"command", "validate"},
                    {"trials", args.trials},
                    {"max_tv", max_tv},
                    {"max_tv_mesh_vs_permanent", max_tv_perm},
                    {"max_tv_mesh_vs_substitution", max_tv_subst},
                    {"max_norm_defect", max_norm_defect},
                    {"status", ok ? "ok" : "tv-threshold-exceeded"}};
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        json report = summary;
        report["cases"] = cases;
        qbs::write_file(out, report.dump());
        summary["artifact"] = out;
    }
    emit_summary(summary);
    if (!ok) throw std::runtime_error("validate: engine cross-check exceeded 1e-8 TV");
}

struct BenchArgs {
    int min_n = 2;
    int max_n = 12;
    std::vector<std::string> algorithms = {"naive", "ryser", "ryser-par"};
    std::uint64_t seed = 1;
    int partitions = 64;
    std::string out;
};

void run_bench(const BenchArgs& args) {
    if (args.min_n < 1 || args.max_n < args.min_n) {
        throw std::invalid_argument("bench: need 1 <= min-n <= max-n");
    }
    std::ostringstream csv;
    csv << "n,algorithm,wall_time_ns,value_re,value_im\n";
    for (int n = args.min_n; n <= args.max_n; ++n) {
        qbs::PortableRng rng(qbs::splitmix64(args.seed) ^ static_cast<std::uint64_t>(n));
        Eigen::MatrixXcd a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a(i, j) = qbs::Complex(rng.normal(), rng.normal());
            }
        }
        for (const std::string& algorithm : args.algorithms) {
            if (algorithm == "naive" && n > qbs::kNaivePermanentCap) continue;
            if (algorithm == "qperm" && n > qbs::kQPermanentCap) continue;
            const auto start = std::chrono::steady_clock::now();
            qbs::Complex value;
            if (algorithm == "naive") {
                if (n > 10) continue;  // keep the harness at desk scale
                value = qbs::permanent(a, qbs::PermanentAlgorithm::Naive);
            } else if (algorithm == "ryser") {
                value = qbs::permanent(a, qbs::PermanentAlgorithm::Ryser);
            } else if (algorithm == "ryser-par") {
                value = qbs::permanent_ryser_parallel(a, args.partitions);
            } else if (algorithm == "qperm") {
                value = qbs::q_permanent(a, 0.5);
            } else {
                throw std::invalid_argument("bench: unknown algorithm '" + algorithm + "'");
            }
            const auto stop = std::chrono::steady_clock::now();
            const auto ns =
                std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start).count();
            csv << n << ',' << algorithm << ',' << ns << ',' << qbs::fmt_g17(value.real())
                << ',' << qbs::fmt_g17(value.imag()) << '\n';
        }
    }
    json summary = {{"command", "bench"},
                    {"min_n", args.min_n},
                    {"max_n", args.max_n},
                    {"status", "ok"}};
    const std::string out = resolve_out(args.out);
    if (!out.empty()) {
        qbs::write_file(out, csv.str());
        summary["artifact"] = out;
    } else {
        std::cerr << csv.str();
    }
    emit_summary(summary);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qbs: q-deformed boson spectra, permanents and Fock-state sampling"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads, "cap worker threads (0 = hardware concurrency)");

    SpectraArgs spectra;
    CLI::App* spectra_cmd = app.add_subcommand("spectra", "energy level tables");
    spectra_cmd->add_option("--model", spectra.model,
                            "transmon | kerr | qboson | compare (inferred when omitted)");
    auto* ej_opt = spectra_cmd->add_option("--ej", spectra.ej, "Josephson energy");
    auto* ec_opt = spectra_cmd->add_option("--ec", spectra.ec, "charging energy");
    spectra_cmd->add_option("--ng", spectra.ng, "offset charge (recorded only)");
    auto* omega_opt = spectra_cmd->add_option("--omega", spectra.omega, "bare frequency");
    auto* kerr_opt = spectra_cmd->add_option("--kerr", spectra.kerr, "Kerr strength");
    auto* q_opt = spectra_cmd->add_option("--q", spectra.q, "deformation parameter");
    spectra_cmd->add_option("--levels", spectra.levels, "number of levels to emit")->required();
    spectra_cmd->add_option("--out", spectra.out, "artifact path (stderr when omitted)");
    spectra_cmd->add_flag("--json", spectra.as_json, "emit JSON instead of CSV");

    QnumArgs qnum;
    CLI::App* qnum_cmd = app.add_subcommand("qnum", "q-number tables and error metrics");
    qnum_cmd->add_option("--n", qnum.n_max, "largest n to tabulate")->required();
    qnum_cmd->add_option("--q", qnum.q, "deformation parameter")->required();
    qnum_cmd->add_option("--flavor", qnum.flavor, "arikcoon | symmetric");
    qnum_cmd->add_option("--out", qnum.out, "artifact path (stderr when omitted)");
    qnum_cmd->add_flag("--json", qnum.as_json, "emit JSON instead of CSV");

    Theorem1Args theorem1;
    CLI::App* theorem1_cmd =
        app.add_subcommand("theorem1", "small-deformation admissibility probe");
    theorem1_cmd->add_option("--alpha", theorem1.alpha)->required();
    theorem1_cmd->add_option("--beta", theorem1.beta)->required();
    theorem1_cmd->add_option("--gamma", theorem1.gamma)->required();
    theorem1_cmd->add_option("--nu", theorem1.nu)->required();
    theorem1_cmd->add_option("--f0", theorem1.f0)->required();
    theorem1_cmd->add_option("--deltas", theorem1.deltas,
                             "probe grid (default log-spaced over [1e-3, 1e-1])");
    theorem1_cmd->add_option("--out", theorem1.out, "JSON report path");
    theorem1_cmd->add_option("--csv", theorem1.csv, "per-delta gap CSV path");

    PermArgs perm;
    CLI::App* perm_cmd = app.add_subcommand("perm", "matrix permanent kernels");
    perm_cmd->add_option("--matrix", perm.matrix_path, "JSON matrix file ([re, im] pairs)")
        ->required();
    perm_cmd->add_option("--algorithm", perm.algorithm, "naive | ryser | ryser-par | qperm");
    perm_cmd->add_option("--q", perm.q, "q for qperm");
    perm_cmd->add_option("--partitions", perm.partitions, "Gray-code ranges for ryser-par");
    perm_cmd->add_option("--out", perm.out, "JSON result path");

    SamplingArgs dist;
    CLI::App* dist_cmd = app.add_subcommand("dist", "exact outcome distribution");
    dist_cmd->add_option("--job", dist.job_path, "JSON job spec (overrides other flags)");
    dist_cmd->add_option("--modes", dist.modes, "mode count");
    auto* dist_seed = dist_cmd->add_option("--haar-seed", dist.haar_seed, "Haar unitary seed");
    auto* dist_unitary =
        dist_cmd->add_option("--unitary", dist.unitary_path, "JSON unitary file");
    dist_seed->excludes(dist_unitary);
    dist_cmd->add_option("--input", dist.input_text, "input occupation, e.g. 1,1");
    dist_cmd->add_option("--species", dist.species_text,
                         "standard | q:<float> | spin:<half-integer>");
    dist_cmd->add_option("--engine", dist.engine, "mesh | permanent | substitution");
    dist_cmd->add_option("--out", dist.out, "artifact path (stderr when omitted)");
    dist_cmd->add_flag("--json", dist.as_json, "emit JSON instead of CSV");

    SamplingArgs sample;
    CLI::App* sample_cmd = app.add_subcommand("sample", "draw outcomes from a distribution");
    sample_cmd->add_option("--job", sample.job_path, "JSON job spec (overrides other flags)");
    sample_cmd->add_option("--modes", sample.modes, "mode count");
    auto* sample_seed_opt =
        sample_cmd->add_option("--haar-seed", sample.haar_seed, "Haar unitary seed");
    auto* sample_unitary =
        sample_cmd->add_option("--unitary", sample.unitary_path, "JSON unitary file");
    sample_seed_opt->excludes(sample_unitary);
    sample_cmd->add_option("--input", sample.input_text, "input occupation, e.g. 1,1");
    sample_cmd->add_option("--species", sample.species_text,
                           "standard | q:<float> | spin:<half-integer>");
    sample_cmd->add_option("--engine", sample.engine, "mesh | permanent | substitution");
    sample_cmd->add_option("--shots", sample.shots, "number of draws");
    sample_cmd->add_option("--seed", sample.sample_seed, "sampling seed");
    sample_cmd->add_option("--out", sample.out, "artifact path (stderr when omitted)");
    sample_cmd->add_flag("--json", sample.as_json, "emit JSON instead of CSV");

    ValidateArgs validate;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "engine-equivalence cross-check suite");
    validate_cmd->add_option("--trials", validate.trials, "number of Haar trials");
    validate_cmd->add_option("--out", validate.out, "JSON report path");

    BenchArgs bench;
    CLI::App* bench_cmd = app.add_subcommand("bench", "permanent kernel timing CSV");
    bench_cmd->add_option("--min-n", bench.min_n, "smallest matrix order");
    bench_cmd->add_option("--max-n", bench.max_n, "largest matrix order");
    bench_cmd->add_option("--algorithms", bench.algorithms,
                          "subset of naive,ryser,ryser-par,qperm");
    bench_cmd->add_option("--seed", bench.seed, "matrix generation seed");
    bench_cmd->add_option("--partitions", bench.partitions, "ryser-par partition count");
    bench_cmd->add_option("--out", bench.out, "CSV path (stderr when omitted)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
        app.exit(e);
        std::cout << json{{"status", "error"}, {"error", e.what()}}.dump() << std::endl;
        return 2;
    }

    spectra.got_ej = ej_opt->count() > 0;
    spectra.got_ec = ec_opt->count() > 0;
    spectra.got_omega = omega_opt->count() > 0;
    spectra.got_kerr = kerr_opt->count() > 0;
    spectra.got_q = q_opt->count() > 0;

    qbs::set_max_threads(threads);

    try {
        if (spectra_cmd->parsed()) run_spectra(spectra);
        if (qnum_cmd->parsed()) run_qnum(qnum);
        if (theorem1_cmd->parsed()) run_theorem1(theorem1);
        if (perm_cmd->parsed()) run_perm(perm);
        if (dist_cmd->parsed()) run_dist(dist);
        if (sample_cmd->parsed()) run_sample(sample);
        if (validate_cmd->parsed()) run_validate(validate);
        if (bench_cmd->parsed()) run_bench(bench);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << json{{"status", "error"}, {"error", e.what()}}.dump() << std::endl;
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << json{{"status", "error"}, {"error", e.what()}}.dump() << std::endl;
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        std::cout << json{{"status", "error"}, {"error", e.what()}}.dump() << std::endl;
        return 1;
    }
    return 0;
}
