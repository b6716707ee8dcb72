#include "qbs/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qbs {

using nlohmann::json;

std::string fmt_g17(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string spectrum_csv(const SpectrumTable& table) {
    std::ostringstream out;
    out << "index,energy,model\n";
    for (const SpectrumLevel& level : table.levels) {
        out << level.index << ',' << fmt_g17(level.energy) << ',' << to_string(table.model)
            << '\n';
    }
    return out.str();
}

std::string comparison_csv(const ComparisonTable& table) {
    std::ostringstream out;
    out << "n,e_kerr,e_qboson,gap_abs,gap_rel\n";
    for (const ComparisonRow& row : table.rows) {
        out << row.n << ',' << fmt_g17(row.e_kerr) << ',' << fmt_g17(row.e_qboson) << ','
            << fmt_g17(row.gap_abs) << ',' << fmt_g17(row.gap_rel) << '\n';
    }
    return out.str();
}

std::string distribution_csv(const OutcomeDistribution& dist) {
    std::ostringstream out;
    out << "occupation,probability\n";
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        out << '"' << occupation_to_string(dist.basis->state(i)) << "\"," << fmt_g17(dist.probs[i])
            << '\n';
    }
    return out.str();
}

std::string samples_text(const std::vector<OccupationVector>& draws) {
    std::ostringstream out;
    for (const OccupationVector& draw : draws) {
        out << occupation_to_string(draw) << '\n';
    }
    return out.str();
}

std::string admissibility_csv(const AdmissibilityReport& report) {
    std::ostringstream out;
    out << "delta,gap0,gap1,gap2\n";
    for (std::size_t i = 0; i < report.deltas.size(); ++i) {
        out << fmt_g17(report.deltas[i]) << ',' << fmt_g17(report.gap0[i]) << ','
            << fmt_g17(report.gap1[i]) << ',' << fmt_g17(report.gap2[i]) << '\n';
    }
    return out.str();
}

namespace {

json spectrum_to_json(const SpectrumTable& table) {
    json rows = json::array();
    for (const SpectrumLevel& level : table.levels) {
        rows.push_back({{"index", level.index}, {"energy", level.energy}});
    }
    return json{{"model", to_string(table.model)}, {"levels", rows}};
}

}  // namespace

std::string spectrum_json(const SpectrumTable& table) {
    return spectrum_to_json(table).dump();
}

std::string comparison_json(const ComparisonTable& table) {
    json rows = json::array();
    for (const ComparisonRow& row : table.rows) {
        rows.push_back({{"n", row.n},
                        {"e_kerr", row.e_kerr},
                        {"e_qboson", row.e_qboson},
                        {"gap_abs", row.gap_abs},
                        {"gap_rel", row.gap_rel}});
    }
    return json{{"omega", table.omega}, {"kerr", table.kerr}, {"q", table.q}, {"rows", rows}}
        .dump();
}

std::string distribution_json(const OutcomeDistribution& dist) {
    json states = json::array();
    json probs = json::array();
    for (std::size_t i = 0; i < dist.probs.size(); ++i) {
        states.push_back(dist.basis->state(i));
        probs.push_back(dist.probs[i]);
    }
    return json{{"modes", dist.basis->modes()},
                {"quanta", dist.basis->quanta()},
                {"states", states},
                {"probabilities", probs}}
        .dump();
}

std::string admissibility_json(const AdmissibilityReport& report) {
    const char* verdict = "indeterminate";
    if (report.verdict == Admissibility::Pass) verdict = "pass";
    if (report.verdict == Admissibility::Fail) verdict = "fail";
    return json{{"verdict", verdict},
                {"pass", report.pass},
                {"slope", report.slope},
                {"intercept", report.intercept},
                {"max_abs_gap0", report.max_abs_gap0},
                {"deltas", report.deltas},
                {"gap0", report.gap0},
                {"gap1", report.gap1},
                {"gap2", report.gap2},
                {"note", report.note}}
        .dump();
}

std::string matrix_to_json_string(const Eigen::MatrixXcd& matrix) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            row.push_back({matrix(i, j).real(), matrix(i, j).imag()});
        }
        rows.push_back(row);
    }
    return rows.dump();
}

Eigen::MatrixXcd matrix_from_json_string(const std::string& text) {
    json parsed;
    try {
        parsed = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("matrix JSON: ") + err.what());
    }
    if (!parsed.is_array() || parsed.empty()) {
        throw std::invalid_argument("matrix JSON: expected a nonempty array of rows");
    }
    const std::size_t rows = parsed.size();
    const std::size_t cols = parsed[0].is_array() ? parsed[0].size() : 0;
    if (cols == 0) throw std::invalid_argument("matrix JSON: rows must be nonempty arrays");
    Eigen::MatrixXcd out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!parsed[i].is_array() || parsed[i].size() != cols) {
            throw std::invalid_argument("matrix JSON: ragged rows");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            const json& cell = parsed[i][j];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number()) {
                throw std::invalid_argument("matrix JSON: entries must be [re, im] pairs");
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    return out;
}

Eigen::MatrixXcd matrix_from_json_file(const std::string& path) {
    return matrix_from_json_string(read_file(path));
}

Species parse_species(const std::string& text) {
    if (text == "standard") return Species::standard();
    if (text.rfind("q:", 0) == 0) {
        const std::string value = text.substr(2);
        std::size_t pos = 0;
        double q = 0.0;
        try {
            q = std::stod(value, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("species: bad q value '" + value + "'");
        }
        if (pos != value.size() || !(q > 0.0)) {
            throw std::invalid_argument("species: q must be a positive real, got '" + value +
                                        "'");
        }
        return Species::qboson(QDeformation(q, QFlavor::ArikCoon));
    }
    if (text.rfind("spin:", 0) == 0) {
        const std::string value = text.substr(5);
        std::size_t pos = 0;
        double s = 0.0;
        try {
            s = std::stod(value, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("species: bad spin value '" + value + "'");
        }
        const double two_s = 2.0 * s;
        const double rounded = std::round(two_s);
        if (pos != value.size() || std::abs(two_s - rounded) > 1e-9 || rounded < 1.0) {
            throw std::invalid_argument("species: spin must be a positive half-integer, got '" +
                                        value + "'");
        }
        return Species::spin(static_cast<int>(rounded));
    }
    throw std::invalid_argument("species: expected 'standard', 'q:<float>' or "
                                "'spin:<half-integer>', got '" +
                                text + "'");
}

std::string species_to_string(const Species& species) {
    switch (species.kind) {
        case SpeciesKind::Standard: return "standard";
        case SpeciesKind::QBoson: {
            std::string tag = "q:" + fmt_g17(species.deformation.q);
            if (species.deformation.flavor == QFlavor::Symmetric) tag += " (symmetric)";
            return tag;
        }
        case SpeciesKind::Spin: {
            const int two_s = species.two_s;
            if (two_s % 2 == 0) return "spin:" + std::to_string(two_s / 2);
            return "spin:" + std::to_string(two_s / 2) + ".5";
        }
        case SpeciesKind::Custom: return "custom";
    }
    return "unknown";
}

CharacteristicF species_table(const Species& species, int quanta) {
    int cutoff = std::max(quanta, 1);
    if (species.kind == SpeciesKind::Spin) cutoff = std::min(cutoff, species.two_s);
    return characteristic_f(species, cutoff);
}

SamplingJob parse_sampling_job(const std::string& json_text) {
    json parsed;
    try {
        parsed = json::parse(json_text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument(std::string("job JSON: ") + err.what());
    }
    if (!parsed.is_object()) throw std::invalid_argument("job JSON: expected an object");

    static const std::vector<std::string> known = {"modes",   "haar_seed", "unitary",
                                                   "input_occupation", "species", "shots",
                                                   "seed"};
    for (const auto& item : parsed.items()) {
        bool ok = false;
        for (const std::string& key : known) ok = ok || key == item.key();
        if (!ok) throw std::invalid_argument("job JSON: unknown key '" + item.key() + "'");
    }

    SamplingJob job;
    if (!parsed.contains("modes") || !parsed["modes"].is_number_integer()) {
        throw std::invalid_argument("job JSON: 'modes' (integer) is required");
    }
    job.modes = parsed["modes"].get<int>();

    const bool has_seed = parsed.contains("haar_seed");
    const bool has_unitary = parsed.contains("unitary");
    if (has_seed == has_unitary) {
        throw std::invalid_argument("job JSON: exactly one of 'haar_seed'/'unitary' is required");
    }
    if (has_seed) {
        if (!parsed["haar_seed"].is_number_unsigned() && !parsed["haar_seed"].is_number_integer()) {
            throw std::invalid_argument("job JSON: 'haar_seed' must be an integer");
        }
        job.haar_seed = parsed["haar_seed"].get<std::uint64_t>();
    } else {
        job.unitary = matrix_from_json_string(parsed["unitary"].dump());
    }

    if (!parsed.contains("input_occupation") || !parsed["input_occupation"].is_array()) {
        throw std::invalid_argument("job JSON: 'input_occupation' (array) is required");
    }
    for (const json& v : parsed["input_occupation"]) {
        if (!v.is_number_integer() || v.get<int>() < 0) {
            throw std::invalid_argument("job JSON: occupations must be nonnegative integers");
        }
        job.input.push_back(v.get<int>());
    }

    if (!parsed.contains("species") || !parsed["species"].is_string()) {
        throw std::invalid_argument("job JSON: 'species' (string) is required");
    }
    job.species = parse_species(parsed["species"].get<std::string>());

    if (parsed.contains("shots")) {
        if (!parsed["shots"].is_number_integer() || parsed["shots"].get<long long>() < 0) {
            throw std::invalid_argument("job JSON: 'shots' must be a nonnegative integer");
        }
        job.shots = parsed["shots"].get<std::size_t>();
    }
    if (parsed.contains("seed")) {
        if (!parsed["seed"].is_number_unsigned() && !parsed["seed"].is_number_integer()) {
            throw std::invalid_argument("job JSON: 'seed' must be an integer");
        }
        job.sample_seed = parsed["seed"].get<std::uint64_t>();
    }
    return job;
}

void write_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(p.parent_path(), ec);
    }
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace qbs
