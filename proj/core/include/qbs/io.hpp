#ifndef QBS_IO_HPP
#define QBS_IO_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qbs/focksim.hpp"
#include "qbs/occupation.hpp"
#include "qbs/qalgebra.hpp"
#include "qbs/spectra.hpp"

namespace qbs {

/// Floating-point rendering used in every artifact: 17 significant
/// digits, enough to round-trip a double exactly.
std::string fmt_g17(double value);

// CSV renderings (header row, UTF-8, '\n' line ends).

/// Columns: index,energy,model
std::string spectrum_csv(const SpectrumTable& table);
/// Columns: n,e_kerr,e_qboson,gap_abs,gap_rel
std::string comparison_csv(const ComparisonTable& table);
/// Columns: occupation,probability (occupation quoted: "n1,n2,...")
std::string distribution_csv(const OutcomeDistribution& dist);
/// Newline-delimited occupation tuples.
std::string samples_text(const std::vector<OccupationVector>& draws);
/// Columns: delta,gap0,gap1,gap2
std::string admissibility_csv(const AdmissibilityReport& report);

// JSON renderings mirroring the CSV data losslessly.

std::string spectrum_json(const SpectrumTable& table);
std::string comparison_json(const ComparisonTable& table);
std::string distribution_json(const OutcomeDistribution& dist);
std::string admissibility_json(const AdmissibilityReport& report);

/// Complex matrices as nested arrays of [re, im] pairs.
std::string matrix_to_json_string(const Eigen::MatrixXcd& matrix);
Eigen::MatrixXcd matrix_from_json_string(const std::string& text);
Eigen::MatrixXcd matrix_from_json_file(const std::string& path);

/// Species grammar: "standard" | "q:<float>" | "spin:<half-integer>".
Species parse_species(const std::string& text);
std::string species_to_string(const Species& species);

/// Characteristic table for a species sized to a sector with n quanta
/// (spin tables end at 2S).
CharacteristicF species_table(const Species& species, int quanta);

/// Sampling job spec (JSON): exactly one of haar_seed/unitary, plus
/// modes, input_occupation, species, optional shots/seed.
/// Unknown keys are rejected.
struct SamplingJob {
    int modes = 0;
    std::optional<std::uint64_t> haar_seed;
    std::optional<Eigen::MatrixXcd> unitary;
    OccupationVector input;
    Species species;
    std::uint64_t sample_seed = 0;
    std::size_t shots = 0;
};

SamplingJob parse_sampling_job(const std::string& json_text);

/// Writes content to path, creating parent directories.
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace qbs

#endif  // QBS_IO_HPP
