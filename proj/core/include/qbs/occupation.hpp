#ifndef QBS_OCCUPATION_HPP
#define QBS_OCCUPATION_HPP

#include <cstddef>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace qbs {

/// Multi-mode Fock configuration (n_1, ..., n_m), all entries >= 0.
using OccupationVector = std::vector<int>;

/// Total quantum count of an occupation vector.
int total_quanta(const OccupationVector& v);

/// "n1,n2,...,nm" rendering used by the CLI and artifact files.
std::string occupation_to_string(const OccupationVector& v);

/// Parses "n1,n2,...,nm"; throws std::invalid_argument on malformed input.
OccupationVector occupation_from_string(const std::string& text);

/// Default cap on sector sizes; C(n+m-1, n) beyond this is rejected.
inline constexpr std::size_t kSectorSizeCap = 100000;

/// Ordered basis of the fixed-total-number sector: every occupation
/// vector over `modes` modes with sum `quanta`, enumerated in ascending
/// lexicographic order, with an index <-> state bijection.
class SectorBasis {
  public:
    SectorBasis(int modes, int quanta);

    int modes() const { return modes_; }
    int quanta() const { return quanta_; }
    std::size_t size() const { return states_.size(); }

    const OccupationVector& state(std::size_t index) const { return states_[index]; }
    const std::vector<OccupationVector>& states() const { return states_; }

    /// Index of a state; throws std::invalid_argument if not in the sector.
    std::size_t index_of(const OccupationVector& state) const;
    bool contains(const OccupationVector& state) const;

    bool operator==(const SectorBasis& other) const {
        return modes_ == other.modes_ && quanta_ == other.quanta_;
    }

  private:
    int modes_;
    int quanta_;
    std::vector<OccupationVector> states_;
    struct VecHash {
        std::size_t operator()(const OccupationVector& v) const;
    };
    std::unordered_map<OccupationVector, std::size_t, VecHash> index_;
};

/// Number of states in the (modes, quanta) sector, C(n+m-1, n).
/// Throws std::overflow_error beyond kSectorSizeCap.
std::size_t sector_size(int modes, int quanta);

/// Shared-ownership basis used by states and distributions.
using SectorBasisPtr = std::shared_ptr<const SectorBasis>;

/// Builds (and validates the size of) a sector basis.
SectorBasisPtr sector_basis(int modes, int quanta);

/// Probability table over a sector basis.
struct OutcomeDistribution {
    SectorBasisPtr basis;
    std::vector<double> probs;

    double sum() const;
};

/// Total variation distance (1/2) sum |p - r|; bases must agree.
double tv_distance(const OutcomeDistribution& p, const OutcomeDistribution& r);

/// Total variation distance between a distribution and empirical counts
/// over the same basis.
double tv_distance(const OutcomeDistribution& p, const std::vector<long>& counts);

}  // namespace qbs

#endif  // QBS_OCCUPATION_HPP
