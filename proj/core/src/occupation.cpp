#include "qbs/occupation.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qbs {

int total_quanta(const OccupationVector& v) {
    return std::accumulate(v.begin(), v.end(), 0);
}

std::string occupation_to_string(const OccupationVector& v) {
    std::ostringstream out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out << ',';
        out << v[i];
    }
    return out.str();
}

OccupationVector occupation_from_string(const std::string& text) {
    OccupationVector out;
    std::istringstream in(text);
    std::string token;
    while (std::getline(in, token, ',')) {
        std::size_t pos = 0;
        int value = 0;
        try {
            value = std::stoi(token, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("occupation: '" + token + "' is not an integer");
        }
        if (pos != token.size() || value < 0) {
            throw std::invalid_argument("occupation: '" + token +
                                        "' is not a nonnegative integer");
        }
        out.push_back(value);
    }
    if (out.empty()) throw std::invalid_argument("occupation: empty list");
    return out;
}

std::size_t sector_size(int modes, int quanta) {
    if (modes < 1) throw std::invalid_argument("sector_size: modes must be >= 1");
    if (quanta < 0) throw std::invalid_argument("sector_size: quanta must be >= 0");
    // C(quanta + modes - 1, quanta) with an early cap check.
    long double count = 1.0L;
    for (int k = 1; k <= quanta; ++k) {
        count *= static_cast<long double>(modes - 1 + k);
        count /= static_cast<long double>(k);
        if (count > 2.0L * static_cast<long double>(kSectorSizeCap)) break;
    }
    const auto rounded = static_cast<std::size_t>(count + 0.5L);
    if (rounded > kSectorSizeCap) {
        throw std::overflow_error("sector_size: outcome space exceeds the size cap");
    }
    return rounded;
}

SectorBasis::SectorBasis(int modes, int quanta) : modes_(modes), quanta_(quanta) {
    const std::size_t expected = sector_size(modes, quanta);
    states_.reserve(expected);

    // Lexicographic enumeration from (0,...,0,n) to (n,0,...,0). The
    // successor of a state increments the rightmost position that still
    // has quanta to its right and drops the remainder into the last mode.
    OccupationVector state(modes, 0);
    state[modes - 1] = quanta;
    while (true) {
        states_.push_back(state);
        int j = modes - 2;
        int right = (modes >= 2) ? state[modes - 1] : 0;
        while (j >= 0 && right == 0) {
            --j;
            if (j >= 0) right += state[j + 1];
        }
        if (j < 0) break;
        int tail = 0;
        for (int k = j + 1; k < modes; ++k) {
            tail += state[k];
            state[k] = 0;
        }
        state[j] += 1;
        state[modes - 1] = tail - 1;
    }

    index_.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        index_.emplace(states_[i], i);
    }
    if (states_.size() != expected) {
        throw std::logic_error("SectorBasis: enumeration size mismatch");
    }
}

std::size_t SectorBasis::VecHash::operator()(const OccupationVector& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (int x : v) {
        h ^= static_cast<std::size_t>(x) + 0x9E3779B9ULL + (h << 6) + (h >> 2);
    }
    return h;
}

std::size_t SectorBasis::index_of(const OccupationVector& state) const {
    const auto it = index_.find(state);
    if (it == index_.end()) {
        throw std::invalid_argument("SectorBasis: state '" + occupation_to_string(state) +
                                    "' is not in the sector");
    }
    return it->second;
}

bool SectorBasis::contains(const OccupationVector& state) const {
    return index_.find(state) != index_.end();
}

SectorBasisPtr sector_basis(int modes, int quanta) {
    return std::make_shared<const SectorBasis>(modes, quanta);
}

double OutcomeDistribution::sum() const {
    double s = 0.0;
    for (double p : probs) s += p;
    return s;
}

namespace {

void check_same_basis(const OutcomeDistribution& p, const OutcomeDistribution& r) {
    if (!p.basis || !r.basis || !(*p.basis == *r.basis)) {
        throw std::invalid_argument("tv_distance: distributions live on different bases");
    }
    if (p.probs.size() != r.probs.size()) {
        throw std::invalid_argument("tv_distance: probability tables differ in size");
    }
}

}  // namespace

double tv_distance(const OutcomeDistribution& p, const OutcomeDistribution& r) {
    check_same_basis(p, r);
    double acc = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        acc += std::abs(p.probs[i] - r.probs[i]);
    }
    return 0.5 * acc;
}

double tv_distance(const OutcomeDistribution& p, const std::vector<long>& counts) {
    if (counts.size() != p.probs.size()) {
        throw std::invalid_argument("tv_distance: counts table size mismatch");
    }
    long total = 0;
    for (long c : counts) {
        if (c < 0) throw std::invalid_argument("tv_distance: negative count");
        total += c;
    }
    if (total == 0) throw std::invalid_argument("tv_distance: empty sample");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.probs.size(); ++i) {
        acc += std::abs(p.probs[i] - static_cast<double>(counts[i]) / static_cast<double>(total));
    }
    return 0.5 * acc;
}

}  // namespace qbs
