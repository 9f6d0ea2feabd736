#include "polaron/fock.hpp"

#include <algorithm>

namespace polaron {

namespace {

std::string occ_key(std::span<const std::uint8_t> occ) {
    return std::string(reinterpret_cast<const char*>(occ.data()), occ.size());
}

// compositions of `total` over slots [pos, n_modes), lexicographically
// ascending in the occupation tuple
void enumerate(std::vector<std::uint8_t>& occ, std::size_t pos, int total,
               std::vector<std::vector<std::uint8_t>>& out) {
    if (pos + 1 == occ.size()) {
        occ[pos] = static_cast<std::uint8_t>(total);
        out.push_back(occ);
        occ[pos] = 0;
        return;
    }
    for (int n = 0; n <= total; ++n) {
        occ[pos] = static_cast<std::uint8_t>(n);
        enumerate(occ, pos + 1, total - n, out);
    }
    occ[pos] = 0;
}

}  // namespace

std::uint64_t FockBasis::count_states(std::size_t n_modes, int n_max) {
    // sum over n of C(n_modes + n - 1, n), kept in exact integer arithmetic
    std::uint64_t total = 0;
    for (int n = 0; n <= n_max; ++n) {
        // C(n_modes + n - 1, n)
        std::uint64_t c = 1;
        for (int j = 1; j <= n; ++j) {
            c = c * (n_modes + n - j) / j;  // exact: consecutive binomial build
        }
        total += c;
    }
    return total;
}

FockBasis::FockBasis(ModeGrid grid, int n_max, std::size_t max_states)
    : grid_(std::move(grid)), n_max_(n_max) {
    require(n_max >= 0, ErrorCode::invalid_argument, "n_max must be >= 0");
    require(grid_.mode_count() > 0, ErrorCode::invalid_argument, "empty grid");
    require(n_max <= 255, ErrorCode::invalid_argument, "n_max exceeds occupation storage");

    std::uint64_t predicted = count_states(grid_.mode_count(), n_max);
    require(predicted <= max_states, ErrorCode::budget_exceeded,
            "basis of " + std::to_string(predicted) + " states exceeds budget of " +
                std::to_string(max_states));

    std::vector<std::uint8_t> occ(grid_.mode_count(), 0);
    states_.reserve(predicted);
    for (int total = 0; total <= n_max; ++total) {
        std::vector<std::vector<std::uint8_t>> sector;
        enumerate(occ, 0, total, sector);
        for (auto& s : sector) states_.push_back(std::move(s));
    }
    require(states_.size() == predicted, ErrorCode::internal, "basis enumeration mismatch");

    totals_.resize(states_.size());
    index_.reserve(states_.size() * 2);
    for (std::size_t i = 0; i < states_.size(); ++i) {
        int t = 0;
        for (auto n : states_[i]) t += n;
        totals_[i] = t;
        index_.emplace(occ_key(states_[i]), i);
    }
}

std::optional<std::size_t> FockBasis::index_of(std::span<const std::uint8_t> occ) const {
    auto it = index_.find(occ_key(occ));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

}  // namespace polaron
