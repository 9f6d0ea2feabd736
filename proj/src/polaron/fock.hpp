// fock.hpp — occupation-number basis of the symmetric Fock space over the
// grid modes, truncated at total photon number n_max

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "polaron/grid.hpp"
#include "polaron/types.hpp"

namespace polaron {

class FockBasis {
public:
    // enumerates every occupation vector with total <= n_max, graded
    // lexicographic: by total occupation, then by the occupation tuple
    FockBasis(ModeGrid grid, int n_max, std::size_t max_states = 2'000'000);

    std::size_t size() const { return states_.size(); }
    int n_max() const { return n_max_; }
    const ModeGrid& grid() const { return grid_; }
    std::size_t mode_count() const { return grid_.mode_count(); }

    const std::vector<std::uint8_t>& state(std::size_t i) const { return states_[i]; }
    int total_occupation(std::size_t i) const { return totals_[i]; }

    // ordinal of an occupation vector, or nullopt if it is not in the basis
    std::optional<std::size_t> index_of(std::span<const std::uint8_t> occ) const;

    // ordinal 0 is the vacuum
    bool is_vacuum(std::size_t i) const { return totals_[i] == 0; }

    static std::uint64_t count_states(std::size_t n_modes, int n_max);

private:
    ModeGrid grid_;
    int n_max_ = 0;
    std::vector<std::vector<std::uint8_t>> states_;
    std::vector<int> totals_;
    std::unordered_map<std::string, std::size_t> index_;
};

using FockBasisPtr = std::shared_ptr<const FockBasis>;

}  // namespace polaron
