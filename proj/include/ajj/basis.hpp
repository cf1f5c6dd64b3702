#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace ajj {

/// Number of occupation states of `sites` sites holding exactly `particles`
/// bosons: binomial(particles + sites - 1, sites - 1). Throws capacity_error
/// on 64-bit overflow.
std::uint64_t sector_dimension(int sites, int particles);

/// (cap + 1)^sites with overflow check.
std::uint64_t truncated_dimension(int sites, int max_per_site);

/// An enumerated bosonic occupation-number basis.
///
/// Two kinds are supported: the fixed-particle-number sector (no per-site
/// cap) used for Hamiltonians, and the occupancy-truncated full Fock space
/// used for single-site ladder operators. States are ordered in descending
/// lexicographic order of the occupation vectors, so enumeration is
/// deterministic and reproducible. Immutable after construction and safe to
/// share across threads.
class FockBasis {
public:
    enum class Kind { Sector, Truncated };

    static constexpr std::uint64_t default_max_states = 5'000'000;

    static std::shared_ptr<const FockBasis>
    sector(int sites, int particles, std::uint64_t max_states = default_max_states);

    static std::shared_ptr<const FockBasis>
    truncated(int sites, int max_per_site, std::uint64_t max_states = default_max_states);

    Kind kind() const { return kind_; }
    int sites() const { return sites_; }
    /// Total particle count (sector bases only).
    int particles() const { return particles_; }
    /// Per-site occupation cap (truncated bases only).
    int max_per_site() const { return max_per_site_; }
    std::size_t size() const { return size_; }

    /// Occupation vector of basis state k.
    std::span<const int> state(std::size_t k) const {
        return {occ_.data() + k * static_cast<std::size_t>(sites_),
                static_cast<std::size_t>(sites_)};
    }

    /// Ordinal of an occupation vector; throws config_error if the vector is
    /// not a member of the declared space.
    std::size_t index(std::span<const int> occ) const;

    /// Non-throwing lookup; nullopt when the vector lies outside the space.
    /// Used by operator builders where a hop may leave a truncated space.
    std::optional<std::size_t> find(std::span<const int> occ) const;

    /// True when every site of state k is strictly below the cap. Only
    /// meaningful for truncated bases; this is the subspace on which ladder
    /// algebra is unaffected by the cap.
    bool interior(std::size_t k) const;

private:
    FockBasis() = default;

    Kind kind_ = Kind::Sector;
    int sites_ = 0;
    int particles_ = 0;
    int max_per_site_ = 0;
    std::size_t size_ = 0;
    std::vector<int> occ_; // flat, row k at [k*sites, (k+1)*sites)
};

} // namespace ajj
