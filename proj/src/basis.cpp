#include "ajj/basis.hpp"

#include "ajj/errors.hpp"

#include <algorithm>
#include <string>

namespace ajj {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b, const char* what) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r))
        throw capacity_error(std::string(what) + ": dimension overflows 64 bits");
    return r;
}

} // namespace

std::uint64_t sector_dimension(int sites, int particles) {
    if (sites < 1 || particles < 0)
        throw config_error("sector_dimension: need sites >= 1 and particles >= 0");
    // binomial(particles + sites - 1, sites - 1), multiplicative form
    std::uint64_t n = static_cast<std::uint64_t>(particles) + sites - 1;
    std::uint64_t k = sites - 1;
    if (k > n - k) k = n - k;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = checked_mul(r, n - k + i, "sector_dimension");
        r /= i; // exact: r holds binomial(n-k+i, i) after division
    }
    return r;
}

std::uint64_t truncated_dimension(int sites, int max_per_site) {
    if (sites < 1 || max_per_site < 1)
        throw config_error("truncated_dimension: need sites >= 1 and max_per_site >= 1");
    std::uint64_t r = 1;
    for (int i = 0; i < sites; ++i)
        r = checked_mul(r, static_cast<std::uint64_t>(max_per_site) + 1,
                        "truncated_dimension");
    return r;
}

std::shared_ptr<const FockBasis>
FockBasis::sector(int sites, int particles, std::uint64_t max_states) {
    const std::uint64_t dim = sector_dimension(sites, particles);
    if (dim > max_states)
        throw capacity_error("sector basis with " + std::to_string(dim) +
                             " states exceeds the limit of " + std::to_string(max_states));

    auto basis = std::shared_ptr<FockBasis>(new FockBasis());
    basis->kind_ = Kind::Sector;
    basis->sites_ = sites;
    basis->particles_ = particles;
    basis->max_per_site_ = particles; // the sector constraint is the only cap
    basis->size_ = static_cast<std::size_t>(dim);
    basis->occ_.reserve(basis->size_ * sites);

    // Descending lexicographic enumeration of compositions of `particles`
    // into `sites` parts, starting from (N, 0, ..., 0).
    std::vector<int> v(sites, 0);
    v[0] = particles;
    while (true) {
        basis->occ_.insert(basis->occ_.end(), v.begin(), v.end());
        int j = sites - 2;
        while (j >= 0 && v[j] == 0) --j;
        if (j < 0) break; // all weight on the last site: final state
        --v[j];
        int rest = 1;
        for (int i = j + 1; i < sites; ++i) { rest += v[i]; v[i] = 0; }
        v[j + 1] = rest;
    }
    return basis;
}

std::shared_ptr<const FockBasis>
FockBasis::truncated(int sites, int max_per_site, std::uint64_t max_states) {
    const std::uint64_t dim = truncated_dimension(sites, max_per_site);
    if (dim > max_states)
        throw capacity_error("truncated basis with " + std::to_string(dim) +
                             " states exceeds the limit of " + std::to_string(max_states));

    auto basis = std::shared_ptr<FockBasis>(new FockBasis());
    basis->kind_ = Kind::Truncated;
    basis->sites_ = sites;
    basis->particles_ = -1;
    basis->max_per_site_ = max_per_site;
    basis->size_ = static_cast<std::size_t>(dim);
    basis->occ_.reserve(basis->size_ * sites);

    // Mixed-radix odometer from (cap, ..., cap) down to (0, ..., 0).
    std::vector<int> v(sites, max_per_site);
    while (true) {
        basis->occ_.insert(basis->occ_.end(), v.begin(), v.end());
        int j = sites - 1;
        while (j >= 0 && v[j] == 0) --j;
        if (j < 0) break;
        --v[j];
        for (int i = j + 1; i < sites; ++i) v[i] = max_per_site;
    }
    return basis;
}

std::optional<std::size_t> FockBasis::find(std::span<const int> occ) const {
    if (occ.size() != static_cast<std::size_t>(sites_)) return std::nullopt;
    for (int x : occ)
        if (x < 0) return std::nullopt;

    if (kind_ == Kind::Truncated) {
        // Positional arithmetic: state (n_0..n_{L-1}) sits at
        // sum_i (cap - n_i) * (cap+1)^(L-1-i).
        std::size_t k = 0;
        for (int i = 0; i < sites_; ++i) {
            if (occ[i] > max_per_site_) return std::nullopt;
            k = k * (max_per_site_ + 1) + (max_per_site_ - occ[i]);
        }
        return k;
    }

    long sum = 0;
    for (int x : occ) sum += x;
    if (sum != particles_) return std::nullopt;

    // Binary search in the descending-lexicographic ordering.
    const auto greater_lex = [this](std::size_t row, std::span<const int> key) {
        const int* a = occ_.data() + row * sites_;
        for (int i = 0; i < sites_; ++i) {
            if (a[i] != key[i]) return a[i] > key[i];
        }
        return false;
    };
    std::size_t lo = 0, hi = size_;
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (greater_lex(mid, occ)) lo = mid + 1;
        else hi = mid;
    }
    if (lo == size_) return std::nullopt;
    const int* a = occ_.data() + lo * sites_;
    for (int i = 0; i < sites_; ++i)
        if (a[i] != occ[i]) return std::nullopt;
    return lo;
}

std::size_t FockBasis::index(std::span<const int> occ) const {
    if (auto k = find(occ)) return *k;
    std::string s = "occupation vector (";
    for (std::size_t i = 0; i < occ.size(); ++i)
        s += (i ? "," : "") + std::to_string(occ[i]);
    s += ") is not a member of this basis";
    throw config_error(s);
}

bool FockBasis::interior(std::size_t k) const {
    for (int x : state(k))
        if (x >= max_per_site_) return false;
    return true;
}

} // namespace ajj
