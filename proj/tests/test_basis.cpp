#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ajj/basis.hpp"
#include "ajj/errors.hpp"

#include <random>
#include <set>
#include <vector>

using namespace ajj;

namespace {

// independent combinatorial oracle: count compositions recursively
std::uint64_t count_compositions(int sites, int particles) {
    if (sites == 1) return 1;
    std::uint64_t total = 0;
    for (int n = 0; n <= particles; ++n)
        total += count_compositions(sites - 1, particles - n);
    return total;
}

} // namespace

TEST_CASE("sector enumeration matches the stars-and-bars count") {
    CHECK(FockBasis::sector(2, 2)->size() == 3);
    CHECK(FockBasis::sector(1, 5)->size() == 1);
    CHECK(FockBasis::sector(6, 6)->size() == 462); // binomial(11,5)

    for (int L = 1; L <= 8; ++L)
        for (int N = 0; N <= 8; ++N) {
            CAPTURE(L);
            CAPTURE(N);
            CHECK(sector_dimension(L, N) == count_compositions(L, N));
            CHECK(FockBasis::sector(L, N)->size() == count_compositions(L, N));
        }
}

TEST_CASE("sector order is descending lexicographic") {
    auto b = FockBasis::sector(2, 2);
    REQUIRE(b->size() == 3);
    CHECK(std::vector<int>(b->state(0).begin(), b->state(0).end()) ==
          std::vector<int>{2, 0});
    CHECK(std::vector<int>(b->state(1).begin(), b->state(1).end()) ==
          std::vector<int>{1, 1});
    CHECK(std::vector<int>(b->state(2).begin(), b->state(2).end()) ==
          std::vector<int>{0, 2});

    auto big = FockBasis::sector(5, 4);
    for (std::size_t k = 1; k < big->size(); ++k) {
        const auto prev = big->state(k - 1);
        const auto cur = big->state(k);
        CHECK(std::lexicographical_compare(cur.begin(), cur.end(), prev.begin(),
                                           prev.end()));
    }
}

TEST_CASE("enumeration is deterministic and exhaustive") {
    auto a = FockBasis::sector(5, 5);
    auto b = FockBasis::sector(5, 5);
    REQUIRE(a->size() == b->size());
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < a->size(); ++k) {
        CHECK(std::equal(a->state(k).begin(), a->state(k).end(),
                         b->state(k).begin()));
        seen.insert(std::vector<int>(a->state(k).begin(), a->state(k).end()));
    }
    CHECK(seen.size() == a->size()); // pairwise distinct
}

TEST_CASE("truncated enumeration covers (cap+1)^L states") {
    CHECK(FockBasis::truncated(2, 1)->size() == 4);
    CHECK(FockBasis::truncated(3, 2)->size() == 27);
    CHECK(FockBasis::truncated(2, 3)->size() == 16);

    auto b = FockBasis::truncated(3, 2);
    std::set<std::vector<int>> seen;
    for (std::size_t k = 0; k < b->size(); ++k) {
        const auto s = b->state(k);
        for (int x : s) CHECK((x >= 0 && x <= 2));
        seen.insert(std::vector<int>(s.begin(), s.end()));
    }
    CHECK(seen.size() == 27);
}

TEST_CASE("state_index inverts the enumeration") {
    auto sector = FockBasis::sector(2, 2);
    CHECK(sector->index(std::vector<int>{2, 0}) == 0);
    CHECK(sector->index(std::vector<int>{0, 2}) == 2);

    // exhaustive round-trip on small bases
    for (auto basis : {FockBasis::sector(6, 6), FockBasis::truncated(4, 3)}) {
        for (std::size_t k = 0; k < basis->size(); ++k)
            CHECK(basis->index(basis->state(k)) == k);
    }

    // sampled round-trip on a larger one
    auto big = FockBasis::sector(9, 9); // dim 24310
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> pick(0, big->size() - 1);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t k = pick(rng);
        CHECK(big->index(big->state(k)) == k);
    }
}

TEST_CASE("lookups outside the space fail cleanly") {
    auto sector = FockBasis::sector(3, 2);
    CHECK(!sector->find(std::vector<int>{2, 2, 2}).has_value());
    CHECK(!sector->find(std::vector<int>{1, 1}).has_value());
    CHECK_THROWS_AS((void)sector->index(std::vector<int>{2, 1, 0}),
                    config_error); // wrong particle count
    auto trunc = FockBasis::truncated(2, 2);
    CHECK(!trunc->find(std::vector<int>{3, 0}).has_value());
}

TEST_CASE("capacity limit rejects oversized bases before allocation") {
    CHECK_THROWS_AS((void)FockBasis::sector(20, 20), capacity_error);
    CHECK_THROWS_AS((void)FockBasis::truncated(12, 9), capacity_error);
    // explicit limit
    CHECK_THROWS_AS((void)FockBasis::sector(6, 6, 100), capacity_error);
    CHECK_NOTHROW((void)FockBasis::sector(6, 6, 462));
}

TEST_CASE("argument validation") {
    CHECK_THROWS_AS((void)sector_dimension(0, 3), config_error);
    CHECK_THROWS_AS((void)FockBasis::truncated(2, 0), config_error);
}
