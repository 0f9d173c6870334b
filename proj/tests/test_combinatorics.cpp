#include <catch2/catch_amalgamated.hpp>

#include "kmpspectra/combinatorics.hpp"
#include "kmpspectra/multiset_space.hpp"
#include "oracles.hpp"

using namespace kmpspectra;

TEST_CASE("partition enumeration") {
    auto p0 = partitions_of(0);
    REQUIRE(p0.size() == 1);
    REQUIRE(p0[0].parts.empty());

    auto p4 = partitions_of(4);
    REQUIRE(p4.size() == 5);
    CHECK(p4[0].parts == std::vector<int>{4});
    CHECK(p4[1].parts == std::vector<int>{3, 1});
    CHECK(p4[2].parts == std::vector<int>{2, 2});
    CHECK(p4[3].parts == std::vector<int>{2, 1, 1});
    CHECK(p4[4].parts == std::vector<int>{1, 1, 1, 1});

    auto p7 = partitions_of(7);
    REQUIRE(p7.size() == 15);
    // Cross-check content (not only count) against the independent recursion.
    auto reference = oracles::partition_set(7);
    std::set<std::vector<int>> got;
    for (const auto& p : p7) got.insert(p.parts);
    CHECK(got == reference);

    CHECK_THROWS_AS(partitions_of(-1), std::invalid_argument);
}

TEST_CASE("partitions are reverse-lexicographic and duplicate-free") {
    for (int k = 1; k <= 9; ++k) {
        auto ps = partitions_of(k);
        CHECK(ps.size() == oracles::partition_set(k).size());
        for (size_t i = 1; i < ps.size(); ++i) CHECK(ps[i].parts < ps[i - 1].parts);
        CHECK(ps.front().parts == std::vector<int>{k});
        CHECK(ps.back().parts == std::vector<int>(k, 1));
    }
}

TEST_CASE("symmetric group irrep dimensions (hook lengths)") {
    for (int k = 1; k <= 8; ++k) {
        CHECK(sym_irrep_dim(Partition({k})) == 1);
        if (k >= 2) CHECK(sym_irrep_dim(Partition({k - 1, 1})) == k - 1);
    }
    // Independent count of standard tableaux.
    CHECK(sym_irrep_dim(Partition({2, 2})) == oracles::count_standard_tableaux({2, 2}));
    CHECK(sym_irrep_dim(Partition({2, 2})) == 2);
    for (int k = 2; k <= 7; ++k)
        for (const auto& nu : partitions_of(k))
            CHECK(sym_irrep_dim(nu) == oracles::count_standard_tableaux(nu.parts));
}

TEST_CASE("sum of squared dimensions is k!") {
    for (int k = 1; k <= 8; ++k) {
        long long total = 0;
        for (const auto& nu : partitions_of(k)) {
            long long d = sym_irrep_dim(nu);
            total += d * d;
        }
        CHECK(to_integer(total) == factorial_mpz(k));
    }
}

TEST_CASE("polynomial unitary irrep dimensions (hook contents)") {
    for (int k = 1; k <= 5; ++k)
        for (long d = 1; d <= 6; ++d)
            CHECK(unitary_irrep_dim_polynomial_case(Partition({k}), d) ==
                  to_integer(multiset_count(d, k)));
    CHECK(unitary_irrep_dim_polynomial_case(Partition({1, 1, 1}), 2) == 0);
    CHECK(unitary_irrep_dim_polynomial_case(Partition({2, 1}), 3) == 8);
    // Independent semistandard tableau counts.
    for (int k = 1; k <= 5; ++k)
        for (const auto& nu : partitions_of(k))
            for (int d = 1; d <= 5; ++d)
                CHECK(unitary_irrep_dim_polynomial_case(nu, d) ==
                      to_integer(oracles::count_semistandard_tableaux(nu.parts, d)));
    // Positive exactly when the shape fits in d rows.
    for (int k = 1; k <= 6; ++k)
        for (const auto& nu : partitions_of(k))
            for (long d = 1; d <= 6; ++d)
                CHECK((unitary_irrep_dim_polynomial_case(nu, d) > 0) == (nu.length() <= d));
}

TEST_CASE("characters: trivial, sign, and an explicit matrix trace") {
    for (int k = 1; k <= 6; ++k) {
        for (const auto& cls : partitions_of(k)) {
            CycleType c(cls);
            CHECK(sym_character(Partition({k}), c) == 1);
            CHECK(sym_character(Partition(std::vector<int>(k, 1)), c) == c.sign());
        }
    }
    // The 2-dimensional irrep of Sym(3) traced at a 3-cycle. Realized on the
    // zero-sum subspace of C^3: the 3-cycle acts with eigenvalues the two
    // primitive cube roots of unity, so the trace is -1.
    CHECK(sym_character(Partition({2, 1}), CycleType(Partition({3}))) == -1);
    CHECK(sym_character(Partition({2, 1}), CycleType(Partition({2, 1}))) == 0);
    CHECK(sym_character(Partition({2, 1}), CycleType(Partition({1, 1, 1}))) == 2);
}

TEST_CASE("character size mismatch is rejected") {
    CHECK_THROWS_AS(sym_character(Partition({2, 1}), CycleType(Partition({4}))),
                    std::invalid_argument);
}

TEST_CASE("character orthogonality") {
    for (int k = 1; k <= 6; ++k) {
        auto parts = partitions_of(k);
        Integer kfact = factorial_mpz(k);
        for (size_t a = 0; a < parts.size(); ++a) {
            for (size_t b = a; b < parts.size(); ++b) {
                Integer total(0);
                for (const auto& cls : parts) {
                    CycleType c(cls);
                    total += c.class_size() * to_integer(sym_character(parts[a], c)) *
                             to_integer(sym_character(parts[b], c));
                }
                CHECK(total == (a == b ? kfact : Integer(0)));
            }
        }
    }
}

TEST_CASE("class sizes sum to the group order") {
    for (int k = 1; k <= 8; ++k) {
        Integer total(0);
        for (const auto& cls : partitions_of(k)) total += CycleType(cls).class_size();
        CHECK(total == factorial_mpz(k));
    }
}

TEST_CASE("multiset space: small enumerations") {
    MultisetSpace s32(3, 2);
    REQUIRE(s32.dimension() == 6);
    // colex order on sorted pairs
    CHECK(s32.unrank(0) == std::vector<int>{1, 1});
    CHECK(s32.unrank(1) == std::vector<int>{1, 2});
    CHECK(s32.unrank(2) == std::vector<int>{2, 2});
    CHECK(s32.unrank(3) == std::vector<int>{1, 3});
    CHECK(s32.unrank(4) == std::vector<int>{2, 3});
    CHECK(s32.unrank(5) == std::vector<int>{3, 3});

    MultisetSpace s31(3, 1);
    CHECK(s31.unrank(s31.rank({2})) == std::vector<int>{2});
}

TEST_CASE("multiset space: rank/unrank bijective") {
    MultisetSpace s(5, 3);
    REQUIRE(s.dimension() == 35);
    std::set<long long> seen;
    for (long long i = 0; i < s.dimension(); ++i) {
        auto m = s.unrank(i);
        CHECK(s.rank(m) == i);
        seen.insert(i);
    }
    CHECK(seen.size() == 35);

    for (int n = 1; n <= 8; ++n) {
        for (int k = 0; k <= 5; ++k) {
            MultisetSpace sp(n, k);
            for (long long i = 0; i < sp.dimension(); ++i) CHECK(sp.rank(sp.unrank(i)) == i);
        }
    }
}

TEST_CASE("multiset space rejects malformed input") {
    MultisetSpace s(4, 2);
    CHECK_THROWS_AS(s.rank({2, 1}), std::invalid_argument);   // unsorted
    CHECK_THROWS_AS(s.rank({1, 5}), std::invalid_argument);   // out of range
    CHECK_THROWS_AS(s.rank({1}), std::invalid_argument);      // wrong length
    CHECK_THROWS_AS(s.unrank(10), std::invalid_argument);
}

TEST_CASE("colex order is prefix-stable under appending the top vertex") {
    // Appending vertex n to a sorted state preserves relative order and the
    // rank offset is constant, which is what the particle embedding relies on.
    MultisetSpace s(4, 2), t(4, 3);
    long long offset = -1;
    for (long long i = 0; i < s.dimension(); ++i) {
        auto m = s.unrank(i);
        m.push_back(4);
        long long r = t.rank(m);
        if (offset < 0) offset = r - i;
        CHECK(r - i == offset);
    }
}

TEST_CASE("arrangement counts") {
    CHECK(MultisetSpace::arrangement_count({1, 1}) == 1);
    CHECK(MultisetSpace::arrangement_count({1, 2}) == 2);
    CHECK(MultisetSpace::arrangement_count({1, 2, 3}) == 6);
    CHECK(MultisetSpace::arrangement_count({1, 1, 2}) == 3);
    CHECK(MultisetSpace::arrangement_count({2, 2, 2}) == 1);
}
