#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kmpspectra/kmp.hpp"
#include "kmpspectra/meanfield.hpp"
#include "kmpspectra/symgroup.hpp"
#include "kmpspectra/weingarten.hpp"
#include "oracles.hpp"

using namespace kmpspectra;

namespace {

Hypergraph<Rational> path3() {
    Hypergraph<Rational> g(3);
    g.add_weight(0b011, Rational(1));
    g.add_weight(0b110, Rational(1));
    return g;
}

} // namespace

TEST_CASE("tuple space enumeration") {
    TupleSpace s(4, 2);
    CHECK(s.dimension() == 12);
    for (long long i = 0; i < s.dimension(); ++i) CHECK(s.rank(s.state(i)) == i);
    TupleSpace s0(3, 0);
    CHECK(s0.dimension() == 1);
    CHECK_THROWS_AS(TupleSpace(3, 4), std::invalid_argument);
}

TEST_CASE("tuple projection: small edges act as identity") {
    auto p = p_b_zk<Rational>(3, 2, 0b001);
    CHECK(p.mat == Matrix<Rational>::identity(6));
}

TEST_CASE("tuple projection at one particle is the walk block") {
    auto p = p_b_zk<Rational>(3, 1, 0b011);
    // states 1,2 mix with weight 1/2; state 3 fixed
    CHECK(p.mat(0, 0) == make_rational(1, 2));
    CHECK(p.mat(0, 1) == make_rational(1, 2));
    CHECK(p.mat(1, 0) == make_rational(1, 2));
    CHECK(p.mat(1, 1) == make_rational(1, 2));
    CHECK(p.mat(2, 2) == Rational(1));
    CHECK(p.mat(0, 2) == Rational(0));
}

TEST_CASE("tuple projection coefficient law and cross-check of both fills") {
    for (int n = 3; n <= 4; ++n) {
        for (int k = 1; k <= 3 && k <= n; ++k) {
            for (uint32_t mask = 0; mask < (1u << n); ++mask) {
                if (popcount32(mask) > 4) continue;
                auto by_perms = p_b_zk<Rational>(n, k, mask);
                auto by_law = p_b_zk_combinatorial<Rational>(n, k, mask);
                CHECK(by_perms.mat == by_law.mat);
            }
        }
    }
    // the law itself on one explicit entry: B={1,2,3}, tuple (1,2) -> (2,3)
    // shares r=2 in-edge slots, so the coefficient is (3-2)!/3! = 1/6
    auto p = p_b_zk<Rational>(4, 2, 0b0111);
    TupleSpace s(4, 2);
    CHECK(p.mat(static_cast<size_t>(s.rank({2, 3})), static_cast<size_t>(s.rank({1, 2}))) ==
          make_rational(1, 6));
}

TEST_CASE("tuple projections are symmetric idempotent") {
    for (uint32_t mask : {0b011u, 0b111u, 0b1011u}) {
        auto p = p_b_zk<Rational>(4, 2, mask);
        CHECK(p.mat.is_symmetric_exact());
        CHECK(p.mat * p.mat == p.mat);
    }
}

TEST_CASE("tuple projection commutes with relabelings preserving the edge") {
    // n=4, B={1,2}; the relabeling (1 2)(3 4) fixes B setwise
    TupleSpace s(4, 2);
    size_t dim = static_cast<size_t>(s.dimension());
    Matrix<Rational> perm(dim, dim);
    auto relabel = [](int v) { return v == 1 ? 2 : v == 2 ? 1 : v == 3 ? 4 : 3; };
    for (size_t i = 0; i < dim; ++i) {
        auto t = s.state(static_cast<long long>(i));
        for (int& v : t) v = relabel(v);
        perm(static_cast<size_t>(s.rank(t)), i) = Rational(1);
    }
    auto p = p_b_zk<Rational>(4, 2, 0b0011);
    CHECK(perm * p.mat == p.mat * perm);
}

TEST_CASE("tuple Laplacian at one particle equals the particle Laplacian") {
    for (uint64_t seed : {7ULL, 8ULL}) {
        auto g = random_hypergraph<Rational>(4, 0.7, WeightLaw::Uniform01, seed);
        CHECK(laplacian_zk(g, 1).mat == kmp_laplacian(g, 1).mat);
    }
}

TEST_CASE("tuple Laplacian of the zero hypergraph is zero") {
    Hypergraph<Rational> zero(3);
    CHECK(laplacian_zk(zero, 2).mat == Matrix<Rational>(6, 6));
}

TEST_CASE("tuple spectrum is real, bounded, and embeds into the tensor spectrum") {
    auto g = path3();
    auto Lz = laplacian_zk(g, 2);
    auto eigs = symmetric_eigenvalues(to_double_matrix(Lz.mat));
    CHECK(eigs.front() >= -1e-10);
    CHECK(eigs.back() <= to_double(g.total_weight()) + 1e-10);

    Poly small = charpoly::of_matrix(Lz.mat);
    auto Lr = laplacian_rkm(g, 2, 2);
    TensorBasis basis(3, 2, 2);
    Poly big = charpoly::by_invariant_blocks(Lr.mat, tensor_weight_labels(basis));
    CHECK(spectra_contains_exact(small, big));
}

TEST_CASE("mean-field closed form for the single-particle walk") {
    std::vector<Rational> c = {Rational(0), Rational(0), Rational(1), Rational(0), Rational(0)};
    CHECK(sn_mean_field_eigenvalue(4, c) == Rational(2));

    std::vector<Rational> trivial = {Rational(3), make_rational(1, 2), Rational(0), Rational(0)};
    CHECK(sn_mean_field_eigenvalue(3, trivial) == Rational(0));
}

TEST_CASE("mean-field walk spectrum is the closed form with multiplicity") {
    std::mt19937_64 rng(55);
    std::uniform_int_distribution<int> wdist(0, 10);
    for (int n = 3; n <= 6; ++n) {
        std::vector<Rational> c(n + 1);
        for (auto& x : c) x = make_rational(wdist(rng), 7);
        auto g = mean_field(n, c);
        Rational v = sn_mean_field_eigenvalue(n, c);
        Poly cp = charpoly::of_matrix(kmp_laplacian(g, 1).mat);
        Poly expect = poly::linear_root(Rational(0));
        for (int i = 0; i < n - 1; ++i) expect = poly::mul(expect, poly::linear_root(v));
        CHECK(cp == expect);
        // and it dominates the all-particle-counts closed form
        CHECK(v >= mean_field_formula(n, c));
    }
}

TEST_CASE("float containment matching") {
    std::vector<double> small = {0.0, 0.5, 1.5};
    std::vector<double> big = {0.0, 0.5, 0.5, 1.0, 1.5, 2.0};
    auto rep = spectra_contains_float(small, big, 1e-9);
    CHECK(rep.contained);
    CHECK(rep.matches.size() == 3);

    auto rep2 = spectra_contains_float({1.0}, {0.0, 2.0}, 1e-7);
    CHECK_FALSE(rep2.contained);
    REQUIRE(rep2.unmatched.size() == 1);
    CHECK(rep2.unmatched[0] == 1.0);

    // identical spectra trivially contained
    auto rep3 = spectra_contains_float(big, big, 1e-12);
    CHECK(rep3.contained);
}

TEST_CASE("walk spectrum of the path sits inside the tensor spectrum") {
    auto g = path3();
    Poly walk = charpoly::of_matrix(kmp_laplacian(g, 1).mat);
    auto Lr = laplacian_rkm(g, 1, 1);
    TensorBasis basis(3, 1, 1);
    Poly big = charpoly::by_invariant_blocks(Lr.mat, tensor_weight_labels(basis));
    CHECK(spectra_contains_exact(walk, big));
    // float view of the same statement
    auto fsmall = symmetric_eigenvalues(to_double_matrix(kmp_laplacian(g, 1).mat));
    auto fbig = symmetric_eigenvalues(to_double_matrix(Lr.mat));
    CHECK(spectra_contains_float(fsmall, fbig, 1e-7).contained);
}

TEST_CASE("containment persists at three tuples on four vertices", "[slow]") {
    Hypergraph<Rational> g(4);
    g.add_weight(0b0111, Rational(1));  // triple {1,2,3}
    g.add_weight(0b1001, Rational(2));  // pair {1,4}
    Poly small = charpoly::of_matrix(laplacian_zk(g, 3).mat);
    auto big_op = laplacian_rkm(g, 3, 3);
    TensorBasis basis(4, 3, 3);
    Poly big = charpoly::by_invariant_blocks(big_op.mat, tensor_weight_labels(basis));
    CHECK(spectra_contains_exact(small, big));
}
