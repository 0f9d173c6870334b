#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "kmpspectra/kmp.hpp"
#include "kmpspectra/meanfield.hpp"
#include "kmpspectra/symgroup.hpp"
#include "oracles.hpp"

using namespace kmpspectra;

TEST_CASE("closed form specializations") {
    for (int n = 3; n <= 6; ++n) {
        std::vector<Rational> c(n + 1, Rational(0));
        c[n - 1] = Rational(1);
        CHECK(mean_field_formula(n, c) == make_rational((n + 1) * (n - 2), n));
        std::vector<Rational> cn(n + 1, Rational(0));
        cn[n] = Rational(1);
        CHECK(mean_field_formula(n, cn) == Rational(1));
    }
    // sizes 0 and 1 contribute nothing
    std::vector<Rational> low = {Rational(5), make_rational(7, 3), Rational(0), Rational(0)};
    CHECK(mean_field_formula(3, low) == Rational(0));
}

TEST_CASE("uniform-size hypergraph generator") {
    auto full = gamma_ell<Rational>(4, 4);
    REQUIRE(full.weights.size() == 1);
    CHECK(full.weights.begin()->first == 0b1111u);

    auto triangle = gamma_ell<Rational>(3, 2);
    CHECK(triangle.weights.size() == 3);

    auto empty = gamma_ell<Rational>(3, 0);
    CHECK(kmp_laplacian(empty, 2).mat == Matrix<Rational>(6, 6));
}

TEST_CASE("distinguished vector is orthogonal to the embedded space") {
    for (int n = 2; n <= 6; ++n) {
        auto v0 = v0_vector<Rational>(n);
        auto embed = psi<Rational>(n, 1);
        for (size_t col = 0; col < embed.cols(); ++col) {
            Rational dot(0);
            for (size_t row = 0; row < embed.rows(); ++row) dot += embed(row, col) * v0[row];
            CHECK(sgn(dot) == 0);
        }
    }
}

TEST_CASE("distinguished vector is a common eigenvector with the stated eigenvalues") {
    for (int n = 3; n <= 5; ++n) {
        auto v0 = v0_vector<Rational>(n);
        for (int l = 0; l <= n; ++l) {
            auto L = kmp_laplacian(gamma_ell<Rational>(n, l), 2);
            auto image = L.mat.apply(v0);
            Rational lambda(Integer(n + 1) * binomial_mpz(n - 2, l - 2), Integer(l + 1));
            lambda.canonicalize();
            for (size_t i = 0; i < v0.size(); ++i) CHECK(image[i] == lambda * v0[i]);
        }
    }
    // the explicit 6x6 case: n=3, l=2 has eigenvalue 4/3
    auto v0 = v0_vector<Rational>(3);
    auto L = kmp_laplacian(gamma_ell<Rational>(3, 2), 2);
    auto image = L.mat.apply(v0);
    for (size_t i = 0; i < v0.size(); ++i) CHECK(image[i] == make_rational(4, 3) * v0[i]);
}

TEST_CASE("end-to-end verification on random coefficient vectors") {
    std::mt19937_64 rng(6061);
    std::uniform_int_distribution<int> wdist(0, 10);
    for (int n = 3; n <= 4; ++n) {
        for (int trial = 0; trial < 3; ++trial) {
            std::vector<Rational> c(n + 1);
            for (auto& x : c) x = make_rational(wdist(rng), 7);
            if (sgn(c[2]) == 0) c[2] = make_rational(1, 7);  // keep it connected
            auto rep = verify_mean_field(n, c, 4);
            CHECK(rep.min_matches_formula);
            CHECK(std::find(rep.argmin_blocks.begin(), rep.argmin_blocks.end(), 2) !=
                  rep.argmin_blocks.end());
            CHECK(rep.v0_is_eigenvector);
            CHECK(sgn(rep.v0_residual) == 0);
        }
    }
}

TEST_CASE("connected mean-field instances have a positive gap") {
    std::mt19937_64 rng(70);
    std::uniform_int_distribution<int> wdist(0, 10);
    for (int trial = 0; trial < 6; ++trial) {
        int n = 3 + trial % 3;
        std::vector<Rational> c(n + 1, Rational(0));
        int l = 2 + trial % (n - 1);
        c[l] = make_rational(1 + wdist(rng), 7);
        auto g = mean_field(n, c);
        REQUIRE(is_connected(g));
        CHECK(lambda_min_star_kmp_float(g, 2) > 1e-12);
        CHECK(mean_field_formula(n, c) > 0);
    }
}

TEST_CASE("the walk eigenvalue appears inside the single-particle spectrum") {
    std::mt19937_64 rng(71);
    std::uniform_int_distribution<int> wdist(0, 10);
    for (int n = 3; n <= 6; ++n) {
        std::vector<Rational> c(n + 1);
        for (auto& x : c) x = make_rational(wdist(rng), 7);
        auto g = mean_field(n, c);
        Rational v = sn_mean_field_eigenvalue(n, c);
        Poly cp = charpoly::of_matrix(kmp_laplacian(g, 1).mat);
        CHECK(sgn(poly::eval(cp, v)) == 0);
    }
}
