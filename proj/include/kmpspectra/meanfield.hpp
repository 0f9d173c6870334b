#pragma once

#include <vector>

#include "kmpspectra/hypergraph.hpp"
#include "kmpspectra/kmp.hpp"
#include "kmpspectra/multiset_space.hpp"

namespace kmpspectra {

/// Closed form for the smallest non-trivial eigenvalue of a mean-field
/// hypergraph across all particle counts:
///   sum over sizes of c_l * (n+1)/(l+1) * binom(n-2, l-2).
inline Rational mean_field_formula(int n, const std::vector<Rational>& c) {
    if (static_cast<int>(c.size()) != n + 1)
        throw std::invalid_argument("mean_field_formula: need c_0..c_n");
    Rational total(0);
    for (int l = 2; l <= n; ++l) {
        if (sgn(c[l]) < 0) throw std::invalid_argument("mean_field_formula: negative c");
        total += c[l] * Rational(Integer(n + 1) * binomial_mpz(n - 2, l - 2), Integer(l + 1));
    }
    total.canonicalize();
    return total;
}

/// Uniform weight 1 on every subset of size l.
template <typename S>
Hypergraph<S> gamma_ell(int n, int l) {
    if (l < 0 || l > n) throw std::invalid_argument("gamma_ell: need 0 <= l <= n");
    std::vector<S> c(n + 1, scalar_traits<S>::zero());
    c[l] = scalar_traits<S>::one();
    return mean_field(n, c);
}

/// The distinguished 2-particle vector: coefficient 1 on every two-distinct
/// configuration and -(n-1)/2 on every doubled one. It lies in the complement
/// block and is a common eigenvector of every uniform-size-l Laplacian, with
/// eigenvalue (n+1)/(l+1) binom(n-2,l-2).
template <typename S>
std::vector<S> v0_vector(int n) {
    if (n < 2) throw std::invalid_argument("v0_vector: n >= 2 required");
    MultisetSpace space(n, 2);
    std::vector<S> v(static_cast<size_t>(space.dimension()));
    for (long long i = 0; i < space.dimension(); ++i) {
        std::vector<int> st = space.unrank(i);
        if (st[0] == st[1])
            v[static_cast<size_t>(i)] = scalar_traits<S>::from_fraction(-(n - 1), 2);
        else
            v[static_cast<size_t>(i)] = scalar_traits<S>::one();
    }
    return v;
}

struct MeanFieldReport {
    int n = 0;
    std::vector<Rational> c;
    Rational formula_value;
    bool min_matches_formula = false;  // min over k of the block minima equals the formula
    std::vector<int> argmin_blocks;    // particle counts attaining the minimum
    bool v0_is_eigenvector = false;
    Rational v0_residual;  // max |L v0 - lambda v0| over mean-field components (exact: 0)
};

/// Exact end-to-end check of the mean-field law on one coefficient vector:
/// verifies via Sturm counts that no block at particle count <= k_max dips
/// below the closed-form value, that the value is attained, and that the
/// 2-particle block attains it. Also applies each uniform-size-l Laplacian
/// to the distinguished vector and compares exactly.
inline MeanFieldReport verify_mean_field(int n, const std::vector<Rational>& c, int k_max = 4) {
    MeanFieldReport rep;
    rep.n = n;
    rep.c = c;
    rep.formula_value = mean_field_formula(n, c);
    Hypergraph<Rational> g = mean_field(n, c);
    bool attained_somewhere = false;
    bool none_below = true;
    for (int k = 1; k <= k_max; ++k) {
        Poly p = pure_block_charpoly(g, k);
        if (poly::count_roots_below(p, rep.formula_value) > 0) none_below = false;
        if (sgn(poly::eval(p, rep.formula_value)) == 0) {
            rep.argmin_blocks.push_back(k);
            attained_somewhere = true;
        }
    }
    rep.min_matches_formula = none_below && attained_somewhere;

    // v0 under each uniform-size-l component.
    std::vector<Rational> v0 = v0_vector<Rational>(n);
    rep.v0_is_eigenvector = true;
    rep.v0_residual = Rational(0);
    for (int l = 0; l <= n; ++l) {
        Hypergraph<Rational> gl = gamma_ell<Rational>(n, l);
        Operator<Rational> L = kmp_laplacian(gl, 2);
        std::vector<Rational> image = L.mat.apply(v0);
        Rational lambda = Rational(Integer(n + 1) * binomial_mpz(n - 2, l - 2), Integer(l + 1));
        lambda.canonicalize();
        for (size_t i = 0; i < v0.size(); ++i) {
            Rational resid = abs(image[i] - lambda * v0[i]);
            if (resid > rep.v0_residual) rep.v0_residual = resid;
        }
    }
    rep.v0_is_eigenvector = sgn(rep.v0_residual) == 0;
    return rep;
}

} // namespace kmpspectra
