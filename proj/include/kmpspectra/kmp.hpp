#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "kmpspectra/errors.hpp"
#include "kmpspectra/hypergraph.hpp"
#include "kmpspectra/matrix.hpp"
#include "kmpspectra/multiset_space.hpp"
#include "kmpspectra/spectrum.hpp"

namespace kmpspectra {

namespace detail {

inline std::vector<int> mask_vertices(uint32_t mask, int n) {
    std::vector<int> v;
    for (int x = 1; x <= n; ++x)
        if (mask & (1u << (x - 1))) v.push_back(x);
    return v;
}

} // namespace detail

/// The redistribution operator of a hyperedge B on k-particle configurations:
/// particles sitting inside B are re-dealt uniformly over all ways to place
/// them on B, everything outside B stays put. Block-diagonal with constant
/// blocks 1/(number of placements); an orthogonal projection.
template <typename S>
Operator<S> n_b_operator(int n, int k, uint32_t mask) {
    MultisetSpace space(n, k);
    check_dimension_guard(space.dimension(), "n_b_operator");
    size_t dim = static_cast<size_t>(space.dimension());
    Operator<S> op;
    op.space = "ms(" + std::to_string(n) + "," + std::to_string(k) + ")";
    op.symmetric = true;
    int b = popcount32(mask);
    if (b <= 1) {
        op.mat = Matrix<S>::identity(dim);
        return op;
    }
    op.mat = Matrix<S>(dim, dim);
    std::vector<int> bverts = detail::mask_vertices(mask, n);
    for (size_t s = 0; s < dim; ++s) {
        std::vector<int> state = space.unrank(static_cast<long long>(s));
        std::vector<int> outside;
        int ell = 0;
        for (int v : state) {
            if (mask & (1u << (v - 1)))
                ++ell;
            else
                outside.push_back(v);
        }
        long long placements = multiset_count(b, ell);
        S entry = scalar_traits<S>::from_fraction(1, placements);
        MultisetSpace inner(b, ell);
        for (long long t = 0; t < inner.dimension(); ++t) {
            std::vector<int> inside = inner.unrank(t);
            std::vector<int> target = outside;
            for (int& v : inside) v = bverts[static_cast<size_t>(v - 1)];
            target.insert(target.end(), inside.begin(), inside.end());
            std::sort(target.begin(), target.end());
            op.mat(static_cast<size_t>(space.rank(target)), s) += entry;
        }
    }
    return op;
}

/// Laplacian of the k-particle reshuffling process on a weighted hypergraph:
/// sum over hyperedges of w_B (I - N_B). Edges of size <= 1 act as the
/// identity and contribute nothing.
template <typename S>
Operator<S> kmp_laplacian(const Hypergraph<S>& g, int k) {
    if (k < 1) throw std::invalid_argument("kmp_laplacian: k >= 1 required");
    MultisetSpace space(g.n, k);
    check_dimension_guard(space.dimension(), "kmp_laplacian");
    size_t dim = static_cast<size_t>(space.dimension());
    Operator<S> op;
    op.space = "kmp:" + std::to_string(k);
    op.symmetric = true;
    op.mat = Matrix<S>(dim, dim);
    for (const auto& [mask, w] : g.weights) {
        if (scalar_traits<S>::is_zero(w) || popcount32(mask) <= 1) continue;
        Operator<S> nb = n_b_operator<S>(g.n, k, mask);
        Matrix<S> term = Matrix<S>::identity(dim) - nb.mat;
        op.mat += term.scaled(w);
    }
    return op;
}

/// The embedding of k-particle states into (k+1)-particle states: a basis
/// state maps to the sum over added particles x with coefficient
/// (multiplicity of x) + 1. Injective and commuting with every N_B.
/// Returned as a dim(n,k+1) x dim(n,k) matrix.
template <typename S>
Matrix<S> psi(int n, int k) {
    MultisetSpace from(n, k), to(n, k + 1);
    Matrix<S> m(static_cast<size_t>(to.dimension()), static_cast<size_t>(from.dimension()));
    for (long long c = 0; c < from.dimension(); ++c) {
        std::vector<int> state = from.unrank(c);
        for (int x = 1; x <= n; ++x) {
            int mult = MultisetSpace::multiplicity(state, x);
            std::vector<int> target = state;
            target.insert(std::upper_bound(target.begin(), target.end(), x), x);
            m(static_cast<size_t>(to.rank(target)), static_cast<size_t>(c)) =
                scalar_traits<S>::from_fraction(mult + 1, 1);
        }
    }
    return m;
}

/// Exact basis of the orthogonal complement of the embedded (k-1)-particle
/// space inside the k-particle space. Columns are each orthogonal to every
/// embedded basis vector; they are not mutually orthonormal — restrictions
/// apply a Gram correction instead, keeping everything square-root-free.
struct PureBasisExact {
    int n = 0, k = 0;
    Matrix<Rational> columns;  // dim(n,k) x m
};

namespace detail {

/// Kernel of A (rows x cols) over Q, as columns of a cols x nullity matrix.
inline Matrix<Rational> exact_kernel(Matrix<Rational> A) {
    size_t rows = A.rows(), cols = A.cols();
    std::vector<size_t> pivot_col;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t piv = r;
        while (piv < rows && sgn(A(piv, c)) == 0) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (size_t j = 0; j < cols; ++j) std::swap(A(piv, j), A(r, j));
        Rational inv = Rational(1) / A(r, c);
        for (size_t j = c; j < cols; ++j) A(r, j) *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(A(i, c)) == 0) continue;
            Rational f = A(i, c);
            for (size_t j = c; j < cols; ++j) A(i, j) -= f * A(r, j);
        }
        pivot_col.push_back(c);
        ++r;
    }
    std::vector<bool> is_pivot(cols, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    size_t nullity = cols - pivot_col.size();
    Matrix<Rational> K(cols, nullity);
    size_t out = 0;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        K(fc, out) = Rational(1);
        for (size_t pi = 0; pi < pivot_col.size(); ++pi) K(pivot_col[pi], out) = -A(pi, fc);
        ++out;
    }
    return K;
}

/// Solves A X = B exactly (A square invertible).
inline Matrix<Rational> exact_solve(Matrix<Rational> A, Matrix<Rational> B) {
    size_t n = A.rows();
    if (B.rows() != n) throw std::invalid_argument("exact_solve: shape mismatch");
    for (size_t c = 0; c < n; ++c) {
        size_t piv = c;
        while (piv < n && sgn(A(piv, c)) == 0) ++piv;
        if (piv == n) throw internal_error("exact_solve: singular matrix");
        if (piv != c) {
            for (size_t j = 0; j < n; ++j) std::swap(A(piv, j), A(c, j));
            for (size_t j = 0; j < B.cols(); ++j) std::swap(B(piv, j), B(c, j));
        }
        Rational inv = Rational(1) / A(c, c);
        for (size_t j = 0; j < n; ++j) A(c, j) *= inv;
        for (size_t j = 0; j < B.cols(); ++j) B(c, j) *= inv;
        for (size_t i = 0; i < n; ++i) {
            if (i == c || sgn(A(i, c)) == 0) continue;
            Rational f = A(i, c);
            for (size_t j = 0; j < n; ++j) A(i, j) -= f * A(c, j);
            for (size_t j = 0; j < B.cols(); ++j) B(i, j) -= f * B(c, j);
        }
    }
    return B;
}

} // namespace detail

inline PureBasisExact pure_basis_exact(int n, int k) {
    if (k < 1) throw std::invalid_argument("pure_basis: k >= 1 required");
    static std::map<std::pair<int, int>, PureBasisExact> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({n, k});
        if (it != cache.end()) return it->second;
    }
    Matrix<Rational> embed = psi<Rational>(n, k - 1);
    PureBasisExact basis;
    basis.n = n;
    basis.k = k;
    basis.columns = detail::exact_kernel(embed.transpose());
    long long expected = multiset_count(n, k) - multiset_count(n, k - 1);
    if (static_cast<long long>(basis.columns.cols()) != expected)
        throw internal_error("pure_basis: unexpected complement dimension");
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::make_pair(n, k), basis);
    return basis;
}

/// Orthonormal (double) basis of the same complement, for float-mode
/// restrictions: exact construction, then modified Gram-Schmidt.
inline Matrix<double> pure_basis_orthonormal(int n, int k) {
    Matrix<double> U = to_double_matrix(pure_basis_exact(n, k).columns);
    size_t dim = U.rows(), m = U.cols();
    for (size_t j = 0; j < m; ++j) {
        for (size_t prev = 0; prev < j; ++prev) {
            double d = 0;
            for (size_t i = 0; i < dim; ++i) d += U(i, j) * U(i, prev);
            for (size_t i = 0; i < dim; ++i) U(i, j) -= d * U(i, prev);
        }
        double norm = 0;
        for (size_t i = 0; i < dim; ++i) norm += U(i, j) * U(i, j);
        norm = std::sqrt(norm);
        if (norm == 0) throw internal_error("pure_basis_orthonormal: dependent columns");
        for (size_t i = 0; i < dim; ++i) U(i, j) /= norm;
    }
    return U;
}

/// Matrix of L restricted to the complement, in the exact basis: solves
/// G C = U^T L U with G the Gram matrix of the basis columns. Similar to a
/// symmetric matrix, hence real-rooted, but not itself symmetric.
inline Matrix<Rational> restrict_to_pure_exact(const Matrix<Rational>& L,
                                               const PureBasisExact& basis) {
    Matrix<Rational> Ut = basis.columns.transpose();
    Matrix<Rational> G = Ut * basis.columns;
    Matrix<Rational> W = Ut * (L * basis.columns);
    return detail::exact_solve(std::move(G), std::move(W));
}

/// Characteristic polynomial of the k-particle Laplacian restricted to the
/// new (complement) block.
inline Poly pure_block_charpoly(const Hypergraph<Rational>& g, int k) {
    Operator<Rational> L = kmp_laplacian(g, k);
    PureBasisExact basis = pure_basis_exact(g.n, k);
    return charpoly::of_matrix(restrict_to_pure_exact(L.mat, basis));
}

/// The distinguished complement vector attached to a vertex x: coefficient
/// (-1)^m binom(n+k-2, m) on each configuration, m = multiplicity of x.
/// It spans the invariant line of the codimension-1 edge avoiding x.
template <typename S>
struct GVector {
    int n = 0, k = 0, x = 0;
    std::vector<S> coefficients;
};

template <typename S>
GVector<S> g_vector(int n, int k, int x) {
    if (x < 1 || x > n) throw std::invalid_argument("g_vector: vertex out of range");
    if (k < 1) throw std::invalid_argument("g_vector: k >= 1 required");
    MultisetSpace space(n, k);
    GVector<S> g;
    g.n = n;
    g.k = k;
    g.x = x;
    g.coefficients.resize(static_cast<size_t>(space.dimension()));
    for (long long i = 0; i < space.dimension(); ++i) {
        std::vector<int> state = space.unrank(i);
        int m = MultisetSpace::multiplicity(state, x);
        long long c = binomial(n + k - 2, m);
        g.coefficients[static_cast<size_t>(i)] =
            scalar_traits<S>::from_fraction(m % 2 == 0 ? c : -c, 1);
    }
    // Membership in the complement: orthogonal to every embedded basis vector.
    Matrix<Rational> embed = psi<Rational>(n, k - 1);
    for (size_t col = 0; col < embed.cols(); ++col) {
        Rational d(0);
        for (size_t row = 0; row < embed.rows(); ++row) {
            if (sgn(embed(row, col)) == 0) continue;
            if constexpr (is_exact_scalar_v<S>)
                d += embed(row, col) * g.coefficients[row];
            else
                d += embed(row, col) * rational_from_double(g.coefficients[row]);
        }
        if (sgn(d) != 0) throw internal_error("g_vector: not orthogonal to embedded space");
    }
    return g;
}

/// Smallest eigenvalue of the k-particle Laplacian on the complement block
/// (the smallest "new" eigenvalue at particle count k). Float mode.
template <typename S>
double omega_k_float(const Hypergraph<S>& g, int k) {
    Operator<double> L = kmp_laplacian(to_double_hypergraph(g), k);
    Matrix<double> U = pure_basis_orthonormal(g.n, k);
    Matrix<double> C = U.transpose() * (L.mat * U);
    return symmetric_eigenvalues(C).front();
}

/// Exact counterpart: the smallest root of the complement block char-poly,
/// reported as an exact rational when recognizable, otherwise as a tight
/// isolating bracket.
inline poly::RootInterval omega_k_exact(const Hypergraph<Rational>& g, int k) {
    return poly::isolate_extreme_root(pure_block_charpoly(g, k), true);
}

/// Both routes to the smallest non-trivial eigenvalue of the k-particle
/// process, cross-checked: the full spectrum minus one trivial zero, and the
/// minimum over the per-block smallest new eigenvalues. A mismatch is an
/// invariant breach, not something to resolve silently.
template <typename S>
double lambda_min_star_kmp_float(const Hypergraph<S>& g, int k, double tol = 1e-9) {
    Hypergraph<double> gd = to_double_hypergraph(g);
    Operator<double> L = kmp_laplacian(gd, k);
    std::vector<double> eigs = symmetric_eigenvalues(L.mat);
    if (eigs.size() < 2) return 0.0;
    double direct = eigs[1];
    double block = omega_k_float(gd, 1);
    for (int j = 2; j <= k; ++j) block = std::min(block, omega_k_float(gd, j));
    double scale = std::max(1.0, L.mat.max_abs());
    if (std::fabs(direct - block) > tol * scale)
        throw internal_error("lambda_min_star: direct and block routes disagree");
    return direct;
}

struct LambdaMinStarExact {
    Poly nontrivial_charpoly;          // char-poly of L with one zero removed
    std::vector<Poly> block_charpolys;  // per particle count 1..k
    poly::RootInterval value;
};

inline LambdaMinStarExact lambda_min_star_kmp_exact(const Hypergraph<Rational>& g, int k) {
    Operator<Rational> L = kmp_laplacian(g, k);
    Poly full = charpoly::of_matrix(L.mat);
    LambdaMinStarExact out;
    Poly product = {Rational(0), Rational(1)};  // the trivial zero block
    for (int j = 1; j <= k; ++j) {
        out.block_charpolys.push_back(pure_block_charpoly(g, j));
        product = poly::mul(product, out.block_charpolys.back());
    }
    if (poly::sub(product, full) != Poly{})
        throw internal_error("lambda_min_star: block product does not match full char-poly");
    auto [q, r] = poly::divrem(full, poly::linear_root(Rational(0)));
    if (!r.empty()) throw internal_error("lambda_min_star: missing trivial zero eigenvalue");
    out.nontrivial_charpoly = q;
    out.value = poly::isolate_extreme_root(q, true);
    return out;
}

} // namespace kmpspectra
