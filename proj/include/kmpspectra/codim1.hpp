#pragma once

#include <string>
#include <vector>

#include "kmpspectra/charpoly.hpp"
#include "kmpspectra/combinatorics.hpp"
#include "kmpspectra/matrix.hpp"
#include "kmpspectra/polynomial.hpp"
#include "kmpspectra/spectrum.hpp"

namespace kmpspectra {

/// Weights of a codimension-1 hypergraph: c_x on the hyperedge avoiding
/// vertex x.
template <typename S>
struct Codim1Instance {
    int n = 0;
    std::vector<S> c;  // c_1..c_n, nonnegative

    Codim1Instance(int n_, std::vector<S> c_) : n(n_), c(std::move(c_)) {
        if (static_cast<int>(c.size()) != n)
            throw std::invalid_argument("Codim1Instance: need n weights");
        for (const auto& w : c)
            if (scalar_traits<S>::sign(w) < 0)
                throw std::invalid_argument("Codim1Instance: negative weight");
    }

    S total() const {
        S t = scalar_traits<S>::zero();
        for (const auto& w : c) t += w;
        return t;
    }
};

/// The family parameter of the n x n reduction: t_k = (-1)^k / binom(n+k-2,k).
inline Rational t_parameter(int n, int k) {
    long long b = binomial(n + k - 2, k);
    return make_rational(k % 2 == 0 ? 1 : -1, b);
}

/// A_t = (sum c) I - diag(c) (I + t(J - I)). For t = t_k this captures the
/// new block of the k-particle process of a codimension-1 hypergraph.
template <typename S>
Matrix<S> a_t_matrix(const Codim1Instance<S>& inst, const S& t) {
    if (!(to_double(t) < 1.0)) throw std::invalid_argument("a_t_matrix: t < 1 required");
    int n = inst.n;
    Matrix<S> m(n, n);
    S total = inst.total();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            S v = scalar_traits<S>::zero();
            if (i == j) v = total - inst.c[i];
            else v = -inst.c[i] * t;
            m(i, j) = v;
        }
    }
    return m;
}

/// D_t = diag(c) (I + t(J - I)) = (sum c) I - A_t.
template <typename S>
Matrix<S> d_t_matrix(const Codim1Instance<S>& inst, const S& t) {
    if (!(to_double(t) < 1.0)) throw std::invalid_argument("d_t_matrix: t < 1 required");
    int n = inst.n;
    Matrix<S> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = (i == j) ? inst.c[i] : inst.c[i] * t;
    return m;
}

/// M_k = A_{t_k}. Its eigenvalues, together with copies of sum(c), make up
/// the spectrum of the k-particle process on the new block. Requires n >= 3.
template <typename S>
Operator<S> m_k_matrix(const Codim1Instance<S>& inst, int k) {
    if (inst.n < 3) throw std::invalid_argument("m_k_matrix: n >= 3 required");
    if (k < 1) throw std::invalid_argument("m_k_matrix: k >= 1 required");
    Operator<S> op;
    op.space = "codim1-M:" + std::to_string(k);
    op.symmetric = false;
    op.mat = a_t_matrix(inst, scalar_traits<S>::from_rational(t_parameter(inst.n, k)));
    return op;
}

/// Characteristic polynomial of D_t in x, for fixed t (exact).
inline Poly char_poly_P_in_x(const Codim1Instance<Rational>& inst, const Rational& t) {
    return charpoly::berkowitz(d_t_matrix(inst, t));
}

/// Q(x,t) = prod_i (x - (1-t) c_i): char-poly of (1-t) diag(c), in x.
inline Poly char_poly_Q_in_x(const Codim1Instance<Rational>& inst, const Rational& t) {
    Poly q = {Rational(1)};
    for (const auto& ci : inst.c) q = poly::mul(q, poly::linear_root((1 - t) * ci));
    return q;
}

/// D_t without the t < 1 guard, for interpolation nodes.
inline Matrix<Rational> d_t_matrix_unchecked(const Codim1Instance<Rational>& inst,
                                             const Rational& t) {
    int n = inst.n;
    Matrix<Rational> m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = (i == j) ? inst.c[i] : inst.c[i] * t;
    return m;
}

/// P(x0, t) as a polynomial in t, for fixed x0, by exact interpolation of the
/// determinant (affine in t entrywise, degree <= n overall).
inline Poly char_poly_P_in_t(const Codim1Instance<Rational>& inst, const Rational& x0) {
    int n = inst.n;
    std::vector<Rational> nodes, values;
    for (int i = 0; i <= n; ++i) {
        Rational t(i + 2, 1);  // any distinct nodes work; avoid t values near roots of nothing
        Matrix<Rational> D = d_t_matrix_unchecked(inst, t);
        Matrix<Rational> M(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) M(r, c) = (r == c ? x0 : Rational(0)) - D(r, c);
        // det via charpoly constant term: det(M) = (-1)^n * charpoly(M)(0)
        Poly cp = charpoly::berkowitz(M);
        Rational det = cp[0];
        if (n % 2 == 1) det = -det;
        nodes.push_back(t);
        values.push_back(det);
    }
    // Lagrange interpolation.
    Poly acc;
    for (int i = 0; i <= n; ++i) {
        Poly term = {Rational(1)};
        Rational denom(1);
        for (int j = 0; j <= n; ++j) {
            if (j == i) continue;
            term = poly::mul(term, poly::linear_root(nodes[j]));
            denom *= nodes[i] - nodes[j];
        }
        acc = poly::add(acc, poly::scale(term, values[i] / denom));
    }
    return acc;
}

/// Q(x0, t) as a polynomial in t: prod_i (c_i t + (x0 - c_i)).
inline Poly char_poly_Q_in_t(const Codim1Instance<Rational>& inst, const Rational& x0) {
    Poly q = {Rational(1)};
    for (const auto& ci : inst.c) q = poly::mul(q, Poly{x0 - ci, ci});
    return q;
}

/// Largest eigenvalue of D_t per grid point. Float route: when every weight
/// is positive, D_t is similar to the symmetric sqrt(diag c) (I+t(J-I))
/// sqrt(diag c); otherwise the general solver is used (real-rootedness holds
/// for t < 1 on other grounds).
inline std::vector<std::pair<double, double>> largest_root_curve_float(
    const Codim1Instance<double>& inst, const std::vector<double>& t_grid) {
    int n = inst.n;
    bool all_positive = true;
    for (double ci : inst.c)
        if (ci <= 0) all_positive = false;
    std::vector<std::pair<double, double>> out;
    for (double t : t_grid) {
        if (!(t < 1.0) || t == 0.0)
            throw std::invalid_argument("largest_root_curve: grid points must satisfy t < 1, t != 0");
        double h;
        if (all_positive) {
            Matrix<double> sym(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    sym(i, j) = std::sqrt(inst.c[i]) * std::sqrt(inst.c[j]) * (i == j ? 1.0 : t);
            h = symmetric_eigenvalues(sym).back();
        } else {
            h = general_real_eigenvalues(d_t_matrix(inst, t)).back();
        }
        out.push_back({t, h});
    }
    return out;
}

/// Exact route: largest root of P(.,t) isolated by Sturm bracketing.
inline std::vector<std::pair<Rational, poly::RootInterval>> largest_root_curve_exact(
    const Codim1Instance<Rational>& inst, const std::vector<Rational>& t_grid) {
    std::vector<std::pair<Rational, poly::RootInterval>> out;
    for (const auto& t : t_grid) {
        if (!(t < 1) || sgn(t) == 0)
            throw std::invalid_argument("largest_root_curve: grid points must satisfy t < 1, t != 0");
        out.push_back({t, poly::isolate_extreme_root(char_poly_P_in_x(inst, t), false)});
    }
    return out;
}

/// The standard scan grid: 64 log-spaced magnitudes per side of 0 inside
/// (-0.9, 0.9), ordered from the outside toward 0 on each side.
inline std::vector<double> monotonicity_grid() {
    std::vector<double> grid;
    const int per_side = 64;
    const double hi = 0.9, lo = 1e-6;
    double ratio = std::pow(lo / hi, 1.0 / (per_side - 1));
    for (int i = 0; i < per_side; ++i) grid.push_back(-hi * std::pow(ratio, i));
    for (int i = 0; i < per_side; ++i) grid.push_back(hi * std::pow(ratio, i));
    return grid;
}

/// Smallest eigenvalues of the uniform codimension-1 hypergraph in closed
/// form: ((n+1)(n-2)/n, n(n-2)/(n-1)) for the 2- and 1-particle blocks.
inline std::pair<Rational, Rational> codim1_gap_closed_forms(int n) {
    if (n < 2) throw std::invalid_argument("codim1_gap_closed_forms: n >= 2 required");
    return {make_rational(static_cast<long>(n + 1) * (n - 2), n),
            make_rational(static_cast<long>(n) * (n - 2), n - 1)};
}

} // namespace kmpspectra
