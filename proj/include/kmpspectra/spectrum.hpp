#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "kmpspectra/charpoly.hpp"
#include "kmpspectra/errors.hpp"
#include "kmpspectra/matrix.hpp"
#include "kmpspectra/polynomial.hpp"

namespace kmpspectra {

/// A dense square operator together with provenance and a symmetry flag.
template <typename S>
struct Operator {
    Matrix<S> mat;
    std::string space;
    bool symmetric = false;

    size_t dimension() const { return mat.rows(); }
};

/// Sorted eigenvalues of a symmetric matrix in double precision.
inline std::vector<double> symmetric_eigenvalues(const Matrix<double>& m) {
    size_t n = m.rows();
    Eigen::MatrixXd A(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A(i, j) = m(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(A, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw internal_error("symmetric eigensolver failed");
    std::vector<double> v(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(v.begin(), v.end());
    return v;
}

/// Sorted real parts of the eigenvalues of a general matrix. Used for the
/// similarity-resistant cases where real-rootedness is known on other
/// grounds; imaginary parts beyond roundoff trigger an internal error.
inline std::vector<double> general_real_eigenvalues(const Matrix<double>& m,
                                                    double imag_tol = 1e-7) {
    size_t n = m.rows();
    Eigen::MatrixXd A(n, n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) A(i, j) = m(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> solver(A);
    if (solver.info() != Eigen::Success) throw internal_error("general eigensolver failed");
    double scale = std::max(1.0, m.max_abs());
    std::vector<double> v;
    for (size_t i = 0; i < n; ++i) {
        auto ev = solver.eigenvalues()[i];
        if (std::abs(ev.imag()) > imag_tol * scale)
            throw internal_error("general eigensolver: unexpectedly complex eigenvalue");
        v.push_back(ev.real());
    }
    std::sort(v.begin(), v.end());
    return v;
}

struct EigenvalueCluster {
    double value = 0;
    int multiplicity = 0;
};

/// Groups nearly equal eigenvalues: two consecutive values within
/// 1e-8 * max(1, |A|) land in the same cluster.
inline std::vector<EigenvalueCluster> cluster_eigenvalues(const std::vector<double>& sorted,
                                                          double matrix_scale) {
    double eps = 1e-8 * std::max(1.0, matrix_scale);
    std::vector<EigenvalueCluster> out;
    for (double v : sorted) {
        if (!out.empty() && v - (out.back().value) <= eps) {
            // running mean keeps the representative centered
            auto& c = out.back();
            c.value = (c.value * c.multiplicity + v) / (c.multiplicity + 1);
            ++c.multiplicity;
        } else {
            out.push_back({v, 1});
        }
    }
    return out;
}

/// Float-mode spectrum of an operator with provenance.
struct FloatSpectrum {
    std::string operator_desc;
    std::vector<double> values;  // sorted, with multiplicity
    std::vector<EigenvalueCluster> clusters;
};

template <typename S>
FloatSpectrum float_spectrum(const Operator<S>& op) {
    if (!op.symmetric) throw std::invalid_argument("spectrum: operator not flagged symmetric");
    Matrix<double> m = to_double_matrix(op.mat);
    if (!m.is_symmetric(1e-12 * std::max(1.0, m.max_abs())))
        throw std::invalid_argument("spectrum: matrix is not symmetric");
    FloatSpectrum s;
    s.operator_desc = op.space;
    s.values = symmetric_eigenvalues(m);
    s.clusters = cluster_eigenvalues(s.values, m.max_abs());
    return s;
}

/// Exact-mode spectrum: rational eigenvalues found with multiplicities, plus
/// the characteristic polynomial of what remains (kept unfactored).
struct ExactSpectrum {
    std::string operator_desc;
    Poly charpoly;                                      // full char-poly
    std::vector<std::pair<Rational, int>> rational_part;  // sorted
    Poly residual;  // char-poly factor with no recognized rational roots
};

inline ExactSpectrum exact_spectrum_of_charpoly(Poly cp, const std::string& desc) {
    ExactSpectrum s;
    s.operator_desc = desc;
    s.charpoly = cp;
    auto [roots, residual] = poly::extract_rational_roots(cp);
    s.rational_part = std::move(roots);
    s.residual = std::move(residual);
    return s;
}

inline ExactSpectrum exact_spectrum(const Operator<Rational>& op) {
    if (!op.symmetric) throw std::invalid_argument("spectrum: operator not flagged symmetric");
    if (!op.mat.is_symmetric_exact())
        throw std::invalid_argument("spectrum: matrix is not symmetric");
    return exact_spectrum_of_charpoly(charpoly::of_matrix(op.mat), op.space);
}

} // namespace kmpspectra
