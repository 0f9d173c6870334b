#pragma once

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "kmpspectra/combinatorics.hpp"
#include "kmpspectra/errors.hpp"
#include "kmpspectra/hypergraph.hpp"
#include "kmpspectra/multiset_space.hpp"
#include "kmpspectra/spectrum.hpp"

namespace kmpspectra {

/// Exact values of the unitary Weingarten class function for a fixed order k
/// and matrix dimension d, keyed by cycle type.
struct WeingartenTable {
    int k = 0;
    long d = 0;
    std::map<std::vector<int>, Rational> values;  // cycle type (non-increasing parts)

    const Rational& at(const std::vector<int>& cycle_type) const {
        auto it = values.find(cycle_type);
        if (it == values.end()) throw internal_error("Weingarten table: unknown cycle type");
        return it->second;
    }
};

/// Builds the order-k table for dimension d from symmetric-group characters:
///   (1/k!^2) sum over partitions nu of k with at most d rows of
///   dim(nu)^2 / poly_dim(nu, d) * chi_nu.
inline WeingartenTable wg_table(int k, long d) {
    if (k < 1 || k > 6) throw resource_error("wg_table: only 1 <= k <= 6 supported");
    if (d < 1) throw std::invalid_argument("wg_table: d >= 1 required");
    static std::map<std::pair<int, long>, WeingartenTable> cache;
    static std::mutex mutex;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({k, d});
        if (it != cache.end()) return it->second;
    }
    WeingartenTable table;
    table.k = k;
    table.d = d;
    std::vector<Partition> parts = partitions_of(k);
    Rational kfact2 = Rational(factorial_mpz(k) * factorial_mpz(k));
    for (const auto& cls : parts) {
        CycleType c(cls);
        Rational total(0);
        for (const auto& nu : parts) {
            if (nu.length() > d) continue;
            Integer udim = unitary_irrep_dim_polynomial_case(nu, d);
            long long sdim = sym_irrep_dim(nu);
            long long chi = sym_character(nu, c);
            if (chi == 0) continue;
            Rational term(to_integer(sdim) * to_integer(sdim) * to_integer(chi), udim);
            term.canonicalize();
            total += term;
        }
        table.values[cls.parts] = total / kfact2;
    }
    std::lock_guard<std::mutex> lock(mutex);
    cache.emplace(std::make_pair(k, d), table);
    return table;
}

/// A monomial in Haar-unitary matrix entries over U(d):
///   A_{rows[0],cols[0]} ... A_{rows[k-1],cols[k-1]} *
///   conj(A_{crows[0],ccols[0]}) ... conj(A_{crows[m-1],ccols[m-1]}).
struct MonomialSpec {
    long d = 0;
    std::vector<int> rows, cols;    // plain factors
    std::vector<int> crows, ccols;  // conjugated factors
};

namespace detail {

/// All bijections sigma with a[t] == b[sigma(t)], by backtracking on the
/// delta constraints. Returns images as index vectors.
inline std::vector<std::vector<int>> matching_permutations(const std::vector<int>& a,
                                                           const std::vector<int>& b) {
    size_t k = a.size();
    std::vector<std::vector<int>> out;
    std::vector<int> image(k, -1);
    std::vector<bool> used(k, false);
    auto rec = [&](auto&& self, size_t t) -> void {
        if (t == k) {
            out.push_back(image);
            return;
        }
        for (size_t s = 0; s < k; ++s) {
            if (used[s] || b[s] != a[t]) continue;
            used[s] = true;
            image[t] = static_cast<int>(s);
            self(self, t + 1);
            used[s] = false;
        }
    };
    rec(rec, 0);
    return out;
}

inline std::vector<int> cycle_type_of(const std::vector<int>& perm) {
    size_t k = perm.size();
    std::vector<bool> seen(k, false);
    std::vector<int> type;
    for (size_t i = 0; i < k; ++i) {
        if (seen[i]) continue;
        int len = 0;
        size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<size_t>(perm[j]);
            ++len;
        }
        type.push_back(len);
    }
    std::sort(type.rbegin(), type.rend());
    return type;
}

} // namespace detail

/// Exact Haar integral of the monomial. Vanishes unless the plain and
/// conjugated factor counts agree and the row and column index multisets
/// match; otherwise it is the double sum over delta-compatible permutation
/// pairs of Weingarten values.
inline Rational monomial_integral(const MonomialSpec& spec) {
    size_t k = spec.rows.size(), m = spec.crows.size();
    if (spec.cols.size() != k || spec.ccols.size() != m)
        throw std::invalid_argument("monomial_integral: tuple length mismatch");
    for (int v : spec.rows)
        if (v < 1 || v > spec.d) throw std::invalid_argument("monomial_integral: index out of range");
    for (int v : spec.crows)
        if (v < 1 || v > spec.d) throw std::invalid_argument("monomial_integral: index out of range");
    for (int v : spec.cols)
        if (v < 1 || v > spec.d) throw std::invalid_argument("monomial_integral: index out of range");
    for (int v : spec.ccols)
        if (v < 1 || v > spec.d) throw std::invalid_argument("monomial_integral: index out of range");
    if (k != m) return Rational(0);
    if (k == 0) return Rational(1);
    auto sigmas = detail::matching_permutations(spec.rows, spec.crows);
    if (sigmas.empty()) return Rational(0);
    auto taus = detail::matching_permutations(spec.cols, spec.ccols);
    if (taus.empty()) return Rational(0);
    WeingartenTable table = wg_table(static_cast<int>(k), spec.d);
    Rational total(0);
    std::vector<int> inv_sigma(k), composite(k);
    for (const auto& sigma : sigmas) {
        for (size_t t = 0; t < k; ++t) inv_sigma[static_cast<size_t>(sigma[t])] = static_cast<int>(t);
        for (const auto& tau : taus) {
            // tau o sigma^-1
            for (size_t t = 0; t < k; ++t)
                composite[t] = tau[static_cast<size_t>(inv_sigma[t])];
            total += table.at(detail::cycle_type_of(composite));
        }
    }
    return total;
}

// ---------------------------------------------------------------------------
// The tensor representation on n^(k+m) coordinates: k plain tensor slots and
// m conjugated ones, basis indexed row-major with the last slot fastest.
// ---------------------------------------------------------------------------

struct TensorBasis {
    int n = 0, k = 0, m = 0;
    long long dimension = 0;

    TensorBasis(int n_, int k_, int m_) : n(n_), k(k_), m(m_) {
        dimension = 1;
        for (int i = 0; i < k + m; ++i) {
            dimension *= n;
            check_dimension_guard(dimension, "tensor basis");
        }
    }

    /// Slots as 1-based vertex indices: first k plain, then m conjugated.
    std::vector<int> unrank(long long idx) const {
        std::vector<int> slots(k + m);
        for (int s = k + m - 1; s >= 0; --s) {
            slots[s] = static_cast<int>(idx % n) + 1;
            idx /= n;
        }
        return slots;
    }

    long long rank(const std::vector<int>& slots) const {
        long long idx = 0;
        for (int s = 0; s < k + m; ++s) idx = idx * n + (slots[s] - 1);
        return idx;
    }
};

/// Per-vertex weight signature of a tensor basis element: multiplicity among
/// the plain slots minus multiplicity among the conjugated slots. Every edge
/// projection preserves it, so the Laplacian is block-diagonal over these
/// labels.
inline std::vector<int> tensor_weight_signature(const TensorBasis& basis,
                                                const std::vector<int>& slots) {
    std::vector<int> sig(basis.n, 0);
    for (int s = 0; s < basis.k; ++s) ++sig[slots[s] - 1];
    for (int s = basis.k; s < basis.k + basis.m; ++s) --sig[slots[s] - 1];
    return sig;
}

inline std::vector<std::vector<int>> tensor_weight_labels(const TensorBasis& basis) {
    std::vector<std::vector<int>> labels;
    labels.reserve(static_cast<size_t>(basis.dimension));
    for (long long i = 0; i < basis.dimension; ++i)
        labels.push_back(tensor_weight_signature(basis, basis.unrank(i)));
    return labels;
}

/// Orthogonal projection onto the invariant subspace of the edge subgroup
/// inside the tensor representation, computed entrywise by the literal Haar
/// integral: slots outside B must be fixed, slots inside B integrate over
/// U(|B|). Exact rational output.
inline Operator<Rational> projection_rkm(uint32_t mask, int n, int k, int m) {
    TensorBasis basis(n, k, m);
    size_t dim = static_cast<size_t>(basis.dimension);
    Operator<Rational> op;
    op.space = "unitary-R:" + std::to_string(k) + "," + std::to_string(m) + " P_B";
    op.symmetric = true;
    op.mat = Matrix<Rational>(dim, dim);
    int b = popcount32(mask);
    auto in_b = [&](int v) { return (mask & (1u << (v - 1))) != 0; };
    for (size_t row = 0; row < dim; ++row) {
        std::vector<int> rs = basis.unrank(static_cast<long long>(row));
        for (size_t col = 0; col < dim; ++col) {
            std::vector<int> cs = basis.unrank(static_cast<long long>(col));
            MonomialSpec spec;
            spec.d = b;
            bool zero = false;
            for (int s = 0; s < k + m && !zero; ++s) {
                bool rin = in_b(rs[s]), cin = in_b(cs[s]);
                if (rin && cin) {
                    if (s < k) {
                        spec.rows.push_back(rs[s]);
                        spec.cols.push_back(cs[s]);
                    } else {
                        spec.crows.push_back(rs[s]);
                        spec.ccols.push_back(cs[s]);
                    }
                } else if (!rin && !cin) {
                    if (rs[s] != cs[s]) zero = true;
                } else {
                    zero = true;
                }
            }
            if (zero) continue;
            if (spec.rows.empty() && spec.crows.empty()) {
                op.mat(row, col) = Rational(1);
                continue;
            }
            // Relabel B to 1..b for the integral.
            std::vector<int> relabel(n + 1, 0);
            int next = 1;
            for (int v = 1; v <= n; ++v)
                if (in_b(v)) relabel[v] = next++;
            for (auto* tup : {&spec.rows, &spec.cols, &spec.crows, &spec.ccols})
                for (int& v : *tup) v = relabel[v];
            Rational val = monomial_integral(spec);
            if (sgn(val) != 0) op.mat(row, col) = val;
        }
    }
    if (!op.mat.is_symmetric_exact())
        throw internal_error("projection_rkm: projection is not symmetric");
    return op;
}

/// Law for the hypergraph Laplacian in the tensor representation:
/// sum of w_B (I - P_B), including edges of size <= 1, whose projections are
/// genuinely non-trivial off the balanced basis vectors.
inline Operator<Rational> laplacian_rkm(const Hypergraph<Rational>& g, int k, int m) {
    TensorBasis basis(g.n, k, m);
    size_t dim = static_cast<size_t>(basis.dimension);
    Operator<Rational> op;
    op.space = "unitary-R:" + std::to_string(k) + "," + std::to_string(m);
    op.symmetric = true;
    op.mat = Matrix<Rational>(dim, dim);
    // accumulate w(I - P_B) in place; these matrices get large
    for (const auto& [mask, w] : g.weights) {
        if (sgn(w) == 0) continue;
        Operator<Rational> pb = projection_rkm(mask, g.n, k, m);
        for (size_t i = 0; i < dim; ++i) {
            op.mat(i, i) += w;
            for (size_t j = 0; j < dim; ++j) {
                const Rational& p = pb.mat(i, j);
                if (sgn(p) != 0) op.mat(i, j) -= w * p;
            }
        }
    }
    return op;
}

/// The torus-invariant basis of the symmetric-power representation: one
/// basis vector per k-multiset, normalized by the arrangement count c_I.
struct TorInvBasis {
    int n = 0, k = 0;
    MultisetSpace space;
    std::vector<long long> c;  // arrangement counts per multiset, colex order

    TorInvBasis(int n_, int k_) : n(n_), k(k_), space(n_, k_) {
        for (long long i = 0; i < space.dimension(); ++i)
            c.push_back(MultisetSpace::arrangement_count(space.unrank(i)));
    }
};

inline TorInvBasis torinv_basis_skk(int n, int k) { return TorInvBasis(n, k); }

/// The edge projection restricted to the torus-invariant block of the
/// symmetric-power representation, built from raw double permutation sums of
/// Weingarten values (no combinatorial shortcut). Serves as the independent
/// construction to compare against the particle-process operator.
template <typename S>
Operator<S> projection_torinv_skk(uint32_t mask, int n, int k) {
    TorInvBasis basis(n, k);
    size_t dim = static_cast<size_t>(basis.space.dimension());
    check_dimension_guard(static_cast<long>(dim), "projection_torinv_skk");
    Operator<S> op;
    op.space = "torinv-S:" + std::to_string(k) + " P_B";
    op.symmetric = true;
    op.mat = Matrix<S>(dim, dim);
    int b = popcount32(mask);
    auto in_b = [&](int v) { return (mask & (1u << (v - 1))) != 0; };
    std::vector<int> relabel(n + 1, 0);
    {
        int next = 1;
        for (int v = 1; v <= n; ++v)
            if (in_b(v)) relabel[v] = next++;
    }
    for (size_t col = 0; col < dim; ++col) {
        std::vector<int> state = basis.space.unrank(static_cast<long long>(col));
        std::vector<int> inside, outside;
        for (int v : state) (in_b(v) ? inside : outside).push_back(v);
        int ell = static_cast<int>(inside.size());
        // alpha: the fixed tuple of in-B coordinates of the source monomial.
        std::vector<int> alpha = inside;
        for (int& v : alpha) v = relabel[v];
        if (ell == 0) {
            op.mat(col, col) = scalar_traits<S>::one();
            continue;
        }
        // Enumerate target in-B multisets J1 and all arrangements of J1 for
        // both the plain and conjugated halves of the monomial.
        MultisetSpace inner(b, ell);
        std::vector<int> bverts;
        for (int v = 1; v <= n; ++v)
            if (in_b(v)) bverts.push_back(v);
        for (long long t = 0; t < inner.dimension(); ++t) {
            std::vector<int> j1 = inner.unrank(t);  // values in 1..b
            std::vector<int> target = outside;
            for (int v : j1) target.push_back(bverts[static_cast<size_t>(v - 1)]);
            std::sort(target.begin(), target.end());
            size_t row = static_cast<size_t>(basis.space.rank(target));
            // T = sum over arrangements (x-part, y-part) of the Haar integral.
            Rational T(0);
            std::vector<int> arrangement = j1;
            std::sort(arrangement.begin(), arrangement.end());
            std::vector<std::vector<int>> tuples;
            do {
                tuples.push_back(arrangement);
            } while (std::next_permutation(arrangement.begin(), arrangement.end()));
            for (const auto& jx : tuples) {
                for (const auto& jy : tuples) {
                    MonomialSpec spec;
                    spec.d = b;
                    spec.rows = jx;
                    spec.cols = alpha;
                    spec.crows = jy;
                    spec.ccols = alpha;
                    T += monomial_integral(spec);
                }
            }
            Rational entry = T * make_rational(basis.c[col], basis.c[row]);
            op.mat(row, col) = scalar_traits<S>::from_rational(entry);
        }
    }
    return op;
}

} // namespace kmpspectra
