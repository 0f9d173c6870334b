#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "kmpspectra/combinatorics.hpp"
#include "kmpspectra/errors.hpp"
#include "kmpspectra/hypergraph.hpp"
#include "kmpspectra/spectrum.hpp"

namespace kmpspectra {

/// Basis of k-tuples of distinct vertices from [n], lexicographic order.
class TupleSpace {
public:
    TupleSpace(int n, int k) : n_(n), k_(k) {
        if (k < 0 || k > n) throw std::invalid_argument("TupleSpace: need 0 <= k <= n");
        std::vector<int> cur;
        std::vector<bool> used(n + 1, false);
        build(cur, used);
        for (size_t i = 0; i < states_.size(); ++i) index_[states_[i]] = static_cast<long long>(i);
        check_dimension_guard(static_cast<long>(states_.size()), "TupleSpace");
    }

    int n() const { return n_; }
    int k() const { return k_; }
    long long dimension() const { return static_cast<long long>(states_.size()); }
    const std::vector<int>& state(long long i) const { return states_[static_cast<size_t>(i)]; }

    long long rank(const std::vector<int>& tuple) const {
        auto it = index_.find(tuple);
        if (it == index_.end()) throw std::invalid_argument("TupleSpace: invalid tuple");
        return it->second;
    }

private:
    void build(std::vector<int>& cur, std::vector<bool>& used) {
        if (static_cast<int>(cur.size()) == k_) {
            states_.push_back(cur);
            return;
        }
        for (int v = 1; v <= n_; ++v) {
            if (used[v]) continue;
            used[v] = true;
            cur.push_back(v);
            build(cur, used);
            cur.pop_back();
            used[v] = false;
        }
    }

    int n_, k_;
    std::vector<std::vector<int>> states_;
    std::map<std::vector<int>, long long> index_;
};

/// Projection of the edge subgroup acting on distinct k-tuples: the average
/// of the |B|! permutations of B applied pointwise. Symmetric idempotent.
template <typename S>
Operator<S> p_b_zk(int n, int k, uint32_t mask) {
    TupleSpace space(n, k);
    size_t dim = static_cast<size_t>(space.dimension());
    Operator<S> op;
    op.space = "sym-z:" + std::to_string(k) + " P_B";
    op.symmetric = true;
    int b = popcount32(mask);
    if (b <= 1) {
        op.mat = Matrix<S>::identity(dim);
        return op;
    }
    op.mat = Matrix<S>(dim, dim);
    std::vector<int> bverts;
    for (int v = 1; v <= n; ++v)
        if (mask & (1u << (v - 1))) bverts.push_back(v);
    long long bfact = 1;
    for (int i = 2; i <= b; ++i) bfact *= i;
    S entry = scalar_traits<S>::from_fraction(1, bfact);
    std::vector<int> image = bverts;
    std::vector<int> where(n + 1, 0);
    do {
        for (size_t i = 0; i < bverts.size(); ++i) where[bverts[i]] = image[i];
        for (size_t s = 0; s < dim; ++s) {
            std::vector<int> target = space.state(static_cast<long long>(s));
            for (int& v : target)
                if (mask & (1u << (v - 1))) v = where[v];
            op.mat(static_cast<size_t>(space.rank(target)), s) += entry;
        }
    } while (std::next_permutation(image.begin(), image.end()));
    return op;
}

/// Same operator filled combinatorially: the entry toward a tuple agreeing
/// outside B and holding r in-B slots is (b-r)!/b!. Cross-check path for the
/// permutation-sum construction.
template <typename S>
Operator<S> p_b_zk_combinatorial(int n, int k, uint32_t mask) {
    TupleSpace space(n, k);
    size_t dim = static_cast<size_t>(space.dimension());
    Operator<S> op;
    op.space = "sym-z:" + std::to_string(k) + " P_B";
    op.symmetric = true;
    int b = popcount32(mask);
    if (b <= 1) {
        op.mat = Matrix<S>::identity(dim);
        return op;
    }
    op.mat = Matrix<S>(dim, dim);
    for (size_t col = 0; col < dim; ++col) {
        const std::vector<int>& src = space.state(static_cast<long long>(col));
        int r = 0;
        for (int v : src)
            if (mask & (1u << (v - 1))) ++r;
        long long denom = 1;  // b(b-1)...(b-r+1)
        for (int i = 0; i < r; ++i) denom *= (b - i);
        S entry = scalar_traits<S>::from_fraction(1, denom);
        for (size_t row = 0; row < dim; ++row) {
            const std::vector<int>& dst = space.state(static_cast<long long>(row));
            bool compatible = true;
            for (int s = 0; s < k && compatible; ++s) {
                bool src_in = (mask & (1u << (src[s] - 1))) != 0;
                bool dst_in = (mask & (1u << (dst[s] - 1))) != 0;
                if (src_in != dst_in) compatible = false;
                else if (!src_in && src[s] != dst[s]) compatible = false;
            }
            if (compatible) op.mat(row, col) = entry;
        }
    }
    return op;
}

/// Hypergraph Laplacian on distinct k-tuples.
template <typename S>
Operator<S> laplacian_zk(const Hypergraph<S>& g, int k) {
    TupleSpace space(g.n, k);
    size_t dim = static_cast<size_t>(space.dimension());
    Operator<S> op;
    op.space = "sym-z:" + std::to_string(k);
    op.symmetric = true;
    op.mat = Matrix<S>(dim, dim);
    for (const auto& [mask, w] : g.weights) {
        if (scalar_traits<S>::is_zero(w) || popcount32(mask) <= 1) continue;
        Operator<S> pb = p_b_zk<S>(g.n, k, mask);
        Matrix<S> term = Matrix<S>::identity(dim) - pb.mat;
        op.mat += term.scaled(w);
    }
    return op;
}

/// Closed form for the smallest non-trivial eigenvalue of the single-particle
/// walk on a mean-field hypergraph: sum over sizes of c_l * (n/l) binom(n-2,l-2).
inline Rational sn_mean_field_eigenvalue(int n, const std::vector<Rational>& c) {
    if (static_cast<int>(c.size()) != n + 1)
        throw std::invalid_argument("sn_mean_field_eigenvalue: need c_0..c_n");
    Rational total(0);
    for (int l = 2; l <= n; ++l) {
        if (sgn(c[l]) < 0) throw std::invalid_argument("sn_mean_field_eigenvalue: negative c");
        total += c[l] * Rational(Integer(n) * binomial_mpz(n - 2, l - 2), Integer(l));
    }
    total.canonicalize();
    return total;
}

struct ContainmentReport {
    bool contained = false;
    std::vector<std::pair<double, double>> matches;  // (small value, residual)
    std::vector<double> unmatched;
};

/// Float-mode spectrum containment: greedy multiset matching, every small
/// eigenvalue consuming one big eigenvalue within tol.
inline ContainmentReport spectra_contains_float(const std::vector<double>& small,
                                                const std::vector<double>& big, double tol) {
    ContainmentReport rep;
    std::vector<double> pool = big;
    std::sort(pool.begin(), pool.end());
    std::vector<bool> used(pool.size(), false);
    rep.contained = true;
    for (double v : small) {
        // nearest unused value
        int best = -1;
        double best_err = 0;
        for (size_t i = 0; i < pool.size(); ++i) {
            if (used[i]) continue;
            double err = std::fabs(pool[i] - v);
            if (best < 0 || err < best_err) {
                best = static_cast<int>(i);
                best_err = err;
            }
        }
        if (best >= 0 && best_err <= tol) {
            used[static_cast<size_t>(best)] = true;
            rep.matches.push_back({v, best_err});
        } else {
            rep.contained = false;
            rep.unmatched.push_back(v);
        }
    }
    return rep;
}

/// Exact containment with multiplicity: the characteristic polynomial of the
/// small operator divides that of the big one over Q.
inline bool spectra_contains_exact(const Poly& small_charpoly, const Poly& big_charpoly) {
    return poly::divides(small_charpoly, big_charpoly);
}

} // namespace kmpspectra
