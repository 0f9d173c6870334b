#pragma once

#include <stdexcept>
#include <vector>

#include "kmpspectra/combinatorics.hpp"

namespace kmpspectra {

/// The ordered basis of k-element multisets over [n] (vertices 1..n),
/// enumerated colexicographically on sorted tuples. Colex has the property
/// that appending a particle at the largest vertex extends the order, so
/// embeddings between particle counts keep prefix ranks stable.
class MultisetSpace {
public:
    MultisetSpace(int n, int k) : n_(n), k_(k) {
        if (n < 1 || k < 0) throw std::invalid_argument("MultisetSpace: need n >= 1, k >= 0");
        dim_ = multiset_count(n, k);
    }

    int n() const { return n_; }
    int k() const { return k_; }
    long long dimension() const { return dim_; }

    /// Rank of a sorted multiset (1-based entries) in colex order.
    long long rank(const std::vector<int>& m) const {
        validate(m);
        long long r = 0;
        for (int t = 1; t <= k_; ++t)
            r += binomial(m[t - 1] + t - 2, t);
        return r;
    }

    /// Inverse of rank.
    std::vector<int> unrank(long long idx) const {
        if (idx < 0 || idx >= dim_) throw std::invalid_argument("unrank: index out of range");
        std::vector<int> m(k_);
        for (int t = k_; t >= 1; --t) {
            int v = n_;
            while (v >= 1 && binomial(v + t - 2, t) > idx) --v;
            m[t - 1] = v;
            idx -= binomial(v + t - 2, t);
        }
        return m;
    }

    std::vector<std::vector<int>> all_states() const {
        std::vector<std::vector<int>> out;
        out.reserve(static_cast<size_t>(dim_));
        for (long long i = 0; i < dim_; ++i) out.push_back(unrank(i));
        return out;
    }

    /// Multiplicity of vertex x (1-based) in the multiset.
    static int multiplicity(const std::vector<int>& m, int x) {
        int c = 0;
        for (int v : m)
            if (v == x) ++c;
        return c;
    }

    /// Number of distinct arrangements of the multiset: k!/prod(mult!).
    static long long arrangement_count(const std::vector<int>& m) {
        Integer num = factorial_mpz(static_cast<long>(m.size()));
        Integer den(1);
        size_t i = 0;
        while (i < m.size()) {
            size_t j = i;
            while (j < m.size() && m[j] == m[i]) ++j;
            den *= factorial_mpz(static_cast<long>(j - i));
            i = j;
        }
        return Integer(num / den).get_si();
    }

private:
    void validate(const std::vector<int>& m) const {
        if (static_cast<int>(m.size()) != k_)
            throw std::invalid_argument("multiset has wrong size");
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] < 1 || m[i] > n_)
                throw std::invalid_argument("multiset entry out of range");
            if (i > 0 && m[i] < m[i - 1])
                throw std::invalid_argument("multiset must be sorted non-decreasingly");
        }
    }

    int n_;
    int k_;
    long long dim_;
};

} // namespace kmpspectra
