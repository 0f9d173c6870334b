#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "kmpspectra/prng.hpp"
#include "kmpspectra/scalar.hpp"

namespace kmpspectra {

inline int popcount32(uint32_t x) { return __builtin_popcount(x); }

/// A weighted hypergraph on vertices {1..n}: a nonnegative weight per subset
/// of the vertex set, keyed by bitmask (bit i-1 <-> vertex i). Absent keys
/// mean weight zero. Immutable by convention after construction.
template <typename S>
struct Hypergraph {
    int n = 0;
    std::map<uint32_t, S> weights;  // ordered: deterministic iteration

    Hypergraph() = default;
    explicit Hypergraph(int n_) : n(n_) {
        if (n < 1 || n > 12) throw std::invalid_argument("Hypergraph: need 1 <= n <= 12");
    }

    void add_weight(uint32_t mask, const S& w) {
        if (mask >= (1u << n)) throw std::invalid_argument("Hypergraph: subset outside vertex set");
        auto it = weights.find(mask);
        if (it == weights.end())
            weights.emplace(mask, w);
        else
            it->second = it->second + w;
    }

    S weight(uint32_t mask) const {
        auto it = weights.find(mask);
        return it == weights.end() ? scalar_traits<S>::zero() : it->second;
    }

    S total_weight() const {
        S t = scalar_traits<S>::zero();
        for (const auto& [m, w] : weights) t += w;
        return t;
    }
};

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
};

inline std::string mask_to_string(uint32_t mask, int n) {
    std::string s = "{";
    bool first = true;
    for (int v = 1; v <= n; ++v)
        if (mask & (1u << (v - 1))) {
            if (!first) s += ",";
            s += std::to_string(v);
            first = false;
        }
    return s + "}";
}

/// Checks non-negativity and key validity. Weights on subsets of size <= 1
/// are legal but inert for every particle process, so they only earn a note.
template <typename S>
ValidationReport validate(const Hypergraph<S>& g) {
    ValidationReport r;
    for (const auto& [mask, w] : g.weights) {
        if (mask >= (1u << g.n)) {
            r.ok = false;
            r.violations.push_back("subset " + mask_to_string(mask, 12) + " outside vertex set");
        }
        if (scalar_traits<S>::sign(w) < 0) {
            r.ok = false;
            r.violations.push_back("negative weight on " + mask_to_string(mask, g.n));
        }
        if (popcount32(mask) <= 1 && !scalar_traits<S>::is_zero(w))
            r.notes.push_back("weight on size-" + std::to_string(popcount32(mask)) + " subset " +
                              mask_to_string(mask, g.n) + " contributes nothing to particle dynamics");
    }
    return r;
}

/// Connectivity of the support hypergraph (hyperedges of size >= 2 with
/// nonzero weight), via union-find.
template <typename S>
bool is_connected(const Hypergraph<S>& g) {
    std::vector<int> parent(g.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& [mask, w] : g.weights) {
        if (scalar_traits<S>::is_zero(w) || popcount32(mask) < 2) continue;
        int first = -1;
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v)) {
                if (first < 0)
                    first = v;
                else
                    parent[find(v)] = find(first);
            }
    }
    int root = find(0);
    for (int v = 1; v < g.n; ++v)
        if (find(v) != root) return false;
    return true;
}

template <typename S>
struct PhiProfile {
    std::vector<S> per_vertex;
    S minimum;
};

/// phi_i = total weight of hyperedges containing vertex i; the minimum over
/// vertices upper-bounds every smallest new eigenvalue of the particle
/// processes.
template <typename S>
PhiProfile<S> phi(const Hypergraph<S>& g) {
    PhiProfile<S> p;
    p.per_vertex.assign(g.n, scalar_traits<S>::zero());
    for (const auto& [mask, w] : g.weights)
        for (int v = 0; v < g.n; ++v)
            if (mask & (1u << v)) p.per_vertex[v] += w;
    p.minimum = p.per_vertex[0];
    for (int v = 1; v < g.n; ++v)
        if (p.per_vertex[v] < p.minimum) p.minimum = p.per_vertex[v];
    return p;
}

/// Mean-field hypergraph: weight of a subset depends only on its size,
/// w_B = c_{|B|} with c = (c_0, ..., c_n).
template <typename S>
Hypergraph<S> mean_field(int n, const std::vector<S>& c) {
    if (static_cast<int>(c.size()) != n + 1)
        throw std::invalid_argument("mean_field: need n+1 coefficients c_0..c_n");
    for (const auto& w : c)
        if (scalar_traits<S>::sign(w) < 0)
            throw std::invalid_argument("mean_field: negative coefficient");
    Hypergraph<S> g(n);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        const S& w = c[popcount32(mask)];
        if (!scalar_traits<S>::is_zero(w)) g.add_weight(mask, w);
    }
    return g;
}

/// Codimension-1 hypergraph: weight c_x on the subset [n] \ {x}, x = 1..n.
template <typename S>
Hypergraph<S> codim1(int n, const std::vector<S>& c) {
    if (static_cast<int>(c.size()) != n)
        throw std::invalid_argument("codim1: need n coefficients c_1..c_n");
    for (const auto& w : c)
        if (scalar_traits<S>::sign(w) < 0)
            throw std::invalid_argument("codim1: negative coefficient");
    Hypergraph<S> g(n);
    uint32_t full = (1u << n) - 1;
    for (int x = 1; x <= n; ++x) {
        if (!scalar_traits<S>::is_zero(c[x - 1]))
            g.add_weight(full ^ (1u << (x - 1)), c[x - 1]);
    }
    return g;
}

enum class WeightLaw { Unit, Uniform01, Exponential };

inline WeightLaw weight_law_from_string(const std::string& s) {
    if (s == "unit") return WeightLaw::Unit;
    if (s == "uniform01") return WeightLaw::Uniform01;
    if (s == "exponential") return WeightLaw::Exponential;
    throw std::invalid_argument("unknown weight law: " + s);
}

/// Random hypergraph: every subset of size >= 2 is included independently
/// with probability p, weighted per the law. Fully reproducible: fixed PRNG
/// (splitmix64), subsets visited in increasing bitmask order, two draws per
/// subset whether or not it is included. Weights are drawn as doubles and
/// stored exactly (dyadic rationals) in exact mode, so both modes see the
/// same hypergraph.
template <typename S>
Hypergraph<S> random_hypergraph(int n, double p, WeightLaw law, uint64_t seed) {
    if (p < 0 || p > 1) throw std::invalid_argument("random_hypergraph: need 0 <= p <= 1");
    Hypergraph<S> g(n);
    SplitMix64 rng(seed);
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (popcount32(mask) < 2) continue;
        double toss = rng.next_double();
        double draw = rng.next_double();
        if (toss >= p) continue;
        double w = 1.0;
        switch (law) {
            case WeightLaw::Unit: w = 1.0; break;
            case WeightLaw::Uniform01: w = draw; break;
            case WeightLaw::Exponential: w = -std::log1p(-draw); break;
        }
        if constexpr (is_exact_scalar_v<S>)
            g.add_weight(mask, rational_from_double(w));
        else
            g.add_weight(mask, w);
    }
    return g;
}

template <typename S>
Hypergraph<Rational> to_rational_hypergraph(const Hypergraph<S>& g) {
    Hypergraph<Rational> r(g.n);
    for (const auto& [mask, w] : g.weights) {
        if constexpr (is_exact_scalar_v<S>)
            r.add_weight(mask, w);
        else
            r.add_weight(mask, rational_from_double(w));
    }
    return r;
}

template <typename S>
Hypergraph<double> to_double_hypergraph(const Hypergraph<S>& g) {
    Hypergraph<double> r(g.n);
    for (const auto& [mask, w] : g.weights) r.add_weight(mask, to_double(w));
    return r;
}

} // namespace kmpspectra
