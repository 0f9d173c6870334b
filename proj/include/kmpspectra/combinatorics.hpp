#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "kmpspectra/scalar.hpp"

namespace kmpspectra {

/// binom(n,k) with the convention binom(n,k)=0 for k<0 or k>n.
inline long long binomial(long n, long k) {
    if (k < 0 || k > n || n < 0) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline Integer binomial_mpz(long n, long k) {
    if (k < 0 || k > n || n < 0) return Integer(0);
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

/// Number of size-k multisets over an n-element set: binom(n+k-1,k).
inline long long multiset_count(long n, long k) {
    if (k == 0) return 1;
    return binomial(n + k - 1, k);
}

inline Integer factorial_mpz(long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

/// An integer partition: non-increasing positive parts.
struct Partition {
    std::vector<int> parts;

    Partition() = default;
    explicit Partition(std::vector<int> p) : parts(std::move(p)) {
        for (size_t i = 0; i < parts.size(); ++i) {
            if (parts[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts[i] > parts[i - 1])
                throw std::invalid_argument("partition parts must be non-increasing");
        }
    }

    int size() const {
        int s = 0;
        for (int p : parts) s += p;
        return s;
    }
    int length() const { return static_cast<int>(parts.size()); }

    bool operator==(const Partition& o) const { return parts == o.parts; }
    bool operator<(const Partition& o) const { return parts < o.parts; }
};

/// All partitions of k in reverse-lexicographic order: (k) first, (1^k) last.
inline std::vector<Partition> partitions_of(int k) {
    if (k < 0) throw std::invalid_argument("partitions_of: negative argument");
    if (k > 12) throw std::invalid_argument("partitions_of: k > 12 unsupported");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int maxpart) -> void {
        if (remaining == 0) {
            out.emplace_back();
            out.back().parts = cur;
            return;
        }
        for (int p = std::min(remaining, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, k, k);
    return out;
}

/// A conjugacy class of Sym(k), described by its cycle structure.
struct CycleType {
    Partition cycles;

    explicit CycleType(Partition p) : cycles(std::move(p)) {}
    int group_degree() const { return cycles.size(); }

    /// Class size k!/z where z is the centralizer order.
    Integer class_size() const {
        int k = cycles.size();
        Integer z(1);
        std::map<int, int> mult;
        for (int c : cycles.parts) ++mult[c];
        for (auto [len, m] : mult) {
            for (int i = 1; i <= m; ++i) z *= len * i;
        }
        Integer cs = factorial_mpz(k) / z;
        return cs;
    }

    int sign() const {
        int s = 0;
        for (int c : cycles.parts) s += c - 1;
        return (s % 2 == 0) ? 1 : -1;
    }
};

namespace detail {

inline Integer hook_product(const std::vector<int>& parts) {
    // conjugate column lengths
    int rows = static_cast<int>(parts.size());
    Integer prod(1);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < parts[i]; ++j) {
            int arm = parts[i] - j - 1;
            int leg = 0;
            for (int r = i + 1; r < rows; ++r)
                if (parts[r] > j) ++leg;
            prod *= (arm + leg + 1);
        }
    }
    return prod;
}

} // namespace detail

/// Dimension of the Sym(|nu|)-irrep labeled by nu, by the hook length formula.
inline long long sym_irrep_dim(const Partition& nu) {
    int k = nu.size();
    if (k == 0) return 1;
    Integer d = factorial_mpz(k) / detail::hook_product(nu.parts);
    return d.get_si();
}

/// Dimension of the polynomial U(d)-irrep labeled by nu (hook content
/// formula, i.e. the Schur polynomial on d ones). Zero when nu has more
/// than d rows.
inline Integer unitary_irrep_dim_polynomial_case(const Partition& nu, long d) {
    if (d < 1) throw std::invalid_argument("unitary_irrep_dim: d must be >= 1");
    if (nu.length() > d) return Integer(0);
    Integer num(1);
    for (int i = 0; i < nu.length(); ++i)
        for (int j = 0; j < nu.parts[i]; ++j)
            num *= Integer(d + j - i);
    return num / detail::hook_product(nu.parts);
}

namespace detail {

// Character recursion in beta-set form. Removing a border strip of length r
// moves one beta number down by r; the sign is (-1)^(number of beta numbers
// jumped over).
inline long long mn_character(std::vector<int> beta, std::vector<int> cycles);

inline std::map<std::pair<std::vector<int>, std::vector<int>>, long long>& mn_memo() {
    static std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
    return memo;
}
inline std::mutex& mn_mutex() {
    static std::mutex m;
    return m;
}

inline long long mn_character(std::vector<int> beta, std::vector<int> cycles) {
    if (cycles.empty()) return 1;
    {
        std::lock_guard<std::mutex> lock(mn_mutex());
        auto it = mn_memo().find({beta, cycles});
        if (it != mn_memo().end()) return it->second;
    }
    int r = cycles.back();
    std::vector<int> rest(cycles.begin(), cycles.end() - 1);
    long long total = 0;
    for (size_t i = 0; i < beta.size(); ++i) {
        int target = beta[i] - r;
        if (target < 0) continue;
        if (std::find(beta.begin(), beta.end(), target) != beta.end()) continue;
        int jumped = 0;
        for (int b : beta)
            if (b > target && b < beta[i]) ++jumped;
        std::vector<int> nb = beta;
        nb[i] = target;
        std::sort(nb.begin(), nb.end());
        long long sub = mn_character(nb, rest);
        total += (jumped % 2 == 0) ? sub : -sub;
    }
    {
        std::lock_guard<std::mutex> lock(mn_mutex());
        mn_memo()[{beta, cycles}] = total;
    }
    return total;
}

} // namespace detail

/// Integer character value of the Sym(k)-irrep nu at the class c,
/// by the border-strip (Murnaghan-Nakayama) recursion with memoization.
inline long long sym_character(const Partition& nu, const CycleType& c) {
    if (nu.size() != c.group_degree())
        throw std::invalid_argument("sym_character: |nu| must equal the degree of the class");
    int len = nu.length();
    std::vector<int> beta(len);
    for (int i = 0; i < len; ++i)
        beta[i] = nu.parts[i] + (len - 1 - i);
    std::sort(beta.begin(), beta.end());
    std::vector<int> cycles = c.cycles.parts;
    std::sort(cycles.begin(), cycles.end()); // remove longest strips first
    return detail::mn_character(beta, cycles);
}

} // namespace kmpspectra
