#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "kmpspectra/errors.hpp"
#include "kmpspectra/matrix.hpp"
#include "kmpspectra/polynomial.hpp"

namespace kmpspectra {
namespace charpoly {

/// Division-free characteristic polynomial (Samuelson-Berkowitz).
/// O(n^4) ring operations; the method of record for small matrices and the
/// cross-check oracle for the modular path below.
template <typename S>
Poly berkowitz(const Matrix<S>& A) {
    size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("charpoly: matrix not square");
    // Coefficient vectors, highest degree first.
    std::vector<S> p = {scalar_traits<S>::one()};
    for (size_t r = 1; r <= n; ++r) {
        // Principal r x r block, partitioned around its last row/column.
        // Sequence s_0=1, s_1=-a, s_j=-R B^(j-2) C for the Toeplitz update.
        std::vector<S> s(r + 1, scalar_traits<S>::zero());
        s[0] = scalar_traits<S>::one();
        s[1] = -A(r - 1, r - 1);
        if (r >= 2) {
            std::vector<S> v(r - 1);  // running B^j C
            for (size_t i = 0; i < r - 1; ++i) v[i] = A(i, r - 1);
            for (size_t j = 2; j <= r; ++j) {
                S dotRV = scalar_traits<S>::zero();
                for (size_t i = 0; i < r - 1; ++i) dotRV += A(r - 1, i) * v[i];
                s[j] = -dotRV;
                if (j < r) {
                    std::vector<S> nv(r - 1, scalar_traits<S>::zero());
                    for (size_t i = 0; i < r - 1; ++i) {
                        for (size_t t = 0; t < r - 1; ++t) nv[i] += A(i, t) * v[t];
                    }
                    v = std::move(nv);
                }
            }
        }
        // Toeplitz product: np[i] = sum_j s[i-j] p[j].
        std::vector<S> np(r + 1, scalar_traits<S>::zero());
        for (size_t i = 0; i <= r; ++i) {
            S acc = scalar_traits<S>::zero();
            for (size_t j = 0; j < p.size() && j <= i; ++j) acc += s[i - j] * p[j];
            np[i] = acc;
        }
        p = std::move(np);
    }
    // Convert to lowest-degree-first rationals.
    Poly out(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        if constexpr (std::is_same_v<S, Rational>)
            out[i] = p[n - i];
        else
            out[i] = Rational(p[n - i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Modular characteristic polynomial: Hessenberg reduction + recurrence mod
// word-size primes, CRT-reconstructed against a Hadamard-style bound. This is
// how exact char-polys of matrices beyond a couple dozen rows stay fast.
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

inline uint64_t invmod(uint64_t a, uint64_t p) { return powmod(a, p - 2, p); }

inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) d >>= 1, ++s;
    for (uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

inline std::vector<uint64_t>& prime_pool() {
    static std::vector<uint64_t> primes;
    return primes;
}

inline uint64_t nth_prime(size_t i) {
    auto& primes = prime_pool();
    static uint64_t cursor = (1ULL << 62) - 1;
    while (primes.size() <= i) {
        while (!is_prime_u64(cursor)) cursor -= 2;
        primes.push_back(cursor);
        cursor -= 2;
    }
    return primes[i];
}

/// Char-poly of an n x n matrix over Z/p, monic, lowest degree first.
inline std::vector<uint64_t> charpoly_mod_p(std::vector<std::vector<uint64_t>> H, uint64_t p) {
    size_t n = H.size();
    auto sub = [&](uint64_t a, uint64_t b) { return (a + p - b % p) % p; };
    // Similarity reduction to upper Hessenberg.
    for (size_t j = 0; j + 2 < n; ++j) {
        size_t piv = j + 1;
        while (piv < n && H[piv][j] % p == 0) ++piv;
        if (piv == n) continue;
        if (piv != j + 1) {
            std::swap(H[piv], H[j + 1]);
            for (size_t r = 0; r < n; ++r) std::swap(H[r][piv], H[r][j + 1]);
        }
        uint64_t inv = invmod(H[j + 1][j] % p, p);
        for (size_t i = j + 2; i < n; ++i) {
            uint64_t f = mulmod(H[i][j] % p, inv, p);
            if (f == 0) continue;
            for (size_t c = 0; c < n; ++c) H[i][c] = sub(H[i][c] % p, mulmod(f, H[j + 1][c] % p, p));
            for (size_t r = 0; r < n; ++r) H[r][j + 1] = (H[r][j + 1] % p + mulmod(f, H[r][i] % p, p)) % p;
        }
    }
    // p_m(x) = (x - h_mm) p_{m-1}(x) - sum_i h_im (prod of subdiagonals) p_{i-1}(x)
    std::vector<std::vector<uint64_t>> polys(n + 1);
    polys[0] = {1};
    for (size_t m = 1; m <= n; ++m) {
        const auto& pm1 = polys[m - 1];
        std::vector<uint64_t> cur(m + 1, 0);
        uint64_t hmm = H[m - 1][m - 1] % p;
        for (size_t i = 0; i < pm1.size(); ++i) {
            cur[i + 1] = (cur[i + 1] + pm1[i]) % p;
            cur[i] = sub(cur[i], mulmod(hmm, pm1[i], p));
        }
        uint64_t prod = 1;
        for (size_t i = m - 1; i >= 1; --i) {
            prod = mulmod(prod, H[i][i - 1] % p, p);
            uint64_t coef = mulmod(H[i - 1][m - 1] % p, prod, p);
            if (coef != 0) {
                const auto& pi = polys[i - 1];
                for (size_t t = 0; t < pi.size(); ++t) cur[t] = sub(cur[t], mulmod(coef, pi[t], p));
            }
        }
        polys[m] = std::move(cur);
    }
    return polys[n];
}

} // namespace detail

/// Exact characteristic polynomial of a rational matrix via CRT over primes.
/// The denominators of the result divide powers of the entry-lcm, so integer
/// reconstruction applies after scaling; the prime count is driven by a
/// rigorous Hadamard-style bound, making the result certified, not heuristic.
inline Poly modular(const Matrix<Rational>& A) {
    size_t n = A.rows();
    if (A.cols() != n) throw std::invalid_argument("charpoly: matrix not square");
    if (n == 0) return {Rational(1)};
    // D = lcm of denominators; the scaled matrix D*A is integral.
    Integer D(1);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), A(i, j).get_den().get_mpz_t());
    Integer maxabs(0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            Integer v = abs(Integer(A(i, j).get_num() * (D / A(i, j).get_den())));
            if (v > maxabs) maxabs = v;
        }
    size_t entry_bits = maxabs == 0 ? 1 : mpz_sizeinbase(maxabs.get_mpz_t(), 2);
    size_t log2n = 1;
    while ((size_t(1) << log2n) < n) ++log2n;
    // |coef of char(D*A)| <= 2^n * (sqrt(n) * maxabs)^n
    size_t bound_bits = n + n * (log2n / 2 + 1 + entry_bits) + 16;

    std::vector<uint64_t> primes;
    {
        size_t bits = 0;
        for (size_t i = 0; bits <= bound_bits + 1; ++i) {
            uint64_t p = detail::nth_prime(i);
            // Skip primes dividing D (cannot invert denominators there).
            if (mpz_divisible_ui_p(D.get_mpz_t(), p)) continue;
            primes.push_back(p);
            bits += 61;
        }
    }

    // Residues of the unscaled char-poly coefficients c_i, lifted through the
    // integers a_i = c_i * D^(n-i).
    std::vector<std::vector<uint64_t>> residues(primes.size());
    for (size_t pi = 0; pi < primes.size(); ++pi) {
        uint64_t p = primes[pi];
        std::vector<std::vector<uint64_t>> M(n, std::vector<uint64_t>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                const Rational& q = A(i, j);
                uint64_t num = mpz_fdiv_ui(q.get_num().get_mpz_t(), p);
                uint64_t den = mpz_fdiv_ui(q.get_den().get_mpz_t(), p);
                M[i][j] = detail::mulmod(num, detail::invmod(den, p), p);
            }
        auto cp = detail::charpoly_mod_p(std::move(M), p);
        uint64_t Dp = mpz_fdiv_ui(D.get_mpz_t(), p);
        // a_i = c_i * D^(n-i) mod p
        std::vector<uint64_t> a(n + 1);
        uint64_t dpow = 1;
        for (size_t i = n + 1; i-- > 0;) {
            a[i] = detail::mulmod(cp[i], dpow, p);
            dpow = detail::mulmod(dpow, Dp, p);
        }
        residues[pi] = std::move(a);
    }

    // Incremental CRT per coefficient, lifted to the symmetric range.
    Poly out(n + 1);
    for (size_t i = 0; i <= n; ++i) {
        Integer X(0), M(1);
        for (size_t pi = 0; pi < primes.size(); ++pi) {
            uint64_t p = primes[pi];
            uint64_t xmodp = mpz_fdiv_ui(X.get_mpz_t(), p);
            uint64_t Mmodp = mpz_fdiv_ui(M.get_mpz_t(), p);
            uint64_t delta = (residues[pi][i] + p - xmodp) % p;
            uint64_t t = detail::mulmod(delta, detail::invmod(Mmodp, p), p);
            X += M * Integer(static_cast<unsigned long>(t));
            M *= static_cast<unsigned long>(p);
        }
        if (X * 2 > M) X -= M;
        // c_i = a_i / D^(n-i)
        Integer dpow;
        mpz_pow_ui(dpow.get_mpz_t(), D.get_mpz_t(), static_cast<unsigned long>(n - i));
        Rational c(X, dpow);
        c.canonicalize();
        out[i] = c;
    }
    if (out[n] != 1) throw internal_error("modular charpoly: reconstruction not monic");
    return out;
}

/// Exact characteristic polynomial, choosing the method by size.
inline Poly of_matrix(const Matrix<Rational>& A) {
    if (A.rows() <= 24) return berkowitz(A);
    return modular(A);
}

/// Char-poly of a matrix known (and verified) to be block-diagonal with
/// respect to a labeling of the basis: the product of the blocks' polys.
template <typename Label>
Poly by_invariant_blocks(const Matrix<Rational>& A, const std::vector<Label>& labels) {
    size_t n = A.rows();
    if (labels.size() != n) throw std::invalid_argument("block charpoly: label count mismatch");
    std::map<Label, std::vector<size_t>> groups;
    for (size_t i = 0; i < n; ++i) groups[labels[i]].push_back(i);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (!(labels[i] == labels[j]) && sgn(A(i, j)) != 0)
                throw internal_error("block charpoly: matrix not block-diagonal for labeling");
    Poly result = {Rational(1)};
    for (const auto& [label, idx] : groups) {
        Matrix<Rational> block(idx.size(), idx.size());
        for (size_t a = 0; a < idx.size(); ++a)
            for (size_t b = 0; b < idx.size(); ++b) block(a, b) = A(idx[a], idx[b]);
        result = poly::mul(result, of_matrix(block));
    }
    return result;
}

} // namespace charpoly
} // namespace kmpspectra
