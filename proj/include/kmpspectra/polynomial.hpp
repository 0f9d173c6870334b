#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "kmpspectra/errors.hpp"
#include "kmpspectra/scalar.hpp"

namespace kmpspectra {

/// Polynomials over Q as coefficient vectors, lowest degree first.
/// The zero polynomial is the empty vector.
using Poly = std::vector<Rational>;

namespace poly {

inline void normalize(Poly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }
inline bool is_zero(const Poly& p) { return p.empty(); }

inline Poly constant(const Rational& c) {
    if (sgn(c) == 0) return {};
    return {c};
}

/// x - r
inline Poly linear_root(const Rational& r) { return {-r, Rational(1)}; }

inline Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    normalize(r);
    return r;
}

inline Poly sub(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), Rational(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
    normalize(r);
    return r;
}

inline Poly mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    normalize(r);
    return r;
}

inline Poly scale(const Poly& a, const Rational& c) {
    if (sgn(c) == 0) return {};
    Poly r = a;
    for (auto& x : r) x *= c;
    return r;
}

inline Rational eval(const Poly& p, const Rational& x) {
    Rational r(0);
    for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
    return r;
}

inline double eval_double(const Poly& p, double x) {
    double r = 0;
    for (size_t i = p.size(); i-- > 0;) r = r * x + to_double(p[i]);
    return r;
}

inline Poly derivative(const Poly& p) {
    if (p.size() <= 1) return {};
    Poly r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * Rational(static_cast<long>(i));
    return r;
}

/// Exact Euclidean division. Returns {quotient, remainder}.
inline std::pair<Poly, Poly> divrem(const Poly& a, const Poly& b) {
    if (b.empty()) throw std::invalid_argument("polynomial division by zero");
    Poly rem = a;
    normalize(rem);
    Poly quot(rem.size() >= b.size() ? rem.size() - b.size() + 1 : 1, Rational(0));
    const Rational& lead = b.back();
    while (!rem.empty() && rem.size() >= b.size()) {
        Rational c = rem.back() / lead;
        size_t shift = rem.size() - b.size();
        quot[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) rem[shift + i] -= c * b[i];
        normalize(rem);
    }
    normalize(quot);
    return {quot, rem};
}

/// True iff b divides a exactly over Q.
inline bool divides(const Poly& b, const Poly& a) {
    if (a.empty()) return true;
    if (b.empty()) return false;
    return divrem(a, b).second.empty();
}

inline Poly monic(const Poly& p) {
    if (p.empty()) return p;
    return scale(p, Rational(1) / p.back());
}

/// Multiplicity of the rational root r (0 if not a root).
inline int root_multiplicity(const Poly& p, const Rational& r) {
    Poly q = p;
    int m = 0;
    Poly lin = linear_root(r);
    while (!q.empty() && sgn(eval(q, r)) == 0) {
        q = divrem(q, lin).first;
        ++m;
    }
    return m;
}

// ---------------------------------------------------------------------------
// Sign-preserving primitive pseudo-remainder sequences over Z. Euclidean
// remainders over Q blow up quickly; the primitive PRS keeps coefficients
// small while preserving signs, which is all Sturm counting needs.
// ---------------------------------------------------------------------------

using ZPoly = std::vector<Integer>;

inline int z_degree(const ZPoly& p) { return static_cast<int>(p.size()) - 1; }

inline void z_normalize(ZPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

inline void z_make_primitive(ZPoly& p) {
    Integer g(0);
    for (const auto& c : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (auto& c : p) c /= g;
}

/// Clears denominators and integer content; the cofactor is positive, so all
/// signs (and roots) are preserved.
inline ZPoly to_primitive_integer(const Poly& p) {
    if (p.empty()) return {};
    Integer l(1);
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
    ZPoly z(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Rational c = p[i] * Rational(l);
        z[i] = c.get_num();
    }
    z_normalize(z);
    z_make_primitive(z);
    return z;
}

/// Sign of p(a/b), computed integrally as sign of sum p_i a^i b^(d-i).
inline int z_sign_at(const ZPoly& p, const Rational& x) {
    if (p.empty()) return 0;
    const Integer& a = x.get_num();
    const Integer& b = x.get_den();
    Integer acc = p.back();
    Integer bpow(1);
    for (size_t i = p.size() - 1; i-- > 0;) {
        bpow *= b;
        acc = acc * a + p[i] * bpow;
    }
    return sgn(acc);
}

inline int z_sign_at_pos_infinity(const ZPoly& p) { return p.empty() ? 0 : sgn(p.back()); }

inline int z_sign_at_neg_infinity(const ZPoly& p) {
    if (p.empty()) return 0;
    int s = sgn(p.back());
    return (z_degree(p) % 2 == 0) ? s : -s;
}

namespace detail {

// -rem(f,g) up to a positive constant. Each elimination step multiplies the
// running remainder by lc(g) once, so after t steps the result r satisfies
// lc(g)^t f = q g + r; the sign correction therefore tracks t, not the
// nominal degree gap (degrees can drop by more than one per step).
inline ZPoly neg_rem_positive_multiple(const ZPoly& f, const ZPoly& g) {
    ZPoly rem = f;
    const Integer& lg = g.back();
    int dg = z_degree(g);
    int steps = 0;
    while (true) {
        z_normalize(rem);
        if (rem.empty() || z_degree(rem) < dg) break;
        Integer c = rem.back();
        size_t shift = rem.size() - g.size();
        ZPoly next(rem.size() - 1, Integer(0));
        for (size_t i = 0; i + 1 < rem.size(); ++i) next[i] = rem[i] * lg;
        for (size_t i = 0; i + 1 < g.size(); ++i) next[shift + i] -= c * g[i];
        rem = std::move(next);
        ++steps;
    }
    bool flip_sign = (sgn(lg) < 0) && (steps % 2 == 1);
    for (auto& c : rem) c = flip_sign ? c : -c;
    z_normalize(rem);
    return rem;
}

} // namespace detail

/// Primitive-PRS gcd over Z (signs irrelevant for gcd purposes).
inline ZPoly z_gcd(ZPoly a, ZPoly b) {
    z_normalize(a);
    z_normalize(b);
    if (z_degree(a) < z_degree(b)) std::swap(a, b);
    while (!b.empty()) {
        ZPoly r = detail::neg_rem_positive_multiple(a, b);
        z_make_primitive(r);
        a = std::move(b);
        b = std::move(r);
    }
    z_make_primitive(a);
    return a;
}

/// Monic gcd over Q via the primitive integer PRS.
inline Poly gcd(const Poly& a, const Poly& b) {
    if (a.empty()) return monic(b);
    if (b.empty()) return monic(a);
    ZPoly g = z_gcd(to_primitive_integer(a), to_primitive_integer(b));
    Poly out(g.size());
    for (size_t i = 0; i < g.size(); ++i) out[i] = Rational(g[i]);
    return monic(out);
}

/// Generalized Sturm chain (primitive PRS). Counts distinct real roots via
/// sign-variation differences; works for non-squarefree input too.
struct SturmChain {
    std::vector<ZPoly> seq;

    explicit SturmChain(const Poly& p) {
        ZPoly a = to_primitive_integer(p);
        if (a.empty()) {
            seq.push_back(a);
            return;
        }
        seq.push_back(a);
        if (z_degree(a) == 0) return;
        ZPoly b(a.size() - 1);
        for (size_t i = 1; i < a.size(); ++i) b[i - 1] = a[i] * static_cast<long>(i);
        z_make_primitive(b);
        seq.push_back(b);
        while (z_degree(seq.back()) > 0) {
            ZPoly r = detail::neg_rem_positive_multiple(seq[seq.size() - 2], seq.back());
            if (r.empty()) break;
            z_make_primitive(r);
            seq.push_back(std::move(r));
        }
    }

    int variations_at(const Rational& x) const { return count_variations([&](const ZPoly& q) { return z_sign_at(q, x); }); }
    int variations_at_neg_infinity() const { return count_variations(z_sign_at_neg_infinity); }
    int variations_at_pos_infinity() const { return count_variations(z_sign_at_pos_infinity); }

private:
    template <typename F>
    int count_variations(F sign_of) const {
        int var = 0, prev = 0;
        for (const auto& q : seq) {
            int s = sign_of(q);
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++var;
            prev = s;
        }
        return var;
    }
};

/// Number of distinct real roots in the half-open interval (a, b].
/// Endpoints must not be roots of p for the count to be reliable; callers
/// below arrange that.
inline int count_roots_in(const SturmChain& chain, const Rational& a, const Rational& b) {
    return chain.variations_at(a) - chain.variations_at(b);
}

/// Number of distinct real roots < x0. Correct also when x0 is itself a root
/// (x0 is deflated away first; Sturm evaluation at a root is unreliable).
inline int count_roots_below(const Poly& p, const Rational& x0) {
    Poly q = p;
    normalize(q);
    Poly lin = linear_root(x0);
    while (!q.empty() && sgn(eval(q, x0)) == 0) q = divrem(q, lin).first;
    if (q.size() <= 1) return 0;
    SturmChain chain(q);
    return chain.variations_at_neg_infinity() - chain.variations_at(x0);
}

/// Number of distinct real roots > x0, with the same handling of x0.
inline int count_roots_above(const Poly& p, const Rational& x0) {
    Poly q = p;
    normalize(q);
    Poly lin = linear_root(x0);
    while (!q.empty() && sgn(eval(q, x0)) == 0) q = divrem(q, lin).first;
    if (q.size() <= 1) return 0;
    SturmChain chain(q);
    return chain.variations_at(x0) - chain.variations_at_pos_infinity();
}

inline int count_distinct_real_roots(const Poly& p) {
    if (p.size() <= 1) return 0;
    SturmChain chain(p);
    return chain.variations_at_neg_infinity() - chain.variations_at_pos_infinity();
}

/// Cauchy bound: all real roots lie in (-B, B).
inline Rational root_bound(const Poly& p) {
    if (p.size() <= 1) return Rational(1);
    Rational m(0);
    for (size_t i = 0; i + 1 < p.size(); ++i) {
        Rational a = abs(p[i] / p.back());
        if (a > m) m = a;
    }
    return m + 1;
}

/// The simplest rational (smallest denominator) in the closed interval
/// [lo, hi], by Stern-Brocot descent.
inline Rational simplest_rational_in(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_in: empty interval");
    Integer ceil_lo_z, floor_hi_z;
    mpz_cdiv_q(ceil_lo_z.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(floor_hi_z.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (ceil_lo_z <= floor_hi_z) {
        // An integer fits; prefer the one of least magnitude.
        if (ceil_lo_z <= 0 && floor_hi_z >= 0) return Rational(0);
        return ceil_lo_z > 0 ? Rational(ceil_lo_z) : Rational(floor_hi_z);
    }
    Integer f2;
    mpz_fdiv_q(f2.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    Rational a(f2);
    // lo and hi share the integer part a; recurse on the reciprocals.
    Rational sub = simplest_rational_in(Rational(1) / (hi - a), Rational(1) / (lo - a));
    Rational r = a + Rational(1) / sub;
    r.canonicalize();
    return r;
}

struct RootInterval {
    Rational lo, hi;  // root lies in (lo, hi]
    bool exact = false;
    Rational value;  // set when exact

    Rational midpoint() const { return exact ? value : (lo + hi) / 2; }
};

/// Isolates the smallest (or largest) real root of p to a bracket of width
/// below `width`, then tries to recognize it as a rational (verified by
/// exact evaluation; denominators of immoderate height stay unrecognized).
inline RootInterval isolate_extreme_root(const Poly& p, bool smallest,
                                         int precision_bits = 96) {
    if (count_distinct_real_roots(p) == 0)
        throw internal_error("isolate_extreme_root: polynomial has no real roots");
    SturmChain chain(p);
    Rational B = root_bound(p);
    Rational lo = -B, hi = B;
    Rational width = Rational(1) / Rational(Integer(1) << precision_bits);
    int vneg = chain.variations_at_neg_infinity();
    int total = vneg - chain.variations_at_pos_infinity();
    while (hi - lo > width) {
        Rational mid = (lo + hi) / 2;
        if (sgn(eval(p, mid)) == 0) {
            // mid is a root; it is extreme iff nothing lies beyond it.
            // (Sturm evaluation exactly at a root is unreliable, so the
            // one-sided counts below deflate mid away first.)
            bool extreme = smallest ? (count_roots_below(p, mid) == 0)
                                    : (count_roots_above(p, mid) == 0);
            if (extreme) {
                RootInterval r;
                r.lo = mid;
                r.hi = mid;
                r.exact = true;
                r.value = mid;
                return r;
            }
            // Deflate and retry on the quotient.
            Poly q = p;
            Poly lin = linear_root(mid);
            while (!q.empty() && sgn(eval(q, mid)) == 0) q = divrem(q, lin).first;
            return isolate_extreme_root(q, smallest, precision_bits);
        }
        int below = vneg - chain.variations_at(mid);
        if (smallest) {
            if (below >= 1)
                hi = mid;
            else
                lo = mid;
        } else {
            if (below >= total)
                hi = mid;
            else
                lo = mid;
        }
    }
    RootInterval r;
    r.lo = lo;
    r.hi = hi;
    Rational cand = simplest_rational_in(lo, hi);
    if (sgn(eval(p, cand)) == 0) {
        r.exact = true;
        r.value = cand;
    }
    return r;
}

/// Isolates every distinct real root: disjoint brackets (lo, hi] of width
/// below 2^-precision_bits, each holding exactly one root, sorted ascending.
/// Roots recognized as rationals (verified by exact evaluation) are flagged.
inline std::vector<RootInterval> isolate_real_roots(const Poly& p, int precision_bits = 96) {
    std::vector<RootInterval> out;
    Poly q = p;
    normalize(q);
    if (q.size() <= 1) return out;
    SturmChain chain(q);
    Rational B = root_bound(q);
    Rational width = Rational(1) / Rational(Integer(1) << precision_bits);
    struct Seg {
        Rational lo, hi;
        int count;
    };
    std::vector<Seg> stack;
    int total = chain.variations_at(-B) - chain.variations_at(B);
    if (total > 0) stack.push_back({-B, B, total});
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.count == 1 && s.hi - s.lo <= width) {
            RootInterval r;
            r.lo = s.lo;
            r.hi = s.hi;
            Rational cand = sgn(eval(q, s.hi)) == 0 ? s.hi : simplest_rational_in(s.lo, s.hi);
            if (sgn(eval(q, cand)) == 0 && cand > s.lo && cand <= s.hi) {
                r.exact = true;
                r.value = cand;
            }
            out.push_back(r);
            continue;
        }
        // Split at a point that is not a root (finitely many roots, so some
        // small-denominator cut works).
        Rational cut;
        bool found = false;
        for (long den = 2; den < 1000 && !found; ++den) {
            cut = s.lo + (s.hi - s.lo) / den;
            if (sgn(eval(q, cut)) != 0) found = true;
        }
        if (!found) throw internal_error("isolate_real_roots: could not split interval");
        int left = chain.variations_at(s.lo) - chain.variations_at(cut);
        int right = s.count - left;
        if (left > 0) stack.push_back({s.lo, cut, left});
        if (right > 0) stack.push_back({cut, s.hi, right});
    }
    std::sort(out.begin(), out.end(),
              [](const RootInterval& a, const RootInterval& b) { return a.hi < b.hi; });
    return out;
}

/// Extracts all recognizable rational roots with multiplicities; returns them
/// sorted together with the deflated residual.
inline std::pair<std::vector<std::pair<Rational, int>>, Poly> extract_rational_roots(
    const Poly& p) {
    std::vector<std::pair<Rational, int>> roots;
    Poly cur = p;
    normalize(cur);
    int zero_mult = 0;
    while (cur.size() > 1 && sgn(cur.front()) == 0) {
        cur.erase(cur.begin());
        ++zero_mult;
    }
    if (zero_mult > 0) roots.push_back({Rational(0), zero_mult});
    if (cur.size() > 1) {
        for (const auto& ri : isolate_real_roots(cur)) {
            if (!ri.exact) continue;
            int m = root_multiplicity(cur, ri.value);
            roots.push_back({ri.value, m});
        }
        for (const auto& [r, m] : roots) {
            if (sgn(r) == 0) continue;
            Poly lin = linear_root(r);
            for (int i = 0; i < m; ++i) cur = divrem(cur, lin).first;
        }
    }
    std::sort(roots.begin(), roots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return {roots, cur};
}

namespace detail {

/// Is x0 the smallest root of p? (exact; x0 must be a root)
inline bool is_smallest_root(const Poly& p, const Rational& x0) {
    return sgn(eval(p, x0)) == 0 && count_roots_below(p, x0) == 0;
}

} // namespace detail

/// Exact three-way comparison of the smallest real roots of two polynomials
/// (each must have one). Ties are certified through the gcd rather than
/// guessed from finite precision.
inline int compare_smallest_roots(const Poly& a, const Poly& b) {
    for (int bits = 96; bits <= 1536; bits *= 2) {
        RootInterval ra = isolate_extreme_root(a, true, bits);
        RootInterval rb = isolate_extreme_root(b, true, bits);
        if (ra.exact && rb.exact) return ra.value < rb.value ? -1 : (ra.value > rb.value ? 1 : 0);
        if (ra.exact) {
            if (detail::is_smallest_root(b, ra.value)) return 0;
            if (ra.value <= rb.lo) return -1;
            if (ra.value > rb.hi) return 1;
            continue;  // b's root is inside the bracket near ra.value: refine
        }
        if (rb.exact) {
            if (detail::is_smallest_root(a, rb.value)) return 0;
            if (rb.value <= ra.lo) return 1;
            if (rb.value > ra.hi) return -1;
            continue;
        }
        if (ra.hi < rb.lo) return -1;
        if (rb.hi < ra.lo) return 1;
        // Overlapping brackets: equal is possible only through a shared root.
        Poly g = gcd(a, b);
        if (degree(g) >= 1 && count_distinct_real_roots(g) > 0) {
            RootInterval rs = isolate_extreme_root(g, true, bits);
            if (rs.exact) {
                if (detail::is_smallest_root(a, rs.value) && detail::is_smallest_root(b, rs.value))
                    return 0;
            } else if (sgn(eval(a, rs.lo)) != 0 && sgn(eval(b, rs.lo)) != 0) {
                SturmChain ca(a), cb(b);
                bool a_matches = count_roots_below(a, rs.lo) == 0 &&
                                 count_roots_in(ca, rs.lo, rs.hi) == 1;
                bool b_matches = count_roots_below(b, rs.lo) == 0 &&
                                 count_roots_in(cb, rs.lo, rs.hi) == 1;
                if (a_matches && b_matches) return 0;
            }
        }
        // Not provably equal at this precision: refine and retry.
    }
    throw internal_error("compare_smallest_roots: failed to separate roots");
}

} // namespace poly
} // namespace kmpspectra
