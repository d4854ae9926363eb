#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "characters.hpp"
#include "errors.hpp"
#include "rootdata.hpp"
#include "weight.hpp"

namespace lierep {

// The two diagram-automorphism pairs:
//   even: SL_{2n} (A_{2n-1})  <->  Spin_{2n+1} (B_n)
//   odd:  SL_{2n+1} (A_{2n})  <->  Sp_{2n} (C_n)
class PairKind {
  public:
    enum Kind { even, odd };

    PairKind(Kind kind, int n) : kind_(kind), n_(n) {
        if (n < 2)
            throw InvalidArgument("pair requires n >= 2, got " + std::to_string(n));
    }

    Kind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    bool is_even() const noexcept { return kind_ == even; }
    Family sl_family() const { return Family(Letter::A, kind_ == even ? 2 * n_ - 1 : 2 * n_); }
    Family folded_family() const { return Family(kind_ == even ? Letter::B : Letter::C, n_); }
    std::string name() const { return kind_ == even ? "even" : "odd"; }
    std::string to_string() const {
        return name() + " n=" + std::to_string(n_) + " (" + sl_family().to_string() + "-" +
               folded_family().to_string() + ")";
    }
    bool operator==(const PairKind &) const = default;

  private:
    Kind kind_;
    int n_;
};

inline PairKind::Kind parse_pair_kind(std::string_view s) {
    if (s == "even") return PairKind::even;
    if (s == "odd") return PairKind::odd;
    throw InvalidArgument("unknown pair '" + std::string(s) + "' (expected even or odd)");
}

// Element of Z/2; 0 is the trivial character.
struct CentralCharacter {
    int value = 0;
    bool trivial() const noexcept { return value == 0; }
    friend CentralCharacter operator*(CentralCharacter a, CentralCharacter b) noexcept {
        return {(a.value + b.value) & 1};
    }
    bool operator==(const CentralCharacter &) const = default;
};

namespace detail {
inline void require_length(const Weight &w, std::size_t n, const char *what) {
    if (w.size() != n)
        throw InvalidArgument(std::string(what) + ": weight " + w.to_string() + " has length " +
                              std::to_string(w.size()) + ", expected " + std::to_string(n));
}
} // namespace detail

// [a_1..a_n] -> [a_1..a_{n-1}, a_n, a_{n-1}..a_1]
inline DominantWeight fold_even(const DominantWeight &a, int n) {
    detail::require_length(a, static_cast<std::size_t>(n), "fold_even");
    Weight v(static_cast<std::size_t>(2 * n - 1));
    for (int i = 0; i < n; ++i) {
        v[i] = a[i];
        v[2 * n - 2 - i] = a[i];
    }
    return DominantWeight(v);
}

inline DominantWeight unfold_even(const DominantWeight &v) {
    if (v.size() % 2 == 0)
        throw InvalidArgument("unfold_even: weight " + v.to_string() + " does not have odd length 2n-1");
    const std::size_t len = v.size();
    for (std::size_t i = 0; i < len; ++i)
        if (v[i] != v[len - 1 - i])
            throw NotSelfdual(v.to_string() + " is not selfdual (not a palindrome)");
    const std::size_t n = (len + 1) / 2;
    Weight a(n);
    for (std::size_t i = 0; i < n; ++i)
        a[i] = v[i];
    return DominantWeight(a);
}

// [a_1..a_n] -> [a_1..a_n, a_n..a_1]
inline DominantWeight fold_odd(const DominantWeight &a, int n) {
    detail::require_length(a, static_cast<std::size_t>(n), "fold_odd");
    Weight v(static_cast<std::size_t>(2 * n));
    for (int i = 0; i < n; ++i) {
        v[i] = a[i];
        v[2 * n - 1 - i] = a[i];
    }
    return DominantWeight(v);
}

inline DominantWeight unfold_odd(const DominantWeight &v) {
    if (v.size() % 2 != 0 || v.size() == 0)
        throw InvalidArgument("unfold_odd: weight " + v.to_string() + " does not have even length 2n");
    const std::size_t len = v.size();
    for (std::size_t i = 0; i < len; ++i)
        if (v[i] != v[len - 1 - i])
            throw NotSelfdual(v.to_string() + " is not selfdual (not a doubled-middle palindrome)");
    Weight a(len / 2);
    for (std::size_t i = 0; i < len / 2; ++i)
        a[i] = v[i];
    return DominantWeight(a);
}

inline DominantWeight fold(const PairKind &pair, const DominantWeight &a) {
    return pair.is_even() ? fold_even(a, pair.n()) : fold_odd(a, pair.n());
}

inline DominantWeight unfold(const PairKind &pair, const DominantWeight &v) {
    detail::require_length(v, static_cast<std::size_t>(pair.sl_family().rank()), "unfold");
    return pair.is_even() ? unfold_even(v) : unfold_odd(v);
}

inline bool is_selfdual_type_a(const Weight &v) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != v[v.size() - 1 - i])
            return false;
    return true;
}

// Central characters of the groups on both sides.
inline CentralCharacter central_char_sl_even(const DominantWeight &v) {
    const auto a = unfold_even(v);
    return {a[a.size() - 1] & 1};
}

inline CentralCharacter central_char_spin(const DominantWeight &a) {
    if (a.size() == 0)
        throw InvalidArgument("central_char_spin: empty weight");
    return {a[a.size() - 1] & 1};
}

// a_1 + a_3 + a_5 + ... mod 2 (one-based odd positions).
inline CentralCharacter central_char_sp(const DominantWeight &a) {
    int s = 0;
    for (std::size_t i = 0; i < a.size(); i += 2)
        s += a[i];
    return {s & 1};
}

inline CentralCharacter central_char_sl_odd(const DominantWeight &v) {
    (void)unfold_odd(v);
    return {0};
}

inline CentralCharacter central_char_folded(const PairKind &pair, const DominantWeight &a) {
    return pair.is_even() ? central_char_spin(a) : central_char_sp(a);
}

struct TwistedCharacterReport {
    int n = 0;
    std::size_t eigencharacter_count = 0;
    std::size_t fixed_count = 0;
    // Each fixed eigencharacter chi_I . eta_{E-I} is recorded by I (one-based).
    std::vector<std::vector<int>> fixed_characters;
    // Images of the fixed characters in the weight lattice of Spin_{2n+1}.
    std::vector<Weight> spin_weights;
    bool matches_spin_weights = false;
};

// Twisted trace of the automorphism psi on Lambda^n(C^{2n}).
//
// A torus character chi_I . eta_J (I, J subsets of {1..n}, |I| + |J| = n)
// is the 0/1 exponent vector e over t_1..t_{2n} with ones at i in I and at
// 2n+1-j for j in J. psi carries the e-eigenspace to the (-w_0 e)-eigenspace
// and acts by 1 on each fixed one; exponents are compared modulo the
// all-ones vector because t_1 ... t_{2n} = 1.
inline TwistedCharacterReport twisted_spin_character(int n) {
    if (n < 1)
        throw InvalidArgument("twisted_spin_character requires n >= 1");
    if (2 * n > 30)
        throw ResourceLimit("twisted_spin_character: n too large to enumerate");
    TwistedCharacterReport rep;
    rep.n = n;
    const int len = 2 * n;
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
        if (__builtin_popcount(mask) != n)
            continue;
        ++rep.eigencharacter_count;
        std::vector<int> e(len), f(len);
        for (int p = 0; p < len; ++p)
            e[p] = (mask >> p) & 1;
        for (int p = 0; p < len; ++p)
            f[p] = -e[len - 1 - p];
        bool fixed = true;
        for (int p = 1; p < len && fixed; ++p)
            fixed = (f[p] - e[p]) == (f[0] - e[0]);
        if (!fixed)
            continue;
        ++rep.fixed_count;
        std::vector<int> subset;
        for (int i = 0; i < n; ++i)
            if (e[i])
                subset.push_back(i + 1);
        rep.fixed_characters.push_back(subset);

        // Orthogonal coordinates x_i = +1/2 for i in I, -1/2 otherwise;
        // fundamental coordinates x_i - x_{i+1} (i < n) and 2 x_n.
        std::vector<int> twice_x(n);
        for (int i = 0; i < n; ++i)
            twice_x[i] = e[i] ? 1 : -1;
        Weight w(static_cast<std::size_t>(n));
        for (int i = 0; i + 1 < n; ++i)
            w[i] = (twice_x[i] - twice_x[i + 1]) / 2;
        w[n - 1] = twice_x[n - 1];
        rep.spin_weights.push_back(w);
    }

    // Spin_3 = SL_2 and the spin module is the defining one; B_1 is
    // handled through A_1.
    const Family spin_family = n == 1 ? Family(Letter::A, 1) : Family(Letter::B, n);
    if (static_cast<std::size_t>(n) <= Weight::max_rank) {
        Weight top(static_cast<std::size_t>(n));
        top[n - 1] = 1;
        const auto table = full_weight_system(root_datum(spin_family), DominantWeight(top));
        std::vector<Weight> expected;
        for (const auto &[w, m] : table.entries)
            for (Mult k = 0; k < m; ++k)
                expected.push_back(w);
        std::vector<Weight> got = rep.spin_weights;
        std::sort(expected.begin(), expected.end());
        std::sort(got.begin(), got.end());
        rep.matches_spin_weights = expected == got;
    }
    return rep;
}

} // namespace lierep
