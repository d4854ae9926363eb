#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "errors.hpp"
#include "weight.hpp"

namespace lierep {

using Rational = boost::rational<std::int64_t>;

enum class Letter { A, B, C };

inline char letter_char(Letter l) { return l == Letter::A ? 'A' : l == Letter::B ? 'B' : 'C'; }

inline Letter parse_letter(std::string_view s) {
    if (s == "A" || s == "a") return Letter::A;
    if (s == "B" || s == "b") return Letter::B;
    if (s == "C" || s == "c") return Letter::C;
    throw InvalidArgument("unknown family '" + std::string(s) + "' (expected A, B or C)");
}

// Cartan type: A_r (r >= 1), B_r or C_r (r >= 2).
class Family {
  public:
    Family(Letter letter, int rank) : letter_(letter), rank_(rank) {
        const int min_rank = letter == Letter::A ? 1 : 2;
        if (rank < min_rank || rank > static_cast<int>(Weight::max_rank))
            throw InvalidArgument(std::string("invalid rank ") + std::to_string(rank) +
                                  " for family " + letter_char(letter));
    }
    Letter letter() const noexcept { return letter_; }
    int rank() const noexcept { return rank_; }
    std::string to_string() const { return letter_char(letter_) + std::to_string(rank_); }
    auto operator<=>(const Family &) const = default;

  private:
    Letter letter_;
    int rank_;
};

// Root system of a simple Lie algebra of type A, B or C in Bourbaki numbering
// (B_r: last simple root short, C_r: last simple root long).
//
// cartan()[i][j] = <alpha_j, coroot_i>, so the fundamental coordinates of
// alpha_j form column j. The invariant form is normalised so that long roots
// have squared length 2; form_diag()[i] = (alpha_i, alpha_i) / 2.
//
// Immutable after construction; every member function is const and pure.
class RootDatum {
  public:
    explicit RootDatum(Family family) : family_(family), r_(static_cast<std::size_t>(family.rank())) {
        build_cartan();
        build_form();
        build_positive_roots();
        rho_ = Weight(r_);
        for (auto &c : rho_)
            c = 1;
    }

    const Family &family() const noexcept { return family_; }
    std::size_t rank() const noexcept { return r_; }
    const std::vector<std::vector<int>> &cartan() const noexcept { return cartan_; }
    const std::vector<Rational> &form_diag() const noexcept { return form_diag_; }
    const Weight &rho() const noexcept { return rho_; }

    // Positive roots in fundamental coordinates, ordered by height then
    // lexicographically in simple-root coordinates.
    const std::vector<Weight> &positive_roots() const noexcept { return pos_roots_; }
    // The same roots expressed in the simple-root basis.
    const std::vector<std::vector<int>> &positive_roots_simple() const noexcept {
        return pos_roots_simple_;
    }
    const Weight &simple_root(std::size_t i) const { return simple_roots_.at(i); }

    // s_i(w) = w - w_i alpha_i, with i zero-based.
    Weight simple_reflection(std::size_t i, const Weight &w) const {
        if (i >= r_)
            throw InvalidArgument("reflection index " + std::to_string(i + 1) + " out of range 1.." +
                                  std::to_string(r_));
        check_rank(w);
        Weight out = w;
        reflect_in_place(i, out);
        return out;
    }

    // Treats w as mu + rho. Returns the dominant weight nu with nu + rho in the
    // Weyl orbit of w together with (-1)^length, or nothing when w lies on a wall.
    std::optional<std::pair<DominantWeight, int>> make_dominant_shifted(const Weight &w) const {
        check_rank(w);
        Weight x = w + rho_;
        int sign = 1;
        if (!shifted_dominant_in_place(x, sign))
            return std::nullopt;
        return std::make_pair(DominantWeight(x), sign);
    }

    // Hot-path variant taking x = w + rho; on success x holds the shifted
    // dominant weight.
    bool shifted_dominant_in_place(Weight &x, int &sign) const noexcept {
        for (;;) {
            std::size_t neg = r_;
            for (std::size_t i = 0; i < r_; ++i) {
                if (x[i] == 0)
                    return false;
                if (x[i] < 0 && neg == r_)
                    neg = i;
            }
            if (neg == r_)
                break;
            reflect_in_place(neg, x);
            sign = -sign;
        }
        x -= rho_;
        return true;
    }

    // Dominant element of the Weyl orbit of w.
    Weight dominant_representative(Weight w) const noexcept {
        for (;;) {
            std::size_t i = 0;
            while (i < r_ && w[i] >= 0)
                ++i;
            if (i == r_)
                return w;
            reflect_in_place(i, w);
        }
    }

    Rational inner_product(const Weight &v, const Weight &w) const {
        check_rank(v);
        check_rank(w);
        return Rational(scaled_inner_product(v, w), form_scale_);
    }

    // form_scale() * (v, w); always an integer.
    std::int64_t scaled_inner_product(const Weight &v, const Weight &w) const noexcept {
        std::int64_t s = 0;
        for (std::size_t i = 0; i < r_; ++i) {
            if (v[i] == 0)
                continue;
            std::int64_t row = 0;
            for (std::size_t j = 0; j < r_; ++j)
                row += scaled_gram_[i][j] * w[j];
            s += v[i] * row;
        }
        return s;
    }
    std::int64_t form_scale() const noexcept { return form_scale_; }

    // (varpi_i, varpi_j) as exact rationals.
    const std::vector<std::vector<Rational>> &gram() const noexcept { return gram_; }

    // height_scale() * (sum of simple-root coordinates of w). Monotone for
    // the dominance order: mu < nu implies scaled_height(mu) < scaled_height(nu).
    std::int64_t scaled_height(const Weight &w) const noexcept {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < r_; ++j)
            s += height_coeff_[j] * w[j];
        return s;
    }
    std::int64_t height_scale() const noexcept { return height_scale_; }

    // Simple-root coordinates of w as rationals (C^{-1} w).
    std::vector<Rational> to_simple_coords(const Weight &w) const {
        check_rank(w);
        std::vector<Rational> k(r_, Rational(0));
        for (std::size_t a = 0; a < r_; ++a)
            for (std::size_t j = 0; j < r_; ++j)
                k[a] += cartan_inv_[a][j] * w[j];
        return k;
    }

    void check_rank(const Weight &w) const {
        if (w.size() != r_)
            throw InvalidArgument("weight " + w.to_string() + " has length " + std::to_string(w.size()) +
                                  ", expected " + std::to_string(r_) + " for " + family_.to_string());
    }

  private:
    void reflect_in_place(std::size_t i, Weight &w) const noexcept {
        const int k = w[i];
        if (k == 0)
            return;
        const Weight &a = simple_roots_[i];
        for (std::size_t j = 0; j < r_; ++j)
            w[j] -= k * a[j];
    }

    void build_cartan() {
        cartan_.assign(r_, std::vector<int>(r_, 0));
        for (std::size_t i = 0; i < r_; ++i) {
            cartan_[i][i] = 2;
            if (i + 1 < r_) {
                cartan_[i][i + 1] = -1;
                cartan_[i + 1][i] = -1;
            }
        }
        if (r_ >= 2) {
            const std::size_t a = r_ - 2, b = r_ - 1;
            // <alpha_b, coroot_a> and <alpha_a, coroot_b>
            if (family_.letter() == Letter::B)
                cartan_[b][a] = -2;
            else if (family_.letter() == Letter::C)
                cartan_[a][b] = -2;
        }
        simple_roots_.assign(r_, Weight(r_));
        for (std::size_t j = 0; j < r_; ++j)
            for (std::size_t m = 0; m < r_; ++m)
                simple_roots_[j][m] = cartan_[m][j];
    }

    void build_form() {
        form_diag_.assign(r_, Rational(1));
        if (family_.letter() == Letter::B)
            form_diag_[r_ - 1] = Rational(1, 2);
        else if (family_.letter() == Letter::C)
            for (std::size_t i = 0; i + 1 < r_; ++i)
                form_diag_[i] = Rational(1, 2);

        // Gauss-Jordan inverse of the Cartan matrix over the rationals.
        std::vector<std::vector<Rational>> a(r_, std::vector<Rational>(2 * r_, Rational(0)));
        for (std::size_t i = 0; i < r_; ++i) {
            for (std::size_t j = 0; j < r_; ++j)
                a[i][j] = cartan_[i][j];
            a[i][r_ + i] = 1;
        }
        for (std::size_t col = 0; col < r_; ++col) {
            std::size_t piv = col;
            while (a[piv][col].numerator() == 0)
                ++piv;
            std::swap(a[piv], a[col]);
            const Rational p = a[col][col];
            for (auto &x : a[col])
                x /= p;
            for (std::size_t row = 0; row < r_; ++row) {
                if (row == col || a[row][col].numerator() == 0)
                    continue;
                const Rational f = a[row][col];
                for (std::size_t k = 0; k < 2 * r_; ++k)
                    a[row][k] -= f * a[col][k];
            }
        }
        cartan_inv_.assign(r_, std::vector<Rational>(r_));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < r_; ++j)
                cartan_inv_[i][j] = a[i][r_ + j];

        // (varpi_k, alpha_j) = d_j delta_kj, hence Gram * C = D and Gram = D C^{-1}.
        gram_.assign(r_, std::vector<Rational>(r_));
        std::int64_t lcm = 1;
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < r_; ++j) {
                gram_[i][j] = form_diag_[i] * cartan_inv_[i][j];
                lcm = std::lcm(lcm, gram_[i][j].denominator());
            }
        form_scale_ = lcm;
        scaled_gram_.assign(r_, std::vector<std::int64_t>(r_));
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < r_; ++j)
                scaled_gram_[i][j] = boost::rational_cast<std::int64_t>(gram_[i][j] * lcm);

        std::vector<Rational> coeff(r_, Rational(0));
        std::int64_t hl = 1;
        for (std::size_t j = 0; j < r_; ++j) {
            for (std::size_t k = 0; k < r_; ++k)
                coeff[j] += cartan_inv_[k][j];
            hl = std::lcm(hl, coeff[j].denominator());
        }
        height_scale_ = hl;
        height_coeff_.resize(r_);
        for (std::size_t j = 0; j < r_; ++j)
            height_coeff_[j] = boost::rational_cast<std::int64_t>(coeff[j] * hl);
    }

    // Root strings: beta + alpha_i is a root iff p - <beta, coroot_i> > 0,
    // where p is the largest integer with beta - p alpha_i a root.
    void build_positive_roots() {
        std::map<std::vector<int>, int> known;
        std::vector<std::vector<int>> layer;
        for (std::size_t i = 0; i < r_; ++i) {
            std::vector<int> e(r_, 0);
            e[i] = 1;
            layer.push_back(e);
            known[e] = 1;
        }
        std::vector<std::vector<int>> all;
        while (!layer.empty()) {
            std::sort(layer.begin(), layer.end());
            std::vector<std::vector<int>> next;
            for (const auto &beta : layer) {
                all.push_back(beta);
                for (std::size_t i = 0; i < r_; ++i) {
                    int p = 0;
                    std::vector<int> down = beta;
                    for (;;) {
                        down[i] -= 1;
                        if (!known.count(down))
                            break;
                        ++p;
                    }
                    int pairing = 0;
                    for (std::size_t j = 0; j < r_; ++j)
                        pairing += beta[j] * cartan_[i][j];
                    if (p - pairing > 0) {
                        std::vector<int> up = beta;
                        up[i] += 1;
                        if (!known.count(up)) {
                            known[up] = 1;
                            next.push_back(up);
                        }
                    }
                }
            }
            layer = std::move(next);
        }
        pos_roots_simple_ = all;
        for (const auto &k : all) {
            Weight x(r_);
            for (std::size_t m = 0; m < r_; ++m) {
                int s = 0;
                for (std::size_t j = 0; j < r_; ++j)
                    s += k[j] * cartan_[m][j];
                x[m] = s;
            }
            pos_roots_.push_back(x);
        }
    }

    Family family_;
    std::size_t r_;
    std::vector<std::vector<int>> cartan_;
    std::vector<Weight> simple_roots_;
    std::vector<std::vector<Rational>> cartan_inv_;
    std::vector<Rational> form_diag_;
    std::vector<std::vector<Rational>> gram_;
    std::vector<std::vector<std::int64_t>> scaled_gram_;
    std::int64_t form_scale_ = 1;
    std::vector<std::int64_t> height_coeff_;
    std::int64_t height_scale_ = 1;
    std::vector<Weight> pos_roots_;
    std::vector<std::vector<int>> pos_roots_simple_;
    Weight rho_;
};

inline RootDatum build_root_datum(Family family) { return RootDatum(family); }

// Shared immutable datum per family; constructed once and reused.
inline const RootDatum &root_datum(Family family) {
    static std::mutex mu;
    static std::map<Family, std::unique_ptr<RootDatum>> registry;
    std::lock_guard lock(mu);
    auto &slot = registry[family];
    if (!slot)
        slot = std::make_unique<RootDatum>(family);
    return *slot;
}

inline const RootDatum &root_datum(Letter letter, int rank) { return root_datum(Family(letter, rank)); }

} // namespace lierep
