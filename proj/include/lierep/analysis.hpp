#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "characters.hpp"
#include "decomposition_cache.hpp"
#include "errors.hpp"
#include "folding.hpp"
#include "parallel.hpp"
#include "rootdata.hpp"
#include "tensor.hpp"

namespace lierep {

// Shared state for table builds and scans.
struct Engine {
    CharacterCache &characters = default_character_cache();
    DecompositionCache &decompositions;
    unsigned workers = default_workers();
    std::uint64_t triple_limit = 10'000'000;
};

inline DecompositionCache &default_decomposition_cache() {
    static DecompositionCache cache(DecompositionCache::default_capacity, default_character_cache());
    return cache;
}

inline Engine &default_engine() {
    static Engine engine{default_character_cache(), default_decomposition_cache()};
    return engine;
}

using Triple = std::array<DominantWeight, 3>;

inline std::string triple_to_string(const Triple &t) {
    return t[0].to_string() + " " + t[1].to_string() + " " + t[2].to_string();
}

// ---------------------------------------------------------------------------
// Triple reports

struct TripleReport {
    PairKind pair;
    Triple folded;
    Mult m_sl = 0;
    Mult m_fold = 0;
    Mult m_tilde = 0;
    bool is_missing = false;
    bool operator==(const TripleReport &) const = default;
};

namespace detail {

inline void require_folded(const PairKind &pair, const DominantWeight &w) {
    if (w.size() != static_cast<std::size_t>(pair.n()))
        throw InvalidArgument("weight " + w.to_string() + " is not a " + pair.folded_family().to_string() +
                              " weight");
}

// m_fold <= m_sl, equal parity, 2 m_tilde = m_fold + m_sl.
inline TripleReport make_triple_report(const PairKind &pair, const Triple &t, Mult m_sl, Mult m_fold) {
    if (m_fold > m_sl || ((m_sl - m_fold) & 1))
        throw InternalError("multiplicity relation violated for " + triple_to_string(t) + ": m_sl=" +
                            std::to_string(m_sl) + " m_fold=" + std::to_string(m_fold));
    TripleReport r{pair, t, m_sl, m_fold, (m_sl + m_fold) / 2, m_sl > 0 && m_fold == 0};
    return r;
}

} // namespace detail

inline TripleReport triple_report(const PairKind &pair, const DominantWeight &p1, const DominantWeight &p2,
                                  const DominantWeight &p3, Engine &engine = default_engine()) {
    for (const auto *p : {&p1, &p2, &p3})
        detail::require_folded(pair, *p);
    const auto &sl = root_datum(pair.sl_family());
    const auto &folded = root_datum(pair.folded_family());
    const std::array<DominantWeight, 3> v{fold(pair, p1), fold(pair, p2), fold(pair, p3)};
    const std::array<DominantWeight, 3> f{p1, p2, p3};
    const Mult m_sl = multiplicity_of_trivial(sl, v, engine.characters);
    const Mult m_fold = multiplicity_of_trivial(folded, f, engine.characters);
    return detail::make_triple_report(pair, {p1, p2, p3}, m_sl, m_fold);
}

// ---------------------------------------------------------------------------
// Table cells

struct PairTableCell {
    PairKind pair;
    DominantWeight v, w;  // SL side
    std::uint64_t n1 = 0; // distinct constituents of V x W
    std::uint64_t n2 = 0; // selfdual constituents (odd pair: central character filtered)
    std::uint64_t n3 = 0; // distinct constituents of V' x W'
    std::uint64_t n4 = 0; // counted selfdual constituents whose unfolding is absent from V' x W'
    std::vector<DominantWeight> missing; // SL-side weights counted in n4
    bool operator==(const PairTableCell &) const = default;
};

// Odd pair: a selfdual constituent C of V x W is counted only when its Sp
// central character equals that of V' x W' (for n = 2: c_1 = a_1 + b_1 mod 2).
// The same filter applies to n4.
inline PairTableCell pair_table_cell(const PairKind &pair, const DominantWeight &v, const DominantWeight &w,
                                     Engine &engine = default_engine()) {
    const auto &sl = root_datum(pair.sl_family());
    const auto &folded = root_datum(pair.folded_family());
    sl.check_rank(v);
    sl.check_rank(w);
    const DominantWeight a = unfold(pair, v);
    const DominantWeight b = unfold(pair, w);
    const auto sl_terms = engine.decompositions.get(sl, v, w);
    const auto fold_terms = engine.decompositions.get(folded, a, b);

    std::unordered_set<Weight, WeightHash> folded_set;
    for (const auto &[t, m] : fold_terms->terms)
        folded_set.insert(t.weight());
    const CentralCharacter product_cc = central_char_folded(pair, a) * central_char_folded(pair, b);

    PairTableCell cell{pair, v, w, sl_terms->size(), 0, fold_terms->size(), 0, {}};
    for (const auto &[t, m] : sl_terms->terms) {
        if (!is_selfdual_type_a(t))
            continue;
        const DominantWeight u = unfold(pair, t);
        if (!pair.is_even() && !(central_char_sp(u) == product_cc))
            continue;
        ++cell.n2;
        if (!folded_set.count(u.weight())) {
            ++cell.n4;
            cell.missing.push_back(t);
        }
    }
    return cell;
}

inline PairTableCell pair_table_cell_folded(const PairKind &pair, const DominantWeight &a, const DominantWeight &b,
                                            Engine &engine = default_engine()) {
    detail::require_folded(pair, a);
    detail::require_folded(pair, b);
    return pair_table_cell(pair, fold(pair, a), fold(pair, b), engine);
}

using Table = std::vector<std::vector<PairTableCell>>;

// rows and cols are folded-side headers; cells are computed in parallel and
// stored in header order.
inline Table build_table(const PairKind &pair, const std::vector<DominantWeight> &rows,
                         const std::vector<DominantWeight> &cols, Engine &engine = default_engine()) {
    for (const auto &h : rows)
        detail::require_folded(pair, h);
    for (const auto &h : cols)
        detail::require_folded(pair, h);
    const std::size_t cells = rows.size() * cols.size();
    if (cells > engine.triple_limit)
        throw ResourceLimit("table has " + std::to_string(cells) + " cells, limit is " +
                            std::to_string(engine.triple_limit));
    std::vector<std::optional<PairTableCell>> flat(cells);
    parallel_for(cells, engine.workers, [&](std::size_t i) {
        flat[i] = pair_table_cell_folded(pair, rows[i / cols.size()], cols[i % cols.size()], engine);
    });
    Table out(rows.size());
    for (std::size_t i = 0; i < cells; ++i)
        out[i / cols.size()].push_back(std::move(*flat[i]));
    return out;
}

// ---------------------------------------------------------------------------
// Scans

enum class Conjecture { none, c1, c3 };

inline std::string conjecture_name(Conjecture c) {
    return c == Conjecture::c1 ? "C1" : c == Conjecture::c3 ? "C3" : "none";
}

inline Conjecture parse_conjecture(std::string_view s) {
    if (s == "C1" || s == "c1") return Conjecture::c1;
    if (s == "C3" || s == "c3") return Conjecture::c3;
    if (s == "none" || s.empty()) return Conjecture::none;
    throw InvalidArgument("unknown conjecture '" + std::string(s) + "' (expected C1 or C3)");
}

inline Conjecture conjecture_for(const PairKind &pair) {
    return pair.is_even() ? Conjecture::c1 : Conjecture::c3;
}

// Conjunction of atoms last_zero(i) / first_zero(i), optionally negated
// with '!', joined by "&&" or ','. i in 1..3 names the triple member.
class TripleFilter {
  public:
    TripleFilter() = default;

    static TripleFilter parse(std::string_view text) {
        TripleFilter f;
        f.text_ = std::string(text);
        std::string s;
        for (char c : text)
            if (!std::isspace(static_cast<unsigned char>(c)))
                s += c;
        if (s.empty() || s == "none")
            return f;
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t end = s.find_first_of(",&", pos);
            if (end == std::string::npos)
                end = s.size();
            f.atoms_.push_back(parse_atom(s.substr(pos, end - pos)));
            pos = end;
            while (pos < s.size() && (s[pos] == ',' || s[pos] == '&'))
                ++pos;
        }
        return f;
    }

    bool matches(const Triple &t) const {
        for (const auto &a : atoms_) {
            const auto &w = t[a.member];
            const int c = a.last ? w[w.size() - 1] : w[0];
            if ((c == 0) == a.negated)
                return false;
        }
        return true;
    }
    const std::string &text() const noexcept { return text_; }
    bool empty() const noexcept { return atoms_.empty(); }

  private:
    struct Atom {
        bool last;
        std::size_t member;
        bool negated;
    };

    static Atom parse_atom(const std::string &s) {
        std::string body = s;
        bool neg = false;
        if (!body.empty() && body[0] == '!') {
            neg = true;
            body = body.substr(1);
        }
        bool last;
        if (body.rfind("last_zero(", 0) == 0)
            last = true;
        else if (body.rfind("first_zero(", 0) == 0)
            last = false;
        else
            throw InvalidArgument("unknown filter predicate '" + s + "'");
        const auto open = body.find('('), close = body.find(')');
        if (close != body.size() - 1 || close <= open + 1)
            throw InvalidArgument("malformed filter predicate '" + s + "'");
        int idx = 0;
        try {
            idx = std::stoi(body.substr(open + 1, close - open - 1));
        } catch (const std::exception &) {
            throw InvalidArgument("malformed filter index in '" + s + "'");
        }
        if (idx < 1 || idx > 3)
            throw InvalidArgument("filter index must be 1, 2 or 3 in '" + s + "'");
        return Atom{last, static_cast<std::size_t>(idx - 1), neg};
    }

    std::string text_;
    std::vector<Atom> atoms_;
};

// Hypotheses of the two nonvanishing conjectures.
inline bool conjecture_hypothesis(const PairKind &pair, Conjecture c, const Triple &t) {
    if (c == Conjecture::none)
        return false;
    int nonzero = 0;
    for (const auto &w : t)
        nonzero += (c == Conjecture::c1 ? w[w.size() - 1] : w[0]) != 0;
    if (nonzero < 2)
        return false;
    if (c == Conjecture::c3) {
        const auto cc = central_char_sp(t[0]) * central_char_sp(t[1]) * central_char_sp(t[2]);
        return cc.trivial();
    }
    (void)pair;
    return true;
}

struct ScanReport {
    PairKind pair;
    int height = 0;
    std::string filter;
    Conjecture conjecture = Conjecture::none;
    std::uint64_t enumerated = 0;             // triples passing the filter
    std::uint64_t total_invariant_triples = 0; // m_sl > 0
    std::uint64_t missing_triples = 0;         // m_sl > 0, m_fold = 0
    std::uint64_t hypothesis_triples = 0;      // triples meeting the conjecture hypothesis
    std::vector<Triple> counterexamples;
    std::vector<Triple> missing_sample; // first missing triples in enumeration order
    bool truncated = false;             // stopped at the triple limit
    bool operator==(const ScanReport &) const = default;
    bool density_defined() const noexcept { return total_invariant_triples != 0; }
    Rational density() const {
        return density_defined() ? Rational(static_cast<std::int64_t>(missing_triples),
                                            static_cast<std::int64_t>(total_invariant_triples))
                                 : Rational(0);
    }
};

inline constexpr std::size_t missing_sample_cap = 1000;

// All folded weights with coordinates in [0, height], lexicographic order.
inline std::vector<DominantWeight> bounded_weights(std::size_t rank, int height) {
    std::vector<DominantWeight> out;
    Weight w(rank);
    for (;;) {
        out.emplace_back(w);
        std::size_t i = rank;
        while (i > 0 && w[i - 1] == height)
            w[--i] = 0;
        if (i == 0)
            break;
        ++w[i - 1];
    }
    return out;
}

namespace detail {

// Visits every (p1, p2) pair with the two product decompositions, so that each
// p3 reads its invariant counts as coefficients of dual(V3) and p3.
template <class Visit>
void for_each_pair_products(const PairKind &pair, const std::vector<DominantWeight> &ws,
                            std::size_t pair_count, Engine &engine, Visit &&visit) {
    const auto &sl = root_datum(pair.sl_family());
    const auto &folded = root_datum(pair.folded_family());
    parallel_for(pair_count, engine.workers, [&](std::size_t idx) {
        const auto &p1 = ws[idx / ws.size()];
        const auto &p2 = ws[idx % ws.size()];
        const auto d_sl = engine.decompositions.get(sl, fold(pair, p1), fold(pair, p2));
        const auto d_fold = engine.decompositions.get(folded, p1, p2);
        std::unordered_map<Weight, Mult, WeightHash> sl_index, fold_index;
        for (const auto &[t, m] : d_sl->terms)
            sl_index.emplace(t.weight(), m);
        for (const auto &[t, m] : d_fold->terms)
            fold_index.emplace(t.weight(), m);
        visit(idx, p1, p2, sl, sl_index, fold_index);
    });
}

inline Mult lookup(const std::unordered_map<Weight, Mult, WeightHash> &m, const Weight &w) {
    auto it = m.find(w);
    return it == m.end() ? 0 : it->second;
}

} // namespace detail

// Enumerates folded triples (p1, p2, p3) with coordinates <= height in
// lexicographic order of the concatenated coordinates and tallies invariant
// and missing triples. Counterexamples are checked against the conjecture
// attached to the pair.
inline ScanReport scan_missing(const PairKind &pair, int height, const TripleFilter &filter,
                               Engine &engine = default_engine(), Conjecture conj = Conjecture::none) {
    if (height < 0)
        throw InvalidArgument("height must be >= 0");
    if (conj == Conjecture::none)
        conj = conjecture_for(pair);
    if (conj != conjecture_for(pair))
        throw InvalidArgument("conjecture " + conjecture_name(conj) + " does not apply to the " + pair.name() +
                              " pair");
    const auto ws = bounded_weights(static_cast<std::size_t>(pair.n()), height);
    const std::uint64_t per_pair = ws.size();
    const long double total = static_cast<long double>(per_pair) * per_pair * per_pair;

    ScanReport rep{pair, height, filter.text().empty() ? "none" : filter.text(), conj};
    std::uint64_t budget = total > static_cast<long double>(engine.triple_limit)
                               ? engine.triple_limit
                               : static_cast<std::uint64_t>(total);
    rep.truncated = total > static_cast<long double>(engine.triple_limit);
    const std::size_t pair_count = static_cast<std::size_t>((budget + per_pair - 1) / per_pair);

    struct Partial {
        std::uint64_t enumerated = 0, invariant = 0, missing = 0, hyp = 0;
        std::vector<Triple> counter, missing_list;
    };
    std::vector<Partial> parts(pair_count);
    detail::for_each_pair_products(
        pair, ws, pair_count, engine,
        [&](std::size_t idx, const DominantWeight &p1, const DominantWeight &p2, const RootDatum &sl,
            const auto &sl_index, const auto &fold_index) {
            Partial &part = parts[idx];
            const std::uint64_t first = static_cast<std::uint64_t>(idx) * per_pair;
            for (std::size_t k = 0; k < ws.size() && first + k < budget; ++k) {
                const Triple t{p1, p2, ws[k]};
                if (!filter.matches(t))
                    continue;
                ++part.enumerated;
                const Mult m_sl = detail::lookup(sl_index, dual_weight(sl, fold(pair, ws[k])));
                const Mult m_fold = detail::lookup(fold_index, ws[k]);
                const TripleReport r = detail::make_triple_report(pair, t, m_sl, m_fold);
                const bool hyp = conjecture_hypothesis(pair, conj, t);
                part.hyp += hyp;
                if (r.m_sl > 0)
                    ++part.invariant;
                if (r.is_missing) {
                    ++part.missing;
                    part.missing_list.push_back(t);
                    if (hyp)
                        part.counter.push_back(t);
                }
            }
        });
    for (auto &p : parts) {
        rep.enumerated += p.enumerated;
        rep.total_invariant_triples += p.invariant;
        rep.missing_triples += p.missing;
        rep.hypothesis_triples += p.hyp;
        rep.counterexamples.insert(rep.counterexamples.end(), p.counter.begin(), p.counter.end());
        for (auto &t : p.missing_list)
            if (rep.missing_sample.size() < missing_sample_cap)
                rep.missing_sample.push_back(t);
    }
    return rep;
}

inline ScanReport verify_conjecture(const PairKind &pair, Conjecture conj, int height,
                                    Engine &engine = default_engine()) {
    if (conj == Conjecture::none || conj != conjecture_for(pair))
        throw InvalidArgument("conjecture " + conjecture_name(conj) + " does not apply to the " + pair.name() +
                              " pair");
    return scan_missing(pair, height, TripleFilter{}, engine, conj);
}

struct EvenMultiplicityViolation {
    Triple folded;
    Mult m_sl = 0;
};

// Odd pair: whenever the Sp central character of p1 x p2 x p3 is nontrivial,
// the SL invariant count must be even.
inline std::vector<EvenMultiplicityViolation> even_multiplicity_check(int n, int height,
                                                                     Engine &engine = default_engine(),
                                                                     std::uint64_t *checked = nullptr) {
    const PairKind pair(PairKind::odd, n);
    if (height < 0)
        throw InvalidArgument("height must be >= 0");
    const auto ws = bounded_weights(static_cast<std::size_t>(n), height);
    const long double total = static_cast<long double>(ws.size()) * ws.size() * ws.size();
    if (total > static_cast<long double>(engine.triple_limit))
        throw ResourceLimit("even_multiplicity_check would enumerate more than " +
                            std::to_string(engine.triple_limit) + " triples");
    std::vector<std::vector<EvenMultiplicityViolation>> parts(ws.size() * ws.size());
    std::vector<std::uint64_t> counts(parts.size(), 0);
    detail::for_each_pair_products(
        pair, ws, parts.size(), engine,
        [&](std::size_t idx, const DominantWeight &p1, const DominantWeight &p2, const RootDatum &sl,
            const auto &sl_index, const auto &) {
            for (const auto &p3 : ws) {
                const auto cc = central_char_sp(p1) * central_char_sp(p2) * central_char_sp(p3);
                if (cc.trivial())
                    continue;
                ++counts[idx];
                const Mult m = detail::lookup(sl_index, dual_weight(sl, fold(pair, p3)));
                if (m % 2 != 0)
                    parts[idx].push_back({{p1, p2, p3}, m});
            }
        });
    std::vector<EvenMultiplicityViolation> out;
    std::uint64_t total_checked = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        out.insert(out.end(), parts[i].begin(), parts[i].end());
        total_checked += counts[i];
    }
    if (checked)
        *checked = total_checked;
    return out;
}

// ---------------------------------------------------------------------------
// The [m,0,0,0,m] family on the even pair with n = 3.

struct SpecialCaseReport {
    int m = 0, n = 0;
    std::uint64_t distinct_total = 0;
    std::uint64_t selfdual_total = 0;
    std::uint64_t missing_total = 0;
    std::vector<int> p_range_sl;   // p with [p,0,0,0,p] in V_m x V_n
    std::vector<int> p_range_spin; // p with [p,0,0] in W_m x W_n
    struct Claims {
        std::uint64_t selfdual_total;        // (n+1)^2
        std::uint64_t missing_total;         // n(n+1)/2
        std::vector<int> p_range_sl;         // m-n <= p <= m+n
        std::vector<int> p_range_spin;       // same, with p = m+n mod 2
        std::optional<std::uint64_t> distinct_total; // m(2m^2+1)/3 when n = m
        std::optional<std::uint64_t> distinct_bound; // (m+1)^3 when n <= 2m
    } claims;
    bool selfdual_matches() const { return selfdual_total == claims.selfdual_total; }
    bool missing_matches() const { return missing_total == claims.missing_total; }
    bool p_range_sl_matches() const { return p_range_sl == claims.p_range_sl; }
    bool p_range_spin_matches() const { return p_range_spin == claims.p_range_spin; }
    std::optional<bool> distinct_matches() const {
        if (!claims.distinct_total)
            return std::nullopt;
        return distinct_total == *claims.distinct_total;
    }
    std::optional<bool> distinct_bound_holds() const {
        if (!claims.distinct_bound)
            return std::nullopt;
        return distinct_total <= *claims.distinct_bound;
    }
};

inline SpecialCaseReport special_case_counts(int m, int n, Engine &engine = default_engine()) {
    if (m < 0 || n < 0)
        throw InvalidArgument("special_case_counts needs m, n >= 0");
    const PairKind pair(PairKind::even, 3);
    const auto &sl = root_datum(pair.sl_family());
    const auto &spin = root_datum(pair.folded_family());
    auto v = [](int k) { return DominantWeight{k, 0, 0, 0, k}; };
    auto w = [](int k) { return DominantWeight{k, 0, 0}; };

    const PairTableCell cell = pair_table_cell(pair, v(m), v(n), engine);
    const auto d_sl = engine.decompositions.get(sl, v(m), v(n));
    const auto d_spin = engine.decompositions.get(spin, w(m), w(n));

    SpecialCaseReport rep;
    rep.m = m;
    rep.n = n;
    rep.distinct_total = cell.n1;
    rep.selfdual_total = cell.n2;
    rep.missing_total = cell.n4;
    for (int p = 0; p <= m + n + 1; ++p) {
        if (d_sl->contains(v(p)))
            rep.p_range_sl.push_back(p);
        if (d_spin->contains(w(p)))
            rep.p_range_spin.push_back(p);
    }
    const int lo = m > n ? m - n : n - m;
    rep.claims.selfdual_total = static_cast<std::uint64_t>(n + 1) * (n + 1);
    rep.claims.missing_total = static_cast<std::uint64_t>(n) * (n + 1) / 2;
    for (int p = lo; p <= m + n; ++p) {
        rep.claims.p_range_sl.push_back(p);
        if ((p - m - n) % 2 == 0)
            rep.claims.p_range_spin.push_back(p);
    }
    if (n == m)
        rep.claims.distinct_total = static_cast<std::uint64_t>(m) * (2ull * m * m + 1) / 3;
    if (n <= 2 * m)
        rep.claims.distinct_bound = static_cast<std::uint64_t>(m + 1) * (m + 1) * (m + 1);
    return rep;
}

// ---------------------------------------------------------------------------
// Comparisons between B_n / C_n and between A_{2n-1} / A_{2n}.

struct Question1Report {
    int n = 0, k = 0, l = 0;
    Decomposition bn_terms, cn_terms;
    bool multiplicity_free_b = false;
    bool multiplicity_free_c = false;
    std::optional<bool> constituents_match;     // n > 2: same coordinate tuples
    std::optional<bool> doubling_match;         // n = 2: B [a1,a2] <-> C [a1,2a2]
    std::optional<bool> c_second_coords_even;   // n = 2
    std::optional<bool> halving_match;          // n = 2: B [a1,2a2] <-> C [a1,a2]
    std::optional<bool> b_second_coords_even;   // n = 2
};

inline bool multiplicity_free(const Decomposition &d) {
    for (const auto &[t, m] : d.terms)
        if (m != 1)
            return false;
    return true;
}

inline Question1Report question1_compare(int n, int k, int l, Engine &engine = default_engine()) {
    if (n < 2 || k < 0 || l < 0)
        throw InvalidArgument("question1 needs n >= 2 and k, l >= 0");
    const auto &b = root_datum(Letter::B, n);
    const auto &c = root_datum(Letter::C, n);
    auto first = [n](int x) {
        Weight w(static_cast<std::size_t>(n));
        w[0] = x;
        return DominantWeight(w);
    };
    Question1Report rep;
    rep.n = n;
    rep.k = k;
    rep.l = l;
    rep.bn_terms = *engine.decompositions.get(b, first(k), first(l));
    rep.cn_terms = *engine.decompositions.get(c, first(k), first(l));
    rep.multiplicity_free_b = multiplicity_free(rep.bn_terms);
    rep.multiplicity_free_c = multiplicity_free(rep.cn_terms);
    std::set<Weight> bs, cs;
    for (const auto &[t, m] : rep.bn_terms.terms)
        bs.insert(t.weight());
    for (const auto &[t, m] : rep.cn_terms.terms)
        cs.insert(t.weight());
    if (n > 2) {
        rep.constituents_match = bs == cs;
    } else {
        std::set<Weight> doubled;
        for (Weight w : bs) {
            w[1] *= 2;
            doubled.insert(w);
        }
        rep.doubling_match = doubled == cs;
        std::set<Weight> doubled_c;
        for (Weight w : cs) {
            w[1] *= 2;
            doubled_c.insert(w);
        }
        rep.halving_match = doubled_c == bs;
        auto second_even = [](const std::set<Weight> &ws) {
            return std::all_of(ws.begin(), ws.end(), [](const Weight &w) { return w[1] % 2 == 0; });
        };
        rep.c_second_coords_even = second_even(cs);
        rep.b_second_coords_even = second_even(bs);
    }
    return rep;
}

struct Question2Report {
    int n = 0, k = 0, l = 0;
    std::vector<std::pair<DominantWeight, Mult>> odd_terms_even_sl; // A_{2n-1}
    std::vector<std::pair<DominantWeight, Mult>> odd_terms_odd_sl;  // A_{2n}
    bool bijection_holds = false;
    bool multiplicities_preserved = false;
    std::optional<bool> higher_coords_zero; // n > 2: a_i = 0 for i > 2 on both sides
};

inline Question2Report question2_compare(int n, int k, int l, Engine &engine = default_engine()) {
    if (n < 2 || k < 0 || l < 0)
        throw InvalidArgument("question2 needs n >= 2 and k, l >= 0");
    const auto &even_sl = root_datum(Letter::A, 2 * n - 1);
    const auto &odd_sl = root_datum(Letter::A, 2 * n);
    auto ends = [](int rank, int x) {
        Weight w(static_cast<std::size_t>(rank));
        w[0] = x;
        w[rank - 1] = x;
        return DominantWeight(w);
    };
    const auto d_even = engine.decompositions.get(even_sl, ends(2 * n - 1, k), ends(2 * n - 1, l));
    const auto d_odd = engine.decompositions.get(odd_sl, ends(2 * n, k), ends(2 * n, l));

    Question2Report rep;
    rep.n = n;
    rep.k = k;
    rep.l = l;
    for (const auto &[t, m] : d_even->terms)
        if (m % 2 != 0 && is_selfdual_type_a(t))
            rep.odd_terms_even_sl.emplace_back(t, m);
    for (const auto &[t, m] : d_odd->terms)
        if (m % 2 != 0 && is_selfdual_type_a(t))
            rep.odd_terms_odd_sl.emplace_back(t, m);

    // [a1..an,an..a1] on A_{2n} maps to [a1..an..a1] on A_{2n-1}; for n = 2
    // the middle coordinate is doubled.
    std::map<Weight, Mult> even_map, image;
    for (const auto &[t, m] : rep.odd_terms_even_sl)
        even_map[t.weight()] = m;
    for (const auto &[t, m] : rep.odd_terms_odd_sl) {
        Weight a = unfold_odd(t).weight();
        if (n == 2)
            a[1] *= 2;
        image[fold_even(DominantWeight(a), n).weight()] = m;
    }
    std::set<Weight> even_keys, image_keys;
    for (const auto &[w, m] : even_map)
        even_keys.insert(w);
    for (const auto &[w, m] : image)
        image_keys.insert(w);
    rep.bijection_holds = image.size() == rep.odd_terms_odd_sl.size() && even_keys == image_keys;
    rep.multiplicities_preserved = rep.bijection_holds && even_map == image;
    if (n > 2) {
        bool zero = true;
        for (const auto &[t, m] : rep.odd_terms_even_sl)
            for (int i = 2; i < n; ++i)
                zero = zero && t[i] == 0;
        for (const auto &[t, m] : rep.odd_terms_odd_sl)
            for (int i = 2; i < n; ++i)
                zero = zero && t[i] == 0;
        rep.higher_coords_zero = zero;
    }
    return rep;
}

} // namespace lierep
