#pragma once

#include <charconv>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "analysis.hpp"
#include "decomposition_cache.hpp"
#include "errors.hpp"
#include "folding.hpp"
#include "rootdata.hpp"
#include "tensor.hpp"

namespace lierep::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char *engine_version = "1.0.0";

// ---------------------------------------------------------------------------
// Parsing helpers

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

template <class Int>
Int parse_int(std::string_view text, std::string_view what) {
    const auto s = trim(text);
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw InvalidArgument(std::string(what) + ": expected an integer, got '" + std::string(text) + "'");
    return v;
}

inline bool parse_bool(std::string_view text, std::string_view what) {
    const auto s = trim(text);
    if (s == "1" || s == "true" || s == "yes" || s == "on") return true;
    if (s == "0" || s == "false" || s == "no" || s == "off") return false;
    throw InvalidArgument(std::string(what) + ": expected a boolean, got '" + std::string(text) + "'");
}

// Bracket notation "[a_1, ..., a_r]".
inline DominantWeight parse_weight(std::string_view text, std::optional<std::size_t> rank = std::nullopt) {
    const auto s = trim(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw InvalidArgument("malformed weight '" + std::string(text) + "': expected [a1,a2,...]");
    const auto body = s.substr(1, s.size() - 2);
    if (trim(body).empty())
        throw InvalidArgument("malformed weight '" + std::string(text) + "': no coordinates");
    std::vector<int> coords;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = body.find(',', pos);
        const auto item = body.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        const int v = parse_int<int>(item, "weight coordinate");
        if (v < 0)
            throw InvalidArgument("negative coordinate " + std::to_string(v) + " in weight '" + std::string(text) +
                                  "'");
        coords.push_back(v);
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    if (coords.size() > Weight::max_rank)
        throw InvalidArgument("weight '" + std::string(text) + "' exceeds the maximum rank " +
                              std::to_string(Weight::max_rank));
    if (rank && coords.size() != *rank)
        throw InvalidArgument("weight '" + std::string(text) + "' has " + std::to_string(coords.size()) +
                              " coordinates, expected " + std::to_string(*rank));
    return DominantWeight(Weight(std::span<const int>(coords)));
}

inline Json coords_json(const Weight &w) { return Json(std::vector<int>(w.begin(), w.end())); }

inline DominantWeight weight_from_json(const Json &j) {
    const auto v = j.get<std::vector<int>>();
    return DominantWeight(Weight(std::span<const int>(v)));
}

// ---------------------------------------------------------------------------
// Typed JSON bodies

inline Json to_json(const Decomposition &d) {
    Json terms = Json::array();
    for (const auto &[w, m] : d.terms)
        terms.push_back(Json{{"weight", coords_json(w)}, {"multiplicity", m}});
    return terms;
}

inline Decomposition decomposition_from_json(const Json &j) {
    Decomposition d;
    for (const auto &t : j)
        d.terms.emplace_back(weight_from_json(t.at("weight")), t.at("multiplicity").get<Mult>());
    return d;
}

inline Json pair_json(const PairKind &p) { return Json{{"kind", p.name()}, {"n", p.n()}}; }

inline PairKind pair_from_json(const Json &j) {
    return PairKind(parse_pair_kind(j.at("kind").get<std::string>()), j.at("n").get<int>());
}

inline Json triple_json(const Triple &t) { return Json::array({coords_json(t[0]), coords_json(t[1]), coords_json(t[2])}); }

inline Triple triple_from_json(const Json &j) {
    return {weight_from_json(j.at(0)), weight_from_json(j.at(1)), weight_from_json(j.at(2))};
}

inline Json to_json(const TripleReport &r) {
    return Json{{"pair", pair_json(r.pair)},
                {"folded", triple_json(r.folded)},
                {"sl", Json::array({coords_json(fold(r.pair, r.folded[0])), coords_json(fold(r.pair, r.folded[1])),
                                    coords_json(fold(r.pair, r.folded[2]))})},
                {"m_sl", r.m_sl},
                {"m_fold", r.m_fold},
                {"m_tilde", r.m_tilde},
                {"is_missing", r.is_missing}};
}

inline TripleReport triple_report_from_json(const Json &j) {
    return TripleReport{pair_from_json(j.at("pair")), triple_from_json(j.at("folded")), j.at("m_sl").get<Mult>(),
                        j.at("m_fold").get<Mult>(), j.at("m_tilde").get<Mult>(), j.at("is_missing").get<bool>()};
}

inline Json to_json(const PairTableCell &c) {
    Json missing = Json::array();
    for (const auto &w : c.missing)
        missing.push_back(coords_json(w));
    return Json{{"pair", pair_json(c.pair)},
                {"V", coords_json(c.v)},
                {"W", coords_json(c.w)},
                {"V_folded", coords_json(unfold(c.pair, c.v))},
                {"W_folded", coords_json(unfold(c.pair, c.w))},
                {"n1", c.n1},
                {"n2", c.n2},
                {"n3", c.n3},
                {"n4", c.n4},
                {"missing", missing}};
}

inline PairTableCell cell_from_json(const Json &j) {
    PairTableCell c{pair_from_json(j.at("pair")), weight_from_json(j.at("V")), weight_from_json(j.at("W")),
                    j.at("n1").get<std::uint64_t>(), j.at("n2").get<std::uint64_t>(),
                    j.at("n3").get<std::uint64_t>(), j.at("n4").get<std::uint64_t>(), {}};
    for (const auto &w : j.at("missing"))
        c.missing.push_back(weight_from_json(w));
    return c;
}

inline std::string density_text(const ScanReport &r) {
    if (!r.density_defined())
        return "0/0";
    const auto d = r.density();
    return std::to_string(d.numerator()) + "/" + std::to_string(d.denominator());
}

inline Json to_json(const ScanReport &r) {
    Json counter = Json::array(), sample = Json::array();
    for (const auto &t : r.counterexamples)
        counter.push_back(triple_json(t));
    for (const auto &t : r.missing_sample)
        sample.push_back(triple_json(t));
    return Json{{"pair", pair_json(r.pair)},
                {"height", r.height},
                {"filter", r.filter},
                {"conjecture", conjecture_name(r.conjecture)},
                {"enumerated", r.enumerated},
                {"total_invariant_triples", r.total_invariant_triples},
                {"missing_triples", r.missing_triples},
                {"hypothesis_triples", r.hypothesis_triples},
                {"density", density_text(r)},
                {"truncated", r.truncated},
                {"counterexamples", counter},
                {"missing_sample", sample}};
}

inline ScanReport scan_report_from_json(const Json &j) {
    ScanReport r{pair_from_json(j.at("pair")), j.at("height").get<int>(), j.at("filter").get<std::string>(),
                 parse_conjecture(j.at("conjecture").get<std::string>())};
    r.enumerated = j.at("enumerated").get<std::uint64_t>();
    r.total_invariant_triples = j.at("total_invariant_triples").get<std::uint64_t>();
    r.missing_triples = j.at("missing_triples").get<std::uint64_t>();
    r.hypothesis_triples = j.at("hypothesis_triples").get<std::uint64_t>();
    r.truncated = j.at("truncated").get<bool>();
    for (const auto &t : j.at("counterexamples"))
        r.counterexamples.push_back(triple_from_json(t));
    for (const auto &t : j.at("missing_sample"))
        r.missing_sample.push_back(triple_from_json(t));
    return r;
}

// ---------------------------------------------------------------------------
// Reports

struct Metadata {
    std::string tool = "lierep";
    std::string version = engine_version;
    std::string verb;
    std::vector<std::string> args;
    Json settings = Json::object(); // resolved options needed to rerun
    std::vector<std::string> notes;
    std::optional<Json> cache;      // omitted in deterministic mode
    std::optional<double> elapsed_ms;
    bool operator==(const Metadata &) const = default;
};

struct Report {
    Metadata metadata;
    Json body;
    bool operator==(const Report &) const = default;
};

inline Json to_json(const Report &r) {
    Json meta{{"tool", r.metadata.tool},
              {"version", r.metadata.version},
              {"verb", r.metadata.verb},
              {"args", r.metadata.args},
              {"settings", r.metadata.settings},
              {"notes", r.metadata.notes}};
    if (r.metadata.cache)
        meta["cache"] = *r.metadata.cache;
    if (r.metadata.elapsed_ms)
        meta["elapsed_ms"] = *r.metadata.elapsed_ms;
    return Json{{"metadata", meta}, {"body", r.body}};
}

inline Report report_from_json(const Json &j) {
    Report r;
    const auto &m = j.at("metadata");
    r.metadata.tool = m.at("tool").get<std::string>();
    r.metadata.version = m.at("version").get<std::string>();
    r.metadata.verb = m.at("verb").get<std::string>();
    r.metadata.args = m.at("args").get<std::vector<std::string>>();
    r.metadata.settings = m.at("settings");
    r.metadata.notes = m.at("notes").get<std::vector<std::string>>();
    if (m.contains("cache"))
        r.metadata.cache = m.at("cache");
    if (m.contains("elapsed_ms"))
        r.metadata.elapsed_ms = m.at("elapsed_ms").get<double>();
    r.body = j.at("body");
    return r;
}

// ---------------------------------------------------------------------------
// Settings

enum class Format { paper, long_csv, json };

inline Format parse_format(std::string_view s) {
    if (s == "paper") return Format::paper;
    if (s == "long") return Format::long_csv;
    if (s == "json") return Format::json;
    throw InvalidArgument("unknown format '" + std::string(s) + "' (expected paper, long or json)");
}

inline const std::vector<std::string> &verbs() {
    static const std::vector<std::string> v{"decompose", "fold",     "unfold",  "triple",    "cell",      "table",
                                            "scan",      "verify",   "special", "question1", "question2", "twisted"};
    return v;
}

// Keys shared by flags, LIEREP_* environment variables and the config file.
inline const std::vector<std::string> &setting_keys() {
    static const std::vector<std::string> k{"family", "rank",    "pair",  "n",     "height",
                                            "filter", "conjecture", "format", "workers", "cache",
                                            "cache-format", "cache-capacity", "limit", "deterministic", "preset"};
    return k;
}

struct Settings {
    std::string verb;
    std::vector<std::string> args;
    std::optional<Letter> family;
    std::optional<int> rank;
    PairKind::Kind pair = PairKind::even;
    int n = 2;
    int height = 1;
    std::string filter;
    std::string conjecture;
    Format format = Format::paper;
    unsigned workers = default_workers();
    std::string cache_path;
    CacheFormat cache_format = CacheFormat::json;
    std::size_t cache_capacity = CharacterCache::default_capacity;
    std::uint64_t limit = 10'000'000;
    bool deterministic = false;
    std::string preset;
    std::vector<std::string> rows, cols;

    void apply(const std::string &key, const std::string &value) {
        if (key == "family") {
            family = parse_letter(trim(value));
        } else if (key == "rank") {
            rank = parse_int<int>(value, "rank");
        } else if (key == "pair") {
            pair = parse_pair_kind(trim(value));
        } else if (key == "n") {
            n = parse_int<int>(value, "n");
        } else if (key == "height") {
            height = parse_int<int>(value, "height");
            if (height < 0)
                throw InvalidArgument("height must be >= 0");
        } else if (key == "filter") {
            filter = std::string(trim(value));
        } else if (key == "conjecture") {
            conjecture = std::string(trim(value));
        } else if (key == "format") {
            format = parse_format(trim(value));
        } else if (key == "workers") {
            const int w = parse_int<int>(value, "workers");
            if (w < 1)
                throw InvalidArgument("workers must be >= 1");
            workers = static_cast<unsigned>(w);
        } else if (key == "cache") {
            cache_path = std::string(trim(value));
        } else if (key == "cache-format") {
            cache_format = parse_cache_format(trim(value));
        } else if (key == "cache-capacity") {
            cache_capacity = parse_int<std::size_t>(value, "cache-capacity");
        } else if (key == "limit") {
            limit = parse_int<std::uint64_t>(value, "limit");
        } else if (key == "deterministic") {
            deterministic = parse_bool(value, "deterministic");
        } else if (key == "preset") {
            preset = std::string(trim(value));
        } else {
            throw InvalidArgument("unknown setting '" + key + "'");
        }
    }
};

// Flat "key = value" lines; '#' starts a comment.
inline std::map<std::string, std::string> read_config_file(const std::string &path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot read config file '" + path + "'");
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        const auto t = trim(line);
        if (t.empty())
            continue;
        const auto eq = t.find('=');
        if (eq == std::string_view::npos)
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key(trim(t.substr(0, eq)));
        if (std::find(setting_keys().begin(), setting_keys().end(), key) == setting_keys().end())
            throw InvalidArgument(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        out[key] = std::string(trim(t.substr(eq + 1)));
    }
    return out;
}

inline std::string env_name(const std::string &key) {
    std::string s = "LIEREP_";
    for (char c : key)
        s += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    return s;
}

using EnvLookup = std::function<std::optional<std::string>(const std::string &)>;

inline EnvLookup process_environment() {
    return [](const std::string &name) -> std::optional<std::string> {
        if (const char *v = std::getenv(name.c_str()))
            return std::string(v);
        return std::nullopt;
    };
}

// Layers, lowest first: defaults, config file, environment, flags.
inline Settings resolve_settings(const std::string &verb, const std::vector<std::string> &args,
                                 const std::map<std::string, std::string> &flags,
                                 const std::optional<std::string> &config_flag, const EnvLookup &env) {
    if (std::find(verbs().begin(), verbs().end(), verb) == verbs().end())
        throw InvalidArgument("unknown verb '" + verb + "'");
    Settings s;
    s.verb = verb;
    s.args = args;
    std::map<std::string, std::string> merged;
    std::optional<std::string> config = config_flag;
    if (!config)
        config = env("LIEREP_CONFIG");
    if (config && !config->empty())
        for (const auto &[k, v] : read_config_file(*config))
            merged[k] = v;
    for (const auto &key : setting_keys())
        if (auto v = env(env_name(key)))
            merged[key] = *v;
    for (const auto &[k, v] : flags)
        merged[k] = v;
    for (const auto &key : setting_keys())
        if (auto it = merged.find(key); it != merged.end())
            s.apply(key, it->second);
    return s;
}

// ---------------------------------------------------------------------------
// Table presets: the row and column headers of the three sample tables.

struct TablePreset {
    PairKind::Kind kind;
    int n;
    std::vector<std::vector<int>> rows, cols;
};

inline const std::map<std::string, TablePreset> &table_presets() {
    static const std::map<std::string, TablePreset> p{
        {"a3b2",
         {PairKind::even, 2,
          {{0, 1}, {0, 8}, {1, 2}, {1, 6}, {2, 0}, {2, 4}, {2, 5}, {3, 0}, {3, 3}, {7, 0}},
          {{1, 0}, {1, 1}, {2, 2}, {2, 8}, {5, 0}, {5, 9}, {8, 0}}}},
        {"a5b3",
         {PairKind::even, 3,
          {{0, 0, 8}, {0, 6, 2}, {1, 5, 5}, {2, 4, 1}, {2, 5, 8}, {2, 6, 0}, {3, 0, 2}, {4, 3, 1}, {4, 4, 0},
           {9, 3, 0}, {9, 8, 7}},
          {{0, 0, 4}, {1, 0, 0}, {2, 2, 2}, {5, 1, 0}, {5, 9, 9}, {8, 5, 0}, {8, 7, 0}}}},
        {"a4c2",
         {PairKind::odd, 2,
          {{0, 1}, {0, 5}, {0, 7}, {0, 9}, {2, 0}, {2, 4}, {2, 5}, {3, 0}, {8, 5}, {9, 7}},
          {{0, 1}, {0, 4}, {0, 7}, {5, 0}, {5, 9}, {6, 2}, {8, 0}, {8, 9}}}},
    };
    return p;
}

// ---------------------------------------------------------------------------
// Verb execution

namespace detail {

inline void require_args(const Settings &s, std::size_t count, const char *usage) {
    if (s.args.size() != count)
        throw InvalidArgument(s.verb + " expects " + usage + ", got " + std::to_string(s.args.size()) +
                              " argument(s)");
}

inline PairKind pair_of(const Settings &s) { return PairKind(s.pair, s.n); }

inline Json body_decompose(const Settings &s, Engine &engine) {
    require_args(s, 2, "two weights");
    if (!s.family)
        throw InvalidArgument("decompose needs --family");
    const DominantWeight lambda = parse_weight(s.args[0], s.rank ? std::optional<std::size_t>(*s.rank) : std::nullopt);
    const auto &datum = root_datum(*s.family, s.rank.value_or(static_cast<int>(lambda.size())));
    const DominantWeight mu = parse_weight(s.args[1], datum.rank());
    datum.check_rank(lambda);
    const auto d = engine.decompositions.get(datum, lambda, mu);
    return Json{{"family", datum.family().to_string()},
                {"lambda", coords_json(lambda)},
                {"mu", coords_json(mu)},
                {"distinct", d->size()},
                {"terms", to_json(*d)}};
}

inline Json body_fold(const Settings &s, bool forward) {
    require_args(s, 1, "one weight");
    const PairKind pair = pair_of(s);
    const std::size_t len = forward ? pair.n() : pair.sl_family().rank();
    const DominantWeight in = parse_weight(s.args[0], len);
    const DominantWeight out = forward ? fold(pair, in) : unfold(pair, in);
    return Json{{"pair", pair_json(pair)},
                {"from", forward ? pair.folded_family().to_string() : pair.sl_family().to_string()},
                {"to", forward ? pair.sl_family().to_string() : pair.folded_family().to_string()},
                {"input", coords_json(in)},
                {"output", coords_json(out)}};
}

inline Json body_triple(const Settings &s, Engine &engine) {
    require_args(s, 3, "three folded-side weights");
    const PairKind pair = pair_of(s);
    const auto r = triple_report(pair, parse_weight(s.args[0], pair.n()), parse_weight(s.args[1], pair.n()),
                                 parse_weight(s.args[2], pair.n()), engine);
    return to_json(r);
}

// SL-side (selfdual) or folded-side weights are both accepted.
inline DominantWeight cell_operand(const PairKind &pair, const std::string &text) {
    const DominantWeight w = parse_weight(text);
    if (w.size() == static_cast<std::size_t>(pair.n()))
        return fold(pair, w);
    if (w.size() != static_cast<std::size_t>(pair.sl_family().rank()))
        throw InvalidArgument("weight '" + text + "' is neither a " + pair.sl_family().to_string() + " nor a " +
                              pair.folded_family().to_string() + " weight");
    return w;
}

inline Json body_cell(const Settings &s, Engine &engine) {
    require_args(s, 2, "two weights");
    const PairKind pair = pair_of(s);
    return to_json(pair_table_cell(pair, cell_operand(pair, s.args[0]), cell_operand(pair, s.args[1]), engine));
}

inline Json body_table(Settings &s, Engine &engine) {
    std::vector<DominantWeight> rows, cols;
    if (!s.preset.empty()) {
        const auto it = table_presets().find(s.preset);
        if (it == table_presets().end())
            throw InvalidArgument("unknown table preset '" + s.preset + "' (expected a3b2, a5b3 or a4c2)");
        s.pair = it->second.kind;
        s.n = it->second.n;
        for (const auto &r : it->second.rows)
            rows.emplace_back(Weight(std::span<const int>(r)));
        for (const auto &c : it->second.cols)
            cols.emplace_back(Weight(std::span<const int>(c)));
    }
    const PairKind pair = pair_of(s);
    for (const auto &r : s.rows)
        rows.push_back(parse_weight(r, pair.n()));
    for (const auto &c : s.cols)
        cols.push_back(parse_weight(c, pair.n()));
    const Table table = build_table(pair, rows, cols, engine);
    Json jr = Json::array(), jc = Json::array(), cells = Json::array();
    for (const auto &r : rows)
        jr.push_back(coords_json(r));
    for (const auto &c : cols)
        jc.push_back(coords_json(c));
    for (const auto &row : table) {
        Json line = Json::array();
        for (const auto &cell : row)
            line.push_back(to_json(cell));
        cells.push_back(line);
    }
    return Json{{"pair", pair_json(pair)}, {"rows", jr}, {"cols", jc}, {"cells", cells}};
}

inline Json body_scan(const Settings &s, Engine &engine, bool verify) {
    require_args(s, 0, "no positional arguments");
    const PairKind pair = pair_of(s);
    if (verify) {
        const Conjecture c = s.conjecture.empty() ? conjecture_for(pair) : parse_conjecture(s.conjecture);
        return to_json(verify_conjecture(pair, c, s.height, engine));
    }
    return to_json(scan_missing(pair, s.height, TripleFilter::parse(s.filter), engine));
}

inline Json opt_json(const std::optional<bool> &v) { return v ? Json(*v) : Json(nullptr); }

inline Json body_special(const Settings &s, Engine &engine) {
    require_args(s, 2, "m and n");
    const auto r = special_case_counts(parse_int<int>(s.args[0], "m"), parse_int<int>(s.args[1], "n"), engine);
    Json claims{{"selfdual_total", r.claims.selfdual_total},
                {"missing_total", r.claims.missing_total},
                {"p_range_sl", r.claims.p_range_sl},
                {"p_range_spin", r.claims.p_range_spin},
                {"distinct_total", r.claims.distinct_total ? Json(*r.claims.distinct_total) : Json(nullptr)},
                {"distinct_bound", r.claims.distinct_bound ? Json(*r.claims.distinct_bound) : Json(nullptr)}};
    return Json{{"m", r.m},
                {"n", r.n},
                {"distinct_total", r.distinct_total},
                {"selfdual_total", r.selfdual_total},
                {"missing_total", r.missing_total},
                {"p_range_sl", r.p_range_sl},
                {"p_range_spin", r.p_range_spin},
                {"claims", claims},
                {"selfdual_matches", r.selfdual_matches()},
                {"missing_matches", r.missing_matches()},
                {"p_range_sl_matches", r.p_range_sl_matches()},
                {"p_range_spin_matches", r.p_range_spin_matches()},
                {"distinct_matches", opt_json(r.distinct_matches())},
                {"distinct_bound_holds", opt_json(r.distinct_bound_holds())}};
}

inline Json body_question1(const Settings &s, Engine &engine) {
    require_args(s, 2, "k and l");
    const auto r = question1_compare(s.n, parse_int<int>(s.args[0], "k"), parse_int<int>(s.args[1], "l"), engine);
    return Json{{"n", r.n},
                {"k", r.k},
                {"l", r.l},
                {"bn_terms", to_json(r.bn_terms)},
                {"cn_terms", to_json(r.cn_terms)},
                {"multiplicity_free_b", r.multiplicity_free_b},
                {"multiplicity_free_c", r.multiplicity_free_c},
                {"constituents_match", opt_json(r.constituents_match)},
                {"doubling_match", opt_json(r.doubling_match)},
                {"c_second_coords_even", opt_json(r.c_second_coords_even)},
                {"halving_match", opt_json(r.halving_match)},
                {"b_second_coords_even", opt_json(r.b_second_coords_even)}};
}

inline Json terms_json(const std::vector<std::pair<DominantWeight, Mult>> &terms) {
    return to_json(Decomposition{terms});
}

inline Json body_question2(const Settings &s, Engine &engine) {
    require_args(s, 2, "k and l");
    const auto r = question2_compare(s.n, parse_int<int>(s.args[0], "k"), parse_int<int>(s.args[1], "l"), engine);
    return Json{{"n", r.n},
                {"k", r.k},
                {"l", r.l},
                {"odd_terms_even_sl", terms_json(r.odd_terms_even_sl)},
                {"odd_terms_odd_sl", terms_json(r.odd_terms_odd_sl)},
                {"bijection_holds", r.bijection_holds},
                {"multiplicities_preserved", r.multiplicities_preserved},
                {"higher_coords_zero", opt_json(r.higher_coords_zero)}};
}

inline Json body_twisted(const Settings &s) {
    require_args(s, 0, "no positional arguments");
    const auto r = twisted_spin_character(s.n);
    Json weights = Json::array();
    for (const auto &w : r.spin_weights)
        weights.push_back(coords_json(w));
    return Json{{"n", r.n},
                {"eigencharacter_count", r.eigencharacter_count},
                {"fixed_count", r.fixed_count},
                {"fixed_characters", r.fixed_characters},
                {"spin_weights", weights},
                {"matches_spin_weights", r.matches_spin_weights}};
}

inline Json stats_json(const CacheStats &c) {
    return Json{{"hits", c.hits}, {"misses", c.misses}, {"evictions", c.evictions}};
}

inline Json settings_json(const Settings &s) {
    return Json{{"family", s.family ? Json(std::string(1, letter_char(*s.family))) : Json(nullptr)},
                {"rank", s.rank ? Json(*s.rank) : Json(nullptr)},
                {"pair", s.pair == PairKind::even ? "even" : "odd"},
                {"n", s.n},
                {"height", s.height},
                {"filter", s.filter.empty() ? "none" : s.filter},
                {"conjecture", s.conjecture.empty() ? Json(nullptr) : Json(s.conjecture)},
                {"limit", s.limit},
                {"preset", s.preset.empty() ? Json(nullptr) : Json(s.preset)}};
}

} // namespace detail

// Runs one verb against the given caches and returns the full report.
inline Report execute(Settings s, Engine &engine) {
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    rep.metadata.verb = s.verb;
    rep.metadata.args = s.args;
    for (const auto &r : s.rows)
        rep.metadata.args.push_back("--row=" + r);
    for (const auto &c : s.cols)
        rep.metadata.args.push_back("--col=" + c);
    const std::string &v = s.verb;
    if (v == "decompose") rep.body = detail::body_decompose(s, engine);
    else if (v == "fold") rep.body = detail::body_fold(s, true);
    else if (v == "unfold") rep.body = detail::body_fold(s, false);
    else if (v == "triple") rep.body = detail::body_triple(s, engine);
    else if (v == "cell") rep.body = detail::body_cell(s, engine);
    else if (v == "table") rep.body = detail::body_table(s, engine);
    else if (v == "scan") rep.body = detail::body_scan(s, engine, false);
    else if (v == "verify") rep.body = detail::body_scan(s, engine, true);
    else if (v == "special") rep.body = detail::body_special(s, engine);
    else if (v == "question1") rep.body = detail::body_question1(s, engine);
    else if (v == "question2") rep.body = detail::body_question2(s, engine);
    else if (v == "twisted") rep.body = detail::body_twisted(s);
    else throw InvalidArgument("unknown verb '" + v + "'");
    rep.metadata.settings = detail::settings_json(s);
    if ((v == "cell" || v == "table") && s.pair == PairKind::odd)
        rep.metadata.notes.push_back(
            "odd pair: n2 and n4 count only selfdual constituents whose Sp central character matches the product");
    if (!s.deterministic) {
        rep.metadata.cache = Json{{"characters", detail::stats_json(engine.characters.stats())},
                                  {"decompositions", detail::stats_json(engine.decompositions.stats())}};
        rep.metadata.elapsed_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Rendering. All formats are produced from the JSON body.

namespace detail {

inline std::string bracket(const Json &coords) {
    std::string s = "[";
    for (std::size_t i = 0; i < coords.size(); ++i)
        s += (i ? "," : "") + std::to_string(coords[i].get<int>());
    return s + "]";
}

inline std::string brace(const Json &coords) {
    std::string b = bracket(coords);
    b.front() = '{';
    b.back() = '}';
    return b;
}

inline std::string csv_quote(const std::string &s) {
    if (s.find_first_of(",\"") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s)
        out += c == '"' ? std::string("\"\"") : std::string(1, c);
    return out + "\"";
}

inline std::string scalar_text(const Json &j) {
    if (j.is_string())
        return j.get<std::string>();
    if (j.is_null())
        return "n/a";
    return j.dump();
}

inline void render_terms(std::ostream &out, const Json &terms, bool csv) {
    if (csv)
        out << "weight,multiplicity\n";
    for (const auto &t : terms)
        out << (csv ? csv_quote(bracket(t.at("weight"))) + "," : bracket(t.at("weight")) + " ")
            << t.at("multiplicity").get<Mult>() << '\n';
}

inline void render_table_paper(std::ostream &out, const Json &b) {
    out << "row";
    for (const auto &c : b.at("cols"))
        out << ',' << csv_quote(brace(c)) << ',';
    out << '\n';
    for (std::size_t i = 0; i < b.at("rows").size(); ++i) {
        const auto &row = b.at("cells").at(i);
        out << csv_quote(brace(b.at("rows").at(i)));
        for (const auto &cell : row)
            out << ',' << cell.at("n1").get<std::uint64_t>() << ',' << cell.at("n4").get<std::uint64_t>();
        out << "\n";
        for (const auto &cell : row)
            out << ',' << cell.at("n2").get<std::uint64_t>() << ',' << cell.at("n3").get<std::uint64_t>();
        out << '\n';
    }
}

inline void render_cells_long(std::ostream &out, const std::vector<Json> &cells) {
    out << "pair,n,row,col,V,W,n1,n2,n3,n4\n";
    for (const auto &c : cells)
        out << c.at("pair").at("kind").get<std::string>() << ',' << c.at("pair").at("n").get<int>() << ','
            << csv_quote(brace(c.at("V_folded"))) << ',' << csv_quote(brace(c.at("W_folded"))) << ','
            << csv_quote(bracket(c.at("V"))) << ',' << csv_quote(bracket(c.at("W"))) << ','
            << c.at("n1").get<std::uint64_t>() << ',' << c.at("n2").get<std::uint64_t>() << ','
            << c.at("n3").get<std::uint64_t>() << ',' << c.at("n4").get<std::uint64_t>() << '\n';
}

inline void render_scan(std::ostream &out, const Json &b, bool csv) {
    if (csv) {
        out << "pair,n,height,filter,conjecture,enumerated,invariant,missing,density,hypothesis,counterexamples,"
               "truncated\n";
        out << b.at("pair").at("kind").get<std::string>() << ',' << b.at("pair").at("n").get<int>() << ','
            << b.at("height").get<int>() << ',' << csv_quote(b.at("filter").get<std::string>()) << ','
            << b.at("conjecture").get<std::string>() << ',' << b.at("enumerated") << ','
            << b.at("total_invariant_triples") << ',' << b.at("missing_triples") << ','
            << b.at("density").get<std::string>() << ',' << b.at("hypothesis_triples") << ','
            << b.at("counterexamples").size() << ',' << (b.at("truncated").get<bool>() ? "true" : "false") << '\n';
        return;
    }
    out << "pair: " << b.at("pair").at("kind").get<std::string>() << " n=" << b.at("pair").at("n").get<int>()
        << "\nheight: " << b.at("height").get<int>() << "\nfilter: " << b.at("filter").get<std::string>()
        << "\nenumerated triples: " << b.at("enumerated") << "\ninvariant triples: "
        << b.at("total_invariant_triples") << "\nmissing triples: " << b.at("missing_triples")
        << "\ndensity: " << b.at("density").get<std::string>() << "\n"
        << b.at("conjecture").get<std::string>() << " hypothesis triples: " << b.at("hypothesis_triples") << '\n'
        << b.at("conjecture").get<std::string>() << " counterexamples: " << b.at("counterexamples").size() << '\n';
    for (const auto &t : b.at("counterexamples"))
        out << "  " << bracket(t[0]) << ' ' << bracket(t[1]) << ' ' << bracket(t[2]) << '\n';
    if (b.at("truncated").get<bool>())
        out << "truncated: triple limit reached, counts are partial\n";
}

inline void render_generic(std::ostream &out, const Json &b, bool csv) {
    if (csv)
        out << "key,value\n";
    for (const auto &[k, v] : b.items()) {
        std::string text;
        if (v.is_array() && !v.empty() && v[0].is_number_integer())
            text = bracket(v);
        else if (v.is_object() || v.is_array())
            text = v.dump();
        else
            text = scalar_text(v);
        out << (csv ? k + "," + csv_quote(text) : k + ": " + text) << '\n';
    }
}

} // namespace detail

inline void render(std::ostream &out, const Report &rep, Format format) {
    if (format == Format::json) {
        out << to_json(rep).dump(2) << '\n';
        return;
    }
    const bool csv = format == Format::long_csv;
    const Json &b = rep.body;
    const std::string &v = rep.metadata.verb;
    if (v == "decompose") {
        if (!csv)
            out << b.at("family").get<std::string>() << ' ' << detail::bracket(b.at("lambda")) << " x "
                << detail::bracket(b.at("mu")) << " (" << b.at("distinct") << " distinct)\n";
        detail::render_terms(out, b.at("terms"), csv);
    } else if (v == "fold" || v == "unfold") {
        if (csv)
            out << "input,output\n"
                << detail::csv_quote(detail::bracket(b.at("input"))) << ','
                << detail::csv_quote(detail::bracket(b.at("output"))) << '\n';
        else
            out << detail::bracket(b.at("output")) << '\n';
    } else if (v == "cell") {
        if (csv) {
            detail::render_cells_long(out, {b});
        } else {
            out << b.at("n1") << ' ' << b.at("n4") << '\n' << b.at("n2") << ' ' << b.at("n3") << '\n';
            for (const auto &w : b.at("missing"))
                out << "missing: " << detail::bracket(w) << '\n';
        }
    } else if (v == "table") {
        if (csv) {
            std::vector<Json> cells;
            for (const auto &row : b.at("cells"))
                for (const auto &c : row)
                    cells.push_back(c);
            detail::render_cells_long(out, cells);
        } else {
            detail::render_table_paper(out, b);
        }
    } else if (v == "scan" || v == "verify") {
        detail::render_scan(out, b, csv);
    } else {
        detail::render_generic(out, b, csv);
    }
}

// ---------------------------------------------------------------------------
// Process entry

struct Invocation {
    std::string verb;
    std::vector<std::string> args;
    std::map<std::string, std::string> flags;
    std::optional<std::string> config;
    std::vector<std::string> rows, cols;
};

inline int exit_code(const Error &e) { return static_cast<int>(e.code()); }

inline void report_error(std::ostream &err, const Error &e) {
    err << "lierep: error[" << error_code_name(e.code()) << "] code=" << exit_code(e) << ": " << e.what() << '\n';
}

// Resolves settings, runs the verb with fresh caches and writes the report.
inline int run(const Invocation &inv, std::ostream &out, std::ostream &err, const EnvLookup &env) {
    try {
        Settings s = resolve_settings(inv.verb, inv.args, inv.flags, inv.config, env);
        s.rows = inv.rows;
        s.cols = inv.cols;
        CharacterCache characters(s.cache_capacity);
        DecompositionCache decompositions(DecompositionCache::default_capacity, characters);
        if (!s.cache_path.empty())
            decompositions.load(s.cache_path, s.cache_format);
        Engine engine{characters, decompositions, s.workers, s.limit};
        const Report rep = execute(s, engine);
        if (!s.cache_path.empty())
            decompositions.save(s.cache_path, s.cache_format);
        render(out, rep, s.format);
        return 0;
    } catch (const Error &e) {
        report_error(err, e);
        return exit_code(e);
    } catch (const std::exception &e) {
        err << "lierep: error[internal] code=1: " << e.what() << '\n';
        return 1;
    }
}

} // namespace lierep::cli
