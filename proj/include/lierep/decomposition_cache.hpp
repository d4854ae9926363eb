#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "characters.hpp"
#include "tensor.hpp"

namespace lierep {

enum class CacheFormat { json, binary };

inline CacheFormat parse_cache_format(std::string_view s) {
    if (s == "json") return CacheFormat::json;
    if (s == "bin" || s == "binary") return CacheFormat::binary;
    throw InvalidArgument("unknown cache format '" + std::string(s) + "' (expected json or bin)");
}

// LRU of tensor decompositions keyed by (family, lambda, mu), with an
// optional on-disk copy. Unreadable or mismatched files are ignored and the
// affected products are recomputed.
class DecompositionCache {
  public:
    static constexpr int format_version = 1;
    static constexpr std::size_t default_capacity = 4096;

    explicit DecompositionCache(std::size_t capacity = default_capacity,
                                CharacterCache &characters = default_character_cache())
        : capacity_(capacity), characters_(&characters) {}

    std::shared_ptr<const Decomposition> get(const RootDatum &datum, const DominantWeight &lambda,
                                             const DominantWeight &mu) {
        Key key{datum.family(), lambda, mu};
        {
            std::lock_guard lock(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) {
                ++stats_.hits;
                lru_.splice(lru_.begin(), lru_, it->second.second);
                return it->second.first;
            }
            ++stats_.misses;
        }
        auto value = std::make_shared<const Decomposition>(tensor_decompose(datum, lambda, mu, *characters_));
        insert(key, value);
        return value;
    }

    CacheStats stats() const {
        std::lock_guard lock(mu_);
        return stats_;
    }
    std::size_t size() const {
        std::lock_guard lock(mu_);
        return map_.size();
    }
    CharacterCache &characters() noexcept { return *characters_; }

    void save(const std::filesystem::path &path, CacheFormat format) const {
        std::lock_guard lock(mu_);
        // Oldest first so that a reload reproduces the recency order.
        std::vector<const Key *> keys;
        for (auto it = lru_.rbegin(); it != lru_.rend(); ++it)
            keys.push_back(&*it);
        if (format == CacheFormat::json) {
            nlohmann::ordered_json doc;
            doc["format"] = "lierep-decomposition-cache";
            doc["version"] = format_version;
            auto &entries = doc["entries"] = nlohmann::ordered_json::array();
            for (const Key *k : keys) {
                nlohmann::ordered_json e;
                e["family"] = k->family.to_string();
                e["lambda"] = coords(k->lambda);
                e["mu"] = coords(k->mu);
                auto &terms = e["terms"] = nlohmann::ordered_json::array();
                for (const auto &[nu, m] : map_.at(*k).first->terms)
                    terms.push_back({coords(nu), m});
                entries.push_back(std::move(e));
            }
            std::ofstream out(path);
            out << doc.dump() << '\n';
        } else {
            std::ofstream out(path, std::ios::binary);
            out.write(magic, sizeof magic);
            put<std::uint32_t>(out, format_version);
            put<std::uint64_t>(out, keys.size());
            for (const Key *k : keys) {
                put<std::uint8_t>(out, static_cast<std::uint8_t>(k->family.letter()));
                put<std::uint8_t>(out, static_cast<std::uint8_t>(k->family.rank()));
                put_weight(out, k->lambda);
                put_weight(out, k->mu);
                const auto &terms = map_.at(*k).first->terms;
                put<std::uint64_t>(out, terms.size());
                for (const auto &[nu, m] : terms) {
                    put_weight(out, nu);
                    put<std::int64_t>(out, m);
                }
            }
        }
    }

    // Returns the number of entries loaded; 0 when the file is missing or
    // does not match the expected format and version.
    std::size_t load(const std::filesystem::path &path, CacheFormat format) {
        if (!std::filesystem::exists(path))
            return 0;
        std::size_t loaded = 0;
        try {
            if (format == CacheFormat::json) {
                std::ifstream in(path);
                const auto doc = nlohmann::json::parse(in);
                if (doc.value("format", "") != "lierep-decomposition-cache" ||
                    doc.value("version", 0) != format_version)
                    return 0;
                for (const auto &e : doc.at("entries")) {
                    const std::string fam = e.at("family");
                    Family family(parse_letter(fam.substr(0, 1)), std::stoi(fam.substr(1)));
                    auto d = std::make_shared<Decomposition>();
                    for (const auto &t : e.at("terms"))
                        d->terms.emplace_back(DominantWeight(to_weight(t.at(0))), t.at(1).get<Mult>());
                    insert(Key{family, DominantWeight(to_weight(e.at("lambda"))),
                               DominantWeight(to_weight(e.at("mu")))},
                           std::move(d));
                    ++loaded;
                }
            } else {
                std::ifstream in(path, std::ios::binary);
                char m[sizeof magic];
                in.read(m, sizeof m);
                if (!in || std::string_view(m, sizeof m) != std::string_view(magic, sizeof magic))
                    return 0;
                if (get<std::uint32_t>(in) != format_version)
                    return 0;
                const auto count = get<std::uint64_t>(in);
                for (std::uint64_t i = 0; i < count; ++i) {
                    const auto letter = static_cast<Letter>(get<std::uint8_t>(in));
                    const int rank = get<std::uint8_t>(in);
                    Family family(letter, rank);
                    DominantWeight lambda(get_weight(in));
                    DominantWeight mu(get_weight(in));
                    auto d = std::make_shared<Decomposition>();
                    const auto n = get<std::uint64_t>(in);
                    for (std::uint64_t j = 0; j < n; ++j) {
                        DominantWeight nu(get_weight(in));
                        d->terms.emplace_back(nu, get<std::int64_t>(in));
                    }
                    if (!in)
                        break;
                    insert(Key{family, lambda, mu}, std::move(d));
                    ++loaded;
                }
            }
        } catch (const std::exception &) {
            // A damaged cache file only costs recomputation.
        }
        return loaded;
    }

  private:
    struct Key {
        Family family;
        DominantWeight lambda;
        DominantWeight mu;
        bool operator==(const Key &) const = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key &k) const noexcept {
            return (k.lambda.hash() * 1000003u) ^ k.mu.hash() ^
                   (static_cast<std::size_t>(k.family.letter()) << 8) ^
                   static_cast<std::size_t>(k.family.rank());
        }
    };
    static constexpr char magic[8] = {'L', 'R', 'D', 'C', 'A', 'C', 'H', 'E'};

    void insert(const Key &key, std::shared_ptr<const Decomposition> value) {
        std::lock_guard lock(mu_);
        if (map_.count(key) || capacity_ == 0)
            return;
        lru_.push_front(key);
        map_.emplace(key, std::make_pair(std::move(value), lru_.begin()));
        while (map_.size() > capacity_) {
            map_.erase(lru_.back());
            lru_.pop_back();
            ++stats_.evictions;
        }
    }

    static std::vector<int> coords(const Weight &w) { return std::vector<int>(w.begin(), w.end()); }
    static Weight to_weight(const nlohmann::json &j) {
        const auto v = j.get<std::vector<int>>();
        return Weight(std::span<const int>(v));
    }
    template <class T> static void put(std::ostream &out, T v) {
        out.write(reinterpret_cast<const char *>(&v), sizeof v);
    }
    template <class T> static T get(std::istream &in) {
        T v{};
        in.read(reinterpret_cast<char *>(&v), sizeof v);
        return v;
    }
    static void put_weight(std::ostream &out, const Weight &w) {
        put<std::uint8_t>(out, static_cast<std::uint8_t>(w.size()));
        for (int c : w)
            put<std::int32_t>(out, c);
    }
    static Weight get_weight(std::istream &in) {
        const std::size_t r = get<std::uint8_t>(in);
        std::vector<int> v(r);
        for (auto &c : v)
            c = get<std::int32_t>(in);
        return Weight(std::span<const int>(v));
    }

    mutable std::mutex mu_;
    std::size_t capacity_;
    CharacterCache *characters_;
    std::list<Key> lru_;
    std::unordered_map<Key, std::pair<std::shared_ptr<const Decomposition>, std::list<Key>::iterator>, KeyHash>
        map_;
    CacheStats stats_;
};

} // namespace lierep
