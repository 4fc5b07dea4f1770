#pragma once

// Degree-maximizing non-empty subsets of scenarios (AI system) or domains
// (GPAI). Degree is additive over disjoint unions, so each unit carries a
// fixed degree and a subset's degree is the sum over its members.
//
// Maximizers are listed in a fixed order: larger subsets first, then the
// lexicographically smaller sorted id list. The first listed maximizer is
// the canonical one.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rightsrisk/rational.hpp"
#include "rightsrisk/scoring.hpp"

namespace rightsrisk {

enum class SearchMode { Exhaustive, Fast };

inline const char* to_string(SearchMode m) { return m == SearchMode::Exhaustive ? "exhaustive" : "fast-path"; }

inline constexpr std::size_t kExhaustiveLimit = 24;
inline constexpr std::size_t kDefaultListCap = 64;
inline constexpr std::size_t kUnlimited = std::numeric_limits<std::size_t>::max();

struct UnitDegree {
    std::string id;
    Rational degree;
};

struct MinimizationResult {
    std::vector<std::vector<std::string>> maximizers; // at most the list cap
    std::uint64_t maximizerCount = 0;
    std::vector<std::string> canonical;
    Rational optimalDegree;
    std::map<std::string, Rational> perUnitDegrees;
    SearchMode method = SearchMode::Fast;
};

namespace detail {

// Units re-indexed by ascending id; bit i of a mask is the i-th smallest id.
struct RankedUnits {
    std::vector<std::string> ids;
    std::vector<Rational> degrees;
};

inline RankedUnits rank_units(const std::vector<UnitDegree>& units) {
    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return units[a].id < units[b].id; });
    for (std::size_t i = 1; i < order.size(); ++i)
        if (units[order[i]].id == units[order[i - 1]].id) throw Error("duplicate unit '" + units[order[i]].id + "'");
    RankedUnits out;
    for (auto i : order) {
        out.ids.push_back(units[i].id);
        out.degrees.push_back(units[i].degree);
    }
    return out;
}

// Listing order on masks: more members first, then the set holding the
// smallest differing id.
inline bool listed_before(std::uint32_t a, std::uint32_t b) {
    const int ca = std::popcount(a);
    const int cb = std::popcount(b);
    if (ca != cb) return ca > cb;
    const std::uint32_t diff = a ^ b;
    return diff != 0 && (a & (diff & (~diff + 1))) != 0;
}

inline std::vector<std::string> ids_of(const RankedUnits& units, std::uint32_t mask) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < units.ids.size(); ++i)
        if ((mask >> i) & 1U) out.push_back(units.ids[i]);
    return out;
}

inline MinimizationResult finish(const RankedUnits& units, std::vector<std::uint32_t> listed, std::uint64_t count,
                                 Rational best, SearchMode mode) {
    MinimizationResult r;
    r.method = mode;
    r.maximizerCount = count;
    r.optimalDegree = best;
    for (std::size_t i = 0; i < units.ids.size(); ++i) r.perUnitDegrees[units.ids[i]] = units.degrees[i];
    for (auto m : listed) r.maximizers.push_back(ids_of(units, m));
    r.canonical = r.maximizers.front();
    return r;
}

inline MinimizationResult exhaustive(const RankedUnits& units, std::size_t cap) {
    const std::size_t n = units.ids.size();
    if (n > kExhaustiveLimit)
        throw Error("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " units (got " +
                    std::to_string(n) + "); use fast mode");
    // Scale every degree to a common denominator and sum integers.
    __int128 lcm = 1;
    for (const auto& d : units.degrees) lcm = std::lcm(static_cast<std::int64_t>(lcm), d.den());
    std::vector<__int128> scaled;
    for (const auto& d : units.degrees) scaled.push_back(static_cast<__int128>(d.num()) * (lcm / d.den()));

    std::vector<std::uint32_t> top;
    std::uint64_t count = 0;
    __int128 best = 0;
    __int128 sum = 0;
    std::uint32_t mask = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    // Gray-code walk: each step toggles one unit.
    for (std::uint64_t i = 1; i < total; ++i) {
        const int bit = std::countr_zero(i);
        mask ^= std::uint32_t{1} << bit;
        sum += ((mask >> bit) & 1U) ? scaled[bit] : -scaled[bit];
        if (count == 0 || sum > best) {
            best = sum;
            count = 1;
            top.assign(1, mask);
            continue;
        }
        if (sum < best) continue;
        ++count;
        if (top.size() >= cap && !listed_before(mask, top.back())) continue;
        top.insert(std::upper_bound(top.begin(), top.end(), mask, listed_before), mask);
        if (top.size() > cap) top.pop_back();
    }
    return finish(units, std::move(top), count,
                  Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(lcm)), SearchMode::Exhaustive);
}

// Calls emit(mask) for each k-subset of `pool` in lexicographic order; stops
// when emit returns false.
template <class F>
bool for_each_combination(const std::vector<std::size_t>& pool, std::size_t k, F&& emit) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (k > pool.size()) return true;
    for (;;) {
        std::uint32_t mask = 0;
        for (auto i : idx) mask |= std::uint32_t{1} << pool[i];
        if (!emit(mask)) return false;
        std::size_t j = k;
        while (j > 0 && idx[j - 1] == pool.size() - k + (j - 1)) --j;
        if (j == 0) return true;
        ++idx[j - 1];
        for (std::size_t t = j; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
}

// Positive units are always worth including, zero units are optional,
// negative units only ever help when nothing else is available.
inline MinimizationResult fast(const RankedUnits& units, std::size_t cap) {
    const std::size_t n = units.ids.size();
    if (n > 32) throw Error("fast mode is limited to 32 units");
    std::uint32_t positive = 0;
    std::vector<std::size_t> zeros;
    Rational best;
    for (std::size_t i = 0; i < n; ++i) {
        const int s = units.degrees[i].sign();
        if (s > 0) {
            positive |= std::uint32_t{1} << i;
            best += units.degrees[i];
        } else if (s == 0) {
            zeros.push_back(i);
        }
    }
    std::vector<std::uint32_t> listed;
    if (positive == 0 && zeros.empty()) {
        best = *std::max_element(units.degrees.begin(), units.degrees.end());
        std::uint64_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (units.degrees[i] != best) continue;
            ++count;
            if (listed.size() < cap) listed.push_back(std::uint32_t{1} << i);
        }
        return finish(units, std::move(listed), count, best, SearchMode::Fast);
    }
    const std::size_t z = zeros.size();
    const std::uint64_t count = (std::uint64_t{1} << z) - (positive == 0 ? 1 : 0);
    const std::size_t smallest = positive == 0 ? 1 : 0;
    for (std::size_t k = z + 1; k-- > smallest && listed.size() < cap;) {
        for_each_combination(zeros, k, [&](std::uint32_t mask) {
            listed.push_back(positive | mask);
            return listed.size() < cap;
        });
    }
    return finish(units, std::move(listed), count, best, SearchMode::Fast);
}

} // namespace detail

inline MinimizationResult minimize_units(const std::vector<UnitDegree>& units, SearchMode mode,
                                         std::size_t listCap = kDefaultListCap) {
    if (units.empty()) throw Error("nothing to minimize over");
    if (listCap == 0) throw Error("list cap must be positive");
    auto ranked = detail::rank_units(units);
    return mode == SearchMode::Exhaustive ? detail::exhaustive(ranked, listCap) : detail::fast(ranked, listCap);
}

inline std::vector<UnitDegree> scenario_degrees(const KnowledgeBase& kb, const std::vector<std::string>& scenarios,
                                                const EngineOptions& options = {}) {
    std::vector<UnitDegree> units;
    for (const auto& id : scenarios) units.push_back({id, degree_scenario(assess_scenario(kb, id, options)).degree});
    return units;
}

inline MinimizationResult minimize_scenarios(const KnowledgeBase& kb, const std::vector<std::string>& scenarios,
                                             SearchMode mode, const EngineOptions& options = {},
                                             std::size_t listCap = kDefaultListCap) {
    if (mode == SearchMode::Exhaustive && scenarios.size() > kExhaustiveLimit)
        throw Error("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " units (got " +
                    std::to_string(scenarios.size()) + "); use fast mode");
    return minimize_units(scenario_degrees(kb, scenarios, options), mode, listCap);
}

inline MinimizationResult minimize_domain(const KnowledgeBase& kb, std::string_view domainId, SearchMode mode,
                                          const EngineOptions& options = {}, std::size_t listCap = kDefaultListCap) {
    return minimize_scenarios(kb, require_domain(kb, domainId).scenarios, mode, options, listCap);
}

inline MinimizationResult minimize_purpose(const KnowledgeBase& kb, std::string_view purposeId, SearchMode mode,
                                           const EngineOptions& options = {}, std::size_t listCap = kDefaultListCap) {
    const auto& purpose = require_purpose(kb, purposeId);
    if (mode == SearchMode::Exhaustive && purpose.domains.size() > kExhaustiveLimit)
        throw Error("exhaustive search is limited to " + std::to_string(kExhaustiveLimit) + " units (got " +
                    std::to_string(purpose.domains.size()) + "); use fast mode");
    std::vector<UnitDegree> units;
    for (const auto& d : purpose.domains) units.push_back({d, degree_domain(kb, d, std::nullopt, options).degree});
    return minimize_units(units, mode, listCap);
}

} // namespace rightsrisk
