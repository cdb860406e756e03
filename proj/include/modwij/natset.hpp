#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "modwij/bigint.hpp"

namespace modwij {

/// Thrown when an enumerator-backed query would have to scan past its cap.
class SetExhausted : public std::runtime_error {
public:
    explicit SetExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// A subset of the positive integers, given by a membership predicate plus
/// optional closed forms for counting and for the j-th smallest element.
/// Closed forms let the big-integer constructions run far beyond any horizon
/// a scan could reach; without them, queries fall back to scanning the
/// predicate up to scan_cap.
class NatSet {
public:
    using Member = std::function<bool(std::uint64_t)>;
    using CountFn = std::function<BigInt(const BigInt&)>;
    using ElementFn = std::function<std::optional<BigInt>(const BigInt&)>;

    NatSet(std::string name, Member member, CountFn count = nullptr, ElementFn element = nullptr)
        : name_(std::move(name)),
          member_(std::move(member)),
          count_fn_(std::move(count)),
          element_fn_(std::move(element)) {}

    const std::string& name() const { return name_; }
    bool contains(std::uint64_t n) const { return n >= 1 && member_(n); }
    bool has_closed_count() const { return static_cast<bool>(count_fn_); }
    bool has_closed_element() const { return static_cast<bool>(element_fn_); }

    /// |{k <= n : k in set}|, exact.
    BigInt count_upto(const BigInt& n) const {
        if (n <= 0) return 0;
        if (count_fn_) return count_fn_(n);
        if (element_fn_) return count_via_element(n);
        if (n > scan_cap_)
            throw SetExhausted(name_ + ": count_upto(" + n.str() + ") exceeds scan cap");
        return BigInt(count_by_scan(n.convert_to<std::uint64_t>()));
    }

    std::uint64_t count_upto64(std::uint64_t n) const {
        if (count_fn_) return count_fn_(BigInt(n)).convert_to<std::uint64_t>();
        return count_by_scan(n);
    }

    /// j-th smallest element (1-indexed). nullopt when the set has fewer than
    /// j elements; throws SetExhausted when only a capped scan could tell.
    std::optional<BigInt> element(const BigInt& j) const {
        if (j < 1) throw std::domain_error("NatSet::element: index must be >= 1");
        if (element_fn_) return element_fn_(j);
        if (count_fn_) return element_via_count(j);
        return element_by_scan(j);
    }

    void set_scan_cap(std::uint64_t cap) { scan_cap_ = cap; }
    std::uint64_t scan_cap() const { return scan_cap_; }

private:
    BigInt count_via_element(const BigInt& n) const {
        // Largest j with element(j) <= n, by galloping + bisection.
        auto le = [&](const BigInt& j) {
            auto e = element_fn_(j);
            return e.has_value() && *e <= n;
        };
        if (!le(1)) return 0;
        BigInt lo = 1, hi = 2;
        while (le(hi)) { lo = hi; hi *= 2; }
        while (lo + 1 < hi) {
            BigInt mid = (lo + hi) / 2;
            (le(mid) ? lo : hi) = mid;
        }
        return lo;
    }

    std::optional<BigInt> element_via_count(const BigInt& j) const {
        // Smallest m with count_upto(m) >= j.
        BigInt hi = 1;
        while (count_fn_(hi) < j) {
            hi *= 2;
            if (boost::multiprecision::msb(hi) > element_search_bits_)
                return std::nullopt;  // treated as "set too sparse / finite"
        }
        BigInt lo = 0;
        while (lo + 1 < hi) {
            BigInt mid = (lo + hi) / 2;
            (count_fn_(mid) >= j ? hi : lo) = mid;
        }
        return hi;
    }

    std::optional<BigInt> element_by_scan(const BigInt& j) const {
        std::uint64_t seen = 0;
        for (std::uint64_t m = 1; m <= scan_cap_; ++m) {
            if (member_(m) && ++seen == j) return BigInt(m);
        }
        throw SetExhausted(name_ + ": element(" + j.str() + ") not found within scan cap " +
                           std::to_string(scan_cap_));
    }

    std::uint64_t count_by_scan(std::uint64_t n) const {
        std::uint64_t c = 0;
        for (std::uint64_t m = 1; m <= n; ++m) c += member_(m) ? 1 : 0;
        return c;
    }

    std::string name_;
    Member member_;
    CountFn count_fn_;
    ElementFn element_fn_;
    std::uint64_t scan_cap_ = std::uint64_t{1} << 24;
    static constexpr unsigned element_search_bits_ = 4096;
};

// ---- built-in sets ----

inline NatSet squares_set() {
    return NatSet(
        "squares", [](std::uint64_t n) { std::uint64_t r = isqrt64(n); return r * r == n; },
        [](const BigInt& n) { return isqrt(n); },
        [](const BigInt& j) -> std::optional<BigInt> { return j * j; });
}

inline NatSet evens_set() {
    return NatSet(
        "evens", [](std::uint64_t n) { return n % 2 == 0; },
        [](const BigInt& n) { return n / 2; },
        [](const BigInt& j) -> std::optional<BigInt> { return 2 * j; });
}

inline NatSet odds_set() {
    return NatSet(
        "odds", [](std::uint64_t n) { return n % 2 == 1; },
        [](const BigInt& n) { return (n + 1) / 2; },
        [](const BigInt& j) -> std::optional<BigInt> { return 2 * j - 1; });
}

/// {2^r : r >= 1}; count_upto(n) = floor(log2 n).
inline NatSet powers_of_two_set() {
    return NatSet(
        "pow2", [](std::uint64_t n) { return n >= 2 && (n & (n - 1)) == 0; },
        [](const BigInt& n) {
            if (n < 2) return BigInt(0);
            return BigInt(boost::multiprecision::msb(n));
        },
        [](const BigInt& j) -> std::optional<BigInt> {
            if (j > (1 << 20)) return std::nullopt;  // 2^j passes out of reach
            return BigInt(1) << j.convert_to<unsigned>();
        });
}

inline NatSet finite_set_of(std::vector<std::uint64_t> elems, std::string name = "") {
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    if (!elems.empty() && elems.front() == 0)
        throw std::invalid_argument("finite set: elements must be >= 1");
    if (name.empty()) {
        name = "finite[";
        for (std::size_t i = 0; i < elems.size(); ++i)
            name += (i ? "," : "") + std::to_string(elems[i]);
        name += "]";
    }
    auto data = std::make_shared<std::vector<std::uint64_t>>(std::move(elems));
    return NatSet(
        std::move(name),
        [data](std::uint64_t n) { return std::binary_search(data->begin(), data->end(), n); },
        [data](const BigInt& n) -> BigInt {
            if (n < 1 || data->empty()) return 0;
            if (n >= BigInt(data->back())) return BigInt(data->size());
            std::uint64_t n64 = n.convert_to<std::uint64_t>();
            return BigInt(std::upper_bound(data->begin(), data->end(), n64) - data->begin());
        },
        [data](const BigInt& j) -> std::optional<BigInt> {
            if (j > BigInt(data->size())) return std::nullopt;
            return BigInt((*data)[j.convert_to<std::size_t>() - 1]);
        });
}

inline NatSet complement_of(const NatSet& k) {
    auto inner = std::make_shared<NatSet>(k);
    NatSet::CountFn count = nullptr;
    if (inner->has_closed_count())
        count = [inner](const BigInt& n) { return n - inner->count_upto(n); };
    return NatSet(
        "compl(" + k.name() + ")",
        [inner](std::uint64_t n) { return !inner->contains(n); }, std::move(count), nullptr);
}

inline NatSet union_of(const NatSet& a, const NatSet& b) {
    auto pa = std::make_shared<NatSet>(a);
    auto pb = std::make_shared<NatSet>(b);
    return NatSet(
        "union(" + a.name() + "," + b.name() + ")",
        [pa, pb](std::uint64_t n) { return pa->contains(n) || pb->contains(n); });
}

inline NatSet set_from_predicate(std::string name, NatSet::Member member) {
    return NatSet(std::move(name), std::move(member));
}

}  // namespace modwij
