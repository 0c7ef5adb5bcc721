#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace pebble {

// A nonnegative count that may be infinite. Pebbling numbers of disconnected
// graphs and path costs across components take the infinite value.
class Extended {
public:
    constexpr Extended() = default;
    constexpr Extended(std::uint64_t v) : value_{v} {}  // NOLINT(implicit)

    static constexpr Extended infinity() {
        Extended e;
        e.value_.reset();
        return e;
    }

    [[nodiscard]] constexpr bool is_finite() const { return value_.has_value(); }
    [[nodiscard]] constexpr bool is_infinite() const { return !value_.has_value(); }

    [[nodiscard]] std::uint64_t value() const {
        if (!value_)
            throw std::logic_error("Extended::value() on infinity");
        return *value_;
    }

    [[nodiscard]] std::string to_string() const {
        return value_ ? std::to_string(*value_) : std::string{"inf"};
    }

    friend constexpr bool operator==(const Extended&, const Extended&) = default;

    friend constexpr std::strong_ordering operator<=>(const Extended& a, const Extended& b) {
        if (a.is_infinite() || b.is_infinite())
            return a.is_infinite() <=> b.is_infinite();
        return *a.value_ <=> *b.value_;
    }

    // Saturating product; inf * 0 is 0 (an empty requirement stays empty).
    friend Extended operator*(const Extended& a, const Extended& b) {
        if ((a.is_finite() && *a.value_ == 0) || (b.is_finite() && *b.value_ == 0))
            return Extended{0};
        if (a.is_infinite() || b.is_infinite())
            return infinity();
        std::uint64_t out = 0;
        if (__builtin_mul_overflow(*a.value_, *b.value_, &out))
            return infinity();
        return Extended{out};
    }

private:
    std::optional<std::uint64_t> value_{std::uint64_t{0}};
};

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        return std::numeric_limits<std::uint64_t>::max();
    return out;
}

} // namespace pebble
