#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oilu/errors.hpp"

namespace oilu {

// The four sides of a square ring, clockwise as displayed.
enum class Side : std::uint8_t { top = 0, right = 1, bottom = 2, left = 3 };

constexpr std::array<Side, 4> all_sides{Side::top, Side::right, Side::bottom, Side::left};

const char* side_name(Side s);

// Subset of a ring's four sides, stored as a 4-bit mask in
// (top, right, bottom, left) order. This is the geometric face of one digit.
//
// A pattern is valid iff it is the full ring, any three sides, two
// adjacent sides, or a single side. The empty set and the two opposite
// pairs do not correspond to any digit.
class SidePattern {
public:
    constexpr SidePattern() = default;
    constexpr explicit SidePattern(std::uint8_t mask) : mask_(mask & 0xF) {}

    static constexpr SidePattern full() { return SidePattern(0xF); }

    constexpr bool contains(Side s) const { return mask_ & bit(s); }
    constexpr SidePattern with(Side s) const { return SidePattern(mask_ | bit(s)); }
    constexpr SidePattern without(Side s) const { return SidePattern(mask_ & ~bit(s)); }
    constexpr std::uint8_t mask() const { return mask_; }
    constexpr int side_count() const {
        return ((mask_ >> 0) & 1) + ((mask_ >> 1) & 1) + ((mask_ >> 2) & 1) + ((mask_ >> 3) & 1);
    }

    bool valid() const;

    // One counter-clockwise quarter turn moves a stroke on the RIGHT side
    // to the TOP, TOP to LEFT, LEFT to BOTTOM, BOTTOM to RIGHT.
    SidePattern rotated_ccw(int quarter_turns) const;

    // Side initials of the present sides in T,R,B,L order, e.g. "TRB".
    std::string str() const;

    constexpr bool operator==(const SidePattern&) const = default;

private:
    static constexpr std::uint8_t bit(Side s) {
        return static_cast<std::uint8_t>(1u << static_cast<unsigned>(s));
    }
    std::uint8_t mask_ = 0;
};

// Canonical side set of a decimal digit.
//   0 -> closed ring; 1 -> bottom only; {2,4,6,8} the four rotations of
//   the two-adjacent-sides glyph; {3,5,7,9} the four rotations of the
//   three-sides glyph.
SidePattern digit_to_pattern(int digit);

// Inverse of digit_to_pattern, except that every single-side pattern
// reads as digit 1. Throws InvalidPattern on the empty set and on the
// two opposite pairs.
int pattern_to_digit(SidePattern p);

// Quarter-turn digit permutation rho: one CCW turn cycles (2 4 6 8) and
// (3 5 7 9) and fixes 0 and 1.
int rotate_digit(int digit, int quarter_turns);

SidePattern rotate_pattern_ccw(SidePattern p, int quarter_turns);

// A decimal number written in ring glyphs, most significant digit first.
// Reading order on a marker is outermost ring to innermost ring.
class OiluNumber {
public:
    OiluNumber() = default;
    explicit OiluNumber(std::vector<std::uint8_t> digits);

    // Parses a nonempty string of decimal digits. Throws InvalidDigit on
    // anything else.
    static OiluNumber parse(std::string_view text);

    const std::vector<std::uint8_t>& digits() const { return digits_; }
    std::size_t length() const { return digits_.size(); }
    int digit(std::size_t i) const { return digits_[i]; }

    OiluNumber rotated(int quarter_turns) const;

    std::string str() const;

    bool operator==(const OiluNumber&) const = default;

private:
    std::vector<std::uint8_t> digits_;
};

// The four values a marker shows from its four viewpoints.
// values[k] is the number read after k CCW quarter turns; any member
// determines the other three.
struct FacetGroup {
    std::array<OiluNumber, 4> values;

    bool contains(const OiluNumber& n) const {
        return values[0] == n || values[1] == n || values[2] == n || values[3] == n;
    }
};

FacetGroup facet_values(const OiluNumber& n);

}  // namespace oilu
