#include "oilu/codec.hpp"

#include <algorithm>

namespace oilu {

namespace {

// Bit order: top=1, right=2, bottom=4, left=8.
constexpr std::uint8_t T = 1, R = 2, B = 4, L = 8;

// Canonical glyph table. The two-sided glyph is bottom+left and the
// three-sided glyph is open-top; the single side is bottom. Rotating by
// the CCW side permutation then walks the even and odd cycles.
constexpr std::array<std::uint8_t, 10> kDigitMask = {
    /*0*/ T | R | B | L,
    /*1*/ B,
    /*2*/ B | L,
    /*3*/ L | B | R,
    /*4*/ R | B,
    /*5*/ B | R | T,
    /*6*/ T | R,
    /*7*/ R | T | L,
    /*8*/ L | T,
    /*9*/ T | L | B,
};

// One CCW quarter turn as a digit permutation: (2 4 6 8)(3 5 7 9), 0 and
// 1 fixed.
constexpr std::array<std::uint8_t, 10> kRotateOnce = {0, 1, 4, 5, 6, 7, 8, 9, 2, 3};

void check_digit(int d) {
    if (d < 0 || d > 9) throw InvalidDigit("digit out of range [0,9]: " + std::to_string(d));
}

}  // namespace

const char* side_name(Side s) {
    switch (s) {
        case Side::top: return "top";
        case Side::right: return "right";
        case Side::bottom: return "bottom";
        case Side::left: return "left";
    }
    return "?";
}

bool SidePattern::valid() const {
    switch (side_count()) {
        case 4:
        case 3:
        case 1:
            return true;
        case 2:
            // Adjacent pairs only; {top,bottom} and {left,right} are out.
            return mask_ != (T | B) && mask_ != (L | R);
        default:
            return false;
    }
}

SidePattern SidePattern::rotated_ccw(int quarter_turns) const {
    int k = ((quarter_turns % 4) + 4) % 4;
    std::uint8_t m = mask_;
    for (int i = 0; i < k; ++i) {
        // Side index moves i -> (i+3) mod 4: right->top, top->left, ...
        m = static_cast<std::uint8_t>(((m >> 1) | (m << 3)) & 0xF);
    }
    return SidePattern(m);
}

std::string SidePattern::str() const {
    static constexpr const char* initials = "TRBL";
    std::string out;
    for (int i = 0; i < 4; ++i)
        if (mask_ & (1u << i)) out.push_back(initials[i]);
    return out;
}

SidePattern digit_to_pattern(int digit) {
    check_digit(digit);
    return SidePattern(kDigitMask[static_cast<std::size_t>(digit)]);
}

int pattern_to_digit(SidePattern p) {
    if (!p.valid())
        throw InvalidPattern("side pattern '" + p.str() + "' does not encode a digit");
    if (p.side_count() == 1) return 1;  // every orientation of the single side reads as 1
    for (int d = 0; d < 10; ++d)
        if (kDigitMask[static_cast<std::size_t>(d)] == p.mask()) return d;
    throw InvalidPattern("unreachable: valid pattern without digit");
}

int rotate_digit(int digit, int quarter_turns) {
    check_digit(digit);
    int k = ((quarter_turns % 4) + 4) % 4;
    int d = digit;
    for (int i = 0; i < k; ++i) d = kRotateOnce[static_cast<std::size_t>(d)];
    return d;
}

SidePattern rotate_pattern_ccw(SidePattern p, int quarter_turns) {
    return p.rotated_ccw(quarter_turns);
}

OiluNumber::OiluNumber(std::vector<std::uint8_t> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw InvalidDigit("a number needs at least one digit");
    for (std::uint8_t d : digits_) check_digit(d);
}

OiluNumber OiluNumber::parse(std::string_view text) {
    if (text.empty()) throw InvalidDigit("empty number string");
    std::vector<std::uint8_t> digits;
    digits.reserve(text.size());
    for (char c : text) {
        if (c < '0' || c > '9')
            throw InvalidDigit(std::string("not a decimal digit: '") + c + "'");
        digits.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return OiluNumber(std::move(digits));
}

OiluNumber OiluNumber::rotated(int quarter_turns) const {
    std::vector<std::uint8_t> out(digits_.size());
    std::transform(digits_.begin(), digits_.end(), out.begin(), [&](std::uint8_t d) {
        return static_cast<std::uint8_t>(rotate_digit(d, quarter_turns));
    });
    return OiluNumber(std::move(out));
}

std::string OiluNumber::str() const {
    std::string out;
    out.reserve(digits_.size());
    for (std::uint8_t d : digits_) out.push_back(static_cast<char>('0' + d));
    return out;
}

FacetGroup facet_values(const OiluNumber& n) {
    FacetGroup g;
    for (int k = 0; k < 4; ++k) g.values[static_cast<std::size_t>(k)] = n.rotated(k);
    return g;
}

}  // namespace oilu
