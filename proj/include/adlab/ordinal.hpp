#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace adlab {

/// One Cantor-normal-form term: w^exponent * coefficient.
struct Term {
    uint32_t exponent = 0;
    uint64_t coefficient = 1;

    bool operator==(const Term&) const = default;
};

/// An ordinal below w^w, stored in Cantor normal form.
///
/// Terms have strictly decreasing exponents and nonzero coefficients; the
/// empty term list is 0. The degree of x > 0 is the least exponent of its
/// normal form (so successors have degree 0 and limits degree >= 1); the
/// degree of 0 is 0, which makes 0 an isolated point of every space.
class Ordinal {
public:
    Ordinal() = default;
    explicit Ordinal(uint64_t n);
    /// Throws std::invalid_argument unless the terms are canonical.
    explicit Ordinal(std::vector<Term> terms);

    static Ordinal omega_pow(uint32_t e, uint64_t c = 1);

    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_limit() const;
    bool is_successor() const { return !is_zero() && degree() == 0; }

    uint32_t degree() const;
    /// Largest exponent; 0 for the zero ordinal.
    uint32_t leading_exponent() const;

    Ordinal successor() const;
    /// Terms with exponent >= d (the largest multiple of w^d below or at *this).
    Ordinal truncate_below(uint32_t d) const;
    /// For x > 0 with x = y + w^deg(x), returns y. Requires x > 0.
    Ordinal drop_last_unit() const;
    /// Least ordinal > *this that is a multiple of w^d.
    Ordinal next_multiple(uint32_t d) const;
    /// Least ordinal > *this whose degree is exactly d.
    Ordinal next_with_degree(uint32_t d) const;

    friend Ordinal operator+(const Ordinal& a, const Ordinal& b);
    friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
    friend bool operator==(const Ordinal& a, const Ordinal& b) = default;

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

std::ostream& operator<<(std::ostream& os, const Ordinal& x);

/// Parses "w^2*3+w*2+5", "w^3", "w*4", "w", "7", "0".
/// Throws ParseError naming the offending token.
Ordinal parse_ordinal(std::string_view text);

inline Ordinal ord_add(const Ordinal& a, const Ordinal& b) { return a + b; }
inline std::strong_ordering ord_cmp(const Ordinal& a, const Ordinal& b) { return a <=> b; }
inline Ordinal ord_succ(const Ordinal& a) { return a.successor(); }
inline uint32_t ord_deg(const Ordinal& a) { return a.degree(); }
inline bool ord_is_limit(const Ordinal& a) { return a.is_limit(); }
inline std::string ord_print(const Ordinal& a) { return a.to_string(); }
inline Ordinal ord_parse(std::string_view text) { return parse_ordinal(text); }

} // namespace adlab
