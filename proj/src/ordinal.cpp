#include "adlab/ordinal.hpp"

#include "adlab/errors.hpp"

#include <charconv>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace adlab {

Ordinal::Ordinal(uint64_t n) {
    if (n != 0) terms_.push_back({0, n});
}

Ordinal::Ordinal(std::vector<Term> terms) : terms_(std::move(terms)) {
    for (size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].coefficient == 0)
            throw std::invalid_argument("ordinal term with zero coefficient");
        if (i > 0 && terms_[i].exponent >= terms_[i - 1].exponent)
            throw std::invalid_argument("ordinal exponents must strictly decrease");
    }
}

Ordinal Ordinal::omega_pow(uint32_t e, uint64_t c) {
    Ordinal x;
    if (c != 0) x.terms_.push_back({e, c});
    return x;
}

bool Ordinal::is_limit() const { return !is_zero() && degree() >= 1; }

uint32_t Ordinal::degree() const { return terms_.empty() ? 0 : terms_.back().exponent; }

uint32_t Ordinal::leading_exponent() const {
    return terms_.empty() ? 0 : terms_.front().exponent;
}

Ordinal Ordinal::successor() const { return *this + Ordinal(1); }

Ordinal Ordinal::truncate_below(uint32_t d) const {
    Ordinal x;
    for (const auto& t : terms_) {
        if (t.exponent < d) break;
        x.terms_.push_back(t);
    }
    return x;
}

Ordinal Ordinal::drop_last_unit() const {
    if (terms_.empty()) throw std::invalid_argument("drop_last_unit of zero");
    Ordinal x = *this;
    if (--x.terms_.back().coefficient == 0) x.terms_.pop_back();
    return x;
}

Ordinal Ordinal::next_multiple(uint32_t d) const { return truncate_below(d) + omega_pow(d); }

Ordinal Ordinal::next_with_degree(uint32_t d) const {
    Ordinal x = next_multiple(d);
    // x is a multiple of w^d; if it is a multiple of w^(d+1) the next one up has degree d.
    if (x.degree() == d) return x;
    return x + omega_pow(d);
}

Ordinal operator+(const Ordinal& a, const Ordinal& b) {
    if (b.is_zero()) return a;
    const uint32_t e = b.terms_.front().exponent;
    Ordinal r;
    for (const auto& t : a.terms_) {
        if (t.exponent > e) {
            r.terms_.push_back(t);
        } else {
            if (t.exponent == e) {
                Term head = b.terms_.front();
                if (head.coefficient > std::numeric_limits<uint64_t>::max() - t.coefficient)
                    throw std::overflow_error("ordinal coefficient overflow");
                head.coefficient += t.coefficient;
                r.terms_.push_back(head);
                r.terms_.insert(r.terms_.end(), b.terms_.begin() + 1, b.terms_.end());
                return r;
            }
            break;
        }
    }
    r.terms_.insert(r.terms_.end(), b.terms_.begin(), b.terms_.end());
    return r;
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
    const size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        const Term& x = a.terms_[i];
        const Term& y = b.terms_[i];
        if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
        if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
    }
    return a.terms_.size() <=> b.terms_.size();
}

std::string Ordinal::to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& t : terms_) {
        if (!s.empty()) s += '+';
        if (t.exponent == 0) {
            s += std::to_string(t.coefficient);
            continue;
        }
        s += 'w';
        if (t.exponent > 1) s += '^' + std::to_string(t.exponent);
        if (t.coefficient > 1) s += '*' + std::to_string(t.coefficient);
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const Ordinal& x) { return os << x.to_string(); }

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

uint64_t parse_natural(std::string_view digits, std::string_view token) {
    uint64_t v = 0;
    if (digits.empty()) throw ParseError("expected a decimal natural", std::string(token));
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw ParseError("expected a decimal natural", std::string(token));
    return v;
}

Term parse_term(std::string_view token) {
    if (token.empty()) throw ParseError("empty ordinal term", std::string(token));
    if (token.front() != 'w') {
        const uint64_t c = parse_natural(token, token);
        if (c == 0) throw ParseError("coefficient must be >= 1", std::string(token));
        return {0, c};
    }
    std::string_view rest = token.substr(1);
    uint64_t exponent = 1;
    if (!rest.empty() && rest.front() == '^') {
        rest.remove_prefix(1);
        const auto star = rest.find('*');
        exponent = parse_natural(rest.substr(0, star), token);
        rest = star == std::string_view::npos ? std::string_view{} : rest.substr(star);
        if (exponent > std::numeric_limits<uint32_t>::max())
            throw ParseError("exponent too large", std::string(token));
    }
    uint64_t c = 1;
    if (!rest.empty()) {
        if (rest.front() != '*') throw ParseError("unexpected character in term", std::string(token));
        c = parse_natural(rest.substr(1), token);
        if (c == 0) throw ParseError("coefficient must be >= 1", std::string(token));
    }
    return {static_cast<uint32_t>(exponent), c};
}

} // namespace

Ordinal parse_ordinal(std::string_view text) {
    text = trim(text);
    if (text == "0") return Ordinal{};
    std::vector<Term> terms;
    size_t start = 0;
    while (true) {
        const size_t plus = text.find('+', start);
        const std::string_view token =
            trim(text.substr(start, plus == std::string_view::npos ? std::string_view::npos
                                                                   : plus - start));
        Term t = parse_term(token);
        if (!terms.empty() && t.exponent >= terms.back().exponent)
            throw ParseError("exponents must strictly decrease", std::string(token));
        terms.push_back(t);
        if (plus == std::string_view::npos) break;
        start = plus + 1;
    }
    return Ordinal(std::move(terms));
}

} // namespace adlab
