#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "elastic/errors.hpp"
#include "elastic/measurelab.hpp"

namespace elastic::measurelab {

namespace {

__extension__ typedef unsigned __int128 u128;

// x = num / den with num <= den, den <= 2^124 so 3 * num never overflows.
struct UnitFraction {
    u128 num = 0;
    u128 den = 1;
};

UnitFraction from_rational(Rational x) {
    if (x.num > x.den) throw InputError("value outside [0,1]");
    return {x.num, x.den};
}

// Exact dyadic value of a double in [0,1]; below 2^-71 the value is
// truncated to a multiple of 2^-124, far beyond the 52-digit budget.
UnitFraction from_double(double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw InputError("value outside [0,1]");
    if (x == 0.0) return {0, 1};
    if (x == 1.0) return {1, 1};
    int exp = 0;
    const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, mant in [0.5, 1)
    const auto m = static_cast<u128>(std::ldexp(mant, 53));  // x = m * 2^(exp - 53)
    const int shift = 53 - exp;                              // x = m / 2^shift
    constexpr int kMaxShift = 124;
    if (shift <= kMaxShift) return {m, u128{1} << shift};
    return {m >> (shift - kMaxShift), u128{1} << kMaxShift};
}

std::vector<int> digits_of(UnitFraction x, int count, u128* remainder = nullptr) {
    std::vector<int> d(static_cast<std::size_t>(count));
    if (x.num == x.den) {
        std::fill(d.begin(), d.end(), 2);
        if (remainder) *remainder = 0;
        return d;
    }
    u128 r = x.num;
    for (int n = 0; n < count; ++n) {
        r *= 3;
        d[static_cast<std::size_t>(n)] = static_cast<int>(r / x.den);
        r %= x.den;
    }
    if (remainder) *remainder = r;
    return d;
}

void check_digits(int digits, int limit) {
    if (digits < 1 || digits > limit) {
        throw InputError("digit budget must be in [1, " + std::to_string(limit) + "]");
    }
}

bool membership(UnitFraction x, int digits) {
    check_digits(digits, kMaxMembershipDigits);
    if (x.num == x.den) return true;
    u128 r = x.num;
    for (int n = 0; n < digits; ++n) {
        r *= 3;
        const auto d = r / x.den;
        r %= x.den;
        // A terminating ...1 also reads ...0222..., which has no 1 here.
        if (d == 1) return r == 0;
    }
    return true;
}

double cantor_value(UnitFraction x, int digits) {
    check_digits(digits, kMaxCantorFunctionDigits);
    if (x.num == x.den) return 1.0;
    const std::vector<int> a = digits_of(x, digits);
    std::uint64_t bits = 0;  // y = bits / 2^digits
    for (int n = 0; n < digits; ++n) {
        const int d = a[static_cast<std::size_t>(n)];
        bits <<= 1;
        if (d == 1) {
            bits |= 1;
            bits <<= (digits - n - 1);
            return std::ldexp(static_cast<double>(bits), -digits);
        }
        if (d == 2) bits |= 1;
    }
    return std::ldexp(static_cast<double>(bits), -digits);
}

}  // namespace

Rational Rational::make(std::uint64_t p, std::uint64_t q) {
    if (q == 0) throw InputError("zero denominator");
    const std::uint64_t g = std::gcd(p, q);
    return g == 0 ? Rational{0, 1} : Rational{p / g, q / g};
}

Rational Rational::parse(std::string_view text) {
    auto parse_u64 = [&](std::string_view s) {
        std::uint64_t v = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size()) {
            throw InputError("not a rational number: '" + std::string(text) + "'");
        }
        return v;
    };
    if (const auto slash = text.find('/'); slash != std::string_view::npos) {
        return make(parse_u64(text.substr(0, slash)), parse_u64(text.substr(slash + 1)));
    }
    const auto dot = text.find('.');
    if (dot == std::string_view::npos) return make(parse_u64(text), 1);
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.size() > 18) throw InputError("at most 18 fractional digits: '" + std::string(text) + "'");
    std::uint64_t den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    const std::uint64_t w = whole.empty() ? 0 : parse_u64(whole);
    const std::uint64_t f = frac.empty() ? 0 : parse_u64(frac);
    if (w > 1) throw InputError("rational literal too large: '" + std::string(text) + "'");
    return make(w * den + f, den);
}

std::uint64_t pow3(int m) {
    std::uint64_t p = 1;
    for (int k = 0; k < m; ++k) p *= 3;
    return p;
}

CantorLevel::CantorLevel(int level) : level_(level) {
    if (level < 0) throw InputError("Cantor level must be >= 0");
    if (level > kMaxCantorLevel) {
        throw LevelTooDeep("level " + std::to_string(level) + " exceeds exact bound " +
                           std::to_string(kMaxCantorLevel));
    }
}

std::pair<std::uint64_t, std::uint64_t> CantorLevel::interval(std::uint64_t k) const {
    // Binary digit n of k (most significant first) selects ternary digit 0 or 2.
    std::uint64_t lo = 0;
    for (int n = level_ - 1; n >= 0; --n) lo = 3 * lo + 2 * ((k >> n) & 1U);
    return {lo, lo + 1};
}

Rational CantorLevel::measure_exact() const { return Rational::make(count(), denominator()); }

IntervalUnion CantorLevel::to_interval_union() const {
    std::vector<Interval> parts;
    parts.reserve(count());
    const auto den = static_cast<double>(denominator());
    for (std::uint64_t k = 0; k < count(); ++k) {
        const auto [lo, hi] = interval(k);
        parts.push_back({static_cast<double>(lo) / den, static_cast<double>(hi) / den});
    }
    return IntervalUnion(std::move(parts));
}

CantorLevel cantor_level(int m) { return CantorLevel(m); }

std::vector<int> ternary_digits(Rational x, int digits) {
    check_digits(digits, kMaxCantorFunctionDigits);
    return digits_of(from_rational(x), digits);
}

std::vector<int> ternary_digits(double x, int digits) {
    check_digits(digits, kMaxCantorFunctionDigits);
    return digits_of(from_double(x), digits);
}

bool in_cantor_set(Rational x, int digits) { return membership(from_rational(x), digits); }
bool in_cantor_set(double x, int digits) { return membership(from_double(x), digits); }

double cantor_function(Rational x, int digits) { return cantor_value(from_rational(x), digits); }
double cantor_function(double x, int digits) { return cantor_value(from_double(x), digits); }

}  // namespace elastic::measurelab
