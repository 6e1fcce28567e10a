#include "probscale/rational.hpp"

#include <cstdlib>

namespace probscale {

std::string Rational::decimal() const {
    std::int64_t n = num_ < 0 ? -num_ : num_;
    std::string out = num_ < 0 ? "-" : "";
    out += std::to_string(n / den_);
    std::int64_t rem = n % den_;
    if (rem == 0) return out;
    out += '.';
    for (int i = 0; i < 15 && rem != 0; ++i) {
        rem *= 10;
        out += static_cast<char>('0' + rem / den_);
        rem %= den_;
    }
    return out;
}

Rational Rational::parse(const std::string& text) {
    std::string t;
    t.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
        // U+2212 (minus sign) -> '-'
        if (i + 2 < text.size() + 1 && static_cast<unsigned char>(text[i]) == 0xE2 &&
            i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
            static_cast<unsigned char>(text[i + 2]) == 0x92) {
            t += '-';
            i += 3;
        } else if (text[i] == ' ') {
            ++i;
        } else {
            t += text[i];
            ++i;
        }
    }
    if (t.empty()) throw std::invalid_argument("Rational::parse: empty string");
    auto slash = t.find('/');
    auto to_i64 = [](const std::string& s) {
        if (s.empty()) throw std::invalid_argument("Rational::parse: empty component");
        std::size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size())
            throw std::invalid_argument("Rational::parse: bad integer '" + s + "'");
        return static_cast<std::int64_t>(v);
    };
    if (slash == std::string::npos) return Rational(to_i64(t));
    return Rational(to_i64(t.substr(0, slash)), to_i64(t.substr(slash + 1)));
}

} // namespace probscale
