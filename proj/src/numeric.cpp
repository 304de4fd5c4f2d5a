#include "flagrock/numeric.hpp"

#include <cctype>

namespace flagrock {

namespace {

Rational parse_rational(std::string s) {
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    if (s.empty()) throw InvalidParameterError("empty rational");
    try {
        return Rational(s);
    } catch (const std::exception&) {
        throw InvalidParameterError("cannot parse rational '" + s + "'");
    }
}

// One summand: [coef][*]sqrt2 or a bare rational.
Quad parse_term(const std::string& t) {
    if (t.empty()) throw InvalidParameterError("empty weight term");
    auto pos = t.find("sqrt2");
    if (pos == std::string::npos) return Quad(parse_rational(t));
    if (pos + 5 != t.size())
        throw InvalidParameterError("trailing characters after sqrt2 in '" + t + "'");
    std::string coef = t.substr(0, pos);
    if (!coef.empty() && coef.back() == '*') coef.pop_back();
    if (coef.empty() || coef == "+") return Quad::sqrt2();
    if (coef == "-") return -Quad::sqrt2();
    return Quad(Rational(0), parse_rational(coef));
}

}  // namespace

Quad parse_quad(const std::string& token) {
    std::string s;
    for (char c : token)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw InvalidParameterError("empty weight token");

    Quad result(0);
    std::size_t start = 0;
    for (std::size_t k = 1; k <= s.size(); ++k) {
        bool split = k == s.size() || ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/' && s[k - 1] != '*');
        if (!split) continue;
        result += parse_term(s.substr(start, k - start));
        start = k;
    }
    return result;
}

}  // namespace flagrock
