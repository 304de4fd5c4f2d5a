#ifndef FLAGROCK_NUMERIC_HPP
#define FLAGROCK_NUMERIC_HPP

// Exact scalars for the whole pipeline: the real quadratic field Q(sqrt2)
// and its complexification Q(sqrt2, i).  Everything downstream (structure
// constants, frame brackets, symbols, the induced representation, the
// kernel witnesses) stays in this ring, so equality checks are exact and a
// zero residual is a genuine certificate.

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "flagrock/errors.hpp"

namespace flagrock {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.template convert_to<double>(); }

inline int sign_of(const Rational& r) { return r.sign(); }

// Exact square root of a nonnegative rational, when it is one.
inline std::optional<Rational> exact_sqrt(const Rational& r) {
    if (r < 0) return std::nullopt;
    if (r == 0) return Rational(0);
    BigInt num = numerator(r), den = denominator(r);
    BigInt sn = sqrt(num), sd = sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rational(sn, sd);
}

// Element a + b*sqrt(2) of the real quadratic field Q(sqrt2).
struct Quad {
    Rational a{0};  // rational part
    Rational b{0};  // coefficient of sqrt(2)

    Quad() = default;
    Quad(int v) : a(v) {}  // NOLINT: implicit by design, mirrors integer literals
    Quad(Rational v) : a(std::move(v)) {}
    Quad(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

    static Quad sqrt2() { return Quad(Rational(0), Rational(1)); }

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }

    Quad operator-() const { return Quad(-a, -b); }
    Quad operator+(const Quad& o) const { return Quad(a + o.a, b + o.b); }
    Quad operator-(const Quad& o) const { return Quad(a - o.a, b - o.b); }
    Quad operator*(const Quad& o) const {
        return Quad(a * o.a + 2 * b * o.b, a * o.b + b * o.a);
    }
    // Galois conjugate a - b*sqrt(2).
    Quad conj2() const { return Quad(a, -b); }
    // Field norm a^2 - 2 b^2 (rational; zero iff the element is zero).
    Rational norm2() const { return a * a - 2 * b * b; }

    Quad inverse() const {
        Rational n = norm2();
        if (n == 0) throw Error("division by zero in Q(sqrt2)");
        return Quad(a / n, -b / n);
    }
    Quad operator/(const Quad& o) const { return *this * o.inverse(); }

    Quad& operator+=(const Quad& o) { return *this = *this + o; }
    Quad& operator-=(const Quad& o) { return *this = *this - o; }
    Quad& operator*=(const Quad& o) { return *this = *this * o; }

    bool operator==(const Quad& o) const { return a == o.a && b == o.b; }
    bool operator!=(const Quad& o) const { return !(*this == o); }

    // Sign of the real number a + b*sqrt(2), computed exactly.
    int sign() const {
        int sa = sign_of(a), sb = sign_of(b);
        if (sb == 0) return sa;
        if (sa == 0) return sb;
        if (sa == sb) return sa;
        // Opposite signs: compare a^2 with 2 b^2; the larger magnitude wins.
        int cmp = sign_of(Rational(a * a - 2 * b * b));
        return sa > 0 ? cmp : -cmp;
    }
    bool operator<(const Quad& o) const { return (*this - o).sign() < 0; }
    bool operator>(const Quad& o) const { return (*this - o).sign() > 0; }

    double to_double() const {
        return flagrock::to_double(a) + flagrock::to_double(b) * 1.41421356237309504880168872420969808;
    }

    // Exact square root inside Q(sqrt2), when it exists.  Solves
    // (x + y sqrt2)^2 = a + b sqrt2.
    std::optional<Quad> sqrt() const {
        if (sign() < 0) return std::nullopt;
        if (is_zero()) return Quad(0);
        if (b == 0) {
            if (auto x = exact_sqrt(a)) return Quad(*x);
            if (auto y = exact_sqrt(a / 2)) return Quad(Rational(0), *y);
            return std::nullopt;
        }
        // x^4 - a x^2 + b^2/2 = 0 with y = b / (2x).
        Rational disc = a * a - 2 * b * b;
        auto sd = exact_sqrt(disc);
        if (!sd) return std::nullopt;
        for (int s : {+1, -1}) {
            Rational x2 = (a + s * *sd) / 2;
            if (x2 < 0) continue;
            auto x = exact_sqrt(x2);
            if (!x || *x == 0) continue;
            Quad cand(*x, b / (2 * *x));
            if (cand.sign() < 0) cand = -cand;
            if (cand * cand == *this) return cand;
        }
        return std::nullopt;
    }

    std::string str() const {
        std::ostringstream os;
        if (b == 0) { os << a; return os.str(); }
        if (a != 0) os << a << (b > 0 ? "+" : "");
        if (b == 1) os << "sqrt2";
        else if (b == -1) os << "-sqrt2";
        else os << b << "*sqrt2";
        return os.str();
    }
};

inline Quad operator*(const Rational& r, const Quad& q) { return Quad(r) * q; }
inline std::ostream& operator<<(std::ostream& os, const Quad& q) { return os << q.str(); }

// Element of Q(sqrt2, i).
struct QuadC {
    Quad re, im;

    QuadC() = default;
    QuadC(int v) : re(v) {}  // NOLINT
    QuadC(Quad r) : re(std::move(r)) {}
    QuadC(Quad r, Quad i) : re(std::move(r)), im(std::move(i)) {}

    static QuadC i() { return QuadC(Quad(0), Quad(1)); }

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_real() const { return im.is_zero(); }

    QuadC operator-() const { return QuadC(-re, -im); }
    QuadC operator+(const QuadC& o) const { return QuadC(re + o.re, im + o.im); }
    QuadC operator-(const QuadC& o) const { return QuadC(re - o.re, im - o.im); }
    QuadC operator*(const QuadC& o) const {
        return QuadC(re * o.re - im * o.im, re * o.im + im * o.re);
    }
    QuadC conj() const { return QuadC(re, -im); }
    // |z|^2, a real element of Q(sqrt2).
    Quad abs2() const { return re * re + im * im; }

    QuadC inverse() const {
        Quad n = abs2();
        if (n.is_zero()) throw Error("division by zero in Q(sqrt2,i)");
        Quad ninv = n.inverse();
        return QuadC(re * ninv, -im * ninv);
    }
    QuadC operator/(const QuadC& o) const { return *this * o.inverse(); }

    QuadC& operator+=(const QuadC& o) { return *this = *this + o; }
    QuadC& operator-=(const QuadC& o) { return *this = *this - o; }
    QuadC& operator*=(const QuadC& o) { return *this = *this * o; }

    bool operator==(const QuadC& o) const { return re == o.re && im == o.im; }
    bool operator!=(const QuadC& o) const { return !(*this == o); }

    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    std::string str() const {
        if (im.is_zero()) return re.str();
        std::ostringstream os;
        if (!re.is_zero()) os << re.str() << "+";
        os << "i*(" << im.str() << ")";
        return os.str();
    }
};

inline QuadC operator*(const Quad& q, const QuadC& z) { return QuadC(q) * z; }
inline std::ostream& operator<<(std::ostream& os, const QuadC& z) { return os << z.str(); }

// Parses weight tokens: "2", "-3/2", "sqrt2", "3*sqrt2", "1+sqrt2",
// "1/2-3/4*sqrt2".  Used by the command line and by report round-trips.
Quad parse_quad(const std::string& token);

}  // namespace flagrock

#endif
