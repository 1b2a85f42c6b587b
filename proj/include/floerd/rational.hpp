#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "floerd/errors.hpp"

namespace floerd {

// Exact rational on int64 with overflow detection.  All quantities in this
// project have tiny denominators (divisors of 4q), so int64 is ample; we
// still guard every product so a silent wrap can never produce a wrong
// invariant.
class rational {
  public:
    rational() : num_(0), den_(1) {}
    rational(long long n) : num_(n), den_(1) {}
    rational(long long n, long long d) : num_(n), den_(d) {
        if (den_ == 0) throw math_error("rational: zero denominator");
        normalize();
    }

    long long num() const { return num_; }
    long long den() const { return den_; }

    friend rational operator+(const rational& a, const rational& b) {
        return rational(checked(a.num_, b.den_) + checked(b.num_, a.den_),
                        checked(a.den_, b.den_));
    }
    friend rational operator-(const rational& a, const rational& b) {
        return rational(checked(a.num_, b.den_) - checked(b.num_, a.den_),
                        checked(a.den_, b.den_));
    }
    friend rational operator*(const rational& a, const rational& b) {
        return rational(checked(a.num_, b.num_), checked(a.den_, b.den_));
    }
    friend rational operator/(const rational& a, const rational& b) {
        if (b.num_ == 0) throw math_error("rational: division by zero");
        return rational(checked(a.num_, b.den_), checked(a.den_, b.num_));
    }
    rational operator-() const { return rational(-num_, den_); }

    friend bool operator==(const rational& a, const rational& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
    friend bool operator<(const rational& a, const rational& b) {
        return static_cast<__int128>(a.num_) * b.den_ < static_cast<__int128>(b.num_) * a.den_;
    }
    friend bool operator<=(const rational& a, const rational& b) { return a < b || a == b; }
    friend bool operator>(const rational& a, const rational& b) { return b < a; }
    friend bool operator>=(const rational& a, const rational& b) { return b <= a; }

    bool is_integer() const { return den_ == 1; }

    // Canonical "num/den" form, reduced, positive denominator.
    std::string str() const {
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    static rational parse(const std::string& s) {
        size_t slash = s.find('/');
        try {
            if (slash == std::string::npos) return rational(std::stoll(s));
            return rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        } catch (const std::exception&) {
            throw math_error("cannot parse rational '" + s + "'");
        }
    }
    // Bare integer when possible, "num/den" otherwise (for text tables).
    std::string pretty() const {
        if (den_ == 1) return std::to_string(num_);
        return str();
    }

  private:
    void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
        if (num_ == 0) den_ = 1;
    }
    static long long checked(long long a, long long b) {
        __int128 r = static_cast<__int128>(a) * b;
        if (r > INT64_MAX || r < INT64_MIN) throw math_error("rational: overflow");
        return static_cast<long long>(r);
    }

    long long num_;
    long long den_;
};

}  // namespace floerd
