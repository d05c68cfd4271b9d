#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "fup/errors.hpp"

namespace fup {

// Exact fraction on int64 with overflow checks through 128-bit intermediates.
// Denominator kept positive, fraction reduced.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw error("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    static std::int64_t checked(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN) throw error("rational overflow");
        return static_cast<std::int64_t>(v);
    }

    friend Rat operator+(const Rat& a, const Rat& b) {
        return Rat(checked(static_cast<__int128>(a.num) * b.den +
                           static_cast<__int128>(b.num) * a.den),
                   checked(static_cast<__int128>(a.den) * b.den));
    }
    friend Rat operator-(const Rat& a, const Rat& b) {
        return Rat(checked(static_cast<__int128>(a.num) * b.den -
                           static_cast<__int128>(b.num) * a.den),
                   checked(static_cast<__int128>(a.den) * b.den));
    }
    friend Rat operator*(const Rat& a, const Rat& b) {
        return Rat(checked(static_cast<__int128>(a.num) * b.num),
                   checked(static_cast<__int128>(a.den) * b.den));
    }
    friend bool operator==(const Rat& a, const Rat& b) {
        return a.num == b.num && a.den == b.den;
    }
    friend bool operator<(const Rat& a, const Rat& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rat& a, const Rat& b) { return a == b || a < b; }

    // Representative in [0, 1).
    Rat mod_one() const {
        std::int64_t n = num % den;
        if (n < 0) n += den;
        return Rat(n, den);
    }

    // floor(value), exact.
    std::int64_t floor() const {
        if (num >= 0) return num / den;
        return -(((-num) + den - 1) / den);
    }

    bool is_integer() const { return den == 1; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }
};

}  // namespace fup
