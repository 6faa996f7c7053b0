#pragma once

#include <cstdio>
#include <string>

#include "hac/rational.hpp"

namespace hac {

enum class NumericMode { kRational, kFloat64 };

// Per-weight-type glue used by the templated algorithms. One numeric mode per
// run: W is either Rational (exact) or double.
template <class W>
struct WeightTraits;

template <>
struct WeightTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr NumericMode mode = NumericMode::kRational;
  static const char* mode_name() { return "rational"; }
  static Rational from_int(long long v) { return Rational(v); }
  static Rational parse(const std::string& s) { return Rational::parse(s); }
  static std::string format(const Rational& w) { return w.str(); }
  static double to_double(const Rational& w) { return w.to_double(); }
};

template <>
struct WeightTraits<double> {
  static constexpr bool exact = false;
  static constexpr NumericMode mode = NumericMode::kFloat64;
  static const char* mode_name() { return "float64"; }
  static double from_int(long long v) { return static_cast<double>(v); }
  static double parse(const std::string& s) {
    size_t pos = 0;
    // Accept "p/q" in float mode too; everything else goes through strtod.
    size_t slash = s.find('/');
    if (slash != std::string::npos) return Rational::parse(s).to_double();
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("bad float literal: '" + s + "'");
    return v;
  }
  static std::string format(double w) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", w);
    return buf;
  }
  static double to_double(double w) { return w; }
};

// similarity(total weight, |A|, |B|) = w / (|A| * |B|). Exact in rational mode.
template <class W>
W normalized_similarity(const W& total_weight, long long size_a, long long size_b);

}  // namespace hac
