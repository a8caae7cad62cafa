// Copyright 2026 The saddle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SADDLE_REGIME_HPP
#define SADDLE_REGIME_HPP

#include <saddle/core.hpp>

#include <algorithm>
#include <array>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace saddle {

/// Which lower moduli drive linear convergence:
///   a: mu_x, mu_y      b: mu_x, mu_xy
///   c: mu_y, mu_yx     d: mu_xy, mu_yx
enum class Regime { a = 0, b = 1, c = 2, d = 3 };

inline constexpr std::array<Regime, 4> kAllRegimes{Regime::a, Regime::b,
                                                   Regime::c, Regime::d};

inline std::string_view to_string(Regime r) {
  static constexpr std::array<std::string_view, 4> names{"a", "b", "c", "d"};
  return names[static_cast<int>(r)];
}

inline std::optional<Regime> parse_regime(std::string_view name) {
  for (Regime r : kAllRegimes) {
    if (name == to_string(r)) return r;
  }
  return std::nullopt;
}

/// One value per regime, +inf for regimes that do not apply.
struct RegimeValues {
  std::array<Scalar, 4> values{kInf, kInf, kInf, kInf};

  RegimeValues() = default;
  RegimeValues(Scalar a, Scalar b, Scalar c, Scalar d) : values{a, b, c, d} {}

  Scalar& operator[](Regime r) { return values[static_cast<int>(r)]; }
  Scalar operator[](Regime r) const { return values[static_cast<int>(r)]; }

  [[nodiscard]] Scalar min() const {
    return *std::min_element(values.begin(), values.end());
  }

  /// First regime attaining the minimum (a before b before c before d).
  [[nodiscard]] Regime argmin() const {
    return static_cast<Regime>(
        std::min_element(values.begin(), values.end()) - values.begin());
  }
};

inline Scalar max_of(std::initializer_list<Scalar> xs) {
  return std::max(xs);
}

inline std::string describe_moduli(const SmoothnessSpec& s) {
  std::ostringstream out;
  out << "mu_x=" << s.mu_x << ", mu_y=" << s.mu_y << ", mu_xy=" << s.mu_xy
      << ", mu_yx=" << s.mu_yx;
  return out.str();
}

inline bool regime_applies(const SmoothnessSpec& s, Regime r) {
  switch (r) {
    case Regime::a:
      return s.mu_x > 0 && s.mu_y > 0;
    case Regime::b:
      return s.mu_x > 0 && s.mu_xy > 0;
    case Regime::c:
      return s.mu_y > 0 && s.mu_yx > 0;
    case Regime::d:
      return s.mu_xy > 0 && s.mu_yx > 0;
  }
  return false;
}

/// Throws ConfigurationError naming the zero constants that `r` needs.
inline void require_regime_constants(const SmoothnessSpec& s, Regime r,
                                     std::string_view method) {
  if (regime_applies(s, r)) return;
  std::string missing;
  auto need = [&](Scalar v, const char* name) {
    if (!(v > 0)) {
      if (!missing.empty()) missing += ", ";
      missing += name;
    }
  };
  switch (r) {
    case Regime::a:
      need(s.mu_x, "mu_x");
      need(s.mu_y, "mu_y");
      break;
    case Regime::b:
      need(s.mu_x, "mu_x");
      need(s.mu_xy, "mu_xy");
      break;
    case Regime::c:
      need(s.mu_y, "mu_y");
      need(s.mu_yx, "mu_yx");
      break;
    case Regime::d:
      need(s.mu_xy, "mu_xy");
      need(s.mu_yx, "mu_yx");
      break;
  }
  throw ConfigurationError(std::string(method) + " regime " +
                           std::string(to_string(r)) + " needs positive " +
                           missing);
}

}  // namespace saddle

#endif  // SADDLE_REGIME_HPP
