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

#ifndef SADDLE_DIAGNOSTICS_HPP
#define SADDLE_DIAGNOSTICS_HPP

#include <saddle/core.hpp>
#include <saddle/problems.hpp>
#include <saddle/regime.hpp>
#include <saddle/run_record.hpp>

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace saddle {

struct RateFit {
  Scalar rate = 1;       // exp(slope of log residual vs k)
  Scalar r_squared = 0;  // of the log-linear fit
  int points = 0;        // samples used after burn-in and truncation
  [[nodiscard]] bool converging() const { return rate < 1; }
};

inline constexpr int kDefaultBurnIn = 10;

/// Least-squares fit log r_k = c + k log(rate) over k >= burn_in. The series
/// is cut at its first nonpositive entry. Needs at least 20 usable points.
inline RateFit fit_linear_rate(std::span<const Scalar> series,
                               int burn_in = kDefaultBurnIn) {
  detail::require(burn_in >= 0, "burn_in must be nonnegative");
  std::vector<double> ks, logs;
  for (std::size_t k = static_cast<std::size_t>(burn_in); k < series.size(); ++k) {
    if (!(series[k] > 0) || !std::isfinite(series[k])) break;
    ks.push_back(static_cast<double>(k));
    logs.push_back(std::log(series[k]));
  }
  detail::require(ks.size() >= 20,
                  "rate fit needs at least 20 positive points after burn-in");
  const auto n = static_cast<double>(ks.size());
  double mk = 0, ml = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    mk += ks[i];
    ml += logs[i];
  }
  mk /= n;
  ml /= n;
  double skk = 0, skl = 0, sll = 0;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    skk += (ks[i] - mk) * (ks[i] - mk);
    skl += (ks[i] - mk) * (logs[i] - ml);
    sll += (logs[i] - ml) * (logs[i] - ml);
  }
  RateFit fit;
  fit.points = static_cast<int>(ks.size());
  const double roundoff = 64 * std::numeric_limits<double>::epsilon() * (1 + std::abs(ml));
  if (sll <= n * roundoff * roundoff) {
    fit.rate = 1;  // constant up to rounding
    fit.r_squared = 1;
    return fit;
  }
  const double slope = skl / skk;
  fit.rate = std::exp(slope);
  fit.r_squared = 1 - (sll - slope * skl) / sll;
  return fit;
}

inline RateFit fit_linear_rate(const RunRecord& record, int burn_in = kDefaultBurnIn) {
  return fit_linear_rate(std::span<const Scalar>(record.residual), burn_in);
}

enum class Method { apdg, gdae };

struct ComplexityReport {
  RegimeValues T;
  Regime best_regime = Regime::a;
};

/// The four iteration-complexity factors T_a..T_d (without the log C/eps
/// factor). Regimes whose moduli vanish map to +inf.
inline ComplexityReport theoretical_complexity(const SmoothnessSpec& s, Method method) {
  const Scalar Lx = s.L_x, Ly = s.L_y, Lxy = s.L_xy;
  const Scalar mx = s.mu_x, my = s.mu_y, mxy = s.mu_xy, myx = s.mu_yx;
  ComplexityReport out;
  if (method == Method::apdg) {
    if (regime_applies(s, Regime::a)) {
      out.T[Regime::a] = max_of({std::sqrt(Lx / mx), std::sqrt(Ly / my),
                                 Lxy / std::sqrt(mx * my)});
    }
    if (regime_applies(s, Regime::b)) {
      out.T[Regime::b] = max_of({std::sqrt(Lx * Ly) / mxy,
                                 Lxy / mxy * std::sqrt(Lx / mx),
                                 Lxy * Lxy / (mxy * mxy)});
    }
    if (regime_applies(s, Regime::c)) {
      out.T[Regime::c] = max_of({std::sqrt(Lx * Ly) / myx,
                                 Lxy / myx * std::sqrt(Ly / my),
                                 Lxy * Lxy / (myx * myx)});
    }
    if (regime_applies(s, Regime::d)) {
      out.T[Regime::d] = max_of({std::sqrt(Lx * Ly) * Lxy / (mxy * myx),
                                 Lxy * Lxy / (myx * myx), Lxy * Lxy / (mxy * mxy)});
    }
  } else {
    if (regime_applies(s, Regime::a)) {
      out.T[Regime::a] = max_of({Lx / mx, Ly / my, Lxy / std::sqrt(mx * my)});
    }
    if (regime_applies(s, Regime::b)) {
      out.T[Regime::b] = max_of({Lx / mx, Lx * Ly / (mxy * mxy), Lxy * Lxy / (mxy * mxy)});
    }
    if (regime_applies(s, Regime::c)) {
      out.T[Regime::c] = max_of({Ly / my, Lx * Ly / (myx * myx), Lxy * Lxy / (myx * myx)});
    }
    if (regime_applies(s, Regime::d)) {
      out.T[Regime::d] = max_of({Lx * Ly / (mxy * mxy), Lx * Ly / (myx * myx),
                                 Lxy * Lxy / (mxy * mxy), Lxy * Lxy / (myx * myx)});
    }
  }
  if (!std::isfinite(out.T.min())) {
    throw ConfigurationError(
        "linear convergence condition min{max{mu_x, mu_yx}, max{mu_y, mu_xy}} > 0 "
        "is violated (" + describe_moduli(s) + ")");
  }
  out.best_regime = out.T.argmin();
  return out;
}

/// P(x) - D(y) with P(x) = f(x) + g*(A x), D(y) = -g(y) - f*(-A^T y).
/// +inf when either conjugate is infinite at the query point.
inline Scalar duality_gap(const QuadraticSaddleInstance& instance, const IteratePair& p) {
  detail::require_dim(p.x.size(), instance.A.cols(), "x");
  detail::require_dim(p.y.size(), instance.A.rows(), "y");
  const Scalar primal = instance.primal_value(p.x);
  const Scalar dual = instance.dual_value(p.y);
  if (!std::isfinite(primal) || !std::isfinite(dual)) return kInf;
  return primal - dual;
}

}  // namespace saddle

#endif  // SADDLE_DIAGNOSTICS_HPP
