// Copyright 2026 The lepski-rkhs Authors
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

#include "lepski/theory.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lepski/errors.h"

namespace lepski {
namespace {

void CheckBeta(double beta) {
  if (!(beta > 0.0 && beta < 1.0)) {
    throw InputError("beta must lie strictly inside (0, 1)");
  }
}

void CheckBoundArgs(double k_diag, double clip, double sigma, double r,
                    double t, int n, double i_inf) {
  if (!(t >= 1.0)) throw InputError("the bound requires t >= 1");
  if (n < 1) throw InputError("the bound requires n >= 1");
  if (!(k_diag > 0.0) || !(clip > 0.0) || !(sigma >= 0.0)) {
    throw InputError("k_diag and C must be positive, sigma non-negative");
  }
  if (!(r >= 0.0) || !(i_inf >= 0.0)) {
    throw InputError("r and I_inf must be non-negative");
  }
}

}  // namespace

double ApproxBound(const InterpolationParams& p, double r) {
  CheckBeta(p.beta);
  if (!(p.B > 0.0)) throw InputError("B must be positive");
  if (!(r > 0.0)) throw InputError("approximation bound needs r > 0");
  const double q = 1.0 - p.beta;
  return std::pow(p.B, 2.0 / q) / std::pow(r, 2.0 * p.beta / q);
}

double IInftyShiftBound(double i_s, double k_diag, double r, double s) {
  if (!(r >= 0.0) || !(s >= r)) throw InputError("requires s >= r >= 0");
  if (!(i_s >= 0.0) || !(k_diag > 0.0)) {
    throw InputError("requires I_s >= 0 and k_diag > 0");
  }
  const double root = std::sqrt(i_s) + std::sqrt(k_diag) * (s - r);
  return root * root;
}

double ScaledIInftyUpper(double g_h_norm, double g_sup, double r) {
  if (!(g_h_norm > 0.0)) throw InputError("|g|_H must be positive");
  if (!(g_sup >= 0.0) || !(r >= 0.0)) {
    throw InputError("requires g_sup >= 0 and r >= 0");
  }
  if (r >= g_h_norm) return 0.0;
  const double gap = (1.0 - r / g_h_norm) * g_sup;
  return gap * gap;
}

double BoundTBound(double k_diag, double clip, double sigma, double r,
                   double t, int n, double i_inf) {
  CheckBoundArgs(k_diag, clip, sigma, r, t, n, i_inf);
  const double sk = std::sqrt(k_diag);
  const double dn = static_cast<double>(n);
  return 2.0 * sk * (97.0 * clip + 20.0 * sigma) * r * std::sqrt(t) /
             std::sqrt(dn) +
         16.0 * sk * clip * r * t / (3.0 * dn) + 10.0 * i_inf;
}

double BoundTVaryBound(double j_const, double k_diag, double clip,
                       double sigma, double r, double t, int n, double i_inf) {
  CheckBoundArgs(k_diag, clip, sigma, r, t, n, i_inf);
  if (!(j_const > 0.0)) throw InputError("J must be positive");
  const double sk = std::sqrt(k_diag);
  const double dn = static_cast<double>(n);
  return 2.0 * j_const * sk * (151.0 * clip + 21.0 * sigma) * r *
             std::sqrt(t) / std::sqrt(dn) +
         16.0 * sk * clip * r * t / (3.0 * dn) + 10.0 * i_inf;
}

double RateEnvelopeFixed(double d1, double d2, double tau, double n,
                         double beta) {
  CheckBeta(beta);
  if (!(d1 >= 0.0) || !(d2 >= 0.0) || !(tau > 0.0) || !(n > 0.0)) {
    throw InputError("envelope needs D1, D2 >= 0 and tau, n > 0");
  }
  return d1 * tau * std::pow(n, -beta / (1.0 + beta)) +
         d2 * tau * tau *
             std::pow(n, -(1.0 + 3.0 * beta) / (2.0 * (1.0 + beta)));
}

double RateEnvelopeGauss(double d1, double d2, double tau, double n,
                         double beta) {
  return RateEnvelopeFixed(d1, d2, tau, n, beta);
}

double OracleTermFixed(double d1, double d2, double d3, double tau, int n,
                       double r, double i_inf) {
  if (n < 1) throw InputError("n must be positive");
  const double root_n = std::sqrt(static_cast<double>(n));
  return (1.0 + d1 * tau / root_n) * (d2 * tau * r / root_n + d3 * i_inf);
}

double OracleTermGauss(double d1, double d2, double d3, double tau, int n,
                       double gamma, int dim, double r, double i_inf) {
  if (!(gamma > 0.0) || dim < 1) throw InputError("invalid width or dim");
  return OracleTermFixed(d1, d2, d3, tau, n,
                         std::pow(gamma, -0.5 * dim) * r, i_inf);
}

double LepskiBoundTerm(const LepskiBoundParams& p, const BoundCandidate& c) {
  if (p.n < 1 || !(p.k_diag > 0.0) || !(p.sigma > 0.0) || !(p.nu > 0.0) ||
      !(p.tau > 0.0) || !(p.clip > 0.0)) {
    throw InputError("invalid adaptive bound parameters");
  }
  const double root_n = std::sqrt(static_cast<double>(p.n));
  const double dn = static_cast<double>(p.n);
  const double sk = std::sqrt(p.k_diag);
  const double s2 = p.sigma * p.sigma;
  const double tr = p.tau * c.r;

  const double factor = 1.0 / p.nu + 97.0 * p.clip / (80.0 * p.sigma * p.nu) +
                        p.clip * p.tau / (2400.0 * sk * s2 * p.nu * root_n);
  const double first =
      2.0 * tr / root_n +
      factor * (40.0 * c.i_inf + 2.0 * (1.0 + p.nu) * tr / root_n);
  const double second = 4.0 * (2.0 + p.nu) * tr / root_n +
                        97.0 * p.clip * tr / (40.0 * p.sigma * root_n) +
                        p.clip * p.tau * tr / (1200.0 * sk * s2 * dn);
  return std::max(first, second) + 80.0 * c.i_inf + 2.0 * c.clipped_err;
}

double LepskiBound(const LepskiBoundParams& p,
                   std::span<const BoundCandidate> candidates) {
  if (candidates.empty()) throw InputError("no candidates for the bound");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) best = std::min(best, LepskiBoundTerm(p, c));
  return best;
}

double GaussLepskiBoundTerm(const GaussLepskiBoundParams& p,
                            const BoundCandidate& c) {
  if (p.n < 1 || !(p.sigma > 0.0) || !(p.nu > 0.0) || !(p.tau > 0.0) ||
      !(p.clip > 0.0) || !(p.j_const > 0.0) || !(p.u > 0.0) ||
      !(p.v >= p.u) || p.dim < 1 || !(c.gamma > 0.0)) {
    throw InputError("invalid adaptive bound parameters");
  }
  const double root_n = std::sqrt(static_cast<double>(p.n));
  const double dn = static_cast<double>(p.n);
  const double ratio = std::pow(p.v / p.u, 0.5 * p.dim);  // v^{d/2} / u^{d/2}
  const double s2 = p.sigma * p.sigma;
  const double j2 = p.j_const * p.j_const;
  const double scaled = p.tau * std::pow(c.gamma, -0.5 * p.dim) * c.r;

  const double direct =
      320.0 * c.i_inf + 4.0 * ratio * (5.0 + 2.0 * p.nu) * scaled / root_n +
      302.0 * p.clip * ratio * scaled / (21.0 * p.sigma * root_n) +
      4.0 * p.clip * ratio * p.tau * scaled / (1323.0 * j2 * s2 * dn);
  const double factor =
      12.0 * ratio / p.nu + 302.0 * p.clip * ratio / (21.0 * p.sigma * p.nu) +
      4.0 * p.clip * ratio * p.tau / (1323.0 * j2 * s2 * p.nu * root_n);
  return direct +
         factor * (20.0 * c.i_inf + (1.0 + p.nu) * scaled / root_n) +
         2.0 * c.clipped_err;
}

double GaussLepskiBound(const GaussLepskiBoundParams& p,
                        std::span<const BoundCandidate> candidates) {
  if (candidates.empty()) throw InputError("no candidates for the bound");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& c : candidates) {
    best = std::min(best, GaussLepskiBoundTerm(p, c));
  }
  return best;
}

}  // namespace lepski
