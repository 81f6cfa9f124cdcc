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

#ifndef LEPSKI_THEORY_H_
#define LEPSKI_THEORY_H_

#include <span>

namespace lepski {

// Closed-form evaluators of the error bounds. I_inf(g, r) denotes the
// squared sup-norm distance from g to the radius-r ball; it is never computed
// exactly, callers supply an upper bound.

struct InterpolationParams {
  double B = 1.0;     // interpolation-space norm bound, > 0
  double beta = 0.5;  // in (0, 1)
};

// B^{2/(1-beta)} / r^{2 beta/(1-beta)}.
double ApproxBound(const InterpolationParams& p, double r);

// (sqrt(I_s) + sqrt(k_diag) (s - r))^2, an upper bound on I_inf(g, r) given
// I_inf(g, s) for s >= r.
double IInftyShiftBound(double i_s, double k_diag, double r, double s);

// Upper bound on I_inf(g, r) for g in H with |g|_H = g_h_norm and
// |g|_inf = g_sup, from the scaled element (r / |g|_H) g.
double ScaledIInftyUpper(double g_h_norm, double g_sup, double r);

// Fixed-kernel bound on |V h_r - g|^2_{L2(P)}, valid for t >= 1:
//   2 sqrt(k) (97 C + 20 sigma) r sqrt(t/n) + 16 sqrt(k) C r t / (3n) + 10 I.
double BoundTBound(double k_diag, double clip, double sigma, double r,
                   double t, int n, double i_inf);

// Kernel-collection analogue with the chaining constant J.
double BoundTVaryBound(double j_const, double k_diag, double clip,
                       double sigma, double r, double t, int n, double i_inf);

// D1 tau n^{-beta/(1+beta)} + D2 tau^2 n^{-(1+3 beta)/(2 (1+beta))}.
double RateEnvelopeFixed(double d1, double d2, double tau, double n,
                         double beta);
// Identical shape for the Gaussian family; kept separate so callers can
// overlay the two curves with their own constants.
double RateEnvelopeGauss(double d1, double d2, double tau, double n,
                         double beta);

// (1 + D1 tau / sqrt(n)) (D2 tau r / sqrt(n) + D3 I), one term of the
// oracle-type bound; the bound itself is the infimum over the grid.
double OracleTermFixed(double d1, double d2, double d3, double tau, int n,
                       double r, double i_inf);
// Same with the radius scaled by gamma^{-d/2}.
double OracleTermGauss(double d1, double d2, double d3, double tau, int n,
                       double gamma, int dim, double r, double i_inf);

// One candidate (r, I_inf(g, r), |V h_r - g|^2_{L2(P)}) in the full
// adaptive bounds below.
struct BoundCandidate {
  double gamma = 1.0;  // ignored by the fixed-kernel bound
  double r = 0.0;
  double i_inf = 0.0;
  double clipped_err = 0.0;
};

struct LepskiBoundParams {
  double k_diag = 1.0;
  double clip = 1.0;
  double sigma = 1.0;
  double tau = 1.0;
  double nu = 1.0;
  int n = 1;
};

// The unsimplified fixed-kernel adaptive bound evaluated at one candidate.
double LepskiBoundTerm(const LepskiBoundParams& p, const BoundCandidate& c);
// Infimum of LepskiBoundTerm over the candidates.
double LepskiBound(const LepskiBoundParams& p,
                   std::span<const BoundCandidate> candidates);

struct GaussLepskiBoundParams {
  double clip = 1.0;
  double sigma = 1.0;
  double tau = 1.0;
  double nu = 1.0;
  int n = 1;
  double j_const = 1.0;
  double u = 1.0;
  double v = 1.0;
  int dim = 1;
};

double GaussLepskiBoundTerm(const GaussLepskiBoundParams& p,
                            const BoundCandidate& c);
double GaussLepskiBound(const GaussLepskiBoundParams& p,
                        std::span<const BoundCandidate> candidates);

}  // namespace lepski

#endif  // LEPSKI_THEORY_H_
