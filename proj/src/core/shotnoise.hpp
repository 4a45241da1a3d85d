// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <limits>
#include <vector>

#include "core/jet.hpp"
#include "core/model.hpp"

namespace mtcap {

inline constexpr double kInfiniteWindow = std::numeric_limits<double>::infinity();

// Arguments of the shot-noise transform evaluations.  phi is the transform
// argument (beta * r^alpha in every model use), window the field radius in
// [1, inf], lambda the generating intensity (superposed processes enter via
// the summed intensity).  Marks are unit-mean Gamma(m, 1/m).
struct ShotNoiseQuery {
    double phi = 1.0;
    double window = kInfiniteWindow;
    double lambda = 0.0;
    int m = 1;
    double alpha = 4.0;
    int d = 2;

    double xi() const { return double(d) / alpha; }
};

// Delta_1: exponent factor of the Laplace functional,
//   xi * (phi/m)^xi * Integral_{m/phi}^{m w^alpha / phi}
//       t^(xi-1) * (1 - (t/(1+t))^m) dt,
// where the integrand is the binomial sum collapsed into closed form.
double delta1(const ShotNoiseQuery& query);

// Delta_2: exponent factor of the moment generating functional on phi < m,
//   xi * (phi/m)^xi * Integral_{m/phi}^{m w^alpha / phi}
//       t^(xi-1) * ((t/(t-1))^m - 1) dt.
// The integrand sign and t-power follow the MGF identity E[e^{phi I}] =
// exp(+mu_u * Delta_2 * lambda); see the PGFL cross-checks in the tests.
double delta2(const ShotNoiseQuery& query);

// E[e^{-phi I}] = exp(-mu_u * Delta_1(phi, w) * lambda).
double laplace_functional(const ShotNoiseQuery& query);

// E[e^{+phi I}] = exp(+mu_u * Delta_2(phi, w) * lambda); requires phi < m.
double mgf(const ShotNoiseQuery& query);

// Independent route to E[e^{-phi I}] through the PPP probability generating
// functional: exp(-lambda * d * mu_u * Integral_1^w u^(d-1) *
// (1 - (1 + phi u^-alpha / m)^-m) du).
double laplace_pgfl_direct(double phi, double lambda, int m, double alpha, int d,
                           double window = kInfiniteWindow);

// Same PGFL route for the MGF (phi < m).
double mgf_pgfl_direct(double phi, double lambda, int m, double alpha, int d,
                       double window = kInfiniteWindow);

// Taylor jet of Delta_1(., window) at phi, to the requested order.  The
// derivative of the phi-dependent integration limits is elementary, so only
// coefficient 0 requires quadrature.
TaylorJet delta1_jet(double phi, std::size_t order, int m, double alpha, int d,
                     double window = kInfiniteWindow);

// Psi^(order)(phi) = ((-phi)^order / order!) *
//                    d^order/dphi^order [ e^{-mu_u lambda_t Delta_1(phi, w)} / phi ].
double psi(double phi, std::size_t order, double lambda_t, int m, double alpha, int d,
           double window = kInfiniteWindow);

// Per-attempt connection probability at desired-link distance r >= 1.  With
// unit-mean gains this is a * Psi^(m-1)(a) at a = m * beta * r^alpha, which
// reduces to the Laplace functional at beta * r^alpha for m = 1.  Clamped to
// [0,1]; a clamp beyond 1e-9 appends a diagnostic to `warnings` when given.
double per_attempt_success(double r, const NetworkConfig& config,
                           double window = kInfiniteWindow,
                           std::vector<std::string>* warnings = nullptr);

// Lower bound on the connected-receiver intensity after tau attempts:
// lambda_r * (1 - (1 - p(r))^tau); exact when attempts are independent.
double connected_intensity_bound(double r, int tau, const NetworkConfig& config,
                                 double window = kInfiniteWindow,
                                 std::vector<std::string>* warnings = nullptr);

} // namespace mtcap
