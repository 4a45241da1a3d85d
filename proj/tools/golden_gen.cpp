// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0
//
// Regenerates the pinned oracle values under tests/golden/.  The values are
// computed by routes independent of the library implementation (closed-form
// antiderivatives where available, Romberg extrapolation elsewhere) and are
// only rewritten by running this tool explicitly:
//
//   mtcap_golden <output-directory>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <vector>

#include <json.hpp>

using nlohmann::json;

namespace {

// Romberg integration on [a, b]; the integrands below are smooth there.
double romberg(const std::function<double(double)>& f, double a, double b,
               double tol = 1e-13) {
    constexpr int kMaxLevel = 24;
    std::vector<double> previous, current;
    double h = b - a;
    previous.push_back(0.5 * h * (f(a) + f(b)));
    for (int level = 1; level < kMaxLevel; ++level) {
        h *= 0.5;
        double sum = 0.0;
        const std::int64_t points = std::int64_t(1) << (level - 1);
        for (std::int64_t i = 0; i < points; ++i) sum += f(a + (2 * i + 1) * h);
        current.assign(level + 1, 0.0);
        current[0] = 0.5 * previous[0] + h * sum;
        double factor = 1.0;
        for (int k = 1; k <= level; ++k) {
            factor *= 4.0;
            current[k] = current[k - 1] + (current[k - 1] - previous[k - 1]) / (factor - 1.0);
        }
        if (level > 3 && std::abs(current[level] - previous[level - 1]) <=
                             tol * std::abs(current[level]))
            return current[level];
        previous = current;
    }
    return current.back();
}

// Delta_1 for m = 1 via the antiderivative 2 atan(sqrt(t)) of t^(-1/2)/(1+t),
// exact for xi = 1/2.
double delta1_m1_xi_half(double phi, double upper_t) {
    const double lower = 1.0 / phi;
    const double hi = std::isinf(upper_t) ? std::numbers::pi : 2.0 * std::atan(std::sqrt(upper_t));
    return 0.5 * std::sqrt(phi) * (hi - 2.0 * std::atan(std::sqrt(lower)));
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: mtcap_golden <output-directory>\n";
        return 2;
    }
    const std::string dir = argv[1];

    json golden;
    golden["note"] = "Pinned oracle values; regenerate only with the mtcap_golden tool.";

    // --- Delta_1, m = 1, d = 2, alpha = 4 (xi = 1/2) --------------------
    {
        json entries = json::array();
        entries.push_back({{"name", "delta1_m1_phi1_inf"},
                           {"inputs", {{"m", 1}, {"d", 2}, {"alpha", 4.0}, {"phi", 1.0},
                                       {"window", "inf"}}},
                           {"value", delta1_m1_xi_half(1.0, INFINITY)},
                           {"note", "antiderivative 2 atan(sqrt(t)); equals pi/4"}});
        entries.push_back({{"name", "delta1_m1_phi16_inf"},
                           {"inputs", {{"m", 1}, {"d", 2}, {"alpha", 4.0}, {"phi", 16.0},
                                       {"window", "inf"}}},
                           {"value", delta1_m1_xi_half(16.0, INFINITY)},
                           {"note", "antiderivative 2 atan(sqrt(t))"}});
        // Finite window r = 17.724538509055159 (the 1e-4 truncation radius
        // at lambda_t = 0.01): upper t limit r^4 / phi.
        const double r = std::sqrt(0.01 * std::numbers::pi / 1e-4);
        entries.push_back(
            {{"name", "delta1_m1_phi16_window_trunc"},
             {"inputs", {{"m", 1}, {"d", 2}, {"alpha", 4.0}, {"phi", 16.0}, {"window", r}}},
             {"value", delta1_m1_xi_half(16.0, std::pow(r, 4.0) / 16.0)},
             {"note", "antiderivative, window from the 1e-4 truncation rule"}});

        // m = 2 and m = 3 spot values by Romberg on the collapsed integrand
        // t^(xi-1) (1 - (t/(1+t))^m) with substitution t = u^2 to remove the
        // endpoint slope, plus the exact large-t remainder from the Beta
        // function: Integral_0^inf = sum_j C(m,j) B(j+xi, m-j-xi).
        for (int m : {2, 3}) {
            const double phi = 16.0;
            const double xi = 0.5;
            const double lower = double(m) / phi;
            // Integral_lower^inf = Integral_0^inf - Integral_0^lower.  The
            // full-line part is the exact Beta sum; the head integral uses
            // t = u^2 so that t^(xi-1) dt = 2 du exactly for xi = 1/2.
            double total = 0.0;
            for (int j = 0; j < m; ++j) {
                double binom = 1.0;
                for (int i = 1; i <= j; ++i) binom *= double(m - j + i) / double(i);
                total += binom * std::exp(std::lgamma(j + xi) + std::lgamma(m - j - xi) -
                                          std::lgamma(double(m)));
            }
            auto head = [m](double u) {
                return 2.0 * -std::expm1(double(m) * std::log1p(-1.0 / (1.0 + u * u)));
            };
            const double head_value = romberg(head, 0.0, std::sqrt(lower));
            const double value = xi * std::pow(phi / m, xi) * (total - head_value);
            entries.push_back(
                {{"name", "delta1_m" + std::to_string(m) + "_phi16_inf"},
                 {"inputs", {{"m", m}, {"d", 2}, {"alpha", 4.0}, {"phi", phi},
                             {"window", "inf"}}},
                 {"value", value},
                 {"note", "Beta closed form minus Romberg head integral"}});
        }
        golden["delta1"] = entries;
    }

    // --- Delta_2, m = 1, d = 2, alpha = 4, phi = 0.5, window 2 ----------
    {
        // Antiderivative of t^(-1/2)/(t-1) is log((sqrt(t)-1)/(sqrt(t)+1)).
        auto anti = [](double t) {
            const double u = std::sqrt(t);
            return std::log((u - 1.0) / (u + 1.0));
        };
        const double lower = 2.0, upper = 32.0;
        const double value = 0.5 * std::sqrt(0.5) * (anti(upper) - anti(lower));
        golden["delta2"] = json::array(
            {{{"name", "delta2_m1_phi05_w2"},
              {"inputs",
               {{"m", 1}, {"d", 2}, {"alpha", 4.0}, {"phi", 0.5}, {"window", 2.0}}},
              {"value", value},
              {"note", "antiderivative log((sqrt(t)-1)/(sqrt(t)+1)) on [2, 32]"}}});
    }

    // --- Psi, m = 1 (zeroth derivative) ----------------------------------
    {
        const double phi = 16.0;
        const double lambda_t = 0.01;
        const double laplace =
            std::exp(-std::numbers::pi * lambda_t * delta1_m1_xi_half(phi, INFINITY));
        golden["psi"] = json::array(
            {{{"name", "psi_m1_order0_phi16"},
              {"inputs",
               {{"m", 1}, {"d", 2}, {"alpha", 4.0}, {"phi", 16.0}, {"lambda_t", 0.01}}},
              {"value", laplace / phi},
              {"note", "e^{-mu_u lambda Delta_1}/phi with the exact Delta_1"}},
             {{"name", "laplace_m1_phi16"},
              {"inputs",
               {{"m", 1}, {"d", 2}, {"alpha", 4.0}, {"phi", 16.0}, {"lambda_t", 0.01}}},
              {"value", laplace},
              {"note", "Rayleigh identity value, also the r = 2 success probability"}}});
    }

    // --- D_hat constants via the Beta closed form -------------------------
    {
        json entries = json::array();
        for (int m : {1, 2, 3}) {
            const double xi = 0.5;
            double total = 0.0;
            for (int j = 0; j < m; ++j) {
                double binom = 1.0;
                for (int i = 1; i <= j; ++i) binom *= double(m - j + i) / double(i);
                total += binom * std::exp(std::lgamma(j + xi) + std::lgamma(m - j - xi) -
                                          std::lgamma(double(m)));
            }
            double product = 1.0;
            for (int j = 1; j < m; ++j) product *= 1.0 - xi / double(j);
            const double value = xi * std::pow(double(m), -xi) * product * total;
            entries.push_back({{"name", "d_hat_m" + std::to_string(m) + "_xi_half"},
                               {"inputs", {{"m", m}, {"xi", 0.5}}},
                               {"value", value},
                               {"note", "sum_j C(m,j) B(j+xi, m-j-xi) via lgamma"}});
        }
        golden["d_hat"] = entries;
    }

    // --- Pinned retransmission study configuration ------------------------
    {
        json study;
        study["config"] = {{"d", 2},     {"alpha", 4.0},    {"beta", 1.0}, {"s", 10.0},
                           {"lambda_t", 0.0}, {"lambda_r", 0.31830988618379069},
                           {"m", 1},     {"tau", 1},        {"epsilon", 0.05}};
        study["k"] = 100.0;
        study["tau_grid"] = {1, 2, 3, 4, 5, 6, 7, 8};
        study["expected_argmax_tau"] = 4;
        study["note"] = "dense template with k = 100; capacity peaks at tau = 4 "
                        "and decreases beyond it";
        golden["retx_study"] = study;
    }

    // --- Pinned rate-bound band -------------------------------------------
    {
        json band;
        band["config"] = {{"d", 2},     {"alpha", 4.0}, {"beta", 1.0}, {"s", 10.0},
                          {"lambda_t", 0.001}, {"lambda_r", 0.1}, {"m", 1},
                          {"tau", 1},   {"epsilon", 0.05}};
        band["lambda_t_grid"] = {3e-5, 1e-4, 3e-4, 1e-3, 3e-3};
        band["ratio_band"] = {0.2, 3.0};
        band["note"] = "two-decade lambda_t grid on which b / log(1 + 1/(mu_r lambda_t)) "
                       "stays inside the band";
        golden["rate_band"] = band;
    }

    std::ofstream out(dir + "/shotnoise_golden.json");
    if (!out) {
        std::cerr << "cannot write to " << dir << "\n";
        return 2;
    }
    out << golden.dump(2) << "\n";
    std::cout << "wrote " << dir << "/shotnoise_golden.json\n";
    return 0;
}
