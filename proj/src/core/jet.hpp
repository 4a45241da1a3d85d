// Copyright (c) 2026 The mtcap authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "core/error.hpp"

namespace mtcap {

// Truncated power series (jet) around a fixed expansion point.  Coefficient
// k stores f^(k)(center) / k!, so coefficient 0 is the plain function value.
// Used to evaluate high-order derivatives of smooth compositions exactly,
// up to the accuracy of the coefficient-0 inputs.
class TaylorJet {
  public:
    TaylorJet(double center, std::size_t order)
        : center_(center), coeff_(order + 1, 0.0) {}

    static TaylorJet constant(double value, double center, std::size_t order) {
        TaylorJet jet(center, order);
        jet.coeff_[0] = value;
        return jet;
    }

    // The identity function f(phi) = phi expanded at the center.
    static TaylorJet variable(double center, std::size_t order) {
        TaylorJet jet(center, order);
        jet.coeff_[0] = center;
        if (order >= 1) jet.coeff_[1] = 1.0;
        return jet;
    }

    double center() const { return center_; }
    std::size_t order() const { return coeff_.size() - 1; }
    double operator[](std::size_t k) const { return coeff_[k]; }
    double& operator[](std::size_t k) { return coeff_[k]; }

    double value() const { return coeff_[0]; }
    // k-th derivative at the center.
    double derivative(std::size_t k) const {
        double fact = 1.0;
        for (std::size_t i = 2; i <= k; ++i) fact *= double(i);
        return coeff_[k] * fact;
    }

    TaylorJet operator+(const TaylorJet& rhs) const {
        TaylorJet out = *this;
        for (std::size_t k = 0; k < out.coeff_.size(); ++k) out.coeff_[k] += rhs.coeff_[k];
        return out;
    }

    TaylorJet operator-(const TaylorJet& rhs) const {
        TaylorJet out = *this;
        for (std::size_t k = 0; k < out.coeff_.size(); ++k) out.coeff_[k] -= rhs.coeff_[k];
        return out;
    }

    TaylorJet operator*(double s) const {
        TaylorJet out = *this;
        for (double& c : out.coeff_) c *= s;
        return out;
    }

    TaylorJet operator*(const TaylorJet& rhs) const {
        TaylorJet out(center_, order());
        for (std::size_t k = 0; k <= order(); ++k) {
            double acc = 0.0;
            for (std::size_t i = 0; i <= k; ++i) acc += coeff_[i] * rhs.coeff_[k - i];
            out.coeff_[k] = acc;
        }
        return out;
    }

    TaylorJet operator/(const TaylorJet& rhs) const {
        if (rhs.coeff_[0] == 0.0) throw_numeric("jet division by a vanishing series");
        TaylorJet out(center_, order());
        for (std::size_t k = 0; k <= order(); ++k) {
            double acc = coeff_[k];
            for (std::size_t i = 0; i < k; ++i) acc -= out.coeff_[i] * rhs.coeff_[k - i];
            out.coeff_[k] = acc / rhs.coeff_[0];
        }
        return out;
    }

  private:
    double center_;
    std::vector<double> coeff_;
};

inline TaylorJet exp(const TaylorJet& jet) {
    TaylorJet out(jet.center(), jet.order());
    out[0] = std::exp(jet[0]);
    // e' = e * f' gives k*e_k = sum_{i=1..k} i*f_i*e_{k-i}.
    for (std::size_t k = 1; k <= jet.order(); ++k) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= k; ++i) acc += double(i) * jet[i] * out[k - i];
        out[k] = acc / double(k);
    }
    return out;
}

inline TaylorJet log(const TaylorJet& jet) {
    if (jet[0] <= 0.0) throw_numeric("jet log of a non-positive series");
    TaylorJet out(jet.center(), jet.order());
    out[0] = std::log(jet[0]);
    // l' = f'/f gives k*f_0*l_k = k*f_k - sum_{i=1..k-1} i*l_i*f_{k-i}.
    for (std::size_t k = 1; k <= jet.order(); ++k) {
        double acc = double(k) * jet[k];
        for (std::size_t i = 1; i < k; ++i) acc -= double(i) * out[i] * jet[k - i];
        out[k] = acc / (double(k) * jet[0]);
    }
    return out;
}

inline TaylorJet pow(const TaylorJet& jet, double exponent) {
    return exp(log(jet) * exponent);
}

// Antiderivative composition: given the jet of f' (one order lower) and the
// value f(center), produce the jet of f.
inline TaylorJet integrate_jet(const TaylorJet& derivative_jet, double value_at_center) {
    TaylorJet out(derivative_jet.center(), derivative_jet.order() + 1);
    out[0] = value_at_center;
    for (std::size_t k = 1; k <= out.order(); ++k) out[k] = derivative_jet[k - 1] / double(k);
    return out;
}

} // namespace mtcap
