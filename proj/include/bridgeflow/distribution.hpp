#pragma once

#include <cstddef>

#include "bridgeflow/matrix.hpp"

namespace bridgeflow {

// Nonnegative weight vector over the vertex set. Probability vectors carry a
// flag and are validated to sum to 1 within kProbabilityTol at construction.
class Distribution {
public:
    static constexpr double kProbabilityTol = 1e-12;

    // Validates nonnegativity, finiteness and unit mass. `tol` loosens the
    // mass check for vectors produced by long stochastic propagations.
    static Distribution probability(Vector w, double tol = kProbabilityTol);
    static Distribution nonnegative(Vector w);

    std::size_t dim() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    const Vector& weights() const { return w_; }
    bool is_probability() const { return probability_; }
    bool strictly_positive() const;

    bool operator==(const Distribution&) const = default;

private:
    Distribution(Vector w, bool probability) : w_(std::move(w)), probability_(probability) {}

    Vector w_;
    bool probability_ = false;
};

double l1_distance(const Distribution& a, const Distribution& b);

}  // namespace bridgeflow
