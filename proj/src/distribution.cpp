#include "bridgeflow/distribution.hpp"

#include <cmath>

#include "bridgeflow/errors.hpp"

namespace bridgeflow {

namespace {

void validate_weights(const Vector& w) {
    if (w.empty()) throw ValidationError("distribution must have at least one entry");
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!std::isfinite(w[i]))
            throw ValidationError("distribution entry " + std::to_string(i) + " is not finite");
        if (w[i] < 0.0)
            throw ValidationError("distribution entry " + std::to_string(i) + " is negative");
    }
}

}  // namespace

Distribution Distribution::probability(Vector w, double tol) {
    validate_weights(w);
    double sum = 0.0;
    for (double x : w) sum += x;
    if (std::abs(sum - 1.0) > tol) throw ValidationError("not a probability vector");
    return Distribution(std::move(w), true);
}

Distribution Distribution::nonnegative(Vector w) {
    validate_weights(w);
    return Distribution(std::move(w), false);
}

bool Distribution::strictly_positive() const {
    for (double x : w_)
        if (x <= 0.0) return false;
    return true;
}

double l1_distance(const Distribution& a, const Distribution& b) {
    if (a.dim() != b.dim()) throw ValidationError("dimension mismatch");
    return l1_distance(std::span<const double>(a.weights()), std::span<const double>(b.weights()));
}

}  // namespace bridgeflow
