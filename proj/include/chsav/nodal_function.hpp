#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace chsav {

// Coefficient vector of a P1 finite element function: one value per mesh node.
struct NodalFunction {
    std::vector<double> values;

    NodalFunction() = default;
    explicit NodalFunction(std::size_t n, double fill = 0.0) : values(n, fill) {}
    explicit NodalFunction(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
    double* data() { return values.data(); }
    const double* data() const { return values.data(); }
    operator std::span<const double>() const { return values; }
};

}  // namespace chsav
