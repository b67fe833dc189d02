#pragma once

#include <optional>

namespace chsav {

// Double-well potential F(phi) = (phi^2 - 1)^2 / (4 eps^2) together with the
// positive energy shift C0 that keeps sqrt(E + C0) well defined.
struct PotentialSpec {
    double epsilon = 0.1;
    double C0 = 1.0;

    // When set, F is identically *flat_level and F' vanishes; drives the
    // scheme in its source-free (biharmonic flow) limit. Test hook only.
    std::optional<double> flat_level{};

    double F(double phi) const;
    double dF(double phi) const;
};

}  // namespace chsav
