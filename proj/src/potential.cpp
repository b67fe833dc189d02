#include "chsav/potential.hpp"

namespace chsav {

double PotentialSpec::F(double phi) const {
    if (flat_level) return *flat_level;
    const double s = phi * phi - 1.0;
    return s * s / (4.0 * epsilon * epsilon);
}

double PotentialSpec::dF(double phi) const {
    if (flat_level) return 0.0;
    return (phi * phi * phi - phi) / (epsilon * epsilon);
}

}  // namespace chsav
