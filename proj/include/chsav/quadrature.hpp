#pragma once

#include <array>

namespace chsav {

struct TriQuadraturePoint {
    double l0, l1, l2;  // barycentric coordinates
    double w;           // weight, normalized so the six weights sum to 1
};

// Symmetric 6-point triangle rule, exact for polynomials of degree <= 4.
// That covers every integrand the scheme produces: with P1 fields the
// quartic well gives F(phi_h) of degree 4 and F'(phi_h)*basis of degree 4.
inline constexpr std::array<TriQuadraturePoint, 6> kTriQuadratureDegree4 = {{
    {0.108103018168070, 0.445948490915965, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.108103018168070, 0.445948490915965, 0.223381589678011},
    {0.445948490915965, 0.445948490915965, 0.108103018168070, 0.223381589678011},
    {0.816847572980459, 0.091576213509771, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.816847572980459, 0.091576213509771, 0.109951743655322},
    {0.091576213509771, 0.091576213509771, 0.816847572980459, 0.109951743655322},
}};

}  // namespace chsav
