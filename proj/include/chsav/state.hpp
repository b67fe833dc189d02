#pragma once

#include "chsav/nodal_function.hpp"

namespace chsav {

// Discrete trajectory point: nodal phase field, nodal chemical potential,
// scalar auxiliary variable. mu at t=0 is a placeholder (the scheme only
// ever reads mu at the new time level).
struct State {
    double t = 0.0;
    NodalFunction phi;
    NodalFunction mu;
    double r = 0.0;
};

}  // namespace chsav
