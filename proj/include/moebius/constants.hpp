#pragma once

#include <cstdlib>
#include <string>

namespace moebius {

// Mathematical constants, written out well past double precision so the
// compiler rounds them correctly for whichever float type instantiates them.
template <class F>
struct math_const {
    // Euler-Mascheroni gamma
    static constexpr F euler_gamma = F(0.57721566490153286060651209008240243104215933593992L);
    // pi^2/6 = zeta(2)
    static constexpr F zeta2 = F(1.64493406684822643647241516664602518921894990120680L);
    // 6/pi^2 = 1/zeta(2), squarefree density
    static constexpr F inv_zeta2 = F(0.60792710185402662866327677925836583342615263535140L);
    static constexpr F sqrt2 = F(1.41421356237309504880168872420969807856967187537695L);
};

// Catalog constants arrive as decimal strings and are parsed once at load so
// the working-precision value is pinned to the printed decimal, not to
// whatever literal happened to be written in code.
inline double parse_decimal(const std::string& s) {
    return std::strtod(s.c_str(), nullptr);
}

} // namespace moebius
