// Rotor curve R(t) = cos t + sin t e12 in the plane: unit norm, R' = R e12,
// and R rev(R) constant, so its derivative vanishes.

#include <mvcalc/mvcalc.hpp>

#include <cstdio>

int main() {
    using namespace mvcalc;
    Curve rotor = dsl::parse_curve("cos(t) + sin(t)*e12", 2);
    Curve unit = Curve::product(Star::geometric, rotor, dsl::parse_curve("compose(cos(t) - sin(t)*e12, t)", 2));
    Multivector e12 = Multivector::blade(2, BladeMask{0b11});

    std::printf("%8s %12s %14s %14s\n", "t", "|R|", "|R' - R e12|", "|(R rev R)'|");
    for (double t = 0.0; t <= 3.2; t += 0.4) {
        Multivector r = evaluate(rotor, t);
        Multivector dr = derivative_ad(rotor, t);
        std::printf("%8.2f %12.9f %14.3e %14.3e\n", t, norm(r), distance(dr, geometric(r, e12)),
                    norm(derivative_ad(unit, t)));
    }
}
