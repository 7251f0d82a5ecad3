#include "nikhp/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace nikhp {

namespace {
thread_local unsigned g_bits = 256;

unsigned bits_to_digits10(unsigned bits) {
    // digits10 >= bits * log10(2), plus guard digits.
    return static_cast<unsigned>(bits * 0.30103) + 4;
}

struct PrecisionInit {
    PrecisionInit() { set_precision_bits(256); }
};
thread_local PrecisionInit g_precision_init;
}  // namespace

unsigned precision_bits() { return g_bits; }

void set_precision_bits(unsigned bits) {
    g_bits = std::max(64u, bits);
    Real::default_precision(bits_to_digits10(g_bits));
}

Real half_precision_eps() {
    return pow(Real(2), -static_cast<int>(g_bits / 2));
}

Real pow10(int d) { return pow(Real(10), d); }

Real real_pi() { return 4 * atan(Real(1)); }

std::string to_decimal_string(const Real& x) {
    // precision 0 asks for as many digits as the value needs for an exact
    // round trip; a fixed digits10 count would drop the low bits of the
    // working precision and reloads would differ by ulps.
    return x.str(0, std::ios_base::scientific);
}

}  // namespace nikhp
