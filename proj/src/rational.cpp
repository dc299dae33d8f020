#include "nilpact/rational.hpp"

namespace nilpact {

std::string rat_to_string(const Rat& x) {
    if (rat_is_integer(x)) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

std::string gauss_to_string(const GaussRat& z) {
    if (z.im == 0) return rat_to_string(z.re);
    std::string s = rat_to_string(z.re);
    s += (z.im < 0) ? " - " : " + ";
    Rat a = abs(z.im);
    s += rat_to_string(a) + "*i";
    return s;
}

}  // namespace nilpact
