// Prints extended-precision reference values that unit tests freeze as constants.
#include <iomanip>
#include <iostream>

#include "mp_oracle.hpp"

using hadml::oracle::mp;
namespace o = hadml::oracle;

int main() {
    std::cout << std::setprecision(25);
    std::cout << "E_{2;1,1}(1)            " << o::alpha_ml(2, 1, 1, 1) << "\n";
    std::cout << "E_{2;1,1}(-1)           " << o::alpha_ml(2, 1, 1, -1) << "\n";
    std::cout << "E_{1;1,1}(-5)           " << o::alpha_ml(1, 1, 1, -5) << "\n";
    std::cout << "E_{1.5;0.8,1.2}(3)      " << o::alpha_ml(mp("1.5"), mp("0.8"), mp("1.2"), 3) << "\n";
    std::cout << "E_{2;1,-0.5}(2)         " << o::alpha_ml(2, 1, mp("-0.5"), 2) << "\n";
    std::cout << "C(0.3,1.5,2)            " << o::gcom_normalizer(mp("0.3"), mp("1.5"), 2) << "\n";
    std::cout << "C(1,1,0.5)              " << o::gcom_normalizer(1, 1, mp("0.5")) << "\n";
    std::cout << "C(-2,0.7,3)             " << o::gcom_normalizer(-2, mp("0.7"), 3) << "\n";
    std::cout << "W(1,1,1)                " << o::wright(1, 1, 1) << "\n";
    std::cout << "W(-0.5,1,2)             " << o::wright(mp("-0.5"), 1, 2) << "\n";
    std::cout << "W(0.5,-1,-3)            " << o::wright(mp("0.5"), -1, -3) << "\n";
    std::cout << "3^2.5                   " << pow(mp(3), mp("2.5")) << "\n";
    std::cout << "3^-0.7                  " << pow(mp(3), mp("-0.7")) << "\n";
    std::cout << "8*3^-0.7                " << 8 * pow(mp(3), mp("-0.7")) << "\n";
    std::cout << "1/Gamma(1.5)            " << 1 / o::gamma(mp("1.5")) << "\n";
    std::cout << "E_{0.5,1}(1)            " << o::alpha_ml(1, mp("0.5"), 1, 1) << "\n";
    std::cout << "R_{1.5}(2) le roy       " << o::alpha_ml(mp("1.5"), 1, 2, 2) << "\n";
    return 0;
}
