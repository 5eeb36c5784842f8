#include "diqss/keyrate/entropy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace diqss::keyrate {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::invalid_argument("binary_entropy argument must be in [0,1], got " +
                                std::to_string(x));
  }
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double g_base(double x) {
  return 1.0 - binary_entropy(0.5 + 0.5 * x);
}

const char* to_string(Interpretation i) {
  return i == Interpretation::kCorrelator ? "A" : "literal";
}

double noise_entropy(double x, double q, Interpretation interpretation) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must be in [0,1]");
  double corr;  // the [0,1] correlator the two entropy terms act on
  if (interpretation == Interpretation::kCorrelator) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("interpretation A requires x in [0,1]");
    }
    corr = x;
  } else {
    const double t = x * x / 4.0 - 1.0;
    if (t < 0.0) {
      throw std::domain_error(
          "literal interpretation requires x in [2, 2*sqrt(2)]; "
          "sqrt(x^2/4 - 1) is imaginary for x = " + std::to_string(x));
    }
    corr = std::sqrt(t);
  }
  const double mixed =
      std::sqrt((1.0 - 2.0 * q) * (1.0 - 2.0 * q) + 4.0 * q * (1.0 - q) * corr * corr);
  return 1.0 - binary_entropy(std::min(1.0, 0.5 + 0.5 * corr)) +
         binary_entropy(std::min(1.0, 0.5 + 0.5 * mixed));
}

}  // namespace diqss::keyrate
