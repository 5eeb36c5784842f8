#pragma once

namespace diqss::keyrate {

/// Binary Shannon entropy h(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

/// g(x) = 1 - h(1/2 + x/2) for a correlator-like argument x in [0,1].
double g_base(double x);

/// Two readings of the noise-preprocessing entropy function.
///
/// kCorrelator ("A") takes the [0,1] correlator directly:
///   g(x,q) = 1 - h(1/2 + x/2) + h(1/2 + sqrt((1-2q)^2 + 4q(1-q) x^2)/2),
/// which reduces to g_base at q = 0 and to 1 at x = 1 for every q.
///
/// kLiteral takes a CHSH-like argument in [2, 2*sqrt(2)] and substitutes
/// sqrt(x^2/4 - 1) for the correlator; arguments below 2 raise a domain error.
enum class Interpretation { kCorrelator, kLiteral };

const char* to_string(Interpretation i);

double noise_entropy(double x, double q,
                     Interpretation interpretation = Interpretation::kCorrelator);

}  // namespace diqss::keyrate
