#pragma once

#include <cstdint>
#include <vector>

namespace bootperc {

// H and the composition-sum bound treat divergence as a value, not an error.
struct HValue {
    bool divergent = false;
    double value = 0.0;
};

struct BoundInputs {
    int ell = 0;       // Chebyshev distance between the two sites
    int m = 1;         // cube side
    int d = 3;
    double F_hat = 0.0;
    double chi_hat = 0.0;
};

struct BoundValue {
    bool divergent = false;
    double value = 0.0;               // clamped to [0,1] when finite
    std::vector<double> terms_by_k;   // pre-clamp contribution per chain length, when requested
};

// Saturating iterated exponential. Once a further exp would push past 2^63
// the result is carried as a log2 estimate plus a count of layers that could
// not be expanded at all.
struct IterExp {
    bool saturated = false;
    double value = 0.0;
    double log2_value = 0.0;
    int layers_above = 0;
};

HValue H(double chi, int r);
BoundValue lemma6_bound(const BoundInputs& in, bool with_terms = false);
double exact_I1(std::uint64_t L, double p);
IterExp iter_exp(int n, double x);
double threshold_constant();

}  // namespace bootperc
