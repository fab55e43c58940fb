#include "bootperc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace bootperc {

HValue H(double chi, int r) {
    if (r < 1) throw std::invalid_argument("H: r must be >= 1");
    if (!(chi >= 0.0)) throw std::invalid_argument("H: chi must be >= 0");
    const double q = 2.0 * chi;
    if (q >= 1.0) return {true, 0.0};
    return {false, std::pow(q, r - 1) / (2.0 * (1.0 - q))};
}

BoundValue lemma6_bound(const BoundInputs& in, bool with_terms) {
    if (in.ell < 0) throw std::invalid_argument("lemma6_bound: ell must be >= 0");
    if (in.m < 1) throw std::invalid_argument("lemma6_bound: m must be >= 1");
    if (in.d < 3) throw std::invalid_argument("lemma6_bound: d must be >= 3");
    if (!(in.F_hat >= 0.0 && in.F_hat <= 1.0))
        throw std::invalid_argument("lemma6_bound: F_hat must lie in [0,1]");
    if (!(in.chi_hat >= 0.0)) throw std::invalid_argument("lemma6_bound: chi_hat must be >= 0");
    if (in.ell > in.m) throw std::invalid_argument("lemma6_bound: ell must be <= m");

    BoundValue out;
    if (2.0 * in.chi_hat >= 1.0) {
        out.divergent = true;
        out.value = 1.0;
        return out;
    }

    const int ell = in.ell;
    const double md1 = std::pow(static_cast<double>(in.m), in.d - 1);
    auto Hfin = [&](int r) { return H(in.chi_hat, r).value; };

    // g over every gap a chain or the a-sum can request, with prefix sums so
    // each h0(i) is O(1).
    const int gmax = ell + 1 + in.m;
    std::vector<double> gs(gmax + 1, 0.0), gpre(gmax + 1, 0.0);
    for (int r = 1; r <= gmax; ++r) {
        gs[r] = in.F_hat * std::min(1.0, md1 * Hfin(r));
        gpre[r] = gpre[r - 1] + gs[r];
    }

    std::vector<double> h0(ell + 2, 0.0);
    for (int i = 1; i <= ell + 1; ++i)
        h0[i] = Hfin(i + 1) + (gpre[std::min(i + in.m, gmax)] - gpre[i - 1]);

    // D(i) sums the gap products over all ascending chains from i to ell+1.
    std::vector<double> D(ell + 2, 0.0);
    D[ell + 1] = 1.0;
    double total = h0[ell + 1];
    for (int i = ell; i >= 1; --i) {
        double s = 0.0;
        for (int ip = i + 1; ip <= ell + 1; ++ip) s += gs[ip - i] * D[ip];
        D[i] = s;
        total += h0[i] * s;
    }
    out.value = std::clamp(total, 0.0, 1.0);

    if (with_terms) {
        // Stratify by chain length: Dk(i) restricts D(i) to exactly k gaps.
        std::vector<std::vector<double>> Dk(ell + 1, std::vector<double>(ell + 2, 0.0));
        Dk[0][ell + 1] = 1.0;
        for (int k = 1; k <= ell; ++k)
            for (int i = ell + 1 - k; i >= 1; --i) {
                double s = 0.0;
                for (int ip = i + 1; ip <= ell + 1; ++ip) s += gs[ip - i] * Dk[k - 1][ip];
                Dk[k][i] = s;
            }
        out.terms_by_k.assign(ell + 1, 0.0);
        for (int k = 0; k <= ell; ++k) {
            double t = 0.0;
            for (int i = 1; i <= ell + 1; ++i) t += h0[i] * Dk[k][i];
            out.terms_by_k[k] = t;
        }
    }
    return out;
}

double exact_I1(std::uint64_t L, double p) {
    if (L < 1) throw std::invalid_argument("exact_I1: L must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("exact_I1: p must lie in [0,1]");
    return 1.0 - std::pow(1.0 - p, static_cast<double>(L));
}

IterExp iter_exp(int n, double x) {
    if (n < 0) throw std::invalid_argument("iter_exp: n must be >= 0");
    IterExp r;
    double v = x;
    // exp(v) stays at or below 2^63 exactly while v <= 63*ln2.
    const double lim = 63.0 * std::numbers::ln2;
    for (int i = 0; i < n; ++i) {
        if (v > lim) {
            r.saturated = true;
            r.log2_value = v * std::numbers::log2e;
            r.layers_above = n - i - 1;
            r.value = std::numeric_limits<double>::infinity();
            return r;
        }
        v = std::exp(v);
    }
    r.value = v;
    return r;
}

double threshold_constant() {
    return std::numbers::pi * std::numbers::pi / 6.0;
}

}  // namespace bootperc
