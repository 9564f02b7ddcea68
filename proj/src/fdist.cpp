#include "linkexpr/fdist.hpp"

#include "linkexpr/error.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace linkexpr {

namespace {

double log_gamma(double x) {
    int sign = 0;
    return ::lgamma_r(x, &sign);  // reentrant; std::lgamma writes the global signgam
}

double log_beta(double a, double b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIterations = 100000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace

IncompleteBeta incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw NumericalError("incomplete beta requires a, b > 0");
    if (std::isnan(x)) throw NumericalError("incomplete beta: x is NaN");
    if (x <= 0.0) return {0.0, 1.0};
    if (x >= 1.0) return {1.0, 0.0};
    const double log_front = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        const double lower = front * beta_continued_fraction(a, b, x) / a;
        return {lower, 1.0 - lower};
    }
    const double upper = front * beta_continued_fraction(b, a, 1.0 - x) / b;
    return {1.0 - upper, upper};
}

double f_cdf(double d1, double d2, double x) {
    if (x <= 0.0) return 0.0;
    return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x)).upper;
}

double f_survival(double d1, double d2, double x) {
    if (x <= 0.0) return 1.0;
    return incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x)).lower;
}

double f_upper_quantile(unsigned d1, unsigned d2, double alpha) {
    if (d1 < 1 || d2 < 1) throw DegreesOfFreedomError("F quantile requires d1, d2 >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw NumericalError("F quantile requires alpha in (0,1)");

    // P[F > x] = I_z(d2/2, d1/2) with z = d2 / (d2 + d1 x); solve I_z = alpha for z.
    const double a = d2 / 2.0;
    const double b = d1 / 2.0;
    const double lb = log_beta(a, b);
    double lo = 0.0;
    double hi = 1.0;
    double z = 0.5;
    for (int iter = 0; iter < 2000; ++iter) {
        const double value = incomplete_beta(a, b, z).lower - alpha;
        if (value == 0.0) return d2 * (1.0 - z) / (d1 * z);
        if (value < 0.0) {
            lo = z;
        } else {
            hi = z;
        }
        const double density = std::exp((a - 1.0) * std::log(z) + (b - 1.0) * std::log1p(-z) - lb);
        double next = z - value / density;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - z);
        z = next;
        if (step <= 4.0 * std::numeric_limits<double>::epsilon() * z || hi - lo <= std::numeric_limits<double>::min()) {
            return d2 * (1.0 - z) / (d1 * z);
        }
    }
    if (hi - lo < 1e-14) return d2 * (1.0 - z) / (d1 * z);
    throw NumericalError("F quantile did not converge for d1=" + std::to_string(d1) + ", d2=" + std::to_string(d2));
}

}  // namespace linkexpr
