#pragma once

namespace linkexpr {

/// Regularized incomplete beta I_x(a, b) and its complement 1 - I_x(a, b).
/// Each is evaluated from the continued-fraction side where it is accurate,
/// so neither suffers cancellation near the tails.
struct IncompleteBeta {
    double lower = 0.0;
    double upper = 1.0;
};

IncompleteBeta incomplete_beta(double a, double b, double x);

/// P[F_{d1,d2} <= x] and P[F_{d1,d2} > x].
double f_cdf(double d1, double d2, double x);
double f_survival(double d1, double d2, double x);

/// The x with P[F_{d1,d2} > x] = alpha. Inverts the incomplete beta function
/// with bracketed Newton iteration; throws NumericalError if it fails to converge.
double f_upper_quantile(unsigned d1, unsigned d2, double alpha);

}  // namespace linkexpr
