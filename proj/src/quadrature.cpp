#include "tvsph/quadrature.hpp"

namespace tvsph {

namespace {

double simpson(const std::function<double(double)>&, double a, double fa,
               double b, double fb, double m, double fm) {
    (void)m;
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa,
                     double b, double fb, double m, double fm, double whole,
                     double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, fa, m, fm, lm, flm);
    const double right = simpson(f, m, fm, b, fb, rm, frm);
    const double err = left + right - whole;
    if (depth <= 0 || std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson(f, a, fa, b, fb, m, fm);
    return adaptive_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

double integrate_sqrt_endpoints(const std::function<double(double)>& f, double a,
                                double b, double tol) {
    if (!(b > a)) return 0.0;
    const double mid = 0.5 * (a + b);
    const double half = mid - a;
    auto left = [&](double u) { return 2.0 * u * f(a + u * u); };
    auto right = [&](double u) { return 2.0 * u * f(b - u * u); };
    const double su = std::sqrt(half);
    return adaptive_simpson(left, 0.0, su, 0.5 * tol) +
           adaptive_simpson(right, 0.0, su, 0.5 * tol);
}

double pairwise_sum(std::span<const double> values) {
    const size_t n = values.size();
    if (n == 0) return 0.0;
    if (n == 1) return values[0];
    if (n == 2) return values[0] + values[1];
    const size_t half = n / 2;
    return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace tvsph
