#include "surgerylab/special_functions.hpp"

#include <cmath>

namespace surgerylab {

namespace {

const double PI = 3.14159265358979323846264338327950288;

// Series for Li_2 after reduction to |z| <= ~0.87.
std::complex<double> dilog_series(std::complex<double> z) {
    std::complex<double> sum = 0.0, term = z;
    for (int k = 1; k < 400; k++) {
        sum += term / double(k * k);
        term *= z;
        if (std::abs(term) < 1e-19 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

double zeta_even(int n) {  // zeta(2n)
    switch (n) {
        case 1: return PI * PI / 6.0;
        case 2: return PI * PI * PI * PI / 90.0;
        case 3: return std::pow(PI, 6) / 945.0;
        default: {
            double s = 1.0;
            for (int k = 2; k <= 300; k++) s += std::pow(double(k), -2.0 * n);
            return s;
        }
    }
}

}  // namespace

std::complex<double> dilog(std::complex<double> z) {
    const double pi2_6 = PI * PI / 6.0;
    if (z == std::complex<double>(0.0, 0.0)) return 0.0;
    if (z == std::complex<double>(1.0, 0.0)) return pi2_6;

    if (std::abs(z) > 1.0) {
        // Li2(z) = -Li2(1/z) - pi^2/6 - log(-z)^2 / 2
        std::complex<double> lg = std::log(-z);
        return -dilog(1.0 / z) - pi2_6 - 0.5 * lg * lg;
    }
    if (z.real() > 0.5) {
        // Li2(z) = pi^2/6 - log(z) log(1-z) - Li2(1-z)
        return pi2_6 - std::log(z) * std::log(1.0 - z) - dilog(1.0 - z);
    }
    return dilog_series(z);
}

double bloch_wigner(std::complex<double> z) {
    if (z.imag() == 0.0) return 0.0;  // D vanishes on the reals
    double r = std::abs(z);
    if (r == 0.0) return 0.0;
    return dilog(z).imag() + std::log(r) * std::arg(1.0 - z);
}

double lobachevsky(double theta) {
    // reduce to [0, pi/2] by pi-periodicity and oddness
    double t = std::fmod(theta, PI);
    if (t < 0) t += PI;
    double sign = 1.0;
    if (t > PI / 2.0) {
        t = PI - t;
        sign = -1.0;
    }
    if (t == 0.0) return 0.0;
    // L(t) = t - t log(2t) + sum_n zeta(2n)/(n(2n+1)) (t/pi)^{2n} t
    double sum = t - t * std::log(2.0 * t);
    double ratio = (t / PI) * (t / PI);
    double pw = t;
    for (int n = 1; n <= 40; n++) {
        pw *= ratio;
        double term = zeta_even(n) / (double(n) * (2.0 * n + 1.0)) * pw;
        sum += term;
        if (std::fabs(term) < 1e-18) break;
    }
    return sign * sum;
}

double catalan_constant() {
    // Cohen-Rodriguez Villegas-Zagier acceleration of sum (-1)^k/(2k+1)^2.
    const int n = 40;
    double d = std::pow(3.0 + std::sqrt(8.0), n);
    d = (d + 1.0 / d) / 2.0;
    double b = -1.0, c = -d, s = 0.0;
    for (int k = 0; k < n; k++) {
        c = b - c;
        s += c / double((2 * k + 1) * (2 * k + 1));
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0));
    }
    return s / d;
}

}  // namespace surgerylab
