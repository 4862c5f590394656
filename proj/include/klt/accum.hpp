#pragma once

#include <complex>

namespace klt {

/// Neumaier compensated accumulator for complex doubles.
struct KahanComplex {
    double re = 0, im = 0, cre = 0, cim = 0;

    void add(const std::complex<double>& v) {
        add_part(re, cre, v.real());
        add_part(im, cim, v.imag());
    }
    std::complex<double> sum() const { return {re + cre, im + cim}; }

private:
    static void add_part(double& s, double& comp, double v) {
        double t = s + v;
        if (std::abs(s) >= std::abs(v))
            comp += (s - t) + v;
        else
            comp += (v - t) + s;
        s = t;
    }
};

} // namespace klt
