#pragma once

namespace hmf::detail {

// 20-point Gauss-Legendre rule on [-1, 1].
inline constexpr int kGaussN = 20;

inline constexpr long double kGaussX[kGaussN] = {
    -0.9931285991850949247861L, -0.9639719272779137912677L, -0.9122344282513259058678L,
    -0.8391169718222188233945L, -0.7463319064601507926143L, -0.6360536807265150254528L,
    -0.5108670019508270980044L, -0.3737060887154195606725L, -0.2277858511416450780805L,
    -0.0765265211334973337546L,  0.0765265211334973337546L,  0.2277858511416450780805L,
     0.3737060887154195606725L,  0.5108670019508270980044L,  0.6360536807265150254528L,
     0.7463319064601507926143L,  0.8391169718222188233945L,  0.9122344282513259058678L,
     0.9639719272779137912677L,  0.9931285991850949247861L};

inline constexpr long double kGaussW[kGaussN] = {
    0.0176140071391521183119L, 0.0406014298003869413310L, 0.0626720483341090635695L,
    0.0832767415767047487248L, 0.1019301198172404350368L, 0.1181945319615184173124L,
    0.1316886384491766268985L, 0.1420961093183820513293L, 0.1491729864726037467878L,
    0.1527533871307258506981L, 0.1527533871307258506981L, 0.1491729864726037467878L,
    0.1420961093183820513293L, 0.1316886384491766268985L, 0.1181945319615184173124L,
    0.1019301198172404350368L, 0.0832767415767047487248L, 0.0626720483341090635695L,
    0.0406014298003869413310L, 0.0176140071391521183119L};

// Composite quadrature of f over [a, b] with the given panel count.
template <typename F>
double panel_integrate(double a, double b, int panels, F&& f) {
    long double acc = 0.0L;
    for (int p = 0; p < panels; ++p) {
        const long double pa = a + (b - a) * static_cast<long double>(p) / panels;
        const long double pb = a + (b - a) * static_cast<long double>(p + 1) / panels;
        const long double half = (pb - pa) / 2.0L, mid = (pa + pb) / 2.0L;
        long double s = 0.0L;
        for (int i = 0; i < kGaussN; ++i) {
            s += kGaussW[i] * static_cast<long double>(
                                  f(static_cast<double>(mid + half * kGaussX[i])));
        }
        acc += s * half;
    }
    return static_cast<double>(acc);
}

}  // namespace hmf::detail
