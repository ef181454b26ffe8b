#pragma once

#include <cmath>
#include <limits>

namespace hmf {

// Signed value stored as sign * exp(log_magnitude).  Products of
// exponentially small gamma-factor ratios stay representable far below
// the double underflow threshold.
struct LogScaleValue {
    double log_magnitude = -std::numeric_limits<double>::infinity();
    int sign = 0;  // -1, 0, +1; sign == 0 is exact zero and log_magnitude is ignored

    static LogScaleValue zero() { return {}; }

    static LogScaleValue from_log(double log_mag, int s = +1) {
        LogScaleValue v;
        v.log_magnitude = log_mag;
        v.sign = (s > 0) ? +1 : (s < 0 ? -1 : 0);
        return v;
    }

    static LogScaleValue from_double(double x) {
        if (x == 0.0) return {};
        return from_log(std::log(std::abs(x)), x > 0 ? +1 : -1);
    }

    bool is_zero() const { return sign == 0; }

    double to_double() const {
        return sign == 0 ? 0.0 : static_cast<double>(sign) * std::exp(log_magnitude);
    }

    LogScaleValue pow(double e) const {
        if (sign == 0) return {};
        // fractional powers only make sense for positive values
        return from_log(log_magnitude * e, sign);
    }

    friend LogScaleValue operator*(const LogScaleValue& a, const LogScaleValue& b) {
        if (a.sign == 0 || b.sign == 0) return {};
        return from_log(a.log_magnitude + b.log_magnitude, a.sign * b.sign);
    }

    friend LogScaleValue operator/(const LogScaleValue& a, const LogScaleValue& b) {
        if (b.sign == 0) return from_log(std::numeric_limits<double>::infinity(), a.sign);
        if (a.sign == 0) return {};
        return from_log(a.log_magnitude - b.log_magnitude, a.sign * b.sign);
    }

    friend LogScaleValue& operator*=(LogScaleValue& a, const LogScaleValue& b) {
        a = a * b;
        return a;
    }
};

}  // namespace hmf
