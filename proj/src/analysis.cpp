#include "ajj/analysis.hpp"

#include "ajj/errors.hpp"

#include <cmath>

namespace ajj {

std::vector<Extremum> sampled_extrema(const std::vector<double>& times,
                                      const std::vector<double>& values) {
    if (times.size() != values.size())
        throw config_error("sampled_extrema: times/values length mismatch");
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double dl = values[i] - values[i - 1];
        const double dr = values[i + 1] - values[i];
        if (dl * dr < 0.0) out.push_back({times[i], values[i]});
    }
    return out;
}

std::vector<double> zero_crossings(const std::vector<double>& times,
                                   const std::vector<double>& values) {
    if (times.size() != values.size())
        throw config_error("zero_crossings: times/values length mismatch");
    std::vector<double> out;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double a = values[i - 1];
        const double b = values[i];
        if (a == 0.0) {
            out.push_back(times[i - 1]);
        } else if (a * b < 0.0) {
            const double frac = a / (a - b);
            out.push_back(times[i - 1] + frac * (times[i] - times[i - 1]));
        }
    }
    return out;
}

double refine_maximum(const std::function<double(double)>& f, double a, double b,
                      double tol) {
    static const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - inv_golden * (b - a);
    double x2 = a + inv_golden * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    while (b - a > tol) {
        if (f1 > f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_golden * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_golden * (b - a);
            f2 = f(x2);
        }
    }
    return 0.5 * (a + b);
}

std::vector<Extremum> refined_extrema(const std::function<double(double)>& f,
                                      double t0, double t1, double scan_dt,
                                      std::size_t max_count) {
    std::vector<double> ts, vs;
    for (double t = t0; t <= t1 + 0.5 * scan_dt; t += scan_dt) {
        ts.push_back(t);
        vs.push_back(f(t));
    }
    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < vs.size(); ++i) {
        const double dl = vs[i] - vs[i - 1];
        const double dr = vs[i + 1] - vs[i];
        if (dl * dr < 0.0) {
            const double sign = dl > 0.0 ? 1.0 : -1.0;
            const double t_star = refine_maximum(
                [&](double t) { return sign * f(t); }, ts[i - 1], ts[i + 1]);
            out.push_back({t_star, f(t_star)});
            if (max_count > 0 && out.size() >= max_count) break;
        }
    }
    return out;
}

double envelope_period(const std::vector<Extremum>& extrema) {
    std::vector<double> troughs;
    for (std::size_t i = 1; i + 1 < extrema.size(); ++i) {
        const double m = std::abs(extrema[i].value);
        if (m < std::abs(extrema[i - 1].value) && m < std::abs(extrema[i + 1].value))
            troughs.push_back(extrema[i].t);
    }
    if (troughs.size() < 2) return 0.0;
    return (troughs.back() - troughs.front()) / double(troughs.size() - 1);
}

} // namespace ajj
