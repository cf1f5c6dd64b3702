#pragma once

#include <functional>
#include <vector>

namespace ajj {

struct Extremum {
    double t = 0.0;
    double value = 0.0; // signed value at the extremum
};

/// Interior extrema of a sampled series, located by derivative sign change
/// between neighbours. Plateau samples are skipped.
std::vector<Extremum> sampled_extrema(const std::vector<double>& times,
                                      const std::vector<double>& values);

/// Zero crossings by linear interpolation between samples of opposite sign.
std::vector<double> zero_crossings(const std::vector<double>& times,
                                   const std::vector<double>& values);

/// Golden-section refinement of a local maximum of f inside [a, b].
double refine_maximum(const std::function<double(double)>& f, double a, double b,
                      double tol = 1e-12);

/// Extrema of a continuously evaluable signal over [t0, t1]: bracketed on a
/// coarse grid, then refined on |f|. Magnitudes come out at the evaluation
/// accuracy of f rather than the sampling resolution.
std::vector<Extremum> refined_extrema(const std::function<double(double)>& f,
                                      double t0, double t1, double scan_dt,
                                      std::size_t max_count = 0);

/// Mean spacing between local minima of the extremum-magnitude sequence:
/// the envelope period of a beating signal. Returns 0 when fewer than two
/// troughs exist.
double envelope_period(const std::vector<Extremum>& extrema);

} // namespace ajj
