#pragma once

#include "flatbill/geodesic.hpp"

namespace flatbill {

/// One length value in a billiard counting series.
struct CountEvent {
  Cyc length2;         // exact squared billiard length
  double length = 0;   // float shadow
  long multiplicity = 0;
  // true when some orbit in this event is fixed by the reflection symmetry
  // (the finitely many degenerate bands, counted once)
  bool degenerate = false;
};

/// Cumulative counting function N(L) as a sorted event list.
struct CountSeries {
  enum class Mode { periodic_bands, generalized_diagonals };
  Mode mode = Mode::periodic_bands;
  Cyc table_area;   // area of the billiard table
  long degree = 0;  // covering degree d of the partial unfolding over the double
  std::vector<CountEvent> events;  // strictly increasing length

  long total() const;
  long count_up_to(double L) const;
};

/// Bands of periodic billiard trajectories of length <= L, identified as
/// orbits of cylinders on the partial unfolding under the full reflection
/// symmetry (grouped by their footprint on the table).
CountSeries count_periodic_billiards(const Polygon& P, const Rational& L);

/// Generalized diagonals from p1 to p2 of length <= L; p1 == p2 is the
/// illumination problem. Points are in the coordinates of P.
CountSeries count_generalized_diagonals(const Polygon& P, const Vec& p1,
                                        const Vec& p2, const Rational& L);

/// Cesaro-type estimator (1/T) integral of N(e^t) e^{-2t} dt with T = log L,
/// evaluated in closed form between event times; the fixed point of exactly
/// quadratic growth N(x) = c x^2 is c.
double weak_asymptotic_estimate(const CountSeries& s, double L);

struct EstimateReport {
  double L_max = 0;
  double c_hat = 0;     // area-normalized estimator: estimate * area
  double c_pred = 0;
  double deviation = 0;  // |c_hat - c_pred| / c_pred
  std::vector<std::pair<double, double>> trace;  // (L, c_hat at L), L halving
};

EstimateReport compare_to_prediction(const CountSeries& s, double c_pred,
                                     double area);

}  // namespace flatbill
