#pragma once

#include "util.hpp"

namespace frobtrace {

struct BoundQuery {
  double x = 0;        // must exceed e so every log factor stays > 1
  u32 g = 1;
  bool t_is_zero = false;
  double constant = 1.0;  // fit-by-eye multiplier; the asymptotic constants are ineffective
};

// constant * x^(1 - 1/(3g+kappa)) / (ln x)^(1 - 2/(3g+kappa)), kappa = 1 when
// t == 0 and 2 otherwise.
double theorem1_bound(const BoundQuery& q);

// The weaker non-split-torus route: x^(1 - 1/(5g+2)) / (ln x)^(1 - 2/(5g+2)).
double torus_variant_bound(double x, u32 g, double constant = 1.0);

struct ParamSchedule {
  double y = 0;
  double u = 0;
  double epsilon = 0;
};

// y = x^(1/m) / (ln x)^(2/m) with m = 3g + kappa as above, and
// u = y^(1/2) (ln y)^(2+eps). No feasibility constraint: callers plotting
// the schedule shape want the formula value even where u > y.
ParamSchedule schedule_raw(double x, u32 g, bool t_is_zero, double epsilon);

// schedule_raw plus the window hypotheses y > 3 and u <= y. Violations throw
// InfeasibleScheduleError whose message reports the minimal feasible x.
ParamSchedule choose_parameters(double x, u32 g, bool t_is_zero, double epsilon);

// Smallest x (up to ~1e-6 relative) whose schedule satisfies y > 3 and u <= y.
double minimal_feasible_x(u32 g, bool t_is_zero, double epsilon);

// schedule_raw with y clamped up to 3 + delta and u clamped into [2, y]; for
// desk-scale x where the honest schedule is infeasible but a survey window
// is still wanted. The clamp is disclosed by the caller.
ParamSchedule clamped_schedule(double x, u32 g, bool t_is_zero, double epsilon);

enum class ChebVariant { U, Uprime };

// x/(ell ln x) + g * ell^e * sqrt(x)/ln x * ln(ell * N) with e = 3g/2 for
// variant U and (3g-1)/2 for Uprime. N is the conductor surrogate
// (product of |disc|).
double chebotarev_rhs(double x, u64 ell, u32 g, double n_surrogate,
                      ChebVariant variant);

// 2 ln|B/U| + 2 ln(ell*N) + ln 2, with |B/U| = (ell-1)^(g+1) for variant U
// and |B/U'| = (ell-1)^g for Uprime.
double logM_surrogate(u64 ell, double n_surrogate, u32 g, ChebVariant variant);

}  // namespace frobtrace
