#include "bounds.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace frobtrace {

namespace {

constexpr double kE = 2.718281828459045;

void require_query(double x, u32 g, double constant) {
  if (!(x > kE)) throw std::invalid_argument("x must exceed e");
  if (g < 1) throw std::invalid_argument("g must be >= 1");
  if (!(constant > 0)) throw std::invalid_argument("constant must be positive");
}

double power_bound(double x, double m, double constant) {
  return constant * std::pow(x, 1.0 - 1.0 / m) /
         std::pow(std::log(x), 1.0 - 2.0 / m);
}

}  // namespace

double theorem1_bound(const BoundQuery& q) {
  require_query(q.x, q.g, q.constant);
  double m = 3.0 * q.g + (q.t_is_zero ? 1.0 : 2.0);
  return power_bound(q.x, m, q.constant);
}

double torus_variant_bound(double x, u32 g, double constant) {
  require_query(x, g, constant);
  return power_bound(x, 5.0 * g + 2.0, constant);
}

ParamSchedule schedule_raw(double x, u32 g, bool t_is_zero, double epsilon) {
  require_query(x, g, 1.0);
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  double m = 3.0 * g + (t_is_zero ? 1.0 : 2.0);
  ParamSchedule s;
  s.epsilon = epsilon;
  s.y = std::pow(x, 1.0 / m) / std::pow(std::log(x), 2.0 / m);
  s.u = s.y > 1.0 ? std::sqrt(s.y) * std::pow(std::log(s.y), 2.0 + epsilon) : 0.0;
  return s;
}

namespace {

bool feasible(double x, u32 g, bool t_is_zero, double epsilon) {
  if (!(x > kE)) return false;
  ParamSchedule s = schedule_raw(x, g, t_is_zero, epsilon);
  return s.y > 3.0 && s.u <= s.y;
}

}  // namespace

double minimal_feasible_x(u32 g, bool t_is_zero, double epsilon) {
  double hi = 100.0;
  while (!feasible(hi, g, t_is_zero, epsilon)) {
    hi *= 2.0;
    if (hi > 1e300)
      throw std::runtime_error("no feasible x for this schedule");
  }
  double lo = hi / 2.0;
  for (int i = 0; i < 200; ++i) {
    double mid = std::sqrt(lo * hi);
    (feasible(mid, g, t_is_zero, epsilon) ? hi : lo) = mid;
  }
  return hi;
}

ParamSchedule choose_parameters(double x, u32 g, bool t_is_zero,
                                double epsilon) {
  ParamSchedule s = schedule_raw(x, g, t_is_zero, epsilon);
  if (s.y > 3.0 && s.u <= s.y) return s;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "schedule infeasible at x = %.6g (y = %.6g, u = %.6g): need "
                "y > 3 and u <= y, first satisfied near x = %.4g",
                x, s.y, s.u, minimal_feasible_x(g, t_is_zero, epsilon));
  throw InfeasibleScheduleError(buf);
}

ParamSchedule clamped_schedule(double x, u32 g, bool t_is_zero,
                               double epsilon) {
  ParamSchedule s = schedule_raw(x, g, t_is_zero, epsilon);
  if (s.y < 3.0) s.y = 3.0;
  if (s.u > s.y) s.u = s.y;
  if (s.u < 2.0) s.u = 2.0;
  return s;
}

double chebotarev_rhs(double x, u64 ell, u32 g, double n_surrogate,
                      ChebVariant variant) {
  require_query(x, g, 1.0);
  if (ell < 3) throw std::invalid_argument("ell must be >= 3");
  if (!(n_surrogate >= 1)) throw std::invalid_argument("N surrogate must be >= 1");
  double e = variant == ChebVariant::U ? 1.5 * g : (3.0 * g - 1.0) / 2.0;
  double lx = std::log(x);
  return x / (ell * lx) + g * std::pow(static_cast<double>(ell), e) *
                              std::sqrt(x) / lx *
                              std::log(ell * n_surrogate);
}

double logM_surrogate(u64 ell, double n_surrogate, u32 g, ChebVariant variant) {
  if (ell < 3) throw std::invalid_argument("ell must be >= 3");
  if (!(n_surrogate >= 1)) throw std::invalid_argument("N surrogate must be >= 1");
  if (g < 1) throw std::invalid_argument("g must be >= 1");
  double quotient_exp = variant == ChebVariant::U ? g + 1.0 : g;
  return 2.0 * quotient_exp * std::log(static_cast<double>(ell - 1)) +
         2.0 * std::log(ell * n_surrogate) + std::log(2.0);
}

}  // namespace frobtrace
