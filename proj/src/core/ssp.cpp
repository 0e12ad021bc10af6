#include "core/ssp.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace germlab {

namespace {

std::int64_t effective_horizon(const SequenceGerm& a, std::int64_t horizon) {
  // rho_m needs a_{m+1}.
  const auto len = a.length();
  std::int64_t h = horizon;
  if (len) h = std::min(h, *len - 1);
  return h;
}

void check_decreasing(const SequenceGerm& a, std::int64_t m, long double am, long double am1) {
  if (!(am > 0.0L) || !(am1 >= 0.0L))
    fail(ErrorCode::InvalidArgument, "sequence value at m = " + std::to_string(m) + " is not positive");
  if (am1 > 0.0L ? !(am1 < am) : !(a.log_at(m + 1) < a.log_at(m)))
    fail(ErrorCode::InvalidArgument, "sequence is not strictly decreasing at m = " + std::to_string(m));
}

}  // namespace

SSPVerdict ssp_ratio_test(const SequenceGerm& a, std::int64_t horizon, double tol, std::int64_t window) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  const std::int64_t h = effective_horizon(a, horizon);
  if (h < 2) fail(ErrorCode::InvalidArgument, "horizon too short for the ratio test");
  if (window == 0) window = std::max<std::int64_t>(1, h / 10);
  if (window < 1 || h < 2 * window) fail(ErrorCode::InvalidArgument, "ratio test needs horizon >= 2 * window");

  SSPVerdict v;
  v.tol = tol;
  v.evidence.columns = {"m", "a_m", "rho_m"};
  v.evidence.rows.reserve(static_cast<std::size_t>(h));
  double worst_window = 0.0;
  std::int64_t strong = 0;
  for (std::int64_t m = 1; m <= h; ++m) {
    const long double am = a.at(m), am1 = a.at(m + 1);
    check_decreasing(a, m, am, am1);
    const double rho = static_cast<double>(a.ratio(m));
    v.evidence.rows.push_back({static_cast<double>(m), static_cast<double>(am), rho});
    if (m > h - window) {
      const double dev = std::abs(rho - 1.0);
      worst_window = std::max(worst_window, dev);
      if (dev >= 10.0 * tol) ++strong;
    }
  }
  if (worst_window <= tol)
    v.verdict = Verdict::Satisfied;
  else if (strong > 0)
    v.verdict = Verdict::Violated;
  else
    v.verdict = Verdict::Inconclusive;
  v.details = {{"horizon", h},
               {"requested_horizon", horizon},
               {"window", window},
               {"max_window_deviation", worst_window},
               {"window_indices_at_10tol", strong}};
  return v;
}

SSPVerdict ssp_definition_oracle(const SequenceGerm& a, std::int64_t horizon, double tol) {
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");
  if (horizon < 4) fail(ErrorCode::InvalidArgument, "definition oracle needs horizon >= 4");
  const std::int64_t h = effective_horizon(a, horizon);
  if (h < 4) fail(ErrorCode::InvalidArgument, "sequence too short for the definition oracle");
  const std::int64_t trailing = std::max<std::int64_t>(1, h / 10);

  SSPVerdict v;
  v.tol = tol;
  v.evidence.columns = {"m", "gap_m"};
  v.evidence.rows.reserve(static_cast<std::size_t>(h));
  double worst = 0.0;
  for (std::int64_t m = 1; m <= h; ++m) {
    const long double am = a.at(m), am1 = a.at(m + 1);
    check_decreasing(a, m, am, am1);
    // min(|p - a_m|, |p - a_{m+1}|)/p = (a_m - a_{m+1})/(a_m + a_{m+1}) = tanh(log(a_m/a_{m+1})/2).
    double gap;
    if (am1 > 0.0L && std::isfinite(static_cast<double>(am1 / am)))
      gap = static_cast<double>((am - am1) / (am + am1));
    else
      gap = static_cast<double>(std::tanh((a.log_at(m) - a.log_at(m + 1)) / 2.0L));
    v.evidence.rows.push_back({static_cast<double>(m), gap});
    if (m > h - trailing) worst = std::max(worst, gap);
  }
  v.verdict = worst <= tol ? Verdict::Satisfied : Verdict::Violated;
  v.details = {{"horizon", h}, {"requested_horizon", horizon}, {"trailing", trailing}, {"max_trailing_gap", worst}};
  return v;
}

PolyBoundResult polynomial_boundedness_test(const SequenceGerm& a, int k_max, std::int64_t horizon) {
  if (k_max < 1) fail(ErrorCode::InvalidArgument, "k_max must be >= 1");
  if (horizon < 2) fail(ErrorCode::InvalidArgument, "horizon must be >= 2");
  PolyBoundResult r;
  r.horizon = a.available(horizon);
  std::vector<long double> la, lm;
  for (std::int64_t m = 2; m <= r.horizon; ++m) {
    la.push_back(a.log_at(m));
    lm.push_back(std::log(static_cast<long double>(m)));
  }
  for (int k = 1; k <= k_max; ++k) {
    std::int64_t first = 0;
    for (std::size_t i = 0; i < la.size(); ++i) {
      if (la[i] < -static_cast<long double>(k) * lm[i] - kPolyBoundLogTol) {
        first = static_cast<std::int64_t>(i) + 2;
        break;
      }
    }
    r.first_failure.push_back(first);
    if (first == 0 && !r.witness) r.witness = k;
  }
  r.bounded = r.witness.has_value();
  return r;
}

SSPVerdict ssp_distance_test(const GermOracle& g, const DirectionSet& d, const ScaleSchedule& s, double tol) {
  if (d.empty()) fail(ErrorCode::InvalidArgument, "ssp distance test: direction set is empty");
  if (d.dim != g.dim) fail(ErrorCode::InvalidArgument, "ssp distance test: dimension mismatch");
  if (s.depth() < 8) fail(ErrorCode::InvalidArgument, "ssp distance test needs schedule depth >= 8");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidArgument, "tol must be positive");

  SSPVerdict v;
  v.tol = tol;
  v.evidence.columns = {"rep", "k", "t_k", "q_k"};
  const int k0 = s.first_fine_shell();
  const int len = s.depth() - k0;
  bool all_ok = true;
  bool any_violation = false;
  nlohmann::json per_rep = nlohmann::json::array();
  for (std::size_t i = 0; i < d.size(); ++i) {
    std::vector<double> q(static_cast<std::size_t>(s.depth()));
    for (int k = 0; k < s.depth(); ++k) {
      const double t = s.scale(k);
      q[static_cast<std::size_t>(k)] = g.distance(scaled(d.reps[i], t)) / t;
      v.evidence.rows.push_back({static_cast<double>(i), static_cast<double>(k), t, q[static_cast<std::size_t>(k)]});
    }
    double qmax = 0.0, mk = 0.0, mq = 0.0;
    for (int k = k0; k < s.depth(); ++k) {
      qmax = std::max(qmax, q[static_cast<std::size_t>(k)]);
      mk += k;
      mq += q[static_cast<std::size_t>(k)];
    }
    mk /= len;
    mq /= len;
    double sxy = 0.0, sxx = 0.0;
    for (int k = k0; k < s.depth(); ++k) {
      sxy += (k - mk) * (q[static_cast<std::size_t>(k)] - mq);
      sxx += (k - mk) * (k - mk);
    }
    const double slope = sxx > 0.0 ? sxy / sxx : 0.0;
    const bool ok = qmax <= tol && slope * len <= kTrendFloor;
    all_ok = all_ok && ok;
    any_violation = any_violation || qmax >= 10.0 * tol;
    per_rep.push_back({{"rep", d.reps.point(i)}, {"max_trailing_q", qmax}, {"trend_slope", slope}});
  }
  v.verdict = all_ok ? Verdict::Satisfied : any_violation ? Verdict::Violated : Verdict::Inconclusive;
  v.details = {{"reps", per_rep}, {"first_trailing_shell", k0}, {"trend_floor", kTrendFloor}};
  return v;
}

}  // namespace germlab
