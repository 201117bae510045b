#include "botsig/harness/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "botsig/errors.hpp"

namespace botsig {

std::string_view to_string(ReportVerdict v) {
  switch (v) {
    case ReportVerdict::Pass:
      return "PASS";
    case ReportVerdict::Fail:
      return "FAIL";
    case ReportVerdict::Informational:
      return "INFO";
  }
  return "?";
}

double wald_halfwidth(double p, std::uint64_t n, double z) {
  if (n == 0) return 0.0;
  return z * std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

void judge(ExperimentReport& r) {
  if (!r.analytic_bound || r.bound_kind == BoundKind::None) {
    r.verdict = ReportVerdict::Informational;
    return;
  }
  const bool ok = r.bound_kind == BoundKind::AtLeast
                      ? r.rate + r.ci_halfwidth >= *r.analytic_bound
                      : r.rate - r.ci_halfwidth <= *r.analytic_bound;
  r.verdict = ok ? ReportVerdict::Pass : ReportVerdict::Fail;
}

ExperimentReport proportion_report(std::string name, std::uint64_t successes,
                                   std::uint64_t trials, double z, std::optional<double> bound,
                                   BoundKind kind) {
  if (successes > trials) throw PreconditionViolated("more successes than trials");
  ExperimentReport r;
  r.name = std::move(name);
  r.trials = trials;
  r.successes = successes;
  r.rate = trials ? static_cast<double>(successes) / static_cast<double>(trials) : 0.0;
  r.ci_halfwidth = wald_halfwidth(r.rate, trials, z);
  r.analytic_bound = bound;
  r.bound_kind = kind;
  judge(r);
  return r;
}

ExperimentReport advantage_report(std::string name, std::uint64_t correct, std::uint64_t trials,
                                  double z) {
  if (correct > trials) throw PreconditionViolated("more correct guesses than trials");
  ExperimentReport r;
  r.name = std::move(name);
  r.trials = trials;
  r.successes = correct;
  const double p = trials ? static_cast<double>(correct) / static_cast<double>(trials) : 0.5;
  r.rate = std::fabs(2.0 * p - 1.0);
  r.ci_halfwidth = 2.0 * wald_halfwidth(p, trials, z);
  r.analytic_bound = 0.0;
  r.bound_kind = BoundKind::AtMost;
  r.details["guess_accuracy"] = p;
  judge(r);
  return r;
}

nlohmann::json to_json(const ExperimentReport& r) {
  nlohmann::json j{{"name", r.name},
                   {"trials", r.trials},
                   {"successes", r.successes},
                   {"rate", r.rate},
                   {"ci_halfwidth", r.ci_halfwidth},
                   {"verdict", to_string(r.verdict)}};
  j["analytic_bound"] = r.analytic_bound ? nlohmann::json(*r.analytic_bound) : nlohmann::json();
  switch (r.bound_kind) {
    case BoundKind::AtLeast:
      j["bound_kind"] = "at_least";
      break;
    case BoundKind::AtMost:
      j["bound_kind"] = "at_most";
      break;
    case BoundKind::None:
      j["bound_kind"] = "none";
      break;
  }
  if (!r.details.empty()) j["details"] = r.details;
  return j;
}

std::string to_json_line(const ExperimentReport& r) { return to_json(r).dump(); }

std::string format_table(std::span<const ExperimentReport> reports) {
  std::ostringstream os;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %10s %10s %10s %10s %10s %6s\n", "experiment", "trials",
                "successes", "rate", "ci", "bound", "verdict");
  os << line;
  for (const auto& r : reports) {
    char bound[32] = "-";
    if (r.analytic_bound) std::snprintf(bound, sizeof bound, "%.6g", *r.analytic_bound);
    std::snprintf(line, sizeof line, "%-32s %10llu %10llu %10.6f %10.6f %10s %6s\n",
                  r.name.c_str(), static_cast<unsigned long long>(r.trials),
                  static_cast<unsigned long long>(r.successes), r.rate, r.ci_halfwidth, bound,
                  std::string(to_string(r.verdict)).c_str());
    os << line;
  }
  return os.str();
}

std::uint64_t chernoff_sample_size(double deviation, double mean_bound, double confidence) {
  if (!(deviation > 0.0 && deviation <= 1.0) || !(mean_bound > 0.0 && mean_bound < 1.0) ||
      !(confidence > 0.0 && confidence < 1.0)) {
    throw PreconditionViolated("chernoff_sample_size arguments must lie in (0, 1)");
  }
  const double n = 2.0 * std::log(1.0 / (1.0 - confidence)) / (mean_bound * deviation * deviation);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(n - 1e-9)));
}

}  // namespace botsig
