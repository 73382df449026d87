#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ocs {

// Library error with a stable machine-readable kind ("data", "parameter",
// "degenerate-parameter", "domain", "range", "structural", "infeasible",
// "validation", "refusal", "solver-error", ...). The CLI maps kinds onto its
// structured stderr output.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

[[noreturn]] inline void fail(const std::string& kind, const std::string& msg) {
  throw Error(kind, msg);
}

enum class Direction { Minimize, Maximize };

std::string to_string(Direction d);
Direction direction_from_string(const std::string& s);

// One linear piece of a pricing function. `slope` applies on (start, upto]
// where start is the previous segment's `upto` (0 for the first piece).
struct Segment {
  double upto = 0.0;
  double slope = 0.0;
};

// Piecewise-linear pricing g on [0, 1] with g(0) = 0.
class PricingFunction {
 public:
  PricingFunction() = default;
  explicit PricingFunction(std::vector<Segment> segments);
  static PricingFunction linear(double slope);

  double value(double x) const;
  // right-slope at x (the last slope for x at or past the final breakpoint)
  double slope_at(double x) const;
  double min_slope() const;
  double max_slope() const;
  const std::vector<Segment>& segments() const { return segs_; }

 private:
  std::vector<Segment> segs_;
};

inline constexpr double kTotalTol = 1e-9;  // |sum(x) - 1| tolerance
inline constexpr double kRateTol = 1e-12;  // per-step rate bound slack

// One conversion problem over a unit demand. Minimize: total cost of buying
// the unit plus beta per unit of decision change. Maximize: selling profit
// minus the same switching charge.
struct Instance {
  Direction direction = Direction::Minimize;
  double beta = 0.0;  // switching coefficient, charged on every |x_t - x_{t-1}|
  double L = 0.0;     // lower bound on marginal prices
  double U = 0.0;     // upper bound on marginal prices
  std::vector<double> rates;             // per-step trading caps d_t
  std::vector<PricingFunction> pricing;  // g_t
  double demand_kwh = 0.0;               // physical metadata, 0 when not applicable

  int horizon() const { return static_cast<int>(pricing.size()); }
  // Structural checks; throws Error on violation. With strict_slope_range the
  // marginal prices must lie in [L, U]; otherwise zero-slope segments are also
  // accepted (solar-offset pricing).
  void validate(bool strict_slope_range = true) const;
};

struct Schedule {
  std::vector<double> x;

  double total() const;
};

struct SolutionReport {
  double trade_cost = 0.0;
  double switch_cost = 0.0;
  double objective = 0.0;
  bool feasible = false;
  // 0-based step where forced trading began for this trajectory, if anywhere
  std::optional<int> compulsory_start;
};

// Total cost/profit of a schedule. The switching term always charges the
// boundary moves |x_0 - 0| and |0 - x_{T-1}|.
SolutionReport evaluate(const Instance& inst, const Schedule& s);

// First step t >= from (0-based) at which the caps after t cannot cover the
// remaining demand 1 - w; nullopt when trading stays optional through the end.
std::optional<int> compulsory_start(const Instance& inst, double w, int from);

// Extends s (resizing to the horizon) by maximal trades from `from` until the
// demand constraint is met. Throws "infeasible" when capacity cannot cover it.
void compulsory_fill(const Instance& inst, Schedule& s, int from);

}  // namespace ocs
