#include "ocs/pwl.hpp"

#include <algorithm>
#include <cmath>

namespace ocs {

PwlFn PwlFn::zero(double lo, double hi) {
  PwlFn f;
  if (hi < lo) fail("solver-error", "pwl: empty domain");
  f.xs.push_back(lo);
  if (hi > lo) {
    f.xs.push_back(hi);
    f.slopes.push_back(0.0);
  }
  return f;
}

PwlFn PwlFn::point(double x, double v) {
  PwlFn f;
  f.xs.push_back(x);
  f.v0 = v;
  return f;
}

double PwlFn::eval(double z) const {
  double v = v0;
  if (z <= xs.front()) return v;
  for (size_t i = 0; i < slopes.size(); ++i) {
    if (z >= xs[i + 1]) {
      v += slopes[i] * (xs[i + 1] - xs[i]);
    } else {
      v += slopes[i] * (z - xs[i]);
      return v;
    }
  }
  return v;
}

namespace {
// index of the piece containing z (knots strictly increasing)
size_t piece_index(const std::vector<double>& xs, double z) {
  auto it = std::upper_bound(xs.begin(), xs.end(), z);
  size_t i = static_cast<size_t>(it - xs.begin());
  if (i == 0) return 0;
  if (i >= xs.size()) return xs.size() - 2;
  return i - 1;
}
}  // namespace

void PwlFn::add_scaled_pricing(const PricingFunction& g, double scale, double nu) {
  double dlo = xs.front();
  double dhi = xs.back();
  if (slopes.empty()) {
    v0 += scale * g.value(dlo) - nu * dlo;
    return;
  }
  std::vector<double> knots(xs);
  for (const auto& seg : g.segments()) {
    if (seg.upto > dlo && seg.upto < dhi) knots.push_back(seg.upto);
  }
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> ns;
  ns.reserve(knots.size() - 1);
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    double mid = 0.5 * (knots[i] + knots[i + 1]);
    ns.push_back(slopes[piece_index(xs, mid)] + scale * g.slope_at(mid) - nu);
  }
  v0 += scale * g.value(dlo) - nu * dlo;
  xs = std::move(knots);
  slopes = std::move(ns);
  compact();
}

PwlFn PwlFn::conv_abs(double beta, double nlo, double nhi) const {
  if (beta < 0.0) fail("solver-error", "pwl: negative switching weight");
  // a = left end of the flat-enough region, b = right end
  double a = xs.back();
  for (size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] >= -beta) {
      a = xs[i];
      break;
    }
  }
  double b = xs.front();
  for (size_t i = slopes.size(); i-- > 0;) {
    if (slopes[i] <= beta) {
      b = xs[i + 1];
      break;
    }
  }
  if (slopes.empty()) {
    a = xs.front();
    b = a;
  }

  PwlFn out;
  if (nhi < nlo) fail("solver-error", "pwl: empty target domain");
  if (nlo <= a) {
    out.v0 = eval(a) + beta * (a - nlo);
  } else if (nlo >= b) {
    out.v0 = eval(b) + beta * (nlo - b);
  } else {
    out.v0 = eval(nlo);
  }

  std::vector<double> knots;
  knots.push_back(nlo);
  if (a > nlo && a < nhi) knots.push_back(a);
  for (size_t i = 1; i + 1 < xs.size(); ++i) {
    double p = xs[i];
    if (p > a && p < b && p > nlo && p < nhi) knots.push_back(p);
  }
  if (b > nlo && b < nhi && b > a) knots.push_back(b);
  if (nhi > nlo) knots.push_back(nhi);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  out.xs = knots;
  for (size_t i = 0; i + 1 < knots.size(); ++i) {
    double p = knots[i];
    double q = knots[i + 1];
    double s;
    if (q <= a) {
      s = -beta;
    } else if (p >= b) {
      s = beta;
    } else {
      s = slopes[piece_index(xs, 0.5 * (p + q))];
      s = std::max(-beta, std::min(beta, s));
    }
    out.slopes.push_back(s);
  }
  out.compact();
  return out;
}

double PwlFn::min_plus_linear(double slope_add) const {
  double v = v0 + slope_add * xs.front();
  double best = v;
  for (size_t i = 0; i < slopes.size(); ++i) {
    v += (slopes[i] + slope_add) * (xs[i + 1] - xs[i]);
    best = std::min(best, v);
  }
  return best;
}

std::pair<double, double> PwlFn::argmin_plus_linear(double slope_add) const {
  if (slopes.empty()) return {xs.front(), xs.front()};
  double lo = xs.back();
  for (size_t i = slopes.size(); i-- > 0;) {
    if (slopes[i] + slope_add < 0.0) {
      lo = xs[i + 1];
      break;
    }
    if (i == 0) lo = xs.front();
  }
  double hi = xs.front();
  for (size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] + slope_add > 0.0) {
      hi = xs[i];
      break;
    }
    if (i + 1 == slopes.size()) hi = xs.back();
  }
  if (hi < lo) hi = lo;  // strictly monotone cases collapse to one end
  return {lo, hi};
}

std::pair<double, double> PwlFn::conv_argmin(double beta, double z) const {
  double a = xs.back();
  size_t a_idx = slopes.size();
  for (size_t i = 0; i < slopes.size(); ++i) {
    if (slopes[i] >= -beta) {
      a = xs[i];
      a_idx = i;
      break;
    }
  }
  double b = xs.front();
  size_t b_idx = slopes.size();
  for (size_t i = slopes.size(); i-- > 0;) {
    if (slopes[i] <= beta) {
      b = xs[i + 1];
      b_idx = i;
      break;
    }
  }
  if (slopes.empty()) return {xs.front(), xs.front()};

  if (z <= a) {
    double lo = a;
    double hi = a;
    for (size_t i = a_idx; i < slopes.size() && slopes[i] == -beta; ++i) hi = xs[i + 1];
    return {lo, hi};
  }
  if (z >= b) {
    double lo = b;
    double hi = b;
    if (b_idx < slopes.size()) {
      for (size_t i = b_idx + 1; i-- > 0;) {
        if (slopes[i] == beta) {
          lo = xs[i];
          if (i == 0) break;
        } else {
          break;
        }
      }
    }
    return {lo, hi};
  }
  // interior: flat runs extend left over slope == +beta, right over slope == -beta
  double lo = z;
  double hi = z;
  size_t pr = piece_index(xs, z);
  size_t pl = (z == xs[pr] && pr > 0) ? pr - 1 : pr;
  for (size_t i = pl + 1; i-- > 0;) {
    if (slopes[i] == beta && xs[i] <= z) {
      lo = xs[i];
      if (i == 0) break;
    } else {
      break;
    }
  }
  for (size_t i = pr; i < slopes.size(); ++i) {
    if (slopes[i] == -beta && xs[i + 1] >= z) {
      hi = xs[i + 1];
    } else {
      break;
    }
  }
  lo = std::max(lo, xs.front());
  hi = std::min(hi, xs.back());
  return {lo, hi};
}

void PwlFn::compact() {
  if (slopes.empty()) return;
  std::vector<double> nx;
  std::vector<double> ns;
  nx.push_back(xs.front());
  for (size_t i = 0; i < slopes.size(); ++i) {
    if (!ns.empty() && ns.back() == slopes[i]) {
      nx.back() = xs[i + 1];
    } else {
      nx.push_back(xs[i + 1]);
      ns.push_back(slopes[i]);
    }
  }
  xs = std::move(nx);
  slopes = std::move(ns);
}

}  // namespace ocs
