#include "diqss/keyrate/eve_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "diqss/errors.hpp"

namespace diqss::keyrate {

namespace {

constexpr double kSlack = 1e-12;
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoSqrt2 = 2.0 * 1.41421356237309504880;
constexpr double kGolden = 0.61803398874989484820;
constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Point {
  double theta = 0.0;
  double g = 0.0;
  double h = 0.0;
  double delta = 0.0;
};

struct Problem {
  double half_s;     // S/2
  double lambda;
  double sense_mul;  // +1 maximize the objective, -1 minimize it

  double objective(const Point& p) const {
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    return s * s * p.g * p.g + c * c * p.h * p.h +
           2.0 * (2.0 * lambda - 1.0) * s * c * p.g * p.h * p.delta;
  }

  bool feasible(const Point& p) const {
    if (p.theta < -1e-12 || p.theta > kPi / 2.0 + 1e-12) return false;
    if (std::abs(p.g) > 1.0 + kSlack || std::abs(p.h) > 1.0 + kSlack ||
        std::abs(p.delta) > 1.0 + kSlack) {
      return false;
    }
    const double c = std::cos(p.theta);
    const double s = std::sin(p.theta);
    if (c * p.g + s * p.h < half_s - kSlack) return false;
    return (1.0 - p.g * p.g) * (1.0 - p.h * p.h) >=
           p.g * p.g * p.h * p.h * p.delta * p.delta - kSlack;
  }

  // Objective in the optimization direction; -inf when infeasible.
  double score(const Point& p) const {
    if (!feasible(p)) return kNegInf;
    return sense_mul * objective(p);
  }
};

// Golden-section maximization of fn over [lo, hi]; fn may return -inf.
template <typename Fn>
double golden_best(Fn&& fn, double lo, double hi, double* best_out) {
  double best_x = lo;
  double best_f = fn(lo);
  auto consider = [&](double x) {
    const double f = fn(x);
    if (f > best_f) {
      best_f = f;
      best_x = x;
    }
  };
  consider(hi);
  consider(0.5 * (lo + hi));
  double a = lo, b = hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = fn(x1);
  double f2 = fn(x2);
  for (int it = 0; it < 100 && b - a > 1e-13; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = fn(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = fn(x1);
    }
  }
  consider(x1);
  consider(x2);
  *best_out = best_f;
  return best_x;
}

struct Refiner {
  const Problem& prob;
  Point cur;
  double cur_score;

  explicit Refiner(const Problem& p, const Point& start) : prob(p), cur(start) {
    cur_score = prob.score(start);
  }

  bool try_move(const Point& cand, double cand_score) {
    if (cand_score > cur_score + 1e-16) {
      cur = cand;
      cur_score = cand_score;
      return true;
    }
    return false;
  }

  // One-dimensional golden-section move along a parameterized family.
  template <typename Map>
  bool line_search(double lo, double hi, Map&& map) {
    if (!(hi > lo)) return false;
    double best_f;
    const double best_t =
        golden_best([&](double t) { return prob.score(map(t)); }, lo, hi, &best_f);
    return try_move(map(best_t), best_f);
  }

  bool sweep(double window) {
    const double wt = window * kPi / 2.0;
    bool moved = false;

    // Plain coordinate moves.
    moved |= line_search(std::max(0.0, cur.theta - wt),
                         std::min(kPi / 2.0, cur.theta + wt), [&](double t) {
                           Point p = cur;
                           p.theta = t;
                           return p;
                         });
    moved |= line_search(std::max(-1.0, cur.g - window),
                         std::min(1.0, cur.g + window), [&](double t) {
                           Point p = cur;
                           p.g = t;
                           return p;
                         });
    moved |= line_search(std::max(-1.0, cur.h - window),
                         std::min(1.0, cur.h + window), [&](double t) {
                           Point p = cur;
                           p.h = t;
                           return p;
                         });
    const bool delta_matters = std::abs(2.0 * prob.lambda - 1.0) > 1e-15;
    if (delta_matters) {
      moved |= line_search(std::max(-1.0, cur.delta - window),
                           std::min(1.0, cur.delta + window), [&](double t) {
                             Point p = cur;
                             p.delta = t;
                             return p;
                           });
      // Snap Delta to its coupling extremes, where the cross term is largest.
      const double gh2 = cur.g * cur.g * cur.h * cur.h;
      if (gh2 > 1e-18) {
        const double lim2 = (1.0 - cur.g * cur.g) * (1.0 - cur.h * cur.h) / gh2;
        const double lim = std::sqrt(std::max(0.0, std::min(1.0, lim2)));
        for (double d : {-lim, 0.0, lim}) {
          Point p = cur;
          p.delta = d;
          moved |= try_move(p, prob.score(p));
        }
      }
    }

    // Constraint-tracking moves: vary one variable while substituting another
    // so that c g + s h stays pinned at S/2. Plain coordinate moves stall on
    // that active boundary; these slide along it.
    const double c = std::cos(cur.theta);
    const double s = std::sin(cur.theta);
    if (s > 1e-9) {  // vary g, substitute h
      double lo = cur.g - window, hi = cur.g + window;
      if (c > 1e-15) {  // keep substituted h inside [-1, 1]
        lo = std::max(lo, (prob.half_s - s) / c);
        hi = std::min(hi, (prob.half_s + s) / c);
      }
      lo = std::max(lo, -1.0);
      hi = std::min(hi, 1.0);
      moved |= line_search(lo, hi, [&](double t) {
        Point p = cur;
        p.g = t;
        p.h = (prob.half_s - c * t) / s;
        return p;
      });
    }
    if (c > 1e-9) {  // vary h, substitute g
      double lo = cur.h - window, hi = cur.h + window;
      if (s > 1e-15) {
        lo = std::max(lo, (prob.half_s - c) / s);
        hi = std::min(hi, (prob.half_s + c) / s);
      }
      lo = std::max(lo, -1.0);
      hi = std::min(hi, 1.0);
      moved |= line_search(lo, hi, [&](double t) {
        Point p = cur;
        p.h = t;
        p.g = (prob.half_s - s * t) / c;
        return p;
      });
    }
    {  // vary theta, substitute h, then g
      const double lo = std::max(1e-8, cur.theta - wt);
      const double hi = std::min(kPi / 2.0, cur.theta + wt);
      moved |= line_search(lo, hi, [&](double t) {
        Point p = cur;
        p.theta = t;
        p.h = (prob.half_s - std::cos(t) * p.g) / std::sin(t);
        return p;
      });
      const double hi2 = std::min(kPi / 2.0 - 1e-8, cur.theta + wt);
      moved |= line_search(std::max(0.0, cur.theta - wt), hi2, [&](double t) {
        Point p = cur;
        p.theta = t;
        p.g = (prob.half_s - std::sin(t) * p.h) / std::cos(t);
        return p;
      });
    }

    // Doubly-tracked moves walk the manifold where the correlator constraint
    // and the Delta coupling are both active: substitute the partner from the
    // correlator constraint and re-extremize Delta along the way.
    if (delta_matters) {
      const double dsign = cur.delta < 0.0 ? -1.0 : 1.0;
      auto coupled = [&](Point p) {
        const double gh2 = p.g * p.g * p.h * p.h;
        const double lim2 =
            gh2 > 1e-18 ? (1.0 - p.g * p.g) * (1.0 - p.h * p.h) / gh2 : 1.0;
        p.delta = dsign * std::sqrt(std::max(0.0, std::min(1.0, lim2)));
        return p;
      };
      if (s > 1e-9) {
        moved |= line_search(std::max(-1.0, cur.g - window),
                             std::min(1.0, cur.g + window), [&](double t) {
                               Point p = cur;
                               p.g = t;
                               p.h = (prob.half_s - c * t) / s;
                               return coupled(p);
                             });
      }
      if (c > 1e-9) {
        moved |= line_search(std::max(-1.0, cur.h - window),
                             std::min(1.0, cur.h + window), [&](double t) {
                               Point p = cur;
                               p.h = t;
                               p.g = (prob.half_s - s * t) / c;
                               return coupled(p);
                             });
      }
      moved |= line_search(std::max(1e-8, cur.theta - wt),
                           std::min(kPi / 2.0, cur.theta + wt), [&](double t) {
                             Point p = cur;
                             p.theta = t;
                             p.h = (prob.half_s - std::cos(t) * p.g) / std::sin(t);
                             return coupled(p);
                           });
      moved |= line_search(std::max(0.0, cur.theta - wt),
                           std::min(kPi / 2.0 - 1e-8, cur.theta + wt), [&](double t) {
                             Point p = cur;
                             p.theta = t;
                             p.g = (prob.half_s - std::sin(t) * p.h) / std::cos(t);
                             return coupled(p);
                           });
    }
    return moved;
  }

  void run(double initial_window) {
    double window = initial_window;
    for (int round = 0; round < 200 && window > 1e-12; ++round) {
      double before = cur_score;
      for (int pass = 0; pass < 8; ++pass) {
        if (!sweep(window)) break;
      }
      if (cur_score - before < 1e-14) window *= 0.5;
    }
  }
};

}  // namespace

const char* to_string(Sense s) { return s == Sense::max ? "max" : "min"; }

EveBound eve_correlation_bound(double S, double lambda, Sense sense, int resolution) {
  if (resolution < 8) {
    throw std::invalid_argument("solver resolution must be >= 8");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must be in [0,1]");
  }
  if (S > kTwoSqrt2 + 1e-9) {
    throw std::domain_error("S exceeds the quantum bound 2*sqrt(2)");
  }
  if (!(S >= 2.0)) {
    throw std::invalid_argument("S must be in [2, 2*sqrt(2)]");
  }

  Problem prob{std::min(S, kTwoSqrt2) / 2.0, lambda,
               sense == Sense::max ? +1.0 : -1.0};
  const bool delta_matters = std::abs(2.0 * lambda - 1.0) > 1e-15;

  // Dense grid. The axes include the exact values 0 (and theta = pi/4) that
  // an even resolution would otherwise skip; the feasible set degenerates to
  // isolated points there as S -> 2*sqrt(2).
  std::vector<double> thetas;
  thetas.reserve(resolution + 1);
  for (int i = 0; i < resolution; ++i) {
    thetas.push_back((kPi / 2.0) * i / (resolution - 1));
  }
  thetas.push_back(kPi / 4.0);
  std::vector<double> axis;
  axis.reserve(resolution + 1);
  for (int i = 0; i < resolution; ++i) {
    axis.push_back(-1.0 + 2.0 * i / (resolution - 1));
  }
  if (resolution % 2 == 0) axis.push_back(0.0);
  const std::vector<double> deltas = delta_matters ? axis : std::vector<double>{0.0};

  // Track the best grid point plus a handful of well-separated runners-up as
  // refinement starts.
  struct Candidate {
    double score = kNegInf;
    Point point;
  };
  std::vector<Candidate> starts;
  auto offer = [&](const Point& p, double sc) {
    if (!std::isfinite(sc)) return;
    for (auto& cand : starts) {
      const double dist = std::max({std::abs(cand.point.theta - p.theta),
                                    std::abs(cand.point.g - p.g),
                                    std::abs(cand.point.h - p.h),
                                    std::abs(cand.point.delta - p.delta)});
      if (dist < 0.1) {
        if (sc > cand.score) cand = Candidate{sc, p};
        return;
      }
    }
    if (starts.size() < 12) {
      starts.push_back(Candidate{sc, p});
      return;
    }
    auto worst = std::min_element(
        starts.begin(), starts.end(),
        [](const Candidate& a, const Candidate& b) { return a.score < b.score; });
    if (sc > worst->score) *worst = Candidate{sc, p};
  };

  for (double th : thetas) {
    const double c = std::cos(th);
    const double s = std::sin(th);
    for (double g : axis) {
      const double cg = c * g;
      for (double h : axis) {
        if (cg + s * h < prob.half_s - kSlack) continue;
        const double coupling = (1.0 - g * g) * (1.0 - h * h) + kSlack;
        const double gh2 = g * g * h * h;
        const double base = s * s * g * g + c * c * h * h;
        const double cross = 2.0 * (2.0 * lambda - 1.0) * s * c * g * h;
        for (double d : deltas) {
          if (gh2 * d * d > coupling) continue;
          offer(Point{th, g, h, d}, prob.sense_mul * (base + cross * d));
        }
      }
    }
  }

  // Analytic corner seeds: the g = h = 1 corner (objective exactly 1) and the
  // symmetric point g = h = S / (2 sqrt(2)) with Delta at its coupling
  // extreme, whose objective is S^2/4 - 1.
  offer(Point{kPi / 4.0, 1.0, 1.0, 0.0},
        prob.score(Point{kPi / 4.0, 1.0, 1.0, 0.0}));
  {
    const double gsym = prob.half_s / std::sqrt(2.0);
    const double lim = gsym > 0.0
                           ? std::min(1.0, (1.0 - gsym * gsym) / (gsym * gsym))
                           : 1.0;
    for (double d : {-lim, 0.0, lim}) {
      const Point p{kPi / 4.0, gsym, gsym, d};
      offer(p, prob.score(p));
    }
  }
  if (prob.half_s <= 1.0) {
    const Point p{0.0, prob.half_s, 0.0, 0.0};
    offer(p, prob.score(p));
  }

  if (starts.empty()) {
    throw SolverError("no feasible point for S = " + std::to_string(S));
  }

  const double initial_window = std::max(0.1, 4.0 / (resolution - 1));
  Candidate best;
  std::sort(starts.begin(), starts.end(),
            [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
  const size_t n_starts = starts.size();
  for (size_t i = 0; i < n_starts; ++i) {
    // Mirror seed: the objective is symmetric under (theta, g) <-> (pi/2 -
    // theta, h); with lambda != 1/2 the optimum may sit in the mirror basin.
    starts.push_back(Candidate{
        starts[i].score, Point{kPi / 2.0 - starts[i].point.theta, starts[i].point.h,
                               starts[i].point.g, starts[i].point.delta}});
  }
  for (const auto& start : starts) {
    Refiner refiner(prob, start.point);
    refiner.run(initial_window);
    if (refiner.cur_score > best.score) {
      best = Candidate{refiner.cur_score, refiner.cur};
    }
  }

  SolverPoint pt;
  pt.c = std::cos(best.point.theta);
  pt.s = std::sin(best.point.theta);
  pt.g = best.point.g;
  pt.h = best.point.h;
  pt.delta = best.point.delta;
  pt.objective = prob.objective(best.point);
  EveBound out;
  out.point = pt;
  out.e_tilde = std::sqrt(std::max(0.0, pt.objective));
  return out;
}

}  // namespace diqss::keyrate
