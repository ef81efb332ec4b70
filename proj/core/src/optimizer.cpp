#include "pamac/optimizer.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace pamac {

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // golden ratio conjugate

struct LinePoint {
  double x = 0.0;
  double value = -DBL_MAX;
};

// Keeps the smaller coordinate on exact value ties.
void consider(LinePoint& best, double x, double value) {
  if (value > best.value || (value == best.value && x < best.x)) {
    best.x = x;
    best.value = value;
  }
}

// Objective of one element's 1-D subproblem: v -> sum_k |A_k + g(v) h_k(v)|^2
// with A_k the contribution of all other elements, held fixed. The guided and
// free-space phases are folded into one exponential whose argument is reduced
// to a single turn before sin/cos; that keeps the 100 m sweeps cheap. Users
// are stored as parallel arrays so grid_scan vectorizes, and the scan's trig
// is a quadrant-reduced polynomial (|error| < 1e-10). All of this only ranks
// candidate positions: every accepted move is re-checked against the start
// pattern with the canonical channel evaluation before a result is returned.
struct ElementObjective {
  std::vector<double> user_x;
  std::vector<double> rho2;     // y^2 + d^2
  std::vector<double> part_re;  // fixed contribution of the other elements
  std::vector<double> part_im;
  double feed_x = 0.0;
  double inv_lambda = 0.0;
  double inv_lambda_g = 0.0;
  double sqrt_eta = 0.0;
  double eta = 0.0;
  bool amplitude_only = false;  // single antenna: no cross terms, no trig

  double operator()(double v) const {
    if (amplitude_only) {
      double obj = 0.0;
      for (size_t i = 0; i < user_x.size(); ++i) {
        const double dx = v - user_x[i];
        obj += eta / (dx * dx + rho2[i]);
      }
      return obj;
    }
    const double turns_g = std::abs(v - feed_x) * inv_lambda_g;
    double obj = 0.0;
    for (size_t i = 0; i < user_x.size(); ++i) {
      const double dx = v - user_x[i];
      const double r = std::sqrt(dx * dx + rho2[i]);
      const double turns = r * inv_lambda + turns_g;
      const double theta = -2.0 * M_PI * (turns - std::floor(turns));
      const double amp = sqrt_eta / r;
      const double re = part_re[i] + amp * std::cos(theta);
      const double im = part_im[i] + amp * std::sin(theta);
      obj += re * re + im * im;
    }
    return obj;
  }

  // Best point of the uniform grid lo + j*step, j = 0..count. Blocked and
  // written to auto-vectorize; ascending scan order preserves the
  // smallest-coordinate tie rule of consider().
  LinePoint grid_scan(double lo, double step, long count) const {
    static constexpr int kBlock = 512;
    static constexpr double kHalfPi = 1.5707963267948966;
    static constexpr double kRsqrt2 = 0.7071067811865476;
    LinePoint best;
    alignas(64) double vx[kBlock], acc[kBlock], tg[kBlock];
    for (long start = 0; start <= count; start += kBlock) {
      const int len =
          static_cast<int>(std::min<long>(kBlock, count - start + 1));
      for (int j = 0; j < len; ++j) {
        vx[j] = lo + static_cast<double>(start + j) * step;
        acc[j] = 0.0;
      }
      if (amplitude_only) {
        for (size_t i = 0; i < user_x.size(); ++i) {
          const double ux = user_x[i];
          const double r2 = rho2[i];
#pragma omp simd
          for (int j = 0; j < len; ++j) {
            const double dx = vx[j] - ux;
            acc[j] += eta / (dx * dx + r2);
          }
        }
      } else {
#pragma omp simd
        for (int j = 0; j < len; ++j)
          tg[j] = std::abs(vx[j] - feed_x) * inv_lambda_g;
        for (size_t i = 0; i < user_x.size(); ++i) {
          const double ux = user_x[i];
          const double r2 = rho2[i];
          const double pre = part_re[i];
          const double pim = part_im[i];
#pragma omp simd
          for (int j = 0; j < len; ++j) {
            const double dx = vx[j] - ux;
            const double r = std::sqrt(dx * dx + r2);
            const double turns = r * inv_lambda + tg[j];
            const double frac = turns - std::floor(turns);
            // cos/sin of 2*pi*frac: quadrant reduction, then Taylor on
            // [-pi/4, pi/4); the sign flip below accounts for theta < 0
            const double t4 = 4.0 * frac;
            const double q = std::floor(t4);
            const double u = (t4 - q - 0.5) * kHalfPi;
            const double u2 = u * u;
            const double cu =
                1.0 +
                u2 * (-1.0 / 2 +
                      u2 * (1.0 / 24 +
                            u2 * (-1.0 / 720 +
                                  u2 * (1.0 / 40320 +
                                        u2 * (-1.0 / 3628800 +
                                              u2 * (1.0 / 479001600))))));
            const double su =
                u * (1.0 +
                     u2 * (-1.0 / 6 +
                           u2 * (1.0 / 120 +
                                 u2 * (-1.0 / 5040 +
                                       u2 * (1.0 / 362880 +
                                             u2 * (-1.0 / 39916800))))));
            const double cb = kRsqrt2 * (cu - su);
            const double sb = kRsqrt2 * (cu + su);
            const double c =
                (q == 0.0) ? cb : (q == 1.0) ? -sb : (q == 2.0) ? -cb : sb;
            const double s =
                (q == 0.0) ? sb : (q == 1.0) ? cb : (q == 2.0) ? -sb : -cb;
            const double amp = sqrt_eta / r;
            const double re = pre + amp * c;
            const double im = pim - amp * s;
            acc[j] += re * re + im * im;
          }
        }
      }
      for (int j = 0; j < len; ++j) consider(best, vx[j], acc[j]);
    }
    return best;
  }
};

template <typename F>
LinePoint golden_max(const F& f, double a, double b, double tol) {
  LinePoint best;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  consider(best, x1, f1);
  consider(best, x2, f2);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
      consider(best, x2, f2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
      consider(best, x1, f1);
    }
  }
  return best;
}

// Coarse grid (both endpoints included) followed by golden refinement around
// the best grid point.
LinePoint line_max(const ElementObjective& f, double lo, double hi, double step,
                   double tol) {
  LinePoint best;
  if (hi <= lo) {
    best.x = lo;
    best.value = f(lo);
    return best;
  }
  if (hi - lo < step) {
    consider(best, lo, f(lo));
    consider(best, hi, f(hi));
    const LinePoint g = golden_max(f, lo, hi, tol);
    consider(best, g.x, g.value);
    return best;
  }
  const long count = static_cast<long>(std::floor((hi - lo) / step));
  LinePoint grid = f.grid_scan(lo, step, count);
  grid.value = f(grid.x);  // rescore the winner on the scalar path
  consider(grid, hi, f(hi));
  best = grid;
  const double ga = std::max(lo, grid.x - step);
  const double gb = std::min(hi, grid.x + step);
  const LinePoint g = golden_max(f, ga, gb, tol);
  consider(best, g.x, g.value);
  return best;
}

double subset_gain_sum(const Scenario& s, const std::vector<int>& subset,
                       const PinchingPattern& p) {
  double sum = 0.0;
  for (int k : subset) sum += effective_channel(s, p, k).gain;
  return sum;
}

// Element-wise AO shared by the single-user refinement and the common-pattern
// search. When `anchors` is nonempty each element is additionally confined to
// [anchors[n] - window, anchors[n] + window]. Skips an element's re-search
// while no other element has moved since its last search (the subproblem
// would be unchanged), which removes the otherwise wasted confirmation pass.
PinchingPattern ao_optimize(const Scenario& s, const std::vector<int>& subset,
                            const PinchingPattern& init,
                            const SearchConfig& cfg, double grid_step,
                            const std::vector<double>& anchors) {
  const int n_elems = init.size();
  std::vector<double> cur = init.positions;

  ElementObjective obj;
  obj.user_x.resize(subset.size());
  obj.rho2.resize(subset.size());
  obj.part_re.assign(subset.size(), 0.0);
  obj.part_im.assign(subset.size(), 0.0);
  obj.feed_x = s.feed_point.x;
  obj.inv_lambda = 1.0 / s.wavelength;
  obj.inv_lambda_g = 1.0 / s.guided_wavelength;
  obj.eta = s.path_constant;
  obj.sqrt_eta = std::sqrt(s.path_constant);
  obj.amplitude_only = (n_elems == 1);
  for (size_t i = 0; i < subset.size(); ++i) {
    const Vec3& u = s.users[subset[i]];
    obj.user_x[i] = u.x;
    obj.rho2[i] = u.y * u.y + s.waveguide_height * s.waveguide_height;
  }

  PinchingPattern work;
  long total_moves = 0;
  std::vector<long> moves_by(n_elems, 0);
  std::vector<long> context_seen(n_elems, -1);
  double prev_obj = subset_gain_sum(s, subset, init);

  for (int pass = 0; pass < cfg.ao_max_iters; ++pass) {
    bool searched = false;
    bool moved = false;
    for (int n = 0; n < n_elems; ++n) {
      const long context = total_moves - moves_by[n];
      if (context == context_seen[n]) continue;  // neighbors unchanged
      const bool first_visit = context_seen[n] < 0;
      context_seen[n] = context;
      double lo = (n > 0) ? cur[n - 1] + s.min_spacing : s.span_lo;
      double hi = (n + 1 < n_elems) ? cur[n + 1] - s.min_spacing : s.span_hi;
      lo = std::max(lo, s.span_lo);
      hi = std::min(hi, s.span_hi);
      if (!anchors.empty()) {
        lo = std::max(lo, anchors[n] - cfg.refine_window);
        hi = std::min(hi, anchors[n] + cfg.refine_window);
      }
      if (!first_visit) {
        // The opening sweep fixes each element's basin; once neighbors move,
        // re-searches only need to realign phases, and a few dozen grid steps
        // cover several wavelengths of slack on either side.
        const double w = 64.0 * grid_step;
        lo = std::max(lo, cur[n] - w);
        hi = std::min(hi, cur[n] + w);
      }
      if (hi < lo) continue;
      searched = true;

      // fixed contribution of the other elements, canonical composition
      work.positions = cur;
      work.positions.erase(work.positions.begin() + n);
      const auto g = waveguide_response(s, work);
      for (size_t i = 0; i < subset.size(); ++i) {
        std::complex<double> part{0.0, 0.0};
        for (size_t m = 0; m < work.positions.size(); ++m) {
          const Vec3 pinch{work.positions[m], 0.0, s.waveguide_height};
          part += g[m] * channel_coefficient(s, subset[i], pinch);
        }
        obj.part_re[i] = part.real();
        obj.part_im[i] = part.imag();
      }

      const LinePoint found =
          line_max(obj, lo, hi, grid_step, cfg.golden_tolerance);
      if (found.value > obj(cur[n])) {
        cur[n] = found.x;
        ++total_moves;
        ++moves_by[n];
        moved = true;
      }
    }
    if (!searched || !moved) break;
    const double now = subset_gain_sum(s, subset, {cur});
    if (now - prev_obj < cfg.ao_rel_tolerance * std::max(prev_obj, DBL_MIN))
      break;
    prev_obj = now;
  }

  PinchingPattern result{std::move(cur)};
  if (subset_gain_sum(s, subset, result) > subset_gain_sum(s, subset, init))
    return result;
  return init;
}

void require_valid(const Scenario& s, const PinchingPattern& p,
                   const char* what) {
  const PatternCheck check = validate_pattern(s, p);
  if (!check.ok)
    throw std::invalid_argument(std::string(what) + ": " + check.detail);
}

}  // namespace

SearchConfig default_search_config(const Scenario& s) {
  SearchConfig cfg;
  cfg.coarse_step = s.wavelength / 20.0;
  cfg.golden_tolerance = s.wavelength / 1e4;
  cfg.ao_rel_tolerance = 1e-8;
  cfg.ao_max_iters = 200;
  cfg.refine_window = s.guided_wavelength / 2.0;
  return cfg;
}

PinchingPattern centered_pattern(const Scenario& s, double center_x) {
  const int n = s.antenna_count;
  const double width = static_cast<double>(n - 1) * s.min_spacing;
  if (width > (s.span_hi - s.span_lo) + kGeometrySlack)
    throw std::invalid_argument("span too short for the requested array");
  PinchingPattern p;
  p.positions.resize(n);
  const double half = 0.5 * static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i)
    p.positions[i] = center_x + (static_cast<double>(i) - half) * s.min_spacing;
  // translate minimally into the span
  if (p.positions.front() < s.span_lo) {
    const double shift = s.span_lo - p.positions.front();
    for (double& v : p.positions) v += shift;
  } else if (p.positions.back() > s.span_hi) {
    const double shift = p.positions.back() - s.span_hi;
    for (double& v : p.positions) v -= shift;
  }
  return p;
}

PinchingPattern initial_single_user_pattern(const Scenario& s,
                                            int user_index) {
  if (user_index < 0 || user_index >= s.user_count())
    throw std::out_of_range("user index out of range");
  return centered_pattern(s, s.users[user_index].x);
}

PinchingPattern refine_single_user_pattern(const Scenario& s,
                                           const PinchingPattern& start,
                                           int user_index,
                                           const SearchConfig& cfg) {
  if (user_index < 0 || user_index >= s.user_count())
    throw std::out_of_range("user index out of range");
  require_valid(s, start, "refine start pattern");
  if (s.antenna_count == 1) return start;  // single pinch is already at the peak
  return ao_optimize(s, {user_index}, start, cfg, cfg.coarse_step,
                     start.positions);
}

PinchingPattern common_pattern(const Scenario& s,
                               const std::vector<int>& user_subset,
                               const PinchingPattern& init,
                               const SearchConfig& cfg) {
  if (user_subset.empty())
    throw std::invalid_argument("common pattern needs a nonempty user subset");
  for (int k : user_subset)
    if (k < 0 || k >= s.user_count())
      throw std::invalid_argument("common pattern: user index out of range");
  require_valid(s, init, "common pattern init");
  return ao_optimize(s, user_subset, init, cfg, s.min_spacing / 10.0, {});
}

}  // namespace pamac
