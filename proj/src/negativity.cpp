#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

#include "phasecorr/phase_space.hpp"
#include "separable.hpp"

namespace phasecorr {

namespace {

using detail::kTwoOverPi;
using detail::LabelPair;
using detail::Rule;

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rotate every mode so that its largest label lies on the real axis. The
// absolute integral is unchanged and labels +-g then give a single wave.
DyadOperator canonical_orientation(const DyadOperator& rho) {
  DyadOperator out = rho;
  for (int m = 0; m < rho.modes(); ++m) {
    Complex largest = 0.0;
    for (const auto& t : rho.terms())
      for (Complex l : {t.ket[m], t.bra[m]})
        if (std::abs(l) > std::abs(largest)) largest = l;
    if (std::abs(largest) > 0.0) out = out.rotated(m, std::conj(largest) / std::abs(largest));
  }
  return out;
}

struct Box {
  double x_lo, x_hi, y_lo, y_hi;
};

Box label_box(const DyadOperator& rho, int mode, double margin) {
  Box b{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
        std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
  for (const auto& t : rho.terms())
    for (Complex l : {t.ket[mode], t.bra[mode]}) {
      b.x_lo = std::min(b.x_lo, l.real());
      b.x_hi = std::max(b.x_hi, l.real());
      b.y_lo = std::min(b.y_lo, l.imag());
      b.y_hi = std::max(b.y_hi, l.imag());
    }
  return {b.x_lo - margin, b.x_hi + margin, b.y_lo - margin, b.y_hi + margin};
}

// exp(-2y^2 + 2 growth y) times cos or sin of (2 freq y).
struct Harmonic {
  double growth;
  double freq;
  bool sine;

  double operator()(double y) const {
    const double g = std::exp(-2.0 * y * y + 2.0 * growth * y);
    return sine ? g * std::sin(2.0 * freq * y) : g * std::cos(2.0 * freq * y);
  }
  double slope(double y) const {
    const double g = std::exp(-2.0 * y * y + 2.0 * growth * y);
    const double dg = (-4.0 * y + 2.0 * growth) * g;
    const double c = std::cos(2.0 * freq * y), s = std::sin(2.0 * freq * y);
    return sine ? dg * s + 2.0 * freq * g * c : dg * c - 2.0 * freq * g * s;
  }
};

// Along z = x + iy the kernel of dyad p factors as fx_p(x) * Y_p(y) with
// Y_p = exp(-2y^2 - 2i w_p y), w_p = ket - conj(bra). Each Y_p is written as
// f_cos - i * sign * f_sin over a shared real basis of harmonics.
struct HarmonicBasis {
  struct Slot {
    int cos_index;
    int sin_index;  // -1 when Re w = 0
    double sin_sign;
  };
  std::vector<Harmonic> functions;
  std::vector<Slot> slots;

  explicit HarmonicBasis(std::span<const LabelPair> pairs) {
    std::vector<std::pair<int, int>> keys;  // (cos, sin) per distinct harmonic pair
    for (const auto& [ket, bra] : pairs) {
      const Complex w = ket - std::conj(bra);
      const double freq = std::abs(w.real()), growth = w.imag();
      auto it = std::find_if(keys.begin(), keys.end(), [&](const auto& k) {
        const Harmonic& h = functions[k.first];
        return std::abs(h.growth - growth) < 1e-12 && std::abs(h.freq - freq) < 1e-12;
      });
      if (it == keys.end()) {
        functions.push_back({growth, freq, false});
        const int c = static_cast<int>(functions.size() - 1);
        int s = -1;
        if (freq > 1e-14) {
          functions.push_back({growth, freq, true});
          s = c + 1;
        }
        keys.emplace_back(c, s);
        it = keys.end() - 1;
      }
      slots.push_back({it->first, it->second, w.real() < 0.0 ? -1.0 : 1.0});
    }
  }

  int size() const { return static_cast<int>(functions.size()); }

  // Nonzero when all harmonics share one envelope and at most one frequency;
  // then every function is g(y) times 1, cos(k y) or sin(k y).
  double single_wavenumber() const {
    double freq = 0.0;
    for (const auto& h : functions) {
      if (std::abs(h.growth - functions.front().growth) > 1e-12) return -1.0;
      if (h.freq > 1e-14) {
        if (freq > 0.0 && std::abs(h.freq - freq) > 1e-12 * (1.0 + freq)) return -1.0;
        freq = h.freq;
      }
    }
    return 2.0 * freq;
  }

  // Angular component of function b: 0 = constant, 1 = cos, 2 = sin.
  int angular_kind(int b) const {
    const Harmonic& h = functions[b];
    return h.freq <= 1e-14 ? 0 : (h.sine ? 2 : 1);
  }
};

// Tabulated values, slopes and running integrals of a basis on a uniform
// grid; integrates |sum_b c_b f_b| along y by bracketing sign changes.
class LineTable {
 public:
  LineTable(const HarmonicBasis& basis, double lo, double hi, int intervals)
      : lo_(lo), hi_(hi), step_((hi - lo) / intervals), intervals_(intervals), count_(basis.size()),
        wavenumber_(basis.single_wavenumber()) {
    for (int b = 0; b < count_; ++b) kinds_.push_back(basis.angular_kind(b));
    const int n = intervals + 1;
    value_.resize(static_cast<std::size_t>(count_) * n);
    slope_.resize(value_.size());
    cumulative_.resize(value_.size());
    const Rule unit = detail::gauss_legendre(8, 0.0, 1.0);
    for (int b = 0; b < count_; ++b) {
      const Harmonic& f = basis.functions[b];
      double acc = 0.0;
      for (int k = 0; k < n; ++k) {
        const double y = lo + k * step_;
        value_[b * n + k] = f(y);
        slope_[b * n + k] = f.slope(y);
        if (k > 0)
          for (std::size_t i = 0; i < unit.x.size(); ++i) acc += step_ * unit.w[i] * f(y - step_ + step_ * unit.x[i]);
        cumulative_[b * n + k] = acc;
      }
    }
  }

  // (integral of |h|, integral of h) for h = sum_b c_b f_b.
  std::pair<double, double> integrate(const double* c, std::vector<double>& h) const {
    if (wavenumber_ > 0.0) return integrate_wave(c);
    const int n = intervals_ + 1;
    h.assign(n, 0.0);
    for (int b = 0; b < count_; ++b) {
      const double cb = c[b];
      if (cb == 0.0) continue;
      const double* v = &value_[b * n];
      for (int k = 0; k < n; ++k) h[k] += cb * v[k];
    }
    double hmax = 0.0;
    for (double v : h) hmax = std::max(hmax, std::abs(v));
    if (hmax == 0.0) return {0.0, 0.0};
    const double noise = 1e-10 * hmax;

    const double total = combine(cumulative_, c, intervals_);
    double absolute = 0.0, previous = 0.0;
    int last = -1, last_sign = 0;
    for (int k = 0; k < n; ++k) {
      const int s = h[k] > 0.0 ? 1 : (h[k] < 0.0 ? -1 : 0);
      if (s == 0) continue;
      if (last_sign != 0 && s != last_sign) {
        double at_root;
        if (last != k - 1) {
          at_root = combine(cumulative_, c, last + 1);  // exact zero on a node
        } else if (std::abs(h[last]) < noise && std::abs(h[k]) < noise) {
          last = k;
          last_sign = s;
          continue;
        } else {
          at_root = running_integral_at_root(c, h, last);
        }
        absolute += std::abs(at_root - previous);
        previous = at_root;
      }
      last = k;
      last_sign = s;
    }
    absolute += std::abs(total - previous);
    return {absolute, total};
  }

 private:
  double combine(const std::vector<double>& table, const double* c, int k) const {
    const int n = intervals_ + 1;
    double s = 0.0;
    for (int b = 0; b < count_; ++b) s += c[b] * table[b * n + k];
    return s;
  }

  // Single-wave line: h = g(y) (A + B cos ky + C sin ky) with g > 0, so the
  // roots are explicit and no scan is needed.
  std::pair<double, double> integrate_wave(const double* c) const {
    double wave[3] = {0.0, 0.0, 0.0};
    for (int b = 0; b < count_; ++b) wave[kinds_[b]] += c[b];
    const double total = combine(cumulative_, c, intervals_);
    const double amplitude = std::hypot(wave[1], wave[2]);
    if (amplitude <= std::abs(wave[0])) return {std::abs(total), total};
    const double phase = std::atan2(wave[2], wave[1]);
    const double spread = std::acos(-wave[0] / amplitude);
    const int m_lo = static_cast<int>(std::floor((wavenumber_ * lo_ - phase - spread) / kTwoPi));
    const int m_hi = static_cast<int>(std::ceil((wavenumber_ * hi_ - phase + spread) / kTwoPi));
    double absolute = 0.0, previous = 0.0;
    for (int m = m_lo; m <= m_hi; ++m)
      for (double side : {-spread, spread}) {
        const double y = (phase + side + kTwoPi * m) / wavenumber_;
        if (!(y > lo_ && y < hi_)) continue;
        const double at_root = running_integral(c, y);
        absolute += std::abs(at_root - previous);
        previous = at_root;
      }
    absolute += std::abs(total - previous);
    return {absolute, total};
  }

  // Running integral at an arbitrary y via the quintic Hermite interpolant.
  double running_integral(const double* c, double y) const {
    const double u = (y - lo_) / step_;
    const int k = std::clamp(static_cast<int>(std::floor(u)), 0, intervals_ - 1);
    const int n = intervals_ + 1;
    double f0 = 0.0, f1 = 0.0;
    for (int b = 0; b < count_; ++b) {
      f0 += c[b] * value_[b * n + k];
      f1 += c[b] * value_[b * n + k + 1];
    }
    return quintic(c, k, f0, f1, u - k);
  }

  double quintic(const double* c, int k, double f0, double f1, double t) const {
    const double d0 = combine(slope_, c, k) * step_, d1 = combine(slope_, c, k + 1) * step_;
    const double F0 = combine(cumulative_, c, k), F1 = combine(cumulative_, c, k + 1);
    const double g0 = f0 * step_, g1 = f1 * step_, s0 = d0 * step_, s1 = d1 * step_;
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    return F0 * (1 - 10 * t3 + 15 * t4 - 6 * t5) + g0 * (t - 6 * t3 + 8 * t4 - 3 * t5) +
           s0 * (0.5 * t2 - 1.5 * t3 + 1.5 * t4 - 0.5 * t5) + s1 * (0.5 * t3 - t4 + 0.5 * t5) +
           g1 * (-4 * t3 + 7 * t4 - 3 * t5) + F1 * (10 * t3 - 15 * t4 + 6 * t5);
  }

  // Root of h inside [k, k+1] from the cubic Hermite interpolant of (h, h'),
  // then the running integral there from the quintic Hermite interpolant of
  // (F, h, h').
  double running_integral_at_root(const double* c, const std::vector<double>& h, int k) const {
    const double f0 = h[k], f1 = h[k + 1];
    const double d0 = combine(slope_, c, k) * step_, d1 = combine(slope_, c, k + 1) * step_;
    auto cubic = [&](double t, double& dp) {
      const double t2 = t * t, t3 = t2 * t;
      dp = (6 * t2 - 6 * t) * f0 + (3 * t2 - 4 * t + 1) * d0 + (6 * t - 6 * t2) * f1 + (3 * t2 - 2 * t) * d1;
      return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * d0 + (3 * t2 - 2 * t3) * f1 + (t3 - t2) * d1;
    };
    double a = 0.0, b = 1.0, t = f0 / (f0 - f1);
    for (int it = 0; it < 60; ++it) {
      double dp;
      const double p = cubic(t, dp);
      if ((p > 0.0) == (f0 > 0.0))
        a = t;
      else
        b = t;
      double next = dp != 0.0 ? t - p / dp : 0.5 * (a + b);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      const bool done = std::abs(next - t) < 1e-15;
      t = next;
      if (done) break;
    }
    return quintic(c, k, f0, f1, t);
  }

  double lo_, hi_;
  double step_;
  int intervals_;
  int count_;
  double wavenumber_;      // > 0 for a single-wave basis
  std::vector<int> kinds_;  // angular kind per function
  std::vector<double> value_, slope_, cumulative_;  // [function * nodes + k]
};

// Folds the complex dyad weight e into real line coefficients.
inline void accumulate_line(const HarmonicBasis::Slot& slot, Complex e, double* c) {
  c[slot.cos_index] += e.real();
  if (slot.sin_index >= 0) c[slot.sin_index] += slot.sin_sign * e.imag();
}

// With both modes single-wave, W(y1, y2) = g1 g2 (A + B cos t2 + C sin t2)
// where (A, B, C) = T (1, cos t1, sin t1). Along y1 the line integral over y2
// is smooth except where a pair of y2-roots is born (B^2 + C^2 = A^2) or the
// whole line nearly vanishes (minimum of A^2 + B^2 + C^2). Returns those
// angles t1 in [0, 2 pi).
std::vector<double> angular_breaks(const Eigen::Matrix3d& T) {
  auto parts = [&](double t, Eigen::Vector3d& v, Eigen::Vector3d& dv) {
    const double c = std::cos(t), s = std::sin(t);
    v = T * Eigen::Vector3d(1.0, c, s);
    dv = T * Eigen::Vector3d(0.0, -s, c);
  };
  auto birth = [&](double t) {
    Eigen::Vector3d v, dv;
    parts(t, v, dv);
    return v(1) * v(1) + v(2) * v(2) - v(0) * v(0);
  };
  auto flat = [&](double t) {
    Eigen::Vector3d v, dv;
    parts(t, v, dv);
    return v.dot(dv);
  };
  auto bisect = [](auto&& f, double a, double b, double fa) {
    for (int it = 0; it < 50; ++it) {
      const double m = 0.5 * (a + b), fm = f(m);
      if ((fm > 0.0) == (fa > 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    return 0.5 * (a + b);
  };
  constexpr int samples = 64;
  std::vector<double> breaks;
  double b_prev = birth(0.0), f_prev = flat(0.0);
  for (int i = 1; i <= samples; ++i) {
    const double t0 = kTwoPi * (i - 1) / samples, t1 = kTwoPi * i / samples;
    const double b_next = birth(t1), f_next = flat(t1);
    if ((b_prev > 0.0) != (b_next > 0.0)) breaks.push_back(bisect(birth, t0, t1, b_prev));
    if (f_prev < 0.0 && f_next >= 0.0) breaks.push_back(bisect(flat, t0, t1, f_prev));
    b_prev = b_next;
    f_prev = f_next;
  }
  return breaks;
}

// Gauss-Legendre panels between consecutive cuts (sorted here), each
// subdivided to at most max_width.
void composite_rule(std::vector<double>& cuts, double max_width, const Rule& unit, Rule& out) {
  std::sort(cuts.begin(), cuts.end());
  const int order = static_cast<int>(unit.x.size());
  out.x.clear();
  out.w.clear();
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double span = cuts[i + 1] - cuts[i];
    if (span <= 1e-14) continue;
    const int pieces = static_cast<int>(std::ceil(span / max_width));
    const double width = span / pieces;
    for (int j = 0; j < pieces; ++j)
      for (int k = 0; k < order; ++k) {
        out.x.push_back(cuts[i] + width * (j + unit.x[k]));
        out.w.push_back(width * unit.w[k]);
      }
  }
}

// y1 nodes and weights on [lo, hi], split into panels at the given angles and
// no wider than max_width.
void panel_rule(const std::vector<double>& angles, double wavenumber, double lo, double hi, double max_width,
                const Rule& unit, std::vector<double>& cuts, Rule& out) {
  cuts.clear();
  cuts.push_back(lo);
  const int m_lo = static_cast<int>(std::floor(wavenumber * lo / kTwoPi)) - 1;
  const int m_hi = static_cast<int>(std::ceil(wavenumber * hi / kTwoPi)) + 1;
  for (int m = m_lo; m <= m_hi; ++m)
    for (double a : angles) {
      const double y = (a + kTwoPi * m) / wavenumber;
      if (y > lo && y < hi) cuts.push_back(y);
    }
  cuts.push_back(hi);
  composite_rule(cuts, max_width, unit, out);
}

// Angles reachable by k y for y in [lo, hi]; the full circle once the box
// spans a period.
struct AngleRange {
  double lo;
  double hi;
};

AngleRange angle_range(double wavenumber, double lo, double hi) {
  if (wavenumber <= 0.0) return {0.0, 0.0};
  if (wavenumber * (hi - lo) >= kTwoPi) return {0.0, kTwoPi};
  return {wavenumber * lo, wavenumber * hi};
}

// min of w0 + w1 cos t + w2 sin t over t in the range.
double wave_minimum(const Eigen::Vector3d& w, const AngleRange& r) {
  auto f = [&](double t) { return w(0) + w(1) * std::cos(t) + w(2) * std::sin(t); };
  const double amplitude = std::hypot(w(1), w(2));
  if (r.hi - r.lo >= kTwoPi) return w(0) - amplitude;
  double best = std::min(f(r.lo), f(r.hi));
  if (amplitude > 0.0) {
    const double trough = std::atan2(-w(2), -w(1));
    const double t = trough + kTwoPi * std::ceil((r.lo - trough) / kTwoPi);
    if (t <= r.hi) best = std::min(best, w(0) - amplitude);
  }
  return best;
}

constexpr int kProbeSamples = 64;

template <typename F>
double golden_minimum(F&& f, double a, double b) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - ratio * (b - a), d = a + ratio * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 32; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = f(d);
    }
  }
  return std::min(fc, fd);
}

// Minimum of f over samples x_0..x_n of [lo, hi] (values supplied by
// `sample`), polished by golden section around the best one.
template <typename Sample, typename F>
double polished_minimum(Sample&& sample, F&& f, double lo, double hi, int samples) {
  int best = 0;
  double best_value = std::numeric_limits<double>::max();
  for (int i = 0; i <= samples; ++i) {
    const double v = sample(i);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  if (hi <= lo) return best_value;
  const double a = lo + (hi - lo) * std::max(best - 1, 0) / samples;
  const double b = lo + (hi - lo) * std::min(best + 1, samples) / samples;
  return std::min(best_value, golden_minimum(f, a, b));
}

// Scale-free minimum of v(t2)^T T u(t1) over both angle ranges; negative
// exactly when W has a negative region on the (y1, y2) plane.
class AngularProbe {
 public:
  AngularProbe(const AngleRange& first, const AngleRange& second) : first_(first), second_(second) {
    const int count = first.hi > first.lo ? kProbeSamples : 0;
    for (int i = 0; i <= count; ++i) samples_.push_back(unit_wave(first.lo + (first.hi - first.lo) * i / std::max(count, 1)));
  }

  double operator()(const Eigen::Matrix3d& T) const {
    const double scale = T.cwiseAbs().maxCoeff();
    if (scale == 0.0) return 1.0;
    const Eigen::Matrix3d unit = T / scale;
    return polished_minimum([&](int i) { return wave_minimum(unit * samples_[i], second_); },
                            [&](double t) { return wave_minimum(unit * unit_wave(t), second_); }, first_.lo,
                            first_.hi, static_cast<int>(samples_.size()) - 1);
  }

 private:
  static Eigen::Vector3d unit_wave(double t) { return {1.0, std::cos(t), std::sin(t)}; }

  AngleRange first_, second_;
  std::vector<Eigen::Vector3d> samples_;
};

// Sign changes of f on [lo, hi], located by bisection after uniform sampling.
template <typename F>
void sign_changes(F&& f, double lo, double hi, std::vector<double>& cuts) {
  const int samples = kProbeSamples;
  double a = lo, fa = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double b = lo + (hi - lo) * i / samples, fb = f(b);
    if ((fa < 0.0) != (fb < 0.0)) {
      double u = a, v = b;
      const bool low_negative = fa < 0.0;
      for (int it = 0; it < 40 && v - u > 1e-10 * (hi - lo); ++it) {
        const double m = 0.5 * (u + v);
        if ((f(m) < 0.0) == low_negative)
          u = m;
        else
          v = m;
      }
      cuts.push_back(0.5 * (u + v));
    }
    a = b;
    fa = fb;
  }
}

}  // namespace

VolumeEstimate wigner_integrals(const DyadOperator& input, int nodes, double margin, int threads) {
  if (nodes < 8) throw InvalidArgument("quadrature needs at least 8 nodes per axis");
  if (!(margin > 0.0)) throw InvalidArgument("quadrature margin must be positive");
  if (input.size() == 0) return {};
  const DyadOperator rho = canonical_orientation(input);
  const detail::SeparableForm form = detail::separate(rho);
  const int last = rho.modes() - 1;

  const Box line_box = label_box(rho, last, margin);
  const HarmonicBasis line_basis(form.inner);
  const LineTable table(line_basis, line_box.y_lo, line_box.y_hi, nodes);
  const int nq = static_cast<int>(form.inner.size());
  const int nb2 = line_basis.size();

  auto x_factor = [](const LabelPair& pair, double x) {
    const auto [ket, bra] = pair;
    return kTwoOverPi * std::exp(log_overlap(ket, bra) - 2.0 * (x - ket) * (x - std::conj(bra)));
  };
  auto x_factors = [&](const std::vector<LabelPair>& pairs, double x, Complex* out) {
    for (std::size_t p = 0; p < pairs.size(); ++p) out[p] = x_factor(pairs[p], x);
  };

  const double k1 = rho.modes() == 2 ? HarmonicBasis(form.outer).single_wavenumber() : 0.0;
  const double k2 = line_basis.single_wavenumber();
  const bool split_panels = k2 >= 0.0 && (rho.modes() == 1 || k1 > 0.0);
  const int order = std::max(4, nodes / 12);
  const Rule unit = detail::gauss_legendre(order, 0.0, 1.0);
  const AngleRange range2 = angle_range(k2, line_box.y_lo, line_box.y_hi);

  // T(kind2, kind1) of W = g1 g2 v(t2)^T T u(t1) at one (x1, x2).
  auto angular_form = [&](const Complex* f1, const Complex* f2, const HarmonicBasis* outer, Eigen::Matrix3d& T) {
    T.setZero();
    const int np = outer ? static_cast<int>(form.outer.size()) : 1;
    for (int p = 0; p < np; ++p)
      for (int q = 0; q < nq; ++q) {
        const Complex e = form.coeff(p, q) * (outer ? f1[p] : Complex(1.0)) * f2[q];
        if (e == 0.0) continue;
        const auto& sq = line_basis.slots[q];
        const int qc = line_basis.angular_kind(sq.cos_index);
        const int qs = sq.sin_index >= 0 ? line_basis.angular_kind(sq.sin_index) : -1;
        if (!outer) {
          T(qc, 0) += e.real();
          if (qs >= 0) T(qs, 0) += e.imag() * sq.sin_sign;
          continue;
        }
        const auto& sp = outer->slots[p];
        const int pc = outer->angular_kind(sp.cos_index);
        const int ps = sp.sin_index >= 0 ? outer->angular_kind(sp.sin_index) : -1;
        T(qc, pc) += e.real();
        if (ps >= 0 && qs >= 0) T(qs, ps) -= e.real() * sp.sin_sign * sq.sin_sign;
        if (qs >= 0) T(qs, pc) += e.imag() * sq.sin_sign;
        if (ps >= 0) T(qc, ps) += e.imag() * sp.sin_sign;
      }
  };

  // x nodes on [lo, hi]: plain Gauss-Legendre, or panels cut where the
  // negative set of W first appears (the x integrand has a kink there).
  auto x_rule = [&](double lo, double hi, auto&& sign_probe, std::vector<double>& cuts, Rule& out) {
    if (!split_panels) {
      out = detail::gauss_legendre(nodes, lo, hi);
      return;
    }
    cuts.clear();
    cuts.push_back(lo);
    sign_changes(sign_probe, lo, hi, cuts);
    cuts.push_back(hi);
    composite_rule(cuts, (hi - lo) * order / nodes, unit, out);
  };

  if (rho.modes() == 1) {
    std::vector<Complex> f2(nq);
    const AngularProbe angular({0.0, 0.0}, range2);
    auto probe = [&](double x) {
      x_factors(form.inner, x, f2.data());
      Eigen::Matrix3d T;
      angular_form(nullptr, f2.data(), nullptr, T);
      return angular(T);
    };
    std::vector<double> cuts;
    Rule line_x;
    x_rule(line_box.x_lo, line_box.x_hi, probe, cuts, line_x);
    std::vector<double> coeffs(nb2), scratch;
    VolumeEstimate out;
    for (std::size_t m = 0; m < line_x.x.size(); ++m) {
      x_factors(form.inner, line_x.x[m], f2.data());
      std::fill(coeffs.begin(), coeffs.end(), 0.0);
      for (int q = 0; q < nq; ++q) accumulate_line(line_basis.slots[q], form.coeff(0, q) * f2[q], coeffs.data());
      const auto [a, s] = table.integrate(coeffs.data(), scratch);
      out.absolute += line_x.w[m] * a;
      out.signed_ += line_x.w[m] * s;
    }
    return out;
  }

  const Box outer_box = label_box(rho, 0, margin);
  const HarmonicBasis outer_basis(form.outer);
  const int np = static_cast<int>(form.outer.size());
  const int nb1 = outer_basis.size();
  const AngleRange range1 = angle_range(k1, outer_box.y_lo, outer_box.y_hi);
  const double max_width = (outer_box.y_hi - outer_box.y_lo) * order / nodes;
  const Rule fixed_y1 = detail::gauss_legendre(nodes, outer_box.y_lo, outer_box.y_hi);

  // Sign probe along x2 at fixed x1 factors, and its minimum over x2.
  const AngularProbe angular(range1, range2);
  auto inner_probe = [&](const Complex* f1, Complex* f2, double x2) {
    x_factors(form.inner, x2, f2);
    Eigen::Matrix3d T;
    angular_form(f1, f2, &outer_basis, T);
    return angular(T);
  };
  std::vector<double> outer_cuts;
  Rule outer_x;
  {
    std::vector<Complex> f1(np), f2(nq);
    auto probe = [&](double x1) {
      x_factors(form.outer, x1, f1.data());
      const double lo = line_box.x_lo, hi = line_box.x_hi;
      auto along = [&](double x2) { return inner_probe(f1.data(), f2.data(), x2); };
      return polished_minimum([&](int i) { return along(lo + (hi - lo) * i / kProbeSamples); }, along, lo, hi,
                              kProbeSamples);
    };
    x_rule(outer_box.x_lo, outer_box.x_hi, probe, outer_cuts, outer_x);
  }
  const int outer_count = static_cast<int>(outer_x.x.size());

  // One chunk per outer x node, reduced in index order afterwards so the sum
  // is independent of the thread count.
  std::vector<VolumeEstimate> partial(outer_count);
  std::atomic<int> next{0};
  auto worker = [&] {
    std::vector<double> coeffs(nb2), scratch, cuts, f1y(nb1);
    std::vector<Complex> f1(np), f2(nq);
    Eigen::MatrixXcd fx2;
    Eigen::MatrixXd M(nb1, nb2);
    Rule y1_rule, line_x;
    for (int i = next++; i < outer_count; i = next++) {
      x_factors(form.outer, outer_x.x[i], f1.data());
      x_rule(line_box.x_lo, line_box.x_hi, [&](double x2) { return inner_probe(f1.data(), f2.data(), x2); }, cuts,
             line_x);
      VolumeEstimate acc;
      for (std::size_t m = 0; m < line_x.x.size(); ++m) {
        x_factors(form.inner, line_x.x[m], f2.data());
        // W(y1, y2) = sum M(b1, b2) f_b1(y1) f_b2(y2) at fixed (x1, x2).
        M.setZero();
        for (int p = 0; p < np; ++p) {
          const auto& sp = outer_basis.slots[p];
          for (int q = 0; q < nq; ++q) {
            const Complex e = form.coeff(p, q) * f1[p] * f2[q];
            if (e == 0.0) continue;
            const auto& sq = line_basis.slots[q];
            M(sp.cos_index, sq.cos_index) += e.real();
            if (sp.sin_index >= 0 && sq.sin_index >= 0)
              M(sp.sin_index, sq.sin_index) -= e.real() * sp.sin_sign * sq.sin_sign;
            if (sq.sin_index >= 0) M(sp.cos_index, sq.sin_index) += e.imag() * sq.sin_sign;
            if (sp.sin_index >= 0) M(sp.sin_index, sq.cos_index) += e.imag() * sp.sin_sign;
          }
        }
        const Rule* rule = &fixed_y1;
        if (split_panels) {
          Eigen::Matrix3d T = Eigen::Matrix3d::Zero();
          for (int b1 = 0; b1 < nb1; ++b1)
            for (int b2 = 0; b2 < nb2; ++b2)
              T(line_basis.angular_kind(b2), outer_basis.angular_kind(b1)) += M(b1, b2);
          panel_rule(angular_breaks(T), k1, outer_box.y_lo, outer_box.y_hi, max_width, unit, cuts, y1_rule);
          rule = &y1_rule;
        }
        double line_abs = 0.0, line_signed = 0.0;
        for (std::size_t j = 0; j < rule->x.size(); ++j) {
          const double y1 = rule->x[j];
          for (int b1 = 0; b1 < nb1; ++b1) f1y[b1] = outer_basis.functions[b1](y1);
          for (int b2 = 0; b2 < nb2; ++b2) {
            double s = 0.0;
            for (int b1 = 0; b1 < nb1; ++b1) s += f1y[b1] * M(b1, b2);
            coeffs[b2] = s;
          }
          const auto [a, s] = table.integrate(coeffs.data(), scratch);
          line_abs += rule->w[j] * a;
          line_signed += rule->w[j] * s;
        }
        acc.absolute += line_x.w[m] * line_abs;
        acc.signed_ += line_x.w[m] * line_signed;
      }
      partial[i] = {outer_x.w[i] * acc.absolute, outer_x.w[i] * acc.signed_};
    }
  };
  const int pool = std::clamp(threads, 1, outer_count);
  if (pool == 1) {
    worker();
  } else {
    std::vector<std::jthread> team;
    for (int t = 0; t < pool; ++t) team.emplace_back(worker);
  }
  VolumeEstimate out;
  for (const auto& p : partial) {
    out.absolute += p.absolute;
    out.signed_ += p.signed_;
  }
  return out;
}

NegativityResult negativity_volume(const DyadOperator& rho, const QuadratureSpec& spec) {
  NegativityResult r;
  const VolumeEstimate first = wigner_integrals(rho, spec.nodes, spec.margin, spec.threads);
  r.nodes = spec.nodes;
  r.volume = first.absolute - 1.0;
  r.integral = first.signed_;
  for (int n = 2 * spec.nodes; n <= spec.max_nodes; n *= 2) {
    const VolumeEstimate finer = wigner_integrals(rho, n, spec.margin, spec.threads);
    const double volume = finer.absolute - 1.0;
    r.change = std::abs(volume - r.volume);
    r.volume = volume;
    r.integral = finer.signed_;
    r.nodes = n;
    if (r.change <= spec.rel_tol * std::abs(volume) || r.change < 1e-8) {
      r.converged = true;
      break;
    }
  }
  return r;
}

}  // namespace phasecorr
