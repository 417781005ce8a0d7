#include "prolsm/contrast.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "prolsm/errors.hpp"
#include "prolsm/quadrature.hpp"

namespace prolsm {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4)
    return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

// (sin x - x cos x) / x^2, so that int_{-h}^{h} u e^{iwu} du = 2i h^2 G(wh).
double g_odd(double x) {
  if (std::abs(x) < 0.1) {
    const double x2 = x * x;
    return x * (1.0 / 3.0 - x2 * (1.0 / 30.0 - x2 * (1.0 / 840.0 - x2 * (1.0 / 45360.0 - x2 / 3991680.0))));
  }
  return (std::sin(x) - x * std::cos(x)) / (x * x);
}

cplx expi(double x) { return {std::cos(x), std::sin(x)}; }

// int_{lo}^{hi} exp(i w s) ds and int s exp(i w s) ds.
cplx moment0(double lo, double hi, double w) {
  const double m = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  return expi(w * m) * (2.0 * h * sinc(w * h));
}

cplx moment1(double lo, double hi, double w) {
  const double m = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  return expi(w * m) * cplx(m * 2.0 * h * sinc(w * h), 2.0 * h * h * g_odd(w * h));
}

cplx piece_transform(const Piece &p, double w) {
  cplx out = p.a0 * moment0(p.lo, p.hi, w);
  if (p.a1 != 0.0)
    out += p.a1 * moment1(p.lo, p.hi, w);
  if (p.a2 != 0.0)
    out += 0.5 * p.a2 * (moment0(p.lo, p.hi, w + p.k) + moment0(p.lo, p.hi, w - p.k));
  return out;
}

void check_radius(double r, const char *what) {
  if (!(r > 0.0 && r < 1.0))
    throw InputError(std::string(what) + ": support radius must lie in (0, 1), got " + std::to_string(r));
}

ContrastProfile builtin(ProfileKind kind, double r, std::vector<Piece> pieces) {
  ContrastProfile p;
  p.kind = kind;
  p.r = r;
  p.pieces = std::move(pieces);
  return p;
}

double reciprocal_integral_linear(const Piece &p, double a, double b) {
  const double va = p.a0 + p.a1 * a;
  if (p.a1 == 0.0)
    return (b - a) / va;
  return std::log1p(p.a1 * (b - a) / va) / p.a1;
}

bool positive_on(const Piece &p, double a, double b) {
  if (p.value(a) <= 0.0 || p.value(b) <= 0.0)
    return false;
  if (p.a2 == 0.0 || p.k == 0.0)
    return true; // linear: endpoint values bound it
  if (p.a1 == 0.0) {
    // extrema of cos(k s) sit at k s = j pi
    const double kk = std::abs(p.k);
    for (double j = std::ceil(kk * a / std::numbers::pi); j * std::numbers::pi <= kk * b; j += 1.0)
      if (p.value(j * std::numbers::pi / kk) <= 0.0)
        return false;
    return true;
  }
  for (int i = 1; i < 2000; ++i)
    if (p.value(a + (b - a) * i / 2000.0) <= 0.0)
      return false;
  return true;
}

double reciprocal_integral(const Piece &p, double a, double b) {
  if (p.a2 == 0.0 || p.k == 0.0) {
    Piece lin = p;
    lin.a0 += p.a2; // cos(0 s) = 1
    lin.a2 = 0.0;
    return reciprocal_integral_linear(lin, a, b);
  }
  static const QuadratureRule rule = lgl_rule(20);
  const int panels = std::max(8, 4 * static_cast<int>(std::ceil(std::abs(p.k) * (b - a) / std::numbers::pi)));
  double sum = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double lo = a + (b - a) * i / panels, hi = a + (b - a) * (i + 1) / panels;
    sum += integrate([&](double s) { return 1.0 / p.value(s); }, lo, hi, rule).real();
  }
  return sum;
}

} // namespace

double Piece::value(double s) const {
  double v = a0 + a1 * s;
  if (a2 != 0.0)
    v += a2 * std::cos(k * s);
  return v;
}

ContrastProfile ContrastProfile::constant(double r) {
  check_radius(r, "constant profile");
  return builtin(ProfileKind::Constant, r, {{-r, r, 2.0 * r, 0.0, 0.0, 0.0}});
}

ContrastProfile ContrastProfile::inc_dec(double r) {
  check_radius(r, "inc_dec profile");
  return builtin(ProfileKind::IncDec, r, {{-r, 0.0, 2.0 * r, 2.0, 0.0, 0.0}, {0.0, r, 2.0 * r, -2.0, 0.0, 0.0}});
}

ContrastProfile ContrastProfile::dec_inc(double r) {
  check_radius(r, "dec_inc profile");
  return builtin(ProfileKind::DecInc, r, {{-r, 0.0, 0.5 * r, -0.5, 0.0, 0.0}, {0.0, r, 0.5 * r, 0.5, 0.0, 0.0}});
}

ContrastProfile ContrastProfile::oscillatory(double r, int m) {
  check_radius(r, "oscillatory profile");
  if (m < 0)
    throw InputError("oscillatory profile: oscillation count must be non-negative");
  auto p = builtin(ProfileKind::Oscillatory, r, {{-r, r, 0.5 * r, 0.0, -0.25 * r, m * std::numbers::pi / r}});
  p.m = m;
  return p;
}

ContrastProfile ContrastProfile::two_component(double r, double gap) {
  check_radius(r, "two_component profile");
  if (!(gap >= 0.0 && gap < 2.0 * r))
    throw InputError("two_component profile: gap must lie in [0, 2r)");
  auto p = builtin(ProfileKind::TwoComponent, r,
                   {{-r, -0.5 * gap, 2.0 * r, 0.0, 0.0, 0.0}, {0.5 * gap, r, 2.0 * r, 0.0, 0.0, 0.0}});
  if (gap == 0.0)
    p.pieces = {{-r, r, 2.0 * r, 0.0, 0.0, 0.0}};
  p.gap = gap;
  return p;
}

ContrastProfile ContrastProfile::piecewise(std::vector<Piece> pieces) {
  std::sort(pieces.begin(), pieces.end(), [](const Piece &a, const Piece &b) { return a.lo < b.lo; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto &p = pieces[i];
    if (!(p.lo < p.hi))
      throw InputError("piecewise profile: piece " + std::to_string(i) + " has lo >= hi");
    if (!(p.lo > -1.0 && p.hi < 1.0))
      throw InputError("piecewise profile: support must lie inside (-1, 1)");
    if (i > 0 && pieces[i - 1].hi > p.lo)
      throw InputError("piecewise profile: pieces overlap near s=" + std::to_string(p.lo));
  }
  ContrastProfile out;
  out.kind = ProfileKind::Piecewise;
  out.pieces = std::move(pieces);
  if (!out.pieces.empty())
    out.r = std::max(-out.pieces.front().lo, out.pieces.back().hi);
  return out;
}

ContrastProfile ContrastProfile::background(double q_inf, double radius) {
  check_radius(radius, "background profile");
  return piecewise({{-radius, radius, q_inf, 0.0, 0.0, 0.0}});
}

ContrastProfile ContrastProfile::plus_background(double q_inf, double radius) const {
  check_radius(radius, "background shift");
  std::vector<double> cuts{-radius, radius};
  for (const auto &p : pieces) {
    cuts.push_back(p.lo);
    cuts.push_back(p.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Piece> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i], hi = cuts[i + 1], mid = 0.5 * (lo + hi);
    Piece p{lo, hi, 0.0, 0.0, 0.0, 0.0};
    bool covered = false;
    for (const auto &src : pieces)
      if (src.lo <= mid && mid < src.hi) {
        p.a0 = src.a0, p.a1 = src.a1, p.a2 = src.a2, p.k = src.k;
        covered = true;
      }
    if (-radius <= mid && mid < radius) {
      p.a0 += q_inf;
      covered = true;
    }
    if (covered)
      out.push_back(p);
  }
  return piecewise(std::move(out));
}

double ContrastProfile::support_lo() const { return pieces.empty() ? 0.0 : pieces.front().lo; }
double ContrastProfile::support_hi() const { return pieces.empty() ? 0.0 : pieces.back().hi; }

std::string to_string(ProfileKind kind) {
  switch (kind) {
  case ProfileKind::Constant: return "constant";
  case ProfileKind::IncDec: return "inc_dec";
  case ProfileKind::DecInc: return "dec_inc";
  case ProfileKind::Oscillatory: return "oscillatory";
  case ProfileKind::TwoComponent: return "two_component";
  case ProfileKind::Piecewise: return "piecewise";
  }
  return "piecewise";
}

ProfileKind profile_kind_from_string(const std::string &name) {
  for (auto k : {ProfileKind::Constant, ProfileKind::IncDec, ProfileKind::DecInc, ProfileKind::Oscillatory,
                 ProfileKind::TwoComponent, ProfileKind::Piecewise})
    if (to_string(k) == name)
      return k;
  throw InputError("unknown profile kind '" + name + "'");
}

double contrast_eval(const ContrastProfile &q, double s) {
  const double r = q.r, a = std::abs(s);
  switch (q.kind) {
  case ProfileKind::Constant: return a < r ? 2.0 * r : 0.0;
  case ProfileKind::IncDec: return a < r ? 2.0 * r - 2.0 * a : 0.0;
  case ProfileKind::DecInc: return a < r ? 0.5 * r + 0.5 * a : 0.0;
  case ProfileKind::Oscillatory:
    return a < r ? 0.5 * r - 0.25 * r * std::cos(q.m * std::numbers::pi * s / r) : 0.0;
  default:
    for (const auto &p : q.pieces)
      if (p.lo <= s && s < p.hi)
        return p.value(s);
    return 0.0;
  }
}

cplx fourier_transform(const ContrastProfile &q, double w) {
  const double r = q.r;
  switch (q.kind) {
  case ProfileKind::Constant: return 4.0 * r * r * sinc(w * r);
  case ProfileKind::IncDec: {
    const double s = sinc(0.5 * w * r);
    return 2.0 * r * r * s * s;
  }
  case ProfileKind::DecInc: {
    const double s = sinc(0.5 * w * r);
    return 2.0 * r * r * sinc(w * r) - 0.5 * r * r * s * s;
  }
  case ProfileKind::Oscillatory: {
    const double k = q.m * std::numbers::pi / r;
    return r * r * sinc(w * r) - 0.25 * r * r * (sinc((w - k) * r) + sinc((w + k) * r));
  }
  default: {
    cplx sum = 0.0;
    for (const auto &p : q.pieces)
      sum += piece_transform(p, w);
    return sum;
  }
  }
}

std::optional<double> harmonic_average(const ContrastProfile &q, double lo, double hi) {
  if (!(lo < hi))
    throw InputError("harmonic_average: need lo < hi");
  double covered = lo, sum = 0.0;
  for (const auto &p : q.pieces) {
    const double a = std::max(lo, p.lo), b = std::min(hi, p.hi);
    if (a >= b)
      continue;
    if (a > covered)
      return std::nullopt; // hole: q = 0 there
    if (!positive_on(p, a, b))
      return std::nullopt;
    sum += reciprocal_integral(p, a, b);
    covered = b;
  }
  if (covered < hi || !(sum > 0.0))
    return std::nullopt;
  return (hi - lo) / sum;
}

} // namespace prolsm
