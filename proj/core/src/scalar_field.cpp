#include "setconv/scalar_field.hpp"

#include <cmath>
#include <memory>
#include <utility>

#include "setconv/errors.hpp"

namespace setconv {
namespace {

void check_same_dim(const std::vector<ScalarField>& terms, const char* where) {
  if (terms.empty()) throw ValidationError(std::string(where) + ": needs at least one term");
  for (const ScalarField& t : terms)
    if (t.dim != terms.front().dim)
      throw ValidationError(std::string(where) + ": term dimensions differ");
}

}  // namespace

ScalarField make_constant(double c, int dim) {
  ScalarField f;
  f.dim = dim;
  f.eval = [c](std::span<const double>) { return ExtReal(c); };
  f.grad = [dim](std::span<const double>) { return std::vector<double>(static_cast<size_t>(dim), 0.0); };
  f.label = "const";
  return f;
}

ScalarField make_affine(std::vector<double> coeffs, double offset) {
  ScalarField f;
  f.dim = static_cast<int>(coeffs.size());
  f.eval = [coeffs, offset](std::span<const double> x) {
    double s = offset;
    for (size_t i = 0; i < coeffs.size(); ++i) s += coeffs[i] * x[i];
    return ExtReal(s);
  };
  f.grad = [coeffs](std::span<const double>) { return coeffs; };
  f.label = "affine";
  return f;
}

ScalarField make_quadratic_1d(double a, double b, double c) {
  ScalarField f;
  f.dim = 1;
  f.eval = [a, b, c](std::span<const double> x) { return ExtReal((a * x[0] + b) * x[0] + c); };
  f.grad = [a, b](std::span<const double> x) { return std::vector<double>{2.0 * a * x[0] + b}; };
  f.label = "quadratic";
  return f;
}

ScalarField make_abs(double scale) {
  ScalarField f;
  f.dim = 1;
  f.eval = [scale](std::span<const double> x) { return ExtReal(scale * std::fabs(x[0])); };
  f.label = "abs";
  return f;
}

ScalarField make_sum(std::vector<ScalarField> terms) {
  check_same_dim(terms, "make_sum");
  ScalarField f;
  f.dim = terms.front().dim;
  const bool smooth = [&] {
    for (const ScalarField& t : terms)
      if (!t.has_grad()) return false;
    return true;
  }();
  auto shared = std::make_shared<std::vector<ScalarField>>(std::move(terms));
  f.eval = [shared](std::span<const double> x) {
    ExtReal s = 0.0;
    for (const ScalarField& t : *shared) s = s + t.eval(x);
    return s;
  };
  if (smooth) {
    const int dim = f.dim;
    f.grad = [shared, dim](std::span<const double> x) {
      std::vector<double> g(static_cast<size_t>(dim), 0.0);
      for (const ScalarField& t : *shared) {
        const std::vector<double> gt = t.grad(x);
        for (size_t i = 0; i < g.size(); ++i) g[i] += gt[i];
      }
      return g;
    };
  }
  f.label = "sum";
  return f;
}

ScalarField make_min(std::vector<ScalarField> terms) {
  check_same_dim(terms, "make_min");
  ScalarField f;
  f.dim = terms.front().dim;
  auto shared = std::make_shared<std::vector<ScalarField>>(std::move(terms));
  f.eval = [shared](std::span<const double> x) {
    ExtReal m = ExtReal::infinity();
    for (const ScalarField& t : *shared) m = ext_min(m, t.eval(x));
    return m;
  };
  f.label = "min";
  return f;
}

ScalarField make_max(std::vector<ScalarField> terms) {
  check_same_dim(terms, "make_max");
  ScalarField f;
  f.dim = terms.front().dim;
  auto shared = std::make_shared<std::vector<ScalarField>>(std::move(terms));
  f.eval = [shared](std::span<const double> x) {
    ExtReal m = ExtReal::neg_infinity();
    for (const ScalarField& t : *shared) m = ext_max(m, t.eval(x));
    return m;
  };
  f.label = "max";
  return f;
}

ScalarField make_scale(ScalarField f, double s) {
  if (s < 0) throw ValidationError("make_scale: scale must be nonnegative");
  ScalarField out;
  out.dim = f.dim;
  auto base = std::make_shared<ScalarField>(std::move(f));
  out.eval = [base, s](std::span<const double> x) {
    const ExtReal v = base->eval(x);
    if (!v.is_finite()) return s == 0.0 ? ExtReal(0.0) : v;
    return ExtReal(s * v.value());
  };
  if (base->has_grad()) {
    out.grad = [base, s](std::span<const double> x) {
      std::vector<double> g = base->grad(x);
      for (double& v : g) v *= s;
      return g;
    };
  }
  out.label = "scale(" + base->label + ")";
  return out;
}

ScalarField make_negate(ScalarField f) {
  ScalarField out;
  out.dim = f.dim;
  auto base = std::make_shared<ScalarField>(std::move(f));
  out.eval = [base](std::span<const double> x) { return -base->eval(x); };
  if (base->has_grad()) {
    out.grad = [base](std::span<const double> x) {
      std::vector<double> g = base->grad(x);
      for (double& v : g) v = -v;
      return g;
    };
  }
  out.label = "neg(" + base->label + ")";
  return out;
}

ScalarField make_indicator_leq(ScalarField g, double level) {
  ScalarField out;
  out.dim = g.dim;
  auto base = std::make_shared<ScalarField>(std::move(g));
  out.eval = [base, level](std::span<const double> x) {
    const ExtReal v = base->eval(x);
    return v <= level ? ExtReal(0.0) : ExtReal::infinity();
  };
  out.label = "indicator";
  return out;
}

ScalarField make_indicator_point(std::vector<double> c) {
  ScalarField out;
  out.dim = static_cast<int>(c.size());
  out.eval = [c](std::span<const double> x) {
    for (size_t i = 0; i < c.size(); ++i)
      if (x[i] != c[i]) return ExtReal::infinity();
    return ExtReal(0.0);
  };
  out.label = "point-indicator";
  return out;
}

ScalarField make_restricted(ScalarField f, ScalarField g, double level) {
  if (f.dim != g.dim) throw ValidationError("make_restricted: dimensions differ");
  return make_sum({std::move(f), make_indicator_leq(std::move(g), level)});
}

ScalarField make_outer_composition(ScalarField f, std::function<double(double)> h,
                                   ExtReal h_at_inf, ExtReal h_at_neg_inf,
                                   const std::string& label) {
  ScalarField out;
  out.dim = f.dim;
  auto base = std::make_shared<ScalarField>(std::move(f));
  out.eval = [base, h, h_at_inf, h_at_neg_inf](std::span<const double> x) {
    const ExtReal v = base->eval(x);
    if (v.is_pos_inf()) return h_at_inf;
    if (v.is_neg_inf()) return h_at_neg_inf;
    return ExtReal(h(v.value()));
  };
  out.label = label;
  return out;
}

std::vector<double> finite_difference_gradient(const ScalarField& f, std::span<const double> x,
                                               double step) {
  std::vector<double> xp(x.begin(), x.end());
  std::vector<double> g(x.size(), 0.0);
  for (size_t i = 0; i < x.size(); ++i) {
    xp[i] = x[i] + step;
    const ExtReal hi = f.eval(xp);
    xp[i] = x[i] - step;
    const ExtReal lo = f.eval(xp);
    xp[i] = x[i];
    if (!hi.is_finite() || !lo.is_finite())
      throw NumericalError("finite_difference_gradient: non-finite neighborhood");
    g[i] = (hi.value() - lo.value()) / (2.0 * step);
  }
  return g;
}

}  // namespace setconv
