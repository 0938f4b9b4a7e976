#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "setconv/ext_real.hpp"

namespace setconv {

/// Extended-real-valued function on R^dim with an optional gradient oracle.
/// When grad is present it must match central finite differences to 1e-5
/// relative tolerance at finite points (enforced by tests, relied upon by
/// slope computations).
struct ScalarField {
  int dim = 1;
  std::function<ExtReal(std::span<const double>)> eval;
  std::function<std::vector<double>(std::span<const double>)> grad;  // optional
  std::string label;

  bool has_grad() const { return static_cast<bool>(grad); }
  ExtReal operator()(std::span<const double> x) const { return eval(x); }
  ExtReal operator()(double x) const { return eval(std::span<const double>(&x, 1)); }
};

/// f^nu family; generator must be deterministic in nu.
struct FunctionSequence {
  int dim = 1;
  std::function<ScalarField(int nu)> generator;
};

// Builders. Gradients are provided wherever the expression is smooth.
ScalarField make_constant(double c, int dim = 1);
ScalarField make_affine(std::vector<double> coeffs, double offset);   // c.x + b
ScalarField make_quadratic_1d(double a, double b, double c);          // a x^2 + b x + c
ScalarField make_abs(double scale = 1.0);                             // scale * |x|
ScalarField make_sum(std::vector<ScalarField> terms);
ScalarField make_min(std::vector<ScalarField> terms);
ScalarField make_max(std::vector<ScalarField> terms);
ScalarField make_scale(ScalarField f, double s);                      // s >= 0
ScalarField make_negate(ScalarField f);
/// Indicator of {g <= level}: 0 there, +inf elsewhere.
ScalarField make_indicator_leq(ScalarField g, double level = 0.0);
/// Indicator of the single point c (dim from c).
ScalarField make_indicator_point(std::vector<double> c);
/// f + indicator, i.e. f restricted to {g <= level}.
ScalarField make_restricted(ScalarField f, ScalarField g, double level = 0.0);
/// Outer composition h(f(x)) with h finite, continuous, nondecreasing;
/// h_at_inf / h_at_neg_inf supply the extended values.
ScalarField make_outer_composition(ScalarField f, std::function<double(double)> h,
                                   ExtReal h_at_inf, ExtReal h_at_neg_inf,
                                   const std::string& label);

/// Central finite-difference gradient (finite points only).
std::vector<double> finite_difference_gradient(const ScalarField& f, std::span<const double> x,
                                               double step = 1e-6);

/// Smooth map R^in_dim -> R^out_dim with optional Jacobian (rows = outputs).
struct VectorField {
  int in_dim = 1;
  int out_dim = 1;
  std::function<std::vector<double>(std::span<const double>)> eval;
  std::function<std::vector<std::vector<double>>(std::span<const double>)> jacobian;  // optional

  bool has_jacobian() const { return static_cast<bool>(jacobian); }
};

/// Nondecreasing modulus function rho -> kappa(rho).
using Modulus = std::function<double(double)>;

}  // namespace setconv
