#pragma once

#include "turnpike/dual_utility.hpp"
#include "turnpike/market.hpp"
#include "turnpike/quadrature.hpp"

namespace turnpike {

/// Terminal kernel
///   I(y,t) = e^{beta t}/(2 sqrt(pi)) * Int e^{-eta^2/4 - (alpha-1) a sqrt(t) eta}
///            |V'(y e^{a sqrt(t) eta})| d eta,
/// evaluated by Gauss-Hermite after eta = 2u. I(y,0) = |V'(y)|. For a power
/// dual this equals k e^{lambda(q) t} y^{q-1}. Strictly positive (nonzero dual),
/// strictly decreasing in y. Adaptive in the node count unless cfg.adaptive is
/// off; throws NumericError when doubling fails to converge.
double terminal_I(const DualUtility& dual, double y, double t, const DerivedParams& d,
                  const QuadratureConfig& cfg = {});

/// Companion kernel with integrand y e^{a sqrt(t) eta} V''(y e^{a sqrt(t) eta}):
/// J(y,0) = y V''(y); power closed form k (1-q) e^{lambda(q) t} y^{q-1}.
/// Relation: dI/dy = -J/y.
double terminal_J(const DualUtility& dual, double y, double t, const DerivedParams& d,
                  const QuadratureConfig& cfg = {});

/// Consumption kernel K(y,t) = Int_0^t I_2(y,tau) d tau via the substitution
/// tau = s^2 (Jacobian 2s) and per-panel Gauss-Legendre with adaptive panel
/// doubling. Power closed form k y^{q-1} (e^{lambda t} - 1)/lambda (-> k t
/// y^{q-1} as lambda -> 0). Zero for ZeroDual or t = 0.
double consumption_K(const DualUtility& dual2, double y, double t, const DerivedParams& d,
                     const QuadratureConfig& cfg = {});

/// Int_0^t J_2(y,tau) d tau; relation dK/dy = -JK/y.
double consumption_JK(const DualUtility& dual2, double y, double t, const DerivedParams& d,
                      const QuadratureConfig& cfg = {});

/// Improper horizon integral h(y) = Int_0^inf I_2(y,tau) d tau. Requires
/// lambda(q) < 0 for every declared tail exponent of dual2 (else NumericError:
/// divergent). Truncated at T* from the analytic tail bound C e^{lambda_max T},
/// sized by cfg.horizon_tail_tol. Power closed form: k y^{q-1}/|lambda(q)|.
double h_infinite(const DualUtility& dual2, double y, const DerivedParams& d,
                  const QuadratureConfig& cfg = {});

/// Int_0^inf J_2(y,tau) d tau = -y h'(y), truncated like h_infinite.
double jk_infinite(const DualUtility& dual2, double y, const DerivedParams& d,
                   const QuadratureConfig& cfg = {});

/// Dual value-function marginal via the Poisson formula:
///   v_y(y,t) = -I_1(y,t) - Int_0^t I_2(y,tau) d tau  (negative, increasing in y).
double dual_marginal(const DualUtility& dual1, const DualUtility& dual2, double y, double t,
                     const DerivedParams& d, const QuadratureConfig& cfg = {});

struct PdeCheck {
    double residual = 0.0;  ///< LHS - RHS of the marginal PDE at (y, t)
    double scale = 0.0;     ///< |V2'(y)| + delta |w|, the comparison scale
};

/// Central finite-difference residual of the linear PDE satisfied by
/// w = v_y in time-to-go form:
///   w_t - (1/2) theta^2 y^2 w_yy + (r - delta - theta^2) y w_y + r w = V2'(y),
///   w(y,0) = V1'(y).
/// Steps h_y = 1e-4 y, h_t = 1e-4 max(t,1); w is evaluated at pinned
/// resolution so the discretization error stays smooth. Expect |residual| <=
/// 1e-4 * scale at default config.
PdeCheck pde_residual(const DualUtility& dual1, const DualUtility& dual2, double y, double t,
                      const DerivedParams& d, const QuadratureConfig& cfg = {});

/// Quadrature self-test: Gauss-Hermite estimate of
///   (1/(2 sqrt(pi))) Int e^{-eta^2/4 - A eta} d eta,
/// which equals e^{A^2} exactly.
double gaussian_identity(double A, const QuadratureConfig& cfg = {});

/// (e^{lambda t} - 1)/lambda with the removable singularity handled by a series
/// for |lambda t| < 1e-6; equals t at lambda = 0.
double r_lambda(double lambda, double t);

/// Closed-form power kernels (oracles for the quadrature path, and the engine
/// behind the closed-form strategy paths).
double power_terminal_I(double q, double k, double y, double t, const DerivedParams& d);
double power_terminal_J(double q, double k, double y, double t, const DerivedParams& d);
double power_consumption_K(double q, double k, double y, double t, const DerivedParams& d);

}  // namespace turnpike
