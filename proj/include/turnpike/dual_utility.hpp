#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

namespace turnpike {

/// Convex dual V(y) = sup_{x>0} { U(x) - x y } of a utility U. The dual PDE
/// machinery only ever touches V' (< 0, strictly increasing) and V'' (> 0);
/// V itself is optional and used for Legendre-identity checks.
///
/// Tail declarations describe V'(y) ~ -k y^{q-1} at the two ends:
///   zero end:      V'(y)/(-k0 y^{q0-1}) -> 1 as y -> 0      (q0 < 1)
///   infinity end:  V'(y)/(-k_inf y^{q_inf-1}) -> 1 as y -> inf, q0 <= q_inf < 1
/// The infinity end drives consumption limits and improper-integral truncation;
/// it is optional. Exponents are never inferred, only declared.
class DualUtility {
  public:
    virtual ~DualUtility() = default;

    virtual double vp(double y) const = 0;   ///< V'(y)
    virtual double vpp(double y) const = 0;  ///< V''(y)
    virtual std::optional<double> value(double /*y*/) const { return std::nullopt; }

    virtual bool is_zero() const { return false; }

    virtual std::optional<double> q0() const { return std::nullopt; }
    virtual double k0() const { return 1.0; }
    virtual std::optional<double> q_inf() const { return std::nullopt; }
    virtual double k_inf() const { return 1.0; }

    /// Closed-form solution of -V'(y) = x when the subclass has one.
    virtual std::optional<double> closed_form_inverse(double x) const {
        (void)x;
        return std::nullopt;
    }

    virtual std::string describe() const = 0;
};

using DualPtr = std::shared_ptr<const DualUtility>;

/// V'(y) = -k y^{q-1}, i.e. V(y) = -(k/q) y^q (q != 0) or -k(ln y + 1) (q = 0,
/// the log-utility dual). Requires q < 1, k > 0.
class PowerDual final : public DualUtility {
  public:
    explicit PowerDual(double q, double k = 1.0);

    double vp(double y) const override;
    double vpp(double y) const override;
    std::optional<double> value(double y) const override;
    std::optional<double> q0() const override { return q_; }
    double k0() const override { return k_; }
    std::optional<double> q_inf() const override { return q_; }
    double k_inf() const override { return k_; }
    std::optional<double> closed_form_inverse(double x) const override;
    std::string describe() const override;

    double q() const { return q_; }
    double k() const { return k_; }

  private:
    double q_, k_;
};

/// Dual of the non-HARA utility parameterized by p in (0,1):
///   q = p/(p-1) < 0,  qbar = (q+1)/2,  V'(y) = -(y^{q-1} + y^{qbar-1}).
/// Tails: q at the zero end, qbar at the infinity end (both scale 1).
class NonHaraDual final : public DualUtility {
  public:
    explicit NonHaraDual(double p);

    double vp(double y) const override;
    double vpp(double y) const override;
    std::optional<double> value(double y) const override;
    std::optional<double> q0() const override { return q_; }
    std::optional<double> q_inf() const override { return qbar_; }
    std::optional<double> closed_form_inverse(double x) const override;
    std::string describe() const override;

    double p() const { return p_; }
    double q() const { return q_; }
    double qbar() const { return qbar_; }

  private:
    double p_, q_, qbar_;
};

/// V == 0: used for pure-terminal (no consumption utility) or pure-consumption
/// (no terminal utility) problems.
class ZeroDual final : public DualUtility {
  public:
    double vp(double) const override { return 0.0; }
    double vpp(double) const override { return 0.0; }
    std::optional<double> value(double) const override { return 0.0; }
    bool is_zero() const override { return true; }
    std::string describe() const override { return "zero"; }
};

/// User-supplied dual: callables for V'/V'' plus explicitly declared tails.
class CustomDual final : public DualUtility {
  public:
    CustomDual(std::function<double(double)> vp, std::function<double(double)> vpp,
               std::optional<double> q0, double k0 = 1.0,
               std::optional<double> q_inf = std::nullopt, double k_inf = 1.0,
               std::string name = "custom");

    double vp(double y) const override { return vp_(y); }
    double vpp(double y) const override { return vpp_(y); }
    std::optional<double> q0() const override { return q0_; }
    double k0() const override { return k0_; }
    std::optional<double> q_inf() const override { return qinf_; }
    double k_inf() const override { return kinf_; }
    std::string describe() const override { return name_; }

  private:
    std::function<double(double)> vp_, vpp_;
    std::optional<double> q0_;
    double k0_;
    std::optional<double> qinf_;
    double kinf_;
    std::string name_;
};

/// Solves -V'(y) = x for y > 0 (x > 0). Uses the subclass closed form when
/// available, otherwise brackets and bisects the strictly decreasing map.
double marginal_inverse(const DualUtility& dual, double x);

struct NonHaraPoint {
    double u = 0.0;  ///< U(x)
    double h = 0.0;  ///< H(x) = U'(x)
};

/// Closed-form non-HARA primal: with pbar = 2p - 1,
///   H(x) = 2^{1-pbar} (sqrt(1+4x) - 1)^{pbar-1},
///   U(x) = -(1/q) H^q - (1/qbar) H^{qbar} + x H.
/// Satisfies U(x) = V(H(x)) + x H(x) (Legendre identity).
NonHaraPoint nonhara_primal(double p, double x);

enum class AsymptoteEnd { Zero, Infinity };

/// V'(y) / (-k y^{q-1}) - 1 for the declared tail at the given end.
/// Throws std::invalid_argument if that tail is not declared.
double asymptote_residual(const DualUtility& dual, double y, AsymptoteEnd end);

/// Dual relative risk aversion -y V''(y) / V'(y). For PowerDual this is the
/// constant 1 - q; for NonHaraDual it moves from 1 - q (y -> 0) to 1 - qbar
/// (y -> infinity).
double rra_dual(const DualUtility& dual, double y);

}  // namespace turnpike
