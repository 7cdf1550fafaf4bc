#ifndef EXPSPLIT_INTEGRATE_HPP
#define EXPSPLIT_INTEGRATE_HPP

#include <functional>
#include <memory>
#include <optional>

#include "expsplit/matfun.hpp"
#include "expsplit/problems.hpp"

namespace expsplit {

/// Splitting schemes. The *Corrected variants carry the phi-weighted
/// boundary corrections that restore the unreduced convergence order;
/// the *Standard variants exponentiate the homogeneous operator and
/// push all boundary data into the nonlinear flow, which is the
/// classical order-reduced scheme. The *Split2D variants additionally
/// split the 2D operator into its two directional parts.
enum class Method {
  LieCorrected,
  StrangCorrected,
  LieStandard,
  StrangStandard,
  LieSplit2D,
  StrangSplit2D,
};

enum class ExpBackend { Auto, Dense, Krylov };

/// Input of the second directional stage of the Lie double splitting:
/// Chained feeds the first stage's output through (the composition one
/// actually wants), Literal feeds the step's initial state to both
/// stages, reproducing the formula as typically displayed.
enum class SplitDisplay { Chained, Literal };

/// Auto backend switch point: precomputed dense tables up to here,
/// Krylov beyond.
inline constexpr int dense_backend_max_n = 1500;

struct IntegratorConfig {
  Method method = Method::LieCorrected;
  double k = 0.0;
  ExpBackend backend = ExpBackend::Auto;
  KrylovConfig krylov;
  bool exact_trace = false;  // boundary traces from the exact solution
  SplitDisplay split_display = SplitDisplay::Chained;
};

/// One classical Runge-Kutta step for y' = f(t, y).
/// Throws when a stage turns non-finite.
using OdeRhs = std::function<void(double t, const Vector& y, Vector& out)>;
Vector rk4_step(const OdeRhs& f, double t0, const Vector& y0, double tau);

/// Per-(problem, operator, step size) state: phi tables or the Krylov
/// operator, the reaction evaluator, and the step routine itself.
/// Holds references to the problem and operator; both must outlive the
/// context.
class StepContext {
public:
  StepContext(const ProblemSpec& spec, const DiscreteOperator& op,
              const IntegratorConfig& cfg);
  StepContext(const ProblemSpec& spec, const SplitOperator2D& op,
              const IntegratorConfig& cfg);
  ~StepContext();
  StepContext(StepContext&&) noexcept;
  StepContext& operator=(StepContext&&) noexcept;

  /// Advance one step from (t, u) to t + k.
  Vector step(double t, const Vector& u) const;

  const Grid& grid() const;
  const IntegratorConfig& config() const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace expsplit

#endif
