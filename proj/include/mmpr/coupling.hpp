#pragma once

#include <cstddef>
#include <vector>

#include "mmpr/linalg.hpp"

namespace mmpr {

/// Index split of a state vector into slow (macro-visible) and fast
/// components. The two lists are disjoint and together cover the full
/// state dimension; order within each list is preserved by all
/// operators.
class SlowFastPartition {
  public:
    SlowFastPartition(std::vector<std::size_t> slow,
                      std::vector<std::size_t> fast);

    /// slow = {0, ..., n_slow-1}, fast = the rest.
    static SlowFastPartition leading_slow(std::size_t n_slow,
                                          std::size_t total);

    const std::vector<std::size_t>& slow_indices() const { return slow_; }
    const std::vector<std::size_t>& fast_indices() const { return fast_; }
    std::size_t slow_count() const { return slow_.size(); }
    std::size_t fast_count() const { return fast_.size(); }
    std::size_t total_dimension() const { return slow_.size() + fast_.size(); }

  private:
    std::vector<std::size_t> slow_;
    std::vector<std::size_t> fast_;
};

enum class LiftingVariant { equilibrium, initial_condition };

/// How to reconstruct fast components from a macro state: either the
/// conditional-equilibrium map fast = E X, or the fixed fast part of
/// the initial condition.
class LiftingSpec {
  public:
    static LiftingSpec equilibrium(Matrix equilibrium_map);
    static LiftingSpec from_initial(Vector initial_fast);

    LiftingVariant variant() const { return variant_; }
    const Matrix& equilibrium_map() const;
    const Vector& initial_fast() const;

  private:
    LiftingSpec() = default;

    LiftingVariant variant_ = LiftingVariant::initial_condition;
    Matrix equilibrium_map_;
    Vector initial_fast_;
};

/// Macro view of a micro state: the slow components, order preserved.
Vector restrict_state(const Vector& u, const SlowFastPartition& part);

/// Micro state consistent with macro state X; fast components follow
/// the lifting spec.
Vector lift(const Vector& X, const LiftingSpec& spec,
            const SlowFastPartition& part);

/// Micro state whose slow components are overwritten by X and whose
/// fast components are copied from u. Satisfies match(restrict(u), u) = u.
Vector match_states(const Vector& X, const Vector& u,
                    const SlowFastPartition& part);

}  // namespace mmpr
