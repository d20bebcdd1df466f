#include "mmpr/coupling.hpp"

#include <algorithm>
#include <utility>

namespace mmpr {

SlowFastPartition::SlowFastPartition(std::vector<std::size_t> slow,
                                     std::vector<std::size_t> fast)
    : slow_(std::move(slow)), fast_(std::move(fast)) {
    const std::size_t total = slow_.size() + fast_.size();
    std::vector<bool> seen(total, false);
    for (const auto& list : {slow_, fast_}) {
        for (std::size_t idx : list) {
            if (idx >= total) {
                throw DomainError("partition index outside the state dimension");
            }
            if (seen[idx]) {
                throw DomainError("partition index lists are not disjoint");
            }
            seen[idx] = true;
        }
    }
    // All indices seen exactly once <=> the union covers 0..total-1.
}

SlowFastPartition SlowFastPartition::leading_slow(std::size_t n_slow,
                                                  std::size_t total) {
    if (n_slow > total) {
        throw DomainError("slow count exceeds total dimension");
    }
    std::vector<std::size_t> slow(n_slow);
    std::vector<std::size_t> fast(total - n_slow);
    for (std::size_t i = 0; i < n_slow; ++i) slow[i] = i;
    for (std::size_t i = n_slow; i < total; ++i) fast[i - n_slow] = i;
    return SlowFastPartition(std::move(slow), std::move(fast));
}

LiftingSpec LiftingSpec::equilibrium(Matrix equilibrium_map) {
    LiftingSpec spec;
    spec.variant_ = LiftingVariant::equilibrium;
    spec.equilibrium_map_ = std::move(equilibrium_map);
    return spec;
}

LiftingSpec LiftingSpec::from_initial(Vector initial_fast) {
    LiftingSpec spec;
    spec.variant_ = LiftingVariant::initial_condition;
    spec.initial_fast_ = std::move(initial_fast);
    return spec;
}

const Matrix& LiftingSpec::equilibrium_map() const {
    if (variant_ != LiftingVariant::equilibrium) {
        throw DomainError("lifting spec has no equilibrium map");
    }
    return equilibrium_map_;
}

const Vector& LiftingSpec::initial_fast() const {
    if (variant_ != LiftingVariant::initial_condition) {
        throw DomainError("lifting spec has no initial fast state");
    }
    return initial_fast_;
}

Vector restrict_state(const Vector& u, const SlowFastPartition& part) {
    if (u.size() != part.total_dimension()) {
        throw DimensionError("state size does not match the partition");
    }
    Vector out(part.slow_count());
    for (std::size_t i = 0; i < part.slow_count(); ++i) {
        out[i] = u[part.slow_indices()[i]];
    }
    return out;
}

Vector lift(const Vector& X, const LiftingSpec& spec,
            const SlowFastPartition& part) {
    if (X.size() != part.slow_count()) {
        throw DimensionError("macro state size does not match the partition");
    }
    Vector fast;
    if (spec.variant() == LiftingVariant::equilibrium) {
        const Matrix& map = spec.equilibrium_map();
        if (map.rows() != part.fast_count() || map.cols() != part.slow_count()) {
            throw DimensionError("equilibrium map shape does not match partition");
        }
        fast = map * X;
    } else {
        fast = spec.initial_fast();
        if (fast.size() != part.fast_count()) {
            throw DimensionError("initial fast state does not match partition");
        }
    }
    Vector out(part.total_dimension());
    for (std::size_t i = 0; i < part.slow_count(); ++i) {
        out[part.slow_indices()[i]] = X[i];
    }
    for (std::size_t i = 0; i < part.fast_count(); ++i) {
        out[part.fast_indices()[i]] = fast[i];
    }
    return out;
}

Vector match_states(const Vector& X, const Vector& u,
                    const SlowFastPartition& part) {
    if (u.size() != part.total_dimension()) {
        throw DimensionError("micro state size does not match the partition");
    }
    if (X.size() != part.slow_count()) {
        throw DimensionError("macro state size does not match the partition");
    }
    Vector out = u;
    for (std::size_t i = 0; i < part.slow_count(); ++i) {
        out[part.slow_indices()[i]] = X[i];
    }
    return out;
}

}  // namespace mmpr
