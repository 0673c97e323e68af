#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "polcheck/field/field_element.hpp"

namespace polcheck {

struct SampleConfig {
    std::uint64_t seed = 1;
    std::size_t count = 20;
    /// Bound on numerator and denominator coefficients.
    std::uint64_t max_height = 5;
    /// Bound on polynomial degree for rational function elements.
    std::size_t max_degree = 2;

    /// Throws InvalidSpec unless count and max_height are at least 1.
    void validate() const;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Deterministic in (spec, cfg.seed, cfg bounds, index); independent of the standard
/// library's distribution implementations.
FieldElement random_element(const SpecPtr& spec, const SampleConfig& cfg, std::uint64_t index);

/// cfg.count draws, indices 0..count-1.
std::vector<FieldElement> sample_elements(const SpecPtr& spec, const SampleConfig& cfg);

/// cfg.count pairs drawn from a stream separate from sample_elements.
std::vector<std::pair<FieldElement, FieldElement>> sample_pairs(const SpecPtr& spec, const SampleConfig& cfg);

/// Q: {1, 2, -1/3}; Q(sqrt d): {1, sqrt d, 1+sqrt d}; rational functions add t, t+1, t^2, t-1
/// for each indeterminate t.
std::vector<FieldElement> default_probes(const SpecPtr& spec);

}  // namespace polcheck
