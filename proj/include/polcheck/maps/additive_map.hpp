#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "polcheck/field/field_element.hpp"
#include "polcheck/report.hpp"

namespace polcheck {

/// An additive map from a field to itself, built from identity, zero, endomorphisms,
/// derivations, scalar multiples, sums and compositions. Immutable; copies share the tree.
class AdditiveMap {
   public:
    enum class Kind { Identity, Zero, Endo, Derivation, Scale, Sum, Compose };

    static AdditiveMap identity(const SpecPtr& spec);
    static AdditiveMap zero(const SpecPtr& spec);

    Kind kind() const noexcept;
    const SpecPtr& domain_spec() const noexcept;
    const SpecPtr& codomain_spec() const noexcept { return domain_spec(); }

    /// Generator images of an Endo or Derivation node.
    const std::map<std::string, FieldElement>& images() const;
    bool conjugate_base() const;
    /// Coefficient of a Scale node.
    const FieldElement& coefficient() const;
    /// Children: the inner map of Scale, the terms of Sum, (outer, inner) for Compose.
    const std::vector<AdditiveMap>& children() const;

    FieldElement operator()(const FieldElement& x) const;

    /// Structural descriptor, also the oracle's input format.
    Json descriptor() const;
    /// The label if one was attached, otherwise a structural rendering.
    std::string to_string() const;
    const std::string& label() const noexcept;
    AdditiveMap named(std::string label) const;

    struct Node;

   private:
    explicit AdditiveMap(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    friend AdditiveMap make_map(Node node);

    std::shared_ptr<const Node> node_;
};

AdditiveMap build_endomorphism(const SpecPtr& spec, const std::map<std::string, FieldElement>& images,
                               bool conjugate_base);
AdditiveMap build_derivation(const SpecPtr& spec, const std::map<std::string, FieldElement>& images);
AdditiveMap scale_map(const FieldElement& c, const AdditiveMap& inner);
AdditiveMap sum_map(std::vector<AdditiveMap> terms);
AdditiveMap compose_map(const AdditiveMap& outer, const AdditiveMap& inner);

FieldElement apply_map(const AdditiveMap& m, const FieldElement& x);

enum class MapLaw { Additive, Multiplicative, Leibniz };

std::string law_name(MapLaw law);

/// Checks the law exactly on every pair; the report carries the first violating pair.
Report verify_map_laws(const AdditiveMap& m, MapLaw law,
                       const std::vector<std::pair<FieldElement, FieldElement>>& samples);

}  // namespace polcheck
