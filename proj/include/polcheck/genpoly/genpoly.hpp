#pragma once

#include <optional>
#include <vector>

#include "polcheck/forms/symmetric_form.hpp"

namespace polcheck {

/// A sum of generalized monomials with pairwise distinct degrees, kept in increasing degree.
class GenPoly {
   public:
    /// Components of equal degree are merged into one linear combination.
    GenPoly(SpecPtr spec, std::vector<GenMonomial> components);
    static GenPoly monomial(const SymmetricForm& f);

    const SpecPtr& spec() const noexcept { return spec_; }
    const std::vector<GenMonomial>& components() const noexcept { return components_; }
    /// Highest component degree; 0 for the empty polynomial.
    std::size_t degree() const noexcept;
    bool is_monomial() const noexcept { return components_.size() == 1; }

    FieldElement operator()(const FieldElement& x) const;
    Function as_function() const;
    std::string to_string() const;

   private:
    SpecPtr spec_;
    std::vector<GenMonomial> components_;
};

FieldElement eval_genpoly(const GenPoly& p, const FieldElement& x);

struct DegreeEstimate {
    /// nullopt stands for NO_BOUND_FOUND.
    std::optional<std::size_t> degree;
    Report report;
};

/// Smallest n <= cap with Delta_{y_1..y_{n+1}} f(0) = 0 for every multiset of n+1 probes.
DegreeEstimate degree_estimate(const Function& f, const std::vector<FieldElement>& probes, std::size_t cap);

struct ComponentTable {
    std::size_t degree = 0;
    std::vector<FieldElement> probes;
    std::vector<FieldElement> values;
};

/// Values of every component of degree 0..top on the probes, top degree first, by peeling.
/// Throws InconsistentPeeling when the final residual does not vanish on the probes.
std::vector<ComponentTable> extract_components(const Function& f, std::size_t top,
                                               const std::vector<FieldElement>& probes);
/// The degree-n table from the peeling of a degree-`top` function.
ComponentTable extract_component(const Function& f, std::size_t n, std::size_t top,
                                 const std::vector<FieldElement>& probes);

/// Every multiset of size m drawn from `gens`, as tuples with nondecreasing indices in
/// lexicographic order.
std::vector<std::vector<FieldElement>> multiset_tuples(const std::vector<FieldElement>& gens, std::size_t m);

enum class TranslateOp { Additive, Multiplicative };

/// Rank of [f(h_j + g_i)] or [f(h_j * g_i)]; values["rank"] holds the result.
Report variety_rank_report(const Function& f, const std::vector<FieldElement>& translates,
                           const std::vector<FieldElement>& points, TranslateOp op);
std::size_t variety_rank(const Function& f, const std::vector<FieldElement>& translates,
                         const std::vector<FieldElement>& points, TranslateOp op);

}  // namespace polcheck
