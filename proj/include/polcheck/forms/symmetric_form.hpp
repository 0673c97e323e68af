#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "polcheck/maps/additive_map.hpp"

namespace polcheck {

/// Largest arity any symmetric form may have.
inline constexpr std::size_t kHardArityLimit = 12;
/// Default cap for evaluating forms and symmetrized checks.
inline constexpr std::size_t kDefaultMaxArity = 8;
/// Largest number of increments an iterated difference accepts.
inline constexpr std::size_t kMaxIncrements = 12;

/// A symmetric n-additive form built from additive maps. Immutable; copies share the tree.
class SymmetricForm {
   public:
    enum class Kind { Constant, ProductSym, MapOfProduct, Lift, LinComb, FormProduct };

    /// Arity-0 form with the given value.
    static SymmetricForm constant(const FieldElement& c);
    /// (1/n!) sum over permutations of phi_1(x_s(1)) ... phi_n(x_s(n)).
    static SymmetricForm product_sym(std::vector<AdditiveMap> maps);
    /// a(x_1 ... x_n).
    static SymmetricForm map_of_product(const AdditiveMap& a, std::size_t n);
    /// Arity r*k form whose trace is x -> inner*(x^k); the symmetrization of
    /// inner(x_1...x_k, ..., x_{(r-1)k+1}...x_{rk}).
    static SymmetricForm lift(const SymmetricForm& inner, std::size_t k);
    static SymmetricForm lincomb(std::vector<std::pair<FieldElement, SymmetricForm>> terms);
    /// Symmetrized product of forms; its trace is the product of the traces.
    static SymmetricForm form_product(std::vector<SymmetricForm> factors);

    Kind kind() const noexcept;
    std::size_t arity() const noexcept;
    const SpecPtr& spec() const noexcept;

    const FieldElement& constant_value() const;
    const std::vector<AdditiveMap>& maps() const;
    const std::vector<SymmetricForm>& forms() const;
    const std::vector<FieldElement>& coefficients() const;
    std::size_t lift_power() const;

    Json descriptor() const;
    std::string to_string() const;
    const std::string& label() const noexcept;
    SymmetricForm named(std::string label) const;

    struct Node;

   private:
    explicit SymmetricForm(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    friend SymmetricForm make_form(Node node);

    std::shared_ptr<const Node> node_;
};

/// Throws ArityTooLarge when the arity exceeds `max_arity` and SpecMismatch on foreign arguments.
FieldElement eval_form(const SymmetricForm& f, std::span<const FieldElement> args,
                       std::size_t max_arity = kDefaultMaxArity);

/// Evaluator x -> F(x, ..., x), computed without expanding the form.
FieldElement eval_trace(const SymmetricForm& f, const FieldElement& x);

/// A unary function on a field, with an oracle description when one is available.
struct Function {
    SpecPtr spec;
    std::function<FieldElement(const FieldElement&)> eval;
    /// {"param": ..., "body": ...} for the oracle, or null.
    Json oracle;
    std::string label;

    FieldElement operator()(const FieldElement& x) const { return eval(x); }
};

Function map_function(const AdditiveMap& a);

struct GenMonomial {
    std::size_t degree = 0;
    SymmetricForm form;

    FieldElement operator()(const FieldElement& x) const { return eval_trace(form, x); }
    Function as_function() const;
};

GenMonomial trace(const SymmetricForm& f);

/// x -> f(x + y) - f(x).
Function delta(const Function& f, const FieldElement& y);

/// Iterated difference at x by inclusion-exclusion over the 2^m subsets of increments.
FieldElement iterated_delta(const Function& f, const FieldElement& x, std::span<const FieldElement> ys);
Json iterated_delta_expr(const Function& f, const FieldElement& x, std::span<const FieldElement> ys);

/// Delta_{y_1..y_n} p(0) / n!, which recovers the form of p at ys.
FieldElement polarize(const GenMonomial& p, std::span<const FieldElement> ys);

/// Checks Delta_{ys} F*(x) against 0 (m > n) or n! F(ys) (m = n).
Report polarization_check(const SymmetricForm& f, const FieldElement& x, std::span<const FieldElement> ys,
                          std::size_t max_arity = kDefaultMaxArity);

/// With the trace vanishing on every subset sum of each tuple, the form must vanish on the tuple.
Report zero_trace_implies_zero_check(const SymmetricForm& f,
                                     const std::vector<std::vector<FieldElement>>& sample_tuples,
                                     std::size_t max_arity = kDefaultMaxArity);

mpz_class factorial(std::size_t n);

}  // namespace polcheck
