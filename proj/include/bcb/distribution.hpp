// Finite discrete joint distributions and the information measures computed
// from them. Tables constructed from rationals stay exact through
// marginalization and composition; entropies are always binary64 bits.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcb/rational.hpp"

namespace bcb {

class JointDistribution {
  public:
    static JointDistribution from_rationals(std::vector<std::string> variables,
                                            std::vector<int> shape, std::vector<Rat> probs);
    static JointDistribution from_reals(std::vector<std::string> variables,
                                        std::vector<int> shape, std::vector<double> probs);
    static JointDistribution uniform(std::vector<std::string> variables, std::vector<int> shape);

    // Text format: header `vars <name:size> ...`, one `<idx...> <prob>` line per
    // nonzero entry, `#` comments. Probabilities are decimals or `p/q`; a table
    // with any decimal entry is stored in floating point.
    static JointDistribution parse(std::string_view text);
    static JointDistribution load(const std::string& path);
    std::string format() const;

    const std::vector<std::string>& variables() const { return variables_; }
    const std::vector<int>& shape() const { return shape_; }
    std::size_t table_size() const { return exact_ ? rprobs_.size() : dprobs_.size(); }
    bool exact() const { return exact_; }

    double prob(std::size_t flat) const { return exact_ ? to_double(rprobs_[flat]) : dprobs_[flat]; }
    const Rat& prob_rat(std::size_t flat) const;

    // Throws std::invalid_argument for unknown names.
    int var_index(std::string_view name) const;
    bool has_variable(std::string_view name) const;

    std::size_t flat_index(std::span<const int> idx) const;
    void unflatten(std::size_t flat, std::span<int> idx) const;

  private:
    JointDistribution() = default;
    void validate() const;

    std::vector<std::string> variables_;
    std::vector<int> shape_;
    bool exact_ = false;
    std::vector<Rat> rprobs_;
    std::vector<double> dprobs_;
};

// All joint entropies of one distribution, indexed by variable-subset bitmask
// in the order of `names` (bit i = names[i]).
struct EntropyProfile {
    std::vector<std::string> names;
    std::vector<double> values;  // size 2^n, values[0] = 0

    double value(unsigned mask) const { return values[mask]; }

    // First violated polymatroid axiom at tolerance `tol`, or nullopt.
    std::optional<std::string> check_polymatroid(double tol = 1e-9) const;
};

// Gacs-Korner common part of a two-variable distribution: component labels of
// the bipartite support graph. Zero-probability symbols get label 0 and do not
// join components.
struct CommonPart {
    std::vector<int> f;  // per value of the first variable
    std::vector<int> g;  // per value of the second variable
    int alphabet_size;   // number of connected components with support
};

JointDistribution marginalize(const JointDistribution& dist, std::span<const std::string> keep);

double entropy(const JointDistribution& dist, std::span<const std::string> subset);

// I(A;B|C) in bits; C may be empty. A, B, C must be pairwise disjoint.
double mutual_information(const JointDistribution& dist, std::span<const std::string> a,
                          std::span<const std::string> b, std::span<const std::string> c = {});

// Requires at most 10 variables (table of 2^n subset entropies).
EntropyProfile entropy_profile(const JointDistribution& dist);

CommonPart common_part(const JointDistribution& dist);

bool is_indecomposable(const JointDistribution& dist);

// p(out | given) as a dense row-major table: one distribution over the output
// variables per joint value of the given variables.
struct Conditional {
    std::vector<std::string> given_vars;
    std::vector<int> given_shape;
    std::vector<std::string> out_vars;
    std::vector<int> out_shape;
    bool exact = false;
    std::vector<Rat> rtable;     // given-major, out-minor
    std::vector<double> dtable;

    static Conditional from_rationals(std::vector<std::string> given_vars,
                                      std::vector<int> given_shape,
                                      std::vector<std::string> out_vars,
                                      std::vector<int> out_shape, std::vector<Rat> table);
    static Conditional from_reals(std::vector<std::string> given_vars, std::vector<int> given_shape,
                                  std::vector<std::string> out_vars, std::vector<int> out_shape,
                                  std::vector<double> table);
    double entry(std::size_t given_flat, std::size_t out_flat) const;
};

// Joint over base.variables + cond.out_vars with p(base)*p(out|given). The
// given variables may sit anywhere in `base`.
JointDistribution extend(const JointDistribution& base, const Conditional& cond);

// Appends a variable that is a deterministic function of one existing
// variable: value_map[v] in [0, alphabet_size).
JointDistribution add_function_variable(const JointDistribution& dist, const std::string& name,
                                        const std::string& of_var, std::span<const int> value_map,
                                        int alphabet_size);

}  // namespace bcb
