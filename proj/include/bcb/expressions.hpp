// Exact-rational linear forms over joint-entropy coordinates h(A) and named
// scalar symbols; the substrate shared by the prover and the elimination
// engine.
#pragma once

#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bcb/distribution.hpp"
#include "bcb/rational.hpp"

namespace bcb {

// Bitmask over an ordered ground set; bit i = variable i. Ground sets are
// capped at 10 variables (1023 entropy coordinates).
using VarSet = unsigned;

class GroundSet {
  public:
    static constexpr int kMaxVariables = 10;

    GroundSet() = default;
    explicit GroundSet(std::vector<std::string> names);

    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(int i) const { return names_[i]; }
    VarSet full() const { return (1u << names_.size()) - 1; }

    std::optional<int> find(std::string_view name) const;
    int index_of(std::string_view name) const;  // throws
    VarSet subset(std::span<const std::string> names) const;
    VarSet subset(std::initializer_list<const char*> names) const;

    // "S,T,W" in ground order.
    std::string subset_name(VarSet set) const;

    friend bool operator==(const GroundSet&, const GroundSet&) = default;

  private:
    std::vector<std::string> names_;
};

class LinExpr {
  public:
    LinExpr() = default;

    static LinExpr coordinate(VarSet set, Rat coeff = Rat(1));
    static LinExpr scalar(std::string name, Rat coeff = Rat(1));
    static LinExpr constant(Rat value);

    const std::map<VarSet, Rat>& coords() const { return coords_; }
    const std::map<std::string, Rat>& scalars() const { return scalars_; }
    const Rat& constant_term() const { return constant_; }

    Rat coord(VarSet set) const;
    Rat scalar_coeff(const std::string& name) const;

    bool is_zero() const { return coords_.empty() && scalars_.empty() && constant_ == 0; }
    bool is_constant() const { return coords_.empty() && scalars_.empty(); }
    bool homogeneous() const { return constant_ == 0; }

    LinExpr& operator+=(const LinExpr& other);
    LinExpr& operator-=(const LinExpr& other);
    LinExpr& operator*=(const Rat& factor);

    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(const Rat& c, LinExpr e) { return e *= c; }
    friend LinExpr operator-(LinExpr e) { return e *= Rat(-1); }
    friend bool operator==(const LinExpr&, const LinExpr&) = default;

    void set_coord(VarSet set, Rat coeff);
    void set_scalar(std::string name, Rat coeff);
    void add_constant(const Rat& value) { constant_ += value; }

    // Scaled copy with integer coefficients of gcd 1; used for syntactic dedup
    // and printing. Sign is preserved.
    LinExpr normalized() const;

  private:
    void strip_zeros();

    std::map<VarSet, Rat> coords_;        // nonempty subsets only
    std::map<std::string, Rat> scalars_;  // by symbol name
    Rat constant_ = Rat(0);
};

// H(A | B) = h(A+B) - h(B); B may be empty.
LinExpr entropy_term(VarSet a, VarSet b = 0);
// I(A ; B | C) = h(A+C) + h(B+C) - h(A+B+C) - h(C). A and B must be disjoint
// once C is removed; A or B contained in C yields the zero expression.
LinExpr mi_term(VarSet a, VarSet b, VarSet c = 0);

enum class Relation { GreaterEqual, Equal };

struct Constraint {
    LinExpr expr;              // expr >= 0 or expr = 0
    Relation rel = Relation::GreaterEqual;
    bool strict = false;       // metadata only; proving treats >= and > alike
    std::string name;

    bool is_equality() const { return rel == Relation::Equal; }
};

struct ConstraintSystem {
    GroundSet ground;
    std::vector<std::string> scalar_names;
    std::vector<Constraint> constraints;

    bool has_scalar(std::string_view name) const;
    void require_scalar(const std::string& name);
    Constraint& add(LinExpr expr, Relation rel, std::string name = {}, bool strict = false);
    std::size_t size() const { return constraints.size(); }
};

std::string to_string(const LinExpr& expr, const GroundSet& ground);
std::string to_string(const Constraint& c, const GroundSet& ground);
std::string to_string(const ConstraintSystem& system);

}  // namespace bcb
