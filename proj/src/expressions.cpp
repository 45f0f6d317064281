#include "bcb/expressions.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bcb {

GroundSet::GroundSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw std::invalid_argument("ground set is empty");
    if (names_.size() > kMaxVariables)
        throw std::invalid_argument("ground set capped at 10 variables");
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw std::invalid_argument("empty name in ground set");
        if (!seen.insert(n).second)
            throw std::invalid_argument("duplicate name in ground set: '" + n + "'");
    }
}

std::optional<int> GroundSet::find(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

int GroundSet::index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::invalid_argument("variable not in ground set: '" + std::string(name) + "'");
}

VarSet GroundSet::subset(std::span<const std::string> names) const {
    VarSet s = 0;
    for (const auto& n : names) s |= 1u << index_of(n);
    return s;
}

VarSet GroundSet::subset(std::initializer_list<const char*> names) const {
    VarSet s = 0;
    for (const char* n : names) s |= 1u << index_of(n);
    return s;
}

std::string GroundSet::subset_name(VarSet set) const {
    std::string out;
    for (int i = 0; i < size(); ++i) {
        if (!(set & (1u << i))) continue;
        if (!out.empty()) out += ',';
        out += names_[i];
    }
    return out;
}

// --- LinExpr ----------------------------------------------------------------

LinExpr LinExpr::coordinate(VarSet set, Rat coeff) {
    if (set == 0) throw std::invalid_argument("entropy coordinate of the empty set");
    LinExpr e;
    if (coeff != 0) e.coords_[set] = std::move(coeff);
    return e;
}

LinExpr LinExpr::scalar(std::string name, Rat coeff) {
    LinExpr e;
    if (coeff != 0) e.scalars_[std::move(name)] = std::move(coeff);
    return e;
}

LinExpr LinExpr::constant(Rat value) {
    LinExpr e;
    e.constant_ = std::move(value);
    return e;
}

Rat LinExpr::coord(VarSet set) const {
    auto it = coords_.find(set);
    return it == coords_.end() ? Rat(0) : it->second;
}

Rat LinExpr::scalar_coeff(const std::string& name) const {
    auto it = scalars_.find(name);
    return it == scalars_.end() ? Rat(0) : it->second;
}

void LinExpr::strip_zeros() {
    for (auto it = coords_.begin(); it != coords_.end();)
        it = it->second == 0 ? coords_.erase(it) : std::next(it);
    for (auto it = scalars_.begin(); it != scalars_.end();)
        it = it->second == 0 ? scalars_.erase(it) : std::next(it);
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
    for (const auto& [set, c] : other.coords_) coords_[set] += c;
    for (const auto& [name, c] : other.scalars_) scalars_[name] += c;
    constant_ += other.constant_;
    strip_zeros();
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
    for (const auto& [set, c] : other.coords_) coords_[set] -= c;
    for (const auto& [name, c] : other.scalars_) scalars_[name] -= c;
    constant_ -= other.constant_;
    strip_zeros();
    return *this;
}

LinExpr& LinExpr::operator*=(const Rat& factor) {
    if (factor == 0) {
        coords_.clear();
        scalars_.clear();
        constant_ = 0;
        return *this;
    }
    for (auto& [set, c] : coords_) c *= factor;
    for (auto& [name, c] : scalars_) c *= factor;
    constant_ *= factor;
    return *this;
}

void LinExpr::set_coord(VarSet set, Rat coeff) {
    if (set == 0) throw std::invalid_argument("entropy coordinate of the empty set");
    if (coeff == 0)
        coords_.erase(set);
    else
        coords_[set] = std::move(coeff);
}

void LinExpr::set_scalar(std::string name, Rat coeff) {
    if (coeff == 0)
        scalars_.erase(name);
    else
        scalars_[std::move(name)] = std::move(coeff);
}

LinExpr LinExpr::normalized() const {
    if (is_zero()) return *this;
    // lcm of denominators, then gcd of numerators
    mpz_class lcm = 1, gcd = 0;
    auto absorb = [&](const Rat& q) {
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den().get_mpz_t());
    };
    for (const auto& [s, c] : coords_) absorb(c);
    for (const auto& [n, c] : scalars_) absorb(c);
    if (constant_ != 0) absorb(constant_);
    auto absorb_num = [&](const Rat& q) {
        mpz_class scaled = q.get_num() * (lcm / q.get_den());
        mpz_gcd(gcd.get_mpz_t(), gcd.get_mpz_t(), scaled.get_mpz_t());
    };
    for (const auto& [s, c] : coords_) absorb_num(c);
    for (const auto& [n, c] : scalars_) absorb_num(c);
    if (constant_ != 0) absorb_num(constant_);
    Rat factor(lcm, gcd == 0 ? mpz_class(1) : gcd);
    factor.canonicalize();
    LinExpr out = *this;
    out *= factor;
    return out;
}

// --- information terms --------------------------------------------------------

LinExpr entropy_term(VarSet a, VarSet b) {
    if (a == 0) throw std::invalid_argument("H(A|B): A is empty");
    LinExpr e = LinExpr::coordinate(a | b);
    if (b != 0) e -= LinExpr::coordinate(b);
    return e;
}

LinExpr mi_term(VarSet a, VarSet b, VarSet c) {
    if (a == 0 || b == 0) throw std::invalid_argument("I(A;B|C): A and B must be nonempty");
    VarSet ar = a & ~c, br = b & ~c;
    if (ar & br) throw std::invalid_argument("I(A;B|C): arguments overlap outside C");
    if (ar == 0 || br == 0) return LinExpr();  // I(A;B|C)=0 when A or B is inside C
    LinExpr e = LinExpr::coordinate(ar | c);
    e += LinExpr::coordinate(br | c);
    e -= LinExpr::coordinate(ar | br | c);
    if (c != 0) e -= LinExpr::coordinate(c);
    return e;
}

// --- systems -------------------------------------------------------------------

bool ConstraintSystem::has_scalar(std::string_view name) const {
    return std::any_of(scalar_names.begin(), scalar_names.end(),
                       [&](const std::string& s) { return s == name; });
}

void ConstraintSystem::require_scalar(const std::string& name) {
    if (!has_scalar(name)) scalar_names.push_back(name);
}

Constraint& ConstraintSystem::add(LinExpr expr, Relation rel, std::string name, bool strict) {
    for (const auto& [sname, c] : expr.scalars()) require_scalar(sname);
    Constraint cons;
    cons.expr = std::move(expr);
    cons.rel = rel;
    cons.strict = strict;
    cons.name = name.empty() ? "c" + std::to_string(constraints.size()) : std::move(name);
    constraints.push_back(std::move(cons));
    return constraints.back();
}

// --- printing -------------------------------------------------------------------

namespace {

void print_coeff(std::ostringstream& out, const Rat& c, bool first) {
    Rat a = abs(c);
    if (first) {
        if (c < 0) out << "- ";
    } else {
        out << (c < 0 ? " - " : " + ");
    }
    if (a != 1) out << rat_to_string(a) << "*";
}

}  // namespace

std::string to_string(const LinExpr& expr, const GroundSet& ground) {
    if (expr.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [set, c] : expr.coords()) {
        print_coeff(out, c, first);
        out << "H(" << ground.subset_name(set) << ")";
        first = false;
    }
    for (const auto& [name, c] : expr.scalars()) {
        print_coeff(out, c, first);
        out << name;
        first = false;
    }
    if (expr.constant_term() != 0 || first) {
        const Rat& c = expr.constant_term();
        if (first) {
            out << rat_to_string(c);
        } else {
            out << (c < 0 ? " - " : " + ") << rat_to_string(abs(c));
        }
    }
    return out.str();
}

std::string to_string(const Constraint& c, const GroundSet& ground) {
    std::string rel;
    if (c.is_equality())
        rel = " = 0";
    else
        rel = c.strict ? " > 0" : " >= 0";
    return to_string(c.expr, ground) + rel;
}

std::string to_string(const ConstraintSystem& system) {
    std::ostringstream out;
    out << "vars";
    for (const auto& n : system.ground.names()) out << ' ' << n;
    out << '\n';
    if (!system.scalar_names.empty()) {
        out << "scalars";
        for (const auto& n : system.scalar_names) out << ' ' << n;
        out << '\n';
    }
    for (const auto& c : system.constraints) out << to_string(c, system.ground) << '\n';
    return out.str();
}

}  // namespace bcb
