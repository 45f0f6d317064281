#include "bcb/distribution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bcb {

namespace {

constexpr double kSumTol = 1e-9;

double log2_safe(double p) { return std::log2(p); }

// -p log2 p with the 0 log 0 = 0 convention.
double nlogn(double p) { return p > 0.0 ? -p * log2_safe(p) : 0.0; }

void check_identifier(const std::string& name) {
    if (name.empty()) throw std::invalid_argument("empty variable name");
    if (!std::isalpha(static_cast<unsigned char>(name[0])) && name[0] != '_')
        throw std::invalid_argument("variable name must start with a letter: '" + name + "'");
    for (char c : name)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            throw std::invalid_argument("invalid character in variable name: '" + name + "'");
}

std::size_t product_size(const std::vector<int>& shape) {
    std::size_t n = 1;
    for (int s : shape) {
        if (s < 1) throw std::invalid_argument("alphabet sizes must be >= 1");
        n *= static_cast<std::size_t>(s);
    }
    return n;
}

}  // namespace

void JointDistribution::validate() const {
    if (variables_.size() != shape_.size())
        throw std::invalid_argument("variables and shape length mismatch");
    std::set<std::string> seen;
    for (const auto& v : variables_) {
        check_identifier(v);
        if (!seen.insert(v).second)
            throw std::invalid_argument("duplicate variable name: '" + v + "'");
    }
    const std::size_t expected = product_size(shape_);
    if (table_size() != expected)
        throw std::invalid_argument("table size does not match alphabet product");
    if (exact_) {
        Rat sum = 0;
        for (const auto& p : rprobs_) {
            if (p < 0) throw std::invalid_argument("negative probability entry");
            sum += p;
        }
        if (sum != 1) throw std::invalid_argument("probabilities must sum to 1 exactly");
    } else {
        double sum = 0.0;
        for (double p : dprobs_) {
            if (p < 0.0) throw std::invalid_argument("negative probability entry");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kSumTol)
            throw std::invalid_argument("probabilities must sum to 1 within 1e-9");
    }
}

JointDistribution JointDistribution::from_rationals(std::vector<std::string> variables,
                                                    std::vector<int> shape,
                                                    std::vector<Rat> probs) {
    JointDistribution d;
    d.variables_ = std::move(variables);
    d.shape_ = std::move(shape);
    d.exact_ = true;
    d.rprobs_ = std::move(probs);
    d.validate();
    return d;
}

JointDistribution JointDistribution::from_reals(std::vector<std::string> variables,
                                                std::vector<int> shape,
                                                std::vector<double> probs) {
    JointDistribution d;
    d.variables_ = std::move(variables);
    d.shape_ = std::move(shape);
    d.exact_ = false;
    d.dprobs_ = std::move(probs);
    d.validate();
    return d;
}

JointDistribution JointDistribution::uniform(std::vector<std::string> variables,
                                             std::vector<int> shape) {
    const std::size_t n = product_size(shape);
    std::vector<Rat> probs(n, rat(1, static_cast<long>(n)));
    return from_rationals(std::move(variables), std::move(shape), std::move(probs));
}

const Rat& JointDistribution::prob_rat(std::size_t flat) const {
    if (!exact_) throw std::logic_error("distribution is not stored exactly");
    return rprobs_[flat];
}

int JointDistribution::var_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i] == name) return static_cast<int>(i);
    throw std::invalid_argument("unknown variable name: '" + std::string(name) + "'");
}

bool JointDistribution::has_variable(std::string_view name) const {
    return std::any_of(variables_.begin(), variables_.end(),
                       [&](const std::string& v) { return v == name; });
}

std::size_t JointDistribution::flat_index(std::span<const int> idx) const {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < shape_.size(); ++i)
        flat = flat * static_cast<std::size_t>(shape_[i]) + static_cast<std::size_t>(idx[i]);
    return flat;
}

void JointDistribution::unflatten(std::size_t flat, std::span<int> idx) const {
    for (std::size_t i = shape_.size(); i-- > 0;) {
        idx[i] = static_cast<int>(flat % static_cast<std::size_t>(shape_[i]));
        flat /= static_cast<std::size_t>(shape_[i]);
    }
}

// --- text format ----------------------------------------------------------

JointDistribution JointDistribution::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;

    std::vector<std::string> names;
    std::vector<int> shape;
    bool header_seen = false;
    std::vector<std::pair<std::size_t, Rat>> rentries;
    bool all_rational = true;
    std::vector<std::pair<std::size_t, double>> dentries;

    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("distribution line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;

        if (!header_seen) {
            if (tok != "vars") fail("expected 'vars' header");
            std::string spec;
            while (ls >> spec) {
                auto colon = spec.find(':');
                if (colon == std::string::npos) fail("expected <name:size> in header");
                names.push_back(spec.substr(0, colon));
                try {
                    shape.push_back(std::stoi(spec.substr(colon + 1)));
                } catch (const std::exception&) {
                    fail("bad alphabet size in '" + spec + "'");
                }
            }
            if (names.empty()) fail("header lists no variables");
            header_seen = true;
            continue;
        }

        std::vector<int> idx(names.size());
        idx[0] = [&] {
            try {
                return std::stoi(tok);
            } catch (const std::exception&) {
                fail("expected index, got '" + tok + "'");
                return 0;
            }
        }();
        for (std::size_t i = 1; i < names.size(); ++i)
            if (!(ls >> idx[i])) fail("expected " + std::to_string(names.size()) + " indices");
        std::string prob_tok;
        if (!(ls >> prob_tok)) fail("missing probability");
        std::string extra;
        if (ls >> extra) fail("trailing token '" + extra + "'");
        for (std::size_t i = 0; i < names.size(); ++i)
            if (idx[i] < 0 || idx[i] >= shape[i]) fail("index out of range for " + names[i]);

        std::size_t flat = 0;
        for (std::size_t i = 0; i < names.size(); ++i)
            flat = flat * static_cast<std::size_t>(shape[i]) + static_cast<std::size_t>(idx[i]);

        auto q = parse_rational(prob_tok);
        if (!q) fail("bad probability '" + prob_tok + "'");
        // `p/q` keeps the table exact; any decimal entry demotes it to floats.
        if (prob_tok.find('/') == std::string::npos && !is_integer(*q)) all_rational = false;
        rentries.emplace_back(flat, *q);
    }
    if (!header_seen) throw std::invalid_argument("distribution file has no 'vars' header");

    const std::size_t n = product_size(shape);
    if (all_rational) {
        std::vector<Rat> probs(n, Rat(0));
        for (auto& [flat, q] : rentries) probs[flat] += q;
        return from_rationals(std::move(names), std::move(shape), std::move(probs));
    }
    std::vector<double> probs(n, 0.0);
    for (auto& [flat, q] : rentries) probs[flat] += to_double(q);
    (void)dentries;
    return from_reals(std::move(names), std::move(shape), std::move(probs));
}

JointDistribution JointDistribution::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open distribution file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string JointDistribution::format() const {
    std::ostringstream out;
    out << "vars";
    for (std::size_t i = 0; i < variables_.size(); ++i)
        out << ' ' << variables_[i] << ':' << shape_[i];
    out << '\n';
    std::vector<int> idx(variables_.size());
    for (std::size_t flat = 0; flat < table_size(); ++flat) {
        if (prob(flat) == 0.0 && (!exact_ || rprobs_[flat] == 0)) continue;
        unflatten(flat, idx);
        for (int v : idx) out << v << ' ';
        if (exact_) {
            out << rat_to_string(rprobs_[flat]);
        } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", dprobs_[flat]);
            out << buf;
        }
        out << '\n';
    }
    return out.str();
}

// --- marginals and entropies ------------------------------------------------

namespace {

std::vector<int> indices_of(const JointDistribution& dist, std::span<const std::string> subset,
                            bool allow_empty = false) {
    if (!allow_empty && subset.empty()) throw std::invalid_argument("variable subset is empty");
    std::vector<int> idx;
    idx.reserve(subset.size());
    std::set<int> seen;
    for (const auto& name : subset) {
        int i = dist.var_index(name);
        if (!seen.insert(i).second)
            throw std::invalid_argument("repeated variable in subset: '" + name + "'");
        idx.push_back(i);
    }
    return idx;
}

// Flattened marginal table (as doubles) over the given variable positions,
// preserving their listed order.
std::vector<double> marginal_table(const JointDistribution& dist, std::span<const int> positions) {
    std::size_t msize = 1;
    for (int p : positions) msize *= static_cast<std::size_t>(dist.shape()[p]);
    std::vector<double> out(msize, 0.0);
    std::vector<int> idx(dist.variables().size());
    for (std::size_t flat = 0; flat < dist.table_size(); ++flat) {
        double p = dist.prob(flat);
        if (p == 0.0) continue;
        dist.unflatten(flat, idx);
        std::size_t m = 0;
        for (int pos : positions)
            m = m * static_cast<std::size_t>(dist.shape()[pos]) + static_cast<std::size_t>(idx[pos]);
        out[m] += p;
    }
    return out;
}

double entropy_of_table(const std::vector<double>& table) {
    double h = 0.0;
    for (double p : table) h += nlogn(p);
    return h;
}

}  // namespace

JointDistribution marginalize(const JointDistribution& dist, std::span<const std::string> keep) {
    std::vector<int> positions = indices_of(dist, keep);
    std::vector<std::string> names;
    std::vector<int> shape;
    for (int p : positions) {
        names.push_back(dist.variables()[p]);
        shape.push_back(dist.shape()[p]);
    }
    std::size_t msize = 1;
    for (int s : shape) msize *= static_cast<std::size_t>(s);

    std::vector<int> idx(dist.variables().size());
    if (dist.exact()) {
        std::vector<Rat> probs(msize, Rat(0));
        for (std::size_t flat = 0; flat < dist.table_size(); ++flat) {
            dist.unflatten(flat, idx);
            std::size_t m = 0;
            for (int p : positions)
                m = m * static_cast<std::size_t>(dist.shape()[p]) + static_cast<std::size_t>(idx[p]);
            probs[m] += dist.prob_rat(flat);
        }
        return JointDistribution::from_rationals(std::move(names), std::move(shape),
                                                 std::move(probs));
    }
    std::vector<double> probs = marginal_table(dist, positions);
    return JointDistribution::from_reals(std::move(names), std::move(shape), std::move(probs));
}

double entropy(const JointDistribution& dist, std::span<const std::string> subset) {
    std::vector<int> positions = indices_of(dist, subset);
    return entropy_of_table(marginal_table(dist, positions));
}

double mutual_information(const JointDistribution& dist, std::span<const std::string> a,
                          std::span<const std::string> b, std::span<const std::string> c) {
    std::vector<int> ia = indices_of(dist, a);
    std::vector<int> ib = indices_of(dist, b);
    std::vector<int> ic = indices_of(dist, c, /*allow_empty=*/true);
    std::set<int> seen(ia.begin(), ia.end());
    for (int i : ib)
        if (!seen.insert(i).second) throw std::invalid_argument("I(A;B|C): subsets overlap");
    for (int i : ic)
        if (!seen.insert(i).second) throw std::invalid_argument("I(A;B|C): subsets overlap");

    auto joined = [](std::span<const int> x, std::span<const int> y) {
        std::vector<int> r(x.begin(), x.end());
        r.insert(r.end(), y.begin(), y.end());
        return r;
    };
    std::vector<int> ac = joined(ia, ic);
    std::vector<int> bc = joined(ib, ic);
    std::vector<int> abc = joined(joined(ia, ib), ic);

    double h_ac = entropy_of_table(marginal_table(dist, ac));
    double h_bc = entropy_of_table(marginal_table(dist, bc));
    double h_abc = entropy_of_table(marginal_table(dist, abc));
    double h_c = ic.empty() ? 0.0 : entropy_of_table(marginal_table(dist, ic));
    return h_ac + h_bc - h_abc - h_c;
}

EntropyProfile entropy_profile(const JointDistribution& dist) {
    const std::size_t n = dist.variables().size();
    if (n > 10) throw std::invalid_argument("entropy_profile: more than 10 variables");
    EntropyProfile profile;
    profile.names = dist.variables();
    profile.values.assign(std::size_t(1) << n, 0.0);
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> positions;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) positions.push_back(static_cast<int>(i));
        profile.values[mask] = entropy_of_table(marginal_table(dist, positions));
    }
    return profile;
}

std::optional<std::string> EntropyProfile::check_polymatroid(double tol) const {
    const unsigned full = static_cast<unsigned>(values.size()) - 1;
    for (unsigned a = 1; a <= full; ++a)
        if (values[a] < -tol) return "h(" + std::to_string(a) + ") < 0";
    // Monotonicity A <= A + {i}; submodularity in its elemental form.
    const std::size_t n = names.size();
    for (unsigned a = 1; a <= full; ++a) {
        for (std::size_t i = 0; i < n; ++i) {
            unsigned bit = 1u << i;
            if (a & bit) continue;
            if (values[a | bit] < values[a] - tol)
                return "monotonicity fails at mask " + std::to_string(a) + " + bit " +
                       std::to_string(i);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            unsigned bi = 1u << i, bj = 1u << j;
            for (unsigned k = 0; k <= full; ++k) {
                if (k & (bi | bj)) continue;
                double lhs = values[k | bi] + values[k | bj];
                double rhs = values[k | bi | bj] + values[k];
                if (lhs < rhs - tol)
                    return "submodularity fails at i=" + std::to_string(i) +
                           " j=" + std::to_string(j) + " K=" + std::to_string(k);
            }
        }
    }
    return std::nullopt;
}

// --- support-graph operations ----------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

CommonPart common_part(const JointDistribution& dist) {
    if (dist.variables().size() != 2)
        throw std::invalid_argument("common_part requires exactly two variables");
    const int ns = dist.shape()[0];
    const int nt = dist.shape()[1];
    UnionFind uf(ns + nt);
    std::vector<bool> s_support(ns, false), t_support(nt, false);
    for (int s = 0; s < ns; ++s) {
        for (int t = 0; t < nt; ++t) {
            std::size_t flat = static_cast<std::size_t>(s) * nt + t;
            bool positive = dist.exact() ? dist.prob_rat(flat) > 0 : dist.prob(flat) > 0.0;
            if (!positive) continue;
            s_support[s] = t_support[t] = true;
            uf.unite(s, ns + t);
        }
    }
    // Components are numbered in order of first appearance on the S side,
    // then on the T side; off-support symbols map to 0.
    std::map<int, int> label;
    CommonPart cp;
    cp.f.assign(ns, 0);
    cp.g.assign(nt, 0);
    for (int s = 0; s < ns; ++s) {
        if (!s_support[s]) continue;
        int root = uf.find(s);
        auto [it, fresh] = label.try_emplace(root, static_cast<int>(label.size()));
        cp.f[s] = it->second;
        (void)fresh;
    }
    for (int t = 0; t < nt; ++t) {
        if (!t_support[t]) continue;
        int root = uf.find(ns + t);
        auto [it, fresh] = label.try_emplace(root, static_cast<int>(label.size()));
        cp.g[t] = it->second;
        (void)fresh;
    }
    cp.alphabet_size = std::max<std::size_t>(label.size(), 1);
    return cp;
}

bool is_indecomposable(const JointDistribution& dist) {
    return common_part(dist).alphabet_size == 1;
}

// --- conditional extension ---------------------------------------------------

Conditional Conditional::from_rationals(std::vector<std::string> given_vars,
                                        std::vector<int> given_shape,
                                        std::vector<std::string> out_vars,
                                        std::vector<int> out_shape, std::vector<Rat> table) {
    Conditional c;
    c.given_vars = std::move(given_vars);
    c.given_shape = std::move(given_shape);
    c.out_vars = std::move(out_vars);
    c.out_shape = std::move(out_shape);
    c.exact = true;
    c.rtable = std::move(table);
    const std::size_t rows = product_size(c.given_shape);
    const std::size_t cols = product_size(c.out_shape);
    if (c.rtable.size() != rows * cols)
        throw std::invalid_argument("conditional table size mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
        Rat sum = 0;
        for (std::size_t o = 0; o < cols; ++o) {
            const Rat& p = c.rtable[r * cols + o];
            if (p < 0) throw std::invalid_argument("negative conditional probability");
            sum += p;
        }
        if (sum != 1) throw std::invalid_argument("conditional row must sum to 1");
    }
    return c;
}

Conditional Conditional::from_reals(std::vector<std::string> given_vars,
                                    std::vector<int> given_shape,
                                    std::vector<std::string> out_vars, std::vector<int> out_shape,
                                    std::vector<double> table) {
    Conditional c;
    c.given_vars = std::move(given_vars);
    c.given_shape = std::move(given_shape);
    c.out_vars = std::move(out_vars);
    c.out_shape = std::move(out_shape);
    c.exact = false;
    c.dtable = std::move(table);
    const std::size_t rows = product_size(c.given_shape);
    const std::size_t cols = product_size(c.out_shape);
    if (c.dtable.size() != rows * cols)
        throw std::invalid_argument("conditional table size mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
        double sum = 0.0;
        for (std::size_t o = 0; o < cols; ++o) {
            double p = c.dtable[r * cols + o];
            if (p < 0.0) throw std::invalid_argument("negative conditional probability");
            sum += p;
        }
        if (std::abs(sum - 1.0) > kSumTol)
            throw std::invalid_argument("conditional row must sum to 1 within 1e-9");
    }
    return c;
}

double Conditional::entry(std::size_t given_flat, std::size_t out_flat) const {
    const std::size_t cols = exact ? rtable.size() : dtable.size();
    const std::size_t out_size = [&] {
        std::size_t n = 1;
        for (int s : out_shape) n *= static_cast<std::size_t>(s);
        return n;
    }();
    (void)cols;
    std::size_t i = given_flat * out_size + out_flat;
    return exact ? to_double(rtable[i]) : dtable[i];
}

JointDistribution extend(const JointDistribution& base, const Conditional& cond) {
    std::vector<int> given_pos;
    for (std::size_t i = 0; i < cond.given_vars.size(); ++i) {
        int p = base.var_index(cond.given_vars[i]);
        if (base.shape()[p] != cond.given_shape[i])
            throw std::invalid_argument("alphabet mismatch for '" + cond.given_vars[i] + "'");
        given_pos.push_back(p);
    }
    for (const auto& v : cond.out_vars)
        if (base.has_variable(v))
            throw std::invalid_argument("output variable already present: '" + v + "'");

    std::vector<std::string> names = base.variables();
    names.insert(names.end(), cond.out_vars.begin(), cond.out_vars.end());
    std::vector<int> shape = base.shape();
    shape.insert(shape.end(), cond.out_shape.begin(), cond.out_shape.end());

    std::size_t out_size = 1;
    for (int s : cond.out_shape) out_size *= static_cast<std::size_t>(s);

    std::vector<int> idx(base.variables().size());
    const bool exact = base.exact() && cond.exact;
    std::vector<Rat> rprobs;
    std::vector<double> dprobs;
    if (exact)
        rprobs.assign(base.table_size() * out_size, Rat(0));
    else
        dprobs.assign(base.table_size() * out_size, 0.0);

    for (std::size_t flat = 0; flat < base.table_size(); ++flat) {
        base.unflatten(flat, idx);
        std::size_t given_flat = 0;
        for (std::size_t k = 0; k < given_pos.size(); ++k)
            given_flat = given_flat * static_cast<std::size_t>(cond.given_shape[k]) +
                         static_cast<std::size_t>(idx[given_pos[k]]);
        for (std::size_t o = 0; o < out_size; ++o) {
            std::size_t j = flat * out_size + o;
            if (exact)
                rprobs[j] = base.prob_rat(flat) * cond.rtable[given_flat * out_size + o];
            else
                dprobs[j] = base.prob(flat) * cond.entry(given_flat, o);
        }
    }
    return exact ? JointDistribution::from_rationals(std::move(names), std::move(shape),
                                                     std::move(rprobs))
                 : JointDistribution::from_reals(std::move(names), std::move(shape),
                                                 std::move(dprobs));
}

JointDistribution add_function_variable(const JointDistribution& dist, const std::string& name,
                                        const std::string& of_var, std::span<const int> value_map,
                                        int alphabet_size) {
    int pos = dist.var_index(of_var);
    if (value_map.size() != static_cast<std::size_t>(dist.shape()[pos]))
        throw std::invalid_argument("value map size must match the source alphabet");
    for (int v : value_map)
        if (v < 0 || v >= alphabet_size) throw std::invalid_argument("function value out of range");

    std::vector<std::string> names = dist.variables();
    names.push_back(name);
    std::vector<int> shape = dist.shape();
    shape.push_back(alphabet_size);
    if (dist.has_variable(name))
        throw std::invalid_argument("variable already present: '" + name + "'");

    std::vector<int> idx(dist.variables().size());
    if (dist.exact()) {
        std::vector<Rat> probs(dist.table_size() * alphabet_size, Rat(0));
        for (std::size_t flat = 0; flat < dist.table_size(); ++flat) {
            dist.unflatten(flat, idx);
            probs[flat * alphabet_size + value_map[idx[pos]]] = dist.prob_rat(flat);
        }
        return JointDistribution::from_rationals(std::move(names), std::move(shape),
                                                 std::move(probs));
    }
    std::vector<double> probs(dist.table_size() * alphabet_size, 0.0);
    for (std::size_t flat = 0; flat < dist.table_size(); ++flat) {
        dist.unflatten(flat, idx);
        probs[flat * alphabet_size + value_map[idx[pos]]] = dist.prob(flat);
    }
    return JointDistribution::from_reals(std::move(names), std::move(shape), std::move(probs));
}

}  // namespace bcb
