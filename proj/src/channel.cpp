#include "bcb/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bcb {

void BroadcastChannel::validate() {
    if (input_size_ < 1 || y1_size_ < 1 || y2_size_ < 1)
        throw std::invalid_argument("channel alphabet sizes must be >= 1");
    const std::size_t row = static_cast<std::size_t>(y1_size_) * y2_size_;
    const std::size_t expect = row * input_size_;
    if ((exact_ ? rkernel_.size() : dkernel_.size()) != expect)
        throw std::invalid_argument("channel kernel size mismatch");

    deterministic_ = true;
    for (int x = 0; x < input_size_; ++x) {
        int ones = 0, nonzeros = 0;
        if (exact_) {
            Rat sum = 0;
            for (std::size_t j = 0; j < row; ++j) {
                const Rat& p = rkernel_[x * row + j];
                if (p < 0) throw std::invalid_argument("negative kernel entry");
                sum += p;
                if (p > 0) ++nonzeros;
                if (p == 1) ++ones;
            }
            if (sum != 1) throw std::invalid_argument("kernel row must sum to 1");
        } else {
            double sum = 0.0;
            for (std::size_t j = 0; j < row; ++j) {
                double p = dkernel_[x * row + j];
                if (p < 0.0) throw std::invalid_argument("negative kernel entry");
                sum += p;
                if (p > 0.0) ++nonzeros;
                if (p == 1.0) ++ones;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw std::invalid_argument("kernel row must sum to 1 within 1e-9");
        }
        if (!(ones == 1 && nonzeros == 1)) deterministic_ = false;
    }
}

BroadcastChannel BroadcastChannel::from_rationals(int input_size, int y1_size, int y2_size,
                                                  std::vector<Rat> kernel) {
    BroadcastChannel c;
    c.input_size_ = input_size;
    c.y1_size_ = y1_size;
    c.y2_size_ = y2_size;
    c.exact_ = true;
    c.rkernel_ = std::move(kernel);
    c.validate();
    return c;
}

BroadcastChannel BroadcastChannel::from_reals(int input_size, int y1_size, int y2_size,
                                              std::vector<double> kernel) {
    BroadcastChannel c;
    c.input_size_ = input_size;
    c.y1_size_ = y1_size;
    c.y2_size_ = y2_size;
    c.exact_ = false;
    c.dkernel_ = std::move(kernel);
    c.validate();
    return c;
}

BroadcastChannel BroadcastChannel::deterministic(int y1_size, int y2_size,
                                                 std::vector<std::pair<int, int>> map) {
    const int nx = static_cast<int>(map.size());
    std::vector<Rat> kernel(static_cast<std::size_t>(nx) * y1_size * y2_size, Rat(0));
    for (int x = 0; x < nx; ++x) {
        auto [y1, y2] = map[x];
        if (y1 < 0 || y1 >= y1_size || y2 < 0 || y2 >= y2_size)
            throw std::invalid_argument("deterministic map output out of range");
        kernel[(static_cast<std::size_t>(x) * y1_size + y1) * y2_size + y2] = 1;
    }
    return from_rationals(nx, y1_size, y2_size, std::move(kernel));
}

double BroadcastChannel::kernel(int x, int y1, int y2) const {
    return exact_ ? to_double(rkernel_[at(x, y1, y2)]) : dkernel_[at(x, y1, y2)];
}

const Rat& BroadcastChannel::kernel_rat(int x, int y1, int y2) const {
    if (!exact_) throw std::logic_error("channel is not stored exactly");
    return rkernel_[at(x, y1, y2)];
}

std::pair<int, int> BroadcastChannel::output_of(int x) const {
    if (!deterministic_) throw std::logic_error("output_of requires a deterministic channel");
    for (int y1 = 0; y1 < y1_size_; ++y1)
        for (int y2 = 0; y2 < y2_size_; ++y2)
            if (kernel(x, y1, y2) == 1.0) return {y1, y2};
    throw std::logic_error("deterministic channel row without a unit entry");
}

BroadcastChannel BroadcastChannel::parse(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    int nx = -1, m1 = -1, m2 = -1;
    std::vector<std::string> prob_tokens;

    auto fail = [&](const std::string& msg) {
        throw std::invalid_argument("channel line " + std::to_string(lineno) + ": " + msg);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (nx < 0) {
            if (tok != "channel") fail("expected 'channel' header");
            auto read_dim = [&](const char* key) {
                std::string spec;
                if (!(ls >> spec)) fail(std::string("missing ") + key);
                std::string prefix = std::string(key) + "=";
                if (spec.rfind(prefix, 0) != 0) fail("expected " + prefix + "<n>");
                return std::stoi(spec.substr(prefix.size()));
            };
            nx = read_dim("X");
            m1 = read_dim("Y1");
            m2 = read_dim("Y2");
            continue;
        }
        prob_tokens.push_back(tok);
        while (ls >> tok) prob_tokens.push_back(tok);
    }
    if (nx < 0) throw std::invalid_argument("channel file has no header");
    const std::size_t expect = static_cast<std::size_t>(nx) * m1 * m2;
    if (prob_tokens.size() != expect)
        throw std::invalid_argument("channel file: expected " + std::to_string(expect) +
                                    " probabilities, got " + std::to_string(prob_tokens.size()));

    bool all_rational = true;
    std::vector<Rat> rkernel(expect);
    for (std::size_t i = 0; i < expect; ++i) {
        auto q = parse_rational(prob_tokens[i]);
        if (!q) throw std::invalid_argument("channel file: bad probability '" + prob_tokens[i] + "'");
        if (prob_tokens[i].find('/') == std::string::npos && !is_integer(*q)) all_rational = false;
        rkernel[i] = *q;
    }
    if (all_rational) return from_rationals(nx, m1, m2, std::move(rkernel));
    std::vector<double> dkernel(expect);
    for (std::size_t i = 0; i < expect; ++i) dkernel[i] = to_double(rkernel[i]);
    return from_reals(nx, m1, m2, std::move(dkernel));
}

BroadcastChannel BroadcastChannel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open channel file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

std::string BroadcastChannel::format() const {
    std::ostringstream out;
    out << "channel X=" << input_size_ << " Y1=" << y1_size_ << " Y2=" << y2_size_ << '\n';
    for (int x = 0; x < input_size_; ++x) {
        for (int y1 = 0; y1 < y1_size_; ++y1) {
            for (int y2 = 0; y2 < y2_size_; ++y2) {
                if (y1 || y2) out << ' ';
                if (exact_) {
                    out << rat_to_string(rkernel_[at(x, y1, y2)]);
                } else {
                    char buf[40];
                    std::snprintf(buf, sizeof buf, "%.17g", dkernel_[at(x, y1, y2)]);
                    out << buf;
                }
            }
        }
        out << '\n';
    }
    return out.str();
}

JointDistribution compose(const JointDistribution& aux, const BroadcastChannel& channel,
                          std::string_view x_name, std::string y1_name, std::string y2_name) {
    const int xpos = aux.var_index(x_name);
    if (aux.shape()[xpos] != channel.input_size())
        throw std::invalid_argument("compose: input alphabet mismatch");
    if (aux.has_variable(y1_name) || aux.has_variable(y2_name))
        throw std::invalid_argument("compose: aux already contains an output variable name");

    std::vector<std::string> names = aux.variables();
    names.push_back(std::move(y1_name));
    names.push_back(std::move(y2_name));
    std::vector<int> shape = aux.shape();
    shape.push_back(channel.y1_size());
    shape.push_back(channel.y2_size());

    const std::size_t out_size = static_cast<std::size_t>(channel.y1_size()) * channel.y2_size();
    std::vector<int> idx(aux.variables().size());
    const bool exact = aux.exact() && channel.exact();
    if (exact) {
        std::vector<Rat> probs(aux.table_size() * out_size, Rat(0));
        for (std::size_t flat = 0; flat < aux.table_size(); ++flat) {
            aux.unflatten(flat, idx);
            const int x = idx[xpos];
            for (int y1 = 0; y1 < channel.y1_size(); ++y1)
                for (int y2 = 0; y2 < channel.y2_size(); ++y2)
                    probs[(flat * channel.y1_size() + y1) * channel.y2_size() + y2] =
                        aux.prob_rat(flat) * channel.kernel_rat(x, y1, y2);
        }
        return JointDistribution::from_rationals(std::move(names), std::move(shape),
                                                 std::move(probs));
    }
    std::vector<double> probs(aux.table_size() * out_size, 0.0);
    for (std::size_t flat = 0; flat < aux.table_size(); ++flat) {
        aux.unflatten(flat, idx);
        const int x = idx[xpos];
        for (int y1 = 0; y1 < channel.y1_size(); ++y1)
            for (int y2 = 0; y2 < channel.y2_size(); ++y2)
                probs[(flat * channel.y1_size() + y1) * channel.y2_size() + y2] =
                    aux.prob(flat) * channel.kernel(x, y1, y2);
    }
    return JointDistribution::from_reals(std::move(names), std::move(shape), std::move(probs));
}

}  // namespace bcb
