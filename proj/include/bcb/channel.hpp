// Two-receiver broadcast channel kernels p(y1,y2|x) and channel composition.
#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bcb/distribution.hpp"
#include "bcb/rational.hpp"

namespace bcb {

class BroadcastChannel {
  public:
    static BroadcastChannel from_rationals(int input_size, int y1_size, int y2_size,
                                           std::vector<Rat> kernel);
    static BroadcastChannel from_reals(int input_size, int y1_size, int y2_size,
                                       std::vector<double> kernel);
    // Deterministic channel from an explicit map x -> (y1, y2).
    static BroadcastChannel deterministic(int y1_size, int y2_size,
                                          std::vector<std::pair<int, int>> map);

    // Text format: header `channel X=<n> Y1=<m1> Y2=<m2>`, one line per input
    // with m1*m2 probabilities in (y1-major, y2-minor) order, `#` comments.
    static BroadcastChannel parse(std::string_view text);
    static BroadcastChannel load(const std::string& path);
    std::string format() const;

    int input_size() const { return input_size_; }
    int y1_size() const { return y1_size_; }
    int y2_size() const { return y2_size_; }
    bool deterministic_flag() const { return deterministic_; }
    bool exact() const { return exact_; }

    double kernel(int x, int y1, int y2) const;
    const Rat& kernel_rat(int x, int y1, int y2) const;
    // For deterministic channels: the unique output pair of x.
    std::pair<int, int> output_of(int x) const;

  private:
    BroadcastChannel() = default;
    void validate();
    std::size_t at(int x, int y1, int y2) const {
        return (static_cast<std::size_t>(x) * y1_size_ + y1) * y2_size_ + y2;
    }

    int input_size_ = 0, y1_size_ = 0, y2_size_ = 0;
    bool deterministic_ = false;
    bool exact_ = false;
    std::vector<Rat> rkernel_;
    std::vector<double> dkernel_;
};

// Joint over aux.variables + {Y1, Y2} with p(..., y1, y2) = p(...) p(y1,y2|x).
// `aux` must contain a variable named `x_name` whose alphabet matches the
// channel input; pre-channel variables are conditionally independent of the
// outputs given X by construction.
JointDistribution compose(const JointDistribution& aux, const BroadcastChannel& channel,
                          std::string_view x_name = "X", std::string y1_name = "Y1",
                          std::string y2_name = "Y2");

}  // namespace bcb
