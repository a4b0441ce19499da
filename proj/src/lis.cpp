#include "ultralis/lis.hpp"

#include <utility>

namespace ultralis {

FirstPassage first_passage(const LisResult& lr) {
    FirstPassage fp;
    fp.times.assign(lr.length() + 1, 0);
    for (std::size_t t = 1; t < lr.lengths.size(); ++t) {
        if (lr.lengths[t] > lr.lengths[t - 1]) fp.times[lr.lengths[t]] = t;
    }
    return fp;
}

SplitCheck verify_split_recursion(const WalkSample& w, std::size_t n) {
    const SplitPoint split = sigma(w, n);
    SplitCheck c;
    c.n = n;
    c.sigma = split.sigma;
    c.up = split.up;
    c.lis_before = lis_length(w, 1, split.sigma - 1);
    c.lis_after = lis_length(w, split.sigma, n);
    c.lis_total = lis_length(w, 1, n);
    const std::size_t predicted = c.up ? c.lis_before + c.lis_after : std::max(c.lis_before, c.lis_after);
    c.holds = predicted == c.lis_total;
    return c;
}

std::size_t greedy_length(const WalkSample& w, std::size_t n) {
    if (n < 1 || n > w.size()) throw std::out_of_range("greedy_length: n outside 1..walk length");
    // A segment [first, last] of positions depends on steps first+1..last.
    std::vector<std::pair<std::size_t, std::size_t>> stack{{1, n}};
    std::size_t total = 0;
    while (!stack.empty()) {
        const auto [first, last] = stack.back();
        stack.pop_back();
        if (last == first) {
            ++total;
            continue;
        }
        const std::size_t split = w.argmax_step(first + 1, last);
        const std::pair<std::size_t, std::size_t> left{first, split - 1};
        const std::pair<std::size_t, std::size_t> right{split, last};
        if (w.sign(split) > 0) {
            stack.push_back(left);
            stack.push_back(right);
        } else if (split - first >= last - split + 1) {
            stack.push_back(left);
        } else {
            stack.push_back(right);
        }
    }
    return total;
}

}  // namespace ultralis
