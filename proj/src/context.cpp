#include "goldfish/context.hpp"

#include <algorithm>

namespace goldfish {

variable_set::variable_set(int n, bool momenta, bool jets) : n_(n) {
    if (n < 1) throw error("variable_set: particle count must be >= 1");

    std::vector<std::string> names;
    names.push_back("t");
    for (int k = 1; k <= n; ++k) names.push_back("x" + std::to_string(k));
    if (!jets) {
        for (int k = 1; k <= n; ++k) names.push_back("v" + std::to_string(k));
        if (momenta)
            for (int k = 1; k <= n; ++k) names.push_back("p" + std::to_string(k));
        for (int k = 1; k <= n; ++k) names.push_back("a" + std::to_string(k));
    } else {
        names.push_back("u");
        names.push_back("ut");
        for (int j = 1; j <= n; ++j) names.push_back("ux" + std::to_string(j));
        for (int j = 1; j <= n; ++j) names.push_back("utx" + std::to_string(j));
        for (int j = 1; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                names.push_back("ux" + std::to_string(j) + "x" + std::to_string(k));
        for (int j = 1; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                for (int l = k; l <= n; ++l)
                    names.push_back("ux" + std::to_string(j) + "x" + std::to_string(k) + "x" +
                                    std::to_string(l));
    }
    names.push_back(kEnergyConstant);

    ctx_ = std::make_shared<context>(std::move(names));

    time_ = ctx_->index_of("t");
    for (int k = 1; k <= n; ++k) positions_.push_back(ctx_->index_of("x" + std::to_string(k)));
    if (!jets) {
        for (int k = 1; k <= n; ++k) velocities_.push_back(ctx_->index_of("v" + std::to_string(k)));
        if (momenta)
            for (int k = 1; k <= n; ++k)
                momenta_.push_back(ctx_->index_of("p" + std::to_string(k)));
        for (int k = 1; k <= n; ++k) accels_.push_back(ctx_->index_of("a" + std::to_string(k)));
    } else {
        wave_ = ctx_->index_of("u");
        jet_ut_ = ctx_->index_of("ut");
        for (int j = 1; j <= n; ++j) jet_ux_.push_back(ctx_->index_of("ux" + std::to_string(j)));
        for (int j = 1; j <= n; ++j) jet_utx_.push_back(ctx_->index_of("utx" + std::to_string(j)));
        jet_uxx_.assign(static_cast<std::size_t>(n * n), -1);
        for (int j = 1; j <= n; ++j)
            for (int k = j; k <= n; ++k) {
                int idx = ctx_->index_of("ux" + std::to_string(j) + "x" + std::to_string(k));
                jet_uxx_[static_cast<std::size_t>((j - 1) * n + (k - 1))] = idx;
            }
        for (int j = 1; j <= n; ++j)
            for (int k = j; k <= n; ++k)
                for (int l = k; l <= n; ++l)
                    jet_uxxx_.push_back(ctx_->index_of("ux" + std::to_string(j) + "x" +
                                                       std::to_string(k) + "x" +
                                                       std::to_string(l)));
    }
    e0_ = ctx_->index_of(kEnergyConstant);
}

int variable_set::jet_uxxx(int j, int k, int l) const {
    int idx[3] = {j, k, l};
    std::sort(std::begin(idx), std::end(idx));
    int pos = 0;
    for (int a = 0; a < n_; ++a)
        for (int b = a; b < n_; ++b)
            for (int c = b; c < n_; ++c) {
                if (a == idx[0] && b == idx[1] && c == idx[2])
                    return jet_uxxx_.at(static_cast<std::size_t>(pos));
                ++pos;
            }
    throw error("jet_uxxx: index out of range");
}

}  // namespace goldfish
