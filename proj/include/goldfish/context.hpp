#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace goldfish {

// Base class for everything the workbench can throw.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unknown_symbol_error : error {
    explicit unknown_symbol_error(const std::string& name)
        : error("unknown symbol: " + name) {}
};

// An ordered set of symbol names. The order is fixed at construction and
// determines the monomial order used by canonical forms, so two expressions
// can be compared only when they share a context.
class context {
public:
    explicit context(std::vector<std::string> names) : names_(std::move(names)) {
        for (std::size_t k = 0; k < names_.size(); ++k) {
            if (!index_.emplace(names_[k], static_cast<int>(k)).second)
                throw error("duplicate symbol: " + names_[k]);
        }
    }

    int size() const { return static_cast<int>(names_.size()); }

    const std::string& name(int idx) const { return names_.at(static_cast<std::size_t>(idx)); }

    // -1 when the name is not declared.
    int find(const std::string& name) const {
        auto it = index_.find(name);
        return it == index_.end() ? -1 : it->second;
    }

    int index_of(const std::string& name) const {
        int k = find(name);
        if (k < 0) throw unknown_symbol_error(name);
        return k;
    }

    bool has(const std::string& name) const { return find(name) >= 0; }

    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::map<std::string, int> index_;
};

using context_ptr = std::shared_ptr<const context>;

// Declared variables of a mechanical problem: time, positions, velocities and
// the optional wave-function / momentum / acceleration blocks, in the fixed
// order t < x1..xN < v1..vN < u < p1..pN < a1..aN < jets < E0.
//
// The acceleration placeholders a1..aN stand for the second derivatives while
// prolonging vector fields; they are eliminated before any zero test. "E0" is
// always declared so parsed expressions may mention the spectral constant.
class variable_set {
public:
    static constexpr const char* kEnergyConstant = "E0";

    variable_set() = default;  // empty; usable only after assignment

    // t, x1..xN, v1..vN, a1..aN, E0.
    static variable_set classical(int n) { return variable_set(n, false, false); }

    // classical plus momenta p1..pN.
    static variable_set with_momenta(int n) { return variable_set(n, true, false); }

    // t, x1..xN, u plus jet symbols of the wave function up to third order:
    // ut, ux<j>, utx<j>, ux<j>x<k> (j<=k), ux<j>x<k>x<l> (j<=k<=l), E0.
    static variable_set jet(int n) { return variable_set(n, false, true); }

    int particle_count() const { return n_; }
    const context_ptr& ctx() const { return ctx_; }

    int time() const { return time_; }
    int position(int k) const { return positions_.at(static_cast<std::size_t>(k)); }
    int velocity(int k) const { return velocities_.at(static_cast<std::size_t>(k)); }
    int momentum(int k) const { return momenta_.at(static_cast<std::size_t>(k)); }
    int accel(int k) const { return accels_.at(static_cast<std::size_t>(k)); }
    int wave() const { return wave_; }
    int energy_constant() const { return e0_; }

    bool has_momenta() const { return !momenta_.empty(); }
    bool has_accels() const { return !accels_.empty(); }
    bool has_jets() const { return wave_ >= 0; }

    const std::vector<int>& positions() const { return positions_; }
    const std::vector<int>& velocities() const { return velocities_; }
    const std::vector<int>& momenta() const { return momenta_; }
    const std::vector<int>& accels() const { return accels_; }

    // jet symbol lookups (valid when has_jets())
    int jet_ut() const { return jet_ut_; }
    int jet_ux(int j) const { return jet_ux_.at(static_cast<std::size_t>(j)); }
    int jet_utx(int j) const { return jet_utx_.at(static_cast<std::size_t>(j)); }
    int jet_uxx(int j, int k) const {
        if (j > k) std::swap(j, k);
        return jet_uxx_.at(static_cast<std::size_t>(j * n_ + k));
    }
    int jet_uxxx(int j, int k, int l) const;

    // True when idx is one of the velocity symbols.
    bool is_velocity(int idx) const {
        for (int v : velocities_)
            if (v == idx) return true;
        return false;
    }

private:
    variable_set(int n, bool momenta, bool jets);

    int n_ = 0;
    context_ptr ctx_;
    int time_ = -1, wave_ = -1, e0_ = -1;
    std::vector<int> positions_, velocities_, momenta_, accels_;
    int jet_ut_ = -1;
    std::vector<int> jet_ux_, jet_utx_, jet_uxx_, jet_uxxx_;
};

}  // namespace goldfish
