#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "evim/influence.hpp"

namespace evim {

/// Marginal gain used by the optimizers.
///   ClosedForm: MG_S(x) = 1 + sum over v outside S ∪ {x} of c(x, v), where
///     c(x, v) = Inf(x, v) (one level) or Inf(x, v) + sum over a of
///     Inf(x, a) Inf(a, v) (two levels).
///   Exact: σ_Bel(S ∪ {x}) - σ_Bel(S). Differs from the closed form when x
///     already receives influence from S.
enum class GainMode { ClosedForm, Exact };

struct SelectionOptions {
    Level level = Level::One;
    GainMode gain = GainMode::ClosedForm;
    /// Used for the reported spread curve and for Exact gains.
    Saturation saturation = Saturation::None;
};

struct SeedResult {
    std::vector<NodeId> seeds;
    std::vector<double> marginal_gains; ///< gain of each seed when it was selected
    std::vector<double> sigma_curve;    ///< σ_Bel of each seed-list prefix
    std::chrono::nanoseconds elapsed{0};
    std::size_t gain_evaluations = 0;
};

/// Evaluates marginal gains against a growing seed set. Two-level rows
/// c(x, ·) are precomputed once.
class GainOracle {
  public:
    GainOracle(const InfluenceField &field, const SelectionOptions &options);

    std::size_t node_count() const { return field_->node_count(); }
    bool is_seed(NodeId x) const { return mask_[x] != 0; }
    std::span<const NodeId> seeds() const { return seeds_; }

    /// Throws AlreadySeed if x is already selected.
    double gain(NodeId x) const;
    void add(NodeId x);
    double sigma() const;

  private:
    struct Term {
        NodeId target;
        double credit;
    };

    const InfluenceField *field_;
    SelectionOptions options_;
    std::vector<char> mask_;
    std::vector<NodeId> seeds_;
    std::vector<std::size_t> row_offset_;
    std::vector<Term> rows_;
    double sigma_ = 0.0;
};

/// Closed-form gain of adding x to `seeds` (one level). Throws AlreadySeed.
double marginal_gain_l1(const InfluenceField &field, std::span<const NodeId> seeds, NodeId x);
/// Closed-form gain of adding x to `seeds` (two levels). Throws AlreadySeed.
double marginal_gain_l2(const InfluenceField &field, std::span<const NodeId> seeds, NodeId x);

/// Lazy-forward greedy (CELF). Ties in gain break toward the smaller NodeId.
/// Throws KTooLarge unless 1 <= k <= |V|.
SeedResult celf_select(const InfluenceField &field, std::size_t k,
                       const SelectionOptions &options = {});

/// Plain greedy: every candidate re-evaluated each round. Same tie rule.
SeedResult naive_greedy(const InfluenceField &field, std::size_t k,
                        const SelectionOptions &options = {});

struct ExhaustiveResult {
    std::vector<NodeId> seeds;
    double sigma = 0.0;
};

inline constexpr double kEnumerationLimit = 1e6;

/// Global optimum of σ_Bel over all k-subsets. Throws TooLargeToEnumerate
/// when C(|V|, k) exceeds 10^6, KTooLarge when k > |V|.
ExhaustiveResult exhaustive_opt(const InfluenceField &field, std::size_t k, Level level,
                                Saturation saturation = Saturation::None);

/// CSV `rank,node,marginal_gain,sigma_cumulative`.
void write_seeds_csv(std::ostream &out, std::span<const std::string> names,
                     const SeedResult &result);

} // namespace evim
