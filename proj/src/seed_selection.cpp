#include "evim/seed_selection.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <queue>

#include "evim/errors.hpp"
#include "evim/format.hpp"

namespace evim {

GainOracle::GainOracle(const InfluenceField &field, const SelectionOptions &options)
    : field_(&field), options_(options), mask_(field.node_count(), 0),
      row_offset_(field.node_count() + 1, 0) {
    const Digraph &t = field.topology();
    const std::size_t n = field.node_count();
    std::vector<double> credit(n, 0.0);
    std::vector<char> seen(n, 0);
    std::vector<NodeId> touched;
    for (NodeId x = 0; x < n; ++x) {
        touched.clear();
        auto touch = [&](NodeId v, double c) {
            if (v == x) {
                return;
            }
            if (!seen[v]) {
                seen[v] = 1;
                touched.push_back(v);
            }
            credit[v] += c;
        };
        for (EdgeId e : t.out_edges(x)) {
            const NodeId a = t.arc(e).dst;
            touch(a, field.value(e));
            if (options.level == Level::Two) {
                for (EdgeId f : t.out_edges(a)) {
                    touch(t.arc(f).dst, field.value(e) * field.value(f));
                }
            }
        }
        std::sort(touched.begin(), touched.end());
        for (NodeId v : touched) {
            rows_.push_back({v, credit[v]});
            credit[v] = 0.0;
            seen[v] = 0;
        }
        row_offset_[x + 1] = rows_.size();
    }
    sigma_ = 0.0;
}

double GainOracle::gain(NodeId x) const {
    if (x >= mask_.size()) {
        throw UnknownNode("node " + std::to_string(x) + " is not in the graph");
    }
    if (mask_[x]) {
        throw AlreadySeed("node " + std::to_string(x) + " is already a seed");
    }
    if (options_.gain == GainMode::Exact) {
        std::vector<NodeId> extended(seeds_);
        extended.push_back(x);
        return sigma_bel(*field_, extended, options_.level, options_.saturation) - sigma_;
    }
    double total = 1.0;
    for (std::size_t i = row_offset_[x]; i < row_offset_[x + 1]; ++i) {
        if (!mask_[rows_[i].target]) {
            total += rows_[i].credit;
        }
    }
    return total;
}

void GainOracle::add(NodeId x) {
    if (mask_.at(x)) {
        throw AlreadySeed("node " + std::to_string(x) + " is already a seed");
    }
    mask_[x] = 1;
    seeds_.push_back(x);
    sigma_ = sigma_bel(*field_, seeds_, options_.level, options_.saturation);
}

double GainOracle::sigma() const { return sigma_; }

namespace {

double closed_form_gain(const InfluenceField &field, std::span<const NodeId> seeds, NodeId x,
                        Level level) {
    seed_mask(field.node_count(), seeds); // validates ids
    GainOracle oracle(field, {level, GainMode::ClosedForm, Saturation::None});
    for (NodeId s : seeds) {
        if (!oracle.is_seed(s)) {
            oracle.add(s);
        }
    }
    return oracle.gain(x);
}

void check_k(std::size_t k, std::size_t n) {
    if (k < 1 || k > n) {
        throw KTooLarge("k = " + std::to_string(k) + " must lie in [1, " + std::to_string(n) + "]");
    }
}

struct QueueEntry {
    double gain;
    NodeId node;
    std::size_t round;
};

// Max-heap on gain; equal gains put the smaller id on top.
struct QueueOrder {
    bool operator()(const QueueEntry &a, const QueueEntry &b) const {
        return a.gain < b.gain || (a.gain == b.gain && a.node > b.node);
    }
};

} // namespace

double marginal_gain_l1(const InfluenceField &field, std::span<const NodeId> seeds, NodeId x) {
    return closed_form_gain(field, seeds, x, Level::One);
}

double marginal_gain_l2(const InfluenceField &field, std::span<const NodeId> seeds, NodeId x) {
    return closed_form_gain(field, seeds, x, Level::Two);
}

SeedResult celf_select(const InfluenceField &field, std::size_t k,
                       const SelectionOptions &options) {
    check_k(k, field.node_count());
    const auto start = std::chrono::steady_clock::now();
    GainOracle oracle(field, options);
    SeedResult result;

    std::vector<QueueEntry> initial;
    initial.reserve(field.node_count());
    for (NodeId x = 0; x < field.node_count(); ++x) {
        initial.push_back({oracle.gain(x), x, 0});
    }
    result.gain_evaluations = initial.size();
    std::priority_queue<QueueEntry, std::vector<QueueEntry>, QueueOrder> queue(
        QueueOrder{}, std::move(initial));

    while (result.seeds.size() < k) {
        QueueEntry top = queue.top();
        queue.pop();
        if (top.round == result.seeds.size()) {
            oracle.add(top.node);
            result.seeds.push_back(top.node);
            result.marginal_gains.push_back(top.gain);
            result.sigma_curve.push_back(oracle.sigma());
            continue;
        }
        top.gain = oracle.gain(top.node);
        top.round = result.seeds.size();
        ++result.gain_evaluations;
        queue.push(top);
    }
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

SeedResult naive_greedy(const InfluenceField &field, std::size_t k,
                        const SelectionOptions &options) {
    check_k(k, field.node_count());
    const auto start = std::chrono::steady_clock::now();
    GainOracle oracle(field, options);
    SeedResult result;
    while (result.seeds.size() < k) {
        NodeId best = 0;
        double best_gain = 0.0;
        bool found = false;
        for (NodeId x = 0; x < field.node_count(); ++x) {
            if (oracle.is_seed(x)) {
                continue;
            }
            const double g = oracle.gain(x);
            ++result.gain_evaluations;
            if (!found || g > best_gain) {
                best = x;
                best_gain = g;
                found = true;
            }
        }
        oracle.add(best);
        result.seeds.push_back(best);
        result.marginal_gains.push_back(best_gain);
        result.sigma_curve.push_back(oracle.sigma());
    }
    result.elapsed = std::chrono::steady_clock::now() - start;
    return result;
}

ExhaustiveResult exhaustive_opt(const InfluenceField &field, std::size_t k, Level level,
                                Saturation saturation) {
    const std::size_t n = field.node_count();
    check_k(k, n);
    double combinations = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
        combinations = combinations * static_cast<double>(n - i) / static_cast<double>(i + 1);
    }
    if (combinations > kEnumerationLimit) {
        throw TooLargeToEnumerate("C(" + std::to_string(n) + ", " + std::to_string(k) +
                                  ") subsets exceed the enumeration limit");
    }
    std::vector<NodeId> subset(k);
    std::iota(subset.begin(), subset.end(), NodeId{0});
    ExhaustiveResult best{subset, sigma_bel(field, subset, level, saturation)};
    while (true) {
        // Advance to the next k-combination in lexicographic order.
        std::size_t i = k;
        while (i > 0 && subset[i - 1] == n - k + i - 1) {
            --i;
        }
        if (i == 0) {
            break;
        }
        ++subset[i - 1];
        for (std::size_t j = i; j < k; ++j) {
            subset[j] = subset[j - 1] + 1;
        }
        const double s = sigma_bel(field, subset, level, saturation);
        if (s > best.sigma) {
            best = {subset, s};
        }
    }
    return best;
}

void write_seeds_csv(std::ostream &out, std::span<const std::string> names,
                     const SeedResult &result) {
    out << "rank,node,marginal_gain,sigma_cumulative\n";
    for (std::size_t i = 0; i < result.seeds.size(); ++i) {
        out << i + 1 << ',' << names[result.seeds[i]] << ','
            << format_real(result.marginal_gains[i]) << ',' << format_real(result.sigma_curve[i])
            << '\n';
    }
}

} // namespace evim
