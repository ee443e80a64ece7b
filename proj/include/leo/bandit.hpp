#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "leo/action_space.hpp"
#include "leo/random.hpp"

namespace leo {

// Count-weighted value update shared by micro and macro tables:
//   N <- N + 1;  v <- v + (reward + gamma * (best - v)) / N
// where `best` is the table maximum read before the write.
inline double weighted_update(double value, std::int64_t count_after, double reward, double gamma, double best) {
    return value + (reward + gamma * (best - value)) / static_cast<double>(count_after);
}

// One micro-agent's table over a dense arm range. Unvisited arms hold value 0.
class BanditTable {
public:
    BanditTable() = default;
    BanditTable(std::string label, int arms, double gamma);

    const std::string& label() const { return label_; }
    int size() const { return static_cast<int>(values_.size()); }
    double gamma() const { return gamma_; }
    double value(int arm) const { return values_.at(arm); }
    std::int64_t count(int arm) const { return counts_.at(arm); }
    const std::vector<double>& values() const { return values_; }
    const std::vector<std::int64_t>& counts() const { return counts_; }
    std::int64_t total_updates() const { return updates_; }

    // Lowest index among the maximal values.
    int best_arm() const;
    double best_value() const;

    void set_value(int arm, double value) { values_.at(arm) = value; }
    void set_count(int arm, std::int64_t count) { counts_.at(arm) = count; }

    void update(int arm, double reward);

private:
    std::string label_;
    double gamma_ = 0.0;
    std::vector<double> values_;
    std::vector<std::int64_t> counts_;
    std::int64_t updates_ = 0;
};

// Epsilon-greedy: a uniform draw <= epsilon explores uniformly, otherwise the
// argmax is taken. Throws std::invalid_argument on an empty table.
int select(const BanditTable& table, double epsilon, Rng& rng);

// Micro-agent update with the satellite's own rate.
void update_micro(BanditTable& table, int arm, double reward);

// Per-LEO table over assembled (power, beam, channel) policies. Tracked for
// diagnostics; selection never reads it.
class MacroTable {
public:
    struct Entry {
        double value = 0.0;
        std::int64_t count = 0;
    };

    MacroTable() = default;
    MacroTable(std::string label, double gamma) : label_(std::move(label)), gamma_(gamma) {}

    const std::string& label() const { return label_; }
    double gamma() const { return gamma_; }
    const std::map<ArmTriple, Entry>& entries() const { return entries_; }
    Entry entry(const ArmTriple& arms) const;
    double best_value() const { return best_; }
    std::int64_t total_updates() const { return updates_; }

    void update(const ArmTriple& arms, double reward);

private:
    std::string label_;
    double gamma_ = 0.0;
    std::map<ArmTriple, Entry> entries_;
    double best_ = 0.0;  // unvisited entries count as 0
    std::int64_t updates_ = 0;
};

// Macro-agent update with the total network rate.
void update_macro(MacroTable& table, const ArmTriple& arms, double reward);

// Table dump: agent label, arm index, decoded arm summary, value, count.
void write_table_csv(std::ostream& out, const std::vector<const BanditTable*>& tables,
                     const std::vector<std::vector<std::string>>& arm_summaries, bool header = true);
void write_macro_csv(std::ostream& out, const std::vector<const MacroTable*>& tables, bool header = true);

}  // namespace leo
