#include "leo/bandit.hpp"

#include <algorithm>

#include "leo/csv.hpp"

namespace leo {

BanditTable::BanditTable(std::string label, int arms, double gamma)
    : label_(std::move(label)), gamma_(gamma), values_(arms, 0.0), counts_(arms, 0) {}

int BanditTable::best_arm() const {
    int best = 0;
    for (int a = 1; a < size(); ++a) {
        if (values_[a] > values_[best]) best = a;
    }
    return best;
}

double BanditTable::best_value() const { return values_.empty() ? 0.0 : values_[best_arm()]; }

void BanditTable::update(int arm, double reward) {
    const double best = best_value();
    auto& count = counts_.at(arm);
    ++count;
    values_[arm] = weighted_update(values_[arm], count, reward, gamma_, best);
    ++updates_;
}

int select(const BanditTable& table, double epsilon, Rng& rng) {
    if (table.size() == 0) throw std::invalid_argument("select: agent '" + table.label() + "' has no arms");
    if (uniform01(rng) <= epsilon) return static_cast<int>(uniform_index(rng, static_cast<std::size_t>(table.size())));
    return table.best_arm();
}

void update_micro(BanditTable& table, int arm, double reward) { table.update(arm, reward); }

MacroTable::Entry MacroTable::entry(const ArmTriple& arms) const {
    const auto it = entries_.find(arms);
    return it == entries_.end() ? Entry{} : it->second;
}

void MacroTable::update(const ArmTriple& arms, double reward) {
    Entry& e = entries_[arms];
    ++e.count;
    e.value = weighted_update(e.value, e.count, reward, gamma_, best_);
    best_ = std::max(best_, e.value);
    ++updates_;
}

void update_macro(MacroTable& table, const ArmTriple& arms, double reward) { table.update(arms, reward); }

void write_table_csv(std::ostream& out, const std::vector<const BanditTable*>& tables,
                     const std::vector<std::vector<std::string>>& arm_summaries, bool header) {
    if (header) out << "agent,arm,summary,value,count\n";
    for (std::size_t i = 0; i < tables.size(); ++i) {
        const BanditTable& table = *tables[i];
        for (int a = 0; a < table.size(); ++a) {
            const std::string summary =
                i < arm_summaries.size() && a < static_cast<int>(arm_summaries[i].size()) ? arm_summaries[i][a] : "";
            out << csv_field(table.label()) << ',' << a << ',' << csv_field(summary) << ',' << format_double(table.value(a))
                << ',' << table.count(a) << '\n';
        }
    }
}

void write_macro_csv(std::ostream& out, const std::vector<const MacroTable*>& tables, bool header) {
    if (header) out << "agent,arm,summary,value,count\n";
    for (const MacroTable* table : tables) {
        for (const auto& [arms, entry] : table->entries()) {
            const std::string key =
                std::to_string(arms.power) + "/" + std::to_string(arms.beam) + "/" + std::to_string(arms.channel);
            out << csv_field(table->label()) << ',' << key << ",power/beam/channel," << format_double(entry.value) << ','
                << entry.count << '\n';
        }
    }
}

}  // namespace leo
