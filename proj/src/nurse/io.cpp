#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mcga/nurse/domain.hpp"
#include "mcga/nurse/io.hpp"

namespace mcga::nurse {

namespace {

using nlohmann::json;

const char* preference_name(PreferenceClass p) {
    switch (p) {
        case PreferenceClass::Neutral: return "neutral";
        case PreferenceClass::DaysOnly: return "days_only";
        case PreferenceClass::NightsOnly: return "nights_only";
        case PreferenceClass::DaysImportant: return "days_important";
        case PreferenceClass::NightsImportant: return "nights_important";
        case PreferenceClass::DaysPreferred: return "days_preferred";
        case PreferenceClass::NightsPreferred: return "nights_preferred";
    }
    return "neutral";
}

PreferenceClass preference_from(const std::string& s) {
    if (s == "neutral") return PreferenceClass::Neutral;
    if (s == "days_only") return PreferenceClass::DaysOnly;
    if (s == "nights_only") return PreferenceClass::NightsOnly;
    if (s == "days_important") return PreferenceClass::DaysImportant;
    if (s == "nights_important") return PreferenceClass::NightsImportant;
    if (s == "days_preferred") return PreferenceClass::DaysPreferred;
    if (s == "nights_preferred") return PreferenceClass::NightsPreferred;
    throw std::invalid_argument("unknown preference class: " + s);
}

const char* dummy_name(DummyKind d) {
    switch (d) {
        case DummyKind::None: return "none";
        case DummyKind::WeekendDummy: return "weekend";
        case DummyKind::WeekdayDummy: return "weekday";
        case DummyKind::Bank: return "bank";
    }
    return "none";
}

DummyKind dummy_from(const std::string& s) {
    if (s == "none") return DummyKind::None;
    if (s == "weekend") return DummyKind::WeekendDummy;
    if (s == "weekday") return DummyKind::WeekdayDummy;
    if (s == "bank") return DummyKind::Bank;
    throw std::invalid_argument("unknown dummy kind: " + s);
}

}  // namespace

std::string to_json(const NurseInstance& instance) {
    json doc;
    doc["name"] = instance.name;
    json nurses = json::array();
    for (const NurseSpec& n : instance.nurses) {
        json j;
        j["id"] = n.id;
        j["grade"] = n.grade;
        j["days"] = n.day_shifts;
        j["nights"] = n.night_shifts;
        if (n.combined) j["combined"] = {n.combined->first, n.combined->second};
        j["preference"] = preference_name(n.preference);
        json reqs = json::array();
        for (const ShiftRequest& r : n.requests) reqs.push_back({r.shift, r.grade});
        j["requests"] = std::move(reqs);
        json hist;
        hist["last_week_bits"] = n.history.last_week_bits;
        hist["nights_last_week"] = n.history.nights_last_week;
        hist["nights_week_before"] = n.history.nights_week_before;
        hist["weekend_last_week"] = n.history.weekend_last_week;
        hist["last_week_cost"] = n.history.last_week_pattern_cost;
        j["history"] = std::move(hist);
        if (n.is_head) j["head"] = true;
        if (n.team) j["team"] = *n.team;
        if (n.dummy != DummyKind::None) j["dummy"] = dummy_name(n.dummy);
        nurses.push_back(std::move(j));
    }
    doc["nurses"] = std::move(nurses);
    json demand = json::array();
    for (const auto& row : instance.demand) demand.push_back(row);
    doc["demand"] = std::move(demand);
    doc["pij"] = instance.costs;
    return doc.dump(2);
}

NurseInstance nurse_instance_from_json(const std::string& text) {
    json doc = json::parse(text);
    NurseInstance instance;
    instance.name = doc.value("name", "unnamed");
    for (const json& j : doc.at("nurses")) {
        NurseSpec n;
        n.id = j.at("id").get<int>();
        n.grade = j.at("grade").get<int>();
        n.day_shifts = j.at("days").get<int>();
        n.night_shifts = j.at("nights").get<int>();
        if (j.contains("combined"))
            n.combined = std::make_pair(j["combined"][0].get<int>(), j["combined"][1].get<int>());
        n.preference = preference_from(j.value("preference", "neutral"));
        if (j.contains("requests"))
            for (const json& r : j["requests"])
                n.requests.push_back(ShiftRequest{r[0].get<int>(), r[1].get<int>()});
        if (j.contains("history")) {
            const json& h = j["history"];
            auto bits = h.at("last_week_bits").get<std::vector<std::uint8_t>>();
            if (bits.size() != kShiftCount)
                throw std::invalid_argument("last_week_bits must have 14 entries");
            std::copy(bits.begin(), bits.end(), n.history.last_week_bits.begin());
            n.history.nights_last_week = h.value("nights_last_week", false);
            n.history.nights_week_before = h.value("nights_week_before", false);
            n.history.weekend_last_week = h.value("weekend_last_week", false);
            n.history.last_week_pattern_cost = h.value("last_week_cost", 0);
        }
        n.is_head = j.value("head", false);
        if (j.contains("team")) n.team = j["team"].get<int>();
        n.dummy = dummy_from(j.value("dummy", "none"));
        instance.nurses.push_back(std::move(n));
    }
    const json& demand = doc.at("demand");
    if (demand.size() != kShiftCount) throw std::invalid_argument("demand must have 14 rows");
    for (std::size_t k = 0; k < kShiftCount; ++k) {
        if (demand[k].size() != kGradeCount)
            throw std::invalid_argument("demand rows must have 3 grades");
        for (std::size_t s = 0; s < kGradeCount; ++s)
            instance.demand[k][s] = demand[k][s].get<int>();
    }

    build_pattern_table(instance);
    if (doc.contains("pij")) {
        auto costs = doc["pij"].get<std::vector<std::vector<int>>>();
        if (costs.size() != instance.nurses.size())
            throw std::invalid_argument("pij rows must match nurse count");
        for (std::size_t i = 0; i < costs.size(); ++i)
            if (costs[i].size() != instance.feasible[i].size())
                throw std::invalid_argument("pij row not parallel to the feasible set");
        instance.costs = std::move(costs);
    } else {
        build_all_costs(instance);
    }
    instance.finalize();
    validate_instance(instance);
    return instance;
}

NurseInstance load_nurse_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return nurse_instance_from_json(buf.str());
}

void save_nurse_instance(const NurseInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(instance) << '\n';
}

}  // namespace mcga::nurse
