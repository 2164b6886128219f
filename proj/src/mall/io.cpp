#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mcga/mall/domain.hpp"
#include "mcga/mall/io.hpp"

namespace mcga::mall {

namespace {
using nlohmann::json;
}

std::string to_json(const MallInstance& instance) {
    json doc;
    doc["name"] = instance.name;
    doc["locations"] = instance.locations;
    doc["areas"] = instance.area_count;
    doc["shop_types"] = instance.shop_types;
    doc["area_of"] = instance.area_of;
    doc["groups"] = instance.groups;
    doc["size_caps"] = {{"small", instance.max_small},
                        {"medium", instance.max_medium},
                        {"large", instance.max_large}};
    json counts = json::array();
    for (int j = 0; j < instance.shop_types; ++j)
        counts.push_back({{"min", instance.min_count[static_cast<std::size_t>(j)]},
                          {"ideal", instance.ideal_count[static_cast<std::size_t>(j)]},
                          {"max", instance.max_count[static_cast<std::size_t>(j)]}});
    doc["shop_counts"] = std::move(counts);
    doc["attractiveness"] = instance.attractiveness;
    doc["fixed_rent"] = instance.fixed_rent;
    doc["bonus"] = {{"base", instance.bonus_base}, {"factor", instance.bonus_factor}};
    if (instance.size_efficiency_override)
        doc["size_efficiency"] = *instance.size_efficiency_override;
    return doc.dump(2);
}

MallInstance mall_instance_from_json(const std::string& text) {
    json doc = json::parse(text);
    MallInstance inst;
    inst.name = doc.value("name", "unnamed");
    inst.locations = doc.at("locations").get<int>();
    inst.area_count = doc.at("areas").get<int>();
    inst.shop_types = doc.at("shop_types").get<int>();
    inst.area_of = doc.at("area_of").get<std::vector<int>>();
    inst.groups = doc.at("groups").get<std::vector<std::vector<int>>>();
    const json& caps = doc.at("size_caps");
    inst.max_small = caps.at("small").get<int>();
    inst.max_medium = caps.at("medium").get<int>();
    inst.max_large = caps.at("large").get<int>();
    for (const json& c : doc.at("shop_counts")) {
        inst.min_count.push_back(c.at("min").get<int>());
        inst.ideal_count.push_back(c.at("ideal").get<int>());
        inst.max_count.push_back(c.at("max").get<int>());
    }
    inst.attractiveness = doc.at("attractiveness").get<std::vector<double>>();
    inst.fixed_rent = doc.at("fixed_rent").get<std::vector<std::vector<double>>>();
    if (doc.contains("bonus")) {
        inst.bonus_base = doc["bonus"].value("base", 10.0);
        inst.bonus_factor = doc["bonus"].value("factor", 1.2);
    }
    if (doc.contains("size_efficiency"))
        inst.size_efficiency_override = doc["size_efficiency"].get<std::vector<double>>();
    inst.finalize();
    validate_instance(inst);
    return inst;
}

MallInstance load_mall_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return mall_instance_from_json(buf.str());
}

void save_mall_instance(const MallInstance& instance, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_json(instance) << '\n';
}

void save_mall_solution(const Layout& layout, const MallInstance& instance,
                        const std::string& path) {
    MallEval eval = evaluate_layout(layout, instance);
    LayoutStats stats = layout_stats(layout, instance);
    json doc;
    doc["instance"] = instance.name;
    doc["assignment"] = layout;
    doc["rent"] = eval.rent;
    doc["violation"] = eval.violation;
    doc["feasible"] = eval.feasible;
    json breakdown = json::array();
    for (int i = 0; i < instance.locations; ++i) {
        int j = layout[static_cast<std::size_t>(i)];
        int k = instance.area_of[static_cast<std::size_t>(i)];
        int complete = 0;
        for (int l : instance.groups_of_type[static_cast<std::size_t>(j)])
            if (stats.group_complete[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)]) ++complete;
        json row;
        row["location"] = i;
        row["type"] = j;
        row["area"] = k;
        row["attractiveness"] = instance.attractiveness[static_cast<std::size_t>(k)];
        row["group_bonus"] = instance.group_bonus(complete);
        row["size_efficiency"] = size_efficiency(
            stats.per_area[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)], instance);
        row["count_efficiency"] = count_efficiency(
            stats.totals[static_cast<std::size_t>(j)], instance.ideal_count[static_cast<std::size_t>(j)]);
        row["fixed_rent"] =
            instance.fixed_rent[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        breakdown.push_back(std::move(row));
    }
    doc["breakdown"] = std::move(breakdown);
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << doc.dump(2) << '\n';
}

}  // namespace mcga::mall
