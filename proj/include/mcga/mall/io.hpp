#pragma once

#include <string>

#include "mcga/mall/types.hpp"

namespace mcga::mall {

std::string to_json(const MallInstance& instance);
MallInstance mall_instance_from_json(const std::string& text);

MallInstance load_mall_instance(const std::string& path);
void save_mall_instance(const MallInstance& instance, const std::string& path);

// Solution file: the location -> type assignment plus the evaluated rent
// breakdown per location.
void save_mall_solution(const Layout& layout, const MallInstance& instance,
                        const std::string& path);

}  // namespace mcga::mall
