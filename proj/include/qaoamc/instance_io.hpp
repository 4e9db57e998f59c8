#pragma once

#include "qaoamc/ising.hpp"

#include <filesystem>
#include <string>

namespace qaoamc {

// JSON layout: {"n": int, "seed": uint64, "couplings": [J_10, J_20, J_21, J_30, ...], "fields": [h_0, ...]}
// Keys are written in that order; reals are written in shortest round-trip form.

std::string instance_to_json(const SpinGlassInstance& instance);
SpinGlassInstance instance_from_json(const std::string& text);

void write_instance(const std::filesystem::path& path, const SpinGlassInstance& instance);
SpinGlassInstance read_instance(const std::filesystem::path& path);

}  // namespace qaoamc
