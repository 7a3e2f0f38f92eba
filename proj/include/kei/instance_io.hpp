#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "kei/instance.hpp"
#include "kei/weights.hpp"

namespace kei {

inline constexpr int kInstanceFormatVersion = 1;

/// Canonical versioned JSON form of an instance. Output is deterministic:
/// keys of the compat/half maps appear in ascending recipient order and
/// empty sets are omitted.
nlohmann::ordered_json instance_to_json(const KeiInstance& inst);

/// Throws KeiError on malformed input or an unsupported version.
KeiInstance instance_from_json(const nlohmann::json& j);

KeiInstance load_instance(const std::filesystem::path& path);
void save_instance(const KeiInstance& inst, const std::filesystem::path& path);

nlohmann::ordered_json allocation_to_json(const KeiInstance& inst, const Allocation& alloc);

/// Custom utilities: {"compatible": 1, "half": 1, "waiting": 0,
/// "pairs": [{"recipient": r, "donor": d, "gain": g}], "waiting_gains": {"r": g}}.
/// Every key is optional.
CustomGains custom_gains_from_json(const nlohmann::json& j);
CustomGains load_custom_gains(const std::filesystem::path& path);

}  // namespace kei
