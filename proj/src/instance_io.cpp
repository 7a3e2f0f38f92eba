#include "kei/instance_io.hpp"

#include <fstream>

namespace kei {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json instance_to_json(const KeiInstance& inst) {
  ordered_json j;
  j["version"] = kInstanceFormatVersion;
  j["recipients"] = ordered_json::array();
  for (const auto& r : inst.recipients) {
    ordered_json o;
    o["id"] = r.id;
    if (r.blood) o["blood"] = to_string(*r.blood);
    if (r.sensitized) o["sensitized"] = true;
    j["recipients"].push_back(o);
  }
  j["donors"] = ordered_json::array();
  for (const auto& d : inst.donors) {
    ordered_json o;
    o["id"] = d.id;
    if (d.blood) o["blood"] = to_string(*d.blood);
    if (d.altruistic) o["altruistic"] = true;
    j["donors"].push_back(o);
  }
  j["pairs"] = ordered_json::array();
  for (const auto& [r, d] : inst.pairs) j["pairs"].push_back({r, d});

  auto sets = [](const std::vector<std::set<DonorId>>& table) {
    ordered_json m = ordered_json::object();
    for (std::size_t i = 0; i < table.size(); ++i)
      if (!table[i].empty()) m[std::to_string(i)] = std::vector<DonorId>(table[i].begin(), table[i].end());
    return m;
  };
  j["compat"] = sets(inst.compat);
  j["half"] = sets(inst.half);
  return j;
}

namespace {

std::optional<BloodType> read_blood(const json& o) {
  if (!o.is_object() || !o.contains("blood") || o["blood"].is_null()) return std::nullopt;
  return blood_type_from_string(o["blood"].get<std::string>());
}

void read_sets(const json& j, const char* key, std::vector<std::set<DonorId>>& table) {
  if (!j.contains(key)) return;
  const json& m = j[key];
  if (!m.is_object()) throw KeiError(std::string("'") + key + "' must be an object");
  for (const auto& [k, v] : m.items()) {
    std::size_t pos = 0;
    int r = 0;
    try {
      r = std::stoi(k, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != k.size() || r < 0 || static_cast<std::size_t>(r) >= table.size())
      throw KeiError(std::string("bad recipient key '") + k + "' in '" + key + "'");
    for (const auto& d : v) table[r].insert(d.get<DonorId>());
  }
}

}  // namespace

KeiInstance instance_from_json(const json& j) {
  try {
    if (!j.is_object()) throw KeiError("instance must be a JSON object");
    const int version = j.value("version", 0);
    if (version != kInstanceFormatVersion)
      throw KeiError("unsupported instance version " + std::to_string(version));

    KeiInstance inst;
    for (const auto& o : j.at("recipients")) {
      Recipient r;
      r.id = o.is_object() ? o.at("id").get<int>() : o.get<int>();
      r.blood = read_blood(o);
      r.sensitized = o.is_object() && o.value("sensitized", false);
      inst.recipients.push_back(r);
    }
    for (const auto& o : j.at("donors")) {
      Donor d;
      d.id = o.is_object() ? o.at("id").get<int>() : o.get<int>();
      d.blood = read_blood(o);
      d.altruistic = o.is_object() && o.value("altruistic", false);
      inst.donors.push_back(d);
    }
    for (const auto& p : j.value("pairs", json::array())) {
      if (!p.is_array() || p.size() != 2) throw KeiError("pairs entries must be [r, d]");
      inst.pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
    // Donors without an explicit flag are altruistic exactly when unpaired.
    for (const auto& o : j.at("donors")) {
      if (o.is_object() && o.contains("altruistic")) continue;
      const int id = o.is_object() ? o.at("id").get<int>() : o.get<int>();
      for (auto& d : inst.donors)
        if (d.id == id) d.altruistic = !inst.paired_recipient(id).has_value();
    }
    inst.compat.assign(inst.recipients.size(), {});
    inst.half.assign(inst.recipients.size(), {});
    read_sets(j, "compat", inst.compat);
    read_sets(j, "half", inst.half);
    return inst;
  } catch (const json::exception& e) {
    throw KeiError(std::string("malformed instance JSON: ") + e.what());
  }
}

KeiInstance load_instance(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeiError("cannot open " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw KeiError(path.string() + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const KeiInstance& inst, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw KeiError("cannot write " + path.string());
  out << instance_to_json(inst).dump(2) << '\n';
}

ordered_json allocation_to_json(const KeiInstance& inst, const Allocation& alloc) {
  ordered_json arr = ordered_json::array();
  for (const auto& [r, d] : alloc.assignment) {
    ordered_json o;
    o["recipient"] = r;
    o["donor"] = d;
    o["suppressed"] = alloc.suppressed.count(r) > 0;
    o["kind"] = inst.is_compatible(r, d) ? "compatible" : "half-compatible";
    arr.push_back(o);
  }
  return arr;
}

CustomGains custom_gains_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw KeiError("custom weights must be a JSON object");
  CustomGains g;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "compatible") {
        g.compatible = value.get<Weight>();
      } else if (key == "half") {
        g.half = value.get<Weight>();
      } else if (key == "waiting") {
        g.waiting = value.get<Weight>();
      } else if (key == "pairs") {
        for (const auto& e : value)
          g.pair_gain[{e.at("recipient").get<RecipientId>(), e.at("donor").get<DonorId>()}] = e.at("gain").get<Weight>();
      } else if (key == "waiting_gains") {
        for (const auto& [r, w] : value.items()) g.waiting_gain[std::stoi(r)] = w.get<Weight>();
      } else {
        throw KeiError("unknown custom weights key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw KeiError(std::string("bad custom weights: ") + e.what());
  } catch (const std::logic_error& e) {
    throw KeiError(std::string("bad custom weights: ") + e.what());
  }
  return g;
}

CustomGains load_custom_gains(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw KeiError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw KeiError("cannot parse " + path.string() + ": " + e.what());
  }
  return custom_gains_from_json(j);
}

}  // namespace kei
