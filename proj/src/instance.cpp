#include "kei/instance.hpp"

#include <sstream>

namespace kei {

std::string to_string(BloodType t) {
  switch (t) {
    case BloodType::O: return "O";
    case BloodType::A: return "A";
    case BloodType::B: return "B";
    case BloodType::AB: return "AB";
  }
  return "?";
}

BloodType blood_type_from_string(const std::string& s) {
  if (s == "O") return BloodType::O;
  if (s == "A") return BloodType::A;
  if (s == "B") return BloodType::B;
  if (s == "AB") return BloodType::AB;
  throw KeiError("unknown blood type '" + s + "'");
}

bool blood_compatible(BloodType donor, BloodType recipient) {
  if (donor == BloodType::O || recipient == BloodType::AB) return true;
  return donor == recipient;
}

std::string to_string(ModelClass c) {
  switch (c) {
    case ModelClass::BM: return "BM";
    case ModelClass::SBM: return "SBM";
    case ModelClass::GM: return "GM";
  }
  return "?";
}

std::optional<DonorId> KeiInstance::paired_donor(RecipientId r) const {
  for (const auto& [pr, pd] : pairs)
    if (pr == r) return pd;
  return std::nullopt;
}

std::optional<RecipientId> KeiInstance::paired_recipient(DonorId d) const {
  for (const auto& [pr, pd] : pairs)
    if (pd == d) return pr;
  return std::nullopt;
}

bool KeiInstance::is_compatible(RecipientId r, DonorId d) const {
  return r >= 0 && static_cast<std::size_t>(r) < compat.size() && compat[r].count(d) > 0;
}

bool KeiInstance::is_half_compatible(RecipientId r, DonorId d) const {
  return r >= 0 && static_cast<std::size_t>(r) < half.size() && half[r].count(d) > 0;
}

bool KeiInstance::own_donor_compatible(RecipientId r) const {
  auto d = paired_donor(r);
  return d && is_compatible(r, *d);
}

KeiInstance KeiInstance::with_layout(int n_pairs, int singles, int altruists) {
  KeiInstance inst;
  const int nr = n_pairs + singles;
  const int nd = n_pairs + altruists;
  for (int i = 0; i < nr; ++i) inst.recipients.push_back(Recipient{i, std::nullopt, false});
  for (int j = 0; j < nd; ++j) inst.donors.push_back(Donor{j, std::nullopt, j >= n_pairs});
  for (int i = 0; i < n_pairs; ++i) inst.pairs.emplace_back(i, i);
  inst.compat.assign(nr, {});
  inst.half.assign(nr, {});
  return inst;
}

void KeiInstance::add_compatible(RecipientId r, DonorId d) { compat.at(r).insert(d); }

void KeiInstance::add_half(RecipientId r, DonorId d) { half.at(r).insert(d); }

std::string ValidationReport::summary() const {
  if (ok()) return "ok";
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i].rule << " at " << violations[i].where;
  }
  return os.str();
}

ValidationReport validate_instance(const KeiInstance& inst) {
  ValidationReport rep;
  auto add = [&](std::string rule, std::string where) {
    rep.violations.push_back(Violation{std::move(rule), std::move(where)});
  };
  const int nr = static_cast<int>(inst.recipients.size());
  const int nd = static_cast<int>(inst.donors.size());

  for (int i = 0; i < nr; ++i)
    if (inst.recipients[i].id != i) add("recipient ids not contiguous", "r_" + std::to_string(i));
  for (int j = 0; j < nd; ++j)
    if (inst.donors[j].id != j) add("donor ids not contiguous", "d_" + std::to_string(j));

  if (static_cast<int>(inst.compat.size()) != nr) add("compat table size mismatch", "C");
  if (static_cast<int>(inst.half.size()) != nr) add("half table size mismatch", "H");

  std::vector<int> r_pairs(nr, 0), d_pairs(nd, 0);
  for (const auto& [r, d] : inst.pairs) {
    const std::string where = "(r_" + std::to_string(r) + ",d_" + std::to_string(d) + ")";
    if (r < 0 || r >= nr || d < 0 || d >= nd) {
      add("pair references unknown id", where);
      continue;
    }
    if (++r_pairs[r] == 2) add("recipient paired twice", "r_" + std::to_string(r));
    if (++d_pairs[d] == 2) add("donor paired twice", "d_" + std::to_string(d));
  }
  for (int j = 0; j < nd; ++j) {
    const bool paired = d_pairs[j] > 0;
    if (inst.donors[j].altruistic == paired)
      add(paired ? "paired donor marked altruistic" : "unpaired donor not marked altruistic",
          "d_" + std::to_string(j));
  }

  const auto rows = std::min<std::size_t>({inst.compat.size(), inst.half.size(), static_cast<std::size_t>(nr)});
  for (std::size_t i = 0; i < rows; ++i) {
    const std::string where = "r_" + std::to_string(i);
    for (DonorId d : inst.compat[i])
      if (d < 0 || d >= nd) add("compatible donor out of range", where);
    for (DonorId d : inst.half[i]) {
      if (d < 0 || d >= nd) add("half-compatible donor out of range", where);
      if (inst.compat[i].count(d)) add("C/H overlap", where);
    }
  }
  return rep;
}

ModelClass model_class(const KeiInstance& inst) {
  bool no_half = true;
  bool silver_bullet = true;
  const std::size_t nd = inst.donors.size();
  for (std::size_t i = 0; i < inst.recipients.size(); ++i) {
    if (!inst.half[i].empty()) no_half = false;
    if (inst.compat[i].size() + inst.half[i].size() != nd) silver_bullet = false;
  }
  if (no_half) return ModelClass::BM;
  if (silver_bullet) return ModelClass::SBM;
  return ModelClass::GM;
}

std::optional<std::string> allocation_violation(const KeiInstance& inst, const Allocation& alloc) {
  const int nr = static_cast<int>(inst.recipients.size());
  const int nd = static_cast<int>(inst.donors.size());
  std::set<DonorId> used;
  for (const auto& [r, d] : alloc.assignment) {
    const std::string where = "r_" + std::to_string(r) + "<-d_" + std::to_string(d);
    if (r < 0 || r >= nr || d < 0 || d >= nd) return "unknown id in assignment " + where;
    if (!used.insert(d).second) return "donor assigned twice: d_" + std::to_string(d);
    const bool c = inst.is_compatible(r, d);
    const bool h = inst.is_half_compatible(r, d);
    if (!c && !h) return "incompatible assignment " + where;
    if (h != (alloc.suppressed.count(r) > 0)) return "suppressant flag mismatch " + where;
  }
  for (RecipientId r : alloc.suppressed)
    if (!alloc.assignment.count(r)) return "suppressant given to unassigned r_" + std::to_string(r);
  return std::nullopt;
}

Allocation make_allocation(const KeiInstance& inst, std::map<RecipientId, DonorId> assignment) {
  Allocation a;
  a.assignment = std::move(assignment);
  for (const auto& [r, d] : a.assignment)
    if (inst.is_half_compatible(r, d)) a.suppressed.insert(r);
  return a;
}

AllocationStats stats(const KeiInstance& inst, const Allocation& alloc) {
  if (auto v = allocation_violation(inst, alloc)) throw InfeasibleAllocation(*v);
  AllocationStats s;
  for (const auto& [r, d] : alloc.assignment) {
    if (inst.is_compatible(r, d))
      ++s.compatible;
    else
      ++s.half_compatible;
  }
  s.total = s.compatible + s.half_compatible;
  return s;
}

bool check_strong_ir(const KeiInstance& inst, const Allocation& alloc) {
  std::set<DonorId> used;
  for (const auto& [r, d] : alloc.assignment) used.insert(d);
  for (const auto& [r, d] : inst.pairs) {
    auto it = alloc.assignment.find(r);
    const bool assigned = it != alloc.assignment.end();
    if (used.count(d) && !assigned) return false;
    if (assigned && inst.is_compatible(r, d) && !inst.is_compatible(r, it->second)) return false;
  }
  return true;
}

bool check_ir(const KeiInstance& inst, const Allocation& alloc) {
  for (const auto& [r, d] : inst.pairs) {
    if (!inst.is_compatible(r, d)) continue;
    auto it = alloc.assignment.find(r);
    if (it == alloc.assignment.end() || !inst.is_compatible(r, it->second)) return false;
  }
  return true;
}

}  // namespace kei
