#pragma once

// Domain model for kidney exchange with immunosuppressants: recipients,
// donors, the per-recipient donor partition (compatible / half-compatible /
// incompatible), and allocations over it.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kei {

using RecipientId = int;
using DonorId = int;
using Weight = std::int64_t;

enum class BloodType { O, A, B, AB };

std::string to_string(BloodType t);
BloodType blood_type_from_string(const std::string& s);

/// True when a donor of type `donor` can give to a recipient of type `recipient`.
bool blood_compatible(BloodType donor, BloodType recipient);

struct Recipient {
  RecipientId id = 0;
  std::optional<BloodType> blood;
  bool sensitized = false;
};

struct Donor {
  DonorId id = 0;
  std::optional<BloodType> blood;
  bool altruistic = false;
};

class KeiError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an operation requires a specific model class (e.g. the
/// suppressant gadget needs the silver-bullet model).
class ModelClassError : public KeiError {
 public:
  using KeiError::KeiError;
};

/// Raised when an allocation breaks one of the allocation invariants.
class InfeasibleAllocation : public KeiError {
 public:
  using KeiError::KeiError;
};

/// A market (R, D, C, H, I). Ids are contiguous from zero; I_i is implicit
/// as the complement of C_i and H_i.
struct KeiInstance {
  std::vector<Recipient> recipients;
  std::vector<Donor> donors;
  std::vector<std::pair<RecipientId, DonorId>> pairs;
  std::vector<std::set<DonorId>> compat;  // C_i, indexed by recipient
  std::vector<std::set<DonorId>> half;    // H_i, indexed by recipient

  std::size_t num_recipients() const { return recipients.size(); }
  std::size_t num_donors() const { return donors.size(); }

  std::optional<DonorId> paired_donor(RecipientId r) const;
  std::optional<RecipientId> paired_recipient(DonorId d) const;

  bool is_compatible(RecipientId r, DonorId d) const;
  bool is_half_compatible(RecipientId r, DonorId d) const;

  /// Paired recipient whose own donor is in her compatible set.
  bool own_donor_compatible(RecipientId r) const;

  /// Convenience builder: n_pairs couples (r_i, d_i) sharing index i, then
  /// `singles` donor-less recipients and `altruists` altruistic donors.
  static KeiInstance with_layout(int n_pairs, int singles, int altruists);

  void add_compatible(RecipientId r, DonorId d);
  void add_half(RecipientId r, DonorId d);
};

enum class ModelClass { BM, SBM, GM };

std::string to_string(ModelClass c);

struct Violation {
  std::string rule;
  std::string where;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

ValidationReport validate_instance(const KeiInstance& inst);

/// BM when no half-compatible donors exist, SBM when every donor is
/// compatible or half-compatible with every recipient, GM otherwise. BM wins
/// when both hold (e.g. the empty instance).
ModelClass model_class(const KeiInstance& inst);

struct Allocation {
  std::map<RecipientId, DonorId> assignment;
  std::set<RecipientId> suppressed;

  bool operator==(const Allocation&) const = default;
};

struct AllocationStats {
  int compatible = 0;       // CO
  int half_compatible = 0;  // HC
  int total = 0;            // TR

  bool operator==(const AllocationStats&) const = default;
};

/// Empty optional when feasible, else a description of the first violated
/// invariant.
std::optional<std::string> allocation_violation(const KeiInstance& inst, const Allocation& alloc);

/// Builds an allocation from a recipient->donor map, deriving the
/// suppressed set from H.
Allocation make_allocation(const KeiInstance& inst, std::map<RecipientId, DonorId> assignment);

/// Throws InfeasibleAllocation when the allocation breaks an invariant.
AllocationStats stats(const KeiInstance& inst, const Allocation& alloc);

/// Strong individual rationality: a paired donor gives only when her
/// recipient receives, and a recipient whose own donor is compatible never
/// trades down to a half-compatible kidney.
bool check_strong_ir(const KeiInstance& inst, const Allocation& alloc);

/// Individual rationality: every recipient whose own donor is compatible
/// ends with a compatible kidney.
bool check_ir(const KeiInstance& inst, const Allocation& alloc);

}  // namespace kei
