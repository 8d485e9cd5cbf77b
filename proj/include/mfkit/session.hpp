#pragma once
// Run-wide configuration: coefficient field, default precision, RNG seed,
// data directory, cache switch.  The CLI builds one of these from flags;
// tests build them directly.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>

namespace mfkit {

struct SessionConfig {
  std::string field = "fp:32003";
  int prec = 30;
  std::uint64_t seed = 0;
  std::string share_dir;  // root holding catalogs/ and goldens/
  bool cache = true;
};

// Parses "q" or "fp:P" (P an odd prime below 2^31), applying the modulus to
// the process-wide Fp state.  Returns true for the rational field.
bool apply_field_tag(const std::string& tag);

std::string default_share_dir();

// Small memoization table for hom-space solves keyed by printed input.
// Concurrent readers, exclusive inserts; disable() turns it into a no-op.
class MemoCache {
public:
  static MemoCache& instance();
  void set_enabled(bool on);
  bool enabled() const { return enabled_; }
  bool lookup(const std::string& key, std::shared_ptr<void>& out) const;
  void insert(const std::string& key, std::shared_ptr<void> value);
  void clear();

private:
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<void>> table_;
  bool enabled_ = true;
};

}  // namespace mfkit
